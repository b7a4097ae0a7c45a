"""Localized Hall algebra on the normal-ordered basis, by straightening.

Basis monomials are tuples (A, alpha, B, beta) standing for

    E_A o K_alpha o F_B o Kd_beta            (Kd = dagger-twisted K)

with A, B canonical class keys and alpha, beta in K(R).  Products are
rewritten into this basis by the rule system

    (R1) K's collect additively, K and Kd commute;
    (R2) K_a past E_A costs v^((a,A)), Kd_b past E_A costs v^(-(b,A));
         mirrored signs on F;
    (R3) E_A o E_B = v^(<A,B>) sum_C |Ext(A,B)_C|/|Hom(A,B)| E_C,
         and the dagger image of this for F o F;
    (R4) F_B o E_A = sum v^(<A2, B-A>) g^A_{A1,A2} g^B_{A2,B1} a_{A2}
                          K_{A2} o E(A1,B1);
    (R5) E(A,B) = E_A o F_B
                  - sum over nonzero B2 of v^(<B2, A-B>) g^B_{B1,B2}
                    g^A_{B2,A1} a_{B2} Kd_{B2} o E(A1,B1),

where E(A,B) is the two-sided generator attached to the pair; the R5
recursion strictly decreases both total dimensions, so the E(A,B) table
closes after finitely many steps and is cached.

Everything lives over one RepCategory; products of reduced elements are
computed by lifting to the full algebra and folding Kd_b to K_{-b} at the
end (the quotient map is an algebra homomorphism, so this is exact).
"""

from __future__ import annotations

from fractions import Fraction
from threading import RLock

from .combo import Combination
from .quiver import kv_add, kv_sub
from .repcat import RepCategory


class DHElement(Combination):
    """Terms are normal monomials (A key, alpha, B key, beta)."""


class ReducedDHElement(Combination):
    """Terms are reduced monomials (A key, gamma, B key)."""


class DHAlgebra:
    def __init__(self, cat: RepCategory):
        self.cat = cat
        self.quiver = cat.quiver
        self.ring = cat.quiver.scalar_ring()
        self._lock = RLock()
        self._fe: dict[tuple, DHElement] = {}
        self._eab: dict[tuple, DHElement] = {}
        self._zero_key = cat.zero_class().key

    # ------------------------------------------------------------------
    # constructors

    def element(self, mono, coeff=None) -> DHElement:
        return DHElement.basis(self.ring, mono, coeff)

    def zero(self) -> DHElement:
        return DHElement.zero(self.ring)

    def one(self) -> DHElement:
        z = self.quiver.zero_kvector()
        return self.element((self._zero_key, z, self._zero_key, z))

    def e_elem(self, key: str) -> DHElement:
        z = self.quiver.zero_kvector()
        return self.element((key, z, self._zero_key, z))

    def f_elem(self, key: str) -> DHElement:
        z = self.quiver.zero_kvector()
        return self.element((self._zero_key, z, key, z))

    def k_elem(self, alpha) -> DHElement:
        z = self.quiver.zero_kvector()
        return self.element((self._zero_key, tuple(alpha), self._zero_key, z))

    def kd_elem(self, beta) -> DHElement:
        z = self.quiver.zero_kvector()
        return self.element((self._zero_key, z, self._zero_key, tuple(beta)))

    # ------------------------------------------------------------------
    # scalar helpers

    def _v_sym(self, x, y):
        return self.ring.v_pow(self.quiver.sym_form(x, y))

    def _cls(self, key: str):
        return self.cat.class_by_key(key)

    def _kcls(self, key: str):
        return tuple(self._cls(key).kclass)

    # ------------------------------------------------------------------
    # elementary right multiplications

    def times_k(self, x: DHElement, gamma) -> DHElement:
        gamma = tuple(gamma)
        if not any(gamma):
            return x
        out = self.zero()
        for (a, al, b, be), c in x.terms.items():
            tw = self._v_sym(gamma, self._kcls(b))
            out.add_term((a, kv_add(al, gamma), b, be), c * tw)
        return out

    def times_kd(self, x: DHElement, delta) -> DHElement:
        delta = tuple(delta)
        if not any(delta):
            return x
        out = self.zero()
        for (a, al, b, be), c in x.terms.items():
            out.add_term((a, al, b, kv_add(be, delta)), c)
        return out

    def times_f(self, x: DHElement, fkey: str) -> DHElement:
        if fkey == self._zero_key:
            return x
        out = self.zero()
        for (a, al, b, be), c in x.terms.items():
            tw = self._v_sym(be, self._kcls(fkey))
            for dkey, coeff in self._ff_coeffs(b, fkey):
                out.add_term((a, al, dkey, be), c * tw * coeff)
        return out

    def times_e(self, x: DHElement, ekey: str) -> DHElement:
        if ekey == self._zero_key:
            return x
        out = self.zero()
        ek = self._kcls(ekey)
        for (a, al, b, be), c in x.terms.items():
            tw = self.ring.v_pow(-self.quiver.sym_form(be, ek))
            middle = self._fe_expand(b, ekey)
            for (a2, al2, b2, be2), c2 in middle.terms.items():
                pref = self._prefix(a, al, a2, al2, b2, be2)
                for mono, c3 in pref.terms.items():
                    out.add_term(
                        (mono[0], mono[1], mono[2], kv_add(mono[3], be)),
                        c * tw * c2 * c3,
                    )
        return out

    def _prefix(self, a, al, a2, al2, b2, be2) -> DHElement:
        """E_a K_al times the normal monomial (a2, al2, b2, be2)."""
        out = self.zero()
        tw = self._v_sym(al, self._kcls(a2))
        alpha = kv_add(al, al2)
        for ckey, coeff in self._ee_coeffs(a, a2):
            out.add_term((ckey, alpha, b2, be2), tw * coeff)
        return out

    # ------------------------------------------------------------------
    # structure constants

    def _ee_coeffs(self, akey: str, bkey: str):
        """E_A o E_B = sum coeff E_C; returns [(C key, Scalar coeff)]."""
        a, b = self._cls(akey), self._cls(bkey)
        tw = self.ring.v_pow(self.quiver.euler_dimvec(a.dim, b.dim))
        out = []
        dim_c = tuple(x + y for x, y in zip(a.dim, b.dim))
        for c in self.cat.classify(dim_c):
            g = self.cat.hall_number(a, b, c)
            if g:
                out.append(
                    (c.key, tw * Fraction(g * a.aut_order * b.aut_order, c.aut_order))
                )
        return out

    def _ff_coeffs(self, akey: str, bkey: str):
        """F_A o F_B: the dagger image of the E rule, same coefficients."""
        return self._ee_coeffs(akey, bkey)

    def _fe_expand(self, bkey: str, akey: str) -> DHElement:
        """Normal form of F_B o E_A (rule R4, then the E(A1,B1) table)."""
        memo = (bkey, akey)
        with self._lock:
            if memo in self._fe:
                return self._fe[memo]
        if bkey == self._zero_key:
            out = self.eab(akey, self._zero_key)
        elif akey == self._zero_key:
            out = self.eab(self._zero_key, bkey)
        else:
            a, b = self._cls(akey), self._cls(bkey)
            ka, kb = tuple(a.kclass), tuple(b.kclass)
            out = self.zero()
            for (a1k, a2k), ga in self.cat.subquot_table(a).items():
                a2 = self._cls(a2k)
                gb_row = self.cat.subquot_table(b)
                for (q2k, b1k), gb in gb_row.items():
                    if q2k != a2k:
                        continue
                    tw = self.ring.v_pow(
                        self.quiver.euler_form(
                            tuple(a2.kclass), kv_sub(kb, ka)
                        )
                    )
                    coeff = tw * (ga * gb * a2.aut_order)
                    term = self._k_left(tuple(a2.kclass), self.eab(a1k, b1k))
                    out = out + term.scale(coeff)
        with self._lock:
            self._fe[memo] = out
        return out

    def eab(self, akey: str, bkey: str) -> DHElement:
        """Normal form of the two-sided generator E(A, B) (rule R5)."""
        memo = (akey, bkey)
        with self._lock:
            if memo in self._eab:
                return self._eab[memo]
        z = self.quiver.zero_kvector()
        out = self.element((akey, z, bkey, z))
        if bkey != self._zero_key and akey != self._zero_key:
            a, b = self._cls(akey), self._cls(bkey)
            ka, kb = tuple(a.kclass), tuple(b.kclass)
            ta = self.cat.subquot_table(a)
            for (b1k, b2k), gb in self.cat.subquot_table(b).items():
                if b2k == self._zero_key:
                    continue
                b2 = self._cls(b2k)
                for (q2k, a1k), ga in ta.items():
                    if q2k != b2k:
                        continue
                    a1 = self._cls(a1k)
                    b1 = self._cls(b1k)
                    assert a1.total_dim < a.total_dim and b1.total_dim < b.total_dim
                    tw = self.ring.v_pow(
                        self.quiver.euler_form(tuple(b2.kclass), kv_sub(ka, kb))
                    )
                    coeff = tw * (gb * ga * b2.aut_order)
                    term = self._kd_left(tuple(b2.kclass), self.eab(a1k, b1k))
                    out = out - term.scale(coeff)
        with self._lock:
            self._eab[memo] = out
        return out

    def from_eab_coords(self, coords) -> DHElement:
        """Expand two-sided generator coordinates (A, B, gamma, delta)."""
        out = self.zero()
        for (akey, bkey, gamma, delta), c in coords.terms.items():
            term = self.times_kd(self.times_k(self.eab(akey, bkey), gamma), delta)
            out = out + term.scale(c)
        return out

    def _k_left(self, gamma, x: DHElement) -> DHElement:
        """K_gamma o x for x in normal form."""
        if not any(gamma):
            return x
        out = self.zero()
        for (a, al, b, be), c in x.terms.items():
            tw = self._v_sym(gamma, self._kcls(a))
            out.add_term((a, kv_add(gamma, al), b, be), c * tw)
        return out

    def _kd_left(self, delta, x: DHElement) -> DHElement:
        """Kd_delta o x for x in normal form."""
        if not any(delta):
            return x
        out = self.zero()
        for (a, al, b, be), c in x.terms.items():
            tw = self.ring.v_pow(
                self.quiver.sym_form(delta, self._kcls(b))
                - self.quiver.sym_form(delta, self._kcls(a))
            )
            out.add_term((a, al, b, kv_add(delta, be)), c * tw)
        return out

    # ------------------------------------------------------------------
    # products

    def mono_product(self, m1, m2) -> DHElement:
        out = self.element(m1)
        a2, al2, b2, be2 = m2
        if a2 != self._zero_key:
            out = self.times_e(out, a2)
        if any(al2):
            out = self.times_k(out, al2)
        if b2 != self._zero_key:
            out = self.times_f(out, b2)
        if any(be2):
            out = self.times_kd(out, be2)
        return out

    def product(self, x: DHElement, y: DHElement) -> DHElement:
        out = self.zero()
        for m1, c1 in x.terms.items():
            for m2, c2 in y.terms.items():
                out = out + self.mono_product(m1, m2).scale(c1 * c2)
        return out

    def product_all(self, factors) -> DHElement:
        out = self.one()
        for f in factors:
            out = self.product(out, f)
        return out

    def commutator(self, x: DHElement, y: DHElement) -> DHElement:
        return self.product(x, y) - self.product(y, x)

    # ------------------------------------------------------------------
    # involution and reduction

    def dagger(self, x: DHElement) -> DHElement:
        """The shift involution: E <-> F, K <-> Kd, re-straightened."""
        out = self.zero()
        for (a, al, b, be), c in x.terms.items():
            word = self.f_elem(a)
            word = self.times_kd(word, al)
            word = self.times_e(word, b)
            word = self.times_k(word, be)
            out = out + word.scale(c)
        return out

    def reduce(self, x: DHElement) -> ReducedDHElement:
        """Image in the reduced algebra: fold Kd_b to K_{-b}.

        Moving the folded K_{-b} from the right of F_B into normal position
        costs v^(-(b, B)).
        """
        out = ReducedDHElement.zero(self.ring)
        for (a, al, b, be), c in x.terms.items():
            tw = self.ring.v_pow(-self.quiver.sym_form(be, self._kcls(b)))
            out.add_term((a, kv_sub(al, be), b), c * tw)
        return out

    def reduced_product(self, x: ReducedDHElement, y: ReducedDHElement) -> ReducedDHElement:
        return self.reduce(self.product(self.lift(x), self.lift(y)))

    def lift(self, x: ReducedDHElement) -> DHElement:
        z = self.quiver.zero_kvector()
        out = self.zero()
        for (a, al, b), c in x.terms.items():
            out.add_term((a, al, b, z), c)
        return out

    # ------------------------------------------------------------------
    # rendering

    def render_mono(self, mono) -> str:
        a, al, b, be = mono
        bits = []
        if a != self._zero_key:
            bits.append(f"E[{a}]")
        if any(al):
            bits.append(f"K{self.quiver.render_kvector(al)}")
        if b != self._zero_key:
            bits.append(f"F[{b}]")
        if any(be):
            bits.append(f"Kd{self.quiver.render_kvector(be)}")
        return " ".join(bits) if bits else "1"

    def render(self, x) -> str:
        if x.is_zero():
            return "0"
        bits = []
        for mono, c in x.items_sorted():
            if isinstance(x, ReducedDHElement):
                a, al, b = mono
                mono = (a, al, b, self.quiver.zero_kvector())
            bits.append(f"({c.render()})*{self.render_mono(mono)}")
        return " + ".join(bits)

    def to_json(self, x) -> list:
        out = []
        for mono, c in x.items_sorted():
            if isinstance(x, ReducedDHElement):
                a, al, b = mono
                row = {"E": a, "K": list(al), "F": b}
            else:
                a, al, b, be = mono
                row = {"E": a, "K": list(al), "F": b, "Kd": list(be)}
            row["coeff"] = c.render()
            out.append(row)
        return out
