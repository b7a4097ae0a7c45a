"""The twisted extended Hall algebra, its coproduct and Hopf pairing.

Elements are linear combinations of terms (class key, alpha) standing for
<A> * K_alpha.  The product carries the Euler-form twist

    (<A> K_a) * (<B> K_b)
      = v^(<A,B> + (a,B)) sum_C  |Ext(A,B)_C| / |Hom(A,B)|  <C> K_{a+b},

the coproduct is the Green/Xiao one, and the Hopf pairing is diagonal on
the class basis.  The double-compatibility check at the bottom expands
both sides of the reduced Drinfeld identity through the normal-ordered
straightening engine.
"""

from __future__ import annotations

from fractions import Fraction

from .combo import Combination
from .quiver import kv_add
from .repcat import IsoClass, RepCategory


class HallElement(Combination):
    """Terms are pairs (class key, alpha); alpha an integer K(R)-vector."""


class TensorElement(Combination):
    """Terms are pairs of (class key, alpha) pairs."""


class HallAlgebra:
    def __init__(self, cat: RepCategory):
        self.cat = cat
        self.quiver = cat.quiver
        self.ring = cat.quiver.scalar_ring()

    # ------------------------------------------------------------------
    # element constructors

    def element(self, cls: IsoClass, alpha=None, coeff=None) -> HallElement:
        a = self.quiver.zero_kvector() if alpha is None else tuple(alpha)
        return HallElement.basis(self.ring, (cls.key, a), coeff)

    def k_element(self, alpha) -> HallElement:
        return self.element(self.cat.zero_class(), alpha)

    def one(self) -> HallElement:
        return self.element(self.cat.zero_class())

    def zero(self) -> HallElement:
        return HallElement.zero(self.ring)

    def _cls(self, key: str) -> IsoClass:
        return self.cat.class_by_key(key)

    # ------------------------------------------------------------------
    # algebra structure

    def product(self, x: HallElement, y: HallElement) -> HallElement:
        out = HallElement.zero(self.ring)
        for (ka, alpha), ca in x.terms.items():
            a = self._cls(ka)
            for (kb, beta), cb in y.terms.items():
                b = self._cls(kb)
                twist = self.ring.v_pow(
                    self.quiver.euler_dimvec(a.dim, b.dim)
                    + self.quiver.sym_form(alpha, b.kclass)
                )
                c0 = ca * cb * twist
                gamma = kv_add(alpha, beta)
                dim_c = tuple(p + q for p, q in zip(a.dim, b.dim))
                for c in self.cat.classify(dim_c):
                    g = self.cat.hall_number(a, b, c)
                    if not g:
                        continue
                    coeff = Fraction(
                        g * a.aut_order * b.aut_order, c.aut_order
                    )
                    out.add_term((c.key, gamma), c0 * coeff)
        return out

    def degree(self, x: HallElement):
        """K(R)-degrees appearing in x (class of A for each term)."""
        return {tuple(self._cls(k).kclass) for (k, _alpha) in x.terms}

    # ------------------------------------------------------------------
    # coalgebra structure

    def coproduct(self, x: HallElement) -> TensorElement:
        out = TensorElement.zero(self.ring)
        for (ka, alpha), c in x.terms.items():
            a = self._cls(ka)
            for (qk, sk), g in self.cat.subquot_table(a).items():
                quot, sub = self._cls(qk), self._cls(sk)
                tw = self.ring.v_pow(self.quiver.euler_dimvec(quot.dim, sub.dim))
                left = (qk, kv_add(tuple(sub.kclass), alpha))
                right = (sk, alpha)
                out.add_term((left, right), c * tw * g)
        return out

    def counit(self, x: HallElement):
        zero_key = self.cat.zero_class().key
        out = self.ring.zero
        for (k, _alpha), c in x.terms.items():
            if k == zero_key:
                out = out + c
        return out

    def coproduct_square(self, x: HallElement, left_first: bool):
        """(Delta x id) Delta or (id x Delta) Delta, as triple tensors."""
        out = Combination.zero(self.ring)
        for (t1, t2), c in self.coproduct(x).terms.items():
            inner = self.coproduct(HallElement.basis(self.ring, t1 if left_first else t2))
            for (u1, u2), d in inner.terms.items():
                trip = (u1, u2, t2) if left_first else (t1, u1, u2)
                out.add_term(trip, c * d)
        return out

    # ------------------------------------------------------------------
    # Hopf pairing

    def hopf_pair(self, x: HallElement, y: HallElement):
        out = self.ring.zero
        for (ka, alpha), ca in x.terms.items():
            a = self._cls(ka)
            for (kb, beta), cb in y.terms.items():
                if ka != kb:
                    continue
                tw = self.ring.v_pow(self.quiver.sym_form(alpha, beta))
                out = out + ca * cb * tw * a.aut_order
        return out

    def pair_with_tensor(self, x: HallElement, y: HallElement, t: TensorElement):
        out = self.ring.zero
        for (t1, t2), c in t.terms.items():
            p1 = self.hopf_pair(x, HallElement.basis(self.ring, t1))
            if p1.is_zero():
                continue
            p2 = self.hopf_pair(y, HallElement.basis(self.ring, t2))
            out = out + c * p1 * p2
        return out

    def check_hopf_compat(self, x: HallElement, y: HallElement, z: HallElement) -> dict:
        lhs = self.hopf_pair(self.product(x, y), z)
        rhs = self.pair_with_tensor(x, y, self.coproduct(z))
        return {
            "id": "hopf-compat",
            "ok": lhs == rhs,
            "lhs": lhs.render(),
            "rhs": rhs.render(),
            "residual": (lhs - rhs).render(),
        }

    # ------------------------------------------------------------------
    # Drinfeld double compatibility

    def check_dd_identity(self, a: IsoClass, b: IsoClass, dh) -> dict:
        """Reduced double-compatibility identity for the pair (a, b).

        Both sides are the generator-level expansions of the double axiom
        (all K_alpha / K_beta factors already cancelled): the left side
        collects E_{A1} K_{A2} F_{B1} over matching inner constituents,
        the right side F_{B2} Kd_{B1} E_{A2}, and the two must agree as
        normal-ordered elements.
        """
        lhs = dh.zero()
        rhs = dh.zero()
        ta = self.cat.subquot_table(a)
        tb = self.cat.subquot_table(b)
        for (a1k, a2k), ga in ta.items():
            a1, a2 = self._cls(a1k), self._cls(a2k)
            for (b2k, b1k), gb in tb.items():
                b2, b1 = self._cls(b2k), self._cls(b1k)
                tw = self.ring.v_pow(
                    self.quiver.euler_dimvec(a1.dim, a2.dim)
                    + self.quiver.euler_dimvec(b2.dim, b1.dim)
                )
                base = tw * (ga * gb)
                if a2k == b2k:
                    mono = (a1k, tuple(a2.kclass), b1k, self.quiver.zero_kvector())
                    lhs = lhs + dh.element(mono).scale(base * a2.aut_order)
                if a1k == b1k:
                    word = dh.product(
                        dh.f_elem(b2k), dh.product(dh.kd_elem(b1.kclass), dh.e_elem(a2k))
                    )
                    rhs = rhs + word.scale(base * a1.aut_order)
        residual = lhs - rhs
        return {
            "id": f"drinfeld[{a.key};{b.key}]",
            "ok": residual.is_zero(),
            "lhs": dh.render(lhs),
            "rhs": dh.render(rhs),
            "residual": dh.render(residual),
        }

    # ------------------------------------------------------------------
    # rendering

    def render(self, x: HallElement) -> str:
        if x.is_zero():
            return "0"
        bits = []
        for (k, alpha), c in x.items_sorted():
            piece = f"[{k}]"
            if any(alpha):
                piece += f" K{self.quiver.render_kvector(alpha)}"
            bits.append(f"({c.render()})*{piece}")
        return " + ".join(bits)

    def to_json(self, x: HallElement):
        return [
            {"class": k, "alpha": list(alpha), "coeff": c.render()}
            for (k, alpha), c in x.items_sorted()
        ]
