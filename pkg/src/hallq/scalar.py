"""Exact coefficients: the ring Q[v^(1/N), v^(-1/N)] with v^2 = q.

q is the cardinality of the ground field and v its positive square root,
so v^2 and q denote the same scalar.  Elements are kept in the canonical
form  sum c_e * v^e  with exponents e in [0, 2) and denominator dividing
the ring constant N; any excess v^(2k) is folded into the rational
coefficient as q^k.  Since x^(2N) - q is irreducible over Q for prime q,
this canonical form is unique and the arithmetic is exact.
"""

from __future__ import annotations

import re
from fractions import Fraction


class ScalarDomainError(ValueError):
    """Exponent denominator does not divide the ring constant N."""


class ScalarRing:
    """Factory and context for Scalar values (fixes q = p and N)."""

    def __init__(self, p: int, n_denom: int):
        if p < 2:
            raise ValueError("field cardinality must be at least 2")
        if n_denom < 1:
            raise ValueError("N must be positive")
        self.p = p
        self.n_denom = n_denom

    def __eq__(self, other):
        return (
            isinstance(other, ScalarRing)
            and self.p == other.p
            and self.n_denom == other.n_denom
        )

    def __repr__(self):
        return f"ScalarRing(q={self.p}, N={self.n_denom})"

    def from_terms(self, terms) -> "Scalar":
        out: dict[Fraction, Fraction] = {}
        for e, c in terms.items():
            e = Fraction(e)
            c = Fraction(c)
            if c == 0:
                continue
            if self.n_denom % e.denominator:
                raise ScalarDomainError(
                    f"exponent {e} not representable with N={self.n_denom}"
                )
            k = e // 2
            e -= 2 * k
            c *= Fraction(self.p) ** int(k)
            out[e] = out.get(e, Fraction(0)) + c
            if out[e] == 0:
                del out[e]
        return Scalar(self, out)

    def rational(self, c) -> "Scalar":
        return self.from_terms({Fraction(0): Fraction(c)})

    @property
    def zero(self) -> "Scalar":
        return Scalar(self, {})

    @property
    def one(self) -> "Scalar":
        return self.rational(1)

    def v_pow(self, r) -> "Scalar":
        """The monomial v^r; r must have denominator dividing N."""
        return self.from_terms({Fraction(r): Fraction(1)})

    @property
    def q(self) -> "Scalar":
        return self.v_pow(2)

    def quantum_integer(self, n: int) -> "Scalar":
        """[n] = (v^n - v^-n)/(v - v^-1) = v^(n-1) + v^(n-3) + ... + v^(1-n)."""
        sign = 1 if n >= 0 else -1
        return self.from_terms(
            {Fraction(sign * (abs(n) - 1 - 2 * k)): Fraction(sign) for k in range(abs(n))}
        )

    def quantum_binomial(self, n: int, k: int) -> "Scalar":
        """Gaussian binomial [n; k], by the v-Pascal recursion (no division)."""
        if k < 0 or k > n:
            return self.zero
        row = [self.one]
        for m in range(1, n + 1):
            new = [self.one]
            for j in range(1, m):
                new.append(self.v_pow(m - j) * row[j - 1] + self.v_pow(-j) * row[j])
            new.append(self.one)
            row = new
        return row[k]

    def parse(self, text: str) -> "Scalar":
        return parse_scalar(self, text)


class Scalar:
    """Immutable ring element; construct through a ScalarRing."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: ScalarRing, terms: dict):
        self.ring = ring
        self.terms = terms

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.ring != self.ring:
                raise ValueError("mixing scalars from different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
            if out[e] == 0:
                del out[e]
        return Scalar(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict[Fraction, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                acc[e1 + e2] = acc.get(e1 + e2, Fraction(0)) + c1 * c2
        return self.ring.from_terms(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers: multiply by v_pow(-r) instead")
        out = self.ring.one
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.rational(other)
        return isinstance(other, Scalar) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.p, self.ring.n_denom, tuple(sorted(self.terms.items()))))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, q) -> float:
        """Numeric value sum c * q^(e/2); cross-check channel only."""
        if q < 2:
            raise ValueError("q must be at least 2")
        return float(sum(c * float(q) ** (e / 2) for e, c in self.terms.items()))

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                parts.append(str(c))
            else:
                parts.append(f"{c}*v^({e})")
        return " + ".join(parts)

    __repr__ = render


_TERM = re.compile(
    r"^(?P<coef>[+-]?\d+(?:/\d+)?|[+-])?"
    r"(?P<star>\*)?"
    r"(?P<v>v(?:\^\(?(?P<exp>[+-]?\d+(?:/\d+)?)\)?)?)?$"
)


def parse_scalar(ring: ScalarRing, text: str) -> Scalar:
    """Parse the render() format back into a Scalar (round-trip exact)."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    s = s.replace("-", "+-").replace("^(+-", "^(-").replace("v^+-", "v^-")
    if s.startswith("+"):
        s = s[1:]
    terms: dict[Fraction, Fraction] = {}
    for chunk in s.split("+"):
        if not chunk:
            continue  # "+-" sign splits leave empty slots
        m = _TERM.match(chunk)
        if not m or (m.group("coef") is None and m.group("v") is None):
            raise ValueError(f"malformed scalar term {chunk!r}")
        coef = m.group("coef")
        if coef in (None, "", "-"):
            c = Fraction(-1 if coef == "-" else 1)
        else:
            c = Fraction(coef)
        if m.group("v"):
            e = Fraction(m.group("exp")) if m.group("exp") else Fraction(1)
        else:
            e = Fraction(0)
        terms[e] = terms.get(e, Fraction(0)) + c
    return ring.from_terms(terms)
