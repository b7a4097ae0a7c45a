"""Finite linear combinations with Scalar coefficients.

Shared container for Hall elements, tensor elements, and normal-ordered
monomial sums: a map from hashable terms to nonzero Scalars.
"""

from __future__ import annotations

from fractions import Fraction

from .scalar import Scalar, ScalarRing


class Combination:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: ScalarRing, terms=None):
        self.ring = ring
        self.terms = {}
        if terms:
            for t, c in terms.items():
                if c:
                    self.terms[t] = c

    @classmethod
    def basis(cls, ring, term, coeff=None):
        c = ring.one if coeff is None else coeff
        return cls(ring, {term: c})

    @classmethod
    def zero(cls, ring):
        return cls(ring, {})

    def __add__(self, other):
        out = dict(self.terms)
        for t, c in other.terms.items():
            s = out.get(t, self.ring.zero) + c
            if s:
                out[t] = s
            else:
                out.pop(t, None)
        return type(self)(self.ring, out)

    def __neg__(self):
        return type(self)(self.ring, {t: -c for t, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        if isinstance(s, (int, Fraction)):
            s = self.ring.rational(s)
        if s.is_zero():
            return type(self)(self.ring, {})
        return type(self)(self.ring, {t: c * s for t, c in self.terms.items()})

    def add_term(self, term, coeff):
        """In-place accumulate; used while building sums."""
        s = self.terms.get(term, self.ring.zero) + coeff
        if s:
            self.terms[term] = s
        else:
            self.terms.pop(term, None)

    def coeff(self, term) -> Scalar:
        return self.terms.get(term, self.ring.zero)

    def items_sorted(self):
        return sorted(self.terms.items(), key=lambda kv: repr(kv[0]))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __len__(self):
        return len(self.terms)
