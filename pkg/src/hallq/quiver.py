"""Quivers with loops, the lattice K(R), and the Euler forms.

K(R) is coordinatized by the classes of the indecomposable projectives
P_i (a free lattice: Krull-Schmidt holds for finitely generated
projectives).  The simple classes sit inside via the standard presentation

    S_i = P_i - sum over arrows a with tail i of P_head(a),

a change of basis that is triangular for the path order with diagonal
1 - c_i, hence invertible over Q.  The generalized Euler form is computed
by expanding both arguments in simple classes.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction

from .scalar import ScalarRing


class QuiverError(ValueError):
    pass


class ConditionAError(QuiverError):
    """The loop-stripped quiver has an oriented cycle."""


class ConditionBError(QuiverError):
    """Some vertex has exactly one loop."""


class ChargeError(QuiverError):
    """Charge vector incompatible with the quiver or the field."""


KVector = tuple  # integer coordinates in the projective basis {P_i}


def kv_add(x: KVector, y: KVector) -> KVector:
    return tuple(a + b for a, b in zip(x, y))


def kv_sub(x: KVector, y: KVector) -> KVector:
    return tuple(a - b for a, b in zip(x, y))


def kv_neg(x: KVector) -> KVector:
    return tuple(-a for a in x)


@dataclass(frozen=True)
class Quiver:
    p: int
    vertices: tuple
    loops: tuple
    edges: tuple  # non-loop (tail, head) vertex-id pairs
    charges: tuple

    # derived, filled in __post_init__
    index: dict = field(init=False, repr=False, compare=False)
    arrows: tuple = field(init=False, repr=False, compare=False)
    topo_order: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.p < 2 or any(self.p % k == 0 for k in range(2, self.p)):
            raise QuiverError(f"field size {self.p} is not prime")
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex ids")
        object.__setattr__(self, "index", {v: i for i, v in enumerate(self.vertices)})
        for c, v in zip(self.loops, self.vertices):
            if c < 0:
                raise QuiverError(f"negative loop count at {v}")
            if c == 1:
                raise ConditionBError(f"vertex {v} has exactly one loop")
        for t, h in self.edges:
            if t not in self.index or h not in self.index:
                raise QuiverError(f"edge {t}->{h} uses unknown vertex")
            if t == h:
                raise QuiverError("loops must be declared via loops=, not edge lines")
        # arrows: loops first (grouped by vertex), then edges in input order
        arrows = []
        for i, c in enumerate(self.loops):
            arrows.extend([(i, i)] * c)
        arrows.extend((self.index[t], self.index[h]) for t, h in self.edges)
        object.__setattr__(self, "arrows", tuple(arrows))
        object.__setattr__(self, "topo_order", self._toposort())
        self._check_charges()

    def _toposort(self):
        n = len(self.vertices)
        outs = {i: [] for i in range(n)}
        indeg = [0] * n
        for t, h in self.edges:
            outs[self.index[t]].append(self.index[h])
            indeg[self.index[h]] += 1
        ready = sorted(i for i in range(n) if indeg[i] == 0)
        order = []
        while ready:
            i = ready.pop(0)
            order.append(i)
            for j in sorted(outs[i]):
                indeg[j] -= 1
                if indeg[j] == 0:
                    ready.append(j)
            ready.sort()
        if len(order) != n:
            raise ConditionAError("loop-stripped quiver has an oriented cycle")
        return tuple(order)

    def _check_charges(self):
        if len(self.charges) != len(self.vertices):
            raise ChargeError("one charge per vertex required")
        for v, c, m in zip(self.vertices, self.loops, self.charges):
            if m < 1:
                raise ChargeError(f"charge at {v} must be positive")
            if c == 0 and m != 1:
                raise ChargeError(f"vertex {v} has no loops, charge must be 1")
            if m > self.p**c:
                raise ChargeError(
                    f"charge {m} at {v} exceeds {self.p}^{c} available simples"
                )

    # ------------------------------------------------------------------
    # K(R) and forms

    @property
    def n(self) -> int:
        return len(self.vertices)

    def zero_kvector(self) -> KVector:
        return (0,) * self.n

    def proj_class(self, i: int) -> KVector:
        return tuple(1 if j == i else 0 for j in range(self.n))

    def euler_dimvec(self, a, b) -> int:
        """Euler form on dimension vectors (hom minus ext for actual reps)."""
        out = sum(x * y for x, y in zip(a, b))
        for t, h in self.arrows:
            out -= a[t] * b[h]
        return out

    def _simple_matrix(self):
        """Rows are the simple classes in projective coordinates."""
        c = [[0] * self.n for _ in range(self.n)]
        for i in range(self.n):
            c[i][i] = 1
        for t, h in self.arrows:
            c[t][h] -= 1
        return c

    def class_of_dimvec(self, d) -> KVector:
        """Class of any representation with dimension vector d."""
        if len(d) != self.n or any(x < 0 for x in d):
            raise QuiverError("dimension vector must be nonnegative, one per vertex")
        c = self._simple_matrix()
        return tuple(sum(d[i] * c[i][j] for i in range(self.n)) for j in range(self.n))

    def simple_class(self, i: int) -> KVector:
        return self.class_of_dimvec(tuple(1 if j == i else 0 for j in range(self.n)))

    def _simple_matrix_inverse(self):
        """Inverse of the simples-in-projectives matrix, exact over Q."""
        n = self.n
        a = [[Fraction(x) for x in row] for row in self._simple_matrix()]
        inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
        for col in range(n):
            sel = next(r for r in range(col, n) if a[r][col] != 0)
            a[col], a[sel] = a[sel], a[col]
            inv[col], inv[sel] = inv[sel], inv[col]
            piv = a[col][col]
            a[col] = [x / piv for x in a[col]]
            inv[col] = [x / piv for x in inv[col]]
            for r in range(n):
                if r != col and a[r][col] != 0:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                    inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
        return inv

    def simple_coords(self, x: KVector):
        """Rational coordinates of x in the simple-class basis."""
        if not hasattr(self, "_sinv"):
            object.__setattr__(self, "_sinv", self._simple_matrix_inverse())
        inv = self._sinv
        return tuple(
            sum(Fraction(x[i]) * inv[i][j] for i in range(self.n))
            for j in range(self.n)
        )

    def euler_form(self, x: KVector, y: KVector) -> Fraction:
        """Generalized Euler form on K(R), rational-valued."""
        r = self.simple_coords(x)
        c = self.simple_coords(y)
        out = Fraction(0)
        for i in range(self.n):
            if r[i] == 0:
                continue
            for j in range(self.n):
                if c[j] == 0:
                    continue
                ss = Fraction(1 if i == j else 0)
                for t, h in self.arrows:
                    if t == i and h == j:
                        ss -= 1
                out += r[i] * c[j] * ss
        return out

    def sym_form(self, x: KVector, y: KVector) -> Fraction:
        return self.euler_form(x, y) + self.euler_form(y, x)

    def borcherds_cartan(self):
        """Symmetric matrix a_ij = (S_i, S_j); diagonal 2 - 2 c_i."""
        s = [self.simple_class(i) for i in range(self.n)]
        a = [
            [int(self.sym_form(s[i], s[j])) for j in range(self.n)]
            for i in range(self.n)
        ]
        for i in range(self.n):
            assert a[i][i] == 2 - 2 * self.loops[i]
            for j in range(self.n):
                assert a[i][j] == a[j][i]
                if i != j:
                    assert a[i][j] <= 0
        return a

    @property
    def scalar_denominator(self) -> int:
        """Ring constant N = 2 |prod (1 - c_i)|."""
        det = 1
        for c in self.loops:
            det *= 1 - c
        return 2 * abs(det)

    def scalar_ring(self) -> ScalarRing:
        return ScalarRing(self.p, self.scalar_denominator)

    # ------------------------------------------------------------------
    # serialization

    def content_key(self) -> str:
        parts = [f"p={self.p}"]
        for v, c, m in zip(self.vertices, self.loops, self.charges):
            parts.append(f"v:{v}:{c}:{m}")
        for t, h in self.edges:
            parts.append(f"e:{t}:{h}")
        return "|".join(parts)

    def content_hash(self) -> str:
        return hashlib.sha256(self.content_key().encode()).hexdigest()[:16]

    def render_kvector(self, x: KVector) -> str:
        return "(" + ",".join(str(a) for a in x) + ")"


def parse_quiver(text: str) -> Quiver:
    """Parse the line-based quiver format.

    Directives (order free, '#' starts a comment):
        field p=<prime>
        vertex <id> loops=<c> [charge=<m>]
        edge <tail> <head>
    """
    p = None
    vertices, loops, charges, edges = [], [], [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind, args = tokens[0], tokens[1:]
        try:
            if kind == "field":
                opts = _keyvals(args)
                p = int(opts.pop("p"))
                _reject_extra(opts)
            elif kind == "vertex":
                name = args[0]
                opts = _keyvals(args[1:])
                vertices.append(name)
                loops.append(int(opts.pop("loops", 0)))
                charges.append(int(opts.pop("charge", 1)))
                _reject_extra(opts)
            elif kind == "edge":
                tail, head = args
                edges.append((tail, head))
            else:
                raise ValueError(f"unknown directive {kind!r}")
        except QuiverError:
            raise
        except Exception as exc:
            raise QuiverError(f"line {lineno}: malformed ({exc})") from exc
    if p is None:
        raise QuiverError("missing 'field p=<prime>' line")
    if not vertices:
        raise QuiverError("quiver has no vertices")
    return Quiver(
        p=p,
        vertices=tuple(vertices),
        loops=tuple(loops),
        edges=tuple(edges),
        charges=tuple(charges),
    )


def _keyvals(args):
    out = {}
    for a in args:
        k, _, v = a.partition("=")
        if not _ or not k or not v:
            raise ValueError(f"expected key=value, got {a!r}")
        out[k] = v
    return out


def _reject_extra(opts):
    if opts:
        raise ValueError(f"unknown options {sorted(opts)}")
