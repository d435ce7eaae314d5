"""Moy-Prasad filtrations, apartments and the SL2 tree for split type-A groups.

Points of the apartment of the diagonal torus are rational vectors ``x`` with
``<e_i - e_j, x> = x_i - x_j``.  Subgroups are never enumerated: each level
``r`` is described by a table of ideal exponents, one per matrix entry.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations, product

from .errors import DimensionMismatch, PrecisionTooLow, InsufficientPrecision, QTooLarge
from .local_field import LocalFieldDesc, LocalFieldElement
from .root_data import ChevalleyPinning, RootSystem, pairing, type_a_datum


# levels ----------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Level:
    """A real level r, or r+ (the union of all levels s > r)."""

    value: Fraction
    plus: bool = False

    @classmethod
    def of(cls, r) -> "Level":
        if isinstance(r, Level):
            return r
        if isinstance(r, str):
            r = r.strip()
            if r.endswith("+"):
                return cls(Fraction(r[:-1]), True)
            return cls(Fraction(r))
        return cls(Fraction(r))

    def __str__(self):
        return f"{self.value}{'+' if self.plus else ''}"


def ceil_at(level: Level, shift=0) -> int:
    """Smallest integer k with k >= level - shift (k > level - shift for r+)."""
    t = level.value - Fraction(shift)
    return math.floor(t) + 1 if level.plus else math.ceil(t)


# points ----------------------------------------------------------------------

@dataclass(frozen=True)
class BTTriple:
    """A point of the apartment of the diagonal torus in SL_n or GL_n."""

    kind: str
    n: int
    x: tuple

    def __post_init__(self):
        if len(self.x) != self.n:
            raise DimensionMismatch(f"point has {len(self.x)} coordinates, group has rank data for n = {self.n}")
        object.__setattr__(self, "x", tuple(Fraction(c) for c in self.x))
        object.__setattr__(self, "kind", self.kind.upper())

    @classmethod
    def sl(cls, n: int, x=None) -> "BTTriple":
        return cls("SL", n, tuple(x) if x is not None else (0,) * n)

    @classmethod
    def gl(cls, n: int, x=None) -> "BTTriple":
        return cls("GL", n, tuple(x) if x is not None else (0,) * n)

    @property
    def root_system(self) -> RootSystem:
        return type_a_datum(self.n, self.kind)

    @property
    def pinning(self) -> ChevalleyPinning:
        return ChevalleyPinning.type_a(self.n, self.kind)

    @property
    def rank(self) -> int:
        return self.n - 1 if self.kind == "SL" else self.n

    def a(self, i: int, j: int) -> Fraction:
        """<e_i - e_j, x>."""
        return self.x[i] - self.x[j]

    def central_coordinate(self) -> Fraction:
        return sum(self.x) / self.n

    def reduced(self) -> tuple:
        """Projection [x] to the reduced building: drop the central component."""
        c = self.central_coordinate()
        return tuple(v - c for v in self.x)

    def translate(self, v) -> "BTTriple":
        return BTTriple(self.kind, self.n, tuple(a + Fraction(b) for a, b in zip(self.x, v)))

    def permute(self, perm) -> "BTTriple":
        """Action of the Weyl element sending coordinate i to perm[i]."""
        out = [None] * self.n
        for i, j in enumerate(perm):
            out[j] = self.x[i]
        return BTTriple(self.kind, self.n, tuple(out))

    def max_denominator(self) -> int:
        return reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in self.reduced()), 1)

    def is_vertex(self) -> bool:
        return all((self.a(i, j)).denominator == 1 for i in range(self.n) for j in range(self.n))

    def __str__(self):
        return f"{self.kind}{self.n}[" + ", ".join(str(c) for c in self.x) + "]"


def root_pairs(n: int):
    return [(i, j) for i in range(n) for j in range(n) if i != j]


def mp_exponent(x: BTTriple, alpha, r) -> int:
    """Exponent k with U_alpha(F)_{x,r} = x_alpha(p^k O)."""
    lv = Level.of(r)
    return ceil_at(lv, pairing(alpha, x.x))


def torus_level(r) -> int:
    """Torus piece of G_{x,r}: 0 means the units O^x, k >= 1 means 1 + p^k O."""
    lv = Level.of(r)
    if lv.value == 0 and not lv.plus:
        return 0
    return ceil_at(lv)


def exponent_table(x: BTTriple, r) -> list[list[int]]:
    """Per-entry exponents of G_{x,r}: off-diagonal ideal exponents, diagonal torus level."""
    lv = Level.of(r)
    n = x.n
    return [[torus_level(lv) if i == j else ceil_at(lv, x.a(i, j)) for j in range(n)] for i in range(n)]


def lie_exponent_table(x: BTTriple, r) -> list[list[int]]:
    """Per-entry exponents of the lattice g_{x,r} (any real r)."""
    lv = Level.of(r)
    n = x.n
    return [[ceil_at(lv) if i == j else ceil_at(lv, x.a(i, j)) for j in range(n)] for i in range(n)]


def _check(pred):
    try:
        return pred()
    except InsufficientPrecision as exc:
        raise PrecisionTooLow(str(exc)) from exc


def mp_membership(g, x: BTTriple, r) -> bool:
    """Membership of the matrix g in G(F)_{x,r} via the closed-form congruence description."""
    lv = Level.of(r)
    table = exponent_table(x, lv)
    n = x.n
    for i in range(n):
        for j in range(n):
            e = table[i][j]
            if i == j:
                entry = g[i][i] if e == 0 else g[i][i] - 1
                if not _check(lambda: entry.ideal_member(e)):
                    return False
            elif not _check(lambda: g[i][j].ideal_member(e)):
                return False
    if table[0][0] == 0:
        d = det(g)
        if d.val() != 0:
            return False
    return True


def lie_membership(m, x: BTTriple, r) -> bool:
    table = lie_exponent_table(x, r)
    return all(_check(lambda: m[i][j].ideal_member(table[i][j]))
               for i in range(x.n) for j in range(x.n))


# matrix helpers over local fields ----------------------------------------------

def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[reduce(lambda s, t: s + t, (a[i][l] * b[l][j] for l in range(k))) for j in range(m)] for i in range(n)]


def identity(fd: LocalFieldDesc, n: int):
    return [[fd.one() if i == j else fd.zero() for j in range(n)] for i in range(n)]


def det(g):
    n = len(g)
    if n == 1:
        return g[0][0]
    if n == 2:
        return g[0][0] * g[1][1] - g[0][1] * g[1][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in g[1:]]
        term = g[0][j] * det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def mat_inverse(g):
    n = len(g)
    if n == 2:
        d = det(g).inverse()
        return [[g[1][1] * d, -g[0][1] * d], [-g[1][0] * d, g[0][0] * d]]
    a = [list(row) for row in g]
    fd = g[0][0].field
    inv = identity(fd, n)
    for c in range(n):
        piv = min((r for r in range(c, n) if not a[r][c].is_zero()), key=lambda r: a[r][c].val())
        a[c], a[piv] = a[piv], a[c]
        inv[c], inv[piv] = inv[piv], inv[c]
        s = a[c][c].inverse()
        a[c] = [v * s for v in a[c]]
        inv[c] = [v * s for v in inv[c]]
        for r in range(n):
            if r != c and not a[r][c].is_zero():
                f = a[r][c]
                a[r] = [v - f * w for v, w in zip(a[r], a[c])]
                inv[r] = [v - f * w for v, w in zip(inv[r], inv[c])]
    return inv


def mat_sub_identity(g):
    return [[g[i][j] - 1 if i == j else g[i][j] for j in range(len(g))] for i in range(len(g))]


def to_field_matrix(fd: LocalFieldDesc, rows):
    return [[v if isinstance(v, LocalFieldElement) else fd(v) for v in row] for row in rows]


# generator oracle ----------------------------------------------------------------

def _random_integral(fd: LocalFieldDesc, rng: random.Random, digits: int | None = None):
    digits = digits or fd.precision
    return fd(rng.randrange(fd.p ** digits))


def _random_unit(fd: LocalFieldDesc, rng: random.Random):
    while True:
        v = rng.randrange(fd.p ** fd.precision)
        if v % fd.p:
            return fd(v)


def random_generator(x: BTTriple, r, fd: LocalFieldDesc, rng: random.Random):
    """One random generator of G_{x,r}: a torus element or a root group element."""
    lv = Level.of(r)
    n = x.n
    pairs = root_pairs(n)
    if rng.random() < 1 / (len(pairs) + 1):
        t = torus_level(lv)
        g = identity(fd, n)
        if x.kind == "SL":
            i = rng.randrange(n - 1)
            u = _random_unit(fd, rng) if t == 0 else 1 + fd(fd.p ** t) * _random_integral(fd, rng)
            g[i][i], g[i + 1][i + 1] = u, u.inverse()
        else:
            i = rng.randrange(n)
            g[i][i] = _random_unit(fd, rng) if t == 0 else 1 + fd(fd.p ** t) * _random_integral(fd, rng)
        return g
    i, j = rng.choice(pairs)
    k = ceil_at(lv, x.a(i, j))
    g = identity(fd, n)
    g[i][j] = fd(Fraction(fd.p) ** k) * _random_integral(fd, rng)
    return g


def generator_product(x: BTTriple, r, fd: LocalFieldDesc, rng: random.Random, max_factors: int = 6):
    """A random product of at most ``max_factors`` generators of G_{x,r}."""
    g = identity(fd, x.n)
    for _ in range(rng.randint(1, max_factors)):
        g = mat_mul(g, random_generator(x, r, fd, rng))
    return g


def generator_decomposition(g, x: BTTriple, r) -> bool:
    """Decide g in G_{x,r} by reducing g to the identity with generator moves only.

    A move multiplies on the left by x_alpha(t) with val(t) >= the root group
    exponent, or by a torus element of the required level.  This uses the
    defining generators only and serves as an oracle for ``mp_membership``.
    """
    lv = Level.of(r)
    n = x.n
    a = [list(row) for row in g]

    def exp(i, j):
        return ceil_at(lv, x.a(i, j))

    def allowed(t, i, j):
        return t.is_zero() or t.val() >= exp(i, j)

    def add_row(i, j, t):  # row_i += t * row_j, i.e. left multiplication by x_{ij}(t)
        a[i] = [u + t * v for u, v in zip(a[i], a[j])]

    try:
        for c in range(n):
            if a[c][c].val() > 0 or a[c][c].is_zero():
                # bring in a unit pivot from another row using an allowed move
                fixed = False
                for k in range(n):
                    if k == c or (k < c):
                        continue
                    if a[k][c].val() == 0 and exp(c, k) <= 0:
                        add_row(c, k, a[c][c].field.one())
                        fixed = a[c][c].val() == 0
                        if fixed:
                            break
                if not fixed:
                    return False
            for i in range(n):
                if i == c or a[i][c].is_zero():
                    continue
                t = -(a[i][c] / a[c][c])
                if not allowed(t, i, c):
                    return False
                add_row(i, c, t)
        # what is left is diagonal
        t_level = torus_level(lv)
        for i in range(n):
            d = a[i][i]
            if t_level == 0:
                if d.val() != 0:
                    return False
            elif not (d - 1).ideal_member(t_level):
                return False
        if x.kind == "SL":
            prod = reduce(lambda s, t: s * t, (a[i][i] for i in range(n)))
            if not prod == 1:
                return False
        return True
    except InsufficientPrecision as exc:
        raise PrecisionTooLow(str(exc)) from exc


# jumps, quotients, duals ---------------------------------------------------------

def jump_set(x: BTTriple, R) -> list[Fraction]:
    """All r in (0, R] with G_{x,r} != G_{x,r+}."""
    R = Fraction(R)
    out = set()
    for i, j in root_pairs(x.n):
        a = x.a(i, j)
        k = math.floor(-a)
        while a + k <= R:
            if a + k > 0:
                out.add(a + k)
            k += 1
    if x.rank:
        out.update(Fraction(k) for k in range(1, math.floor(R) + 1))
    return sorted(out)


def jumping_roots(x: BTTriple, r) -> list[tuple[int, int]]:
    r = Fraction(r)
    return [(i, j) for i, j in root_pairs(x.n) if (r - x.a(i, j)).denominator == 1]


def quotient_dim(x: BTTriple, r) -> int:
    """dim over F_q of G_{x,r}/G_{x,r+} for r > 0."""
    r = Fraction(r)
    if r <= 0:
        raise ValueError("quotient_dim needs r > 0")
    return len(jumping_roots(x, r)) + (x.rank if r.denominator == 1 else 0)


def _epsilon(*points) -> Fraction:
    den = 1
    for pt in points:
        den = den * pt.max_denominator() // math.gcd(den, pt.max_denominator())
    return Fraction(1, 1000 * den)


def dual_lattice(x: BTTriple, r) -> list[list[int]]:
    """Exponents of g*_{x,r} = {X : tr(XY) in pO for all Y in g_{x,s}, s > -r}.

    Solved entrywise: tr(XY) = sum X_ij Y_ji, and since the exponents of
    g_{x,s} increase with s the binding constraint is s just above -r.
    """
    lv = Level.of(r)
    # g*_{x,r+} is the union of g*_{x,t} for t > r, which pairs against g_{x,-r}
    s = Level(-lv.value) if lv.plus else Level(-lv.value, True)
    table = lie_exponent_table(x, s)
    n = x.n
    return [[1 - table[j][i] for j in range(n)] for i in range(n)]


def double_dual(x: BTTriple, r) -> list[list[int]]:
    """Dual of the family s -> g*_{x,s}, evaluated at r, by the same rule."""
    lv = Level.of(r)
    eps = _epsilon(x) / 2
    # the binding member of {g*_{x,s} : s > -r} sits just above -r
    s = Level(-lv.value - eps) if lv.plus else Level(-lv.value + eps)
    table = dual_lattice(x, s)
    n = x.n
    return [[1 - table[j][i] for j in range(n)] for i in range(n)]


def points_equivalent(x: BTTriple, y: BTTriple, R=None) -> bool:
    """Compare the filtrations attached to x and y at all levels up to R."""
    if (x.kind, x.n) != (y.kind, y.n):
        raise DimensionMismatch("points of different groups")
    den = max(x.max_denominator(), y.max_denominator())
    R = Fraction(R) if R is not None else Fraction(2 * den)
    step = Fraction(1, 2 * den * 2)
    r = Fraction(0)
    while r <= R:
        for lv in (Level(r), Level(r, True)):
            if exponent_table(x, lv) != exponent_table(y, lv):
                return False
        r += step
    return True


def conjugate_by_weyl(x: BTTriple, perm) -> BTTriple:
    return x.permute(perm)


# Moy-Prasad isomorphism -------------------------------------------------------------

def _lie_key(m, x: BTTriple, r: Fraction):
    """Coordinates of m in g_{x,r}/g_{x,r+} (residues of the jumping entries)."""
    lo = lie_exponent_table(x, Level(r))
    hi = lie_exponent_table(x, Level(r, True))
    key = []
    n = x.n
    for i in range(n):
        for j in range(n):
            if x.kind == "SL" and i == j == n - 1:
                continue
            if hi[i][j] > lo[i][j]:
                e = lo[i][j]
                entry = m[i][j] * m[i][j].field(Fraction(m[i][j].field.p) ** (-e))
                key.append(entry.residue())
    return tuple(key)


def _coset_representative(x: BTTriple, r: Fraction, coords, fd: LocalFieldDesc):
    """Group element whose image under g -> g - 1 has the given quotient coordinates."""
    lo = lie_exponent_table(x, Level(r))
    hi = lie_exponent_table(x, Level(r, True))
    n = x.n
    slots = [(i, j) for i in range(n) for j in range(n)
             if hi[i][j] > lo[i][j] and not (x.kind == "SL" and i == j == n - 1)]
    values = dict(zip(slots, coords))
    g = identity(fd, n)
    # torus part
    for i in range(n):
        if (i, i) in values:
            u = 1 + fd(fd.p ** lo[i][i]) * fd(values[(i, i)])
            t = identity(fd, n)
            t[i][i] = u
            if x.kind == "SL":
                t[n - 1][n - 1] = t[n - 1][n - 1] * u.inverse()
            g = mat_mul(g, t)
    for (i, j), c in values.items():
        if i != j:
            u = identity(fd, n)
            u[i][j] = fd(Fraction(fd.p) ** lo[i][j]) * fd(c)
            g = mat_mul(g, u)
    return g, len(slots)


def mp_lie_isomorphism_check(x: BTTriple, r, p: int, sample_count: int = 50,
                             precision: int = 4, seed: int = 0) -> bool:
    """Verify G_{x,r}/G_{x,r+} -> g_{x,r}/g_{x,r+}, g -> g - 1, is a bijective homomorphism.

    Every class of the Lie quotient is hit by an explicit coset representative
    (surjectivity, with distinct classes for distinct representatives); sampled
    products check the homomorphism property and sampled elements check that the
    kernel is exactly G_{x,r+}.
    """
    r = Fraction(r)
    if r <= 0:
        raise ValueError("the Moy-Prasad isomorphism is stated for r > 0")
    fd = LocalFieldDesc.qp(p, precision)
    rng = random.Random(seed)
    dim = quotient_dim(x, r)
    # surjectivity and injectivity on representatives
    seen = {}
    for coords in product(range(p), repeat=dim):
        g, slots = _coset_representative(x, r, coords, fd)
        assert slots == dim
        if not mp_membership(g, x, r):
            return False
        key = _lie_key(mat_sub_identity(g), x, r)
        if key != tuple(coords) or key in seen:
            return False
        seen[key] = g
    if len(seen) != p ** dim:
        return False
    for _ in range(sample_count):
        g = generator_product(x, r, fd, rng)
        h = generator_product(x, r, fd, rng)
        kg = _lie_key(mat_sub_identity(g), x, r)
        kh = _lie_key(mat_sub_identity(h), x, r)
        kgh = _lie_key(mat_sub_identity(mat_mul(g, h)), x, r)
        if tuple((a + b) % p for a, b in zip(kg, kh)) != kgh:
            return False
        if not lie_membership(mat_sub_identity(g), x, r):
            return False
        # every coset is represented: rep^{-1} g lies in G_{x,r+}
        rep = seen[kg]
        if not mp_membership(mat_mul(mat_inverse(rep), g), x, Level(r, True)):
            return False
        # kernel: g in G_{x,r+} exactly when its key vanishes
        in_next = mp_membership(g, x, Level(r, True))
        if in_next != (not any(kg)):
            return False
    return True


# apartments ----------------------------------------------------------------------

@dataclass
class ApartmentWindow:
    root_system: RootSystem
    box: tuple
    hyperplanes: list = field(default_factory=list)   # (root, k): <root, x> = k
    chambers: list = field(default_factory=list)      # (floor vector, vertices in box coordinates)
    vertices: list = field(default_factory=list)

    def to_cocharacter(self, t) -> tuple:
        return _box_to_cochar(self.root_system, t)


def _simple_coroots(rs: RootSystem):
    return [rs.coroots[i] for i in rs.simple_roots]


def _box_to_cochar(rs: RootSystem, t) -> tuple:
    cor = _simple_coroots(rs)
    return tuple(sum(Fraction(ti) * c[k] for ti, c in zip(t, cor)) for k in range(rs.dim))


def _linear_form(rs: RootSystem, alpha) -> list[Fraction]:
    return [pairing(alpha, c) for c in _simple_coroots(rs)]


def _solve(rows, rhs):
    n = len(rows)
    a = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return None
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [v * inv for v in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [v - f * w for v, w in zip(a[r], a[c])]
    return tuple(row[-1] for row in a)


def apartment_window(rs: RootSystem, box) -> ApartmentWindow:
    """Hyperplanes <alpha, x> in Z and the alcoves contained in a box.

    Coordinates are coefficients on the simple coroots.  ``box`` is either a
    half-width B (the box [-B, B]^rank) or a list of (lo, hi) pairs; a box with
    lo > hi in some coordinate is empty.
    """
    n = rs.rank
    if n > 3:
        raise ValueError("apartment windows are limited to rank <= 3")
    if isinstance(box, (int, float, Fraction)):
        box = [(-Fraction(box), Fraction(box))] * n
    box = tuple((Fraction(lo), Fraction(hi)) for lo, hi in box)
    win = ApartmentWindow(rs, box)
    if any(lo > hi for lo, hi in box) or n == 0:
        return win
    forms = [(alpha, _linear_form(rs, alpha)) for alpha in rs.positive_roots()]
    for alpha, c in forms:
        corners = [sum(ci * v for ci, v in zip(c, corner)) for corner in product(*box)]
        lo, hi = min(corners), max(corners)
        for k in range(math.ceil(lo), math.floor(hi) + 1):
            win.hyperplanes.append((alpha, k))
    # alcoves: floor vectors of generic sample points
    step = Fraction(1, 4 * (n + 1))
    offset = Fraction(1, 997)
    axes = []
    for lo, hi in box:
        pts, v = [], lo + offset
        while v < hi:
            pts.append(v)
            v += step
        axes.append(pts)
    candidates = set()
    for t in product(*axes):
        vals = [sum(ci * ti for ci, ti in zip(c, t)) for _, c in forms]
        if any(v.denominator == 1 for v in vals):
            continue
        candidates.add(tuple(math.floor(v) for v in vals))
    vertex_set = set()
    for fl in sorted(candidates):
        verts = _alcove_vertices([c for _, c in forms], fl, n)
        if all(lo <= v[k] <= hi for v in verts for k, (lo, hi) in enumerate(box)):
            win.chambers.append((fl, verts))
            vertex_set.update(verts)
    win.vertices = sorted(vertex_set)
    return win


def _alcove_vertices(forms, floors, n):
    walls = []
    for c, k in zip(forms, floors):
        walls.append((c, k))
        walls.append((c, k + 1))
    verts = set()
    for choice in combinations(walls, n):
        sol = _solve([c for c, _ in choice], [k for _, k in choice])
        if sol is None:
            continue
        ok = all(k <= sum(ci * si for ci, si in zip(c, sol)) <= k + 1 for c, k in zip(forms, floors))
        if ok:
            verts.add(sol)
    return sorted(verts)


def walls_of_chamber(win: ApartmentWindow, chamber) -> list:
    """Hyperplanes of the window meeting the closure of a chamber."""
    _, verts = chamber
    rs = win.root_system
    out = []
    for alpha, k in win.hyperplanes:
        c = _linear_form(rs, alpha)
        if any(sum(ci * vi for ci, vi in zip(c, v)) == k for v in verts):
            out.append((alpha, k))
    return out


# finite reductive quotients ---------------------------------------------------------

def _finite_sl_order(n: int, q: int) -> int:
    order = q ** (n * (n - 1) // 2)
    for k in range(2, n + 1):
        order *= q ** k - 1
    return order


def _fq_mul(a, b, q):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) % q for j in range(n)) for i in range(n))


def _closure(gens, q, n):
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = _fq_mul(g, s, q)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


def _root_element(n, i, j, c, q):
    m = [[int(a == b) for b in range(n)] for a in range(n)]
    m[i][j] = c % q
    return tuple(tuple(r) for r in m)


def _torus_gens(n, q):
    gens = []
    for g in range(2, q):
        for i in range(n - 1):
            m = [[int(a == b) for b in range(n)] for a in range(n)]
            m[i][i] = g
            m[i + 1][i + 1] = pow(g, -1, q)
            gens.append(tuple(tuple(r) for r in m))
    return gens


@dataclass
class ParabolicReport:
    group_order: int
    image_order: int
    image_roots: list
    is_parabolic: bool
    is_proper: bool
    radical_order: int
    unipotent_image_order: int
    maps_onto_radical: bool


def parabolic_image_check(x: BTTriple, y: BTTriple, q: int, max_order: int = 10_000) -> ParabolicReport:
    """Image of G_{x,0} cap G_{y,0} in G_{y,0}/G_{y,0+} = SL_n(F_q), by enumeration.

    The image is generated by the torus and the root groups surviving in the
    quotient; the same is done for G_{x,0+} cap G_{y,0}.
    """
    if x.kind != "SL" or y.kind != "SL" or x.n != y.n:
        raise ValueError("parabolic images are computed for SL_n")
    if not y.is_vertex():
        raise ValueError("y must be a vertex")
    n = x.n
    order = _finite_sl_order(n, q)
    if order > max_order:
        raise QTooLarge(f"|SL_{n}(F_{q})| = {order} exceeds the enumeration bound {max_order}")
    roots, roots_plus = [], []
    for i, j in root_pairs(n):
        shift = y.a(i, j)  # conjugating by diag(p^{y_i}) moves the y-exponents to 0
        m = ceil_at(Level(Fraction(0)), x.a(i, j)) + shift
        m_plus = ceil_at(Level(Fraction(0), True), x.a(i, j)) + shift
        if max(0, m) == 0:
            roots.append((i, j))
        if max(0, m_plus) == 0:
            roots_plus.append((i, j))
    elements = lambda rts: [_root_element(n, i, j, c, q) for i, j in rts for c in range(1, q)]
    image = _closure(_torus_gens(n, q) + elements(roots), q, n)
    unip = _closure(elements(roots_plus), q, n)
    root_set = set(roots)
    # parabolic: contains a Borel, i.e. some ordering of the coordinates makes all "upper" roots present
    from itertools import permutations
    is_parabolic = any(all((w[i], w[j]) in root_set for i in range(n) for j in range(i + 1, n))
                       for w in permutations(range(n)))
    radical_roots = [(i, j) for i, j in roots if (j, i) not in root_set]
    radical = _closure(elements(radical_roots), q, n)
    return ParabolicReport(order, len(image), sorted(roots), is_parabolic, len(image) < order,
                           len(radical), len(unip), unip == radical)


# the SL2 tree --------------------------------------------------------------------

@dataclass
class TreeBall:
    q: int
    depth: int
    vertices: list
    edges: list
    vertex_type: dict

    def neighbors(self, v):
        return [b if a == v else a for a, b in self.edges if v in (a, b)]

    def edge_midpoints(self):
        return [(a, b) for a, b in self.edges]

    def describe(self) -> str:
        lines = [f"tree q={self.q} depth={self.depth} vertices={len(self.vertices)} edges={len(self.edges)}"]
        for v in self.vertices:
            name = "root" if not v else ".".join(map(str, v))
            lines.append(f"vertex {name} type={self.vertex_type[v]} degree={len(self.neighbors(v))}")
        for a, b in self.edges:
            na = "root" if not a else ".".join(map(str, a))
            nb = ".".join(map(str, b))
            lines.append(f"edge {na} -- {nb} midpoint")
        return "\n".join(lines)


def sl2_tree(q: int, depth: int) -> TreeBall:
    """Ball of radius ``depth`` in the (q+1)-regular tree around a vertex.

    Neighbours of the root are labelled by P^1(F_q) (0..q); deeper vertices
    get q children each.  Vertex types alternate with the distance.
    """
    vertices = [()]
    edges = []
    frontier = [()]
    for level in range(depth):
        nxt = []
        for v in frontier:
            labels = range(q + 1) if not v else range(q)
            for c in labels:
                w = v + (c,)
                vertices.append(w)
                edges.append((v, w))
                nxt.append(w)
        frontier = nxt
    return TreeBall(q, depth, vertices, edges, {v: len(v) % 2 for v in vertices})


def tree_is_thick(ball: TreeBall) -> bool:
    """Interior vertices (codimension-one faces) lie in at least three chambers (edges)."""
    interior = [v for v in ball.vertices if len(v) < ball.depth]
    return all(len(ball.neighbors(v)) >= 3 for v in interior)


def tree_apartment(ball: TreeBall, leaf_a, leaf_b) -> list:
    """Edges of the geodesic between two leaves (a piece of an apartment)."""
    def path(v):
        return [v[:k] for k in range(len(v) + 1)]
    pa, pb = path(leaf_a), path(leaf_b)
    common = max(k for k in range(min(len(pa), len(pb))) if pa[k] == pb[k])
    verts = pa[::-1][: len(pa) - common] + pb[common + 1:]
    return list(zip(verts, verts[1:]))


def tree_is_thin(ball: TreeBall, apartment_edges) -> bool:
    """Inside an apartment every interior vertex lies in exactly two edges."""
    count = {}
    for a, b in apartment_edges:
        count[a] = count.get(a, 0) + 1
        count[b] = count.get(b, 0) + 1
    ends = {apartment_edges[0][0], apartment_edges[-1][1]}
    return all(c == 2 for v, c in count.items() if v not in ends)


def torus_filtration(torus, r):
    """S(F)_r for a supported torus descriptor (see ``tori``)."""
    return torus.filtration(r)


def lie_quotient_basis(x: BTTriple, s, fd: LocalFieldDesc) -> list:
    """Lattice vectors of g_{x,s} whose classes form an F_p-basis of g_{x,s}/g_{x,s+}."""
    s = Fraction(s)
    lo = lie_exponent_table(x, Level(s))
    hi = lie_exponent_table(x, Level(s, True))
    n = x.n
    out = []
    for i in range(n):
        for j in range(n):
            if hi[i][j] <= lo[i][j] or (x.kind == "SL" and i == j == n - 1):
                continue
            m = [[fd.zero() for _ in range(n)] for _ in range(n)]
            m[i][j] = fd(Fraction(fd.p) ** lo[i][j])
            if x.kind == "SL" and i == j:
                m[n - 1][n - 1] = -m[i][i]
            out.append(m)
    return out


def lie_key(m, x: BTTriple, s) -> tuple:
    """Coordinates of m in g_{x,s}/g_{x,s+} with respect to ``lie_quotient_basis``."""
    return _lie_key(m, x, Fraction(s))
