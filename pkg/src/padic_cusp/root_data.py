"""Root systems with coroots and Weyl groups, plus the elementary-matrix pinning in type A."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import DimensionMismatch, UnsupportedType

Vector = tuple


def _dot(u, v) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatch(f"vectors of length {len(u)} and {len(v)}")
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def pairing(chi, x) -> Fraction:
    """<chi, x> for a character chi and a (rational or real) cocharacter x."""
    if len(chi) != len(x):
        raise DimensionMismatch(f"character of length {len(chi)} vs cocharacter of length {len(x)}")
    if any(isinstance(t, float) for t in x):
        return sum(a * b for a, b in zip(chi, x))
    return _dot(chi, x)


def _unit(n: int, i: int, scale=1) -> list:
    v = [0] * n
    v[i] = scale
    return v


def _pos(v) -> bool:
    for c in v:
        if c:
            return c > 0
    return False


@dataclass(frozen=True)
class RootSystem:
    cartan_type: str
    rank: int
    roots: tuple
    coroots: tuple
    simple_roots: tuple  # indices into roots
    central: tuple | None = None  # X_*(Z) direction for GL_n

    @property
    def dim(self) -> int:
        return len(self.roots[0]) if self.roots else (len(self.central) if self.central else 0)

    @property
    def name(self) -> str:
        return f"{self.cartan_type}{self.rank}"

    def index(self, root) -> int:
        return self.roots.index(tuple(root))

    def coroot(self, root):
        return self.coroots[self.index(root)]

    def positive_roots(self) -> list:
        return [r for r in self.roots if _pos(r)]

    def reflect(self, beta, v) -> tuple:
        """s_beta(v) = v - <v, beta^vee> beta."""
        c = _dot(v, self.coroot(beta))
        return tuple(Fraction(a) - c * b for a, b in zip(v, beta))

    def reflection_permutation(self, beta) -> tuple:
        return tuple(self.index(_normalize(self.reflect(beta, r))) for r in self.roots)


def _normalize(v) -> tuple:
    return tuple(int(c) if Fraction(c).denominator == 1 else Fraction(c) for c in v)


def _with_coroots(cartan: str, rank: int, roots: list, central=None) -> RootSystem:
    roots = sorted({_normalize(r) for r in roots}, key=lambda r: tuple(-Fraction(c) for c in r))
    coroots = []
    for r in roots:
        norm = _dot(r, r)
        coroots.append(_normalize(tuple(Fraction(2) * c / norm for c in r)))
    positive = [r for r in roots if _pos(r)]
    pos_set = set(positive)
    simple = []
    for r in positive:
        decomposable = any(
            _normalize(tuple(Fraction(a) - b for a, b in zip(r, s))) in pos_set for s in positive if s != r)
        if not decomposable:
            simple.append(roots.index(r))
    return RootSystem(cartan, rank, tuple(roots), tuple(coroots), tuple(sorted(simple)), central)


def build_root_system(cartan_type: str, rank: int | None = None) -> RootSystem:
    """Root system of type A_n, B_n, C_n, D_n or G_2; accepts "A2"-style strings."""
    if rank is None:
        cartan_type, rank = cartan_type[0], int(cartan_type[1:])
    t = cartan_type.upper()
    n = rank
    roots = []
    if t == "A" and n >= 1:
        for i in range(n + 1):
            for j in range(n + 1):
                if i != j:
                    v = [0] * (n + 1)
                    v[i], v[j] = 1, -1
                    roots.append(v)
    elif t in ("B", "C", "D") and n >= 2 and not (t == "D" and n < 3):
        for i, j in combinations(range(n), 2):
            for si in (1, -1):
                for sj in (1, -1):
                    v = [0] * n
                    v[i], v[j] = si, sj
                    roots.append(v)
        if t == "B":
            roots += [_unit(n, i, s) for i in range(n) for s in (1, -1)]
        elif t == "C":
            roots += [_unit(n, i, 2 * s) for i in range(n) for s in (1, -1)]
    elif t == "G" and n == 2:
        for i in range(3):
            for j in range(3):
                if i != j:
                    v = [0, 0, 0]
                    v[i], v[j] = 1, -1
                    roots.append(v)
        for i in range(3):
            for s in (1, -1):
                v = [-s, -s, -s]
                v[i] = 2 * s
                roots.append(v)
    else:
        raise UnsupportedType(f"unsupported Cartan type {cartan_type}{rank}")
    return _with_coroots(t, n, roots)


def type_a_datum(n: int, kind: str = "SL") -> RootSystem:
    """Roots e_i - e_j of the diagonal torus of SL_n or GL_n (GL carries a central cocharacter)."""
    kind = kind.upper()
    if kind not in ("SL", "GL") or n < 1:
        raise UnsupportedType(f"unsupported group {kind}{n}")
    if n == 1:
        return RootSystem("A", 0, (), (), (), (1,) if kind == "GL" else None)
    base = build_root_system("A", n - 1)
    central = tuple([1] * n) if kind == "GL" else None
    return RootSystem("A", n - 1, base.roots, base.coroots, base.simple_roots, central)


def weyl_group_elements(rs: RootSystem) -> list[tuple]:
    """All Weyl group elements as permutations of the root list, by closure."""
    if not rs.roots:
        return [()]
    gens = [rs.reflection_permutation(rs.roots[i]) for i in rs.simple_roots]
    identity = tuple(range(len(rs.roots)))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                ws = tuple(w[k] for k in s)
                if ws not in seen:
                    seen.add(ws)
                    nxt.append(ws)
        frontier = nxt
    return sorted(seen)


def weyl_group_order(rs: RootSystem) -> int:
    return len(weyl_group_elements(rs))


def weyl_order_formula(cartan_type: str, rank: int) -> int:
    """Closed forms for the order of the irreducible Weyl groups."""
    t = cartan_type.upper()
    if t == "A":
        return math.factorial(rank + 1)
    if t in ("B", "C"):
        return 2 ** rank * math.factorial(rank)
    if t == "D":
        return 2 ** (rank - 1) * math.factorial(rank)
    if t == "G" and rank == 2:
        return 12
    raise UnsupportedType(f"{cartan_type}{rank}")


# pinning --------------------------------------------------------------------

def _eye(n: int):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _mm(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def _is_monomial(m) -> bool:
    return all(sum(1 for x in row if x) == 1 for row in m) and all(
        sum(1 for row in m if row[j]) == 1 for j in range(len(m)))


@dataclass(frozen=True)
class ChevalleyPinning:
    """X_alpha = E_ij for alpha = e_i - e_j on n x n matrices."""

    root_system: RootSystem
    n: int = field(default=0)

    @classmethod
    def type_a(cls, n: int, kind: str = "SL") -> "ChevalleyPinning":
        return cls(type_a_datum(n, kind), n)

    @staticmethod
    def positions(root) -> tuple[int, int]:
        i = next(k for k, c in enumerate(root) if c == 1)
        j = next(k for k, c in enumerate(root) if c == -1)
        return i, j

    def lie_element(self, root):
        i, j = self.positions(root)
        m = [[0] * self.n for _ in range(self.n)]
        m[i][j] = 1
        return m

    def root_group(self, root, t):
        """x_alpha(t) = 1 + t E_ij (t may be any ring element supporting + and *)."""
        i, j = self.positions(root)
        m = _eye(self.n)
        m = [[(t if (a, b) == (i, j) else m[a][b]) for b in range(self.n)] for a in range(self.n)]
        return m

    def weyl_element(self, beta, eps: int | None = None):
        """w_beta = x_beta(1) x_{-beta}(eps) x_beta(1), eps chosen to normalize the torus."""
        neg = tuple(-c for c in beta)
        choices = (eps,) if eps is not None else (1, -1)
        for e in choices:
            w = _mm(_mm(self.root_group(beta, 1), self.root_group(neg, e)), self.root_group(beta, 1))
            if _is_monomial(w):
                return w
        raise ValueError("no sign makes w_beta normalize the torus")

    def adjoint(self, g, x):
        inv = _int_inverse(g)
        return _mm(_mm(g, x), inv)


def _int_inverse(m):
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [[int(x) if x.denominator == 1 else x for x in row[n:]] for row in a]


def pinning_weyl_element(pin: ChevalleyPinning, beta):
    return pin.weyl_element(beta)


def check_pinning(pin: ChevalleyPinning) -> bool:
    """Ad(w_beta) X_alpha = +-X_{s_beta(alpha)} for all pairs of roots."""
    rs = pin.root_system
    for beta in rs.roots:
        w = pin.weyl_element(beta)
        for alpha in rs.roots:
            image = pin.adjoint(w, pin.lie_element(alpha))
            target = pin.lie_element(_normalize(rs.reflect(beta, alpha)))
            neg = [[-x for x in row] for row in target]
            if image != target and image != neg:
                return False
    return True
