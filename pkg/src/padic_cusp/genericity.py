"""Generic dual elements and generic characters of tori (conditions GE0, GE1, GE2)."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .errors import DepthMismatch, GE0Failed, UnsupportedTorus
from .local_field import INF
from .tori import TorusCharacter, TorusDescriptor, character_depth


@dataclass(frozen=True)
class CharacterDepth:
    depth: Fraction
    trivial: bool


def char_depth(theta: TorusCharacter) -> CharacterDepth:
    """Depth of a torus character, flagging the trivial character (depth 0)."""
    t = theta.torus
    d = character_depth(theta)
    if d > 0:
        return CharacterDepth(d, False)
    trivial = all(theta(g).is_one() for g in t.level_generators(0))
    return CharacterDepth(Fraction(0), trivial)


@dataclass
class DualElement:
    """X in Lie*(S)(F), stored in the coordinates used by ``TorusDescriptor.pair``.

    Split tori: a tuple (c_1, ..., c_n) with X(Y) = sum c_i Y_i.  Elliptic
    tori: an element c of E, with X(Y) = Tr(c Y) on E^x and the 1-coordinate
    of c Y on the norm-one torus (where c must satisfy sigma(c) = -c).
    """

    torus: TorusDescriptor
    coords: object

    def __post_init__(self):
        if self.torus.is_elliptic and not self.torus.is_galois_stable(self.coords):
            raise UnsupportedTorus("dual element is not Galois-stable")

    @classmethod
    def of(cls, theta: TorusCharacter) -> "DualElement":
        if theta.dual is None:
            raise DepthMismatch("character carries no dual element")
        return cls(theta.torus, theta.dual)

    def __call__(self, Y):
        return self.torus.pair(self.coords, Y)

    def scale(self, unit) -> "DualElement":
        if self.torus.is_elliptic:
            return DualElement(self.torus, self.coords * unit)
        return DualElement(self.torus, tuple(c * unit for c in self.coords))

    def root_values(self) -> list:
        """X(H_alpha) over the positive roots outside the torus."""
        return self.torus.root_pairings(self.coords)

    def eigen_coordinates(self) -> list:
        """X written on the diagonal torus over the splitting field."""
        t = self.torus
        if not t.is_elliptic:
            return list(self.coords)
        if t.is_norm_one:
            return [self.coords, -self.coords]
        return [self.coords, self.coords.conj()]


def dual_level(X: DualElement, search_to=None):
    """Largest jump t with X(Lie(S)_t) not inside the maximal ideal, or None.

    X lies in Lie*(S)_{-t} minus Lie*(S)_{(-t)+} exactly for this t.
    """
    t = X.torus
    top = Fraction(search_to) if search_to is not None else Fraction(8)
    for s in reversed(t.jumps(top)):
        if any(X(Y).val() <= 0 for Y in t.lie_generators(s)):
            return s
    return None


def ge0(X: DualElement, r) -> bool:
    """X in Lie*(S)_{-r} but not in Lie*(S)_{(-r)+}."""
    return dual_level(X, Fraction(r) + 2) == Fraction(r)


def root_valuations(X: DualElement) -> list:
    return [v.val() for v in X.root_values()]


def ge1_check(X: DualElement, r) -> bool:
    """val X(H_alpha) = -r for every root outside the torus; GE0 is checked first."""
    if not ge0(X, r):
        raise GE0Failed(f"dual element is not of depth -{r}")
    return all(v == -Fraction(r) for v in root_valuations(X))


def default_varpi(torus: TorusDescriptor, r):
    """pi_E^(e r), an element of valuation r in the splitting field."""
    fd = torus.field
    k = Fraction(r) * fd.e
    if k.denominator != 1:
        raise DepthMismatch(f"no element of valuation {r} in the splitting field")
    return fd.uniformizer() ** int(k)


def reduced_dual(X: DualElement, r, varpi=None) -> list:
    """Residues of the eigen-coordinates of X scaled by an element of valuation r."""
    if varpi is None:
        varpi = default_varpi(X.torus, r)
    out = []
    for c in X.eigen_coordinates():
        if not hasattr(c, "field") or c.field != varpi.field:
            c = varpi.field(*c.coords) if c.field.degree == varpi.field.degree else varpi.field(c.coords[0])
        out.append((c * varpi).residue())
    return out


def _residue_diff(a, b, p):
    if isinstance(a, tuple):
        return tuple((x - y) % p for x, y in zip(a, b))
    return (a - b) % p


def weyl_stabilizer(residues, kind: str = "GL", p: int = 0) -> list[tuple]:
    """Permutations w of the coordinates fixing the reduced vector.

    For SL the vector is taken modulo scalars, i.e. via its differences mod p.
    """
    n = len(residues)
    out = []
    for w in permutations(range(n)):
        moved = [residues[w[i]] for i in range(n)]
        if kind == "SL":
            same = all(_residue_diff(moved[i], moved[0], p) == _residue_diff(residues[i], residues[0], p)
                       for i in range(n))
        else:
            same = moved == list(residues)
        if same:
            out.append(w)
    return out


def levi_weyl_group(blocks) -> set[tuple]:
    """Permutations preserving each block of a partition of range(n)."""
    n = sum(len(b) for b in blocks)
    where = {i: k for k, b in enumerate(blocks) for i in b}
    return {w for w in permutations(range(n)) if all(where[w[i]] == where[i] for i in range(n))}


def ge2_from_residues(residues, blocks=None, kind: str = "GL", p: int = 0) -> bool:
    """Stabilizer of the reduced vector equals the Weyl group of the Levi with the given blocks."""
    n = len(residues)
    blocks = blocks if blocks is not None else [[i] for i in range(n)]
    return set(weyl_stabilizer(residues, kind, p)) == levi_weyl_group(blocks)


def ge2_check(X: DualElement, r, varpi=None) -> bool:
    """GE2 for a maximal torus: the stabilizer of the reduction is trivial."""
    res = reduced_dual(X, r, varpi)
    return ge2_from_residues(res, None, X.torus.group, X.torus.p)


# solving for X from the level character ------------------------------------------------

def _solve_base(rows, rhs):
    """Gaussian elimination over the base field for a square system."""
    n = len(rows)
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    for c in range(n):
        piv = min((i for i in range(c, n) if not a[i][c].is_zero()), key=lambda i: a[i][c].val())
        a[c], a[piv] = a[piv], a[c]
        inv = a[c][c].inverse()
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [a[i][n] for i in range(n)]


def _dual_basis(torus: TorusDescriptor) -> list:
    fd, fb = torus.field, torus.base
    if not torus.is_elliptic:
        return [tuple(fb.one() if k == i else fb.zero() for k in range(torus.n)) for i in range(torus.n)]
    if torus.is_norm_one:
        return [fd.generator()]
    return [fd.one(), fd.generator()]


def solve_dual(theta: TorusCharacter, r) -> DualElement:
    """An X with theta(cayley Y) = phi(X(Y)) on generators of the depth-r graded piece.

    X is determined modulo Lie*(S)_{(-r)+}; coordinates in the kernel of the
    pairing (the center of SL) are set to zero.
    """
    torus = theta.torus
    fb = torus.base
    p = torus.p
    gens = []
    values = []
    for Y in torus.lie_generators(r):
        g = torus.cayley(Y)
        gens.append(torus.lie_of(g))
        t = theta(g).t * p
        if t.denominator != 1:
            raise DepthMismatch("level character does not take p-th root of unity values")
        values.append(fb(int(t) % p))
    basis = _dual_basis(torus)
    matrix = [[torus.pair(B, Y) for B in basis] for Y in gens]
    if len(gens) < len(basis):
        # keep the columns of smallest valuation until the system is square
        order = sorted(range(len(basis)), key=lambda j: min(matrix[k][j].val() for k in range(len(gens))))
        keep = sorted(order[: len(gens)])
    else:
        keep = list(range(len(basis)))
    z = _solve_base([[row[j] for j in keep] for row in matrix], values)
    coeffs = {j: zj for j, zj in zip(keep, z)}
    if torus.is_elliptic:
        fd = torus.field
        X = fd.zero()
        for j, B in enumerate(basis):
            if j in coeffs:
                X = X + B * fd(coeffs[j].coords[0])
        return DualElement(torus, X)
    coords = [fb.zero()] * torus.n
    for j, zj in coeffs.items():
        coords[j] = zj
    return DualElement(torus, tuple(coords))


def dual_agrees(theta: TorusCharacter, r) -> bool:
    """The exact dual of theta and the solved one agree modulo Lie*(S)_{(-r)+}."""
    exact = DualElement.of(theta)
    solved = solve_dual(theta, r)
    torus = theta.torus
    gens = torus.lie_generators(r)
    return all((exact(Y) - solved(Y)).val() >= 1 for Y in gens)


@dataclass
class GenericityReport:
    depth: Fraction
    ge0: bool
    ge1: bool
    ge2: bool
    valuations: list = field(default_factory=list)

    @property
    def generic(self) -> bool:
        return self.ge0 and self.ge1 and self.ge2

    def lines(self) -> list[str]:
        vals = ", ".join("inf" if v == INF else str(v) for v in self.valuations)
        return [f"depth\t{self.depth}", f"GE0\t{self.ge0}", f"GE1\t{self.ge1}",
                f"GE2\t{self.ge2}", f"val X(H_alpha)\t{vals}", f"generic\t{self.generic}"]


def is_generic_character(theta: TorusCharacter, r=None) -> GenericityReport:
    """Run GE0-GE2 on the dual element attached to theta at depth r."""
    depth = char_depth(theta).depth
    r = depth if r is None else Fraction(r)
    if depth <= 0:
        raise DepthMismatch(f"character has depth {depth}; genericity needs positive depth")
    if depth != r:
        raise DepthMismatch(f"character has depth {depth}, asked for {r}")
    X = DualElement.of(theta) if theta.dual is not None else solve_dual(theta, r)
    vals = root_valuations(X)
    ok0 = ge0(X, r)
    if not ok0:
        return GenericityReport(r, False, False, False, vals)
    ok1 = ge1_check(X, r)
    ok2 = ge2_check(X, r)
    return GenericityReport(r, ok0, ok1, ok2, vals)
