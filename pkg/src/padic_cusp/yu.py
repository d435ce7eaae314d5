"""Yu data for SL_2 and GL_2: validation, the group K~, the extended character, kappa,
refactorizations, and the passage from a regular tame elliptic pair to a datum.

Twisted Levi sequences here have rank-one shape: each member is the whole
group or an elliptic maximal torus S.  Characters of the whole group are of
the form psi o det (``DetCharacter``); characters of S are ``TorusCharacter``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .building import (BTTriple, Level, det, generator_product, jump_set, lie_key, lie_quotient_basis,
                       mat_inverse, mat_mul, mp_membership, points_equivalent, to_field_matrix)
from .cyclotomic import RootOfUnity
from .errors import (DecompositionUnavailable, IncomparableData, NoFactorization, PrecisionTooLow,
                     UnsupportedDescriptor)
from .finrep import FiniteGroup, character_table, is_cuspidal
from .genericity import char_depth, is_generic_character
from .heisenberg_weil import (SymplecticSpace, WeilRep, _rank_mod, commutator_form, extended_character,
                              heisenberg, weil)
from .local_field import INF, AdditiveCharacter, LocalFieldDesc
from .tori import (LogCharacter, TorusCharacter, TorusDescriptor, character_depth, field_character,
                   residue_field_of, teichmuller_lift, trivial_character, _psi_descriptor)


# group descriptors ----------------------------------------------------------------

@dataclass(frozen=True)
class ReductiveGroup:
    """SL_n or GL_n over Q_p."""

    kind: str
    n: int
    p: int
    precision: int = 6

    @property
    def base(self) -> LocalFieldDesc:
        return LocalFieldDesc.qp(self.p, self.precision)

    def describe(self) -> str:
        return f"{self.kind}{self.n}(Q_{self.p})"


def is_torus(g) -> bool:
    return isinstance(g, TorusDescriptor)


@dataclass
class DetCharacter:
    """g -> psi(det g) on GL_n(F); trivial on SL_n(F)."""

    group: ReductiveGroup
    psi: LogCharacter | None

    @property
    def depth(self) -> Fraction:
        if self.group.kind == "SL" or self.psi is None:
            return Fraction(0)
        return self.psi.depth_bound

    def __call__(self, g) -> RootOfUnity:
        if self.group.kind == "SL" or self.psi is None:
            return RootOfUnity(0)
        return self.psi(det(g))

    def on_torus(self, torus: TorusDescriptor) -> TorusCharacter:
        if self.group.kind == "SL" or self.psi is None:
            return trivial_character(torus)
        psi = self.psi
        return TorusCharacter(torus, lambda s: psi(torus.determinant(s)), psi.depth_bound, "psi o det",
                              None, {"type": "det", "psi": _psi_descriptor(psi)})

    @property
    def descriptor(self) -> dict:
        if self.psi is None:
            return {"type": "det_trivial"}
        return {"type": "det", "psi": _psi_descriptor(self.psi)}


@dataclass
class RhoHandle:
    """Depth-zero representation of (G_{n+1})_{[x]}, kept opaque.

    ``character`` is a character of ``torus``: the representation itself when
    G_{n+1} is that torus, otherwise the parameter phi-bar of the
    Deligne-Lusztig representation attached to (S-bar, phi-bar).
    """

    kind: str = "trivial"
    degree: int = 1
    cuspidal: bool | None = True
    certificate: str = "declared"
    character: Any = None
    params: dict = field(default_factory=dict)
    torus: Any = None

    def value(self, s) -> RootOfUnity:
        if self.character is None:
            return RootOfUnity(0)
        return self.character(s)


@dataclass
class YuDatum:
    levi: list
    x: BTTriple
    depths: list
    characters: list
    rho: RhoHandle
    epsilon: Callable | None = None

    @property
    def n(self) -> int:
        return len(self.depths)

    @property
    def group(self) -> ReductiveGroup:
        return self.levi[0]

    @property
    def innermost(self):
        return self.levi[-1]

    def torus(self) -> TorusDescriptor | None:
        return next((g for g in self.levi if is_torus(g)), None)


# validation -------------------------------------------------------------------

@dataclass
class ConditionResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class ValidityReport:
    conditions: list

    @property
    def valid(self) -> bool:
        return all(c.ok for c in self.conditions)

    def get(self, name: str) -> ConditionResult:
        return next(c for c in self.conditions if c.name == name)

    def lines(self) -> list[str]:
        out = [f"{c.name}\t{'pass' if c.ok else 'FAIL'}\t{c.detail}" for c in self.conditions]
        out.append(f"valid\t{self.valid}")
        return out


def _character_depth(ch) -> Fraction:
    if isinstance(ch, DetCharacter):
        return ch.depth
    return char_depth(ch).depth


def _same_group(a, b) -> bool:
    if is_torus(a) != is_torus(b):
        return False
    return a == b


def validate_yu_datum(d: YuDatum) -> ValidityReport:
    """Structural conditions (a)-(e) followed by conditions (i)-(iv)."""
    res = []
    G = d.group
    if not isinstance(G, ReductiveGroup) or G.n != 2 or G.kind not in ("SL", "GL"):
        raise UnsupportedDescriptor("supported groups: SL2 and GL2")
    for g in d.levi[1:]:
        if not (isinstance(g, ReductiveGroup) or (is_torus(g) and g.is_elliptic)):
            raise UnsupportedDescriptor("twisted Levi members must be G or an elliptic maximal torus")

    n = d.n
    problems = []
    if len(d.levi) != n + 1:
        problems.append(f"{len(d.levi)} groups for n = {n}")
    if len(d.characters) != n:
        problems.append(f"{len(d.characters)} characters for n = {n}")
    for i in range(1, len(d.levi) - 1):
        if i >= 1 and _same_group(d.levi[i], d.levi[i + 1]):
            problems.append(f"G_{i + 1} = G_{i + 2} but the sequence must be strict after G_2")
        if is_torus(d.levi[i]) and not is_torus(d.levi[i + 1]):
            problems.append("a torus cannot contain the whole group")
    if any(Fraction(r) <= 0 for r in d.depths) or any(
            Fraction(a) <= Fraction(b) for a, b in zip(d.depths, d.depths[1:])):
        problems.append("depths must satisfy r_1 > ... > r_n > 0")
    for i, (ch, r) in enumerate(zip(d.characters, d.depths), start=1):
        got = _character_depth(ch)
        if got != Fraction(r):
            problems.append(f"phi_{i} has depth {got}, expected {r}")
    res.append(ConditionResult("structure", not problems, "; ".join(problems) or "(a)-(e) consistent"))

    inner = d.innermost
    if is_torus(inner):
        ok = inner.is_elliptic
        res.append(ConditionResult("(i) anisotropic center", ok, inner.describe()))
    else:
        res.append(ConditionResult("(i) anisotropic center", True, "G_{n+1} = G"))

    if is_torus(inner):
        ok = points_equivalent(d.x, inner.point()) if d.x.kind == inner.point().kind else False
        res.append(ConditionResult("(ii) vertex", ok, f"x = {d.x} vs building of S = {inner.point()}"))
    else:
        ok = d.x.is_vertex()
        res.append(ConditionResult("(ii) vertex", ok, f"x = {d.x}" + ("" if ok else " is not a vertex")))

    details = []
    ok3 = True
    for i in range(n):
        Gi, Gnext = d.levi[i], d.levi[i + 1]
        if _same_group(Gi, Gnext):
            continue
        ch = d.characters[i]
        if not isinstance(ch, TorusCharacter):
            ok3 = False
            details.append(f"phi_{i + 1}: no genericity test for this descriptor")
            continue
        try:
            rep = is_generic_character(ch, d.depths[i])
            ok3 = ok3 and rep.generic
            vals = ",".join("inf" if v == INF else str(v) for v in rep.valuations)
            details.append(f"phi_{i + 1}: GE1={rep.ge1} GE2={rep.ge2} val={vals}")
        except Exception as exc:  # DepthMismatch or GE0Failed
            ok3 = False
            details.append(f"phi_{i + 1}: {type(exc).__name__}")
    res.append(ConditionResult("(iii) generic", ok3, "; ".join(details) or "no proper steps"))

    rho = d.rho
    res.append(ConditionResult("(iv) cuspidal rho", bool(rho.cuspidal), rho.certificate))
    return ValidityReport(res)


# K~ and the extended character ---------------------------------------------------------

def _matrix_of(torus: TorusDescriptor, s):
    return torus.matrix(s)


def _unit_group_reps(torus: TorusDescriptor):
    return torus.roots_of_unity()


def split_off_torus(g, torus: TorusDescriptor, x: BTTriple, level):
    """Write g = s k with s in S(F) and k in G_{x,level}; None if impossible.

    The torus part is peeled off level by level: first the valuation and the
    Teichmueller part, then one graded piece of S(F)_{0+} at a time.
    """
    lv = Level.of(level)
    fd = torus.base
    g = to_field_matrix(fd, g)
    s = torus.one()
    if torus.is_elliptic and not torus.is_norm_one:
        v = det(g).val()
        f = torus.field.f
        if Fraction(v) % f:
            return None
        m = int(Fraction(v) / f)
        if m:
            pi = torus.field.uniformizer() ** m
            s = torus.mul(s, pi)
            g = mat_mul(mat_inverse(_matrix_of(torus, pi)), g)
    if not torus.is_elliptic:
        raise UnsupportedDescriptor("K~ is assembled for elliptic tori only")
    found = None
    for w in _unit_group_reps(torus):
        h = mat_mul(mat_inverse(_matrix_of(torus, w)), g)
        if mp_membership(h, x, Level(Fraction(0), True)):
            found = (w, h)
            break
    if found is None:
        return None
    w, g = found
    s = torus.mul(s, w)
    p = fd.p
    top = lv.value
    levels = [t for t in jump_set(x, max(top, Fraction(1, 2))) if (t < top or (lv.plus and t == top))]
    for t in levels:
        if mp_membership(g, x, lv):
            break
        if not mp_membership(g, x, Level(t)):
            return None
        gens = [torus.cayley(Y) for Y in torus.lie_generators(t)]
        keys = [list(lie_key(_sub_identity(_matrix_of(torus, c)), x, t)) for c in gens]
        target = list(lie_key(_sub_identity(g), x, t))
        coeffs = _solve_mod(keys, target, p)
        if coeffs is None:
            return None
        for c, a in zip(gens, coeffs):
            if a:
                piece = torus.power(c, a)
                s = torus.mul(s, piece)
                g = mat_mul(mat_inverse(_matrix_of(torus, piece)), g)
    return (s, g) if mp_membership(g, x, lv) else None


def _sub_identity(m):
    return [[m[i][j] - 1 if i == j else m[i][j] for j in range(len(m))] for i in range(len(m))]


def _solve_mod(rows, target, p):
    """Coefficients a with sum a_k rows[k] = target mod p (brute force over small spans)."""
    if not rows:
        return [] if all(t % p == 0 for t in target) else None
    from itertools import product
    for coeffs in product(range(p), repeat=len(rows)):
        comb = [sum(a * r[i] for a, r in zip(coeffs, rows)) % p for i in range(len(target))]
        if comb == [t % p for t in target]:
            return list(coeffs)
    return None


@dataclass
class TildeK:
    """K~ = (G_1)_{x,r_1/2} ... (G_n)_{x,r_n/2} (G_{n+1})_{[x]} for rank-one sequences."""

    datum: YuDatum
    torus: TorusDescriptor | None
    level: Fraction | None

    def describe(self) -> str:
        if self.torus is None:
            return f"{self.datum.group.describe()}_[x] at x = {self.datum.x}"
        return f"S(F) G_(x,{self.level}) with S = {self.torus.describe()}, x = {self.datum.x}"

    def contains(self, g) -> bool:
        d = self.datum
        fd = d.group.base
        g = to_field_matrix(fd, g)
        if self.torus is None:
            return _in_stabilizer(g, d.x, d.group)
        try:
            return split_off_torus(g, self.torus, d.x, self.level) is not None
        except PrecisionTooLow:
            raise


def _in_stabilizer(g, x: BTTriple, group: ReductiveGroup) -> bool:
    """g in G_{[x]} for a vertex x: a central multiple of g lies in G_{x,0}."""
    if group.kind == "GL":
        v = det(g).val()
        if Fraction(v) % group.n:
            return False
        k = int(Fraction(v) / group.n)
        if k:
            scale = group.base(Fraction(group.p) ** (-k))
            g = [[a * scale for a in row] for row in g]
    return mp_membership(g, x, Level(Fraction(0)))


def assemble_tilde_K(d: YuDatum) -> TildeK:
    torus = d.torus()
    if torus is None or d.n == 0:
        return TildeK(d, None, None)
    last_full = max(i for i, g in enumerate(d.levi[:-1]) if not is_torus(g))
    return TildeK(d, torus, Fraction(d.depths[last_full]) / 2)


@dataclass
class CharacterHat:
    """phi_hat on S(F) G_{x,r/2+}: theta on S(F), and phi o X o (projection to Lie S) on G_{x,r/2+}."""

    theta: TorusCharacter
    x: BTTriple
    r: Fraction

    def __post_init__(self):
        if not self.theta.torus.is_elliptic and self.theta.torus.group != "GL":
            raise DecompositionUnavailable("no root-space complement for this torus")
        self._phi_hat = extended_character(self.theta)

    def on_group(self, k) -> RootOfUnity:
        """Value on an element of G_{x,r/2+}."""
        return self._phi_hat(k)

    def __call__(self, g) -> RootOfUnity:
        torus = self.theta.torus
        split = split_off_torus(g, torus, self.x, Level(self.r / 2, True))
        if split is None:
            raise DecompositionUnavailable("element is not in S(F) G_{x,r/2+}")
        s, k = split
        return self.theta(s) * self._phi_hat(k)


def extend_character_hat(theta: TorusCharacter, x: BTTriple, r) -> CharacterHat:
    return CharacterHat(theta, x, Fraction(r))


# kappa ---------------------------------------------------------------------------

@dataclass
class KappaStep:
    index: int
    depth: Fraction
    phi_hat: CharacterHat | None
    space: SymplecticSpace | None
    heisenberg: Any = None
    weil: WeilRep | None = None

    @property
    def degree(self) -> int:
        return self.heisenberg.degree if self.heisenberg is not None else 1


@dataclass
class Kappa:
    steps: list

    @property
    def degree(self) -> int:
        out = 1
        for s in self.steps:
            out *= s.degree
        return out


def assemble_kappa(d: YuDatum, build_weil: bool = True, weil_bound: int = 200) -> Kappa:
    """One step per proper inclusion G_i > G_{i+1}; Heisenberg and Weil factors when V != 0."""
    steps = []
    for i in range(d.n):
        Gi, Gnext = d.levi[i], d.levi[i + 1]
        r = Fraction(d.depths[i])
        if _same_group(Gi, Gnext) or not isinstance(d.characters[i], TorusCharacter):
            steps.append(KappaStep(i + 1, r, None, None))
            continue
        theta = d.characters[i]
        space = commutator_form(d.x, r, theta)
        hat = extend_character_hat(theta, d.x, r)
        if space.dim == 0:
            steps.append(KappaStep(i + 1, r, hat, space))
            continue
        heis = heisenberg(space)
        small = space.p ** space.dim <= weil_bound
        w = weil(heis, enumerate_group=small) if build_weil else None
        steps.append(KappaStep(i + 1, r, hat, space, heis, w))
    return Kappa(steps)


@dataclass
class RhoTilde:
    rho: RhoHandle
    kappa: Kappa
    epsilon: Callable | None = None

    @property
    def degree(self) -> int:
        return self.rho.degree * self.kappa.degree


def assemble_rho_tilde(d: YuDatum, **kwargs) -> RhoTilde:
    """rho~ = epsilon * (rho tensor kappa); epsilon defaults to the trivial sign."""
    return RhoTilde(d.rho, assemble_kappa(d, **kwargs), d.epsilon)


# refactorization ----------------------------------------------------------------

def _torus_test_elements(torus: TorusDescriptor, above, bound) -> list:
    """Generators of S(F)_{above+} (above >= 0) up to the given level."""
    out = []
    for t in torus.jumps(Fraction(bound) + 1):
        if t > above:
            out += torus.level_generators(t)
    return out


def _full_torus_generators(torus: TorusDescriptor, bound) -> list:
    out = list(torus.roots_of_unity()) + _torus_test_elements(torus, Fraction(0), bound)
    if torus.is_elliptic and not torus.is_norm_one:
        out.append(torus.field.uniformizer())
    return out


def _as_torus_character(ch, torus: TorusDescriptor):
    if isinstance(ch, DetCharacter):
        return ch.on_torus(torus)
    return ch


def _product_on(chars, torus, elements):
    out = []
    for s in elements:
        v = RootOfUnity(0)
        for ch in chars:
            v = v * _as_torus_character(ch, torus)(s)
        out.append(v)
    return out


def refactorization_equivalent(d1: YuDatum, d2: YuDatum) -> bool:
    """Both refactorization conditions, compared on generating sets of the relevant groups.

    Test elements are drawn from the torus S, which every member of a
    rank-one sequence contains; characters psi o det are compared through
    their restriction, which determines them on det(G_{x,t}).
    """
    if len(d1.levi) != len(d2.levi) or any(not _same_group(a, b) for a, b in zip(d1.levi, d2.levi)):
        raise IncomparableData("different twisted Levi sequences")
    if [Fraction(r) for r in d1.depths] != [Fraction(r) for r in d2.depths]:
        raise IncomparableData("different depths")
    if not points_equivalent(d1.x, d2.x):
        raise IncomparableData("different points")
    torus = d1.torus()
    if torus is None:
        return _compare_depth_zero_parameters(d1, d2)
    n = d1.n
    bound = Fraction(d1.depths[0]) if n else Fraction(1)
    depths = [Fraction(r) for r in d1.depths] + [Fraction(0)]
    for i in range(1, n + 1):
        elements = _torus_test_elements(torus, depths[i], bound)
        if _product_on(d1.characters[:i], torus, elements) != _product_on(d2.characters[:i], torus, elements):
            return False
    elements = _full_torus_generators(torus, bound)
    left = [a * d1.rho.value(s) for a, s in zip(_product_on(d1.characters, torus, elements), elements)]
    right = [a * d2.rho.value(s) for a, s in zip(_product_on(d2.characters, torus, elements), elements)]
    return left == right and d1.rho.degree == d2.rho.degree


def _compare_depth_zero_parameters(d1: YuDatum, d2: YuDatum) -> bool:
    """G_{n+1} = G: compare phi-bar times the restricted phi_j on S, up to the Galois flip."""
    r1, r2 = d1.rho, d2.rho
    if r1.kind != r2.kind or r1.degree != r2.degree:
        return False
    torus = r1.torus
    if torus is None or r2.torus != torus or r1.character is None or r2.character is None:
        return r1.params == r2.params
    bound = Fraction(d1.depths[0]) if d1.depths else Fraction(1)
    elements = _full_torus_generators(torus, bound)
    left = _product_on(list(d1.characters) + [r1.character], torus, elements)
    right = _product_on(list(d2.characters) + [r2.character], torus, elements)
    flipped = _product_on(list(d2.characters) + [r2.character], torus, [torus.galois(s) for s in elements])
    return left == right or left == flipped


# regular tame elliptic pairs ------------------------------------------------------------

@dataclass
class TameEllipticPair:
    torus: TorusDescriptor
    theta: TorusCharacter

    def __post_init__(self):
        if not self.torus.is_elliptic:
            raise UnsupportedDescriptor("regular pairs need an elliptic torus")


def _norm_of_coroot(torus: TorusDescriptor, u):
    """N_{E/F}(alpha-check(u)) as an element of S(F): u / sigma(u)."""
    return u / u.conj()


def _unit_generators(torus: TorusDescriptor, k: int):
    """1 + pi_E^k b for b over an F_p-basis of the residue field of E."""
    fd = torus.field
    pi = fd.uniformizer() ** k
    basis = [fd.one()] if fd.f == 1 else [fd.one(), fd.generator()]
    return [fd.one() + pi * b for b in basis]


def theta_kills_coroot(pair: TameEllipticPair, k: int, top: int) -> bool:
    """theta(N(alpha-check(1 + P_E^k))) = 1, tested on generators of each graded piece."""
    for j in range(k, top + 1):
        for u in _unit_generators(pair.torus, j):
            if not pair.theta(_norm_of_coroot(pair.torus, u)).is_one():
                return False
    return True


@dataclass
class JumpData:
    depth: Fraction
    jumps: list
    depths: list
    phi: dict
    levi_is_torus: list

    def lines(self) -> list[str]:
        out = [f"depth\t{self.depth}", "jumps\t" + ",".join(str(j) for j in self.jumps),
               "r_i\t" + ",".join(str(r) for r in self.depths)]
        for r, full in sorted(self.phi.items()):
            out.append(f"Phi_{r}\t{'all roots' if full else 'empty'}")
        seq = ["G"] + ["S" if t else "G" for t in self.levi_is_torus[1:]]
        out.append("levi\t" + " > ".join(seq))
        return out


def phi_r_jumps(pair: TameEllipticPair) -> JumpData:
    """Phi_r (all roots or none in rank one) on the grid (1/e)Z, its jumps and the Levi sequence.

    The depth of theta is unioned into the jump set.
    """
    torus = pair.torus
    e = torus.field.e
    depth = character_depth(pair.theta)
    top = int(depth * e) + 2
    phi = {}
    for k in range(0, top + 1):
        r = Fraction(k, e)
        phi[r] = theta_kills_coroot(pair, max(k, 1), top)
    # Phi_{r+} = Phi_s for s just above r, i.e. at index floor(e r) + 1
    jumps = [Fraction(k, e) for k in range(1, top) if not phi[Fraction(k, e)] and phi[Fraction(k + 1, e)]]
    rs = sorted(set(jumps) | ({depth} if depth > 0 else set()), reverse=True)
    full_at = [phi[Fraction(int(r * e) + 1, e)] for r in rs]
    phi0 = phi[Fraction(0)]
    if rs:
        levi_is_torus = [False] + [not full for full in full_at[1:]] + [not phi0]
    else:
        # no positive depth: Phi_{0+} is everything and G_1 = G is the whole sequence
        levi_is_torus = [False]
    return JumpData(depth, jumps, rs, phi, levi_is_torus)


def _quadratic_is_norm(torus: TorusDescriptor, target: int) -> bool:
    """Whether target is a norm from E: solve x^2 - delta y^2 = target mod p, then lift by Hensel."""
    p = torus.p
    delta = torus.field.delta
    fd = torus.base
    if delta % p == 0:
        u = delta // p
        # ramified: x^2 = target mod p must be solvable (norms of units)
        return pow(target % p, (p - 1) // 2, p) == 1
    for x in range(p):
        for y in range(p):
            if (x * x - delta * y * y - target) % p == 0 and (x % p or y % p):
                return True
    return False


def weyl_representatives(torus: TorusDescriptor) -> list:
    """N(S)(F)/S(F) as matrices: the identity and, when it exists in G(F), the Galois flip."""
    fd = torus.base
    one = [[fd.one(), fd.zero()], [fd.zero(), fd.one()]]
    flip = [[fd.one(), fd.zero()], [fd.zero(), -fd.one()]]
    if torus.group == "GL":
        return [one, flip]
    # det(flip * s) = -N(s): need an element of norm -1
    if _quadratic_is_norm(torus, -1):
        return [one, flip]
    return [one]


def is_regular_tame_elliptic(pair: TameEllipticPair) -> bool:
    return regularity_report(pair)["regular"]


def regularity_report(pair: TameEllipticPair) -> dict:
    """Conditions (1)-(3) of a regular tame elliptic pair for rank-one tori."""
    torus = pair.torus
    out = {"elliptic": torus.is_elliptic and torus.p != 2}
    jd = phi_r_jumps(pair)
    full = jd.phi[Fraction(0)]
    # inertia acts on the roots by -1 exactly when E/F is ramified
    inertia_flips = torus.is_ramified
    out["positive_system_stable"] = (not full) or (not inertia_flips)
    out["phi_0plus"] = "all" if full else "empty"
    if not full:
        out["stabilizer_trivial"] = True
    else:
        reps = weyl_representatives(torus)
        gens = _full_torus_generators(torus, jd.depth)
        gens = [s for s in gens if s.val() == 0]
        nontrivial_fixers = 0
        for w in reps[1:]:
            if all(pair.theta(torus.galois(s)) == pair.theta(s) for s in gens):
                nontrivial_fixers += 1
        out["stabilizer_trivial"] = nontrivial_fixers == 0
        out["weyl_order"] = len(reps)
    out["regular"] = out["elliptic"] and out["positive_system_stable"] and out["stabilizer_trivial"]
    return out


# Howe factorization ------------------------------------------------------------

@dataclass
class HoweFactorization:
    phis: list
    last: TorusCharacter
    jump_data: JumpData

    def check(self, pair: TameEllipticPair) -> bool:
        torus = pair.torus
        elements = _full_torus_generators(torus, max(self.jump_data.depth, Fraction(1)))
        rng = random.Random(0)
        elements += [torus.sample(rng) for _ in range(10)]
        prod = _product_on(self.phis + [self.last], torus, elements)
        return prod == [pair.theta(s) for s in elements]


def _split_log_character(theta: TorusCharacter):
    """theta = (psi o N) * chi' with psi on F^x and chi' carrying the anti-invariant part of c."""
    torus = theta.torus
    desc = theta.descriptor or {}
    if desc.get("type") != "field" or torus.is_norm_one:
        return None
    chi = theta.fn
    if not isinstance(chi, LogCharacter):
        return None
    fd, fb = torus.field, torus.base
    c = chi.c
    if c is None:
        return None
    half = Fraction(1, 2)
    c_plus = (c + c.conj()) * half
    c_minus = (c - c.conj()) * half
    psi = LogCharacter(fb, c=fb(c_plus.coords[0])) if not c_plus.is_zero() else None
    rest = LogCharacter(fd, c=c_minus if not c_minus.is_zero() else None, tame=chi.tame, unramified=chi.unramified)
    return psi, rest


def howe_factorization(pair: TameEllipticPair, group: ReductiveGroup | None = None) -> HoweFactorization:
    torus = pair.torus
    group = group or ReductiveGroup(torus.group, 2, torus.p, torus.field.precision)
    jd = phi_r_jumps(pair)
    theta = pair.theta
    n = len(jd.depths)
    innermost_torus = jd.levi_is_torus[-1]
    if n == 0:
        fact = HoweFactorization([], theta, jd)
    elif innermost_torus and n == 1:
        fact = HoweFactorization([theta], trivial_character(torus), jd)
    else:
        split = _split_log_character(theta)
        if split is None:
            raise NoFactorization("cannot separate the determinant part of this character")
        psi, rest = split
        det_char = DetCharacter(group, psi)
        rest_char = field_character(torus, rest)
        if innermost_torus and n == 2:
            fact = HoweFactorization([det_char, rest_char], trivial_character(torus), jd)
        elif not innermost_torus and n == 1:
            fact = HoweFactorization([det_char], rest_char, jd)
        else:
            raise NoFactorization(f"unexpected jump pattern {jd.depths}")
    if not fact.check(pair):
        raise NoFactorization("product of the factors differs from theta")
    return fact


# the datum attached to a pair -------------------------------------------------------------

def deligne_lusztig_certificate(torus: TorusDescriptor, phi_bar: TorusCharacter) -> tuple:
    """Find the irreducible character of G(F_q) equal to -R(S-bar, phi-bar) and test cuspidality.

    The target is written down on every conjugacy class: (q-1) phi(z) on a
    central z, -phi(z) on z times a nontrivial unipotent, -(phi(s) + phi(s^sigma))
    on elliptic regular s and 0 on split regular elements.  Returns
    (found, cuspidal, note); the search runs for q <= 5.
    """
    p = torus.p
    if p > 5 or torus.is_ramified:
        return False, None, "no finite-group search for this torus"
    G = FiniteGroup.gl2(p) if torus.group == "GL" else FiniteGroup.sl2(p)

    def reduce(s):
        m = torus.matrix(s)
        return tuple(tuple(int(a.residue()) % p for a in row) for row in m)

    def invariants(g):
        return (g[0][0] + g[1][1]) % p, (g[0][0] * g[1][1] - g[0][1] * g[1][0]) % p

    # S-bar by (trace, det); scalars sit inside it as the central elements
    by_invariants = {}
    for s in torus.roots_of_unity():
        value = phi_bar(s).to_cyclotomic() + phi_bar(torus.galois(s)).to_cyclotomic()
        by_invariants[invariants(reduce(s))] = (reduce(s), phi_bar(s).to_cyclotomic(), value)

    def target(g):
        tr, dt = invariants(g)
        disc = (tr * tr - 4 * dt) % p
        if disc == 0:
            z = tr * pow(2, -1, p) % p
            _, theta_z, _ = by_invariants[(2 * z % p, z * z % p)]
            scalar = g[0][1] % p == 0 and g[1][0] % p == 0
            return theta_z * (p - 1) if scalar else -theta_z
        if pow(disc, (p - 1) // 2, p) == 1:
            return 0
        return -by_invariants[(tr, dt)][2]

    targets = [(cls[0], target(cls[0])) for cls in G.classes]
    for chi in character_table(G):
        if chi.degree != p - 1:
            continue
        if all(chi.value(g) == value for g, value in targets):
            return True, is_cuspidal(chi), f"{G.name}: -R(S-bar, phi-bar) matched on all classes"
    return False, None, "no irreducible character matches -R(S-bar, phi-bar)"


def yu_datum_from_pair(pair: TameEllipticPair, x: BTTriple | None = None, certify: bool = True) -> YuDatum:
    torus = pair.torus
    group = ReductiveGroup(torus.group, 2, torus.p, torus.field.precision)
    fact = howe_factorization(pair, group)
    jd = fact.jump_data
    levi = [group] + [torus if t else group for t in jd.levi_is_torus[1:]]
    x = x or torus.point()
    last = fact.last
    if jd.levi_is_torus[-1]:
        rho = RhoHandle("character", 1, True, "G_{n+1} = S: every representation of S-bar is cuspidal",
                        last, {}, torus)
    else:
        cusp, note = None, "declared: Deligne-Lusztig representation -R(S-bar, phi-bar)"
        if certify:
            found, cusp_found, note2 = deligne_lusztig_certificate(torus, last)
            if found:
                cusp, note = cusp_found, note2
        rho = RhoHandle("deligne_lusztig", torus.p - 1, True if cusp is None else cusp, note, last, {},
                        torus)
    return YuDatum(levi, x, list(jd.depths), list(fact.phis), rho)


def datum_depth(d: YuDatum) -> Fraction:
    return Fraction(d.depths[0]) if d.depths else Fraction(0)


def sample_tilde_K(d: YuDatum, rng: random.Random, count: int):
    """Random elements of K~ (torus part times a product of Moy-Prasad generators)."""
    K = assemble_tilde_K(d)
    fd = d.group.base
    out = []
    for _ in range(count):
        if K.torus is None:
            out.append(generator_product(d.x, 0, fd, rng))
            continue
        s = K.torus.sample(rng, 0)
        k = generator_product(d.x, K.level, fd, rng)
        out.append(mat_mul(K.torus.matrix(s), k))
    return out
