"""Maximal tori of GL_n and SL_n that the pipeline supports, and their characters.

Two shapes are handled:

* the split diagonal torus of GL_n or SL_n, elements are tuples of diagonal entries;
* an elliptic torus attached to a quadratic field E = F(sqrt(delta)): E^x inside GL_2,
  or the norm-one group E^1 inside SL_2, embedded by a + b*sqrt(delta) -> [[a, b], [delta*b, a]].
  Elements are elements of E.

Characters are plain callables returning ``RootOfUnity`` values, wrapped with a
depth bound and, when known, the exact dual Lie element that realizes them at
their depth.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from typing import Any, Callable

from .building import BTTriple, Level, ceil_at
from .cyclotomic import RootOfUnity
from .errors import NotAUnit, UnsupportedTorus
from .local_field import (INF, AdditiveCharacter, LocalFieldDesc, LocalFieldElement,
                          padic_log, teichmuller_part)


# residue fields ------------------------------------------------------------------

class ResidueField:
    """F_q for q = p or p^2; elements are ints or pairs (a, b) = a + b*w with w^2 = d."""

    def __init__(self, p: int, f: int = 1, d: int = 0):
        self.p, self.f, self.d = p, f, d
        self.q = p ** f

    def elements(self):
        if self.f == 1:
            return list(range(self.p))
        return [(a, b) for a in range(self.p) for b in range(self.p)]

    def mul(self, x, y):
        p = self.p
        if self.f == 1:
            return x * y % p
        return ((x[0] * y[0] + self.d * x[1] * y[1]) % p, (x[0] * y[1] + x[1] * y[0]) % p)

    def one(self):
        return 1 if self.f == 1 else (1, 0)

    def is_zero(self, x) -> bool:
        return x == 0 if self.f == 1 else x == (0, 0)

    def power(self, x, k: int):
        out, base = self.one(), x
        k %= self.q - 1
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def conj(self, x):
        """Frobenius x -> x^p."""
        return x if self.f == 1 else (x[0], (-x[1]) % self.p)

    def norm(self, x):
        return self.mul(x, self.conj(x)) if self.f == 2 else x

    @cached_property
    def generator(self):
        order = self.q - 1
        primes = [r for r in range(2, order + 1) if order % r == 0 and all(r % s for s in range(2, r))]
        for g in self.elements():
            if self.is_zero(g):
                continue
            if all(self.power(g, order // r) != self.one() for r in primes):
                return g
        raise ValueError("no generator found")

    @cached_property
    def dlog_table(self) -> dict:
        table, x = {}, self.one()
        for k in range(self.q - 1):
            table[x] = k
            x = self.mul(x, self.generator)
        return table

    def dlog(self, x) -> int:
        return self.dlog_table[x]


def residue_field_of(fd: LocalFieldDesc) -> ResidueField:
    return ResidueField(fd.p, fd.f, fd.unramified_square if fd.f == 2 else 0)


def teichmuller_lift(fd: LocalFieldDesc, value) -> LocalFieldElement:
    x = fd(value) if fd.f == 1 else fd(*value)
    return teichmuller_part(x)


# multiplicative characters of local fields ---------------------------------------------

@dataclass
class LogCharacter:
    """Character of E^x: pi^m * omega * u -> z^m * zeta_{q-1}^(k*dlog omega) * phi(Tr(c log u)).

    pi is the fixed uniformizer, omega the Teichmueller part and u the principal
    unit part.  ``c`` may be None (tamely ramified characters).
    """

    field: LocalFieldDesc
    c: Any = None
    tame: int = 0
    unramified: RootOfUnity = field(default_factory=lambda: RootOfUnity(0))

    def __post_init__(self):
        if self.c is not None and not isinstance(self.c, LocalFieldElement):
            self.c = self.field(self.c)
        if self.c is not None and self.c.is_zero():
            self.c = None
        self._phi = AdditiveCharacter(self.field)
        self._res = residue_field_of(self.field)

    @property
    def depth_bound(self) -> Fraction:
        if self.c is None or self.c.is_zero():
            return Fraction(0)
        return max(Fraction(0), -Fraction(self.c.val()))

    def split(self, x: LocalFieldElement):
        fd = self.field
        m = int(x.val() * fd.e)
        unit = x * fd.uniformizer() ** (-m) if m else x
        omega = teichmuller_part(unit)
        return m, omega, unit / omega

    def __call__(self, x) -> RootOfUnity:
        if not isinstance(x, LocalFieldElement):
            x = self.field(x)
        if x.field != self.field:
            x = self.field(*x.coords) if x.field.degree == self.field.degree else self.field(x.coords[0])
        m, omega, u = self.split(x)
        value = self.unramified ** m
        if self.tame:
            k = self._res.dlog(omega.residue())
            value = value * RootOfUnity(Fraction(self.tame * k, self._res.q - 1))
        if self.c is not None and (u - 1).val() != INF:
            need = 1 - Fraction(self.c.val()) + 1
            if (u - 1).val() + self.c.val() < 1:
                value = value * self._phi(self.c * padic_log(u, need))
        return value


# torus descriptors ---------------------------------------------------------------

@dataclass(frozen=True)
class TorusDescriptor:
    kind: str           # "split" or "elliptic"
    group: str          # "SL" or "GL"
    n: int
    field: LocalFieldDesc  # splitting field; the base field when split

    @classmethod
    def split(cls, group: str, n: int, p: int, precision: int = 6) -> "TorusDescriptor":
        return cls("split", group.upper(), n, LocalFieldDesc.qp(p, precision))

    @classmethod
    def elliptic(cls, group: str, p: int, delta: int, precision: int = 6) -> "TorusDescriptor":
        """E^x in GL_2 or E^1 in SL_2 for E = Q_p(sqrt(delta))."""
        group = group.upper()
        if group not in ("SL", "GL"):
            raise UnsupportedTorus(f"no elliptic tori in {group}")
        return cls("elliptic", group, 2, LocalFieldDesc.quadratic(p, delta, precision))

    # basic data -----------------------------------------------------------------
    @property
    def base(self) -> LocalFieldDesc:
        return self.field.base

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def is_elliptic(self) -> bool:
        return self.kind == "elliptic"

    @property
    def is_ramified(self) -> bool:
        return self.field.e == 2

    @property
    def is_norm_one(self) -> bool:
        return self.is_elliptic and self.group == "SL"

    @property
    def rank(self) -> int:
        """Absolute rank (dimension)."""
        return self.n - 1 if self.group == "SL" else self.n

    @property
    def split_rank(self) -> int:
        if not self.is_elliptic:
            return self.rank
        return 1 if self.group == "GL" else 0

    def point(self) -> BTTriple:
        """The point of the building of G attached to the torus."""
        if self.is_elliptic and self.is_ramified:
            return BTTriple(self.group, 2, (Fraction(1, 4), Fraction(-1, 4)))
        return BTTriple(self.group, self.n, (0,) * self.n)

    def with_precision(self, precision: int) -> "TorusDescriptor":
        return TorusDescriptor(self.kind, self.group, self.n, self.field.with_precision(precision))

    def describe(self) -> str:
        if self.is_elliptic:
            what = "E^1" if self.is_norm_one else "E^x"
            kind = "ramified" if self.is_ramified else "unramified"
            return f"{what} in {self.group}2, E = {self.field} ({kind})"
        return f"split diagonal torus of {self.group}{self.n} over Q{self.p}"

    # group law -------------------------------------------------------------------
    def one(self):
        if self.is_elliptic:
            return self.field.one()
        return tuple(self.base.one() for _ in range(self.n))

    def mul(self, s, t):
        if self.is_elliptic:
            return s * t
        return tuple(a * b for a, b in zip(s, t))

    def inv(self, s):
        if self.is_elliptic:
            return s.inverse()
        return tuple(a.inverse() for a in s)

    def power(self, s, k: int):
        if self.is_elliptic:
            return s ** k
        return tuple(a ** k for a in s)

    def eq(self, s, t) -> bool:
        if self.is_elliptic:
            return s == t
        return all(a == b for a, b in zip(s, t))

    def galois(self, s):
        return s.conj() if self.is_elliptic else s

    def matrix(self, s):
        """Embedding into GL_n(F) / SL_n(F)."""
        fb = self.base
        if self.is_elliptic:
            a, b = fb(s.coords[0]), fb(s.coords[1])
            return [[a, b], [b * self.field.delta, a]]
        return [[s[i] if i == j else fb.zero() for j in range(self.n)] for i in range(self.n)]

    def from_matrix(self, g):
        if self.is_elliptic:
            a, b = g[0][0], g[0][1]
            if not (g[1][1] == a and g[1][0] == b * self.field.delta):
                raise UnsupportedTorus("matrix is not in the image of the elliptic torus")
            return self.field(a.coords[0], b.coords[0])
        return tuple(g[i][i] for i in range(self.n))

    def determinant(self, s):
        if self.is_elliptic:
            return self.base(s.norm())
        return reduce(lambda a, b: a * b, s)

    def contains(self, s) -> bool:
        if self.group == "SL":
            return self.determinant(s) == 1
        return True

    def eigenvalues(self, s) -> list:
        """Eigenvalues in E (or F): chi_1(s), chi_2(s), ..."""
        if self.is_elliptic:
            return [s, s.conj()]
        return list(s)

    def root_value(self, s):
        """alpha(s) for the positive root (elliptic case) or list over i < j (split)."""
        if self.is_elliptic:
            return s / s.conj()
        return [s[i] / s[j] for i in range(self.n) for j in range(i + 1, self.n)]

    # filtrations ------------------------------------------------------------------
    def level(self, s):
        """Largest r with s in S(F)_r, None when s is not in S(F)_0."""
        if self.is_elliptic:
            if s.val() != 0:
                return None
            v = (s - 1).val()
            return Fraction(v) if v > 0 else Fraction(0)
        if any(a.val() != 0 for a in s):
            return None
        v = min((a - 1).val() for a in s)
        return Fraction(v) if v > 0 else Fraction(0)

    def in_filtration(self, s, r) -> bool:
        lv = Level.of(r)
        level = self.level(s)
        if level is None:
            return False
        if level == INF:
            return True
        return level > lv.value if lv.plus else level >= lv.value

    def filtration(self, r) -> "TorusSubgroup":
        return TorusSubgroup(self, Level.of(r))

    def jumps(self, R) -> list[Fraction]:
        """All r in (0, R] with S(F)_r != S(F)_{r+}."""
        R = Fraction(R)
        if self.is_norm_one and self.is_ramified:
            start, step = Fraction(1, 2), Fraction(1)
        elif self.is_elliptic and self.is_ramified:
            start, step = Fraction(1, 2), Fraction(1, 2)
        else:
            start, step = Fraction(1), Fraction(1)
        out, r = [], start
        while r <= R:
            out.append(r)
            r += step
        return out

    def _trace_zero_generator(self) -> LocalFieldElement:
        return self.field.generator()

    def lie_generators(self, s) -> list:
        """Elements Y of Lie(S) spanning s_s / s_{s+} over F_p (empty off the jumps)."""
        s = Fraction(s)
        fd, fb = self.field, self.base
        if not self.is_elliptic:
            if s.denominator != 1 or s < 0:
                return []
            scale = fb(fd.p ** int(s))
            out = []
            if self.group == "GL":
                for i in range(self.n):
                    out.append(tuple(scale if k == i else fb.zero() for k in range(self.n)))
            else:
                for i in range(self.n - 1):
                    out.append(tuple(scale if k == i else (-scale if k == i + 1 else fb.zero())
                                     for k in range(self.n)))
            return out
        if self.is_norm_one:
            gen = self._trace_zero_generator()
            m = s - Fraction(gen.val())
            if m.denominator != 1:
                return []
            return [gen * fd(Fraction(fd.p) ** int(m))]
        k = s * fd.e
        if k.denominator != 1:
            return []
        pi_k = fd.uniformizer() ** int(k)
        basis = [fd.one()] if fd.f == 1 else [fd.one(), fd(0, 1) if fd.e == 1 else fd(0, 1)]
        return [pi_k * b for b in basis]

    def cayley(self, Y):
        """Group element attached to a Lie element of positive depth (Y -> 1 + Y up to higher order)."""
        if self.is_elliptic:
            one = self.field.one()
            if self.is_norm_one:
                return (one + Y) / (one - Y)
            return one + Y
        if self.group == "GL":
            return tuple(1 + y for y in Y)
        head = [1 + y for y in Y[:-1]]
        last = reduce(lambda a, b: a * b, head).inverse()
        return tuple(head + [last])

    def lie_of(self, s):
        """s - 1 read in Lie(S) (valid on S(F)_{0+})."""
        if self.is_elliptic:
            return s - 1
        return tuple(a - 1 for a in s)

    def level_generators(self, s) -> list:
        """Generators of S(F)_s / S(F)_{s+}; for s = 0 Teichmueller representatives."""
        s = Fraction(s)
        if s > 0:
            return [self.cayley(Y) for Y in self.lie_generators(s)]
        fd = self.field
        res = residue_field_of(fd)
        g = res.generator
        if self.is_elliptic:
            omega = teichmuller_lift(fd, g)
            if self.is_norm_one:
                if self.is_ramified:
                    return [-fd.one()]
                return [omega / omega.conj()]
            return [omega]
        omega = teichmuller_lift(fd, g)
        one = fd.one()
        if self.group == "GL":
            return [tuple(omega if k == i else one for k in range(self.n)) for i in range(self.n)]
        return [tuple(omega if k == i else (omega.inverse() if k == i + 1 else one) for k in range(self.n))
                for i in range(self.n - 1)]

    def roots_of_unity(self) -> list:
        """The finite group S(F)_0 / S(F)_{0+} lifted by Teichmueller representatives."""
        fd = self.field
        res = residue_field_of(fd)
        if self.is_norm_one:
            lifts = [teichmuller_lift(fd, x) for x in res.elements() if not res.is_zero(x)]
            return [w for w in lifts if w * w.conj() == 1]
        gens = self.level_generators(0)
        out = [self.one()]
        for g in gens:
            new = []
            for x in out:
                y = x
                for _ in range(res.q - 1):
                    new.append(y)
                    y = self.mul(y, g)
            out = new
        return out

    # dual Lie algebra ------------------------------------------------------------
    def pair(self, X, Y) -> LocalFieldElement:
        """X(Y) in F for X given by character-lattice coordinates."""
        fb = self.base
        if not self.is_elliptic:
            return reduce(lambda a, b: a + b, (c * y for c, y in zip(X, Y)))
        if self.is_norm_one:
            return fb((X * Y).coords[0])
        return fb((X * Y).trace())

    def root_pairings(self, X) -> list:
        """X(H_alpha) for the positive roots alpha."""
        if not self.is_elliptic:
            return [X[i] - X[j] for i in range(self.n) for j in range(i + 1, self.n)]
        if self.is_norm_one:
            return [X]
        return [X - X.conj()]

    def is_galois_stable(self, X) -> bool:
        if self.is_norm_one:
            return X.conj() == -X
        return True

    def sample(self, rng: random.Random, r=0):
        """A random element of S(F)_r."""
        lv = Level.of(r)
        fd, fb = self.field, self.base
        N = fd.precision

        def rand_int(field):
            return field(*[rng.randrange(field.p ** N) for _ in range(field.degree)])

        if not self.is_elliptic:
            k = 0 if (lv.value == 0 and not lv.plus) else ceil_at(lv)
            entries = []
            for _ in range(self.n):
                if k == 0:
                    while True:
                        u = rand_int(fb)
                        if u.val() == 0:
                            break
                else:
                    u = 1 + fb(fb.p ** k) * rand_int(fb)
                entries.append(u)
            if self.group == "SL":
                entries[-1] = reduce(lambda a, b: a * b, entries[:-1]).inverse()
            return tuple(entries)
        if self.is_norm_one:
            gen = self._trace_zero_generator()
            if lv.value == 0 and not lv.plus:
                mu = rng.choice(self.roots_of_unity())
                m = max(1, math.ceil(Fraction(1, fd.e) - Fraction(gen.val())))
            else:
                mu = fd.one()
                target = lv.value
                m = ceil_at(Level(target - Fraction(gen.val()), lv.plus))
            Y = gen * fd(Fraction(fd.p) ** m) * fd(rng.randrange(fd.p ** N))
            return mu * self.cayley(Y)
        k = 0 if (lv.value == 0 and not lv.plus) else ceil_at(Level(lv.value * fd.e, lv.plus))
        if k == 0:
            while True:
                u = rand_int(fd)
                if u.val() == 0:
                    return u
        return fd.one() + fd.uniformizer() ** k * rand_int(fd)


@dataclass(frozen=True)
class TorusSubgroup:
    torus: TorusDescriptor
    level: Level

    def contains(self, s) -> bool:
        return self.torus.in_filtration(s, self.level)

    def describe(self) -> str:
        t = self.torus
        lv = self.level
        if lv.value == 0 and not lv.plus:
            body = "units of O_E" if t.is_elliptic else "diagonal units"
        else:
            body = f"congruent to 1 modulo valuation {'>' if lv.plus else '>='} {lv.value}"
        return f"S(F)_{lv} of {t.describe()}: {body}"


# torus characters ---------------------------------------------------------------

@dataclass
class TorusCharacter:
    """A character of S(F) given by a callable, with depth bound and optional dual element."""

    torus: TorusDescriptor
    fn: Callable[[Any], RootOfUnity]
    bound: Fraction
    label: str = "theta"
    dual: Any = None
    descriptor: dict | None = None

    def __call__(self, s) -> RootOfUnity:
        return self.fn(s)

    def __mul__(self, other: "TorusCharacter") -> "TorusCharacter":
        if other.torus != self.torus:
            raise UnsupportedTorus("characters live on different tori")
        dual = None
        if self.dual is not None and other.dual is not None:
            if self.torus.is_elliptic:
                dual = self.dual + other.dual
            else:
                dual = tuple(a + b for a, b in zip(self.dual, other.dual))
        desc = None
        if self.descriptor and other.descriptor:
            desc = {"product": [self.descriptor, other.descriptor]}
        return TorusCharacter(self.torus, lambda s, f=self.fn, g=other.fn: f(s) * g(s),
                              max(self.bound, other.bound), f"{self.label}*{other.label}", dual, desc)

    def conjugate(self) -> "TorusCharacter":
        """theta o sigma (Galois conjugate) for elliptic tori."""
        t = self.torus
        return TorusCharacter(t, lambda s, f=self.fn: f(t.galois(s)), self.bound, f"{self.label}^sigma")


def trivial_character(torus: TorusDescriptor) -> TorusCharacter:
    return TorusCharacter(torus, lambda s: RootOfUnity(0), Fraction(0), "1",
                          dual=None, descriptor={"type": "trivial"})


def split_character(torus: TorusDescriptor, psi: LogCharacter, exponents) -> TorusCharacter:
    """t -> psi(prod t_i^{m_i}) on the split torus; exact dual element m_i * c_psi."""
    if torus.is_elliptic:
        raise UnsupportedTorus("split_character needs a split torus")
    exps = tuple(int(m) for m in exponents)
    if len(exps) != torus.n:
        raise UnsupportedTorus("one exponent per diagonal entry")

    def fn(t):
        value = RootOfUnity(0)
        for a, m in zip(t, exps):
            if m:
                value = value * psi(a) ** m
        return value

    dual = None
    if psi.c is not None:
        dual = tuple(psi.c * m for m in exps)
    desc = {"type": "split", "exponents": list(exps), "psi": _psi_descriptor(psi)}
    return TorusCharacter(torus, fn, psi.depth_bound, f"psi^{list(exps)}", dual, desc)


def norm_character(torus: TorusDescriptor, psi: LogCharacter) -> TorusCharacter:
    """s -> psi(N(s)) on an elliptic torus."""
    fd = torus.field
    dual = fd(psi.c.coords[0]) if psi.c is not None and not torus.is_norm_one else None
    if torus.is_norm_one:
        dual = fd.zero()
    desc = {"type": "norm", "psi": _psi_descriptor(psi)}
    return TorusCharacter(torus, lambda s: psi(torus.base(s.norm())), psi.depth_bound, "psi o N", dual, desc)


def field_character(torus: TorusDescriptor, chi: LogCharacter) -> TorusCharacter:
    """Restriction of a character of E^x to the elliptic torus."""
    if not torus.is_elliptic:
        raise UnsupportedTorus("field_character needs an elliptic torus")
    dual = None
    if chi.c is not None:
        dual = chi.c - chi.c.conj() if torus.is_norm_one else chi.c
    desc = {"type": "field", "chi": _psi_descriptor(chi)}
    return TorusCharacter(torus, chi, chi.depth_bound, "chi_E", dual, desc)


def quadratic_form_character(torus: TorusDescriptor, coeff: int = 2) -> TorusCharacter:
    """a + b*sqrt(delta) -> phi(coeff * a * b) on the ramified norm-one torus (depth 1/2)."""
    if not (torus.is_norm_one and torus.is_ramified):
        raise UnsupportedTorus("the quadratic-form character lives on a ramified norm-one torus")
    fb = torus.base
    phi = AdditiveCharacter(fb)

    def fn(s):
        a, b = fb(s.coords[0]), fb(s.coords[1])
        return phi(a * b * coeff)

    gen = torus.field.generator()
    dual = torus.field(coeff) / gen
    desc = {"type": "quadratic_form", "coeff": coeff}
    return TorusCharacter(torus, fn, Fraction(1, 2), f"phi({coeff}ab)", dual, desc)


def tame_character(torus: TorusDescriptor, k: int) -> TorusCharacter:
    """Depth-zero character s -> zeta_{q-1}^(k * dlog(residue of s)) on an elliptic torus."""
    if not torus.is_elliptic:
        raise UnsupportedTorus("tame_character needs an elliptic torus")
    fd = torus.field
    res = residue_field_of(fd)

    def fn(s):
        m = int(s.val() * fd.e)
        unit = s * fd.uniformizer() ** (-m) if m else s
        return RootOfUnity(Fraction(k * res.dlog(unit.residue()), res.q - 1))

    return TorusCharacter(torus, fn, Fraction(0), f"tame^{k}", None, {"type": "tame", "k": k})


def _psi_descriptor(psi: LogCharacter) -> dict:
    out = {"tame": psi.tame, "unramified": str(psi.unramified.t)}
    if psi.c is not None:
        out["c"] = [str(c.lift()) for c in psi.c.coords]
    return out


def character_depth(theta: TorusCharacter) -> Fraction:
    """Depth of theta: the largest jump r with theta nontrivial on S(F)_r (0 if none)."""
    t = theta.torus
    for r in reversed(t.jumps(theta.bound)):
        if any(not theta(g).is_one() for g in t.level_generators(r)):
            return r
    return Fraction(0)


def is_trivial_on(theta: TorusCharacter, r) -> bool:
    """theta trivial on S(F)_r (r >= 0), checked on generators of the graded pieces."""
    t = theta.torus
    lv = Level.of(r)
    levels = [s for s in t.jumps(theta.bound) if (s > lv.value if lv.plus else s >= lv.value)]
    if lv.value == 0 and not lv.plus:
        levels = [Fraction(0)] + levels
    return all(theta(g).is_one() for s in levels for g in t.level_generators(s))
