"""Harish-Chandra characters at topologically semisimple elements of tori.

Elements of a torus S(F) are wrapped in :class:`ToralElement`.  The character
of the supercuspidal attached to a regular pair (S, theta) at a regular,
topologically semisimple gamma is

    e(G) * eps_L * sum over g in N(S)(F)/S(F) of
        D(g gamma)^(-1/2) * Delta_II(g gamma) * theta(g gamma)

with eps_L an explicit input.  D(gamma) is always a power q^(-m), so the
square root is carried as q^(m/2) and results live in Q(zeta) + Q(zeta)*sqrt(q).
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .building import det, mat_inverse, mat_mul
from .cyclotomic import Cyclotomic, RootOfUnity, as_cyclotomic, sqrt_rational
from .errors import (MissingOrbitData, NotCompactModCenter, NotRegular, NotTopSemisimple,
                     UnsupportedTorus)
from .local_field import INF, LocalFieldElement, teichmuller_part
from .tori import TorusCharacter, TorusDescriptor
from .yu import TameEllipticPair, _quadratic_is_norm


# toral elements ------------------------------------------------------------------

@dataclass(frozen=True)
class ToralElement:
    torus: TorusDescriptor
    value: object

    @classmethod
    def from_matrix(cls, torus: TorusDescriptor, g) -> "ToralElement":
        return cls(torus, torus.from_matrix(g))

    def matrix(self):
        return self.torus.matrix(self.value)

    def eigenvalues(self) -> list:
        return self.torus.eigenvalues(self.value)

    def root_values(self) -> list:
        """alpha(gamma) for every root alpha, positive and negative."""
        ev = self.eigenvalues()
        return [ev[i] / ev[j] for i in range(len(ev)) for j in range(len(ev)) if i != j]

    @property
    def regular(self) -> bool:
        return all(not (a - 1).is_zero() for a in self.root_values())

    @property
    def compact_mod_center(self) -> bool:
        vals = {v.val() for v in self.eigenvalues()}
        if len(vals) != 1:
            return False
        return self.torus.group == "GL" or vals == {0}

    def conjugate_by_galois(self) -> "ToralElement":
        return ToralElement(self.torus, self.torus.galois(self.value))

    def inverse(self) -> "ToralElement":
        return ToralElement(self.torus, self.torus.inv(self.value))

    def __mul__(self, other: "ToralElement") -> "ToralElement":
        return ToralElement(self.torus, self.torus.mul(self.value, other.value))

    def __eq__(self, other):
        return isinstance(other, ToralElement) and self.torus.eq(self.value, other.value)

    def __hash__(self):
        return hash(self.torus)


# topological Jordan decomposition --------------------------------------------------

def _teichmuller_newton(u: LocalFieldElement) -> LocalFieldElement:
    """Root of x^Q - x near u by Newton's method (Q the residue field size)."""
    Q = u.field.q
    x = u
    for _ in range(2 * u.field.e * u.precision_digits() + 8):
        step = (x ** Q - x) / (x ** (Q - 1) * Q - 1)
        if step.is_zero():
            return x
        x = x - step
    return x


def _split_unit(c: LocalFieldElement, uniformizer: LocalFieldElement):
    """c = uniformizer^m * u with u a unit."""
    m = int(c.val() / uniformizer.val())
    return m, (c * uniformizer ** (-m) if m else c)


def _jordan_coordinate(c: LocalFieldElement, uniformizer: LocalFieldElement, check: bool):
    m, u = _split_unit(c, uniformizer)
    omega = teichmuller_part(u)
    if check and not omega == _teichmuller_newton(u):
        raise NotCompactModCenter("Teichmueller computations disagree; precision too low")
    head = uniformizer ** m * omega if m else omega
    return head, u / omega


def topological_jordan(gamma: ToralElement, k: int | None = None, check: bool = True):
    """gamma = gamma_0 * gamma_0plus with gamma_0 of prime-to-p order mod center and
    gamma_0plus topologically unipotent.  Both factors are returned as toral elements.

    The root of unity part is computed twice (p-power iteration and Newton) and
    compared when ``check`` is set.  ``k`` truncates the result to k digits.
    """
    torus = gamma.torus
    if not gamma.compact_mod_center:
        raise NotCompactModCenter("eigenvalue valuations differ modulo the center")
    if torus.is_elliptic:
        pi = torus.field.uniformizer()
        head, tail = _jordan_coordinate(gamma.value, pi, check)
    else:
        pi = torus.base.uniformizer()
        parts = [_jordan_coordinate(c, pi, check) for c in gamma.value]
        head = tuple(h for h, _ in parts)
        tail = tuple(t for _, t in parts)
    if k is not None:
        def cut(x):
            return x.truncate(Fraction(k, x.field.e))
        head = cut(head) if torus.is_elliptic else tuple(cut(h) for h in head)
        tail = cut(tail) if torus.is_elliptic else tuple(cut(t) for t in tail)
    return ToralElement(torus, head), ToralElement(torus, tail)


def is_topologically_unipotent(gamma: ToralElement) -> bool:
    return all((c - 1).val() > 0 for c in gamma.eigenvalues())


def has_prime_to_p_order_mod_center(gamma: ToralElement) -> bool:
    """chi(gamma)^(Q-1) = 1 for the roots chi, Q the residue size of the splitting field."""
    Q = gamma.torus.field.q
    return all((a ** (Q - 1) - 1).is_zero() for a in gamma.root_values())


def is_central(gamma: ToralElement) -> bool:
    ev = gamma.eigenvalues()
    return all(e == ev[0] for e in ev[1:])


# Weyl discriminant -------------------------------------------------------------------

@dataclass(frozen=True)
class PowerOfQ:
    """q^exponent for a rational exponent."""

    q: int
    exponent: Fraction

    def __float__(self):
        return float(self.q) ** float(self.exponent)

    def exact(self) -> Fraction:
        if self.exponent.denominator != 1:
            raise ValueError("not a rational number")
        return Fraction(self.q) ** int(self.exponent)

    def __str__(self):
        return f"{self.q}^{self.exponent}"


def discriminant_exponent(gamma: ToralElement) -> Fraction:
    """m with D(gamma) = q^(-m): the sum of val(1 - alpha(gamma)) over all roots."""
    total = Fraction(0)
    for a in gamma.root_values():
        v = (1 - a).val()
        if v == INF:
            raise NotRegular("alpha(gamma) = 1 for some root")
        total += Fraction(v)
    return total


def weyl_discriminant(gamma: ToralElement) -> PowerOfQ:
    return PowerOfQ(gamma.torus.base.q, -discriminant_exponent(gamma))


def kottwitz_sign(r_qs: int, r: int) -> int:
    return -1 if (r_qs - r) % 2 else 1


def group_kottwitz_sign(torus: TorusDescriptor) -> int:
    # GL_n and SL_n are split, so they are their own quasi-split inner forms
    rank = torus.n - 1
    return kottwitz_sign(rank, rank)


# a-data and chi-data -------------------------------------------------------------------

@dataclass(frozen=True)
class ChiDatum:
    a: LocalFieldElement
    chi: Callable[[LocalFieldElement], RootOfUnity]
    label: str = "chi"


@dataclass
class ChiData:
    """a_alpha and chi''_alpha for each symmetric Galois orbit of roots, keyed by orbit name."""

    entries: dict = field(default_factory=dict)
    note: str = ""


def symmetric_orbits(torus: TorusDescriptor) -> list[str]:
    """Orbits of roots stable under alpha -> -alpha.

    For a rank-one elliptic torus Galois swaps alpha and -alpha, giving one
    orbit with field of definition E.  Split tori have none.
    """
    return ["alpha"] if torus.is_elliptic else []


def unramified_quadratic(fd) -> Callable:
    """x -> (-1)^(normalized valuation of x) on the units-and-powers of fd."""
    def chi(x):
        return RootOfUnity(Fraction(int(x.val() * fd.e), 2))
    return chi


def default_chi_data(torus: TorusDescriptor) -> ChiData:
    """Defaults: nothing for split tori; for an unramified elliptic torus a_alpha = sqrt(delta)
    (a unit with trace zero) and chi'' the unramified quadratic character of E^x."""
    if not torus.is_elliptic:
        return ChiData({}, "split torus: no symmetric orbits")
    if torus.is_ramified:
        raise MissingOrbitData("no default chi-data for a ramified torus; supply ChiData")
    fd = torus.field
    return ChiData({"alpha": ChiDatum(fd.generator(), unramified_quadratic(fd), "unramified quadratic")},
                   "default: a = sqrt(delta), chi'' unramified quadratic")


def delta_II(gamma: ToralElement, data: ChiData) -> RootOfUnity:
    orbits = symmetric_orbits(gamma.torus)
    total = RootOfUnity(0)
    for name in orbits:
        if name not in data.entries:
            raise MissingOrbitData(f"no a-/chi-data for the orbit {name}")
    if not orbits:
        return total
    if not gamma.regular:
        raise NotRegular("Delta_II needs a regular element")
    for name in orbits:
        d = data.entries[name]
        alpha_value = gamma.root_values()[0]
        total = total * d.chi((alpha_value - 1) / d.a)
    return total


# N(S)(F)/S(F) ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeylCoset:
    label: str
    matrix: object
    act: Callable[[ToralElement], ToralElement]


def _hensel_sqrt(c, start: int, p: int, steps: int):
    x = c.field(start)
    for _ in range(steps):
        x = x - (x * x - c) / (x * 2)
    return x


def _element_of_norm(torus: TorusDescriptor, target: int):
    """s in E with N(s) = target, found mod p and lifted by Newton; None if none is found."""
    p, delta, fb = torus.p, torus.field.delta, torus.base
    steps = 2 * torus.field.precision + 4
    for a in range(p):
        for b in range(p):
            if (a * a - delta * b * b - target) % p or not (a % p or b % p):
                continue
            if a % p:
                a_full = _hensel_sqrt(fb(target + delta * b * b), a, p, steps)
                s = torus.field(a_full.coords[0], b)
            elif delta % p:
                b_full = _hensel_sqrt(fb(Fraction(a * a - target, delta)), b, p, steps)
                s = torus.field(a, b_full.coords[0])
            else:
                continue
            if s.norm() == target:
                return s
    return None


def weyl_cosets(torus: TorusDescriptor) -> list[WeylCoset]:
    """Representatives of N(S)(F)/S(F) for a rank-one elliptic torus.

    The nontrivial coset is certified by an explicit g with g s g^-1 = sigma(s)
    for the torus generators and det g = 1 (SL) at working precision.
    """
    if not torus.is_elliptic:
        raise UnsupportedTorus("coset enumeration is implemented for rank-one elliptic tori")
    fb = torus.base
    one = [[fb.one(), fb.zero()], [fb.zero(), fb.one()]]
    cosets = [WeylCoset("1", one, lambda g: g)]
    flip = [[fb.one(), fb.zero()], [fb.zero(), -fb.one()]]
    if torus.group == "GL":
        g = flip
    else:
        if not _quadratic_is_norm(torus, -1):
            return cosets
        s = _element_of_norm(torus, -1)
        if s is None:
            warnings.warn("no certified Weyl element at this precision; using the identity coset only")
            return cosets
        g = mat_mul(flip, torus.matrix(s))
        if not det(g) == 1:
            warnings.warn("Weyl element failed the determinant check; using the identity coset only")
            return cosets
    gi = mat_inverse(g)
    tests = [torus.field(1, 1), torus.field(2, 1)] if not torus.is_norm_one else torus.level_generators(0)
    for t in tests:
        if torus.group == "SL" and not torus.contains(t):
            continue
        conj = mat_mul(mat_mul(g, torus.matrix(t)), gi)
        target = torus.matrix(torus.galois(t))
        if not all(conj[i][j] == target[i][j] for i in range(2) for j in range(2)):
            warnings.warn("Weyl element does not act by the Galois flip; using the identity coset only")
            return cosets
    cosets.append(WeylCoset("w", g, lambda x: x.conjugate_by_galois()))
    return cosets


# the character formula -------------------------------------------------------------------

@dataclass(frozen=True)
class CharacterValue:
    """rational_part + sqrt_part * sqrt(q) with coefficients in a cyclotomic field."""

    rational_part: Cyclotomic
    sqrt_part: Cyclotomic
    q: int

    def exact(self) -> Cyclotomic:
        return self.rational_part + self.sqrt_part * sqrt_rational(self.q)

    def to_complex(self) -> complex:
        return self.rational_part.to_complex() + self.sqrt_part.to_complex() * math.sqrt(self.q)

    def __add__(self, other: "CharacterValue") -> "CharacterValue":
        return CharacterValue(self.rational_part + other.rational_part, self.sqrt_part + other.sqrt_part, self.q)

    def scale(self, c) -> "CharacterValue":
        c = as_cyclotomic(c)
        return CharacterValue(self.rational_part * c, self.sqrt_part * c, self.q)

    def __eq__(self, other):
        return (isinstance(other, CharacterValue) and self.q == other.q
                and self.rational_part == other.rational_part and self.sqrt_part == other.sqrt_part)

    def __hash__(self):
        return hash((self.q, str(self)))

    def __str__(self):
        if self.sqrt_part.is_zero():
            return str(self.rational_part)
        if self.rational_part.is_zero():
            return f"({self.sqrt_part})*sqrt({self.q})"
        return f"{self.rational_part} + ({self.sqrt_part})*sqrt({self.q})"

    @classmethod
    def power_of_sqrt_q(cls, q: int, m: Fraction, coeff) -> "CharacterValue":
        """coeff * q^(m/2) for an integer m."""
        if Fraction(m).denominator != 1:
            raise ValueError("discriminant exponent must be an integer")
        m = int(m)
        c = as_cyclotomic(coeff) * Cyclotomic.rational(Fraction(q) ** (m // 2))
        zero = Cyclotomic.rational(0)
        return cls(zero, c, q) if m % 2 else cls(c, zero, q)


@dataclass(frozen=True)
class Summand:
    coset: str
    element: ToralElement
    discriminant_exponent: Fraction
    delta: RootOfUnity
    theta: RootOfUnity
    value: CharacterValue


@dataclass(frozen=True)
class CharacterEvaluation:
    value: CharacterValue
    summands: tuple
    sign: int
    eps_L: object

    def lines(self) -> list[str]:
        out = [f"sign e(G)\t{self.sign}", f"eps_L\t{self.eps_L}"]
        for s in self.summands:
            out.append(f"summand {s.coset}\tD = q^-{s.discriminant_exponent}\tDelta_II = {s.delta}"
                       f"\ttheta = {s.theta}\t{s.value}")
        out.append(f"Theta\t{self.value}")
        return out


def _unit_input(eps):
    if isinstance(eps, RootOfUnity):
        return eps
    if eps in (1, -1):
        return RootOfUnity(Fraction(0 if eps == 1 else 1, 2))
    raise ValueError("eps_L must be a root of unity or +-1")


def character_at_ts(pair: TameEllipticPair, gamma, data: ChiData | None = None, eps_L=1,
                    cosets: list[WeylCoset] | None = None) -> CharacterEvaluation:
    """Evaluate the character of the regular supercuspidal of ``pair`` at gamma.

    gamma must be regular and topologically semisimple modulo the center.
    """
    torus = pair.torus
    if not isinstance(gamma, ToralElement):
        gamma = ToralElement(torus, gamma)
    if not torus.contains(gamma.value):
        raise UnsupportedTorus("gamma does not lie in S(F)")
    if not gamma.regular:
        raise NotRegular("gamma is not regular")
    _, unipotent = topological_jordan(gamma)
    if not is_central(unipotent):
        raise NotTopSemisimple("the topologically unipotent part of gamma is not central")
    data = data if data is not None else default_chi_data(torus)
    eps = _unit_input(eps_L)
    cosets = cosets if cosets is not None else weyl_cosets(torus)
    sign = group_kottwitz_sign(torus)
    q = torus.base.q
    zero = Cyclotomic.rational(0)
    total = CharacterValue(zero, zero, q)
    summands = []
    for c in cosets:
        h = c.act(gamma)
        m = discriminant_exponent(h)
        dl = delta_II(h, data)
        th = pair.theta(h.value)
        v = CharacterValue.power_of_sqrt_q(q, m, (dl * th).to_cyclotomic())
        summands.append(Summand(c.label, h, m, dl, th, v))
        total = total + v
    total = total.scale(eps.to_cyclotomic() * sign)
    return CharacterEvaluation(total, tuple(summands), sign, eps)


def finite_order_element(torus: TorusDescriptor) -> ToralElement:
    """A generator of the Teichmueller part of S(F) (order q+1 on an unramified E^1)."""
    return ToralElement(torus, torus.level_generators(0)[0])


# real groups ------------------------------------------------------------------------------

def real_ds_character(n: int, angle: float) -> float:
    """Discrete series character of SL_2(R) with theta(rot phi) = e^(i n phi) at rot(angle).

    The two-term Weyl sum with sign -1; evaluated in floating point.
    """
    if abs(math.sin(angle)) < 1e-12:
        raise NotRegular("rotation by a multiple of pi is not regular")
    total = 0j
    for sgn in (1, -1):
        total += cmath.exp(1j * sgn * n * angle) / (1 - cmath.exp(-2j * sgn * angle))
    return -total.real


def real_ds_character_exact(n: int, turns) -> Cyclotomic:
    """The same sum at angle 2*pi*turns, exactly in a cyclotomic field."""
    turns = Fraction(turns)
    if (2 * turns).denominator == 1:
        raise NotRegular("rotation by a multiple of pi is not regular")
    total = Cyclotomic.rational(0)
    one = Cyclotomic.rational(1)
    for sgn in (1, -1):
        z = RootOfUnity(sgn * turns)
        total = total + (z ** n).to_cyclotomic() / (one - (z ** -2).to_cyclotomic())
    return -total


def symmetric_power_trace(n: int, turns) -> Cyclotomic:
    """Trace of Sym^n of the standard representation of SU(2) at rotation 2*pi*turns."""
    turns = Fraction(turns)
    total = Cyclotomic.rational(0)
    for k in range(n + 1):
        total = total + RootOfUnity((n - 2 * k) * turns).to_cyclotomic()
    return total
