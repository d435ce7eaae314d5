"""Finite-precision arithmetic in Q_p and in its tame extensions of degree <= 4.

A p-adic number is stored with a capped relative precision: ``p^v * u`` where
``u`` is a unit known modulo ``p^prec``.  A zero carries only an absolute
precision (it is ``O(p^N)``).  Extensions are built as
``Q_p(w)(s)`` with ``w^2 = d`` (d a non-square unit) for the unramified part
and ``s^2 = p*c`` for the ramified part; elements are coordinate tuples over
Q_p in the basis ``s^i w^j``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import RootOfUnity
from .errors import InsufficientPrecision, NegativeValuation, NotAUnit

INF = math.inf


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def least_nonresidue(p: int) -> int:
    return next(a for a in range(2, p) if _legendre(a, p) == -1)


class PAdic:
    """Element of Q_p with capped relative precision."""

    __slots__ = ("p", "v", "u", "prec")

    def __init__(self, p: int, v, u: int, prec: int):
        # v is None for a zero; prec is then the absolute precision.
        self.p = p
        if v is None:
            self.v, self.u, self.prec = None, 0, prec
            return
        if prec < 1:
            raise InsufficientPrecision("fewer than one significant digit")
        mod = p ** prec
        u %= mod
        if u == 0:
            self.v, self.u, self.prec = None, 0, v + prec
            return
        while u % p == 0:
            u //= p
            v += 1
            prec -= 1
        self.v, self.u, self.prec = v, u % (p ** prec), prec

    @classmethod
    def from_rational(cls, p: int, x, prec: int) -> "PAdic":
        x = Fraction(x)
        if x == 0:
            return cls(p, None, 0, prec)
        v = 0
        num, den = x.numerator, x.denominator
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v -= 1
        mod = p ** prec
        return cls(p, v, num * pow(den, -1, mod) % mod, prec)

    @classmethod
    def zero(cls, p: int, absprec: int) -> "PAdic":
        return cls(p, None, 0, absprec)

    # basic data -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.v is None

    @property
    def absprec(self) -> int:
        return self.prec if self.v is None else self.v + self.prec

    def val(self):
        return INF if self.v is None else self.v

    def _coerce(self, other) -> "PAdic":
        if isinstance(other, PAdic):
            if other.p != self.p:
                raise ValueError("mixing different primes")
            return other
        if isinstance(other, (int, Fraction)):
            x = Fraction(other)
            shift = 0
            if x:
                shift = _vp(x.numerator, self.p) - _vp(x.denominator, self.p)
            return PAdic.from_rational(self.p, x, max(self.absprec - shift, 1) + 2)
        return NotImplemented

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.p
        n = min(self.absprec, other.absprec)
        terms = [x for x in (self, other) if x.v is not None and x.v < n]
        if not terms:
            return PAdic.zero(p, n)
        m = min(x.v for x in terms)
        total = sum(x.u * p ** (x.v - m) for x in terms)
        return PAdic(p, m, total, n - m)

    __radd__ = __add__

    def __neg__(self):
        if self.v is None:
            return self
        return PAdic(self.p, self.v, -self.u, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.v is None and other.v is None:
            return PAdic.zero(self.p, self.prec + other.prec)
        if self.v is None:
            return PAdic.zero(self.p, self.prec + other.v)
        if other.v is None:
            return PAdic.zero(self.p, other.prec + self.v)
        prec = min(self.prec, other.prec)
        return PAdic(self.p, self.v + other.v, self.u * other.u, prec)

    __rmul__ = __mul__

    def inverse(self) -> "PAdic":
        if self.v is None:
            raise InsufficientPrecision("cannot invert an element indistinguishable from zero")
        mod = self.p ** self.prec
        return PAdic(self.p, -self.v, pow(self.u, -1, mod), self.prec)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if self.v is None:
            return self if k else PAdic.from_rational(self.p, 1, self.prec)
        mod = self.p ** self.prec
        return PAdic(self.p, self.v * k, pow(self.u, k, mod), self.prec)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("p-adic numbers at finite precision are not hashable")

    # views ------------------------------------------------------------
    def lift(self) -> Fraction:
        """A rational representative."""
        if self.v is None:
            return Fraction(0)
        return Fraction(self.p) ** self.v * self.u

    def mod_int(self, k: int) -> int:
        """Integer representative of an integral element modulo p^k."""
        if k > self.absprec:
            raise InsufficientPrecision(f"need {k} digits, have absolute precision {self.absprec}")
        if self.v is None or self.v >= k:
            return 0
        if self.v < 0:
            raise NegativeValuation("element is not integral")
        return self.u * self.p ** self.v % self.p ** k

    def truncate(self, absprec: int) -> "PAdic":
        if self.v is None:
            return PAdic.zero(self.p, min(self.prec, absprec))
        if absprec <= self.v:
            return PAdic.zero(self.p, absprec)
        return PAdic(self.p, self.v, self.u, min(self.prec, absprec - self.v))

    def digits(self) -> list[int]:
        out, u = [], self.u
        for _ in range(self.prec if self.v is not None else 0):
            out.append(u % self.p)
            u //= self.p
        return out

    def __repr__(self):
        if self.v is None:
            return f"O({self.p}^{self.prec})"
        return f"{self.p}^{self.v}*{self.u} + O({self.p}^{self.absprec})"


@dataclass(frozen=True)
class LocalFieldDesc:
    """Q_p, or a tame extension with ramification index e and residue degree f."""

    p: int
    e: int = 1
    f: int = 1
    precision: int = 10
    unramified_square: int = 0
    ramified_unit: int = 1
    uniformizer_tag: str = "pi"

    def __post_init__(self):
        if self.e not in (1, 2) or self.f not in (1, 2):
            raise ValueError("only e, f in {1, 2} are supported")
        if self.e == 2 and self.p == 2:
            raise ValueError("ramified quadratic extensions need p odd")
        if self.f == 2 and self.unramified_square == 0:
            object.__setattr__(self, "unramified_square", least_nonresidue(self.p))
        if self.f == 2 and _legendre(self.unramified_square, self.p) != -1:
            raise ValueError("unramified generator must square to a non-residue unit")
        if self.e == 2 and self.ramified_unit % self.p == 0:
            raise ValueError("ramified radicand must be p times a unit")

    @classmethod
    def qp(cls, p: int, precision: int = 10) -> "LocalFieldDesc":
        return cls(p, 1, 1, precision)

    @classmethod
    def quadratic(cls, p: int, delta: int, precision: int = 10) -> "LocalFieldDesc":
        """Q_p(sqrt(delta)) for delta a non-square unit or p times a unit."""
        if delta % p:
            return cls(p, 1, 2, precision, unramified_square=delta)
        if (delta // p) % p == 0:
            raise ValueError("delta must have valuation 0 or 1")
        return cls(p, 2, 1, precision, ramified_unit=delta // p)

    @property
    def q(self) -> int:
        return self.p ** self.f

    @property
    def degree(self) -> int:
        return self.e * self.f

    @property
    def base(self) -> "LocalFieldDesc":
        return LocalFieldDesc.qp(self.p, self.precision)

    @property
    def delta(self) -> int:
        """Radicand of the adjoined square root for quadratic fields."""
        if self.degree != 2:
            raise ValueError("delta is defined for quadratic extensions only")
        return self.unramified_square if self.f == 2 else self.p * self.ramified_unit

    def with_precision(self, precision: int) -> "LocalFieldDesc":
        return LocalFieldDesc(self.p, self.e, self.f, precision,
                              self.unramified_square, self.ramified_unit, self.uniformizer_tag)

    # element constructors ---------------------------------------------
    def __call__(self, *coords) -> "LocalFieldElement":
        """Element from rational coordinates in the basis s^i w^j."""
        vals = list(coords) + [0] * (self.degree - len(coords))
        return LocalFieldElement(self, tuple(
            c if isinstance(c, PAdic) else PAdic.from_rational(self.p, c, self.precision)
            for c in vals))

    def zero(self) -> "LocalFieldElement":
        return self(0)

    def one(self) -> "LocalFieldElement":
        return self(1)

    def uniformizer(self) -> "LocalFieldElement":
        if self.e == 2:
            coords = [0] * self.degree
            coords[self.f] = 1
            return self(*coords)
        return self(self.p)

    def generator(self) -> "LocalFieldElement":
        """The adjoined square root s (quadratic fields)."""
        if self.degree != 2:
            raise ValueError("generator defined for quadratic extensions")
        return self(0, 1)

    def parse(self, text: str) -> "LocalFieldElement":
        return parse_element(self, text)

    def __str__(self):
        if self.degree == 1:
            return f"Q{self.p}"
        return f"Q{self.p}(sqrt({self.delta}))" if self.degree == 2 else f"Q{self.p}[e=2,f=2]"


class LocalFieldElement:
    """Element of a LocalFieldDesc, coordinates over Q_p in the basis s^i w^j."""

    __slots__ = ("field", "coords")

    def __init__(self, field: LocalFieldDesc, coords: tuple[PAdic, ...]):
        self.field = field
        self.coords = tuple(coords)

    # coordinate helpers -------------------------------------------------
    def _lift(self, other) -> "LocalFieldElement":
        if isinstance(other, LocalFieldElement):
            if other.field != self.field:
                if other.field.degree == 1 and other.field.p == self.field.p:
                    return LocalFieldElement(self.field, other.coords + tuple(
                        PAdic.zero(self.field.p, other.coords[0].absprec + 4)
                        for _ in range(self.field.degree - 1)))
                raise ValueError("elements from different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        if isinstance(other, PAdic):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return LocalFieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return LocalFieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        fd = self.field
        if fd.degree == 1:
            return LocalFieldElement(fd, (self.coords[0] * other.coords[0],))
        f = fd.f
        x = [self.coords[i * f:(i + 1) * f] for i in range(fd.e)]
        y = [other.coords[i * f:(i + 1) * f] for i in range(fd.e)]
        if fd.e == 1:
            return LocalFieldElement(fd, _kmul(fd, x[0], y[0]))
        c = fd.p * fd.ramified_unit
        lo = _kadd(_kmul(fd, x[0], y[0]), _kscale(_kmul(fd, x[1], y[1]), c))
        hi = _kadd(_kmul(fd, x[0], y[1]), _kmul(fd, x[1], y[0]))
        return LocalFieldElement(fd, lo + hi)

    __rmul__ = __mul__

    def inverse(self) -> "LocalFieldElement":
        fd = self.field
        if self.is_zero():
            raise InsufficientPrecision("cannot invert an element indistinguishable from zero")
        if fd.degree == 1:
            return LocalFieldElement(fd, (self.coords[0].inverse(),))
        f = fd.f
        if fd.e == 1:
            return LocalFieldElement(fd, _kinv(fd, self.coords))
        x0, x1 = self.coords[:f], self.coords[f:]
        c = fd.p * fd.ramified_unit
        den = _kadd(_kmul(fd, x0, x0), _kscale(_kmul(fd, x1, x1), -c))
        dinv = _kinv(fd, den)
        return LocalFieldElement(fd, _kmul(fd, x0, dinv) + _kscale(_kmul(fd, x1, dinv), -1))

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # valuation & friends --------------------------------------------------
    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def val(self):
        """Normalized valuation (val(p) = 1), in (1/e)Z or infinity."""
        fd = self.field
        best = INF
        for idx, c in enumerate(self.coords):
            if c.is_zero():
                continue
            i = idx // fd.f
            v = Fraction(c.v) + Fraction(i, fd.e)
            best = min(best, v)
        return best

    def absprec(self) -> Fraction:
        """Valuation up to which the element is known."""
        fd = self.field
        return min(Fraction(c.absprec) + Fraction(idx // fd.f, fd.e)
                   for idx, c in enumerate(self.coords))

    def precision_digits(self) -> int:
        return max(1, min(c.prec if not c.is_zero() else c.absprec for c in self.coords))

    def is_integral(self) -> bool:
        return self.val() >= 0

    def is_unit(self) -> bool:
        return self.val() == 0

    def ideal_member(self, k) -> bool:
        """Decide val(self) >= k; raises if the digits cannot resolve it."""
        v = self.val()
        if v >= k:
            if v == INF and self.absprec() < k:
                raise InsufficientPrecision(f"cannot resolve membership in p^{k}: known to {self.absprec()}")
            return True
        return False

    def residue(self):
        """Image in the residue field: an int for f = 1, a pair (a, b) = a + b*w otherwise."""
        v = self.val()
        if v < 0:
            raise NegativeValuation("residue of an element of negative valuation")
        fd = self.field
        if self.absprec() <= 0:
            raise InsufficientPrecision("no digit at valuation 0")
        parts = [c.mod_int(1) for c in self.coords[:fd.f]]
        return parts[0] if fd.f == 1 else tuple(parts)

    def trace(self) -> PAdic:
        """Trace down to Q_p."""
        return self.coords[0] * self.field.degree

    def conj(self) -> "LocalFieldElement":
        """Nontrivial automorphism s -> -s of a quadratic extension."""
        if self.field.degree != 2:
            raise ValueError("conjugation defined for quadratic extensions")
        return LocalFieldElement(self.field, (self.coords[0], -self.coords[1]))

    def norm(self) -> PAdic:
        """Norm down to Q_p for quadratic or trivial extensions."""
        if self.field.degree == 1:
            return self.coords[0]
        if self.field.degree != 2:
            raise ValueError("norm implemented for degree <= 2")
        a, b = self.coords
        return a * a - b * b * self.field.delta

    def in_base(self) -> bool:
        return all(c.is_zero() for c in self.coords[1:])

    def base_coord(self) -> PAdic:
        return self.coords[0]

    def truncate(self, absprec) -> "LocalFieldElement":
        """Forget digits at valuation >= absprec."""
        fd = self.field
        out = []
        for idx, c in enumerate(self.coords):
            offset = Fraction(idx // fd.f, fd.e)
            out.append(c.truncate(math.ceil(Fraction(absprec) - offset)))
        return LocalFieldElement(fd, tuple(out))

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("local field elements are not hashable")

    def key(self, absprec) -> tuple:
        """Hashable fingerprint modulo elements of valuation >= absprec."""
        fd = self.field
        out = []
        for idx, c in enumerate(self.coords):
            offset = Fraction(idx // fd.f, fd.e)
            k = math.ceil(Fraction(absprec) - offset)
            if c.is_zero() or c.v >= k:
                out.append((k, 0))
                continue
            low = min(c.v, 0)
            scaled = PAdic(c.p, c.v - low, c.u, c.prec).mod_int(k - low)
            out.append((low, scaled))
        return tuple(out)

    def __repr__(self):
        return format_element(self)


def _kadd(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _kscale(x, c):
    return tuple(a * c for a in x)


def _kmul(fd: LocalFieldDesc, x, y):
    if fd.f == 1:
        return (x[0] * y[0],)
    d = fd.unramified_square
    return (x[0] * y[0] + x[1] * y[1] * d, x[0] * y[1] + x[1] * y[0])


def _kinv(fd: LocalFieldDesc, x):
    if fd.f == 1:
        return (x[0].inverse(),)
    d = fd.unramified_square
    n = x[0] * x[0] - x[1] * x[1] * d
    ninv = n.inverse()
    return (x[0] * ninv, -(x[1] * ninv))


# literals --------------------------------------------------------------------

_TERM = re.compile(r"^\s*(?:(?P<p>\d+)\^(?P<k>-?\d+)\s*\*\s*)?(?P<u>-?\d+(?:/\d+)?)?\s*(?:\*?\s*(?P<sym>[sw]))?\s*$")


def _parse_base(fd: LocalFieldDesc, text: str) -> Fraction:
    m = re.fullmatch(r"\s*(?:(\d+)\^(-?\d+)\s*\*\s*)?(-?\d+(?:/\d+)?)\s*", text)
    if not m:
        m2 = re.fullmatch(r"\s*(\d+)\^(-?\d+)\s*", text)
        if not m2:
            raise ValueError(f"bad p-adic literal {text!r}")
        base, k = int(m2.group(1)), int(m2.group(2))
        if base != fd.p:
            raise ValueError(f"literal base {base} does not match p = {fd.p}")
        return Fraction(base) ** k
    base, k, u = m.group(1), m.group(2), Fraction(m.group(3))
    if base is None:
        return u
    if int(base) != fd.p:
        raise ValueError(f"literal base {base} does not match p = {fd.p}")
    return Fraction(int(base)) ** int(k) * u


def parse_element(fd: LocalFieldDesc, text: str) -> LocalFieldElement:
    """Parse "p^k*u" (e.g. "7^-1*3") or "a+b*s" for the adjoined root s."""
    text = text.replace(" ", "")
    terms = re.split(r"(?<=[\dsw])\+", text)
    coords = [Fraction(0)] * fd.degree
    for term in terms:
        sym = None
        if term.endswith("*s") or term.endswith("*w"):
            term, sym = term[:-2], term[-1]
        elif term in ("s", "w", "-s", "-w"):
            term, sym = ("-1" if term.startswith("-") else "1"), term[-1]
        value = _parse_base(fd, term)
        if sym is None:
            coords[0] += value
        elif sym == "s":
            idx = fd.f if fd.e == 2 else 1
            if fd.degree < 2:
                raise ValueError("no adjoined root in Q_p")
            coords[idx] += value
        else:
            if fd.f != 2:
                raise ValueError("no unramified generator in this field")
            coords[1] += value
    return fd(*coords)


def format_element(x: LocalFieldElement) -> str:
    fd = x.field
    parts = []
    names = [""] * fd.degree
    if fd.degree == 2:
        names[1] = "s"
    elif fd.degree == 4:
        names = ["", "w", "s", "s*w"]
    for c, name in zip(x.coords, names):
        if c.is_zero():
            continue
        lit = f"{fd.p}^{c.v}*{c.u}" if c.v else f"{c.u}"
        parts.append(lit + (f"*{name}" if name else ""))
    body = " + ".join(parts) if parts else "0"
    return f"{body} + O(val {x.absprec()})"


# characters -----------------------------------------------------------------

@dataclass(frozen=True)
class AdditiveCharacter:
    """phi(x) = exp(2 pi i {Tr(x)/p}_p): trivial on the maximal ideal, nontrivial on O."""

    field: LocalFieldDesc
    twist: Fraction = Fraction(1)

    def __call__(self, x) -> RootOfUnity:
        if not isinstance(x, LocalFieldElement):
            x = self.field(x)
        t = x.trace() * self.twist if self.twist != 1 else x.trace()
        return RootOfUnity(padic_fractional_part(t / t.p if not t.is_zero() else t))


def padic_fractional_part(y: PAdic) -> Fraction:
    """{y}_p in [0, 1); needs y known modulo Z_p."""
    if y.absprec < 0 or (y.is_zero() and y.absprec < 0):
        raise InsufficientPrecision("cannot resolve the fractional part")
    if y.is_zero() or y.v >= 0:
        return Fraction(0)
    k = -y.v
    if y.prec < k:
        raise InsufficientPrecision("cannot resolve the fractional part")
    return Fraction(y.u % y.p ** k, y.p ** k)


def additive_char_eval(phi: AdditiveCharacter, x) -> RootOfUnity:
    return phi(x)


def val(x: LocalFieldElement):
    return x.val()


def residue(x: LocalFieldElement):
    return x.residue()


def teichmuller_part(gamma: LocalFieldElement, k: int | None = None) -> LocalFieldElement:
    """The root of unity of order dividing q - 1 congruent to gamma mod the maximal ideal.

    Computed as the fixed point of x -> x^q.  If ``k`` is given the result is
    truncated to ``k`` uniformizer-digits.
    """
    if gamma.val() != 0:
        raise NotAUnit("Teichmueller part needs a unit")
    q = gamma.field.q
    y = gamma
    for _ in range(gamma.field.e * gamma.precision_digits() + 4):
        nxt = y ** q
        if nxt == y:
            break
        y = nxt
    else:
        raise InsufficientPrecision("p-power iteration did not stabilize")
    if k is not None:
        y = y.truncate(Fraction(k, gamma.field.e))
    return y


def padic_log(u: LocalFieldElement, absprec) -> LocalFieldElement:
    """log(u) for u = 1 mod the maximal ideal, correct modulo valuation ``absprec``."""
    y = u - 1
    v = y.val()
    if v <= 0:
        raise NotAUnit("log needs a principal unit")
    if v == INF:
        return u.field.zero()
    p = u.field.p
    total = u.field.zero()
    power = y
    n = 1
    turn = 1 / (float(v) * math.log(p))
    while True:
        if n > turn and n * v - math.log(n, p) >= absprec:
            break
        term = power * Fraction((-1) ** (n + 1), n)
        total = total + term
        n += 1
        power = power * y
    return total


def _vp(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k
