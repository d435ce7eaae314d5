"""Exact arithmetic in cyclotomic fields Q(zeta_n) and with roots of unity.

An element of Q(zeta_n) is stored as an integer coefficient vector in the
power basis 1, z, ..., z^(phi(n)-1) together with a positive common
denominator.  Mixed levels are lifted to the lcm on the fly.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from math import gcd


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the n-th cyclotomic polynomial."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _exact_div(poly, cyclotomic_poly(d))
    return tuple(poly)


def _exact_div(a: list[int], b: tuple[int, ...]) -> list[int]:
    a = list(a)
    db = len(b) - 1
    out = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] // b[-1]
        out[i - db] = c
        if c:
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    assert not any(a[:db]), "non-exact polynomial division"
    return out


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


def _reduce(poly: list[int], n: int) -> tuple[int, ...]:
    """Reduce an integer polynomial in z modulo z^n - 1 and then Phi_n."""
    folded = [0] * n
    for k, c in enumerate(poly):
        if c:
            folded[k % n] += c
    phi = cyclotomic_poly(n)
    m = len(phi) - 1
    for i in range(n - 1, m - 1, -1):
        c = folded[i]
        if c:
            base = i - m
            for j in range(m):
                if phi[j]:
                    folded[base + j] -= c * phi[j]
            folded[i] = 0
    return tuple(folded[:m])


class RootOfUnity:
    """exp(2*pi*i*t) for a rational t taken modulo 1."""

    __slots__ = ("t",)

    def __init__(self, t):
        t = Fraction(t)
        self.t = t - math.floor(t)

    @classmethod
    def of(cls, numerator: int, order: int) -> "RootOfUnity":
        return cls(Fraction(numerator, order))

    @property
    def order(self) -> int:
        return self.t.denominator

    @property
    def numerator(self) -> int:
        return self.t.numerator

    def __mul__(self, other):
        if isinstance(other, RootOfUnity):
            return RootOfUnity(self.t + other.t)
        return self.to_cyclotomic() * other

    __rmul__ = __mul__

    def __truediv__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity(self.t - other.t)

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity(self.t * k)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(-self.t)

    conj = inverse

    def is_one(self) -> bool:
        return self.t == 0

    def __eq__(self, other):
        if isinstance(other, RootOfUnity):
            return self.t == other.t
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return self.to_cyclotomic() == other
        return NotImplemented

    def __hash__(self):
        return hash(("root", self.t))

    def to_complex(self) -> complex:
        return cmath.exp(2j * math.pi * self.t)

    def to_cyclotomic(self) -> "Cyclotomic":
        return Cyclotomic.zeta(self.order, self.numerator)

    def __repr__(self):
        return f"RootOfUnity({self.numerator}/{self.order})"


class Cyclotomic:
    """An element of Q(zeta_n)."""

    __slots__ = ("n", "num", "den", "_z")

    def __init__(self, n: int, num, den: int = 1):
        num = tuple(int(c) for c in num)
        if len(num) != totient(n):
            num = _reduce(list(num), n)
        if den < 0:
            num, den = tuple(-c for c in num), -den
        g = den
        for c in num:
            if g == 1:
                break
            g = gcd(g, c)
        if g > 1:
            num, den = tuple(c // g for c in num), den // g
        self.n = n
        self.num = num
        self.den = den
        self._z = None

    # constructors -----------------------------------------------------
    @classmethod
    def rational(cls, q) -> "Cyclotomic":
        q = Fraction(q)
        return cls(1, (q.numerator,), q.denominator)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "Cyclotomic":
        poly = [0] * n
        poly[k % n] = 1
        return cls(n, _reduce(poly, n))

    @classmethod
    def coerce(cls, x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, RootOfUnity):
            return x.to_cyclotomic()
        if isinstance(x, (int, Fraction)):
            return cls.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Cyclotomic")

    # level handling ---------------------------------------------------
    def at_level(self, level: int) -> tuple[int, ...]:
        if level == self.n:
            return self.num
        if level % self.n:
            raise ValueError("target level must be a multiple")
        step = level // self.n
        poly = [0] * (step * len(self.num))
        for k, c in enumerate(self.num):
            poly[k * step] = c
        return _reduce(poly, level)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        n = _lcm(self.n, other.n)
        a, b = self.at_level(n), other.at_level(n)
        num = [x * other.den + y * self.den for x, y in zip(a, b)]
        return Cyclotomic(n, num, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, [-c for c in self.num], self.den)

    def __sub__(self, other):
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Cyclotomic.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyclotomic(self.n, [c * q.numerator for c in self.num], self.den * q.denominator)
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        if other.n == 1:
            return self * Fraction(other.num[0], other.den)
        if self.n == 1:
            return other * Fraction(self.num[0], self.den)
        n = _lcm(self.n, other.n)
        a, b = self.at_level(n), other.at_level(n)
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic(n, _reduce(prod, n), self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * Cyclotomic.coerce(other).inverse()

    def __rtruediv__(self, other):
        return Cyclotomic.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def galois(self, k: int) -> "Cyclotomic":
        """Apply zeta_n -> zeta_n^k (k coprime to n)."""
        if gcd(k, self.n) != 1:
            raise ValueError("Galois exponent must be coprime to the level")
        poly = [0] * self.n
        for i, c in enumerate(self.num):
            poly[(i * k) % self.n] += c
        return Cyclotomic(self.n, _reduce(poly, self.n), self.den)

    def conj(self) -> "Cyclotomic":
        return self.galois(-1 % self.n) if self.n > 2 else self

    def norm(self) -> Fraction:
        prod = Cyclotomic.rational(1)
        for k in range(1, self.n + 1):
            if gcd(k, self.n) == 1:
                prod = prod * self.galois(k)
        return prod.to_fraction()

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.n <= 2:
            return Cyclotomic.rational(1 / self.to_fraction())
        others = Cyclotomic.rational(1)
        for k in range(2, self.n):
            if gcd(k, self.n) == 1:
                others = others * self.galois(k)
        total = (self * others).to_fraction()
        return others * (1 / total)

    # predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0] if self.num else 0, self.den)

    def __eq__(self, other):
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den != other.den:
            return False
        n = _lcm(self.n, other.n)
        return self.at_level(n) == other.at_level(n)

    def __hash__(self):
        z = self.to_complex()
        return hash((round(z.real, 8) + 0.0, round(z.imag, 8) + 0.0))

    def __bool__(self):
        return not self.is_zero()

    def to_complex(self) -> complex:
        if self._z is None:
            w = cmath.exp(2j * math.pi / self.n)
            self._z = sum(c * w ** k for k, c in enumerate(self.num)) / self.den
        return self._z

    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def __repr__(self):
        if self.is_rational():
            return f"Cyclotomic({self.to_fraction()})"
        return f"Cyclotomic(n={self.n}, {self.coefficients()})"

    def __str__(self):
        if self.is_rational():
            return str(self.to_fraction())
        terms = []
        for k, c in enumerate(self.coefficients()):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z{self.n}^{k}")
        return " + ".join(terms)


def as_cyclotomic(x) -> Cyclotomic:
    return Cyclotomic.coerce(x)


ZERO = Cyclotomic.rational(0)
ONE = Cyclotomic.rational(1)


def gauss_sum(ell: int) -> Cyclotomic:
    """Quadratic Gauss sum over F_ell; its square is (-1)^((ell-1)/2) * ell."""
    poly = [0] * ell
    for x in range(ell):
        poly[(x * x) % ell] += 1
    return Cyclotomic(ell, _reduce(poly, ell))


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def sqrt_rational(q) -> Cyclotomic:
    """Exact square root of a rational; positive real (or i times positive real)."""
    q = Fraction(q)
    if q == 0:
        return ZERO
    sign = -1 if q < 0 else 1
    q = abs(q)
    outside = Fraction(1)
    radicand = 1
    for part, power in ((q.numerator, 1), (q.denominator, -1)):
        for prime, k in _factor(part).items():
            outside *= Fraction(prime) ** (power * (k // 2))
            if k % 2:
                # 1/sqrt(l) = sqrt(l)/l
                radicand *= prime
                if power < 0:
                    outside /= prime
    root = Cyclotomic.rational(outside)
    for prime in _factor(radicand):
        if prime == 2:
            root = root * (Cyclotomic.zeta(8, 1) + Cyclotomic.zeta(8, 7))
        else:
            g = gauss_sum(prime)
            if prime % 4 == 3:
                g = g * Cyclotomic.zeta(4, 3)
            root = root * g
    if sign < 0:
        root = root * Cyclotomic.zeta(4, 1)
    z = root.to_complex()
    if (sign > 0 and z.real < 0) or (sign < 0 and z.imag < 0):
        root = -root
    return root


# matrices -----------------------------------------------------------------

def mat_identity(n: int) -> list[list[Cyclotomic]]:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(rows):
        row = []
        ai = a[i]
        for j in range(cols):
            acc = ZERO
            for k in range(inner):
                x = ai[k]
                if x.is_zero():
                    continue
                y = b[k][j]
                if not y.is_zero():
                    acc = acc + x * y
            row.append(acc)
        out.append(row)
    return out


def mat_scale(c, a):
    c = Cyclotomic.coerce(c)
    return [[c * x for x in row] for row in a]


def mat_eq(a, b) -> bool:
    return len(a) == len(b) and all(
        len(r) == len(s) and all(x == y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_trace(a) -> Cyclotomic:
    acc = ZERO
    for i in range(len(a)):
        acc = acc + a[i][i]
    return acc


def row_reduce(a):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    m = [list(map(Cyclotomic.coerce, row)) for row in a]
    pivots = []
    r = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(m)) if not m[i][c].is_zero()), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def mat_rank(a) -> int:
    if not a:
        return 0
    return len(row_reduce(a)[1])


def nullspace(a) -> list[list[Cyclotomic]]:
    """Basis of {v : a v = 0}."""
    cols = len(a[0])
    rows, pivots = row_reduce(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * cols
        v[f] = ONE
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def mat_inverse(a):
    n = len(a)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(a)]
    rows, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in rows]
