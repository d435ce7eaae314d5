"""Finite symplectic spaces, Heisenberg representations and Weil representations.

Conventions:

* the Heisenberg group on (V, <,>) over F_p is V x F_p with
  (v, z)(w, z') = (v + w, z + z' + <v, w>/2);
* p-th roots of unity are identified with F_p by exp(2 pi i k / p) <-> k;
* the Heisenberg representation is the Schroedinger model on functions of
  F_p^m, m = dim V / 2, after moving to a symplectic basis (e_i, f_i):
  omega(x, y, z) = psi(z + x.y/2) M_y T_x with T_x f(u) = f(u + x) and
  M_y f(u) = psi(y.u) f(u).

Weil operators are found by averaging over the Heisenberg group, then
scaled so that the result is an honest representation (see ``weil``).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from .cyclotomic import Cyclotomic, ONE, ZERO, mat_identity, mat_mul
from .errors import DegenerateForm, IntertwinerNotFound
from .building import lie_key, lie_quotient_basis, mat_inverse as local_inverse, mat_mul as local_mul
from .finrep import FiniteGroup
from .local_field import AdditiveCharacter


# linear algebra mod p ------------------------------------------------------------

def _det_mod(m, p):
    n = len(m)
    a = [[x % p for x in row] for row in m]
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c] % p
        inv = pow(a[c][c], -1, p)
        for r in range(c + 1, n):
            f = a[r][c] * inv % p
            a[r] = [(x - f * y) % p for x, y in zip(a[r], a[c])]
    return det % p


def _form(gram, v, w, p):
    return sum(v[i] * gram[i][j] * w[j] for i in range(len(v)) for j in range(len(w))) % p


def _matvec(m, v, p):
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) % p for i in range(len(m)))


# symplectic spaces ----------------------------------------------------------------

@dataclass(frozen=True)
class SymplecticSpace:
    p: int
    gram: tuple

    def __post_init__(self):
        gram = tuple(tuple(int(x) % self.p for x in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        d = len(gram)
        if d % 2:
            raise DegenerateForm("odd-dimensional space carries no symplectic form")
        for i in range(d):
            if gram[i][i] or any((gram[i][j] + gram[j][i]) % self.p for j in range(d)):
                raise DegenerateForm("form is not alternating")
        if d and _det_mod(gram, self.p) == 0:
            raise DegenerateForm("form is degenerate")

    @classmethod
    def standard(cls, p: int, d: int) -> "SymplecticSpace":
        m = d // 2
        gram = [[0] * d for _ in range(d)]
        for i in range(m):
            gram[i][m + i] = 1
            gram[m + i][i] = p - 1
        return cls(p, tuple(map(tuple, gram)))

    @property
    def dim(self) -> int:
        return len(self.gram)

    def form(self, v, w) -> int:
        return _form(self.gram, v, w, self.p)

    def vectors(self):
        return list(product(range(self.p), repeat=self.dim))

    def symplectic_basis(self) -> list[tuple]:
        """Vectors e_1..e_m, f_1..f_m with <e_i, f_j> = delta_ij and all other pairings 0."""
        p, d = self.p, self.dim
        remaining = [tuple(int(i == j) for j in range(d)) for i in range(d)]
        es, fs = [], []
        while remaining:
            e = remaining.pop(0)
            k = next((k for k, w in enumerate(remaining) if self.form(e, w)), None)
            if k is None:
                raise DegenerateForm("form is degenerate")
            f = remaining.pop(k)
            c = pow(self.form(e, f), -1, p)
            f = tuple(c * a % p for a in f)
            es.append(e)
            fs.append(f)
            new = []
            for w in remaining:
                a, b = self.form(w, f), self.form(e, w)
                # w - <w,f> e - <e,w> f is orthogonal to e and f
                new.append(tuple((wi - a * ei - b * fi) % p for wi, ei, fi in zip(w, e, f)))
            remaining = new
        return es + fs

    def gram_in_symplectic_basis(self) -> tuple:
        basis = self.symplectic_basis()
        return tuple(tuple(self.form(u, v) for v in basis) for u in basis)

    def to_symplectic_coordinates(self):
        """Matrix C with C v = coordinates of v in the symplectic basis."""
        basis = self.symplectic_basis()
        p, d = self.p, self.dim
        # columns of B are basis vectors; C = B^{-1} mod p
        B = [[basis[j][i] for j in range(d)] for i in range(d)]
        return _inverse_mod(B, p), B


def _inverse_mod(m, p):
    n = len(m)
    a = [[x % p for x in row] + [int(i == j) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c])
        a[c], a[piv] = a[piv], a[c]
        inv = pow(a[c][c], -1, p)
        a[c] = [x * inv % p for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


# Heisenberg representation ------------------------------------------------------------

@dataclass
class Monomial:
    """Matrix with column j equal to zeta_p^exps[j] e_{perm[j]}."""

    perm: list
    exps: list
    p: int

    def dense(self):
        n = len(self.perm)
        out = [[ZERO] * n for _ in range(n)]
        for j, (i, e) in enumerate(zip(self.perm, self.exps)):
            out[i][j] = Cyclotomic.zeta(self.p, e)
        return out

    def trace_vector(self) -> np.ndarray:
        vec = np.zeros(self.p, dtype=object)
        for j, (i, e) in enumerate(zip(self.perm, self.exps)):
            if i == j:
                vec[e % self.p] += 1
        return vec


class HeisenbergRep:
    def __init__(self, space: SymplecticSpace, central_char: int = 1):
        if space.p == 2:
            raise ValueError("the Schroedinger model needs p odd")
        if central_char % space.p == 0:
            raise ValueError("central character must be nontrivial")
        self.space = space
        self.p = space.p
        self.c = central_char % space.p
        self.m = space.dim // 2
        self.coords, _ = space.to_symplectic_coordinates() if space.dim else ([], [])
        self.points = list(product(range(self.p), repeat=self.m))
        self.point_index = {u: k for k, u in enumerate(self.points)}
        self._half = (self.p + 1) // 2

    @property
    def degree(self) -> int:
        return self.p ** self.m

    def split(self, v):
        """(x, y) coordinates of v in the symplectic basis."""
        if not self.space.dim:
            return (), ()
        w = _matvec(self.coords, v, self.p)
        return w[: self.m], w[self.m:]

    def monomial(self, v, z: int = 0) -> Monomial:
        p = self.p
        x, y = self.split(v)
        xy = sum(a * b for a, b in zip(x, y))
        perm, exps = [], []
        for u in self.points:
            target = tuple((a - b) % p for a, b in zip(u, x))
            yu = sum(a * b for a, b in zip(y, target))
            perm.append(self.point_index[target])
            exps.append(self.c * (z + self._half * xy + yu) % p)
        return Monomial(perm, exps, p)

    def __call__(self, v, z: int = 0):
        return self.monomial(v, z).dense()

    def group_law(self, a, b):
        (v, z), (w, t) = a, b
        p = self.p
        vw = tuple((x + y) % p for x, y in zip(v, w))
        return vw, (z + t + self._half * self.space.form(v, w)) % p

    def character_norm(self) -> Fraction:
        """<chi, chi> over the whole Heisenberg group."""
        p = self.p
        total = np.zeros(p, dtype=object)
        count = 0
        for v in self.space.vectors():
            for z in range(p):
                t = self.monomial(v, z).trace_vector()
                conj = np.roll(t[::-1], 1)
                prod = np.zeros(p, dtype=object)
                for i in np.nonzero(t)[0]:
                    prod += t[i] * np.roll(conj, i)
                total += prod
                count += 1
        return Cyclotomic(p, list(total), count).to_fraction()

    def center_acts_by_scalars(self) -> bool:
        zero = tuple([0] * self.space.dim)
        for z in range(self.p):
            mono = self.monomial(zero, z)
            if mono.perm != list(range(self.degree)) or set(mono.exps) != {self.c * z % self.p}:
                return False
        return True


def heisenberg(space: SymplecticSpace, central_char: int = 1) -> HeisenbergRep:
    return HeisenbergRep(space, central_char)


def _ring_to_cyclotomic(vec, p):
    return Cyclotomic(p, list(vec))


def averaged_intertwiner(source: HeisenbergRep, target: HeisenbergRep, transform, attempts=None):
    """A with A source(v) = target(transform(v)) A, by averaging matrix units over V."""
    p = source.p
    n = source.degree
    vectors = source.space.vectors()
    units = attempts or [(a, b) for a in range(n) for b in range(n)]
    for a, b in units:
        acc = np.zeros((n, n, p), dtype=object)
        for v in vectors:
            left = target.monomial(transform(v))
            right = source.monomial(tuple((-c) % p for c in v))
            # left E_ab right: column a of left times row b of right
            row, e1 = left.perm[a], left.exps[a]
            for j, (i, e2) in enumerate(zip(right.perm, right.exps)):
                if i == b:
                    acc[row, j, (e1 + e2) % p] += 1
        if acc.any():
            return [[_ring_to_cyclotomic(acc[i, j], p) for j in range(n)] for i in range(n)]
    raise IntertwinerNotFound("averaging produced only zero matrices")


def _scalar_ratio(a, b) -> Cyclotomic:
    """c with a = c b for proportional nonzero matrices."""
    for ra, rb in zip(a, b):
        for x, y in zip(ra, rb):
            if not y.is_zero():
                return x / y
    raise IntertwinerNotFound("zero matrix")


def _scale(c, m):
    return [[c * x for x in row] for row in m]


def _mat_eq(a, b):
    return all(x == y for r, s in zip(a, b) for x, y in zip(r, s))


def _mat_power(m, k):
    out = mat_identity(len(m))
    for _ in range(k):
        out = mat_mul(out, m)
    return out


# Weil representation ------------------------------------------------------------

def _sp_mul(p):
    def mul(a, b):
        n = len(a)
        return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) % p for j in range(n)) for i in range(n))
    return mul


class WeilRep:
    """W(s) for s in Sp(V), with W(s) omega(v) W(s)^{-1} = omega(s v).

    Symplectic matrices act on symplectic coordinates (x, y).  Generators are
    L_B = [[I, 0], [B, I]] for elementary symmetric B and the coordinate swaps
    J_i: (x_i, y_i) -> (y_i, -x_i).  W(L_B) is scaled to fix delta_0 and W(J_i)
    so that (L_i J_i)^3 = J_i^2 holds for W as it does in Sp(V), L_i = L_{E_ii}.
    Every other W(s) is a product along a word, and the resulting map is
    checked to be multiplicative.
    """

    def __init__(self, heis: HeisenbergRep, enumerate_group: bool = True, max_order: int = 2000):
        self.heis = heis
        self.p = heis.p
        m = heis.m
        self.m = m
        d = 2 * m
        p = self.p
        self.mul = _sp_mul(p)
        ident = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
        self.identity = ident
        gens = []
        for i in range(m):
            for j in range(i, m):
                B = [[0] * m for _ in range(m)]
                B[i][j] = B[j][i] = 1
                gens.append(self._lower(B))
        self.swaps = [self._swap(i) for i in range(m)]
        gens += self.swaps
        self.generators = gens
        self.images = {ident: mat_identity(heis.degree)}
        for i, s in enumerate(gens):
            self.images[s] = self._normalized(s)
        self.group = None
        if enumerate_group and m:
            self.group = FiniteGroup.from_generators(gens, self.mul, ident, f"Sp{d}(F{p})", max_order=max_order)
            self._fill()

    def _lower(self, B):
        m = self.m
        rows = []
        for i in range(2 * m):
            row = []
            for j in range(2 * m):
                if i < m:
                    row.append(int(i == j))
                elif j < m:
                    row.append(B[i - m][j] % self.p)
                else:
                    row.append(int(i == j))
            rows.append(tuple(row))
        return tuple(rows)

    def _swap(self, i):
        m, p = self.m, self.p
        rows = [[int(a == b) for b in range(2 * m)] for a in range(2 * m)]
        rows[i][i] = 0
        rows[m + i][m + i] = 0
        rows[i][m + i] = 1
        rows[m + i][i] = p - 1
        return tuple(map(tuple, rows))

    def _action_on_vectors(self, s):
        """v -> s v in the original coordinates of V."""
        heis = self.heis
        coords, basis = heis.space.to_symplectic_coordinates()
        p = self.p

        def act(v):
            w = _matvec(coords, v, p)
            sw = _matvec(s, w, p)
            return _matvec(basis, sw, p)
        return act

    def _raw(self, s):
        return averaged_intertwiner(self.heis, self.heis, self._action_on_vectors(s))

    def _normalized(self, s):
        A = self._raw(s)
        if s in self.swaps:
            i = self.swaps.index(s)
            B = [[0] * self.m for _ in range(self.m)]
            B[i][i] = 1
            L = self._lower(B)
            WL = self.images.get(L) or self._normalized(L)
            lhs = _mat_power(mat_mul(WL, A), 3)
            rhs = mat_mul(A, A)
            # (W_L cA)^3 = (cA)^2  <=>  c = rhs / lhs
            return _scale(_scalar_ratio(rhs, lhs), A)
        return _scale(A[0][0].inverse(), A)

    def _fill(self):
        frontier = [self.identity]
        seen = {self.identity}
        while frontier:
            nxt = []
            for g in frontier:
                for s in self.generators:
                    h = self.mul(g, s)
                    if h not in seen:
                        seen.add(h)
                        if h in self.images:
                            nxt.append(h)
                            continue
                        self.images[h] = mat_mul(self.images[g], self.images[s])
                        nxt.append(h)
            frontier = nxt

    def __call__(self, s):
        s = tuple(tuple(x % self.p for x in row) for row in s)
        if s not in self.images:
            raise KeyError("element outside the enumerated group")
        return self.images[s]

    def intertwines(self, s, v) -> bool:
        act = self._action_on_vectors(s)
        W = self(s)
        lhs = mat_mul(W, self.heis(v))
        rhs = mat_mul(self.heis(act(v)), W)
        return _mat_eq(lhs, rhs)

    def is_multiplicative(self, pairs) -> bool:
        return all(_mat_eq(mat_mul(self(a), self(b)), self(self.mul(a, b))) for a, b in pairs)


def weil(heis: HeisenbergRep, enumerate_group: bool = True) -> WeilRep:
    return WeilRep(heis, enumerate_group)


def verify_weil(rep: WeilRep, pair_sample: int | None = None, seed: int = 0) -> dict:
    """Intertwining for every group element and multiplicativity on all (or sampled) pairs."""
    els = rep.group.elements
    vectors = rep.heis.space.vectors()
    rng = random.Random(seed)
    inter = all(rep.intertwines(s, v) for s in els for v in vectors)
    if pair_sample is None:
        pairs = [(a, b) for a in els for b in els]
    else:
        pairs = [(rng.choice(els), rng.choice(els)) for _ in range(pair_sample)]
    return {"elements": len(els), "pairs": len(pairs), "intertwining": inter,
            "multiplicative": rep.is_multiplicative(pairs)}


def lagrangian_uniqueness(space: SymplecticSpace, central_char: int = 1) -> bool:
    """Schroedinger models for two Lagrangians are intertwined by an invertible matrix."""
    first = HeisenbergRep(space, central_char)
    # second model: swap the roles of x and y (the symplectic basis f, -e)
    second = HeisenbergRep(space, central_char)
    coords = first.coords
    m = first.m
    p = space.p
    swapped = [list(coords[m + i]) for i in range(m)] + [[(-c) % p for c in coords[i]] for i in range(m)]
    second.coords = swapped
    A = averaged_intertwiner(first, second, lambda v: v)
    from .cyclotomic import mat_rank
    return mat_rank(A) == first.degree


# commutator forms ------------------------------------------------------------------

def _rank_mod(rows, p):
    a = [[x % p for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(a[0]) if a else 0
    while rank < len(a) and col < ncols:
        piv = next((i for i in range(rank, len(a)) if a[i][col]), None)
        if piv is None:
            col += 1
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], -1, p)
        for i in range(len(a)):
            if i != rank and a[i][col]:
                f = a[i][col] * inv
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
        col += 1
    return rank


def torus_lie_projection(torus, Z):
    """Component in Lie(S) of a matrix Z, along the sum of the nonzero weight spaces."""
    if not torus.is_elliptic:
        return tuple(Z[i][i] for i in range(torus.n))
    fd, fb = torus.field, torus.base
    half = Fraction(1, 2)
    a = (Z[0][0] + Z[1][1]) * half
    b = (Z[0][1] + Z[1][0] / fb(fd.delta)) * half
    return fd(a.coords[0], b.coords[0])


def extended_character(theta):
    """phi_hat on G_{x,r}: phi(X(projection of k - 1 to Lie(S))) for the dual X of theta."""
    torus = theta.torus
    if theta.dual is None:
        raise DegenerateForm("character carries no dual element")
    phi = AdditiveCharacter(torus.base)

    def phi_hat(k):
        Z = [[k[i][j] - (1 if i == j else 0) for j in range(len(k))] for i in range(len(k))]
        return phi(torus.pair(theta.dual, torus_lie_projection(torus, Z)))
    return phi_hat


def _cayley_matrix(Y, fd):
    """(1 + Y/2)(1 - Y/2)^{-1}: determinant one for traceless 2 x 2 Y."""
    n = len(Y)
    half = Fraction(1, 2)
    plus = [[(fd.one() if i == j else fd.zero()) + Y[i][j] * half for j in range(n)] for i in range(n)]
    minus = [[(fd.one() if i == j else fd.zero()) - Y[i][j] * half for j in range(n)] for i in range(n)]
    return local_mul(plus, local_inverse(minus))


def quotient_generators(x, s, torus):
    """Group elements of G_{x,s} whose classes form a basis of G_{x,s}/(G_{x,s+} S_s)."""
    fd = torus.base
    p = fd.p
    lattice = lie_quotient_basis(x, s, fd)
    if not lattice:
        return []
    torus_rows = []
    for Y in torus.lie_generators(s):
        m = torus.matrix(Y) if torus.is_elliptic else [
            [Y[i] if i == j else fd.zero() for j in range(torus.n)] for i in range(torus.n)]
        torus_rows.append(list(lie_key(m, x, s)))
    rows = list(torus_rows)
    chosen = []
    for Y in lattice:
        key = list(lie_key(Y, x, s))
        if _rank_mod(rows + [key], p) > _rank_mod(rows, p):
            rows.append(key)
            chosen.append(Y)
    return [_cayley_matrix(Y, fd) for Y in chosen]


def commutator_form(x, r, theta) -> SymplecticSpace:
    """The form <g, h> = phi_hat(g h g^-1 h^-1) on V = G_{x,r/2}/(G_{x,r/2+} S_{r/2}).

    ``theta`` is a torus character of depth r with an exact dual element;
    values are read in F_p through exp(2 pi i k / p) <-> k.
    """
    torus = theta.torus
    p = torus.p
    s = Fraction(r) / 2
    basis = quotient_generators(x, s, torus)
    phi_hat = extended_character(theta)
    d = len(basis)
    gram = [[0] * d for _ in range(d)]
    for i, g in enumerate(basis):
        for j, h in enumerate(basis):
            if i == j:
                continue
            comm = local_mul(local_mul(g, h), local_mul(local_inverse(g), local_inverse(h)))
            t = phi_hat(comm).t * p
            if t.denominator != 1:
                raise DegenerateForm("commutator pairing is not a p-th root of unity")
            gram[i][j] = int(t) % p
    return SymplecticSpace(p, tuple(map(tuple, gram)))
