"""Finite groups, exact characters and matrix representations.

Character values live in Q(zeta_L), L the exponent of the ambient group, and
are stored as integer vectors of length L in the group ring Z[x]/(x^L - 1)
(with a common denominator).  Sums and conjugation are then plain numpy
operations; equality and inner products reduce modulo the cyclotomic
polynomial through ``Cyclotomic``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from itertools import combinations
from typing import Callable, Hashable

import numpy as np

from .cyclotomic import Cyclotomic, ONE, ZERO, mat_inverse, mat_mul
from .errors import NotASubgroup, NotIrreducible, UnsupportedGroup


# groups --------------------------------------------------------------------------

def _perm_mul(a, b):
    """(a*b)(i) = a(b(i)): apply b first."""
    return tuple(a[i] for i in b)


def _make_mat_mul(q: int):
    def mul(a, b):
        n = len(a)
        return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) % q for j in range(n)) for i in range(n))
    return mul


class FiniteGroup:
    """An explicitly enumerated finite group."""

    def __init__(self, elements, mul: Callable, name: str = "G", level: int | None = None,
                 generators=None):
        self.elements = list(elements)
        self.mul_elements = mul
        self.name = name
        self.index = {g: i for i, g in enumerate(self.elements)}
        self.generators = list(generators) if generators is not None else None
        self._level = level
        ident = [g for g in self.elements if all(mul(g, h) == h for h in self.elements[:3])]
        if len(self.index) != len(self.elements) or not ident:
            raise NotASubgroup("elements do not form a group")
        self.identity = ident[0]

    @classmethod
    def from_generators(cls, gens, mul, identity, name="G", max_order: int = 10_000) -> "FiniteGroup":
        seen = {identity}
        order = [identity]
        frontier = [identity]
        while frontier:
            nxt = []
            for g in frontier:
                for s in gens:
                    h = mul(g, s)
                    if h not in seen:
                        seen.add(h)
                        order.append(h)
                        nxt.append(h)
                        if len(seen) > max_order:
                            raise UnsupportedGroup(f"group exceeds the size bound {max_order}")
            frontier = nxt
        return cls(order, mul, name, generators=gens)

    @classmethod
    def symmetric(cls, n: int) -> "FiniteGroup":
        ident = tuple(range(n))
        gens = [tuple([1, 0] + list(range(2, n)))] if n > 1 else []
        if n > 2:
            gens.append(tuple(list(range(1, n)) + [0]))
        return cls.from_generators(gens, _perm_mul, ident, f"S{n}")

    @classmethod
    def sl2(cls, q: int) -> "FiniteGroup":
        _check_prime(q)
        ident = ((1, 0), (0, 1))
        gens = [((1, 1), (0, 1)), ((0, 1), (q - 1, 0))]
        return cls.from_generators(gens, _make_mat_mul(q), ident, f"SL2(F{q})")

    @classmethod
    def gl2(cls, q: int) -> "FiniteGroup":
        _check_prime(q)
        ident = ((1, 0), (0, 1))
        g = next(a for a in range(1, q) if all(pow(a, k, q) != 1 for k in range(1, q - 1))) if q > 2 else 1
        gens = [((1, 1), (0, 1)), ((0, 1), (1, 0)), ((g, 0), (0, 1))]
        return cls.from_generators(gens, _make_mat_mul(q), ident, f"GL2(F{q})")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order

    def __contains__(self, g):
        return g in self.index

    def mul(self, a, b):
        return self.mul_elements(a, b)

    @cached_property
    def _inverses(self) -> dict:
        out = {}
        for g in self.elements:
            if g in out:
                continue
            h = g
            prev = self.identity
            while h != self.identity:
                prev = h
                h = self.mul(h, g)
            out[g] = prev if g != self.identity else g
            out[prev] = g
        return out

    def inverse(self, g):
        return self._inverses[g]

    def conjugate(self, g, x):
        """x^{-1} g x."""
        return self.mul(self.mul(self.inverse(x), g), x)

    def element_order(self, g) -> int:
        k, h = 1, g
        while h != self.identity:
            h = self.mul(h, g)
            k += 1
        return k

    def power(self, g, k: int):
        out = self.identity
        for _ in range(k % self.element_order(g)):
            out = self.mul(out, g)
        return out

    @cached_property
    def exponent(self) -> int:
        return reduce(lambda a, b: a * b // math.gcd(a, b), (self.element_order(g) for g in self.elements), 1)

    @property
    def level(self) -> int:
        """Cyclotomic level used for character values."""
        return self._level or self.exponent

    def _gens(self):
        return self.generators if self.generators else self.elements

    @cached_property
    def classes(self) -> list[list]:
        gens = self._gens()
        seen, out = set(), []
        for g in self.elements:
            if g in seen:
                continue
            cls = {g}
            frontier = [g]
            while frontier:
                nxt = []
                for h in frontier:
                    for s in gens:
                        c = self.conjugate(h, s)
                        if c not in cls:
                            cls.add(c)
                            nxt.append(c)
                frontier = nxt
            seen |= cls
            out.append(sorted(cls, key=self.index.get))
        return out

    @cached_property
    def class_of(self) -> dict:
        return {g: k for k, cls in enumerate(self.classes) for g in cls}

    @property
    def class_sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def subgroup(self, elements_or_gens, name: str = "H", generated: bool = True) -> "FiniteGroup":
        if generated:
            sub = FiniteGroup.from_generators(list(elements_or_gens), self.mul, self.identity, name)
        else:
            sub = FiniteGroup(list(elements_or_gens), self.mul, name)
        if any(g not in self.index for g in sub.elements):
            raise NotASubgroup("elements outside the ambient group")
        sub._level = self.level
        return sub

    def is_subgroup(self, H: "FiniteGroup") -> bool:
        return all(g in self.index for g in H.elements)

    def all_subgroups(self) -> list["FiniteGroup"]:
        """Every subgroup generated by at most two elements (all of them for small groups)."""
        found = {}
        els = self.elements
        for a in els:
            for b in els:
                H = FiniteGroup.from_generators([a, b], self.mul, self.identity)
                key = frozenset(H.elements)
                if key not in found:
                    H._level = self.level
                    H.name = f"H{len(found)}"
                    found[key] = H
        return sorted(found.values(), key=lambda H: (H.order, sorted(self.index[g] for g in H.elements)))

    def left_cosets(self, H: "FiniteGroup") -> list:
        """Representatives t_i with G = disjoint union of t_i H."""
        if not self.is_subgroup(H):
            raise NotASubgroup(f"{H.name} is not a subgroup of {self.name}")
        seen, reps = set(), []
        for g in self.elements:
            if g in seen:
                continue
            reps.append(g)
            seen.update(self.mul(g, h) for h in H.elements)
        return reps

    def double_cosets(self, A: "FiniteGroup", B: "FiniteGroup") -> list:
        """Representatives s with G = disjoint union of A s B."""
        seen, reps = set(), []
        for g in self.elements:
            if g in seen:
                continue
            reps.append(g)
            for a in A.elements:
                ag = self.mul(a, g)
                seen.update(self.mul(ag, b) for b in B.elements)
        return reps


def _check_prime(q: int):
    if q < 2 or any(q % d == 0 for d in range(2, int(q ** 0.5) + 1)):
        raise UnsupportedGroup("only prime q are supported for finite matrix groups")


# class functions -------------------------------------------------------------------

def _ring_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros_like(b)
    for i in np.nonzero(a)[0]:
        out += a[i] * np.roll(b, i)
    return out


def _ring_conj(a: np.ndarray) -> np.ndarray:
    return np.roll(a[::-1], 1)


def _cyclotomic_to_ring(x: Cyclotomic, level: int) -> tuple[np.ndarray, int]:
    if level % x.n:
        raise ValueError("value lies outside the character field")
    step = level // x.n
    vec = np.zeros(level, dtype=object)
    for k, c in enumerate(x.num):
        vec[k * step] = c
    return vec, x.den


class ClassFunction:
    """A class function on a finite group with exact values in Q(zeta_L)."""

    def __init__(self, group: FiniteGroup, values, den: int = 1):
        self.group = group
        self.values = np.array(values, dtype=object).reshape(len(group.classes), group.level)
        self.den = den

    @classmethod
    def from_cyclotomic(cls, group: FiniteGroup, values) -> "ClassFunction":
        L = group.level
        vecs, dens = [], []
        for v in values:
            vec, d = _cyclotomic_to_ring(Cyclotomic.coerce(v), L)
            vecs.append(vec)
            dens.append(d)
        den = reduce(lambda a, b: a * b // math.gcd(a, b), dens, 1)
        rows = [vec * (den // d) for vec, d in zip(vecs, dens)]
        return cls(group, rows, den)

    @classmethod
    def trivial(cls, group: FiniteGroup) -> "ClassFunction":
        return cls.from_cyclotomic(group, [1] * len(group.classes))

    def vector(self, g) -> np.ndarray:
        return self.values[self.group.class_of[g]]

    def value(self, g) -> Cyclotomic:
        return Cyclotomic(self.group.level, list(self.vector(g)), self.den)

    def class_values(self) -> list[Cyclotomic]:
        return [Cyclotomic(self.group.level, list(v), self.den) for v in self.values]

    @property
    def degree(self) -> Cyclotomic:
        return self.value(self.group.identity)

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        den = self.den * other.den // math.gcd(self.den, other.den)
        return ClassFunction(self.group, self.values * (den // self.den) + other.values * (den // other.den), den)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        diff = self.values * other.den - other.values * self.den
        L = self.group.level
        return all(Cyclotomic(L, list(row)).is_zero() for row in diff)

    def __hash__(self):
        return hash(tuple(str(v) for v in self.class_values()))

    def inner(self, other: "ClassFunction") -> Fraction:
        """<self, other> = (1/|G|) sum_g self(g) * conj(other(g))."""
        G = self.group
        total = np.zeros(G.level, dtype=object)
        for k, size in enumerate(G.class_sizes):
            total += size * _ring_mul(self.values[k], _ring_conj(other.values[k]))
        value = Cyclotomic(G.level, list(total), self.den * other.den * G.order)
        if not value.is_rational():
            raise ValueError("inner product is not rational")
        return value.to_fraction()

    def conj(self) -> "ClassFunction":
        return ClassFunction(self.group, [_ring_conj(v) for v in self.values], self.den)

    def __mul__(self, other: "ClassFunction") -> "ClassFunction":
        return ClassFunction(self.group, [_ring_mul(a, b) for a, b in zip(self.values, other.values)],
                             self.den * other.den)

    def is_irreducible(self) -> bool:
        return self.inner(self) == 1

    def __repr__(self):
        return f"ClassFunction({self.group.name}: " + ", ".join(str(v) for v in self.class_values()) + ")"


def restrict(chi: ClassFunction, H: FiniteGroup) -> ClassFunction:
    rows = [chi.vector(cls[0]) for cls in H.classes]
    return ClassFunction(H, rows, chi.den)


def induce_character(chi: ClassFunction, G: FiniteGroup) -> ClassFunction:
    """Ind_H^G chi(g) = (1/|H|) sum_{x in G, x^-1 g x in H} chi(x^-1 g x)."""
    H = chi.group
    if not G.is_subgroup(H):
        raise NotASubgroup(f"{H.name} is not a subgroup of {G.name}")
    rows = []
    for cls in G.classes:
        g = cls[0]
        acc = np.zeros(G.level, dtype=object)
        for x in G.elements:
            c = G.conjugate(g, x)
            if c in H.index:
                acc = acc + chi.vector(c)
        rows.append(acc)
    return ClassFunction(G, rows, chi.den * H.order)


def conjugate_character(chi: ClassFunction, s, G: FiniteGroup, L: FiniteGroup) -> ClassFunction:
    """^s chi on L (L inside s H s^-1): h -> chi(s^-1 h s)."""
    rows = [chi.vector(G.conjugate(cls[0], s)) for cls in L.classes]
    return ClassFunction(L, rows, chi.den)


def intersection(G: FiniteGroup, A: FiniteGroup, B: FiniteGroup, name="A^B") -> FiniteGroup:
    els = [g for g in A.elements if g in B.index]
    return G.subgroup(els, name, generated=False)


def conjugate_subgroup(G: FiniteGroup, H: FiniteGroup, s, name="sHs^-1") -> FiniteGroup:
    """s H s^-1."""
    sinv = G.inverse(s)
    return G.subgroup([G.conjugate(h, sinv) for h in H.elements], name, generated=False)


# character tables ------------------------------------------------------------------

def _structure_matrices(G: FiniteGroup) -> list[np.ndarray]:
    classes = G.classes
    r = len(classes)
    cls_of = G.class_of
    mats = [np.zeros((r, r)) for _ in range(r)]
    for l, cl in enumerate(classes):
        z = cl[0]
        for x in G.elements:
            y = G.mul(G.inverse(x), z)
            mats[cls_of[x]][cls_of[y], l] += 1
    return mats


def character_table(G: FiniteGroup, seed: int = 1) -> list[ClassFunction]:
    """All irreducible characters, exact.

    Class-sum structure constants give commuting matrices whose common
    eigenvectors are the central characters; a random combination separates
    them numerically.  Each value chi(g) is then made exact from the
    multiplicities of the eigenvalues of rho(g), which are integers, and the
    result is certified by exact orthogonality.
    """
    classes = G.classes
    r = len(classes)
    sizes = np.array(G.class_sizes, dtype=float)
    mats = _structure_matrices(G)
    rng = np.random.default_rng(seed)
    A = sum(rng.normal() * m for m in mats)
    _, vecs = np.linalg.eig(A)
    id_class = G.class_of[G.identity]
    numeric = []
    for k in range(r):
        w = vecs[:, k] / vecs[id_class, k]
        deg = math.sqrt(G.order / float(np.sum(np.abs(w) ** 2 / sizes)))
        numeric.append(w * deg / sizes)
    L = G.level
    chars = []
    for vals in numeric:
        rows = []
        for cl in classes:
            g = cl[0]
            o = G.element_order(g)
            powers = [vals[G.class_of[G.power(g, j)]] for j in range(o)]
            row = np.zeros(L, dtype=object)
            for k in range(o):
                m = sum(powers[j] * np.exp(-2j * np.pi * j * k / o) for j in range(o)) / o
                mk = round(m.real)
                if abs(m - mk) > 1e-6:
                    raise ArithmeticError("eigenvalue multiplicity is not an integer")
                row[k * (L // o)] = mk
            rows.append(row)
        chars.append(ClassFunction(G, rows))
    chars.sort(key=lambda c: (c.degree.to_fraction(), [v.to_complex().real for v in c.class_values()][::-1]))
    for i, a in enumerate(chars):
        for j, b in enumerate(chars):
            if j < i:
                continue
            if a.inner(b) != (1 if i == j else 0):
                raise ArithmeticError("character table failed exact orthogonality")
    return chars


def decompose(chi: ClassFunction, table=None) -> list[Fraction]:
    table = table or character_table(chi.group)
    return [chi.inner(psi) for psi in table]


# matrix representations -------------------------------------------------------------

class MatrixRep:
    """A representation given by exact matrices over Q(zeta)."""

    def __init__(self, group: FiniteGroup, degree: int, fn: Callable, name: str = "rho"):
        self.group = group
        self.degree = degree
        self._fn = fn
        self._cache = {}
        self.name = name

    def __call__(self, g):
        if g not in self._cache:
            self._cache[g] = self._fn(g)
        return self._cache[g]

    @classmethod
    def from_linear_character(cls, chi: ClassFunction) -> "MatrixRep":
        if chi.degree != 1:
            raise NotIrreducible("a linear character needs degree 1")
        return cls(chi.group, 1, lambda g: [[chi.value(g)]], "linear")

    @classmethod
    def trivial(cls, G: FiniteGroup) -> "MatrixRep":
        return cls(G, 1, lambda g: [[ONE]], "trivial")

    def character(self) -> ClassFunction:
        vals = []
        for cls in self.group.classes:
            m = self(cls[0])
            acc = ZERO
            for i in range(self.degree):
                acc = acc + m[i][i]
            vals.append(acc)
        return ClassFunction.from_cyclotomic(self.group, vals)

    def is_homomorphism(self, elements=None) -> bool:
        G = self.group
        els = elements or (G.generators or G.elements)
        for a in els:
            for b in els:
                if not _mat_equal(mat_mul(self(a), self(b)), self(G.mul(a, b))):
                    return False
        return True

    def fixed_dimension(self, N: FiniteGroup) -> int:
        """dim of the N-fixed subspace via the projector (1/|N|) sum rho(n)."""
        d = self.degree
        acc = [[ZERO] * d for _ in range(d)]
        for n in N.elements:
            m = self(n)
            acc = [[x + y for x, y in zip(r, s)] for r, s in zip(acc, m)]
        from .cyclotomic import mat_rank
        return mat_rank(acc)


def _mat_equal(a, b) -> bool:
    return all(x == y for r, s in zip(a, b) for x, y in zip(r, s))


def induce(rho: MatrixRep, G: FiniteGroup) -> MatrixRep:
    """Ind_H^G rho in the coset model: blocks rho(t_i^-1 g t_j) when that lies in H."""
    H = rho.group
    reps = G.left_cosets(H)
    d = rho.degree
    m = len(reps)
    inv = [G.inverse(t) for t in reps]

    def fn(g):
        out = [[ZERO] * (m * d) for _ in range(m * d)]
        for j, t in enumerate(reps):
            gt = G.mul(g, t)
            for i in range(m):
                h = G.mul(inv[i], gt)
                if h in H.index:
                    block = rho(h)
                    for a in range(d):
                        for b in range(d):
                            out[i * d + a][j * d + b] = block[a][b]
                    break
        return out

    return MatrixRep(G, m * d, fn, f"Ind({rho.name})")


def irreducible_matrices(chi: ClassFunction) -> MatrixRep:
    """Matrices affording an irreducible character chi.

    Find a cyclic subgroup H = <h> and a linear character lambda of H occurring
    once in Res_H chi; then chi occurs once in Ind_H^G lambda and the image of
    the chi-isotypic projector on that monomial representation affords chi.
    """
    G = chi.group
    if chi.inner(chi) != 1:
        raise NotIrreducible("character is not irreducible")
    deg = int(chi.degree.to_fraction())
    if deg == 1:
        return MatrixRep.from_linear_character(chi)
    L = G.level
    best = None
    for cls in G.classes:
        h = cls[0]
        o = G.element_order(h)
        powers = [G.power(h, j) for j in range(o)]
        for k in range(o):
            m = sum((chi.value(powers[j]) * Cyclotomic.zeta(o, -j * k) for j in range(o)), ZERO) / o
            if m == ONE and (best is None or o > best[1]):
                best = (h, o, k, powers)
    if best is None:
        raise UnsupportedGroup("no multiplicity-one cyclic restriction found")
    h, o, k, powers = best
    H = G.subgroup([h], "C")
    log = {p: j for j, p in enumerate(powers)}
    reps = G.left_cosets(H)
    inv = [G.inverse(t) for t in reps]
    m = len(reps)
    step = L // o

    def monomial(g):
        """(permutation, root exponent at level L) describing Ind(g)."""
        perm, shift = [0] * m, [0] * m
        for j, t in enumerate(reps):
            gt = G.mul(g, t)
            for i in range(m):
                x = G.mul(inv[i], gt)
                if x in log:
                    perm[j], shift[j] = i, (log[x] * k * step) % L
                    break
        return perm, shift

    proj = np.zeros((m, m, L), dtype=object)
    for g in G.elements:
        c = _ring_conj(chi.vector(g))
        perm, shift = monomial(g)
        for j in range(m):
            proj[perm[j], j] += np.roll(c, shift[j])
    scale = Fraction(deg, G.order * chi.den)
    P = [[Cyclotomic(L, list(proj[i, j])) * scale for j in range(m)] for i in range(m)]
    numeric = np.array([[x.to_complex() for x in row] for row in P])
    cols, rows = _independent(numeric, deg)
    B = [[P[i][j] for j in cols] for i in range(m)]
    pivot_inv = mat_inverse([B[i] for i in rows])

    def fn(g):
        perm, shift = monomial(g)
        image = [[ZERO] * deg for _ in range(m)]
        for j in range(m):
            z = Cyclotomic.zeta(L, shift[j])
            for c in range(deg):
                image[perm[j]][c] = B[j][c] * z
        return mat_mul(pivot_inv, [image[i] for i in rows])

    return MatrixRep(G, deg, fn, f"irr{deg}")


def _independent(mat: np.ndarray, d: int):
    """Columns spanning a d-dimensional column space and rows making them invertible."""
    cols = []
    for j in range(mat.shape[1]):
        trial = cols + [j]
        if np.linalg.matrix_rank(mat[:, trial], tol=1e-8) == len(trial):
            cols = trial
            if len(cols) == d:
                break
    sub = mat[:, cols]
    rows = []
    for i in range(mat.shape[0]):
        trial = rows + [i]
        if np.linalg.matrix_rank(sub[trial, :], tol=1e-8) == len(trial):
            rows = trial
            if len(rows) == d:
                break
    return cols, rows


# lemma checks -----------------------------------------------------------------

def mackey_check(G: FiniteGroup, K: FiniteGroup, K2: FiniteGroup, chi: ClassFunction) -> bool:
    """Res_{K2} Ind_K^G chi = sum over s in K2\\G/K of Ind_{K2 cap sKs^-1}^{K2} (^s chi)."""
    lhs = restrict(induce_character(chi, G), K2)
    rhs = None
    for s in G.double_cosets(K2, K):
        conj = conjugate_subgroup(G, K, s)
        L = intersection(G, K2, conj)
        piece = induce_character(conjugate_character(chi, s, G, L), K2)
        rhs = piece if rhs is None else rhs + piece
    return lhs == rhs


def intertwining_criterion(G: FiniteGroup, K: FiniteGroup, chi: ClassFunction) -> bool:
    """True iff no s outside K intertwines chi, i.e. Hom_{sKs^-1 cap K}(^s chi, chi) = 0."""
    if chi.inner(chi) != 1:
        raise NotIrreducible("the representation of K must be irreducible")
    for s in G.double_cosets(K, K):
        if s in K.index:
            continue
        L = intersection(G, conjugate_subgroup(G, K, s), K)
        if conjugate_character(chi, s, G, L).inner(restrict(chi, L)) != 0:
            return False
    return True


def induced_norm(G: FiniteGroup, chi: ClassFunction) -> Fraction:
    ind = induce_character(chi, G)
    return ind.inner(ind)


def unipotent_radical(G: FiniteGroup) -> FiniteGroup:
    """Upper unitriangular matrices of SL_2(F_q) or GL_2(F_q)."""
    _field_size(G)
    return G.subgroup([((1, 1), (0, 1))], "N")


def _field_size(G: FiniteGroup) -> int:
    if not G.name.startswith(("SL2(F", "GL2(F")):
        raise UnsupportedGroup("cuspidality is implemented for SL2(F_q) and GL2(F_q)")
    return int(G.name[5:-1])


def fixed_dimension(chi: ClassFunction, N: FiniteGroup) -> Fraction:
    return restrict(chi, N).inner(ClassFunction.trivial(N))


def is_cuspidal(rep) -> bool:
    """No nonzero vectors fixed by the unipotent radical of the Borel subgroup."""
    chi = rep.character() if isinstance(rep, MatrixRep) else rep
    q = _field_size(chi.group)
    if q not in (2, 3, 5, 7):
        raise UnsupportedGroup("q must be one of 2, 3, 5, 7")
    return fixed_dimension(chi, unipotent_radical(chi.group)) == 0


def frobenius_reciprocity(chi_H: ClassFunction, psi: ClassFunction) -> bool:
    """<Ind chi_H, psi>_G = <chi_H, Res psi>_H."""
    return induce_character(chi_H, psi.group).inner(psi) == chi_H.inner(restrict(psi, chi_H.group))


def character_table_tsv(G: FiniteGroup, table=None) -> str:
    table = table or character_table(G)
    head = ["chi"] + [f"class{k}(size={len(c)},order={G.element_order(c[0])})" for k, c in enumerate(G.classes)]
    lines = ["\t".join(head)]
    for i, chi in enumerate(table):
        lines.append("\t".join([f"chi{i}"] + [str(v) for v in chi.class_values()]))
    return "\n".join(lines)
