"""Integral lattices via Gram matrices: named constructions, discriminant
groups and forms, saturation, overlattices, and the LPK3 mirror test."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .quadform import (FiniteAbelianGroup, FiniteQuadraticForm, _mod1, _mod2,
                       is_isomorphic, isotropic_subgroups, negate)


class LatticeError(ValueError):
    pass


class DegenerateGram(LatticeError):
    pass


class OddLattice(LatticeError):
    pass


class UnknownName(LatticeError):
    pass


class BadParameters(LatticeError):
    pass


@dataclass(frozen=True)
class Signature:
    pos: int
    neg: int

    @property
    def rank(self):
        return self.pos + self.neg


@dataclass(frozen=True)
class GramLattice:
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.gram)
        for row in self.gram:
            if len(row) != n:
                raise LatticeError("Gram matrix must be square")
        for i in range(n):
            for j in range(n):
                if self.gram[i][j] != self.gram[j][i]:
                    raise LatticeError("Gram matrix must be symmetric")

    @property
    def rank(self):
        return len(self.gram)

    @property
    def det(self):
        if not self.gram:
            return 1
        return linalg.det_int([list(r) for r in self.gram])

    @property
    def is_even(self):
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))


EMPTY_LATTICE = GramLattice(())


def from_rows(rows) -> GramLattice:
    return GramLattice(tuple(tuple(int(x) for x in row) for row in rows))


def _tshape_gram(legs):
    """Gram of the tree with one central node and legs of the given lengths
    (lengths count nodes beyond the center); all nodes have self-value -2."""
    n = 1 + sum(legs)
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = -2
    idx = 1
    for leg in legs:
        prev = 0
        for _ in range(leg):
            g[prev][idx] = g[idx][prev] = 1
            prev = idx
            idx += 1
    return from_rows(g)


def named_lattice(name: str) -> GramLattice:
    """U, A_l, D_m (m>=4), E_6..E_8, T_{p,q,r}, <n>."""
    name = name.strip().replace("⟨", "<").replace("⟩", ">")
    if name == "U":
        return from_rows([[0, 1], [1, 0]])
    m = re.fullmatch(r"A_\{?(\d+)\}?", name)
    if m:
        l = int(m.group(1))
        if l < 1:
            raise BadParameters(name)
        return _tshape_gram([l - 1]) if l > 1 else from_rows([[-2]])
    m = re.fullmatch(r"D_\{?(\d+)\}?", name)
    if m:
        d = int(m.group(1))
        if d < 4:
            raise BadParameters(f"{name}: D_m needs m >= 4")
        return _tshape_gram([d - 3, 1, 1])
    m = re.fullmatch(r"E_\{?([678])\}?", name)
    if m:
        e = int(m.group(1))
        return _tshape_gram([e - 4, 2, 1])
    m = re.fullmatch(r"T_\{?(\d+),(\d+),(\d+)\}?", name)
    if m:
        p, q, r = (int(x) for x in m.groups())
        if min(p, q, r) < 2:
            raise BadParameters(f"{name}: legs must be >= 2")
        return _tshape_gram([p - 1, q - 1, r - 1])
    m = re.fullmatch(r"<(-?\d+)>", name)
    if m:
        n = int(m.group(1))
        if n == 0:
            raise BadParameters("<0> is degenerate")
        return from_rows([[n]])
    raise UnknownName(name)


def rescale(l: GramLattice, n: int) -> GramLattice:
    if n == 0:
        raise LatticeError("rescale by 0")
    return from_rows([[n * x for x in row] for row in l.gram])


def direct_sum_lattice(l1: GramLattice, l2: GramLattice) -> GramLattice:
    n1, n2 = l1.rank, l2.rank
    g = [[0] * (n1 + n2) for _ in range(n1 + n2)]
    for i in range(n1):
        for j in range(n1):
            g[i][j] = l1.gram[i][j]
    for i in range(n2):
        for j in range(n2):
            g[n1 + i][n1 + j] = l2.gram[i][j]
    return from_rows(g)


def direct_sum_all(lattices) -> GramLattice:
    out = EMPTY_LATTICE
    for l in lattices:
        out = direct_sum_lattice(out, l)
    return out


def signature(l: GramLattice) -> Signature:
    pos, neg, zero = linalg.inertia([list(r) for r in l.gram])
    if zero:
        raise DegenerateGram("Gram matrix is degenerate")
    return Signature(pos, neg)


def discriminant_group(l: GramLattice):
    """Invariant factors of A_L = L*/L with rational generator lifts.

    Returns (group, lifts); lift i is a vector in L* expressed in the basis
    of L (rational coordinates)."""
    if l.rank == 0:
        return FiniteAbelianGroup(()), []
    if l.det == 0:
        raise DegenerateGram("Gram matrix is degenerate")
    g = [list(r) for r in l.gram]
    d, u, v = linalg.snf(g)
    lifts = []
    factors = []
    for i in range(l.rank):
        di = d[i][i]
        if di > 1:
            factors.append(di)
            lifts.append(tuple(Fraction(v[r][i], di) for r in range(l.rank)))
    return FiniteAbelianGroup(tuple(factors)), lifts


def discriminant_form(l: GramLattice) -> FiniteQuadraticForm:
    if not l.is_even:
        raise OddLattice("discriminant quadratic form needs an even lattice")
    group, lifts = discriminant_group(l)
    gram = l.gram

    def pair(x, y):
        return sum(x[i] * gram[i][j] * y[j]
                   for i in range(l.rank) for j in range(l.rank))

    q = tuple(_mod2(pair(x, x)) for x in lifts)
    b = tuple(tuple(_mod1(pair(x, y)) for y in lifts) for x in lifts)
    return FiniteQuadraticForm(group, q, b)


@dataclass(frozen=True)
class AmbientSublattice:
    ambient: GramLattice
    basis: tuple[tuple[int, ...], ...]  # rows, coordinates in the ambient

    def __post_init__(self):
        for row in self.basis:
            if len(row) != self.ambient.rank:
                raise LatticeError("basis vector length mismatch")
        if linalg.rank_fraction([list(r) for r in self.basis]) != len(self.basis):
            raise LatticeError("basis vectors must be linearly independent")

    @property
    def rank(self):
        return len(self.basis)

    def gram(self) -> GramLattice:
        amb = self.ambient.gram
        n = self.ambient.rank
        rows = []
        for x in self.basis:
            rows.append(tuple(
                sum(x[i] * amb[i][j] * y[j] for i in range(n) for j in range(n))
                for y in self.basis))
        return from_rows(rows)


def saturation(s: AmbientSublattice) -> AmbientSublattice:
    """Rational-span closure of the sublattice inside the ambient."""
    b = [list(r) for r in s.basis]
    _d, _u, v = linalg.snf(b)
    vinv = linalg.invert_fraction(v)
    rows = []
    for i in range(len(b)):
        row = [vinv[i][j] for j in range(len(vinv[0]))]
        assert all(x.denominator == 1 for x in row)
        rows.append(tuple(x.numerator for x in row))
    return AmbientSublattice(s.ambient, tuple(rows))


def is_primitive(s: AmbientSublattice) -> bool:
    return all(d == 1
               for d in linalg.elementary_divisors([list(r) for r in s.basis]))


def chain_primitivity(inner: AmbientSublattice, outer: AmbientSublattice) -> bool:
    """Primitivity of inner inside outer via the two-sided criterion: when
    inner and outer are both primitive in the common ambient and inner's span
    lies inside outer's, the inclusion inner -> outer is primitive."""
    if inner.ambient != outer.ambient:
        raise LatticeError("sublattices live in different ambients")
    # inner must lie in outer's rational span, with integer coordinates
    coords = _coordinates_in(outer, inner.basis)
    if coords is None:
        raise LatticeError("inner is not a sublattice of outer's span")
    return is_primitive(inner) and is_primitive(outer)


def _coordinates_in(outer: AmbientSublattice, vectors):
    """Integer coordinates of the given ambient vectors in outer's basis."""
    bt = linalg.transpose([list(r) for r in outer.basis])
    out = []
    for vec in vectors:
        try:
            sol = _solve_rectangular(bt, list(vec))
        except LatticeError:
            return None
        if sol is None or any(x.denominator != 1 for x in sol):
            return None
        out.append(tuple(x.numerator for x in sol))
    return out


def _solve_rectangular(a, b):
    """Solve a·x = b exactly for rectangular a with full column rank."""
    rows, cols = len(a), len(a[0])
    aug = [[Fraction(a[i][j]) for j in range(cols)] + [Fraction(b[i])]
           for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if r < cols:
        raise LatticeError("outer basis is rank deficient")
    for i in range(r, rows):
        if aug[i][cols] != 0:
            return None
    sol = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        sol[c] = aug[i][cols]
    return sol


def overlattices(l: GramLattice):
    """All even overlattices, one per isotropic subgroup of (A_L, q_L);
    the trivial subgroup yields L itself."""
    q = discriminant_form(l)
    _group, lifts = discriminant_group(l)
    n = l.rank
    out = []
    for h in isotropic_subgroups(q):
        # rows: identity (L) plus rational lifts of the subgroup generators
        rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for gen in h.generators:
            rows.append([sum(Fraction(c) * lifts[t][j]
                             for t, c in enumerate(gen))
                         for j in range(n)])
        denom = 1
        for row in rows:
            for x in row:
                denom = linalg.lcm(denom, x.denominator)
        int_rows = [[int(x * denom) for x in row] for row in rows]
        basis = linalg.hermite_row_basis(int_rows)
        basis_q = [[Fraction(x, denom) for x in row] for row in basis]
        gram_rows = []
        for x in basis_q:
            gram_rows.append([
                sum(x[i] * l.gram[i][j] * y[j]
                    for i in range(n) for j in range(n))
                for y in basis_q])
        assert all(v.denominator == 1 for row in gram_rows for v in row)
        m = from_rows([[v.numerator for v in row] for row in gram_rows])
        assert m.is_even, "isotropy must produce an even overlattice"
        assert abs(m.det) * h.order ** 2 == abs(l.det)
        out.append(m)
    return out


def mirror_check(rank_m: int, q_m: FiniteQuadraticForm,
                 rank_n: int, q_n: FiniteQuadraticForm) -> bool:
    """LPK3 mirror condition on invariants: ranks sum to 20 and q_M = -q_N."""
    return rank_m + rank_n == 20 and is_isomorphic(q_m, negate(q_n))


def nikulin_unique(sig: Signature, q: FiniteQuadraticForm) -> bool:
    """Existence+uniqueness criterion for an even lattice with the given
    signature and discriminant form."""
    from .quadform import gauss_signature
    if sig.pos < 1 or sig.neg < 1:
        return False
    if (sig.pos - sig.neg) % 8 != gauss_signature(q):
        return False
    return sig.rank >= 2 + q.group.ngens
