"""Finite diagonal symmetry groups, written additively in (Q/Z)^m.

Elements are tuples of Fractions reduced into [0,1).  Groups carry their full
element set, which keeps duals and set comparisons trivially exact; orders in
the source data never exceed ~1200.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .poly import ExponentMatrix, WeightSystem

ORDER_CAP = 10 ** 6


class GroupError(ValueError):
    pass


class ElementNotInAmbient(GroupError):
    pass


class GroupNotInMax(GroupError):
    pass


class NotASubgroup(GroupError):
    pass


def residue(x) -> Fraction:
    f = Fraction(x)
    return f - (f.numerator // f.denominator)


def symmetry(values) -> tuple[Fraction, ...]:
    return tuple(residue(v) for v in values)


def parse_symmetry(text) -> tuple[Fraction, ...]:
    """Parse "1/2,1/4,1/8,1/8" into a reduced residue tuple."""
    return symmetry(Fraction(part.strip()) for part in text.split(","))


def format_symmetry(g) -> str:
    return ",".join(str(x) for x in g)


def _add(g, h):
    return tuple(residue(a + b) for a, b in zip(g, h))


def _neg(g):
    return tuple(residue(-a) for a in g)


def element_order(g) -> int:
    n = 1
    for a in g:
        n = linalg.lcm(n, a.denominator)
    return n


@dataclass(frozen=True)
class SymmetryGroup:
    m: int
    generators: tuple[tuple[Fraction, ...], ...]
    elements: frozenset = field(repr=False)

    @classmethod
    def generate(cls, m, generators, cap=ORDER_CAP):
        gens = tuple(symmetry(g) for g in generators)
        for g in gens:
            if len(g) != m:
                raise GroupError(f"generator {g} has length {len(g)} != {m}")
        zero = tuple(Fraction(0) for _ in range(m))
        elements = {zero}
        frontier = [zero]
        while frontier:
            cur = frontier.pop()
            for g in gens:
                nxt = _add(cur, g)
                if nxt not in elements:
                    if len(elements) >= cap:
                        raise GroupError(f"group order exceeds cap {cap}")
                    elements.add(nxt)
                    frontier.append(nxt)
        return cls(m, gens, frozenset(elements))

    @property
    def order(self):
        return len(self.elements)

    def __contains__(self, g):
        return symmetry(g) in self.elements

    def __le__(self, other):
        return self.m == other.m and self.elements <= other.elements

    def sorted_elements(self):
        return sorted(self.elements)


def trivial_group(m) -> SymmetryGroup:
    return SymmetryGroup.generate(m, [])


def max_group(a: ExponentMatrix) -> SymmetryGroup:
    """G_W^max, generated by the columns of A^-1; its order is |det A|."""
    inv = linalg.invert_fraction([list(r) for r in a.entries])
    cols = [tuple(inv[i][j] for i in range(a.size)) for j in range(a.size)]
    g = SymmetryGroup.generate(a.size, cols)
    assert g.order == abs(a.det)
    return g


def j_generator(w: WeightSystem) -> tuple[Fraction, ...]:
    return symmetry(Fraction(q, w.degree) for q in w.weights)


def j_group(w: WeightSystem) -> SymmetryGroup:
    return SymmetryGroup.generate(len(w.weights), [j_generator(w)])


def _small_generators(elems, m):
    """Greedy small generating set of a finite subgroup given by elements."""
    gens = []
    zero = tuple(Fraction(0) for _ in range(m))
    span = {zero}
    for e in sorted(elems, key=lambda x: (-element_order(x), x)):
        if e in span:
            continue
        gens.append(e)
        frontier = list(span)
        while frontier:
            cur = frontier.pop()
            nxt = _add(cur, e)
            while nxt not in span:
                span.add(nxt)
                frontier.append(nxt)
                nxt = _add(nxt, e)
        if len(span) == len(elems):
            break
    return tuple(gens)


def sl_subgroup(g: SymmetryGroup) -> SymmetryGroup:
    """Subgroup of elements whose entries add up to an integer."""
    elems = frozenset(e for e in g.elements if sum(e).denominator == 1)
    return SymmetryGroup(g.m, _small_generators(elems, g.m), elems)


def subgroup_generated(ambient: SymmetryGroup, gens) -> SymmetryGroup:
    gens = [symmetry(x) for x in gens]
    for x in gens:
        if x not in ambient.elements:
            raise ElementNotInAmbient(f"{format_symmetry(x)} not in ambient group")
    return SymmetryGroup.generate(ambient.m, gens)


def groups_equal(g: SymmetryGroup, h: SymmetryGroup) -> bool:
    return g.m == h.m and g.elements == h.elements


def permute_coordinates(g: SymmetryGroup, perm) -> SymmetryGroup:
    """Image under x_i -> x_perm[i]; perm must be a bijection of 0..m-1."""
    if sorted(perm) != list(range(g.m)):
        raise GroupError(f"{perm} is not a permutation of 0..{g.m - 1}")
    def apply(e):
        out = [None] * g.m
        for i, v in enumerate(e):
            out[perm[i]] = v
        return tuple(out)
    return SymmetryGroup(g.m, tuple(apply(x) for x in g.generators),
                         frozenset(apply(e) for e in g.elements))


def dual_group(g: SymmetryGroup, a: ExponentMatrix) -> SymmetryGroup:
    """All h in G_{W^T}^max with h·A·g^T integral for every g in G."""
    amax = max_group(a)
    if not g <= amax:
        raise GroupNotInMax("group is not inside the maximal symmetry group of A")
    tmax = max_group(a.transpose())
    rows = a.entries
    gens = g.generators if g.generators else tuple()
    out = []
    for cand in tmax.elements:
        ca = tuple(sum(cand[i] * rows[i][j] for i in range(a.size))
                   for j in range(a.size))
        if all(residue(sum(ca[j] * h[j] for j in range(a.size))) == 0
               for h in gens):
            out.append(cand)
    elems = frozenset(out)
    return SymmetryGroup(g.m, tuple(sorted(elems)), elems)


def _coset(rep, n: SymmetryGroup):
    return frozenset(_add(rep, x) for x in n.elements)


def quotient_cosets(g: SymmetryGroup, n: SymmetryGroup):
    """Cosets of N in G with a canonical (minimal) representative each."""
    if not n <= g:
        raise NotASubgroup("N is not a subgroup of G")
    seen = {}
    for e in sorted(g.elements):
        c = _coset(e, n)
        key = min(c)
        if key not in seen:
            seen[key] = c
    return seen  # min representative -> coset set


def quotient_invariants(g: SymmetryGroup, n: SymmetryGroup) -> tuple[int, ...]:
    """Invariant factors of G/N via the Smith form of a relation matrix."""
    cosets = quotient_cosets(g, n)
    order = len(cosets)
    if order == 1:
        return ()
    # greedy small generating set of the quotient, largest coset order first
    gens = []
    span = _close(gens, n, g.m)
    for e in sorted(cosets, key=lambda r: (-_coset_order(r, n), r)):
        if e in span:
            continue
        gens.append(e)
        span = _close(gens, n, g.m)
        if len(span) == order:
            break
    k = len(gens)
    orders = [_coset_order(x, n) for x in gens]
    # relation lattice: all integer vectors v (mod generator orders) with
    # sum v_i g_i in N, plus the order relations themselves
    rel = [[orders[i] if i == j else 0 for j in range(k)] for i in range(k)]
    for vec in _box(orders):
        total = tuple(Fraction(0) for _ in range(g.m))
        for c, x in zip(vec, gens):
            for _ in range(c):
                total = _add(total, x)
        if total in n.elements:
            rel.append(list(vec))
    divisors = linalg.elementary_divisors(rel)
    return tuple(d for d in sorted(divisors) if d > 1)


def _coset_order(rep, n: SymmetryGroup):
    acc = rep
    k = 1
    while acc not in n.elements:
        acc = _add(acc, rep)
        k += 1
    return k


def _close(gens, n, m):
    """Coset keys of the subgroup of G/N generated by gens (as G-elements)."""
    zero = tuple(Fraction(0) for _ in range(m))
    out = {min(_coset(zero, n))}
    frontier = [zero]
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = _add(cur, g)
            key = min(_coset(nxt, n))
            if key not in out:
                out.add(key)
                frontier.append(nxt)
    return out


def _box(orders):
    if not orders:
        yield ()
        return
    for head in range(orders[0]):
        for rest in _box(orders[1:]):
            yield (head,) + rest


def enumerate_intermediate(j: SymmetryGroup, sl: SymmetryGroup):
    """All G with J <= G <= SL, via subgroups of the finite quotient SL/J."""
    if not j <= sl:
        raise NotASubgroup("J is not a subgroup of SL")
    cosets = quotient_cosets(sl, j)
    keys = sorted(cosets)
    zero_key = min(_coset(tuple(Fraction(0) for _ in range(sl.m)), j))
    add_key = {}
    for a in keys:
        for b in keys:
            add_key[(a, b)] = min(_coset(_add(a, b), j))
    subgroups = {frozenset([zero_key])}
    frontier = [frozenset([zero_key])]
    while frontier:
        h = frontier.pop()
        for x in keys:
            if x in h:
                continue
            new = set(h)
            queue = [x]
            while queue:
                c = queue.pop()
                if c in new:
                    continue
                new.add(c)
                for d in list(new):
                    for s in (add_key[(c, d)], add_key[(d, c)]):
                        if s not in new:
                            queue.append(s)
            newf = frozenset(new)
            if newf not in subgroups:
                subgroups.add(newf)
                frontier.append(newf)
    out = []
    for sub in sorted(subgroups, key=lambda s: (len(s), sorted(s))):
        elems = frozenset(e for key in sub for e in cosets[key])
        out.append(SymmetryGroup(sl.m, tuple(sorted(elems)), elems))
    return out
