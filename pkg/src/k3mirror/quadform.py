"""Finite quadratic forms q: A -> Q/2Z on finite abelian groups.

Values are exact Fractions (q mod 2Z, the bilinear form b mod Z); nothing here
touches floating point.  The Gauss-Milgram signature is evaluated in the group
ring of roots of unity and compared against the eight candidates exactly.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import linalg


class FormError(ValueError):
    pass


class InadmissibleSymbol(FormError):
    pass


class DegenerateForm(FormError):
    pass


class SearchBudgetExceeded(FormError):
    pass


def _mod1(x) -> Fraction:
    f = Fraction(x)
    return f - (f.numerator // f.denominator)


def _mod2(x) -> Fraction:
    f = Fraction(x)
    return f - 2 * (f.numerator // (2 * f.denominator))


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z/d_1 x ... x Z/d_r with d_1 | d_2 | ... | d_r, all d_i >= 2."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        for i, d in enumerate(self.invariant_factors):
            if d < 2:
                raise FormError("invariant factors must be >= 2")
            if i and d % self.invariant_factors[i - 1]:
                raise FormError(
                    f"not a divisibility chain: {self.invariant_factors}")

    @property
    def order(self):
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    @property
    def ngens(self):
        return len(self.invariant_factors)

    def elements(self):
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def element_order(self, e):
        n = 1
        for x, d in zip(e, self.invariant_factors):
            n = linalg.lcm(n, d // gcd(x, d))
        return n

    def add(self, a, b):
        return tuple((x + y) % d
                     for x, y, d in zip(a, b, self.invariant_factors))

    def scale(self, k, a):
        return tuple((k * x) % d for x, d in zip(a, self.invariant_factors))


@dataclass(frozen=True)
class FiniteQuadraticForm:
    group: FiniteAbelianGroup
    q_gens: tuple[Fraction, ...]           # q(e_i) mod 2Z
    b_matrix: tuple[tuple[Fraction, ...], ...]  # b(e_i, e_j) mod Z

    def __post_init__(self):
        r = self.group.ngens
        if len(self.q_gens) != r or len(self.b_matrix) != r:
            raise FormError("generator data does not match the group")
        for i in range(r):
            if self.b_matrix[i][i] != _mod1(self.q_gens[i]):
                raise FormError("b(e_i,e_i) must equal q(e_i) mod Z")
            for j in range(r):
                if self.b_matrix[i][j] != self.b_matrix[j][i]:
                    raise FormError("b must be symmetric")
        d = self.group.invariant_factors
        for i in range(r):
            if _mod2(d[i] * d[i] * self.q_gens[i]) != 0:
                raise FormError(f"q(e_{i}) incompatible with order {d[i]}")
            for j in range(r):
                if _mod1(d[i] * self.b_matrix[i][j]) != 0:
                    raise FormError("b incompatible with generator orders")

    def q(self, e) -> Fraction:
        total = Fraction(0)
        r = self.group.ngens
        for i in range(r):
            total += e[i] * e[i] * self.q_gens[i]
            for j in range(i + 1, r):
                total += 2 * e[i] * e[j] * self.b_matrix[i][j]
        return _mod2(total)

    def b(self, e, f) -> Fraction:
        total = Fraction(0)
        r = self.group.ngens
        for i in range(r):
            for j in range(r):
                total += e[i] * f[j] * self.b_matrix[i][j]
        return _mod1(total)

    @property
    def order(self):
        return self.group.order

    def values_multiset(self):
        return sorted(self.q(e) for e in self.group.elements())

    def is_nondegenerate(self):
        gens = [tuple(1 if j == i else 0 for j in range(self.group.ngens))
                for i in range(self.group.ngens)]
        for e in self.group.elements():
            if any(e) and all(self.b(e, g) == 0 for g in gens):
                return False
        return True


TRIVIAL_FORM = FiniteQuadraticForm(FiniteAbelianGroup(()), (), ())


def form_on_cyclic_orders(orders, q_gens, b_matrix) -> FiniteQuadraticForm:
    """Build a form on Z/c_1 x ... x Z/c_k, renormalizing the presentation to
    invariant factors via the Smith form of diag(c)."""
    orders = [int(c) for c in orders]
    k = len(orders)
    if k == 0:
        return TRIVIAL_FORM
    diag = [[orders[i] if i == j else 0 for j in range(k)] for i in range(k)]
    d, u, _v = linalg.snf(diag)
    uinv = [[x.numerator for x in row]
            for row in linalg.invert_fraction(u)]
    # new generator j is the class of column j of u^-1
    new_orders = [d[i][i] for i in range(k)]
    keep = [i for i in range(k) if new_orders[i] > 1]
    q_new, b_new = [], []
    cols = [[uinv[i][j] for i in range(k)] for j in range(k)]
    def q_of(vec):
        total = Fraction(0)
        for i in range(k):
            total += vec[i] * vec[i] * Fraction(q_gens[i])
            for j in range(i + 1, k):
                total += 2 * vec[i] * vec[j] * Fraction(b_matrix[i][j])
        return _mod2(total)
    def b_of(v, w):
        total = Fraction(0)
        for i in range(k):
            for j in range(k):
                total += v[i] * w[j] * Fraction(b_matrix[i][j])
        return _mod1(total)
    for j in keep:
        q_new.append(q_of(cols[j]))
    for a in keep:
        b_new.append(tuple(b_of(cols[a], cols[bb]) for bb in keep))
    group = FiniteAbelianGroup(tuple(new_orders[i] for i in keep))
    return FiniteQuadraticForm(group, tuple(q_new), tuple(b_new))


def generator_form(symbol: str) -> FiniteQuadraticForm:
    """The standard generators: w_{p,k}^e on Z/p^k, u_k and v_k on (Z/2^k)^2."""
    symbol = symbol.strip()
    m = re.fullmatch(r"([uv])(?:_\{?(\d+)\}?)?", symbol)
    if m:
        k = int(m.group(2) or 1)
        if k < 1:
            raise InadmissibleSymbol(symbol)
        n = 2 ** k
        half = Fraction(1, n)
        if m.group(1) == "u":
            q = (Fraction(0), Fraction(0))
            b01 = half
        else:
            q = (_mod2(2 * half), _mod2(2 * half))
            b01 = half
        b = ((_mod1(q[0]), b01), (b01, _mod1(q[1])))
        return FiniteQuadraticForm(FiniteAbelianGroup((n, n)), q, b)
    m = re.fullmatch(r"w_\{?(\d+),(\d+)\}?\^\{?(-?\d+)\}?", symbol)
    if not m:
        raise InadmissibleSymbol(f"cannot parse form symbol {symbol!r}")
    p, k, eps = int(m.group(1)), int(m.group(2)), int(m.group(3))
    return w_form(p, k, eps)


def _is_prime(p):
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def _legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def w_form(p: int, k: int, eps: int) -> FiniteQuadraticForm:
    if not _is_prime(p) or k < 1:
        raise InadmissibleSymbol(f"w_{{{p},{k}}}^{eps}")
    n = p ** k
    if p == 2:
        if eps not in (1, -1, 5, -5):
            raise InadmissibleSymbol(
                f"w_{{2,{k}}}^{eps}: epsilon must be in {{1,-1,5,-5}}")
        q1 = _mod2(Fraction(eps, n))
    else:
        if eps not in (1, -1):
            raise InadmissibleSymbol(
                f"w_{{{p},{k}}}^{eps}: epsilon must be +-1 for odd p")
        # the smallest even a > 0 whose Legendre symbol mod p equals epsilon
        a = 2
        while _legendre(a, p) != eps:
            a += 2
        q1 = _mod2(Fraction(a, n))
    b = ((_mod1(q1),),)
    return FiniteQuadraticForm(FiniteAbelianGroup((n,)), (q1,), b)


def direct_sum(q1: FiniteQuadraticForm, q2: FiniteQuadraticForm):
    orders = q1.group.invariant_factors + q2.group.invariant_factors
    r1 = q1.group.ngens
    r = len(orders)
    qg = list(q1.q_gens) + list(q2.q_gens)
    b = [[Fraction(0)] * r for _ in range(r)]
    for i in range(r1):
        for j in range(r1):
            b[i][j] = q1.b_matrix[i][j]
    for i in range(r - r1):
        for j in range(r - r1):
            b[r1 + i][r1 + j] = q2.b_matrix[i][j]
    return form_on_cyclic_orders(orders, qg, b)


def direct_sum_all(forms):
    out = TRIVIAL_FORM
    for f in forms:
        out = direct_sum(out, f)
    return out


def negate(q: FiniteQuadraticForm) -> FiniteQuadraticForm:
    return FiniteQuadraticForm(
        q.group,
        tuple(_mod2(-x) for x in q.q_gens),
        tuple(tuple(_mod1(-x) for x in row) for row in q.b_matrix))


# --- form expressions ------------------------------------------------------

def parse_form_expression(text: str) -> FiniteQuadraticForm:
    """Grammar: '+'-separated terms; term = atom or atom^m or (atom)^m,
    atom in {trivial, u, v, u_k, v_k, w_{p,k}^e}."""
    total = TRIVIAL_FORM
    for raw in text.split("+"):
        term = raw.strip()
        if not term:
            raise FormError(f"empty term in {text!r}")
        mult = 1
        m = re.fullmatch(r"\((.+)\)\s*\^\s*\{?(\d+)\}?", term)
        if m:
            term, mult = m.group(1).strip(), int(m.group(2))
        elif (m := re.fullmatch(r"([uv](?:_\{?\d+\}?)?)\s*\^\s*\{?(\d+)\}?",
                                term)):
            term, mult = m.group(1), int(m.group(2))
        if term == "trivial":
            part = TRIVIAL_FORM
        else:
            part = generator_form(term)
        for _ in range(mult):
            total = direct_sum(total, part)
    return total


# --- Gauss-Milgram signature ----------------------------------------------

def _cyclotomic_poly(n, _cache={}):
    if n in _cache:
        return _cache[n]
    # x^n - 1 divided by the product of Phi_d for proper divisors d
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _polydiv_exact(poly, _cyclotomic_poly(d))
    _cache[n] = poly
    return poly


def _polydiv_exact(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        assert c % den[-1] == 0
        q = c // den[-1]
        out[i] = q
        if q:
            for j, dj in enumerate(den):
                num[i + j] -= q * dj
    assert not any(num)
    return out


class _RootSum:
    """Integer combination of M-th roots of unity, exponents mod M."""

    def __init__(self, m, counts=None):
        self.m = m
        self.counts = [0] * m
        if counts:
            for e, c in counts.items():
                self.counts[e % m] += c

    @classmethod
    def root(cls, m, e, c=1):
        return cls(m, {e: c})

    def __mul__(self, other):
        out = _RootSum(self.m)
        for e1, c1 in enumerate(self.counts):
            if not c1:
                continue
            for e2, c2 in enumerate(other.counts):
                if c2:
                    out.counts[(e1 + e2) % self.m] += c1 * c2
        return out

    def __sub__(self, other):
        out = _RootSum(self.m)
        out.counts = [a - b for a, b in zip(self.counts, other.counts)]
        return out

    def scaled(self, k):
        out = _RootSum(self.m)
        out.counts = [k * c for c in self.counts]
        return out

    def is_zero(self):
        # zero iff the exponent polynomial is divisible by Phi_M
        phi = _cyclotomic_poly(self.m)
        rem = list(self.counts)
        for i in range(len(rem) - len(phi), -1, -1):
            c = rem[i + len(phi) - 1]
            if c:
                for j, pj in enumerate(phi):
                    rem[i + j] -= c * pj
        return not any(rem)


def _sqrt_as_root_sum(n, m):
    """sqrt(n) as an element of Z[zeta_m]; m must be chosen admissibly."""
    out = _RootSum.root(m, 0, 1)
    f = 1
    rest = n
    p = 2
    while p * p <= rest:
        while rest % (p * p) == 0:
            f *= p
            rest //= p * p
        p += 1
    # rest is squarefree now
    for p in _prime_factors(rest):
        if p == 2:
            assert m % 8 == 0
            g = _RootSum(m, {m // 8: 1, m - m // 8: 1})  # zeta_8 + zeta_8^-1
        else:
            assert m % p == 0
            g = _RootSum(m)
            for t in range(1, p):
                g.counts[(t * (m // p)) % m] += _legendre(t, p)
            if p % 4 == 3:
                # the quadratic Gauss sum equals i*sqrt(p); divide by i
                assert m % 4 == 0
                g = g * _RootSum.root(m, m - m // 4)
        out = out * g
    return out.scaled(f)


def _prime_factors(n):
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def gauss_signature(q: FiniteQuadraticForm) -> int:
    """The s mod 8 with sum_a exp(pi*i*q(a)) = sqrt|A| * exp(2*pi*i*s/8)."""
    if not q.is_nondegenerate():
        raise DegenerateForm("bilinear form is degenerate")
    denom = 1
    values = [q.q(e) for e in q.group.elements()]
    for v in values:
        denom = linalg.lcm(denom, v.denominator)
    # exp(pi i v) = zeta_{2*denom}^{v*denom}; work in a field containing
    # zeta_8 and the square root of |A|
    m = linalg.lcm(2 * denom, 8)
    rest = q.order
    p = 2
    while p * p <= rest:
        while rest % (p * p) == 0:
            rest //= p * p
        p += 1
    for p in _prime_factors(rest):
        m = linalg.lcm(m, 8 if p == 2 else (p if p % 4 == 1 else 4 * p))
    total = _RootSum(m)
    for v in values:
        total.counts[(v.numerator * (m // (2 * v.denominator))) % m] += 1
    root = _sqrt_as_root_sum(q.order, m)
    hits = []
    for s in range(8):
        cand = root * _RootSum.root(m, (s * m // 8) % m)
        if (total - cand).is_zero():
            hits.append(s)
    if len(hits) != 1:
        raise FormError(f"Gauss sum matched {hits}; degenerate data?")
    return hits[0]


# --- isomorphism -----------------------------------------------------------

DEFAULT_BUDGET = 2_000_000


def is_isomorphic(q1: FiniteQuadraticForm, q2: FiniteQuadraticForm,
                  budget: int = DEFAULT_BUDGET) -> bool:
    """Group isomorphism carrying q1 to q2; fast invariant rejects first,
    then a depth-first search over generator images."""
    g1, g2 = q1.group, q2.group
    if g1.invariant_factors != g2.invariant_factors:
        return False
    if g1.order == 1:
        return True
    if q1.values_multiset() != q2.values_multiset():
        return False
    if gauss_signature(q1) != gauss_signature(q2):
        return False
    return _search_isomorphism(q1, q2, budget) is not None


def _search_isomorphism(q1, q2, budget):
    g1, g2 = q1.group, q2.group
    d = g1.invariant_factors
    r = g1.ngens
    gens1 = [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]
    elems2 = sorted(g2.elements())
    # candidate images per generator: matching order constraint, q value,
    # deterministic canonical ordering
    cands = []
    for i in range(r):
        qi = q1.q_gens[i]
        ci = [e for e in elems2
              if d[i] % g2.element_order(e) == 0 and q2.q(e) == qi]
        cands.append(ci)
    nodes = 0

    def span_size(imgs):
        seen = {tuple(0 for _ in range(r))}
        frontier = [tuple(0 for _ in range(r))]
        while frontier:
            cur = frontier.pop()
            for im in imgs:
                nxt = g2.add(cur, im)
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return len(seen)

    def rest_bound(i):
        n = 1
        for j in range(i, r):
            n *= d[j]
        return n

    def dfs(i, imgs):
        nonlocal nodes
        if i == r:
            return span_size(imgs) == g2.order
        for e in cands[i]:
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(f"budget {budget} exceeded")
            ok = True
            for j in range(i):
                if q2.b(imgs[j], e) != q1.b_matrix[j][i]:
                    ok = False
                    break
            if not ok:
                continue
            imgs.append(e)
            if span_size(imgs) * rest_bound(i + 1) >= g2.order and dfs(i + 1, imgs):
                return True
            imgs.pop()
        return False

    return True if dfs(0, []) else None


# --- isotropic subgroups ----------------------------------------------------

@dataclass(frozen=True)
class IsotropicSubgroup:
    elements: frozenset
    generators: tuple

    @property
    def order(self):
        return len(self.elements)


def isotropic_subgroups(q: FiniteQuadraticForm):
    """All subgroups H <= A with q|_H = 0 mod 2Z (trivial subgroup included)."""
    g = q.group
    zero = tuple(0 for _ in range(g.ngens))
    iso_elems = [e for e in g.elements() if q.q(e) == 0 and any(e)]
    found = {frozenset([zero]): ()}
    frontier = [(frozenset([zero]), ())]
    while frontier:
        helems, hgens = frontier.pop()
        for e in iso_elems:
            if e in helems:
                continue
            # q vanishes on <H, e> iff q(e)=0, q|_H=0 and b(e, H) integral
            if any(q.b(e, h) != 0 for h in helems):
                continue
            new = set(helems)
            queue = [e]
            while queue:
                c = queue.pop()
                if c in new:
                    continue
                new.add(c)
                for x in list(new):
                    s = g.add(c, x)
                    if s not in new:
                        queue.append(s)
            newf = frozenset(new)
            if newf not in found:
                gens = hgens + (e,)
                found[newf] = gens
                frontier.append((newf, gens))
    return sorted((IsotropicSubgroup(k, v) for k, v in found.items()),
                  key=lambda h: (h.order, sorted(h.elements)))
