"""Invertible quasihomogeneous polynomials and their BHK transposes.

A polynomial is stored as its list of monomial exponent vectors over an
ordered variable tuple; every coefficient is normalized to 1, so the exponent
matrix (rows = monomials, columns = variables) is the complete datum.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import linalg


class PolynomialError(ValueError):
    pass


class NotInvertible(PolynomialError):
    """No Fermat/Loop/Chain partition exists."""


class NoPositiveSolution(PolynomialError):
    """The weight equation A·q = d·1 has no positive rational solution."""


# conventional variable order of the source tables, descending weight
_CANONICAL = ("x", "y", "z", "w")


@dataclass(frozen=True)
class Monomial:
    exponents: tuple[int, ...]

    def __post_init__(self):
        if not any(e > 0 for e in self.exponents):
            raise PolynomialError("monomial must involve at least one variable")
        if any(e < 0 for e in self.exponents):
            raise PolynomialError("negative exponent")

    def render(self, variables):
        parts = []
        for name, e in zip(variables, self.exponents):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "".join(parts)


@dataclass(frozen=True)
class ExponentMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise PolynomialError("exponent matrix must be square")
        if any(e < 0 for row in self.entries for e in row):
            raise PolynomialError("exponent matrix entries must be >= 0")
        if self.det == 0:
            raise PolynomialError("singular exponent matrix")

    @property
    def size(self):
        return len(self.entries)

    @property
    def det(self):
        return linalg.det_int([list(r) for r in self.entries])

    def transpose(self):
        return ExponentMatrix(tuple(zip(*self.entries)))


@dataclass(frozen=True)
class WeightSystem:
    weights: tuple[int, ...]
    degree: int

    def __post_init__(self):
        if any(q < 1 for q in self.weights) or self.degree < 1:
            raise PolynomialError("weights and degree must be positive")
        g = 0
        for q in self.weights:
            g = gcd(g, q)
        if g != 1:
            raise PolynomialError("weights must have gcd 1")
        if any(q >= self.degree for q in self.weights):
            raise PolynomialError("each weight must be < degree")

    def render(self):
        return "(" + ",".join(map(str, self.weights)) + f";{self.degree})"


@dataclass(frozen=True)
class AtomicBlock:
    kind: str  # "fermat" | "loop" | "chain"
    variables: tuple[int, ...]
    exponents: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ("fermat", "loop", "chain"):
            raise PolynomialError(f"unknown atomic kind {self.kind!r}")
        if self.kind == "fermat" and len(self.variables) != 1:
            raise PolynomialError("fermat block has exactly one variable")
        if self.kind != "fermat" and any(e < 2 for e in self.exponents):
            raise PolynomialError("loop/chain exponents must all be >= 2")


@dataclass(frozen=True)
class InvertiblePolynomial:
    variables: tuple[str, ...]
    monomials: tuple[Monomial, ...]

    def __post_init__(self):
        if len(self.monomials) != len(self.variables):
            raise PolynomialError(
                "need as many monomials as variables (Delsarte condition): "
                f"{len(self.monomials)} monomials, {len(self.variables)} variables")
        if len(set(m.exponents for m in self.monomials)) != len(self.monomials):
            raise PolynomialError("repeated monomial")
        self.exponent_matrix()  # validates invertibility

    def exponent_matrix(self):
        return ExponentMatrix(tuple(m.exponents for m in self.monomials))

    def render(self):
        return "+".join(m.render(self.variables) for m in self.monomials)


_TERM_FACTOR = re.compile(r"\s*\*?\s*([a-zA-Z])\s*(?:\^\s*\{?\s*(\d+)\s*\}?)?")


def _parse_term(term, var_index):
    exps = {}
    pos = 0
    term = term.strip()
    while pos < len(term):
        m = _TERM_FACTOR.match(term, pos)
        if not m:
            raise PolynomialError(f"syntax error in term {term!r} at {term[pos:]!r}")
        name, exp = m.group(1), int(m.group(2) or 1)
        if name not in var_index:
            raise PolynomialError(f"undeclared variable {name!r} in {term!r}")
        exps[var_index[name]] = exps.get(var_index[name], 0) + exp
        pos = m.end()
    if not exps:
        raise PolynomialError(f"empty term in {term!r}")
    return exps


def parse_polynomial(text, variables=None):
    """Parse a '+'-separated sum of power products, e.g. "x^2z+y^4+z^4+w^8".

    Variable names are single letters; '*' between factors is optional.  When
    `variables` is omitted the order is x,y,z,w for names drawn from that
    conventional set, otherwise first appearance.
    """
    terms = [t for t in text.split("+")]
    if any(not t.strip() for t in terms):
        raise PolynomialError(f"syntax error: empty term in {text!r}")
    if variables is None:
        seen = []
        for t in terms:
            for ch in t:
                if ch.isalpha() and ch not in seen:
                    seen.append(ch)
        if set(seen) <= set(_CANONICAL):
            variables = tuple(v for v in _CANONICAL if v in seen)
        else:
            variables = tuple(seen)
    var_index = {v: i for i, v in enumerate(variables)}
    monomials = []
    for t in terms:
        exps = _parse_term(t, var_index)
        vec = tuple(exps.get(i, 0) for i in range(len(variables)))
        monomials.append(Monomial(vec))
    return InvertiblePolynomial(tuple(variables), tuple(monomials))


def weight_system(a: ExponentMatrix) -> WeightSystem:
    """The unique reduced (q_0..q_n; d) with A·q = d·1."""
    n = a.size
    sol = linalg.solve_fraction([list(r) for r in a.entries], [1] * n)
    if any(x <= 0 for x in sol):
        raise NoPositiveSolution(f"A q = 1 solution has non-positive entry: {sol}")
    d = 1
    for x in sol:
        d = linalg.lcm(d, x.denominator)
    q = [int(x * d) for x in sol]
    g = 0
    for v in q:
        g = gcd(g, v)
    return WeightSystem(tuple(v // g for v in q), d // g)


def is_calabi_yau(w: WeightSystem) -> bool:
    return w.degree == sum(w.weights)


def transpose(poly: InvertiblePolynomial) -> InvertiblePolynomial:
    at = poly.exponent_matrix().transpose()
    return InvertiblePolynomial(poly.variables,
                                tuple(Monomial(row) for row in at.entries))


def atomic_decomposition(a: ExponentMatrix):
    """Partition the variables into Fermat/Loop/Chain blocks realizing A.

    Each monomial must be a pure power x_j^a (a >= 2) or a product
    x_k * x_j^a (a >= 2); the head assignments then force the block structure,
    so no search is required.
    """
    n = a.size
    head_of = {}      # variable -> monomial index heading it
    pred = {}         # variable j -> variable k when j's monomial is x_k x_j^a
    for i, row in enumerate(a.entries):
        support = [(j, e) for j, e in enumerate(row) if e]
        if len(support) == 1:
            j, e = support[0]
            if e < 2:
                raise NotInvertible(f"monomial {i} is linear")
            head = j
        elif len(support) == 2:
            (j1, e1), (j2, e2) = support
            if e1 == 1 and e2 >= 2:
                head, tail = j2, j1
            elif e2 == 1 and e1 >= 2:
                head, tail = j1, j2
            else:
                raise NotInvertible(f"monomial {i} is not of atomic shape")
            pred[head] = tail
        else:
            raise NotInvertible(f"monomial {i} involves {len(support)} variables")
        if head in head_of:
            raise NotInvertible(f"variable {head} heads two monomials")
        head_of[head] = i
    if len(head_of) != n:
        raise NotInvertible("some variable heads no monomial")
    succ = {}
    for j, k in pred.items():
        if k in succ:
            raise NotInvertible(f"variable {k} feeds two links")
        succ[k] = j

    blocks = []
    unused = set(range(n))
    # chains start at a variable whose own monomial is a pure power
    for start in range(n):
        if start not in unused or start in pred:
            continue
        path = [start]
        while path[-1] in succ:
            path.append(succ[path[-1]])
        exps = tuple(a.entries[head_of[v]][v] for v in path)
        if len(path) == 1:
            blocks.append(AtomicBlock("fermat", (start,), exps))
        else:
            blocks.append(AtomicBlock("chain", tuple(path), exps))
        unused -= set(path)
    # what remains are loops
    while unused:
        start = min(unused)
        cycle = [start]
        while True:
            nxt = succ.get(cycle[-1])
            if nxt is None:
                raise NotInvertible("dangling chain inside a loop component")
            if nxt == start:
                break
            cycle.append(nxt)
        exps = tuple(a.entries[head_of[v]][v] for v in cycle)
        blocks.append(AtomicBlock("loop", tuple(cycle), exps))
        unused -= set(cycle)
    blocks.sort(key=lambda b: b.variables[0])
    return tuple(blocks)


def fermat_variable_of_order(a: ExponentMatrix, n: int):
    """Index of a variable occurring only as the pure monomial x^n, if any.

    This is the shape test for W = x0^n + g(x1,x2,x3): some variable must
    appear in exactly one monomial, which is its n-th power.
    """
    for i, row in enumerate(a.entries):
        support = [(j, e) for j, e in enumerate(row) if e]
        if len(support) != 1:
            continue
        j, e = support[0]
        if e != n:
            continue
        if all(a.entries[k][j] == 0 for k in range(a.size) if k != i):
            return j
    return None
