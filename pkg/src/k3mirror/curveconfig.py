"""Curve configurations with a finite-order automorphism action.

A configuration is an incidence graph of curves on a K3 surface: nodes carry
genus and a kind (coordinate / exceptional / line), edges carry intersection
multiplicities, and self-intersection is 2*genus - 2.  Orbit sums of nodes
under the automorphism generate the invariant lattice.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .lattice import AmbientSublattice, GramLattice, from_rows

KINDS = ("coordinate", "exceptional", "line")


class ConfigError(ValueError):
    pass


class UnknownNode(ConfigError):
    pass


class RankDeficiency(ConfigError):
    pass


@dataclass(frozen=True)
class CurveNode:
    id: int
    label: str
    genus: int
    kind: str

    def __post_init__(self):
        if self.genus < 0:
            raise ConfigError("genus must be >= 0")
        if self.kind not in KINDS:
            raise ConfigError(f"unknown node kind {self.kind!r}")

    @property
    def self_intersection(self):
        return 2 * self.genus - 2


@dataclass(frozen=True)
class CurveConfiguration:
    nodes: tuple[CurveNode, ...]
    edges: tuple[tuple[int, int, int], ...]  # (id_a, id_b, multiplicity), a < b

    def __post_init__(self):
        ids = [n.id for n in self.nodes]
        if len(set(ids)) != len(ids):
            raise ConfigError("duplicate node ids")
        idset = set(ids)
        seen = set()
        for a, b, mult in self.edges:
            if a not in idset or b not in idset:
                raise UnknownNode(f"edge ({a},{b}) uses unknown node")
            if a >= b:
                raise ConfigError("edges must be stored with id_a < id_b")
            if mult < 0:
                raise ConfigError("edge multiplicities must be >= 0")
            if (a, b) in seen:
                raise ConfigError(f"duplicate edge ({a},{b})")
            seen.add((a, b))

    def node(self, nid) -> CurveNode:
        for n in self.nodes:
            if n.id == nid:
                return n
        raise UnknownNode(str(nid))

    def edge(self, a, b) -> int:
        if a == b:
            return 0
        key = (min(a, b), max(a, b))
        for x, y, mult in self.edges:
            if (x, y) == key:
                return mult
        return 0

    def restrict_to_kinds(self, kinds) -> "CurveConfiguration":
        keep = {n.id for n in self.nodes if n.kind in kinds}
        return CurveConfiguration(
            tuple(n for n in self.nodes if n.id in keep),
            tuple(e for e in self.edges if e[0] in keep and e[1] in keep))


@dataclass(frozen=True)
class ConfigAutomorphism:
    mapping: tuple[tuple[int, int], ...]  # (node id, image id)
    order: int

    def __post_init__(self):
        src = [a for a, _ in self.mapping]
        dst = [b for _, b in self.mapping]
        if sorted(src) != sorted(dst) or len(set(src)) != len(src):
            raise ConfigError("mapping is not a permutation")

    def image(self, nid) -> int:
        for a, b in self.mapping:
            if a == nid:
                return b
        raise UnknownNode(str(nid))

    def validate_on(self, cfg: CurveConfiguration):
        ids = [n.id for n in cfg.nodes]
        if sorted(a for a, _ in self.mapping) != sorted(ids):
            raise ConfigError("automorphism domain does not match the nodes")
        cur = {a: b for a, b in self.mapping}
        power = dict(cur)
        for _ in range(self.order - 1):
            power = {a: cur[b] for a, b in power.items()}
        if any(a != b for a, b in power.items()):
            raise ConfigError(f"permutation does not have order dividing {self.order}")
        for n in cfg.nodes:
            m = cfg.node(self.image(n.id))
            if (m.genus, m.kind) != (n.genus, n.kind):
                raise ConfigError(f"automorphism breaks genus/kind at node {n.id}")
        for n in cfg.nodes:
            for m in cfg.nodes:
                if cfg.edge(n.id, m.id) != cfg.edge(self.image(n.id), self.image(m.id)):
                    raise ConfigError(
                        f"automorphism breaks edge ({n.id},{m.id})")

    def orbits(self, cfg: CurveConfiguration):
        done = set()
        out = []
        for n in sorted(cfg.nodes, key=lambda x: x.id):
            if n.id in done:
                continue
            orb = [n.id]
            cur = self.image(n.id)
            while cur != n.id:
                orb.append(cur)
                cur = self.image(cur)
            done.update(orb)
            out.append(tuple(sorted(orb)))
        return out


def identity_automorphism(cfg: CurveConfiguration, order=1) -> ConfigAutomorphism:
    return ConfigAutomorphism(tuple((n.id, n.id) for n in cfg.nodes), order)


@dataclass(frozen=True)
class OrbitDivisor:
    node_ids: tuple[int, ...]


def orbit_sums(cfg: CurveConfiguration, a: ConfigAutomorphism):
    """One divisor per node orbit, ordered by smallest member id."""
    a.validate_on(cfg)
    return tuple(OrbitDivisor(orb) for orb in a.orbits(cfg))


def gram_from_configuration(cfg: CurveConfiguration, classes) -> GramLattice:
    """Intersection matrix of the given divisors (sums of distinct nodes)."""
    k = len(classes)
    g = [[0] * k for _ in range(k)]
    for i, ci in enumerate(classes):
        for nid in ci.node_ids:
            cfg.node(nid)  # raises UnknownNode
        diag = sum(cfg.node(nid).self_intersection for nid in ci.node_ids)
        members = list(ci.node_ids)
        for s in range(len(members)):
            for t in range(s + 1, len(members)):
                diag += 2 * cfg.edge(members[s], members[t])
        g[i][i] = diag
        for j in range(i + 1, k):
            val = sum(cfg.edge(x, y)
                      for x in ci.node_ids for y in classes[j].node_ids)
            g[i][j] = g[j][i] = val
    return from_rows(g)


def rank_via_orbits(cfg: CurveConfiguration, a: ConfigAutomorphism) -> int:
    """1 plus the number of orbits of exceptional curves."""
    a.validate_on(cfg)
    return 1 + sum(1 for orb in a.orbits(cfg)
                   if cfg.node(orb[0]).kind == "exceptional")


class _ZSpan:
    """Integer span of rational vectors, with exact membership tests."""

    def __init__(self, dim):
        self.dim = dim
        self.vectors = []
        self._denom = 1
        self._basis = []

    def _rebuild(self):
        denom = 1
        for v in self.vectors:
            for x in v:
                denom = linalg.lcm(denom, Fraction(x).denominator)
        rows = [[int(Fraction(x) * denom) for x in v] for v in self.vectors]
        self._denom = denom
        self._basis = linalg.hermite_row_basis(rows)

    def add(self, v):
        self.vectors.append(tuple(Fraction(x) for x in v))
        self._rebuild()

    def contains(self, v):
        v = [Fraction(x) for x in v]
        denom = self._denom
        for x in v:
            denom = linalg.lcm(denom, x.denominator)
        if denom != self._denom:
            scale = denom // self._denom
            basis = [[x * scale for x in row] for row in self._basis]
        else:
            basis = self._basis
        vec = [int(x * denom) for x in v]
        return linalg.in_row_span_z(basis, vec)


def _pairing_coordinates(gram_all, ref_indices, idx):
    """Coordinates of divisor idx over the reference divisors, solving with
    the pairing rows (valid because the form is nondegenerate on the span)."""
    a = [[Fraction(gram_all.gram[r][c]) for r in ref_indices]
         for c in range(gram_all.rank)]
    b = [Fraction(gram_all.gram[idx][c]) for c in range(gram_all.rank)]
    # solve a · x = b with a of full column rank (columns = references)
    rows, cols = len(a), len(a[0])
    aug = [a[i] + [b[i]] for i in range(rows)]
    r = 0
    pivots = []
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
        raise RankDeficiency("reference divisors are dependent")
    if any(aug[i][cols] != 0 for i in range(r, rows)):
        raise RankDeficiency("divisor outside the reference span")
    sol = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        sol[c] = aug[i][cols]
    return sol


def divisor_coordinates(cfg: CurveConfiguration, divisors):
    """Rational coordinates of every divisor over a maximal independent
    reference subset (greedy by index); returns (ref_indices, coords)."""
    gram_all = gram_from_configuration(cfg, divisors)
    k = len(divisors)
    rank = linalg.rank_fraction([list(r) for r in gram_all.gram])
    ref = []
    for i in range(k):
        trial = [list(gram_all.gram[j]) for j in ref + [i]]
        if linalg.rank_fraction(trial) > len(ref):
            ref.append(i)
        if len(ref) == rank:
            break
    coords = [_pairing_coordinates(gram_all, ref, i) for i in range(k)]
    return ref, coords


def minimal_generators(cfg: CurveConfiguration, divisors):
    """Greedy (by index) subset of the divisors generating the same lattice
    over Z; deterministic."""
    _ref, coords = divisor_coordinates(cfg, divisors)
    span = _ZSpan(len(coords[0]) if coords else 0)
    chosen = []
    for i, v in enumerate(coords):
        if not span.contains(v):
            span.add(v)
            chosen.append(i)
    return tuple(chosen)


def generates_same_lattice(cfg: CurveConfiguration, divisors, subset) -> bool:
    """Does the index subset span the same Z-lattice as all divisors?"""
    _ref, coords = divisor_coordinates(cfg, divisors)
    span = _ZSpan(len(coords[0]) if coords else 0)
    for i in subset:
        span.add(coords[i])
    return all(span.contains(v) for v in coords)


@dataclass(frozen=True)
class InvariantLattice:
    lattice: GramLattice
    divisors: tuple[OrbitDivisor, ...]
    generator_indices: tuple[int, ...] | None  # None: basis is not a divisor subset


def invariant_lattice(cfg: CurveConfiguration, a: ConfigAutomorphism):
    """L_B: the lattice spanned by all orbit divisors.

    Presented on a rank-sized generating subset of the divisors when the
    greedy index-order selection yields one, otherwise on a Hermite basis of
    the full integer span (same lattice up to isometry).
    """
    divisors = orbit_sums(cfg, a)
    gram_all = gram_from_configuration(cfg, divisors)
    rank = linalg.rank_fraction([list(r) for r in gram_all.gram])
    expected = rank_via_orbits(cfg, a)
    if rank != expected:
        raise RankDeficiency(
            f"span rank {rank} != 1 + exceptional orbits {expected}")
    gens = minimal_generators(cfg, divisors)
    if len(gens) == rank:
        sub = [[gram_all.gram[i][j] for j in gens] for i in gens]
        return InvariantLattice(from_rows(sub), divisors, gens)
    ref, coords = divisor_coordinates(cfg, divisors)
    denom = 1
    for v in coords:
        for x in v:
            denom = linalg.lcm(denom, x.denominator)
    basis = linalg.hermite_row_basis([[int(x * denom) for x in v]
                                      for v in coords])
    ref_gram = [[Fraction(gram_all.gram[i][j]) for j in ref] for i in ref]
    rows = []
    for x in basis:
        rows.append([
            sum(Fraction(x[i], denom) * ref_gram[i][j] * Fraction(y[j], denom)
                for i in range(rank) for j in range(rank))
            for y in basis])
    assert all(v.denominator == 1 for row in rows for v in row)
    lat = from_rows([[v.numerator for v in row] for row in rows])
    return InvariantLattice(lat, divisors, None)


def node_vector(cfg: CurveConfiguration, divisor: OrbitDivisor):
    ids = sorted(n.id for n in cfg.nodes)
    pos = {nid: i for i, nid in enumerate(ids)}
    v = [0] * len(ids)
    for nid in divisor.node_ids:
        v[pos[nid]] += 1
    return v


def coordinates_in_basis(cfg: CurveConfiguration, basis_divisors, divisors):
    """Integer coordinates of divisors over basis divisors, pairing against
    the full node Gram; RankDeficiency if a coordinate is non-integral."""
    nodes = sorted(cfg.nodes, key=lambda n: n.id)
    k = len(nodes)
    node_gram = [[0] * k for _ in range(k)]
    for i, n in enumerate(nodes):
        node_gram[i][i] = n.self_intersection
        for j in range(i + 1, k):
            node_gram[i][j] = node_gram[j][i] = cfg.edge(n.id, nodes[j].id)
    basis_vecs = [node_vector(cfg, d) for d in basis_divisors]
    b_gram = [[_pair(node_gram, x, y) for y in basis_vecs] for x in basis_vecs]
    if linalg.det_fraction(b_gram) == 0:
        raise RankDeficiency("basis divisors are degenerate")
    out = []
    for d in divisors:
        v = node_vector(cfg, d)
        rhs = [_pair(node_gram, x, v) for x in basis_vecs]
        sol = linalg.solve_fraction(b_gram, rhs)
        if any(x.denominator != 1 for x in sol):
            raise RankDeficiency(f"divisor {d} not integral over the basis")
        out.append(tuple(x.numerator for x in sol))
    return out, from_rows(b_gram)


def _pair(node_gram, x, y):
    return sum(x[i] * node_gram[i][j] * y[j]
               for i in range(len(x)) for j in range(len(y)))


def chain_primitivity(inner: AmbientSublattice, outer: AmbientSublattice) -> bool:
    from .lattice import chain_primitivity as _cp
    return _cp(inner, outer)


# --- configuration files ----------------------------------------------------

def config_from_dict(data) -> tuple[CurveConfiguration, dict]:
    nodes = tuple(CurveNode(n["id"], n.get("label", str(n["id"])),
                            n["genus"], n["kind"])
                  for n in data["nodes"])
    edges = []
    for e in data["edges"]:
        a, b = int(e[0]), int(e[1])
        mult = int(e[2]) if len(e) > 2 else 1
        edges.append((min(a, b), max(a, b), mult))
    cfg = CurveConfiguration(nodes, tuple(sorted(edges)))
    autos = {}
    for spec in data.get("automorphisms", []):
        kinds = spec.get("kinds")
        sub = cfg if kinds is None else cfg.restrict_to_kinds(kinds)
        mapping = {n.id: n.id for n in sub.nodes}
        for cycle in spec.get("cycles", []):
            for i, nid in enumerate(cycle):
                mapping[nid] = cycle[(i + 1) % len(cycle)]
        auto = ConfigAutomorphism(tuple(sorted(mapping.items())), spec["order"])
        auto.validate_on(sub)
        autos[spec["name"]] = (sub, auto)
    return cfg, autos


def load_config(path):
    with open(path, "r", encoding="utf-8") as fh:
        return config_from_dict(json.load(fh))
