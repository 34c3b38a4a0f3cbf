"""Table ingestion and the verification harness.

Loads the shipped data (three tables, sidecar generator tables, equivalence
classes, curve configurations), runs every per-line and cross-line check, and
aggregates a report.  Failures are report entries, never exceptions; known
source discrepancies surface as WARN entries with pointer strings.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from . import curveconfig as CC
from . import groups as G
from . import lattice as L
from . import linalg
from . import poly as P
from . import quadform as Q

DEFAULT_DATA = Path(__file__).resolve().parent / "data"
DATA_ENV = "K3MIRROR_DATA"

PASS, FAIL, WARN = "PASS", "FAIL", "WARN"


class DataError(ValueError):
    pass


@dataclass(frozen=True)
class TableLine:
    order: int
    no: int
    rank: int
    dual: int | str  # line number or "self"
    weights: tuple[int, ...]  # (q0, q1, q2, q3, d)
    polynomial: str
    group_invariants: tuple[int, ...]
    group_generators: tuple[str, ...]
    form: str
    star: bool
    exceptional: bool
    nol: bool
    belcastro: int | None
    note: str | None
    dual_weight_perm: tuple[int, ...]

    @property
    def weight_system(self):
        return P.WeightSystem(tuple(self.weights[:4]), self.weights[4])


@dataclass
class CheckResult:
    scope: str
    name: str
    status: str
    detail: str = ""
    citation: str = ""

    def render(self):
        tail = f"  [{self.citation}]" if self.citation else ""
        body = f" - {self.detail}" if self.detail else ""
        return f"{self.status:4s} {self.scope}: {self.name}{body}{tail}"


@dataclass
class TableReport:
    results: list[CheckResult] = field(default_factory=list)

    def add(self, scope, name, ok, detail="", citation=""):
        self.results.append(
            CheckResult(scope, name, PASS if ok else FAIL, detail, citation))
        return ok

    def warn(self, scope, name, detail="", citation=""):
        self.results.append(CheckResult(scope, name, WARN, detail, citation))

    def extend(self, other):
        self.results.extend(other.results)

    def count(self, status):
        return sum(1 for r in self.results if r.status == status)

    @property
    def failed(self):
        return [r for r in self.results if r.status == FAIL]

    @property
    def warned(self):
        return [r for r in self.results if r.status == WARN]

    @property
    def ok(self):
        return not self.failed

    def to_json(self):
        return {
            "counts": {s: self.count(s) for s in (PASS, FAIL, WARN)},
            "results": [vars(r) for r in self.results],
        }

    def render(self, verbose=False):
        lines = []
        for r in self.results:
            if verbose or r.status != PASS:
                lines.append(r.render())
        lines.append(f"== {self.count(PASS)} PASS, {self.count(FAIL)} FAIL, "
                     f"{self.count(WARN)} WARN ==")
        return "\n".join(lines)


EXPECTED_LINE_COUNTS = {4: 89, 8: 37, 12: 28}


def load_table(path) -> list[TableLine]:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    order = int(data["order"])
    lines = []
    seen = set()
    for rec in data["lines"]:
        required = {"no", "rank", "dual", "weights", "polynomial",
                    "group_invariants", "group_generators", "form",
                    "dual_weight_perm"}
        missing = required - rec.keys()
        if missing:
            raise DataError(f"line record missing fields {sorted(missing)}")
        no = int(rec["no"])
        if no in seen:
            raise DataError(f"duplicate line number {no}")
        seen.add(no)
        lines.append(TableLine(
            order=order, no=no, rank=int(rec["rank"]),
            dual=rec["dual"] if rec["dual"] == "self" else int(rec["dual"]),
            weights=tuple(int(x) for x in rec["weights"]),
            polynomial=rec["polynomial"],
            group_invariants=tuple(int(x) for x in rec["group_invariants"]),
            group_generators=tuple(rec["group_generators"]),
            form=rec["form"],
            star=bool(rec.get("star")), exceptional=bool(rec.get("exceptional")),
            nol=bool(rec.get("nol")), belcastro=rec.get("belcastro"),
            note=rec.get("note"),
            dual_weight_perm=tuple(int(x) for x in rec["dual_weight_perm"])))
    expected = EXPECTED_LINE_COUNTS.get(order)
    if expected is not None and len(lines) != expected:
        raise DataError(f"order-{order} table must have {expected} lines, "
                        f"got {len(lines)}")
    by_no = {l.no: l for l in lines}
    for l in lines:
        if l.dual != "self" and l.dual not in by_no:
            raise DataError(f"line {l.no}: dual {l.dual} does not exist")
    return lines


class PolynomialContext:
    """Per-polynomial derived objects, cached across table lines."""

    def __init__(self, text):
        self.poly = P.parse_polynomial(text)
        self.A = self.poly.exponent_matrix()
        self.ws = P.weight_system(self.A)
        self.max = G.max_group(self.A)
        self.sl = G.sl_subgroup(self.max)
        self.j = G.j_group(self.ws)
        self.At = self.A.transpose()
        self.wst = P.weight_system(self.At)
        self.jt = G.j_group(self.wst)
        self.slt = G.sl_subgroup(G.max_group(self.At))


class Verifier:
    def __init__(self, data_dir=None):
        if data_dir is None:
            data_dir = os.environ.get(DATA_ENV, DEFAULT_DATA)
        self.data_dir = Path(data_dir)
        if not self.data_dir.is_dir():
            raise DataError(f"data directory {self.data_dir} does not exist")
        self._contexts = {}
        self._groups = {}

    # -- data access --------------------------------------------------------

    def table(self, order) -> list[TableLine]:
        return load_table(self.data_dir / f"order{order}.json")

    def classes(self, order):
        with open(self.data_dir / f"classes_n{order}.json", encoding="utf-8") as fh:
            return json.load(fh)["classes"]

    def sidecar(self):
        with open(self.data_dir / "sidecar_groups.json", encoding="utf-8") as fh:
            return json.load(fh)["tables"]

    def exceptional_cases(self):
        with open(self.data_dir / "exceptional_cases.json", encoding="utf-8") as fh:
            return json.load(fh)["cases"]

    def worked_examples(self):
        with open(self.data_dir / "worked_examples.json", encoding="utf-8") as fh:
            return json.load(fh)["examples"]

    def config(self, name):
        return CC.load_config(self.data_dir / "configs" / f"{name}.json")

    def context(self, text) -> PolynomialContext:
        if text not in self._contexts:
            self._contexts[text] = PolynomialContext(text)
        return self._contexts[text]

    def group_of(self, line: TableLine) -> G.SymmetryGroup:
        key = (line.order, line.no)
        if key not in self._groups:
            ctx = self.context(line.polynomial)
            gens = [G.j_generator(ctx.ws)]
            gens += [G.parse_symmetry(s) for s in line.group_generators]
            self._groups[key] = G.subgroup_generated(ctx.sl, gens)
        return self._groups[key]

    # -- per-line checks ----------------------------------------------------

    def verify_line(self, line: TableLine) -> TableReport:
        rep = TableReport()
        scope = f"n={line.order} line {line.no}"
        ctx = self.context(line.polynomial)
        declared = line.weight_system
        rep.add(scope, "weights recomputed",
                ctx.ws == declared,
                f"computed {ctx.ws.render()}, declared {declared.render()}")
        rep.add(scope, "Calabi-Yau condition", P.is_calabi_yau(ctx.ws))
        grp = self.group_of(line)
        inv = G.quotient_invariants(grp, ctx.j)
        rep.add(scope, "group type matches", inv == line.group_invariants,
                f"G/J computed {list(inv)}, declared {list(line.group_invariants)}")
        rep.add(scope, "J <= G <= SL", ctx.j <= grp and grp <= ctx.sl)
        try:
            Q.parse_form_expression(line.form)
            rep.add(scope, "form expression parses", True, line.form)
        except Q.FormError as exc:
            rep.add(scope, "form expression parses", False, str(exc))
        rep.add(scope, "pure power of the automorphism order",
                P.fermat_variable_of_order(ctx.A, line.order) is not None)
        return rep

    def verify_dual_laws(self, line: TableLine) -> TableReport:
        rep = TableReport()
        scope = f"n={line.order} line {line.no}"
        ctx = self.context(line.polynomial)
        dj = G.dual_group(ctx.j, ctx.A)
        rep.add(scope, "dual of J is SL of transpose",
                G.groups_equal(dj, ctx.slt))
        dsl = G.dual_group(ctx.sl, ctx.A)
        rep.add(scope, "dual of SL is J of transpose",
                G.groups_equal(dsl, ctx.jt))
        grp = self.group_of(line)
        dg = G.dual_group(grp, ctx.A)
        ok1 = grp.order * dg.order == ctx.j.order * ctx.slt.order
        ok2 = ctx.sl.order * ctx.jt.order == grp.order * dg.order
        rep.add(scope, "index identity on (J, G)", ok1,
                f"|G|*|G^T| = {grp.order * dg.order}")
        rep.add(scope, "index identity on (G, SL)", ok2)
        ddg = G.dual_group(dg, ctx.At)
        rep.add(scope, "dual group involution", G.groups_equal(ddg, grp))
        return rep

    def verify_mirror_pair(self, line: TableLine, dual: TableLine) -> TableReport:
        rep = TableReport()
        scope = f"n={line.order} line {line.no} ~ dual {dual.no}"
        rep.add(scope, "ranks sum to 20", line.rank + dual.rank == 20,
                f"{line.rank} + {dual.rank}")
        try:
            qi = Q.parse_form_expression(line.form)
            qj = Q.parse_form_expression(dual.form)
            rep.add(scope, "forms negate each other",
                    Q.is_isomorphic(qi, Q.negate(qj)),
                    f"{line.form} vs -({dual.form})")
        except Q.FormError as exc:
            rep.add(scope, "forms negate each other", False, str(exc))
        ctx = self.context(line.polynomial)
        perm = line.dual_weight_perm
        permuted = tuple(ctx.wst.weights[perm[i]] for i in range(4))
        rep.add(scope, "transposed weights match dual line",
                permuted == tuple(dual.weights[:4])
                and ctx.wst.degree == dual.weights[4],
                f"transpose gives {ctx.wst.render()}, dual declares "
                f"{dual.weight_system.render()} via reorder {list(perm)}")
        grp = self.group_of(line)
        dg = G.dual_group(grp, ctx.A)
        inv = G.quotient_invariants(dg, ctx.jt)
        rep.add(scope, "dual group type matches dual line",
                inv == dual.group_invariants,
                f"G^T/J computed {list(inv)}, dual declares "
                f"{list(dual.group_invariants)}")
        return rep

    # -- equivalence classes --------------------------------------------------

    def verify_equivalence_classes(self, order) -> TableReport:
        rep = TableReport()
        lines = {l.no: l for l in self.table(order)}
        for cls in self.classes(order):
            members = cls["lines"]
            scope = f"n={order} class rank {cls['rank']} lines {members[0]}-{members[-1]}"
            ranks_ok = all(lines[no].rank == cls["rank"] for no in members)
            rep.add(scope, "members carry the class rank", ranks_ok)
            for pair in cls["pairs"]:
                a, b = lines[pair["a"]], lines[pair["b"]]
                perm = pair.get("perm")
                pscope = f"n={order} lines {a.no}~{b.no}"
                if perm is not None:
                    rep.warn(pscope, "pair needs a coordinate permutation",
                             f"{pair['relation']} claim aligned via {perm}",
                             citation=f"class file for order {order}, rank "
                                      f"{cls['rank']} block")
                if pair["relation"] == "deformation":
                    ok = a.weights == b.weights
                    gb = self.group_of(b)
                    if perm is not None:
                        gb = G.permute_coordinates(gb, perm)
                    ok = ok and G.groups_equal(self.group_of(a), gb)
                    rep.add(pscope, "deformation: same weights and group", ok)
                else:
                    ctxa = self.context(a.polynomial)
                    ctxb = self.context(b.polynomial)
                    da = G.dual_group(self.group_of(a), ctxa.A)
                    db = G.dual_group(self.group_of(b), ctxb.A)
                    if perm is not None:
                        db = G.permute_coordinates(db, perm)
                    rep.add(pscope, "isomorphism: dual groups equal",
                            G.groups_equal(da, db))
        return rep

    # -- NOL and lattice-level checks -----------------------------------------

    def verify_nol(self, order) -> TableReport:
        rep = TableReport()
        lines = {l.no: l for l in self.table(order)}
        for cls in self.classes(order):
            expr = cls.get("nol_lattice")
            if not expr:
                continue
            scope = f"n={order} rank {cls['rank']} NOL class"
            lat = parse_lattice_expression(expr)
            rank = cls["rank"]
            sig = L.signature(lat)
            rep.add(scope, "curated lattice has signature (1, r-1)",
                    (sig.pos, sig.neg) == (1, rank - 1), f"{expr}")
            form = L.discriminant_form(lat)
            declared = Q.parse_form_expression(lines[cls["lines"][0]].form)
            rep.add(scope, "curated lattice realizes the declared form",
                    Q.is_isomorphic(form, declared))
            over = L.overlattices(lat)
            rep.add(scope, "no proper overlattice",
                    len(over) == 1 and over[0].gram == lat.gram,
                    f"{len(over)} even overlattice(s)")
            flagged = all(lines[no].nol for no in cls["lines"])
            rep.add(scope, "member lines carry the NOL flag", flagged)
        return rep

    # -- exceptional configurations -------------------------------------------

    def verify_exceptional(self, case) -> TableReport:
        rep = TableReport()
        scope = f"n={case['order']} line {case['line']} exceptional"
        cfg, autos = self.config(case["config"])
        full, tau = autos["tau"]
        restricted, sigma = autos["sigma"]

        tau_divs = CC.orbit_sums(full, tau)
        gram_tau = CC.gram_from_configuration(full, tau_divs)
        tau_rank = linalg.rank_fraction([list(r) for r in gram_tau.gram])
        rep.add(scope, "S(tau) rank", tau_rank == case["tau_rank"],
                f"computed {tau_rank}, expected {case['tau_rank']}")
        tgen = [i - 1 for i in case["tau_generators"]]
        rep.add(scope, "curated S(tau) generators span",
                len(tgen) == tau_rank
                and CC.generates_same_lattice(full, tau_divs, tgen),
                f"indices {case['tau_generators']}")

        lb = CC.invariant_lattice(restricted, sigma)
        rep.add(scope, "L_B rank", lb.lattice.rank == case["lb_rank"],
                f"computed {lb.lattice.rank}, expected {case['lb_rank']}")
        lgen = [i - 1 for i in case["lb_generators"]]
        rep.add(scope, "curated L_B generators span",
                len(lgen) == case["lb_rank"]
                and CC.generates_same_lattice(restricted, lb.divisors, lgen),
                f"indices {case['lb_generators']}")
        form = L.discriminant_form(lb.lattice)
        expected = Q.parse_form_expression(case["lb_form"])
        rep.add(scope, "L_B discriminant form", Q.is_isomorphic(form, expected),
                case["lb_form"])
        sig = L.signature(lb.lattice)
        rep.add(scope, "L_B signature (1, r-1)",
                (sig.pos, sig.neg) == (1, case["lb_rank"] - 1))
        rep.add(scope, "Milgram relation for L_B",
                Q.gauss_signature(form) == (2 - case["lb_rank"]) % 8)
        rep.add(scope, "Nikulin uniqueness applies", L.nikulin_unique(sig, form))

        basis_divs = [tau_divs[i] for i in tgen]
        lb_basis = [lb.divisors[i] for i in lgen]
        try:
            coords, btau = CC.coordinates_in_basis(full, basis_divs, lb_basis)
            inner = L.AmbientSublattice(btau, tuple(coords))
            ident = tuple(tuple(int(i == j) for j in range(btau.rank))
                          for i in range(btau.rank))
            outer = L.AmbientSublattice(btau, ident)
            rep.add(scope, "primitive in S(tau) via the chain criterion",
                    L.chain_primitivity(inner, outer))
        except (CC.ConfigError, L.LatticeError) as exc:
            rep.add(scope, "primitive in S(tau) via the chain criterion",
                    False, str(exc))
        two = case.get("tau_two_elementary")
        if two is not None:
            bt_group, _ = L.discriminant_group(btau)
            rep.add(scope, "S(tau) 2-elementary with expected generators",
                    bt_group.invariant_factors == (2,) * two,
                    f"invariant factors {list(bt_group.invariant_factors)}")
        stated = case.get("paper_stated_form")
        if stated:
            try:
                Q.parse_form_expression(stated)
                rep.add(scope, "stated form admissibility", False,
                        f"{stated} unexpectedly parses")
            except Q.FormError:
                rep.warn(scope, "source text states an inadmissible form",
                         f"{stated}; the curated expected value follows the "
                         f"order-{case['order']} table line {case['line']}",
                         citation=case.get("citation", ""))
        return rep

    # -- worked examples -------------------------------------------------------

    def verify_worked_examples(self, order=None) -> TableReport:
        rep = TableReport()
        examples = self.worked_examples()
        pair = examples["rank4_rank16"]
        if order in (None, 4):
            scope = "n=4 worked example 12/79"
            cfg, autos = self.config(pair["config"])
            sub, sigma = autos["sigma"]
            lb = CC.invariant_lattice(sub, sigma)
            rep.add(scope, "line 12 rank", lb.lattice.rank == 4)
            f12 = L.discriminant_form(lb.lattice)
            target = Q.parse_form_expression(pair["form"])
            rep.add(scope, "line 12 form", Q.is_isomorphic(f12, target),
                    pair["form"])
            named = parse_lattice_expression(pair["lattice_expression"])
            rep.add(scope, "line 12 lattice model",
                    Q.is_isomorphic(f12, L.discriminant_form(named)),
                    pair["lattice_expression"])
            dual_lat = parse_lattice_expression(pair["dual_lattice_expression"])
            fdual = L.discriminant_form(dual_lat)
            rep.add(scope, "dual lattice rank 16", dual_lat.rank == 16,
                    pair["dual_lattice_expression"])
            rep.add(scope, "mirror condition on (rank, form)",
                    L.mirror_check(lb.lattice.rank, f12, dual_lat.rank, fdual))
            rep.add(scope, "dual lattice determined by its invariants",
                    L.nikulin_unique(L.signature(dual_lat), fdual))
        return rep

    # -- sidecar cross-checks ----------------------------------------------

    def verify_sidecar(self) -> TableReport:
        rep = TableReport()
        tables = {4: {l.no: l for l in self.table(4)},
                  8: {l.no: l for l in self.table(8)},
                  12: {l.no: l for l in self.table(12)}}
        for table in self.sidecar():
            text = table["polynomial"]
            for entry in table["entries"]:
                for order_s, no in entry["lines"].items():
                    order = int(order_s)
                    line = tables[order].get(no)
                    scope = f"sidecar {text} n={order} line {no}"
                    if line is None:
                        rep.add(scope, "line exists", False)
                        continue
                    ok = (line.polynomial == text
                          and list(line.group_invariants) == entry["invariants"]
                          and list(line.group_generators) == entry["generators"])
                    rep.add(scope, "table line carries the sidecar group", ok)
        # the rank-6 / rank-14 generator conflict on the quartic Fermat lines
        disc = None
        with open(self.data_dir / "known_discrepancies.json", encoding="utf-8") as fh:
            disc = json.load(fh)["line20_63"]
        t4 = tables[4]
        l20, l63 = t4[disc["lines"][0]], t4[disc["lines"][1]]
        g20 = self.group_of(l20)
        g63 = self.group_of(l63)
        perm = next((list(p) for p in _all_perms()
                     if G.groups_equal(g20, G.permute_coordinates(g63, list(p)))),
                    None)
        section_gen = G.parse_symmetry(disc["section_generator"])
        in20 = section_gen in g20
        if perm is not None and l20.rank != l63.rank:
            rep.warn("n=4 lines 20/63", "generator assignment conflict",
                     f"the two curated groups are coordinate-permutation "
                     f"equivalent (via {perm}) yet the declared ranks differ "
                     f"({l20.rank} vs {l63.rank}); the rank-14 case text uses "
                     f"{disc['section_generator']}, which generates line 20's "
                     f"group (membership: {in20})",
                     citation=disc["citation"])
        else:
            rep.add("n=4 lines 20/63", "documented conflict reproduces", False,
                    "expected permutation equivalence with differing ranks")
        return rep

    # -- top level -----------------------------------------------------------

    def run_all(self, orders=None, line_no=None) -> TableReport:
        rep = TableReport()
        orders = sorted(orders) if orders else [4, 8, 12]
        for order in orders:
            lines = self.table(order)
            by_no = {l.no: l for l in lines}
            rep.add(f"n={order}", "table size",
                    len(lines) == EXPECTED_LINE_COUNTS[order],
                    f"{len(lines)} lines")
            involution_ok = all(
                (l.dual == "self") or (by_no[l.dual].dual == l.no)
                for l in lines)
            rep.add(f"n={order}", "dual relation is an involution", involution_ok)
            for l in lines:
                if line_no is not None and l.no != line_no:
                    continue
                rep.extend(self.verify_line(l))
                rep.extend(self.verify_dual_laws(l))
                dual = l if l.dual == "self" else by_no[l.dual]
                rep.extend(self.verify_mirror_pair(l, dual))
            if line_no is None:
                rep.extend(self.verify_equivalence_classes(order))
                rep.extend(self.verify_nol(order))
        if line_no is None:
            for case in self.exceptional_cases():
                if case["order"] in orders:
                    rep.extend(self.verify_exceptional(case))
            rep.extend(self.verify_worked_examples(
                None if orders == [4, 8, 12] else orders[0]))
            if 4 in orders:
                rep.extend(self.verify_sidecar())
        return rep


def _all_perms():
    import itertools
    return sorted(itertools.permutations(range(4)))


def parse_lattice_expression(expr: str) -> L.GramLattice:
    """'+'-separated named lattices, each optionally rescaled: "U+D_4+A_2",
    "U(2)", "<4>+A_3"."""
    total = L.EMPTY_LATTICE
    for part in expr.split("+"):
        part = part.strip()
        scale = 1
        if part.endswith(")") and "(" in part and not part.startswith("T"):
            base, _, tail = part.rpartition("(")
            scale = int(tail[:-1])
            part = base.strip()
        lat = L.named_lattice(part)
        if scale != 1:
            lat = L.rescale(lat, scale)
        total = L.direct_sum_lattice(total, lat)
    return total
