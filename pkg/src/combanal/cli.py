"""Command-line surface: every library operation behind a subcommand.

Exit codes: 0 success, 1 domain error (infeasible input, guard refusal),
2 usage error.  Results go to stdout, diagnostics to stderr; identical
argv produces byte-identical output.  Formats: text (default), json
(stable key order), csv (header row), svg (pattern subcommands only).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import compositions as cp
from . import divisors as dv
from . import invariants as iv
from . import masterthm as mt
from . import partitions as pt
from . import patterns as pa
from . import probelect as pe
from . import recreations as rc
from .exactcore import MultiPoly, TruncationBoundError

MAX_WORK_ENV = "COMBANAL_MAX_WORK"


@dataclass
class CommandResult:
    text: str
    json_obj: object = None
    csv_rows: Optional[List[List]] = None
    svg: Optional[str] = None

    def render(self, fmt: str) -> str:
        if fmt == "text":
            return self.text if self.text.endswith("\n") else self.text + "\n"
        if fmt == "json":
            if self.json_obj is None:
                raise UsageError("this subcommand has no json output")
            return json.dumps(self.json_obj, sort_keys=True, separators=(",", ":")) + "\n"
        if fmt == "csv":
            if self.csv_rows is None:
                raise UsageError("this subcommand has no csv output")
            return "\n".join(",".join(str(v) for v in row) for row in self.csv_rows) + "\n"
        if fmt == "svg":
            if self.svg is None:
                raise UsageError("this subcommand has no svg output")
            return self.svg
        raise UsageError(f"unknown format {fmt}")


class UsageError(Exception):
    pass


def _ints(text: str) -> List[int]:
    return [int(v) for v in text.replace(" ", "").split(",") if v != ""]


def _fraction(text: str) -> Fraction:
    return Fraction(text)


def _vector_parts(text: str) -> List[tuple]:
    return [tuple(_ints(part)) for part in text.split(";") if part]


def _profile(text: str) -> pa.EdgeProfile:
    pts = []
    for pair in text.split(";"):
        x, y = pair.split(",")
        pts.append((Fraction(x), Fraction(y)))
    return pa.EdgeProfile.from_coords(pts)


def parse_coeff_poly(expr: str, p: int) -> MultiPoly:
    """Parse sums of integer-coefficient monomials in a0..ap, x, y.

    Grammar per term: [+-][int*]factor(*factor)* with factor = name[^k].
    Example: "a0*a2 - a1^2" or "-3*a0*a1*a2 + 2*a1^3".
    """
    names = iv.avar_names(p, with_xy="x" in expr or "y" in expr)
    cleaned = expr.replace(" ", "").replace("-", "+-")
    out = MultiPoly.zero(names)
    for term in cleaned.split("+"):
        if not term:
            continue
        coeff = Fraction(1)
        if term.startswith("-"):
            coeff = Fraction(-1)
            term = term[1:]
        exp = [0] * len(names)
        for factor in term.split("*"):
            if not factor:
                raise UsageError(f"empty factor in {expr!r}")
            if factor.lstrip("-").replace("/", "").isdigit():
                coeff *= Fraction(factor)
                continue
            if "^" in factor:
                name, power = factor.split("^")
                power = int(power)
            else:
                name, power = factor, 1
            if name not in names:
                raise UsageError(f"unknown symbol {name!r} for order {p}")
            exp[names.index(name)] += power
        out = out + MultiPoly.monomial(names, tuple(exp), coeff)
    return out


def _poly_text(poly: MultiPoly) -> str:
    return str(poly)


# ---------------------------------------------------------------------------
# handlers


def cmd_partition(args) -> CommandResult:
    sub = args.action
    if sub == "count":
        if args.pattern:
            value = pt.relation_pattern_count(args.n, args.pattern.split(","))
        elif args.elements:
            value = pt.cayley_denumerant(_ints(args.elements), args.n)
        elif args.euler_primes is not None:
            a, b = pt.generalized_euler_counts(set(_ints(args.euler_primes)), args.n)
            return CommandResult(f"{a} {b}", {"distinct": a, "odd": b})
        elif args.parts is not None:
            value = pt.warburton_count(args.n, args.parts, args.min_part)
        else:
            value = pt.count_partitions(args.n)
        return CommandResult(str(value), int(value))
    if sub == "enum":
        constraint = pt.PartitionConstraint(
            max_part=args.max_part,
            num_parts=args.parts,
            min_part=args.min_part,
            distinct=args.distinct,
            allowed_parts=frozenset(_ints(args.allowed)) if args.allowed else None,
        )
        items = pt.enumerate_partitions(args.n, constraint)
        lines = [" ".join(map(str, p)) if p else "()" for p in items]
        return CommandResult(
            "\n".join(lines) if lines else "(none)",
            [list(p) for p in items],
            csv_rows=[["partition"]] + [["+".join(map(str, p))] for p in items],
        )
    if sub == "table":
        if args.demorgan is not None:
            x = args.demorgan
            row = [pt.demorgan_u(x, y) for y in range(1, x + 1)]
            return CommandResult(" ".join(map(str, row)), row)
        if args.u2 is not None:
            return CommandResult(str(pt.closed_form_u2(args.u2)), pt.closed_form_u2(args.u2))
        if args.u3 is not None:
            return CommandResult(str(pt.closed_form_u3(args.u3)), pt.closed_form_u3(args.u3))
        rows = [[n, pt.count_partitions(n)] for n in range(args.n + 1)]
        text = "\n".join(f"{n:>4} {v}" for n, v in rows)
        return CommandResult(text, {str(n): v for n, v in rows}, csv_rows=[["n", "p"]] + rows)
    if sub == "conj":
        conj = pt.conjugate(tuple(_ints(args.parts)))
        return CommandResult(" ".join(map(str, conj)), list(conj))
    if sub == "modular":
        rows = pt.modular_partition(tuple(_ints(args.parts)), args.mod)
        lines = ["".join(str(v) for v in row) for row in rows]
        return CommandResult("\n".join(lines), [list(r) for r in rows])
    if sub == "parity":
        if args.digits:
            digits = pt.macmahon_digits(args.digits)
            return CommandResult(digits, digits)
        value = pt.parity_p(args.n)
        return CommandResult(value, value)
    if sub == "perfect":
        items = pt.enumerate_perfect(args.n)
        lines = [" ".join(map(str, p)) for p in items]
        return CommandResult("\n".join(lines), [list(p) for p in items])
    if sub == "plane":
        if args.xy is not None:
            poly = pt.xy_symmetric_two_layer_poly(args.xy)
            terms = sorted(poly.items())
            text = " + ".join(
                (f"{c}x^{w}" if c != 1 else f"x^{w}") for w, c in terms
            )
            return CommandResult(text, {str(w): c for w, c in terms})
        if args.boxed:
            l_text, m_text, c_text = args.boxed.split(",")
            l = None if l_text in ("inf", "-1") else int(l_text)
            value = pt.count_boxed_plane_partitions(
                args.n, l, int(m_text), int(c_text),
                cell_cap=args.max_work or pt.DEFAULT_BOX_CELL_CAP,
            )
            return CommandResult(str(value), value)
        if args.enum:
            items = pt.enumerate_plane_partitions(args.n)
            lines = ["/".join("".join(map(str, row)) for row in pp) for pp in items]
            return CommandResult("\n".join(lines), [[list(r) for r in pp] for pp in items])
        value = pt.count_plane_partitions(args.n)
        return CommandResult(str(value), value)
    if sub == "scale":
        scale = pt.scale_of_numeration(tuple(_ints(args.alphas)))
        obj = {
            "alphas": list(scale.alphas),
            "place_values": list(scale.place_values),
            "limit": scale.limit,
            "partition": list(scale.partition()),
        }
        text = (
            f"places {' '.join(map(str, scale.place_values))}; "
            f"limit {scale.limit}; partition {' '.join(map(str, scale.partition()))}"
        )
        return CommandResult(text, obj)
    raise UsageError(f"unknown partition action {sub}")


def cmd_compose(args) -> CommandResult:
    sub = args.action
    if sub == "enum":
        items = cp.enumerate_compositions(args.n)
        lines = [" ".join(map(str, c)) for c in items]
        return CommandResult("\n".join(lines), [list(c) for c in items])
    if sub == "conj":
        if ";" in args.parts:
            conj = cp.route_conjugate(_vector_parts(args.parts))
            text = " ".join("(" + ",".join(map(str, v)) + ")" for v in conj)
            return CommandResult(text, [list(v) for v in conj])
        parts = tuple(_ints(args.parts))
        if args.tree:
            tree = cp.composition_tree(parts)
            back = cp.tree_composition(tree)
            text = f"branches {len(tree.children)}; leaves {tree.leaf_count()}; round-trip {' '.join(map(str, back))}"
            return CommandResult(text, {"leaves": tree.leaf_count(), "round_trip": list(back)})
        conj = cp.conjugate_composition(parts)
        return CommandResult(" ".join(map(str, conj)), list(conj))
    if sub == "zigzag":
        conj = cp.zigzag_conjugate(tuple(_ints(args.parts)))
        return CommandResult(" ".join(map(str, conj)), list(conj))
    if sub == "newcomb":
        cap = args.max_work or cp.DEFAULT_NEWCOMB_CAP
        dist = cp.newcomb_distribution(_ints(args.counts), ascending=args.ascending, cap=cap)
        comp_rows = sorted(
            ((" ".join(map(str, comp)), n) for comp, n in dist.by_composition.items())
        )
        pack_rows = sorted(dist.by_pack_count.items())
        text = "\n".join(f"{comp}: {n}" for comp, n in comp_rows)
        text += "\n" + "\n".join(f"packs {m}: {n}" for m, n in pack_rows)
        return CommandResult(
            text,
            {
                "by_composition": {comp: n for comp, n in comp_rows},
                "by_pack_count": {str(m): n for m, n in pack_rows},
            },
            csv_rows=[["composition", "arrangements"]] + [list(r) for r in comp_rows],
        )
    if sub == "count":
        if args.order_k is not None:
            value = cp.combinations_order_k_count(args.p, args.order_k)
            return CommandResult(str(value), value)
        if args.q is None:
            raise UsageError("compose count needs q (or --order-k)")
        if args.essential:
            tally = cp.count_by_essential_nodes(args.p, args.q, cap=args.max_work or cp.DEFAULT_MULTIPARTITE_CAP)
            rows = sorted(tally.items())
            text = "\n".join(f"s={s}: {n}" for s, n in rows)
            return CommandResult(text, {str(s): n for s, n in rows})
        value = cp.bipartite_composition_count_gf(args.p, args.q)
        return CommandResult(str(value), value)
    raise UsageError(f"unknown compose action {sub}")


def cmd_master(args) -> CommandResult:
    sub = args.action
    if sub == "coeff":
        matrix = [_ints(row) for row in args.matrix.split(";")]
        if args.denominator:
            poly = mt.master_denominator(matrix)
            return CommandResult(_poly_text(poly), _poly_text(poly))
        degree = tuple(_ints(args.degree))
        cap = args.max_work or mt.DEFAULT_DEGREE_CAP
        value = mt.master_coefficient(matrix, degree, degree_cap=cap)
        text = str(value) if value.denominator != 1 else str(value.numerator)
        return CommandResult(text, text)
    if sub == "derange":
        value = mt.derangements(args.n)
        return CommandResult(str(value), value)
    if sub == "rencontres":
        value = mt.generalized_rencontres(args.m, tuple(_ints(args.shape)))
        return CommandResult(str(value), value)
    raise UsageError(f"unknown master action {sub}")


def cmd_invariant(args) -> CommandResult:
    sub = args.action
    if sub == "omega":
        poly = parse_coeff_poly(args.poly, args.p)
        return CommandResult(_poly_text(iv.omega(poly, args.p)))
    if sub == "oop":
        poly = parse_coeff_poly(args.poly, args.p)
        return CommandResult(_poly_text(iv.oop(poly, args.p)))
    if sub == "covariant":
        poly = parse_coeff_poly(args.seed, args.p)
        return CommandResult(_poly_text(iv.covariant_from_seed(poly, args.p)))
    if sub == "basis":
        if args.protomorphs is not None:
            sources = iv.protomorphs(args.p, args.protomorphs)
            return CommandResult("\n".join(_poly_text(s) for s in sources))
        basis = iv.seminvariant_basis(args.p, args.j, args.w)
        if not basis:
            return CommandResult("(empty)", [])
        return CommandResult("\n".join(_poly_text(b) for b in basis), [
            _poly_text(b) for b in basis
        ])
    if sub == "check":
        poly = parse_coeff_poly(args.poly, args.p)
        l, m, lp, mp = [Fraction(v) for v in args.transform.split(",")]
        ok, s = iv.invariance_check(poly, args.p, iv.LinearTransform2(l, m, lp, mp))
        text = f"{'invariant' if ok else 'not invariant'}" + (f" s={s}" if ok else "")
        return CommandResult(text, {"invariant": ok, "exponent": s})
    if sub == "weight":
        w = iv.invariant_weight(args.i, args.p)
        return CommandResult("infeasible" if w is None else str(w), w)
    if sub == "syzygant":
        if args.sources:
            sources = [parse_coeff_poly(e, args.p) for e in args.sources.split("|")]
        else:
            names = iv.avar_names(args.p)
            u = MultiPoly.variable(names, "a0")
            h = iv.quadrinvariant(args.p, 2)
            c3 = iv.odd_source(args.p, 3)
            q4 = iv.quadrinvariant(args.p, 4)
            sources = [h**3, c3**2, u**2 * h * q4]
        solutions = iv.syzygant_search(sources, args.k)
        if not solutions:
            return CommandResult("(no nonzero solution)", [])
        lines = []
        for sol in solutions:
            alphas = ",".join(str(a) for a in sol.alphas)
            lines.append(f"alphas ({alphas}); quotient {_poly_text(sol.quotient)}")
        return CommandResult("\n".join(lines))
    if sub == "roots":
        report = iv.roots_correspondence_check(args.p, args.trials, seed=args.seed)
        obj = {
            "trials": report.trials,
            "q2_identity_ok": report.q2_identity_ok,
            "prior_product_ok": report.prior_product_ok,
        }
        text = (
            f"trials {report.trials}: q2 {'ok' if report.q2_identity_ok else 'FAIL'}, "
            f"product {'ok' if report.prior_product_ok else 'FAIL'}"
        )
        return CommandResult(text, obj)
    raise UsageError(f"unknown invariant action {sub}")


def cmd_ballot(args) -> CommandResult:
    sub = args.action
    if sub == "ahead":
        value = pe.ballot_strictly_ahead(args.m, args.n)
    elif sub == "neverbehind":
        value = pe.ballot_never_behind(args.m, args.n)
    elif sub == "order":
        value = pe.macmahon_order_probability(pe.VoteTally(tuple(_ints(args.tally))))
    else:
        raise UsageError(f"unknown ballot action {sub}")
    return CommandResult(str(value), str(value))


def cmd_election(args) -> CommandResult:
    sub = args.action
    if sub == "prob":
        model = pe.ElectorateModel(args.b + args.c, args.b, args.c)
        value = pe.sample_prob_exact(model, args.p, args.q)
        return CommandResult(str(value), str(value))
    if sub == "approx":
        model = pe.ElectorateModel(args.b + args.c, args.b, args.c)
        c0, s_r = pe.sample_prob_approx(model, args.p, args.r)
        return CommandResult(f"C0 {c0:.6f}; S_r {s_r:.6f}", {"C0": c0, "S_r": s_r})
    if sub == "cubelaw":
        sa, sb = pe.cube_law_seats(args.va, args.vb, args.seats, exponent=args.exponent)
        return CommandResult(f"{sa} {sb}", [sa, sb])
    if sub == "simulate":
        if args.sizes_file:
            sizes = pe.read_constituency_sizes(args.sizes_file)
        else:
            sizes = [args.size] * args.constituencies
        report = pe.simulate_election(args.share, sizes, args.seed, mixing=args.mixing)
        return CommandResult(report.to_json(), json.loads(report.to_json()))
    raise UsageError(f"unknown election action {sub}")


def cmd_puzzle(args) -> CommandResult:
    sub = args.action
    if sub == "cubes":
        cubes = rc.generate_cubes(args.colors, args.mode)
        if args.associated is not None:
            cube = cubes[args.associated]
            mate = rc.associated_cube(cube)
            return CommandResult(
                f"{''.join(map(str, cube))} -> {''.join(map(str, mate))}",
                {"cube": list(cube), "associated": list(mate)},
            )
        lines = ["".join(map(str, c)) for c in cubes]
        return CommandResult(
            f"{len(cubes)}" if not args.list else "\n".join(lines),
            [list(c) for c in cubes],
        )
    if sub == "mayblox":
        cubes = rc.generate_cubes(6)
        if args.any:
            solution = rc.mayblox_solve_any()
            target = None
        else:
            target = cubes[args.target]
            solution = rc.mayblox_solve(target, exclude_associate=not args.include_associate)
        if solution is None:
            raise ValueError("no assembly found")
        ok = rc.verify_assembly(solution, target)
        obj = {
            "verified": ok,
            "placements": [
                {"position": list(pos), "cube": list(cube), "rotation": rot}
                for pos, cube, rot in solution.placements
            ],
        }
        lines = [
            f"{pos}: cube {''.join(map(str, cube))} rotation {rot}"
            for pos, cube, rot in solution.placements
        ]
        return CommandResult("\n".join(lines + [f"verified {ok}"]), obj)
    if sub == "triangles":
        tiles = rc.generate_squares(args.k) if args.squares else rc.generate_triangles(args.k)
        lines = ["".join(map(str, t)) for t in tiles]
        return CommandResult(
            f"{len(tiles)}" if not args.list else "\n".join(lines),
            [list(t) for t in tiles],
        )
    if sub == "hexagon":
        tiles = rc.generate_triangles(4)
        solution = rc.hexagon_solve(tiles, args.border)
        if solution is None:
            raise ValueError("no hexagon arrangement found")
        ok = rc.verify_hexagon(solution, tiles)
        obj = {
            "border_color": solution.border_color,
            "verified": ok,
            "placements": [
                {"cell": list(cell), "tile": list(tile), "rotation": rot}
                for cell, tile, rot in solution.placements
            ],
        }
        lines = [
            f"{cell}: tile {''.join(map(str, tile))} rotation {rot}"
            for cell, tile, rot in solution.placements
        ]
        return CommandResult("\n".join(lines + [f"verified {ok}"]), obj)
    if sub == "stamps":
        cap = args.max_work or rc.DEFAULT_STAMP_CAP
        value = rc.stamp_foldings(args.n, cap=cap)
        return CommandResult(str(value), value)
    if sub == "contacts":
        if args.list:
            systems = rc.enumerate_contact_systems(args.n)
            lines = [",".join(map(str, s)) for s in systems]
            return CommandResult("\n".join(lines), [list(s) for s in systems])
        value = rc.contact_system_count(args.n)
        return CommandResult(str(value), value)
    if sub == "latin":
        if args.total is not None:
            value = rc.latin_total_count(args.total)
        elif args.reduced is not None:
            value = rc.latin_reduced_count(args.reduced)
        else:
            raise UsageError("latin needs --reduced N or --total N")
        return CommandResult(str(value), value)
    if sub == "rod":
        marks = rc.measuring_rod(args.k)
        return CommandResult(" ".join(map(str, marks)), list(marks))
    if sub == "weights":
        weights = rc.weighing_set(args.u, args.pans)
        return CommandResult(" ".join(map(str, weights)), list(weights))
    if sub == "rooks":
        value = rc.rook_row_counts(args.n, args.k)
        return CommandResult(str(value), value)
    raise UsageError(f"unknown puzzle action {sub}")


def _named_tile(args) -> pa.RepeatTile:
    if args.cairo:
        return pa.cairo_tile()
    if args.base == "square" and args.contact is None:
        return pa.square_translation_tile()
    n = pa.BASES[args.base]
    if args.contact:
        pairs = dict()
        contact = list(range(n))
        for pair in args.contact.split(","):
            a, b = (int(v) for v in pair.split("-"))
            contact[a], contact[b] = b, a
        contact = tuple(contact)
    else:
        contact = tuple(range(n))
    profiles = (
        tuple(_profile(p) for p in args.profiles.split("|"))
        if args.profiles
        else (pa.STRAIGHT,) * n
    )
    return pa.build_repeat_tile(args.base, contact, profiles)


def cmd_pattern(args) -> CommandResult:
    sub = args.action
    if sub == "classify":
        profile = _profile(args.profile)
        cls = pa.classify_edge(profile)
        return CommandResult(cls, cls)
    if sub == "angles":
        ok = pa.angle_distribution_check([Fraction(v) for v in args.angles.split(",")])
        return CommandResult("repeat" if ok else "not-a-repeat", ok)
    if sub == "tile":
        tile = _named_tile(args)
        text = (
            f"base {tile.base}; contact {','.join(map(str, tile.contact))}; "
            f"area offset {tile.area_offset()}"
        )
        return CommandResult(text, {
            "base": tile.base,
            "contact": list(tile.contact),
            "area_offset": str(tile.area_offset()),
        })
    if sub == "tiling":
        tile = _named_tile(args)
        result = pa.generate_tiling(tile, args.extent)
        text = f"copies {len(result.placements)}; verified {result.verified}"
        return CommandResult(
            text,
            json.loads(result.to_placement_json()),
            svg=result.to_svg(),
        )
    if sub == "euler":
        if args.solid == "cube":
            report = pa.cube_deficiency_report()
        elif args.solid == "tetrahedron":
            report = pa.tetrahedron_deficiency_report()
        else:
            raise UsageError("solid must be cube or tetrahedron")
        text = (
            f"vertex sum {report.vertex_sum:.9f}; edge sum {report.edge_sum:.9f}; "
            f"equal {report.equal}"
        )
        return CommandResult(text, {
            "vertex_sum": report.vertex_sum,
            "edge_sum": report.edge_sum,
            "equal": report.equal,
            "euler_ok": report.euler_ok,
        })
    if sub == "tetra":
        tetra = pa.prism_midpoint_tetrahedron() if args.prism else pa.schoenflies_tetrahedron()
        squares = sorted(set(tetra.edge_lengths_squared()))
        ratio = Fraction(squares[1], squares[0])
        obj = {
            "vertices": [[str(c) for c in v] for v in tetra.vertices],
            "edge_ratio_squared": str(ratio),
            "volume": str(tetra.volume()),
        }
        text = (
            "vertices "
            + "; ".join(",".join(str(c) for c in v) for v in tetra.vertices)
            + f"; ratio^2 {ratio}; volume {tetra.volume()}"
        )
        return CommandResult(text, obj)
    raise UsageError(f"unknown pattern action {sub}")


def cmd_divisor(args) -> CommandResult:
    sub = args.action
    if sub == "series":
        if args.n is not None:
            value = dv.divisor_series_coeff(args.kind, args.n, args.k)
            return CommandResult(str(value), value)
        table = dv.divisor_table(args.kind, args.max_n, args.max_k)
        header = ["n"] + [f"k{k}" for k in range(1, args.max_k + 1)]
        rows = [[n + 1] + table[n] for n in range(args.max_n)]
        text = "\n".join(" ".join(str(v) for v in row) for row in rows)
        return CommandResult(text, {"kind": args.kind, "rows": rows}, csv_rows=[header] + rows)
    if sub == "sigma2":
        values = dv.sigma2_from_plane_partitions(args.bound)
        text = " ".join(map(str, values))
        return CommandResult(text, values, csv_rows=[["n", "sigma2"]] + [[i + 1, v] for i, v in enumerate(values)])
    if sub == "potency":
        if args.count is not None:
            value = dv.potency_count(args.count)
            return CommandResult(str(value), value)
        pt_, mt_ = dv.potency(args.n), dv.multiplicity(args.n)
        return CommandResult(f"{pt_} {mt_}", {"potency": pt_, "multiplicity": mt_})
    if sub == "factorize":
        value = dv.factorizations(args.m, ordered=args.ordered)
        return CommandResult(str(value), value)
    if sub == "totient":
        value = dv.totient_bipartite(args.n)
        return CommandResult(str(value), value)
    raise UsageError(f"unknown divisor action {sub}")


# ---------------------------------------------------------------------------
# parser

FORMATS = ("text", "json", "csv", "svg")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="combanal",
        description="Exact combinatory analysis: partitions, compositions, "
        "the condensed-determinant theorem, binary-form invariants, ballot "
        "problems, puzzles and repeating patterns.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=FORMATS, default="text")
        p.add_argument("--out", help="write output to this path instead of stdout")
        p.add_argument("--max-work", type=int, default=None, help="enumeration cap override")

    # partition
    p = sub.add_parser("partition")
    pa_ = p.add_subparsers(dest="action", required=True)
    q = pa_.add_parser("count")
    q.add_argument("n", type=int)
    q.add_argument("--parts", type=int, help="exact number of parts (recurrence-checked)")
    q.add_argument("--min-part", type=int, default=1)
    q.add_argument("--elements", help="count multisets from these elements instead")
    q.add_argument("--euler-primes", help="distinct-vs-odd counts avoiding these primes")
    q.add_argument("--pattern", help="adjacent relations, e.g. '>,>='")
    common(q)
    q = pa_.add_parser("enum")
    q.add_argument("n", type=int)
    q.add_argument("--max-part", type=int)
    q.add_argument("--parts", type=int)
    q.add_argument("--min-part", type=int, default=1)
    q.add_argument("--distinct", action="store_true")
    q.add_argument("--allowed", help="comma-separated allowed part values")
    common(q)
    q = pa_.add_parser("table")
    q.add_argument("n", type=int, nargs="?", default=20)
    q.add_argument("--demorgan", type=int, help="print row x of the greatest-part table")
    q.add_argument("--u2", type=int, help="closed form for greatest part 2")
    q.add_argument("--u3", type=int, help="closed form for greatest part 3")
    common(q)
    q = pa_.add_parser("conj")
    q.add_argument("parts")
    common(q)
    q = pa_.add_parser("modular")
    q.add_argument("parts")
    q.add_argument("--mod", type=int, required=True)
    common(q)
    q = pa_.add_parser("parity")
    q.add_argument("n", type=int, nargs="?", default=1)
    q.add_argument("--digits", type=int, help="emit this many binary parity digits")
    common(q)
    q = pa_.add_parser("perfect")
    q.add_argument("n", type=int)
    common(q)
    q = pa_.add_parser("plane")
    q.add_argument("n", type=int, nargs="?", default=0)
    q.add_argument("--enum", action="store_true")
    q.add_argument("--boxed", help="l,m,cmax bounds (l=-1 for unbounded entries)")
    q.add_argument("--xy", type=int, help="two-layer axis-symmetric polynomial for this bound")
    common(q)
    q = pa_.add_parser("scale")
    q.add_argument("alphas")
    common(q)

    # compose
    p = sub.add_parser("compose")
    pa_ = p.add_subparsers(dest="action", required=True)
    q = pa_.add_parser("enum")
    q.add_argument("n", type=int)
    common(q)
    q = pa_.add_parser("conj")
    q.add_argument("parts", help="unipartite '2,1,4' or bipartite '3,1;0,1;1,1'")
    q.add_argument("--tree", action="store_true", help="round-trip through the rooted tree")
    common(q)
    q = pa_.add_parser("zigzag")
    q.add_argument("parts")
    common(q)
    q = pa_.add_parser("newcomb")
    q.add_argument("counts", help="cards per value, e.g. '2,1'")
    q.add_argument("--ascending", action="store_true")
    common(q)
    q = pa_.add_parser("count")
    q.add_argument("p", type=int)
    q.add_argument("q", type=int, nargs="?")
    q.add_argument("--essential", action="store_true", help="tally by essential nodes")
    q.add_argument("--order-k", type=int, help="count order-k combinations instead")
    common(q)

    # master
    p = sub.add_parser("master")
    pa_ = p.add_subparsers(dest="action", required=True)
    q = pa_.add_parser("coeff")
    q.add_argument("--matrix", required=True, help="rows 'a,b;c,d'")
    q.add_argument("--degree", help="multidegree 'e1,e2,...'")
    q.add_argument("--denominator", action="store_true", help="print the determinant instead")
    common(q)
    q = pa_.add_parser("derange")
    q.add_argument("n", type=int)
    common(q)
    q = pa_.add_parser("rencontres")
    q.add_argument("m", type=int)
    q.add_argument("shape", help="multidegree 'e1,e2,...'")
    common(q)

    # invariant
    p = sub.add_parser("invariant")
    pa_ = p.add_subparsers(dest="action", required=True)
    for name in ("omega", "oop", "check"):
        q = pa_.add_parser(name)
        q.add_argument("poly", help="e.g. 'a0*a2-a1^2'")
        q.add_argument("--p", type=int, required=True)
        if name == "check":
            q.add_argument("--transform", required=True, help="'l,m,lp,mp'")
        common(q)
    q = pa_.add_parser("covariant")
    q.add_argument("seed")
    q.add_argument("--p", type=int, required=True)
    common(q)
    q = pa_.add_parser("basis")
    q.add_argument("p", type=int)
    q.add_argument("j", type=int, nargs="?")
    q.add_argument("w", type=int, nargs="?")
    q.add_argument("--protomorphs", type=int, help="list sources up to this weight instead")
    common(q)
    q = pa_.add_parser("weight")
    q.add_argument("i", type=int)
    q.add_argument("p", type=int)
    common(q)
    q = pa_.add_parser("syzygant")
    q.add_argument("--p", type=int, default=4)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--sources", help="'|'-separated coefficient polynomials")
    common(q)
    q = pa_.add_parser("roots")
    q.add_argument("--p", type=int, default=4)
    q.add_argument("--trials", type=int, default=20)
    q.add_argument("--seed", type=int, default=0)
    common(q)

    # ballot
    p = sub.add_parser("ballot")
    pa_ = p.add_subparsers(dest="action", required=True)
    for name in ("ahead", "neverbehind"):
        q = pa_.add_parser(name)
        q.add_argument("m", type=int)
        q.add_argument("n", type=int)
        common(q)
    q = pa_.add_parser("order")
    q.add_argument("tally", help="non-increasing counts '3,2,1'")
    common(q)

    # election
    p = sub.add_parser("election")
    pa_ = p.add_subparsers(dest="action", required=True)
    q = pa_.add_parser("prob")
    for name in ("b", "c", "p", "q"):
        q.add_argument(name, type=int)
    common(q)
    q = pa_.add_parser("approx")
    for name in ("b", "c", "p", "r"):
        q.add_argument(name, type=int)
    common(q)
    q = pa_.add_parser("cubelaw")
    q.add_argument("va", type=float)
    q.add_argument("vb", type=float)
    q.add_argument("seats", type=int)
    q.add_argument("--exponent", type=float, default=3.0)
    common(q)
    q = pa_.add_parser("simulate")
    q.add_argument("--share", type=float, required=True)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--mixing", type=float, default=1.0)
    q.add_argument("--sizes-file")
    q.add_argument("--constituencies", type=int, default=100)
    q.add_argument("--size", type=int, default=1000)
    common(q)

    # puzzle
    p = sub.add_parser("puzzle")
    pa_ = p.add_subparsers(dest="action", required=True)
    q = pa_.add_parser("cubes")
    q.add_argument("--colors", type=int, default=6)
    q.add_argument("--mode", choices=("all-distinct-faces", "any-coloring"), default="all-distinct-faces")
    q.add_argument("--list", action="store_true")
    q.add_argument("--associated", type=int, help="print the mirror partner of this index")
    common(q)
    q = pa_.add_parser("mayblox")
    q.add_argument("--target", type=int, default=0)
    q.add_argument("--any", action="store_true", help="target-free uniform assembly")
    q.add_argument("--include-associate", action="store_true")
    common(q)
    q = pa_.add_parser("triangles")
    q.add_argument("k", type=int)
    q.add_argument("--squares", action="store_true", help="four compartments instead of three")
    q.add_argument("--list", action="store_true")
    common(q)
    q = pa_.add_parser("hexagon")
    q.add_argument("--border", type=int, default=0)
    common(q)
    q = pa_.add_parser("stamps")
    q.add_argument("n", type=int)
    common(q)
    q = pa_.add_parser("contacts")
    q.add_argument("n", type=int)
    q.add_argument("--list", action="store_true")
    common(q)
    q = pa_.add_parser("latin")
    q.add_argument("--reduced", type=int)
    q.add_argument("--total", type=int)
    common(q)
    q = pa_.add_parser("rod")
    q.add_argument("k", type=int)
    common(q)
    q = pa_.add_parser("weights")
    q.add_argument("u", type=int)
    q.add_argument("--pans", choices=("one", "two"), default="one")
    common(q)
    q = pa_.add_parser("rooks")
    q.add_argument("n", type=int)
    q.add_argument("k", type=int)
    common(q)

    # pattern
    p = sub.add_parser("pattern")
    pa_ = p.add_subparsers(dest="action", required=True)
    q = pa_.add_parser("classify")
    q.add_argument("profile", help="points '0,0;1/2,1/4;1,0'")
    common(q)
    q = pa_.add_parser("angles")
    q.add_argument("angles", help="interior angles as fractions of pi, e.g. '1/3,1/3,1/3'")
    common(q)
    for name in ("tile", "tiling"):
        q = pa_.add_parser(name)
        q.add_argument("--cairo", action="store_true")
        q.add_argument("--base", choices=tuple(pa.BASES), default="square")
        q.add_argument("--contact", help="pairs like '0-2,1-3'")
        q.add_argument("--profiles", help="'|'-separated profiles")
        if name == "tiling":
            q.add_argument("--extent", type=int, default=2)
        common(q)
    q = pa_.add_parser("euler")
    q.add_argument("solid", choices=("cube", "tetrahedron"))
    common(q)
    q = pa_.add_parser("tetra")
    q.add_argument("--prism", action="store_true", help="the prism-midpoint variant")
    common(q)

    # divisor
    p = sub.add_parser("divisor")
    pa_ = p.add_subparsers(dest="action", required=True)
    q = pa_.add_parser("series")
    q.add_argument("kind", choices=dv.SERIES_KINDS)
    q.add_argument("--n", type=int)
    q.add_argument("--k", type=int, default=1)
    q.add_argument("--max-n", type=int, default=16)
    q.add_argument("--max-k", type=int, default=5)
    common(q)
    q = pa_.add_parser("sigma2")
    q.add_argument("bound", type=int)
    common(q)
    q = pa_.add_parser("potency")
    q.add_argument("n", type=int, nargs="?", default=1)
    q.add_argument("--count", type=int, help="count integers with this potency instead")
    common(q)
    q = pa_.add_parser("factorize")
    q.add_argument("m", type=int)
    q.add_argument("--ordered", action="store_true")
    common(q)
    q = pa_.add_parser("totient")
    q.add_argument("n", type=int)
    common(q)

    return parser


HANDLERS = {
    "partition": cmd_partition,
    "compose": cmd_compose,
    "master": cmd_master,
    "invariant": cmd_invariant,
    "ballot": cmd_ballot,
    "election": cmd_election,
    "puzzle": cmd_puzzle,
    "pattern": cmd_pattern,
    "divisor": cmd_divisor,
}

# Audit table: every library operation and the subcommand that reaches it
# (possibly indirectly, as with the series machinery behind master coeff).
OPERATION_COVERAGE = {
    "exactcore.poly_det": "master coeff --denominator",
    "exactcore.series_inverse": "master coeff",
    "exactcore.coeff": "master coeff",
    "exactcore.linsolve_rational": "invariant syzygant",
    "partitions.enumerate_partitions": "partition enum",
    "partitions.count_partitions": "partition count",
    "partitions.demorgan_u": "partition table --demorgan",
    "partitions.closed_form_u2": "partition table --u2",
    "partitions.closed_form_u3": "partition table --u3",
    "partitions.warburton_count": "partition count --parts",
    "partitions.cayley_denumerant": "partition count --elements",
    "partitions.conjugate": "partition conj",
    "partitions.modular_partition": "partition modular",
    "partitions.parity_p": "partition parity",
    "partitions.macmahon_digits": "partition parity --digits",
    "partitions.enumerate_perfect": "partition perfect",
    "partitions.scale_of_numeration": "partition scale",
    "partitions.generalized_euler_counts": "partition count --euler-primes",
    "partitions.relation_pattern_count": "partition count --pattern",
    "partitions.enumerate_plane_partitions": "partition plane --enum",
    "partitions.count_plane_partitions": "partition plane",
    "partitions.plane_partition_gf": "divisor sigma2",
    "partitions.count_boxed_plane_partitions": "partition plane --boxed",
    "partitions.xy_symmetric_two_layer_poly": "partition plane --xy",
    "compositions.enumerate_compositions": "compose enum",
    "compositions.conjugate_composition": "compose conj",
    "compositions.enumerate_multipartite_compositions": "compose count --essential",
    "compositions.bipartite_composition_count_gf": "compose count",
    "compositions.route_conjugate": "compose conj (vector parts)",
    "compositions.count_by_essential_nodes": "compose count --essential",
    "compositions.zigzag_conjugate": "compose zigzag",
    "compositions.composition_tree": "compose conj --tree",
    "compositions.combinations_order_k_count": "compose count --order-k",
    "compositions.newcomb_distribution": "compose newcomb",
    "masterthm.master_denominator": "master coeff --denominator",
    "masterthm.master_coefficient": "master coeff",
    "masterthm.derangements": "master derange",
    "masterthm.generalized_rencontres": "master rencontres",
    "invariants.omega": "invariant omega",
    "invariants.oop": "invariant oop",
    "invariants.covariant_from_seed": "invariant covariant",
    "invariants.seminvariant_basis": "invariant basis",
    "invariants.invariance_check": "invariant check",
    "invariants.invariant_weight": "invariant weight",
    "invariants.protomorphs": "invariant basis --protomorphs",
    "invariants.syzygant_search": "invariant syzygant",
    "invariants.roots_correspondence_check": "invariant roots",
    "probelect.ballot_strictly_ahead": "ballot ahead",
    "probelect.ballot_never_behind": "ballot neverbehind",
    "probelect.macmahon_order_probability": "ballot order",
    "probelect.sample_prob_exact": "election prob",
    "probelect.sample_prob_approx": "election approx",
    "probelect.cube_law_seats": "election cubelaw",
    "probelect.taagepera_exponent": "election cubelaw --exponent",
    "probelect.cube_root_seat_rule": "election cubelaw",
    "probelect.simulate_election": "election simulate",
    "recreations.generate_cubes": "puzzle cubes",
    "recreations.associated_cube": "puzzle cubes --associated",
    "recreations.mayblox_solve": "puzzle mayblox",
    "recreations.generate_triangles": "puzzle triangles",
    "recreations.generate_squares": "puzzle triangles --squares",
    "recreations.hexagon_solve": "puzzle hexagon",
    "recreations.stamp_foldings": "puzzle stamps",
    "recreations.contact_system_count": "puzzle contacts",
    "recreations.enumerate_contact_systems": "puzzle contacts --list",
    "recreations.latin_reduced_count": "puzzle latin --reduced",
    "recreations.measuring_rod": "puzzle rod",
    "recreations.weighing_set": "puzzle weights",
    "recreations.rook_row_counts": "puzzle rooks",
    "patterns.classify_edge": "pattern classify",
    "patterns.build_repeat_tile": "pattern tile",
    "patterns.generate_tiling": "pattern tiling",
    "patterns.angle_distribution_check": "pattern angles",
    "patterns.euler_deficiency_check": "pattern euler",
    "patterns.schoenflies_tetrahedron": "pattern tetra",
    "divisors.divisor_series_coeff": "divisor series",
    "divisors.sigma2_from_plane_partitions": "divisor sigma2",
    "divisors.potency": "divisor potency",
    "divisors.multiplicity": "divisor potency",
    "divisors.potency_count": "divisor potency --count",
    "divisors.factorizations": "divisor factorize",
    "divisors.totient_bipartite": "divisor totient",
}


def dispatch(argv: Sequence[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if getattr(args, "max_work", None) is None:
        env = os.environ.get(MAX_WORK_ENV)
        if env is not None:
            try:
                args.max_work = int(env)
            except ValueError:
                print(f"invalid {MAX_WORK_ENV}: {env!r}", file=sys.stderr)
                return 2
    try:
        result = HANDLERS[args.command](args)
        rendered = result.render(args.format)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, TruncationBoundError, ZeroDivisionError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(rendered)
    else:
        sys.stdout.write(rendered)
    return 0


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
