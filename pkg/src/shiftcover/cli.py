"""Command-line interface.

Exit codes: 0 success, 1 usage, 2 parse error, 3 work budget exceeded,
4 divisibility failure (wrong component count), 5 malformed matrix,
6 oracle disagreement.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import formats, linalg, symdyn, tqft
from .errors import (
    BudgetError,
    DivisibilityError,
    MalformedWordError,
    ParseError,
    ShiftcoverError,
)
from .knots import BraidWord, braid_closure_presentation, builtin, fibered_to_cobordism
from .presentations import (
    DEFAULT_WORK_BUDGET,
    branched_quotient_presentation,
    count_homs,
    hom_classes,
    enumerate_homs,
    mapping_torus_presentation,
)

EXIT_USAGE, EXIT_PARSE, EXIT_BUDGET, EXIT_DIVISIBILITY, EXIT_MATRIX, EXIT_ORACLE = 1, 2, 3, 4, 5, 6
BUDGET_ENV = "SHIFTCOVER_BUDGET"


class _MatrixInputError(ShiftcoverError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(args, record: dict, table: str) -> None:
    if args.format == "json":
        print(json.dumps(record, sort_keys=True))
    else:
        sys.stdout.write(table if table.endswith("\n") else table + "\n")


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return int(float(env))
        except ValueError:
            raise ParseError(f"{BUDGET_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_WORK_BUDGET


def _presentation(args):
    if args.presentation:
        return formats.parse_presentation(Path(args.presentation).read_text())
    if args.braid is not None:
        if args.strands is None:
            raise ParseError("--braid needs --strands")
        letters = formats.parse_word(args.braid) if args.braid.strip() else ()
        try:
            return braid_closure_presentation(BraidWord(args.strands, letters))
        except BudgetError:
            raise
        except ShiftcoverError as exc:
            raise ParseError(str(exc)) from None
    raise ParseError("give --presentation FILE or --braid WORD --strands N")


def _knot(args):
    if args.knot:
        try:
            return builtin(args.knot)
        except ShiftcoverError as exc:
            raise ParseError(str(exc)) from None
    if args.knot_file:
        return formats.parse_knot(Path(args.knot_file).read_text())
    return None


def _cobordism(args):
    """Cobordism data, whether the relative theory is requested, and the component count."""
    knot = _knot(args)
    if knot is not None:
        relative = args.theory != "closed"
        return fibered_to_cobordism(knot, relative), relative, args.mu or knot.mu, knot
    if args.cobordism:
        cob = formats.parse_cobordism(Path(args.cobordism).read_text())
        relative = cob.relative if args.theory is None else args.theory == "relative"
        return cob, relative, args.mu or 1, None
    raise ParseError("give --knot NAME, --knot-file FILE or --cobordism FILE")


def _matrix(args, cob_relative):
    cob, relative, mu, _ = cob_relative
    G = formats.load_group(args.group)
    if relative:
        return tqft.transfer_matrix_relative(cob, G, _budget(args)), G, mu
    return tqft.transfer_matrix(cob, G, _budget(args)), G, mu


def _poly_str(coeffs, ascending: bool = False) -> str:
    n = len(coeffs) - 1
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        p = i if ascending else n - i
        mono = "" if p == 0 else ("t" if p == 1 else f"t^{p}")
        mag = abs(c)
        body = (str(mag) if mono == "" else (mono if mag == 1 else f"{mag}{mono}"))
        terms.append(("-" if c < 0 else "+") + " " + body)
    if not terms:
        return "0"
    s = " ".join(terms)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


# ---- subcommands -------------------------------------------------------------

def cmd_homs(args) -> int:
    P = _presentation(args)
    G = formats.load_group(args.group)
    homs = enumerate_homs(P, G, _budget(args))
    record = {"homs": len(homs)}
    table = f"homs\t{len(homs)}\n"
    if args.classes:
        orbits = hom_classes(homs, G)
        record["classes"] = len(orbits)
        record["class_sizes"] = [len(o) for o in orbits]
        table += f"classes\t{len(orbits)}\nsizes\t{' '.join(str(len(o)) for o in orbits)}\n"
    if args.list:
        record["images"] = [list(h.images) for h in homs]
        table += "".join("\t".join(map(str, h.images)) + "\n" for h in homs)
    _emit(args, record, table)
    return 0


def cmd_classes(args) -> int:
    P = _presentation(args)
    G = formats.load_group(args.group)
    homs = enumerate_homs(P, G, _budget(args))
    orbits = hom_classes(homs, G)
    record = {
        "homs": len(homs),
        "classes": len(orbits),
        "orbits": [{"representative": list(homs[o[0]].images), "size": len(o)} for o in orbits],
    }
    lines = [f"homs\t{len(homs)}", f"classes\t{len(orbits)}", "representative\tsize"]
    lines += [f"{' '.join(map(str, homs[o[0]].images)) or 'e'}\t{len(o)}" for o in orbits]
    _emit(args, record, "\n".join(lines))
    return 0


def cmd_transfer(args) -> int:
    M, _, _ = _matrix(args, _cobordism(args))
    text = formats.matrix_json(M) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    if args.format == "json":
        sys.stdout.write(text)
    else:
        sys.stdout.write(f"theory {M.theory}\n" + formats.format_matrix(M.entries))
    return 0


def cmd_counts(args) -> int:
    M, G, mu = _matrix(args, _cobordism(args))
    cp = tqft.char_poly(M)
    degree = len(cp) - 1
    n_terms = max(args.dmax, 2 * degree) if args.verify_recursion else args.dmax
    traces = tqft.periodic_point_counts(M, n_terms)
    if M.theory == tqft.RELATIVE:
        derived = tqft.branched_cover_counts(M, G, mu, n_terms)
        column = "branched"
    else:
        derived = [G.order * t for t in traces]
        column = "cover"
    record = {
        "theory": M.theory,
        "group_order": G.order,
        "mu": mu,
        "dimension": M.shape[0],
        "charpoly": cp,
        "d": list(range(1, args.dmax + 1)),
        "trace": traces[:args.dmax],
        column: derived[:args.dmax],
    }
    lines = [f"d\ttrace\t{column}"]
    lines += [f"{d}\t{t}\t{c}" for d, t, c in zip(record["d"], traces, derived)]
    lines.append(f"charpoly\t{_poly_str(cp)}")
    status = 0
    if args.verify_recursion:
        check = tqft.verify_recursion(derived, cp)
        record["recursion"] = {"ok": check.ok, "terms": n_terms,
                               "first_violation_d": None if check.ok else check.first_violation + 1}
        lines.append(f"recursion\t{'ok' if check.ok else 'FAILED'}\t{n_terms} terms")
        status = 0 if check.ok else EXIT_ORACLE
    _emit(args, record, "\n".join(lines))
    return status


def _read_nn_matrix(path: str) -> symdyn.NNMatrix:
    try:
        rows = formats.parse_matrix(Path(path).read_text())
        M = symdyn.NNMatrix(rows)
    except (ParseError, ValueError, ShiftcoverError) as exc:
        raise _MatrixInputError(f"{path}: {exc}") from None
    if not M.is_square:
        raise _MatrixInputError(f"{path}: matrix must be square")
    return M


def cmd_sse(args) -> int:
    A = _read_nn_matrix(args.matrix_a)
    B = _read_nn_matrix(args.matrix_b)
    agree, differing = symdyn.invariants_agree(symdyn.shift_invariants(A),
                                               symdyn.shift_invariants(B))
    lines = [f"{f}\t{'differ' if f in differing else 'agree'}" for f in symdyn.INVARIANT_FIELDS]
    record = {"invariants": {f: f not in differing for f in symdyn.INVARIANT_FIELDS}}
    if not agree:
        verdict = f"NOT SSE (invariant {differing[0]})"
        record.update(verdict="not-sse", invariant=differing[0])
    else:
        result = symdyn.sse_search(A, B, args.max_depth, args.max_dim, args.entry_bound,
                                   args.max_work)
        record["search"] = {"status": result.status, "explored": result.explored}
        if result.found:
            cert = result.certificate
            verdict = f"SSE (certificate with {len(cert)} moves)"
            record.update(verdict="sse", certificate=[
                {"R": m.R.tolist(), "S": m.S.tolist(), "forward": f}
                for m, f in zip(cert.moves, cert.forward)])
            lines.append(formats.format_certificate(cert).rstrip())
        else:
            verdict = f"unknown within bounds ({result.status})"
            record["verdict"] = "unknown"
    lines.append(verdict)
    _emit(args, record, "\n".join(lines))
    return 0


def _invariants_record(inv: symdyn.ShiftInvariants) -> dict:
    return {
        "dimension": inv.dimension,
        "zeta": {"numerator": list(inv.zeta_numerator), "denominator": list(inv.zeta_denominator)},
        "cp_away_from_zero": list(inv.cp_away_from_zero),
        "bowen_franks": list(inv.bowen_franks),
        "invertible_part": [list(p) for p in inv.invertible_part],
    }


def cmd_invariants(args) -> int:
    if args.matrix:
        A = _read_nn_matrix(args.matrix)
    else:
        M, _, _ = _matrix(args, _cobordism(args))
        A = symdyn.NNMatrix(M.entries)
    inv = symdyn.shift_invariants(A)
    den = _poly_str(inv.zeta_denominator, ascending=True)
    lines = [
        f"dimension\t{inv.dimension}",
        f"zeta\t1 / ({den})",
        f"cp_away_from_zero\t{_poly_str(inv.cp_away_from_zero)}",
        f"bowen_franks\t{' '.join(map(str, inv.bowen_franks_group)) or 'trivial'}",
        "invertible_part\t" + ("; ".join(_poly_str(p) for p in inv.invertible_part) or "zero"),
    ]
    _emit(args, _invariants_record(inv), "\n".join(lines))
    return 0


def cmd_graph(args) -> int:
    M, G, _ = _matrix(args, _cobordism(args))
    if M.theory == tqft.RELATIVE:
        graph = tqft.graph_hat(M)
        if args.folded:
            graph = tqft.graph_folded(graph, G)
    else:
        graph = tqft.DirectedMultigraph(M.cols, linalg.transpose(M.entries))
    dot = tqft.to_dot(graph, edge_labels=args.edge_labels)
    if args.dot:
        Path(args.dot).write_text(dot)
    record = {"vertices": graph.vertex_count, "edges": graph.edge_count,
              "adjacency": [list(r) for r in graph.adjacency]}
    if args.dot or args.format == "json":
        _emit(args, record, f"vertices\t{graph.vertex_count}\nedges\t{graph.edge_count}")
    else:
        sys.stdout.write(dot)
    return 0


def cmd_oracle(args) -> int:
    knot = _knot(args)
    if knot is None:
        raise ParseError("oracle needs fibered data: --knot NAME or --knot-file FILE")
    G = formats.load_group(args.group)
    budget = _budget(args)
    mu = args.mu or knot.mu
    rel = tqft.transfer_matrix_relative(fibered_to_cobordism(knot, True), G, budget)
    closed = tqft.transfer_matrix(fibered_to_cobordism(knot, False), G, budget)
    rel_traces = tqft.periodic_point_counts(rel, args.dmax)
    closed_counts = tqft.cover_counts(closed, G, args.dmax)
    scale = G.order ** (mu - 1)
    rows, ok = [], True
    for d in range(1, args.dmax + 1):
        branched = count_homs(branched_quotient_presentation(knot.rank, knot.monodromy, d),
                              G, budget)
        torus = count_homs(mapping_torus_presentation(knot.rank, knot.monodromy, d), G, budget)
        agree = rel_traces[d - 1] == scale * branched and closed_counts[d - 1] == torus
        ok = ok and agree
        rows.append({"d": d, "relative_trace": rel_traces[d - 1], "branched_homs": branched,
                     "closed_count": closed_counts[d - 1], "mapping_torus_homs": torus,
                     "agree": agree})
    lines = ["d\trel_trace\tbranched_homs\tclosed_count\ttorus_homs\tagree"]
    lines += ["\t".join(str(r[k]) for k in ("d", "relative_trace", "branched_homs",
                                            "closed_count", "mapping_torus_homs", "agree"))
              for r in rows]
    _emit(args, {"knot": knot.name, "group_order": G.order, "mu": mu, "rows": rows, "ok": ok},
          "\n".join(lines))
    return 0 if ok else EXIT_ORACLE


# ---- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="shiftcover",
                     description="Finite-group TQFT transfer matrices and shift equivalence.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--budget", type=int, default=None,
                        help=f"enumeration work bound (env {BUDGET_ENV})")

    pres = _Parser(add_help=False)
    pres.add_argument("--group", "-g", required=True, help="group name or group file")
    pres.add_argument("--presentation", "-p")
    pres.add_argument("--braid", help='braid word, e.g. "1 1 1"')
    pres.add_argument("--strands", type=int)

    cob = _Parser(add_help=False)
    cob.add_argument("--group", "-g", required=True, help="group name or group file")
    cob.add_argument("--knot", help="built-in fibered knot: trefoil, figure8")
    cob.add_argument("--knot-file")
    cob.add_argument("--cobordism")
    cob.add_argument("--theory", choices=("relative", "closed"), default=None)
    cob.add_argument("--mu", type=int, default=None, help="number of link components")

    p = sub.add_parser("homs", parents=[common, pres], help="count homomorphisms")
    p.add_argument("--classes", action="store_true")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_homs)

    p = sub.add_parser("classes", parents=[common, pres], help="conjugation classes of homs")
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("transfer", parents=[common, cob], help="transfer matrix")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_transfer)

    p = sub.add_parser("counts", parents=[common, cob], help="cyclic / branched cover counts")
    p.add_argument("--dmax", type=int, default=6)
    p.add_argument("--verify-recursion", action="store_true")
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("sse", parents=[common], help="strong shift equivalence check")
    p.add_argument("matrix_a")
    p.add_argument("matrix_b")
    p.add_argument("--max-depth", type=int, default=3)
    p.add_argument("--max-dim", type=int, default=None)
    p.add_argument("--entry-bound", type=int, default=None)
    p.add_argument("--max-work", type=int, default=200_000)
    p.set_defaults(func=cmd_sse)

    p = sub.add_parser("invariants", parents=[common], help="shift-equivalence invariants")
    p.add_argument("--matrix")
    p.add_argument("--group", "-g")
    p.add_argument("--knot")
    p.add_argument("--knot-file")
    p.add_argument("--cobordism")
    p.add_argument("--theory", choices=("relative", "closed"), default=None)
    p.add_argument("--mu", type=int, default=None)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("graph", parents=[common, cob], help="edge-shift graph in DOT")
    p.add_argument("--folded", action="store_true")
    p.add_argument("--dot", help="write DOT here instead of stdout")
    p.add_argument("--edge-labels", action="store_true")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("oracle", parents=[common, cob], help="brute-force cross-check")
    p.add_argument("--dmax", type=int, default=4)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "command", None) == "invariants" and not args.matrix and not args.group:
            raise ParseError("invariants needs --matrix FILE or --group with a cobordism input")
        return args.func(args)
    except _MatrixInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATRIX
    except DivisibilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIVISIBILITY
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, MalformedWordError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ShiftcoverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
