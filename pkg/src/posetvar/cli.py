"""Command line interface: ``posetvar <command> FILE [options]``.

Exit codes: 0 success, 1 input or syntax error, 2 precondition violated,
3 arithmetic overflow, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

from . import dimension as dm
from . import ffield as ff
from . import forms as fm
from .errors import InternalInconsistencyError, InvalidDimensionsError, PosetVarError
from .fileformat import PosetFile, dot_export, parse_poset_file
from .matrix import IntMatrix, format_matrix, frobenius_factors, incidence_inverse, incidence_matrix, mobius_matrix

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_OVERFLOW, EXIT_BUDGET = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


class Output:
    def __init__(self, as_json: bool, stream=None):
        self.as_json = as_json
        self.stream = stream or sys.stdout
        self.lines: list[str] = []
        self.data: dict = {}

    def text(self, line: str = "") -> None:
        self.lines.append(line)

    def emit(self) -> None:
        if self.as_json:
            self.stream.write(json.dumps(self.data, indent=2, sort_keys=True) + "\n")
        elif self.lines:
            self.stream.write("\n".join(self.lines) + "\n")


def _matrix_json(M: IntMatrix) -> list[list[int]]:
    return M.to_rows()


def _vec(pf: PosetFile, args) -> fm.DimVector:
    return pf.vector(args.vector)


def cmd_validate(pf, args, out):
    P = pf.poset
    out.text(f"ok: {len(P)} elements, {len(P.hasse_covers())} covers, height {P.height}")
    out.data = {"elements": list(P.labels), "covers": [list(c) for c in P.hasse_covers()],
                "height": P.height, "vectors": sorted(pf.vectors)}


def cmd_levels(pf, args, out):
    P = pf.poset
    levels = P.levels()
    for i, lvl in zip(range(P.height, 0, -1), levels):
        out.text(f"T{i}: {' '.join(lvl)}")
    out.data = {"height": P.height, "levels": [list(lvl) for lvl in levels]}


def _matrix_cmd(builder):
    def run(pf, args, out):
        M = builder(pf.poset)
        out.text(format_matrix(M))
        out.data = {"order": list(pf.poset.level_order), "matrix": _matrix_json(M)}
    return run


def cmd_factors(pf, args, out):
    entries = []
    for i, (F, Finv) in enumerate(frobenius_factors(pf.poset), start=1):
        out.text(f"F_{i}:")
        out.text(format_matrix(F))
        out.text(f"F_{i}^-1:")
        out.text(format_matrix(Finv))
        entries.append({"i": i, "F": _matrix_json(F), "F_inv": _matrix_json(Finv)})
    if not entries:
        out.text("no factors (height <= 1)")
    out.data = {"order": list(pf.poset.level_order), "factors": entries}


def _forms_report(P, alpha) -> dict:
    adm = fm.is_admissible(P, alpha)
    return {"Q": fm.euler_form(P, alpha), "c": adm.coordinates,
            "admissible": adm.admissible, "violations": adm.violations}


def cmd_euler(pf, args, out):
    report = _forms_report(pf.poset, _vec(pf, args))
    out.text(f"Q = {report['Q']}")
    out.data = report


def cmd_admissible(pf, args, out):
    report = _forms_report(pf.poset, _vec(pf, args))
    out.text("admissible" if report["admissible"] else "not admissible: " + "; ".join(report["violations"]))
    out.data = report


def cmd_coordinate(pf, args, out):
    P, alpha = pf.poset, _vec(pf, args)
    c = fm.coordinate_vector(P, alpha)
    for s in P.labels:
        out.text(f"c[{s}] = {c[s]}")
    out.data = {"c": c}


def cmd_tits(pf, args, out):
    P = pf.poset
    T = fm.tits_matrix(P)
    out.text(format_matrix(T))
    out.data = {"order": ["0"] + list(P.level_order), "matrix": _matrix_json(T)}
    if pf.vectors:
        alpha = _vec(pf, args)
        c = fm.coordinate_vector(P, alpha)
        value = fm.tits_form(P, fm.DimVector(alpha.alpha0, c))
        out.text(f"Qhat(alpha0; c) = {value}")
        out.data["Qhat"] = value


def cmd_iterate(pf, args, out):
    P, alpha = pf.poset, _vec(pf, args)
    trace = fm.iteration_sequence(P, alpha)
    levels = P.levels()
    for k, vec in enumerate(trace, start=1):
        it = iter(vec)
        blocks = [" ".join(str(next(it)) for _ in lvl) for lvl in levels]
        out.text(f"alpha^({k}) = {' | '.join(blocks)}")
    out.data = {"order": list(P.level_order), "trace": [list(v) for v in trace]}


def cmd_dim(pf, args, out):
    P, alpha = pf.poset, _vec(pf, args)
    if args.recursive:
        report = dm.variety_dim_recursive(P, alpha)
        closed = dm.variety_dim(P, alpha)
        if closed.dim_variety != report.dim_variety:
            raise InternalInconsistencyError(
                f"recursion gives {report.dim_variety}, closed form {closed.dim_variety}")
    else:
        report = dm.variety_dim(P, alpha)
    line = f"dim R = {report.dim_variety}, Q = {report.q_value}, dim GL = {report.gl_dim}"
    out.text(line + (" (recursive)" if args.recursive else ""))
    if args.recursive and args.trace:
        for i, st in enumerate(report.recursion_trace, start=1):
            out.text(f"step {i}: x = {st.x}, X = {st.X}, fiber Gr({st.fiber[0]}, {st.fiber[1]}) "
                     f"dim {st.fiber_dim}, remaining dim {st.remaining_dim}")
    data = report.as_dict()
    if not (args.recursive and args.trace):
        data.pop("steps", None)
    out.data = data


def cmd_sum_dim(pf, args, out):
    value = dm.generic_sum_dim(pf.poset, _vec(pf, args))
    out.text(f"X = {value}")
    out.data = {"X": value}


def cmd_lemma2(pf, args, out):
    defect = dm.lemma2_defect(pf.poset, args.x, _vec(pf, args))
    if defect:
        raise InternalInconsistencyError(f"Euler-form drop identity fails at {args.x}: defect {defect}")
    out.text(f"defect = {defect}")
    out.data = {"x": args.x, "defect": defect}


def cmd_summand_scan(pf, args, out):
    P, alpha = pf.poset, _vec(pf, args)
    result = fm.summand_scan(P, alpha, budget=args.budget)
    if result.passed:
        out.text(f"PASS ({result.checked} vectors checked)")
    else:
        out.text(f"FAIL: witness {result.witness.format(P.level_order)} with Q = {result.witness_q}")
    out.data = {"verdict": result.verdict, "checked": result.checked,
                "witness": None if result.passed else
                {"alpha0": result.witness.alpha0, "alpha": result.witness.alpha},
                "witness_Q": result.witness_q}


def cmd_count(pf, args, out):
    value = ff.count_points(pf.poset, _vec(pf, args), args.q, budget=args.budget)
    out.text(str(value))
    out.data = {"q": args.q, "count": value}


def cmd_fit_dim(pf, args, out):
    P, alpha = pf.poset, _vec(pf, args)
    try:
        primes = [int(x) for x in args.primes.split(",") if x.strip()]
    except ValueError:
        raise InvalidDimensionsError(f"bad prime list {args.primes!r}") from None
    claimed = args.claimed
    if claimed is None:
        claimed = alpha.alpha0 ** 2 - fm.euler_form(P, alpha)
    report = ff.fit_dimension(P, alpha, primes, claimed, budget=args.budget)
    out.text(f"{report.verdict}: claimed dim {claimed}, fitted degree {report.degree}")
    for p, c in report.counts.items():
        out.text(f"  q = {p}: {c}")
    out.text(f"note: {report.caveat}")
    out.data = report.as_dict()


def cmd_dot(pf, args, out):
    alpha = _vec(pf, args) if pf.vectors and not args.no_values else None
    out.lines.append(dot_export(pf.poset, alpha).rstrip("\n"))
    out.data = {"dot": dot_export(pf.poset, alpha)}


COMMANDS = {
    "validate": (cmd_validate, "check the file and print a summary"),
    "levels": (cmd_levels, "print the level partition T_h ... T_1"),
    "incidence": (_matrix_cmd(incidence_matrix), "incidence matrix in level order"),
    "inverse": (_matrix_cmd(incidence_inverse), "inverse incidence matrix via Frobenius factors"),
    "mobius": (_matrix_cmd(mobius_matrix), "Moebius function matrix"),
    "factors": (cmd_factors, "Frobenius factors and their inverses"),
    "euler": (cmd_euler, "Euler quadratic form"),
    "tits": (cmd_tits, "Tits matrix and form at (alpha0; c)"),
    "coordinate": (cmd_coordinate, "coordinate vector c = alpha C^-1"),
    "admissible": (cmd_admissible, "admissible-cone membership"),
    "iterate": (cmd_iterate, "iterated vectors alpha^(k)"),
    "dim": (cmd_dim, "dimension of the representation variety"),
    "sum-dim": (cmd_sum_dim, "generic dimension of the sum of top-level subspaces"),
    "lemma2-check": (cmd_lemma2, "check the Euler-form drop identity at a maximal element"),
    "summand-scan": (cmd_summand_scan, "check Q >= 1 on all summands"),
    "count": (cmd_count, "count points over F_q"),
    "fit-dim": (cmd_fit_dim, "fit point counts to a polynomial of the claimed degree"),
    "dot": (cmd_dot, "Graphviz DOT of the Hasse diagram"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="posetvar", description="Euler forms and dimensions of poset varieties.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, helptext) in COMMANDS.items():
        p = sub.add_parser(name, help=helptext)
        p.add_argument("file", help="poset file ('-' for stdin)")
        p.add_argument("--json", action="store_true", help="JSON output")
        p.add_argument("--vector", default=None, help="name of the dimension vector to use")
        if name == "dim":
            p.add_argument("--recursive", action="store_true", help="use the peeling recursion")
            p.add_argument("--trace", action="store_true", help="print each peeling step")
        elif name == "lemma2-check":
            p.add_argument("--x", required=True, help="maximal element to remove")
        elif name == "summand-scan":
            p.add_argument("--budget", type=int, default=fm.DEFAULT_SUMMAND_BUDGET)
        elif name == "count":
            p.add_argument("--q", type=int, required=True, help="prime field size")
            p.add_argument("--budget", type=int, default=ff.DEFAULT_COUNT_BUDGET)
        elif name == "fit-dim":
            p.add_argument("--primes", required=True, help="comma-separated primes")
            p.add_argument("--claimed", type=int, default=None,
                           help="claimed dimension (default alpha0^2 - Q)")
            p.add_argument("--budget", type=int, default=ff.DEFAULT_COUNT_BUDGET)
        elif name == "dot":
            p.add_argument("--no-values", action="store_true", help="omit dimension values from labels")
    return parser


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    out = Output(args.json, stdout)
    try:
        pf = parse_poset_file(_read(args.file), path=args.file)
        COMMANDS[args.command][0](pf, args, out)
    except OSError as exc:
        return _fail(out, stderr, EXIT_INPUT, "InputError", str(exc), [])
    except PosetVarError as exc:
        return _fail(out, stderr, exc.exit_code, type(exc).__name__, str(exc),
                     getattr(exc, "violations", []))
    out.emit()
    return EXIT_OK


def _fail(out: Output, stderr, code: int, kind: str, message: str, violations: list[str]) -> int:
    stderr.write(f"error: {message}\n")
    if out.as_json:
        payload = {"error": kind, "message": message, "exit_code": code}
        if violations:
            payload["violations"] = violations
        out.stream.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
