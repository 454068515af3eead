"""Command-line front end.

Every command reads one JSON object (from a file argument or standard
input) and prints one report.  Exit status is 0 on success and 2 on any
validation or computation error; errors are printed as
``{"error": {"code": ..., "message": ...}}``.

    cyclohodge analyze-cover cover.json
    cyclohodge classify-hg --format text <<< '{"alpha": "8/7", "beta": "3/7", "gamma": "9/7"}'
    cyclohodge run job.json
"""

from __future__ import annotations

import argparse
import json
import sys
from functools import lru_cache
from importlib import resources
from typing import Any, Callable, TextIO

import jsonschema

from .cover import BranchData, BranchPoint, cover_genus, eigenspace_table, hurwitz_base_genus, validate
from .errors import CycloHodgeError, SchemaError
from .exact import format_rational
from .fibration import (
    BaseCover,
    FibrationSpec,
    fujita_decomposition,
    hj_resolve,
    kodaira_degree_check,
    semistable_base_order,
)
from .hypergeometric import (
    HypergeometricParams,
    character_to_hg,
    exponent_differences,
    is_irreducible,
    local_orders,
    pairwise_nonresonant,
    resonance_tests_disagree,
    riemann_scheme,
)
from .monodromy import DEFAULT_BFS_BOUND, closure_bfs, finiteness_report, form_signatures, invariant_form, levelt_generators
from .schwarz import classify_params

COMMANDS = ("analyze-cover", "classify-hg", "monodromy", "resolve-sing", "reduce", "fujita-report", "kodaira-check")
JOB_VERSION = "cyclohodge.job/1"


@lru_cache(maxsize=1)
def schema() -> dict:
    text = (resources.files("cyclohodge") / "schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def _validator(*path: str) -> jsonschema.protocols.Validator:
    doc = schema()
    ref = {"$ref": "#/" + "/".join(["$defs", *path]), "$defs": doc["$defs"]}
    cls = jsonschema.validators.validator_for(doc)
    return cls(ref)


def _check(instance: Any, *path: str) -> None:
    errors = sorted(_validator(*path).iter_errors(instance), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        where = "/".join(str(p) for p in err.absolute_path) or "<root>"
        raise SchemaError(f"{where}: {err.message}")


def validate_input(command: str, body: Any) -> None:
    _check(body, "input", command)


def validate_output(command: str, report: Any) -> None:
    _check(report, "output", command)


# -- input conversion -----------------------------------------------------


def _branch(body: dict) -> BranchData:
    return BranchData(
        body["n"],
        tuple(BranchPoint(p["label"], p["m"], p.get("point")) for p in body["branch"]),
    )


def _params(body: dict) -> HypergeometricParams:
    if "alpha" in body:
        return HypergeometricParams.of(body["alpha"], body["beta"], body["gamma"])
    b = validate(_branch(body))
    return character_to_hg(b, body["j"], body.get("order"))


# -- commands -------------------------------------------------------------


def cmd_analyze_cover(body: dict, bound: int) -> dict:
    b = validate(_branch(body))
    table = eigenspace_table(b)
    return {
        "n": b.order,
        "branch": [{"label": p.label, "m": p.exponent} for p in b.branch],
        "genus": cover_genus(b),
        "dims": list(table.dims),
        "degrees": list(table.degrees),
        "rows": [
            {
                "j": r.j,
                "h10": r.h10,
                "h01": r.h01,
                "rank": r.rank,
                "eigensheaf_degree": r.eigensheaf_degree,
                "unitary_flat": r.unitary_flat,
                "local_exponents": [format_rational(mu.value) for mu in r.local_exponents],
            }
            for r in table
        ],
    }


def cmd_classify_hg(body: dict, bound: int) -> dict:
    p = _params(body)
    rs = riemann_scheme(p)
    orders = local_orders(p)
    base = {
        "params": p.to_json(),
        "irreducible": is_irreducible(p),
        "pairwise_nonresonant": pairwise_nonresonant(p),
        "resonance_tests_disagree": resonance_tests_disagree(p),
        "riemann_scheme": rs.to_json(),
        "exponent_differences": [format_rational(x) for x in exponent_differences(p).as_tuple()],
        "local_orders": list(orders.as_tuple()),
        "possibly_unipotent": list(orders.possibly_unipotent),
    }
    if not is_irreducible(p):
        base.update(
            finite=None,
            verdict="ReducibleNotApplicable",
            schwarz=classify_params(p).to_json(),
            interlacing=None,
            invariant_form=None,
            closure=None,
        )
        return base
    report = finiteness_report(p, bound).to_json()
    report.pop("params")
    base.update(report)
    return base


def cmd_monodromy(body: dict, bound: int) -> dict:
    p = _params(body)
    rep = levelt_generators(p)
    form = invariant_form(rep)
    sigs = form_signatures(form, rep.conductor) if form is not None else {}
    return {
        "rep": rep.to_json(),
        "invariant_form": None if form is None else form.to_json(),
        "form_signatures": {str(k): {"p": s.p, "q": s.q, "nullity": s.nullity} for k, s in sorted(sigs.items())},
        "closure": closure_bfs(rep, bound).to_json(),
    }


def cmd_resolve_sing(body: dict, bound: int) -> dict:
    s = hj_resolve((body["n"], body["q"]))
    return {
        "n": body["n"],
        "q": body["q"],
        "string": list(s.coefficients),
        "self_intersections": list(s.self_intersections()),
        "value": format_rational(s.value()),
    }


def cmd_reduce(body: dict, bound: int) -> dict:
    out: dict = {}
    if "multiplicities" in body:
        out["multiplicities"] = list(body["multiplicities"])
        out["base_order"] = semistable_base_order(body["multiplicities"])
    if "base_cover" in body:
        bc = body["base_cover"]
        out["cover_genus"] = hurwitz_base_genus(bc["degree"], bc.get("base_genus", 0), bc["ramification"])
    return out


def cmd_fujita_report(body: dict, bound: int) -> dict:
    return _fujita(body, bound).to_json()


def _fujita(body: dict, bound: int):
    cover = body.get("base_cover")
    local = body.get("singular_fiber_local_orders")
    spec = FibrationSpec(
        _branch(body["fiber"]),
        body["base_genus"],
        BaseCover(cover["degree"], dict(cover["ramification"])) if cover else None,
        {label: {int(j): o for j, o in per.items()} for label, per in local.items()} if local is not None else None,
    )
    return fujita_decomposition(spec, bound)


def cmd_kodaira_check(body: dict, bound: int) -> dict:
    return kodaira_degree_check(body["K2"], body["b"], body["g"], body["sigma"]).to_json()


HANDLERS: dict[str, Callable[[dict, int], dict]] = {
    "analyze-cover": cmd_analyze_cover,
    "classify-hg": cmd_classify_hg,
    "monodromy": cmd_monodromy,
    "resolve-sing": cmd_resolve_sing,
    "reduce": cmd_reduce,
    "fujita-report": cmd_fujita_report,
    "kodaira-check": cmd_kodaira_check,
}


# -- text rendering -------------------------------------------------------


def render_text(command: str, body: dict, report: dict, bound: int) -> str:
    if command == "fujita-report":
        return _fujita(body, bound).render_text()
    if command == "analyze-cover":
        lines = [f"cyclic cover of order {report['n']}, genus {report['genus']}", "", " j  h10  h01  deg L_j  flat"]
        for r in report["rows"]:
            lines.append(f"{r['j']:>2}  {r['h10']:>3}  {r['h01']:>3}  {r['eigensheaf_degree']:>7}  {'yes' if r['unitary_flat'] else 'no'}")
        return "\n".join(lines)
    if command == "classify-hg":
        p = report["params"]
        lines = [f"alpha={p['alpha']} beta={p['beta']} gamma={p['gamma']}", f"verdict: {report['verdict']}"]
        for key in ("schwarz", "interlacing"):
            if report.get(key):
                lines.append(f"  {key}: {report[key]['type']} ({report[key]['witness']})")
        if report.get("closure"):
            c = report["closure"]
            lines.append(f"  closure: {c['stop_reason']} after {c['elements_explored']} elements")
        if report.get("discrepancy"):
            lines.append(f"  DISCREPANCY: {report['discrepancy']}")
        return "\n".join(lines)
    return "\n".join(f"{k}: {_flat(v)}" for k, v in sorted(report.items()))


def _flat(v: Any) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)


# -- driver ---------------------------------------------------------------


def execute(command: str, body: Any, bound: int = DEFAULT_BFS_BOUND) -> dict:
    """Validate, run and validate again; raises CycloHodgeError subclasses."""
    if command not in HANDLERS:
        raise SchemaError(f"unknown command {command!r}")
    validate_input(command, body)
    report = HANDLERS[command](body, bound)
    validate_output(command, report)
    return report


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def _error(code: str, message: str, out: TextIO) -> int:
    out.write(dumps({"error": {"code": code, "message": message}}) + "\n")
    return 2


def _read_json(source: str, stdin: TextIO) -> Any:
    if source == "-":
        return json.load(stdin)
    with open(source, encoding="utf-8") as fh:
        return json.load(fh)


def _run_one(command: str, body: Any, bound: int, fmt: str, out: TextIO) -> int:
    try:
        report = execute(command, body, bound)
        text = render_text(command, body, report, bound) if fmt == "text" else dumps(report)
    except CycloHodgeError as exc:
        return _error(exc.code, str(exc), out)
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        return _error("INVALID_INPUT", str(exc), out)
    out.write(text + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclohodge", description="Hodge and monodromy data of cyclic covers.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in (*COMMANDS, "run"):
        p = sub.add_parser(name)
        p.add_argument("input", nargs="?", default="-", help="JSON file, or - for standard input")
        p.add_argument("--bfs-bound", type=int, default=None, help=f"closure search bound (default {DEFAULT_BFS_BOUND})")
        p.add_argument("--format", choices=("json", "text"), default=None)
    return parser


def main(argv: list[str] | None = None, stdin: TextIO | None = None, stdout: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        data = _read_json(args.input, stdin)
    except (OSError, json.JSONDecodeError) as exc:
        return _error("INVALID_JSON", str(exc), stdout)

    bound, fmt, command, body = args.bfs_bound, args.format, args.command, data
    if command == "run":
        try:
            _check(data, "job")
        except SchemaError as exc:
            return _error(exc.code, str(exc), stdout)
        command, body = data["command"], data["input"]
        opts = data.get("options", {})
        bound = bound if bound is not None else opts.get("bfs_bound")
        fmt = fmt if fmt is not None else opts.get("format")
    bound = bound if bound is not None else DEFAULT_BFS_BOUND
    if bound < 1:
        return _error("SCHEMA_VIOLATION", "bfs bound must be at least 1", stdout)
    return _run_one(command, body, bound, fmt or "json", stdout)


if __name__ == "__main__":
    sys.exit(main())
