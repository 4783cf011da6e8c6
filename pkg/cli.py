#!/usr/bin/env python3

import argparse
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from qholo.errors import QHoloError
from qholo.holonomy import (
    RecursionAnsatz,
    SequenceTable,
    build_table,
    conjecture_report,
    search_recursion,
    specialization_suite,
    verify_recursion,
)
from qholo.ladder import Ladder, evaluate
from qholo.link import (
    ColorSpec,
    ColoredBraid,
    braid_from_dict,
    colored_homfly,
    framing_record,
    parse_braid,
    renormalize,
)
from qholo.poly import LaurentPoly, RationalFn, a_to_q_power
from qholo.qweyl import OreOperator
from qholo.skein import skein_homfly
from qholo.suites import CheckOptions, run_suites
from qholo.web import Web, validate_web
from utils import (
    get_config_int,
    get_config_list,
    get_config_value,
    list_jobs,
    load_json_file,
    make_document,
    render,
    save_json_file,
)

ROOT = Path(__file__).resolve().parent


# -- settings -------------------------------------------------------------


def _setting(args, key: str, default: Any = None) -> Any:
    """CLI flag first, then QHOLO_<KEY>, the job config and jobs/base.toml"""
    value = getattr(args, key, None)
    if value is not None:
        return value
    try:
        return get_config_value(key, args.job, default)
    except ValueError:
        return default


def _int_setting(args, key: str, default: int) -> int:
    value = getattr(args, key, None)
    value = int(value) if value is not None else get_config_int(key, args.job, default)
    if value < 0:
        raise ValueError(f"Setting '{key}' must be nonnegative, got {value}")
    return value


def _ns_setting(args) -> List[int]:
    if args.Ns is not None:
        return [int(n) for n in args.Ns.split(",") if n.strip()]
    return [int(n) for n in get_config_list("Ns", args.job, [2, 3, 4])]


def _read_braid(args) -> ColoredBraid:
    if getattr(args, "braid", None):
        return parse_braid(args.braid)
    if getattr(args, "file", None):
        return braid_from_dict(load_json_file(args.file))
    configured = _setting(args, "braid")
    if configured is None:
        raise ValueError("No braid given: use --braid, --file or a job with a braid")
    if isinstance(configured, dict):
        return braid_from_dict(configured)
    return parse_braid(str(configured))


def _color_spec(args) -> Optional[ColorSpec]:
    text = _setting(args, "colors")
    if text is None:
        return None
    if isinstance(text, list):
        text = ",".join(str(c) for c in text)
    return ColorSpec.parse(str(text))


def _emit(document: Dict[str, Any], args) -> None:
    fmt = _setting(args, "format", "json")
    if args.out:
        if fmt == "json":
            save_json_file(document, args.out)
        else:
            with open(args.out, "w") as f:
                f.write(render(document, fmt) + "\n")
        print(f"Wrote {args.out}", file=sys.stderr)
    else:
        print(render(document, fmt))


def _value_record(value) -> Dict[str, Any]:
    return {"text": str(value), "data": value.to_dict()}


# -- compute --------------------------------------------------------------


def _framed_value(b: ColoredBraid, spec: Optional[ColorSpec], framing: str):
    framed = RationalFn.coerce(colored_homfly(b, spec))
    return framed, (renormalize(framed, b, spec) if framing == "zero" else framed)


def cmd_compute(args) -> Dict[str, Any]:
    if args.what == "web-eval":
        return _compute_web(args)
    framing = _setting(args, "framing", "zero")

    b = _read_braid(args)
    if args.what == "table":
        spec = _color_spec(args)
        table = build_table(
            b,
            axis=_int_setting(args, "axis", 0),
            n_max=_int_setting(args, "n_max", 4),
            shape=spec.shape if spec else _setting(args, "shape", "column"),
            fixed=spec.sizes if spec else (),
            framing=framing,
            workers=_int_setting(args, "workers", 1),
        )
        return make_document("compute table", b.to_dict(), table.to_dict(), framing=framing)

    if args.what == "homfly":
        b = ColoredBraid(b.strands, b.word, (1,) * b.strands, b.name)
        spec = None
    else:
        spec = _color_spec(args)
    framed, value = _framed_value(b, spec, framing)
    result: Dict[str, Any] = {
        "value": _value_record(value),
        "framed_value": _value_record(framed),
        "framing": framing_record(b, spec),
    }
    if spec is not None:
        result["colors"] = str(spec)
    if args.what == "homfly":
        result["skein_oracle_agrees"] = (skein_homfly(b) - framed).is_zero()
    if args.at is not None:
        result["value_at_N"] = {
            "N": args.at,
            **_value_record(value.substitute(a_to_q_power(args.at)).to_laurent()),
        }
    return make_document(f"compute {args.what}", b.to_dict(), result, framing=framing)


def _compute_web(args) -> Dict[str, Any]:
    if not args.file:
        raise ValueError("compute web-eval needs --file with a web or ladder document")
    data = load_json_file(args.file)
    if "rungs" in data:
        item = Ladder(
            tuple(int(c) for c in data["colors"]),
            tuple((int(i), str(x), int(r)) for i, x, r in data["rungs"]),
        )
    else:
        item = validate_web(Web.from_dict(data))
    value = evaluate(item, args.at)
    result = {"value": _value_record(value)}
    if args.at is not None:
        result["N"] = args.at
    return make_document("compute web-eval", data, result)


# -- recur ----------------------------------------------------------------


def _read_table(args) -> SequenceTable:
    if args.file:
        data = load_json_file(args.file)
        if "values" in data:
            return SequenceTable.from_dict(data)
    b = _read_braid(args)
    spec = _color_spec(args)
    return build_table(
        b,
        axis=_int_setting(args, "axis", 0),
        n_max=_int_setting(args, "n_max", 4),
        shape=spec.shape if spec else _setting(args, "shape", "column"),
        fixed=spec.sizes if spec else (),
        framing=_setting(args, "framing", "zero"),
        workers=_int_setting(args, "workers", 1),
        name=args.job,
    )


def cmd_recur(args) -> Dict[str, Any]:
    table = _read_table(args)
    bounds = RecursionAnsatz(
        _int_setting(args, "order", 1),
        _int_setting(args, "m_degree", 2),
        _int_setting(args, "a_degree", 2),
        _int_setting(args, "q_degree", 2),
    )
    held_out = _int_setting(args, "held_out", 2)
    search = search_recursion(table, bounds, held_out, _int_setting(args, "min_identities", 1))
    result: Dict[str, Any] = {"table": table.name, "n_max": table.n_max, "search": search.to_dict()}
    if search.found:
        P = search.operator
        result["operator_text"] = str(P)
        result["verify"] = verify_recursion(P, table, search.unseen).to_dict()
        result["specialization"] = specialization_suite(P, table, _ns_setting(args)).to_dict()
        apoly = _setting(args, "apoly")
        if apoly:
            path = Path(apoly)
            if not path.is_absolute() and not path.exists():
                path = ROOT / path
            result["conjecture"] = conjecture_report(P, path, with_gcd=args.gcd).to_dict()
    else:
        print("⭕ No recursion found within the ansatz", file=sys.stderr)
    inputs = {"table": table.name, "ansatz": list(bounds.rank), "held_out": held_out}
    return make_document("recur", inputs, result, framing=table.framing)


# -- check ----------------------------------------------------------------


def cmd_check(args) -> Dict[str, Any]:
    opts = CheckOptions(
        trials=_int_setting(args, "trials", 100),
        seed=_int_setting(args, "seed", 0),
        max_crossings=_int_setting(args, "max_crossings", 8),
    )
    results = run_suites(args.suites or ["all"], opts)
    summary = {
        "passed": all(r.passed for r in results),
        "suites": [r.to_dict() for r in results],
    }
    inputs = {"suites": args.suites or ["all"], "trials": opts.trials, "max_crossings": opts.max_crossings}
    return make_document("check", inputs, summary, seed=opts.seed)


# -- convert --------------------------------------------------------------


def _detect_kind(data: Dict[str, Any]) -> str:
    if "algebra" in data:
        return "operator"
    if "num" in data:
        return "rational"
    if "vertices" in data or "loops" in data:
        return "web"
    if "strands" in data:
        return "braid"
    if "values" in data:
        return "table"
    if "terms" in data:
        return "poly"
    raise ValueError("Cannot tell which kind of document this is")


_KINDS = {
    "poly": LaurentPoly,
    "rational": RationalFn,
    "operator": OreOperator,
    "web": Web,
    "table": SequenceTable,
}


def cmd_convert(args) -> Dict[str, Any]:
    if not args.file:
        raise ValueError("convert needs --file")
    data = load_json_file(args.file)
    kind = args.kind or _detect_kind(data)
    if kind == "braid":
        obj = braid_from_dict(data)
        again = braid_from_dict(obj.to_dict())
    elif kind in _KINDS:
        obj = _KINDS[kind].from_dict(data)
        again = _KINDS[kind].from_dict(obj.to_dict())
    else:
        raise ValueError(f"Unknown kind '{kind}'")
    result = {
        "kind": kind,
        "text": str(obj) if kind != "web" else obj.canonical_code(),
        "data": obj.to_dict(),
        "round_trip": again == obj,
    }
    return make_document("convert", data, result)


# -- entry point ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Colored HOMFLY polynomials and their q-holonomic recursions"
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--job", "-j", type=str, help="Load jobs/<JOB>/config.toml")
    common.add_argument("--out", "-o", type=str, help="Write the document here instead of stdout")
    common.add_argument("--format", choices=["json", "text"], help="Output format (default: json)")
    common.add_argument("--seed", type=int, help="Seed for randomized runs")

    inputs = argparse.ArgumentParser(add_help=False)
    inputs.add_argument("--braid", "-b", type=str, help='Braid, e.g. "s=2; w=[1,1,1]; colors=[1,1]"')
    inputs.add_argument("--file", "-f", type=str, help="Input document (braid, web, table)")
    inputs.add_argument("--colors", "-c", type=str, help='Color spec, e.g. "1^2" or "(2),(1)"')
    inputs.add_argument("--nmax", dest="n_max", type=int, help="Last color of the table")
    inputs.add_argument("--framing", choices=["zero", "blackboard"], help="Framing of values")
    inputs.add_argument("--workers", type=int, help="Process pool size for tables")

    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", parents=[common, inputs], help="Evaluate one invariant")
    compute.add_argument("what", choices=["homfly", "colored", "web-eval", "table"])
    compute.add_argument("--at", type=int, help="Also give the value at a = q^N")

    recur = sub.add_parser("recur", parents=[common, inputs], help="Find and check a recursion")
    recur.add_argument("--order", type=int, help="Largest recursion order to try")
    recur.add_argument("--mdeg", dest="m_degree", type=int, help="Largest M exponent")
    recur.add_argument("--adeg", dest="a_degree", type=int, help="Largest a exponent")
    recur.add_argument("--qdeg", dest="q_degree", type=int, help="Largest q exponent")
    recur.add_argument("--held-out", dest="held_out", type=int, help="Values kept out of the fit")
    recur.add_argument("--Ns", type=str, help="Comma-separated N for a = q^N checks")
    recur.add_argument("--apoly", type=str, help="A-polynomial JSON for the conjecture report")
    recur.add_argument("--gcd", action="store_true", help="Report the common factor with A(M, L)")

    check = sub.add_parser("check", parents=[common], help="Run the invariant suites")
    check.add_argument("suites", nargs="*", help="Suite names (default: all)")
    check.add_argument("--trials", type=int, help="Random trials per suite")
    check.add_argument("--max-crossings", dest="max_crossings", type=int, help="Corpus size bound")

    convert = sub.add_parser("convert", parents=[common], help="Re-render a document")
    convert.add_argument("--file", "-f", type=str, help="Document to convert")
    convert.add_argument(
        "--kind", choices=["poly", "rational", "operator", "web", "braid", "table"]
    )
    return parser


COMMANDS = {
    "compute": cmd_compute,
    "recur": cmd_recur,
    "check": cmd_check,
    "convert": cmd_convert,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand; returns the process exit status"""
    args = build_parser().parse_args(argv)

    if args.job and args.job not in list_jobs():
        print(f"Job '{args.job}' not found.", file=sys.stderr)
        print("Available jobs:", file=sys.stderr)
        for name in list_jobs():
            print(f"  {name}", file=sys.stderr)
        return 1
    if args.seed is not None:
        print(f"Seed: {args.seed}", file=sys.stderr)

    try:
        document = COMMANDS[args.command](args)
    except QHoloError as e:
        print(f"Error in {args.command}: {e}", file=sys.stderr)
        print(render({"error": e.to_record()}, "json"))
        return 1
    except (ValueError, KeyError, FileNotFoundError) as e:
        print(f"Error in {args.command}: {e}", file=sys.stderr)
        print(render({"error": {"code": "invalid-input", "message": str(e)}}, "json"))
        return 1

    _emit(document, args)
    if args.command == "check" and not document["result"]["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
