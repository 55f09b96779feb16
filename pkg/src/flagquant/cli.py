"""Command-line front end.

Every command prints a human-readable report, or with ``--json`` a JSON
document ``{"schema_version": 1, "command": ..., "result": ...}``. Exit codes:
0 success, 1 verification or internal failure, 2 invalid input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

import jsonschema

from . import berezin as bz
from . import starprod as sp
from . import verify as vf
from .bbw import BBWError, bbw, duality_check
from .parabolic import build_parabolic, canonical_weight
from .rootsys import RootSystemError, Weight
from .smodule import SModuleError, SModulePoint, dual_smodule, inertia_index
from .symbolic import GaussRational, ParseError, parse_expr

SCHEMA_VERSION = 1

JOBFILE_SCHEMA: dict = {
    "type": "object",
    "required": ["schema_version", "jobs"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "jobs": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["command"],
                "additionalProperties": False,
                "properties": {
                    "command": {
                        "enum": ["bbw", "inertia", "dual", "canonical", "symbol", "star",
                                 "asymptotics", "suite"]
                    },
                    "family": {"type": "string", "pattern": "^[A-Ga-g]$"},
                    "rank": {"type": "integer", "minimum": 1},
                    "theta": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                    "weight": {"type": "string"},
                    "dual": {"type": "boolean"},
                    "n": {"type": "integer", "minimum": 0},
                    "word": {"type": "string"},
                    "f": {"type": "string"},
                    "g": {"type": "string"},
                    "order": {"type": "integer", "minimum": 0},
                    "scale": {"type": "string"},
                    "pair": {"enum": sorted(sp.ASYMPTOTIC_PAIRS)},
                    "ns": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                    "suite": {"enum": list(vf.SUITES) + ["all"]},
                },
            },
        },
    },
}


class UsageError(ValueError):
    """Invalid user input; maps to exit code 2."""


INPUT_ERRORS = (UsageError, RootSystemError, BBWError, SModuleError, ParseError,
                bz.BerezinError, sp.StarError)


# -- argument helpers ----------------------------------------------------------------------

def parse_theta(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        idx = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"theta must be comma-separated 1-based indices, got {text!r}") from None
    if any(i < 1 for i in idx):
        raise UsageError("theta indices are 1-based")
    return tuple(sorted({i - 1 for i in idx}))


def parse_weight(text: str, rank: int) -> Weight:
    try:
        w = Weight.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse weight {text!r}: {exc}") from None
    if len(w) != rank:
        raise UsageError(f"weight {text!r} has {len(w)} coordinates, rank is {rank}")
    return w


def _constant(text: str) -> GaussRational:
    e = parse_expr(text)
    if not e.is_constant():
        raise UsageError(f"{text!r} is not a constant")
    return e.constant_value()


def parse_eval(text: str | None):
    """``z=a,zbar=b`` (zbar defaults to the conjugate of z)."""
    if not text:
        return None
    vals = {}
    for part in text.split(","):
        if "=" not in part:
            raise UsageError(f"--eval expects z=a[,zbar=b], got {text!r}")
        k, v = (s.strip() for s in part.split("=", 1))
        if k not in ("z", "zbar"):
            raise UsageError(f"unknown variable {k!r} in --eval")
        vals[k] = _constant(v)
    if "z" not in vals:
        raise UsageError("--eval needs a value for z")
    return vals["z"], vals.get("zbar")


# -- command implementations (pure: params dict -> result dict) ---------------------------------

def _pd(p: dict):
    return build_parabolic((p["family"].upper(), p["rank"]), p.get("theta", ()))


def do_bbw(p: dict) -> dict:
    pd = _pd(p)
    lam = parse_weight(p["weight"], pd.rank)
    out = {"space": pd.describe(), "m": pd.m, "lambda": lam.to_json(), **bbw(pd, lam).to_json()}
    if p.get("dual"):
        out["duality"] = duality_check(pd, lam).to_json()
    return out


def do_inertia(p: dict) -> dict:
    pd = _pd(p)
    s = SModulePoint(pd, parse_weight(p["weight"], pd.rank))
    return {"space": pd.describe(), "m": pd.m, "lambda": s.lam.to_json(), "inertia": inertia_index(s)}


def do_dual(p: dict) -> dict:
    pd = _pd(p)
    s = SModulePoint(pd, parse_weight(p["weight"], pd.rank))
    d = dual_smodule(s)
    return {
        "space": pd.describe(),
        "m": pd.m,
        "lambda": s.lam.to_json(),
        "lambda_dual": d.lam.to_json(),
        "inertia": inertia_index(s),
        "inertia_dual": inertia_index(d),
    }


def do_canonical(p: dict) -> dict:
    pd = _pd(p)
    return {"space": pd.describe(), "m": pd.m, "canonical_weight": canonical_weight(pd).to_json()}


def _load_matrix(path: str, N: int) -> list[list[GaussRational]]:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read matrix file {path}: {exc}") from None
    if not isinstance(data, list) or len(data) != N or any(
        not isinstance(r, list) or len(r) != N for r in data
    ):
        raise UsageError(f"matrix file must hold a {N}x{N} list of lists")
    return [[_constant(str(x)) for x in row] for row in data]


def do_symbol(p: dict) -> dict:
    model = bz.Cp1Model(p["n"])
    out: dict[str, Any] = {"n": model.n}
    if p.get("matrix_file"):
        A = _load_matrix(p["matrix_file"], model.N)
        sym = bz.covariant_symbol(model, A)
        out["source"] = "matrix"
    else:
        word = bz.parse_word(p.get("word", ""))
        sym = bz.sigma_map(model, word)
        out["source"] = "word"
        out["word"] = "".join(word) or "1"
        out["agrees_with_matrix_symbol"] = sym == bz.covariant_symbol(model, bz.tau_word(model, word))
        out["trace"] = str(bz.trace(bz.tau_word(model, word)))
        out["N_integral"] = str(bz.exact_integral(sym) * model.N)
    out["symbol"] = str(sym)
    point = p.get("eval")
    if point is not None:
        out["value"] = str(sym.evaluate(*point))
    return out


def do_star(p: dict) -> dict:
    order = p.get("order")
    try:
        scale = Fraction(p.get("scale", "1"))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"invalid potential scale {p.get('scale')!r}") from None
    if scale == 0:
        raise UsageError("scale must be nonzero")
    ctx = sp.StarContext.fubini_study(scale, sp.default_order() if order is None else order)
    s = sp.star(ctx, p["f"], p["g"])
    out = {"f": str(parse_expr(p["f"])), "g": str(parse_expr(p["g"])), "scale": str(scale),
           **s.to_json(p.get("eval"))}
    return out


def do_asymptotics(p: dict) -> dict:
    ns = tuple(p.get("ns") or (8, 16, 32, 64))
    rep = sp.berezin_asymptotics(p.get("pair", "fH"), ns, jobs=p.get("jobs", 1))
    if p.get("csv"):
        Path(p["csv"]).write_text(rep.to_csv())
    return rep.to_json()


COMMANDS = {
    "bbw": do_bbw,
    "inertia": do_inertia,
    "dual": do_dual,
    "canonical": do_canonical,
    "symbol": do_symbol,
    "star": do_star,
    "asymptotics": do_asymptotics,
}


# -- output -------------------------------------------------------------------------------------

def _nested(v: Any) -> bool:
    if isinstance(v, dict):
        return True
    return isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v)


def _human(obj: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    items = obj.items() if isinstance(obj, dict) else ((f"[{i}]", v) for i, v in enumerate(obj))
    for k, v in items:
        if _nested(v):
            lines.append(f"{pad}{k}:")
            lines.extend(_human(v, indent + 1))
        else:
            lines.append(f"{pad}{k}: {_scalar(v)}")
    return lines


def _scalar(v: Any) -> str:
    if isinstance(v, list):
        return "(" + ",".join(_scalar(x) for x in v) + ")"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    return str(v)


def emit(command: str, result: dict, as_json: bool, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        doc = {"schema_version": SCHEMA_VERSION, "command": command, "result": result}
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        out.write("\n".join(_human(result)) + "\n")


# -- verify -------------------------------------------------------------------------------------

def load_jobfile(path: str) -> list[dict]:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read job file {path}: {exc}") from None
    try:
        jsonschema.validate(doc, JOBFILE_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise UsageError(f"invalid job file {path}: {exc.message}") from None
    return doc["jobs"]


def run_job(job: dict) -> dict:
    """Run one job-file entry; any input or verification problem marks it failed."""
    cmd = job["command"]
    params = dict(job)
    if "theta" in params:
        params["theta"] = tuple(sorted({i - 1 for i in params["theta"]}))
    try:
        if cmd == "suite":
            results = vf.run_cases(vf.cases_for(job["suite"], job.get("order", sp.default_order())))
            summ = vf.summarize(results)
            return {"job": job, "passed": summ["passed"], "result": summ}
        res = COMMANDS[cmd](params)
    except INPUT_ERRORS as exc:
        return {"job": job, "passed": False, "error": str(exc)}
    passed = res.get("passed", True) and res.get("agrees_with_matrix_symbol", True)
    if "duality" in res:
        passed = passed and res["duality"]["passed"]
    return {"job": job, "passed": bool(passed), "result": res}


def cmd_verify(args) -> int:
    if args.jobfile:
        jobs = load_jobfile(args.jobfile)
        if args.jobs > 1:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(args.jobs) as ex:
                records = list(ex.map(run_job, jobs))
        else:
            records = [run_job(j) for j in jobs]
        first = next((r for r in records if not r["passed"]), None)
        summary = {"passed": first is None, "jobs": len(records),
                   "failed": sum(not r["passed"] for r in records),
                   "first_failure": first}
        report = {"schema_version": SCHEMA_VERSION, "jobfile": args.jobfile,
                  "summary": summary, "records": records}
    else:
        order = args.order if args.order is not None else sp.default_order()
        cases = vf.cases_for(args.suite, order)
        results = vf.run_cases(cases, args.jobs)
        summary = vf.summarize(results)
        report = {"schema_version": SCHEMA_VERSION, "suite": args.suite,
                  "summary": summary, "cases": [r.to_json() for r in results]}
    if args.report:
        Path(args.report).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    emit("verify", summary, args.json)
    if not summary["passed"]:
        ff = summary["first_failure"]
        sys.stderr.write(f"FAILED: {json.dumps(ff, sort_keys=True)}\n")
        return 1
    return 0


# -- parser ---------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flagquant", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp_):
        sp_.add_argument("--json", action="store_true", help="emit JSON")

    def lie(sp_, weight=True):
        sp_.add_argument("-f", "--family", required=True, help="A..G")
        sp_.add_argument("-r", "--rank", required=True, type=int)
        sp_.add_argument("--theta", default="", help="comma-separated 1-based simple-root indices")
        if weight:
            sp_.add_argument("--weight", required=True,
                             help="comma-separated rationals in the fundamental-weight basis")
        common(sp_)

    b = sub.add_parser("bbw", help="cohomology of a line bundle on G/P")
    lie(b)
    b.add_argument("--dual", action="store_true", help="also run the Serre duality check")
    lie(sub.add_parser("inertia", help="inertia index of the pseudo-Kahler metric"))
    lie(sub.add_parser("dual", help="dual s-module -lambda - 2 delta'"))
    lie(sub.add_parser("canonical", help="weight of the canonical bundle"), weight=False)

    s = sub.add_parser("symbol", help="covariant symbol on CP^1 of a word in E, F, H or a matrix")
    s.add_argument("--n", type=int, required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--word")
    g.add_argument("--matrix-file", dest="matrix_file")
    s.add_argument("--eval", help="z=a[,zbar=b]")
    common(s)

    st = sub.add_parser("star", help="star-product coefficients C_r(f, g)")
    st.add_argument("--f", required=True)
    st.add_argument("--g", required=True)
    st.add_argument("--order", type=int, default=None,
                    help=f"truncation order (default ${sp.DEFAULT_ORDER_ENV} or 3)")
    st.add_argument("--n", dest="scale", default="1", help="potential n log(1+z zbar) (default 1)")
    st.add_argument("--eval", help="z=a[,zbar=b]")
    common(st)

    a = sub.add_parser("asymptotics", help="Berezin product versus C0 + C1/n")
    a.add_argument("--pair", default="fH", choices=sorted(sp.ASYMPTOTIC_PAIRS))
    a.add_argument("--ns", default="8,16,32,64")
    a.add_argument("--csv", help="write the error table as CSV")
    a.add_argument("--jobs", type=int, default=1)
    common(a)

    v = sub.add_parser("verify", help="run verification suites")
    grp = v.add_mutually_exclusive_group()
    grp.add_argument("--suite", default="all", choices=list(vf.SUITES) + ["all"])
    grp.add_argument("--jobfile")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--order", type=int, default=None)
    v.add_argument("--report", help="write per-case records to this JSON file")
    common(v)
    return p


def _params(args) -> dict:
    p = {k: v for k, v in vars(args).items() if v is not None}
    if "theta" in p:
        p["theta"] = parse_theta(p["theta"])
    if "eval" in p:
        p["eval"] = parse_eval(p["eval"])
    if "ns" in p and isinstance(p["ns"], str):
        try:
            p["ns"] = [int(x) for x in p["ns"].split(",")]
        except ValueError:
            raise UsageError(f"--ns must be comma-separated integers, got {p['ns']!r}") from None
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args)
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be at least 1")
        result = COMMANDS[args.command](_params(args))
    except INPUT_ERRORS as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ZeroDivisionError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except Exception as exc:  # noqa: BLE001 - top-level guard
        sys.stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return 1
    emit(args.command, result, args.json)
    if result.get("passed") is False or result.get("agrees_with_matrix_symbol") is False:
        return 1
    if "duality" in result and not result["duality"]["passed"]:
        return 1
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
