"""Command-line front end: ``ddqec {catalog,validate,ddgs,cost,sequence,verify,plan}``.

Every command builds a JSON-able dict first; the human table is printed
from that dict.  Exit codes: 0 success, 1 verification/validation failure,
2 usage error, 3 resource refusal.
"""
import argparse
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .codes import (
    InvalidCodeError, catalog, cat_state_stabilizers, concatenate, count_parameters,
    default_catalog, loads_code, validate,
)
from .ddgs import (
    CostModel, DdgsResult, concatenated_sldd, cost, custom_ddgs, full_pauli_ddgs,
    plan_domains, sldd,
)
from .pauli import DenseLimitError
from .sequences import build_sequence, identity_sequence
from .verifier import BranchAmbiguityError, decoupling_order_fit, log_grid, random_noise

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_REFUSED = 0, 1, 2, 3
BUNDLED = ("echo-n1", "rep3-sldd-cdd1", "identity-baseline", "nudd2-xz")


class UsageError(Exception):
    pass


def dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True)


def _table(rows, columns):
    widths = [max(len(str(c)), *(len(str(r[c])) for r in rows)) for c in columns]
    lines = ["  ".join(str(c).ljust(w) for c, w in zip(columns, widths))]
    lines += ["  ".join(str(r[c]).ljust(w) for c, w in zip(columns, widths)) for r in rows]
    return "\n".join(lines)


# -- commands -----------------------------------------------------------------

def cmd_catalog(args):
    rows = []
    for code in default_catalog():
        rows.append({"name": code.name, "n": code.n, "k": code.k, "r": code.r, "d": code.d,
                     "Q": code.Q, "sldd_size": sldd(code).size, "full_pauli_size": 2 * code.n})
    return {"codes": rows}, _table, ["name", "n", "k", "r", "d", "Q", "sldd_size", "full_pauli_size"]


def cmd_validate(args):
    if args.file:
        text = Path(args.file).read_text()
        try:
            code = loads_code(text)
            report = []
        except InvalidCodeError as exc:
            return {"source": args.file, "valid": False, "report": exc.report}, None, None
    else:
        code = catalog(args.code)
        report = validate(code)
    return {"source": args.file or args.code, "name": code.name, "parameters": code.label(),
            "valid": not report, "report": report}, None, None


def resolve_ddgs(spec):
    kind = spec.get("kind", "sldd")
    if kind == "full_pauli":
        return full_pauli_ddgs(int(spec["n_qubits"]))
    if kind == "sldd":
        code = catalog(spec["code"])
        R = int(spec.get("R", 1))
        return sldd(code) if R == 1 else concatenated_sldd(concatenate(code, R))
    if kind == "cat":
        return DdgsResult(cat_state_stabilizers(int(spec["a"])), "custom", (f"cat({spec['a']})",))
    if kind == "custom":
        return custom_ddgs(spec["generators"], spec.get("n_qubits"))
    raise UsageError(f"unknown ddgs kind {kind!r}")


def _ddgs_spec(args):
    if args.generators:
        return {"kind": "custom", "generators": args.generators.split(",")}
    if args.full_pauli:
        return {"kind": "full_pauli", "n_qubits": args.full_pauli}
    if args.cat:
        return {"kind": "cat", "a": args.cat}
    if args.code:
        return {"kind": "sldd", "code": args.code, "R": args.R}
    raise UsageError("give --code, --full-pauli, --cat or --generators")


def cmd_ddgs(args):
    return resolve_ddgs(_ddgs_spec(args)).to_dict(), None, None


def cmd_cost(args):
    code = catalog(args.code)
    model = CostModel(args.family, args.N)
    if args.omega_size is not None:
        sizes = {"sldd": args.omega_size, "full": 2 * code.n ** args.R}
    else:
        counts = count_parameters(code.n, code.k, code.r, args.R)
        sizes = {"sldd": counts.omega_size, "full": 2 * counts.n_R}
    exponent = Fraction(sizes["sldd"], sizes["full"])
    out = {"code": code.name, "R": args.R, "family": model.family, "N": model.order,
           "f_of_N": model.f_of_N, "sldd_size": sizes["sldd"], "full_pauli_size": sizes["full"],
           "sldd_cost": str(cost(sizes["sldd"], model)), "full_pauli_cost": str(cost(sizes["full"], model)),
           "cost_exponent_ratio": str(exponent)}
    return out, None, None


def cmd_sequence(args):
    omega = resolve_ddgs(_ddgs_spec(args))
    seq = build_sequence(args.family, omega, args.N)
    out = seq.to_dict()
    if args.out:
        Path(args.out).write_text(dump(out) + "\n")
    return out, None, None


def load_config(name_or_path):
    path = Path(name_or_path)
    if path.exists():
        return json.loads(path.read_text())
    if name_or_path in BUNDLED:
        return json.loads(resources.files("ddqec.configs").joinpath(f"{name_or_path}.json").read_text())
    raise UsageError(f"no config file or bundled config named {name_or_path!r}; bundled: {BUNDLED}")


def run_config(config, seed=None):
    """Run a verification config; returns the DecouplingReport."""
    omega = resolve_ddgs(config["ddgs"])
    family = config.get("family", "CDD")
    order = int(config.get("order", 1))
    nz = dict(config["noise"])
    if seed is not None:
        nz["seed"] = seed
    noise = random_noise(nz["n_sys"], nz.get("n_bath", 1), nz.get("locality", 1),
                         nz.get("J", 1.0), nz.get("seed", 0))
    if family.lower() == "none":
        seq = identity_sequence(omega.n_qubits)
    else:
        seq = build_sequence(family, omega, order)
    g = config.get("T_grid", {})
    grid = g if isinstance(g, list) else log_grid(g.get("min", 1e-3), g.get("max", 1e-1), g.get("points", 6))
    code = None
    if config.get("check_code"):
        code = catalog(config["ddgs"]["code"])
    return decoupling_order_fit(seq, noise, omega, grid,
                                target_order=config.get("target_order", order), code=code)


def cmd_verify(args):
    config = load_config(args.config)
    report = run_config(config, args.seed)
    out = report.to_dict()
    out["config"] = config
    out["seed_override"] = args.seed
    name = config.get("name", Path(args.config).stem)
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / f"{name}.json").write_text(dump(out) + "\n")
    (outdir / f"{name}.csv").write_text(report.to_csv())
    status = EXIT_OK if report.passed else EXIT_FAIL
    return out, None, None, status


def cmd_plan(args):
    if args.code:
        code = catalog(args.code)
        n, k, r = code.n, code.k, code.r
    else:
        if args.n is None:
            raise UsageError("give --code or --n/--k/--r")
        n, k, r = args.n, args.k, args.r
    model = CostModel(args.family, args.N)
    plan = plan_domains(args.k_total, n, k, r, model, args.p)
    out = plan.to_dict()
    out["inputs"] = {"k_total": args.k_total, "n": n, "k": k, "r": r,
                     "family": model.family, "N": model.order, "p": args.p, "code": args.code}
    return out, None, None


# -- parser -------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=None, help="override the noise seed")

    parser = argparse.ArgumentParser(prog="ddqec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("catalog", parents=[common], help="list catalog codes with SLDD sizes")

    p = sub.add_parser("validate", parents=[common], help="validate a code file or catalog code")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--file")
    g.add_argument("--code")

    def ddgs_args(p):
        p.add_argument("--code", help="catalog code, e.g. steane or bacon_shor(3)")
        p.add_argument("--R", type=int, default=1, help="concatenation levels")
        p.add_argument("--full-pauli", type=int, metavar="N", help="full Pauli DDGS on N qubits")
        p.add_argument("--cat", type=int, metavar="A", help="cat-state stabilizers on A qubits")
        p.add_argument("--generators", help="comma-separated Pauli strings")

    p = sub.add_parser("ddgs", parents=[common], help="build a DD generator set")
    ddgs_args(p)

    p = sub.add_parser("cost", parents=[common], help="SLDD vs full-Pauli cost")
    p.add_argument("--code", required=True)
    p.add_argument("--R", type=int, default=1)
    p.add_argument("--family", default="CDD", choices=["CDD", "NUDD", "cdd", "nudd"])
    p.add_argument("--N", type=int, default=1)
    p.add_argument("--omega-size", type=int, default=None, help="override the SLDD size")

    p = sub.add_parser("sequence", parents=[common], help="emit a pulse sequence as JSON")
    ddgs_args(p)
    p.add_argument("--family", default="CDD", choices=["CDD", "NUDD", "cdd", "nudd"])
    p.add_argument("--N", type=int, default=1)
    p.add_argument("--out")

    p = sub.add_parser("verify", parents=[common], help="simulate and fit the decoupling order")
    p.add_argument("config", help=f"config file or bundled name {BUNDLED}")
    p.add_argument("--out-dir", default="ddqec-runs")

    p = sub.add_parser("plan", parents=[common], help="domain-size planner")
    p.add_argument("--k-total", type=int, required=True)
    p.add_argument("--code")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--family", default="NUDD", choices=["CDD", "NUDD", "cdd", "nudd"])
    p.add_argument("--N", type=int, default=1)
    p.add_argument("--p", type=int, default=3)
    return parser


COMMANDS = {"catalog": cmd_catalog, "validate": cmd_validate, "ddgs": cmd_ddgs, "cost": cmd_cost,
            "sequence": cmd_sequence, "verify": cmd_verify, "plan": cmd_plan}


def _pretty(out):
    lines = []
    for key in sorted(out):
        val = out[key]
        if isinstance(val, (dict, list)) and len(json.dumps(val)) > 70:
            val = json.dumps(val)[:67] + "..."
        lines.append(f"{key:>24}: {val}")
    return "\n".join(lines)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        result = COMMANDS[args.command](args)
    except (DenseLimitError, BranchAmbiguityError, OverflowError) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (UsageError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out, fmt, columns = result[:3]
    status = result[3] if len(result) > 3 else EXIT_OK
    if args.command == "validate" and not out["valid"]:
        status = EXIT_FAIL
    if args.json:
        print(dump(out))
    elif fmt is not None:
        print(fmt(out["codes"], columns))
    else:
        print(_pretty(out))
    return status


if __name__ == "__main__":
    sys.exit(main())
