"""Command-line interface.

Subcommands: pade, interp, cheb-nodes, minimax, sweep, ratio, unitary.
Output is JSON by default, CSV for the tabular commands with --format csv.
Exit codes: 0 success, 1 usage error, 2 precondition error, 3 numerical
failure (Lawson stagnation or winding mismatch).
"""
from __future__ import annotations

import argparse
import io
import json
import sys

import numpy as np

from .divdiff import NodeMultiset
from .domains import DomainSpec, cheb_system
from .errors import NumericalError, PreconditionError, RatchebError
from .functions import registry_get, registry_names
from .interpolation import interp_at_scaled_cheb, interpolate
from .minimax import LawsonOptions, best_approx, unitary_best_exp
from .poly import RationalFunction
from .sweeps import SweepRecord, error_ratio_pade_cheb, run_full_sweep
from .pade import pade_approx

USAGE_EXIT = 1
PRECONDITION_EXIT = 2
NUMERICAL_EXIT = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits with code 2 on usage errors; the CLI contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _c2j(z):
    z = complex(z)
    return z.real if z.imag == 0.0 else [z.real, z.imag]


def _j2c(v) -> complex:
    if isinstance(v, (list, tuple)):
        return complex(v[0], v[1])
    return complex(v)


def rational_to_json(r: RationalFunction) -> dict:
    return {
        "num": [_c2j(c) for c in r.num.coeffs],
        "den": [_c2j(c) for c in r.den.coeffs],
        "m": r.m,
        "n": r.n,
        "defect": r.defect,
    }


def rational_from_json(d: dict) -> RationalFunction:
    return RationalFunction(
        [_j2c(c) for c in d["num"]],
        [_j2c(c) for c in d["den"]],
        d.get("m"),
        d.get("n"),
    )


def _nodes_json(nodes):
    if nodes is None:
        return None
    return [_c2j(z) for z in nodes]


def _records_csv(records) -> str:
    buf = io.StringIO()
    buf.write(",".join(SweepRecord.FIELDS) + "\n")
    for rec in records:
        cells = []
        for name in SweepRecord.FIELDS:
            v = getattr(rec, name)
            if v is None:
                cells.append("")
            elif isinstance(v, bool):
                cells.append("true" if v else "false")
            elif isinstance(v, float):
                cells.append(format(v, ".17g"))
            else:
                cells.append(str(v))
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()


def _emit(args, payload, csv_text=None) -> None:
    if getattr(args, "format", "json") == "csv":
        if csv_text is None:
            raise PreconditionError("csv output is only available for tabular commands")
        text = csv_text
    else:
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_output_flags(p):
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="write output to FILE instead of stdout")


def _add_lawson_flags(p):
    p.add_argument("--grid", type=int, default=512, help="discretization points")
    p.add_argument("--lawson-tol", type=float, default=1e-3, dest="lawson_tol")
    p.add_argument("--max-iters", type=int, default=200, dest="max_iters")
    p.add_argument("--rho", type=float, default=None, help="node-extraction radius override")


def _opts_from(args) -> LawsonOptions:
    return LawsonOptions(
        grid=args.grid,
        lawson_tol=args.lawson_tol,
        max_iters=args.max_iters,
        rho=args.rho,
    )


def _parse_eps_list(text):
    return [float(t) for t in text.split(",") if t.strip()]


def build_parser() -> _Parser:
    parser = _Parser(prog="ratcheb", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pade", help="Pade approximant and leading error coefficient")
    p.add_argument("--f", required=True, help=f"function name ({', '.join(registry_names())})")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_output_flags(p)

    p = sub.add_parser("interp", help="Newton-Pade interpolant at given or scaled-Chebyshev nodes")
    p.add_argument("--f", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--nodes", default=None, help="comma-separated complex nodes, e.g. 0,0.1,-0.1")
    p.add_argument("--domain", default=None, help="interval:a,b | disk:R | samples:file.json")
    p.add_argument("--eps", type=float, default=None)
    _add_output_flags(p)

    p = sub.add_parser("cheb-nodes", help="Chebyshev nodes and constant of a domain")
    p.add_argument("--domain", required=True)
    p.add_argument("--N", type=int, required=True)
    _add_output_flags(p)

    p = sub.add_parser("minimax", help="best rational approximant on eps*K")
    p.add_argument("--f", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--domain", required=True)
    p.add_argument("--eps", type=float, required=True)
    _add_lawson_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("sweep", help="asymptotic-law sweep over decreasing eps")
    p.add_argument("--f", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--domain", required=True)
    p.add_argument("--eps", required=True, help="comma-separated decreasing list")
    p.add_argument("--profile-grid", type=int, default=512, dest="profile_grid")
    _add_lawson_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("ratio", help="Pade-to-best uniform error ratio per eps")
    p.add_argument("--f", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--domain", required=True)
    p.add_argument("--eps", required=True)
    _add_lawson_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("unitary", help="unitary best approximation to exp on i*eps*[-1,1]")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    _add_lawson_flags(p)
    _add_output_flags(p)

    return parser


def _cmd_pade(args) -> int:
    f = registry_get(args.f)
    res = pade_approx(f, args.m, args.n)
    payload = {
        "num": [_c2j(c) for c in res.r.num.coeffs],
        "den": [_c2j(c) for c in res.r.den.coeffs],
        "a_mn": None if res.degenerate else _c2j(res.a_mn),
        "hankel_mn": _c2j(res.hankel_mn),
        "hankel_m1n1": _c2j(res.hankel_m1n1),
        "degenerate": res.degenerate,
    }
    _emit(args, payload)
    return 0


def _cmd_interp(args) -> int:
    f = registry_get(args.f)
    if (args.nodes is None) == (args.domain is None):
        raise PreconditionError("give either --nodes or --domain with --eps")
    if args.nodes is not None:
        nodes = NodeMultiset.of([complex(t) for t in args.nodes.split(",")])
        res = interpolate(f, nodes, args.m, args.n)
    else:
        if args.eps is None:
            raise PreconditionError("--domain requires --eps")
        K = DomainSpec.parse(args.domain)
        res = interp_at_scaled_cheb(f, args.m, args.n, K, args.eps)
    payload = rational_to_json(res.r)
    payload.update(
        {
            "nodes": _nodes_json(res.nodes),
            "linearized_residual": res.linearized_residual,
            "degenerate": res.degenerate,
            "hermite_valid": res.hermite_valid,
        }
    )
    _emit(args, payload)
    return 0


def _cmd_cheb_nodes(args) -> int:
    K = DomainSpec.parse(args.domain)
    cs = cheb_system(K, args.N)
    _emit(args, {"nodes": [_c2j(z) for z in cs.nodes], "t": cs.constant})
    return 0


def _minimax_payload(res):
    payload = rational_to_json(res.r)
    payload.update(
        {
            "uniform_error": res.uniform_error,
            "lawson_iters": res.lawson_iters,
            "converged": res.converged,
            "equioscillation_count": res.equioscillation_count,
            "winding": res.winding,
            "nodes": _nodes_json(res.nodes_extracted),
            "warnings": res.warnings,
        }
    )
    if res.unitarity_defect is not None:
        payload["unitarity_defect"] = res.unitarity_defect
    return payload


def _cmd_minimax(args) -> int:
    f = registry_get(args.f)
    K = DomainSpec.parse(args.domain)
    res = best_approx(f, args.m, args.n, K, args.eps, _opts_from(args))
    _emit(args, _minimax_payload(res))
    return 0 if res.converged else NUMERICAL_EXIT


def _cmd_sweep(args) -> int:
    f = registry_get(args.f)
    K = DomainSpec.parse(args.domain)
    eps_list = _parse_eps_list(args.eps)
    result = run_full_sweep(
        f, args.m, args.n, K, eps_list, grid_size=args.profile_grid, opts=_opts_from(args)
    )
    payload = {
        "params": {
            "f": args.f,
            "m": args.m,
            "n": args.n,
            "domain": K.describe(),
            "eps": eps_list,
            "grid": args.grid,
        },
        "records": [
            {name: getattr(r, name) for name in SweepRecord.FIELDS} for r in result.records
        ],
        "slope": result.slope,
        "flags": result.flags,
    }
    _emit(args, payload, csv_text=_records_csv(result.records))
    bad = result.flags or any(
        (not r.converged) or (r.winding is not None and r.winding != args.m + args.n + 1)
        for r in result.records
    )
    return NUMERICAL_EXIT if bad else 0


def _cmd_ratio(args) -> int:
    f = registry_get(args.f)
    K = DomainSpec.parse(args.domain)
    eps_list = _parse_eps_list(args.eps)
    ratios = error_ratio_pade_cheb(f, args.m, args.n, K, eps_list, _opts_from(args))
    payload = {
        "params": {"f": args.f, "m": args.m, "n": args.n, "domain": K.describe()},
        "eps": eps_list,
        "ratio": ratios,
    }
    csv_text = "eps,ratio\n" + "".join(
        f"{format(e, '.17g')},{format(r, '.17g')}\n" for e, r in zip(eps_list, ratios)
    )
    _emit(args, payload, csv_text=csv_text)
    return 0


def _cmd_unitary(args) -> int:
    res = unitary_best_exp(args.n, args.eps, _opts_from(args))
    _emit(args, _minimax_payload(res))
    return 0 if res.converged else NUMERICAL_EXIT


_COMMANDS = {
    "pade": _cmd_pade,
    "interp": _cmd_interp,
    "cheb-nodes": _cmd_cheb_nodes,
    "minimax": _cmd_minimax,
    "sweep": _cmd_sweep,
    "ratio": _cmd_ratio,
    "unitary": _cmd_unitary,
}


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else USAGE_EXIT
    try:
        return _COMMANDS[args.command](args)
    except PreconditionError as exc:
        print(f"ratcheb: precondition error: {exc}", file=sys.stderr)
        return PRECONDITION_EXIT
    except NumericalError as exc:
        print(f"ratcheb: numerical failure: {exc}", file=sys.stderr)
        return NUMERICAL_EXIT
    except RatchebError as exc:
        print(f"ratcheb: error: {exc}", file=sys.stderr)
        return PRECONDITION_EXIT
    except ValueError as exc:
        print(f"ratcheb: invalid arguments: {exc}", file=sys.stderr)
        return USAGE_EXIT


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
