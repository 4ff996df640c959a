"""Command line front end.

Exit codes: 0 all checks pass, 1 at least one failure, 2 input error,
3 a check was skipped while --strict was requested.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from . import chaos as chaos_mod
from .boolalg import BoolElem
from .config import ConfigError, decimal12, format_fraction, load_model_config
from .suite import GROUPS, SPECTRUM_HEADERS, emit_spectrum_report, run_verification_suite


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="noise-lab",
        description="Exact verification laboratory for finite noise-type Boolean algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run the verification suite on a config")
    p_verify.add_argument("config")
    p_verify.add_argument("--only", default="all", choices=GROUPS + ("all",))
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--backend", choices=("exact", "float"), default=None)
    p_verify.add_argument("--depth", type=int, default=None)
    p_verify.add_argument("--strict", action="store_true")
    p_verify.add_argument("--json", metavar="PATH", default=None, help="write the machine report")

    p_spec = sub.add_parser("spectrum", help="print the spectral measure of a vector")
    p_spec.add_argument("config")
    p_spec.add_argument("--vector", required=True)
    p_spec.add_argument("--csv", metavar="PATH", default=None)

    p_chaos = sub.add_parser("chaos", help="first-chaos summary for a config")
    p_chaos.add_argument("config")
    p_chaos.add_argument("--subalgebra", default=None)
    p_chaos.add_argument("--vector", default=None)
    return parser


def _override(cfg, args):
    updates = {}
    if getattr(args, "seed", None) is not None:
        updates["seed"] = args.seed
    if getattr(args, "backend", None) is not None:
        updates["backend"] = args.backend
    if getattr(args, "depth", None) is not None:
        updates["depth"] = args.depth
    return dataclasses.replace(cfg, **updates) if updates else cfg


def _cmd_verify(args) -> int:
    cfg = _override(load_model_config(args.config), args)
    report = run_verification_suite(cfg, args.only)
    sys.stdout.write(report.render_text())
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
    return report.exit_code(strict=args.strict)


def _cmd_spectrum(args) -> int:
    cfg = load_model_config(args.config)
    rows = emit_spectrum_report(cfg, args.vector)
    headers = SPECTRUM_HEADERS
    widths = [max(len(h), *(len(r[c]) for r in rows)) for c, h in enumerate(headers)]
    out = ["  ".join(h.ljust(widths[c]) for c, h in enumerate(headers))]
    for r in rows:
        out.append("  ".join(r[c].ljust(widths[c]) for c in range(len(headers))))
    sys.stdout.write("\n".join(out) + "\n")

    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(",".join(headers) + "\n")
            for r in rows:
                fh.write(",".join(f'"{r[0]}"' if c == 0 else r[c] for c in range(len(headers))) + "\n")
    return 0


def _cmd_chaos(args) -> int:
    cfg = load_model_config(args.config)
    model = cfg.build_model()
    chaos = chaos_mod.first_chaos_basis(model)
    result = chaos_mod.classify(model)
    lines = [
        f"first-chaos dimension: {chaos.dimension}",
        f"classification: {result.kind.value}"
        + (" (degenerate)" if result.degenerate else ""),
    ]
    if args.vector is not None:
        psi = cfg.vector(args.vector, model)
        if args.subalgebra is not None:
            sub = cfg.subalgebra(args.subalgebra)
        else:
            sub = _full_subalgebra(cfg)
        additive = chaos_mod.satisfies_additivity(model, psi, sub)
        lines.append(f"additivity on subalgebra: {'yes' if additive else 'no'}")
        if additive:
            cert = chaos_mod.atomless_defect(model, psi, sub)
            lines.append(
                f"defect delta^2 = {format_fraction(cert.delta_sq)}; delta = {decimal12(cert.delta)}"
            )
            worst = None
            all_ok = True
            for mask in range(1 << model.n_cells):
                x = BoolElem(mask, model.n_cells)
                rep = chaos_mod.defect_bound_check(model, psi, sub, x, certificate=cert)
                if not rep.passed:
                    all_ok = False
                    worst = x
                    break
            lines.append(
                "defect bound: pass (all cell sets)" if all_ok else f"defect bound: FAIL at {worst}"
            )
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def _full_subalgebra(cfg):
    from .boolalg import FinitePowerAlgebra, Subalgebra

    alg = FinitePowerAlgebra(cfg.n_cells)
    return Subalgebra(alg, alg.atoms())


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "spectrum":
            return _cmd_spectrum(args)
        if args.command == "chaos":
            return _cmd_chaos(args)
    except ConfigError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
