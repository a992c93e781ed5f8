"""Command-line entry point: ``qtransport {coeffs,trajectory,fig2,sweep}``."""
from __future__ import annotations

import argparse
import json
import sys

from .commands import VerificationError, cmd_coeffs, cmd_fig2, cmd_sweep, cmd_trajectory, format_coeffs
from .config import ConfigError, load_config

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_VERIFY = 2


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="flat key = value config file")
    common.add_argument("--out", metavar="PATH", help="output file (stdout when omitted)")
    common.add_argument("--verify", action="store_true", help="re-check exact identities before exit")
    common.add_argument("--workers", type=int, metavar="N", help="parallel workers for sweeps")
    common.add_argument("--scenario", choices=["product", "zero_cc", "custom"])
    common.add_argument("--p", type=float)
    common.add_argument("--T-A", dest="T_A", type=float)
    common.add_argument("--T-B", dest="T_B", type=float)
    common.add_argument("--omega", type=float)
    common.add_argument("--gamma", type=float)
    common.add_argument("--t-max", dest="t_max", type=float)
    common.add_argument("--dt", type=float)
    common.add_argument("--fd-dt", dest="fd_dt", type=float)
    common.add_argument("--fd-scheme", dest="fd_scheme", choices=["forward", "central"])
    common.add_argument("--emit-coeffs", dest="emit_coeffs", action="store_const", const="true")
    common.add_argument("--populations", help="custom diagonal state, e.g. 0.7,0.1,0.1,0.1")
    common.add_argument("--state-file", dest="state_file", help="custom 4x4 state as .npy")
    common.add_argument("--sweep", help="param,start,stop,count (param in p, gamma, T_A, T_B, omega)")

    parser = argparse.ArgumentParser(
        prog="qtransport",
        description="Energy transport versus correlated coherence for two thermal qubits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("coeffs", parents=[common], help="expansion coefficients and ratio at t = 0")
    sub.add_parser("trajectory", parents=[common], help="exact trajectory as CSV")
    sub.add_parser("fig2", parents=[common], help="ratio-versus-time series for the three states")
    sub.add_parser("sweep", parents=[common], help="t = 0 coefficients over a parameter range")
    return parser


OVERRIDE_KEYS = (
    "out", "workers", "scenario", "p", "T_A", "T_B", "omega", "gamma", "t_max", "dt",
    "fd_dt", "fd_scheme", "emit_coeffs", "populations", "state_file", "sweep",
)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config, **{k: getattr(args, k) for k in OVERRIDE_KEYS})
        if args.command == "coeffs":
            report = cmd_coeffs(config)
            if config.out:
                with open(config.out, "w", encoding="utf-8") as fh:
                    json.dump(report, fh, indent=2)
            sys.stdout.write(format_coeffs(report))
            return EXIT_OK
        command = {"trajectory": cmd_trajectory, "fig2": cmd_fig2, "sweep": cmd_sweep}[args.command]
        text = command(config, verify=args.verify)
        if config.out is None:
            sys.stdout.write(text)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
