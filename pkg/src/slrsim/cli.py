"""Command-line entry point: `slrsim <kind> [--config FILE]` or `slrsim preset NAME`."""
import argparse
import os
import sys

from . import __version__
from .config import KINDS, PRESETS, ConfigError, deep_merge, parse_config, preset, resolve
from .constants import PhysicsError
from .output import write_bundle
from .scenarios import run_scenario

EXIT_OK, EXIT_CONFIG, EXIT_PHYSICS, EXIT_IO = 0, 2, 3, 4


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML/JSON scenario file or run manifest")
    common.add_argument("--out", help="output directory (env SLRSIM_OUT)")
    common.add_argument("--workers", type=int, help="worker processes (env SLRSIM_WORKERS)")
    common.add_argument("--format", choices=["csv", "json", "both"])
    common.add_argument("--plot", action="store_true", help="also write PNG previews")
    p = argparse.ArgumentParser(prog="slrsim", description="Lattice-resonance spectra and fields.")
    p.add_argument("--version", action="version", version=f"slrsim {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for k in KINDS:
        sub.add_parser(k, parents=[common], help=f"run a {k} scenario")
    pp = sub.add_parser("preset", parents=[common], help="run a bundled preset")
    pp.add_argument("name", choices=sorted(PRESETS))
    return p


def _overrides(args, env):
    over = {}
    out = args.out or env.get("SLRSIM_OUT")
    if out:
        over["out_dir"] = out
    workers = args.workers if args.workers is not None else env.get("SLRSIM_WORKERS")
    if workers is not None:
        try:
            over["workers"] = int(workers)
        except ValueError as e:
            raise ConfigError(f"invalid worker count {workers!r}") from e
    if args.format:
        over["format"] = args.format
    return over


def load(args, env):
    if args.command == "preset":
        if args.config:
            raise ConfigError("preset runs take no --config")
        cfg = preset(args.name)
    elif args.config:
        cfg = parse_config(args.config)
        if cfg["scenario"] != args.command:
            raise ConfigError(f"config is a '{cfg['scenario']}' scenario but subcommand is '{args.command}'")
    else:
        cfg = resolve({"scenario": args.command})
    return resolve(deep_merge(cfg, _overrides(args, env)))


def main(argv=None, env=None):
    env = os.environ if env is None else env
    args = build_parser().parse_args(argv)
    try:
        cfg = load(args, env)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    out_dir = cfg.get("out_dir") or os.path.join("out", args.name if args.command == "preset" else cfg["scenario"])
    cfg["out_dir"] = out_dir
    try:
        result = run_scenario(cfg)
    except (PhysicsError, ValueError) as e:
        print(f"physics error: {e}", file=sys.stderr)
        return EXIT_PHYSICS
    try:
        write_bundle(out_dir, cfg, result, __version__, cfg["format"], args.plot)
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    for w in result.warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(out_dir)
    return EXIT_OK


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
