"""Command-line front end.

Subcommands: sweep, conserve, dominance, werner, geometric. Each accepts
--config (plain key=value lines) and --out, with --grid / --cin / --eta /
--scenario overriding config keys. CSV goes to the out path, or stdout
when none is given; human-readable summaries go to stderr.

Exit codes: 0 success, 1 bad configuration, 2 audit failure (a checked
relation violated beyond its tolerance), 3 output I/O failure.
"""

from __future__ import annotations

import argparse
import sys

from . import states, sweeps
from .sweeps import ConfigError

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_AUDIT = 2
EXIT_IO = 3

_CONFIG_KEYS = (
    "scenario",
    "family",
    "c_in",
    "eta",
    "bell",
    "grid",
    "grid_b",
    "cin_grid",
    "bipartitions",
    "out",
)


def parse_grid(spec: str) -> tuple:
    """Grid spec: 'start:step:end' (end inclusive), a comma list, or one value."""
    spec = spec.strip()
    try:
        if ":" in spec:
            parts = [float(x) for x in spec.split(":")]
            if len(parts) != 3:
                raise ValueError
            start, step, end = parts
            if step <= 0:
                raise ValueError
            vals = []
            x = start
            while x <= end + 1e-9:
                vals.append(round(x, 12))
                x += step
            return tuple(vals)
        if "," in spec:
            return tuple(float(x) for x in spec.split(","))
        return (float(spec),)
    except ValueError:
        raise ConfigError(f"cannot parse grid spec {spec!r}; use start:step:end") from None


def read_config(path: str) -> dict:
    """Parse key=value lines; '#' comments and blank lines are skipped."""
    cfg = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    for lineno, line in enumerate(lines, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        if "=" not in text:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {text!r}")
        key, value = (part.strip() for part in text.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        if key in cfg:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        cfg[key] = value
    return cfg


def _merged_options(args) -> dict:
    cfg = read_config(args.config) if args.config else {}
    if args.scenario is not None:
        cfg["scenario"] = args.scenario
    if args.grid is not None:
        cfg["grid"] = args.grid
    if args.cin is not None:
        cfg["c_in"] = str(args.cin)
    if args.eta is not None:
        cfg["eta"] = str(args.eta)
    if args.out is not None:
        cfg["out"] = args.out
    return cfg


def _float(cfg: dict, key: str, default: float) -> float:
    if key not in cfg:
        return default
    try:
        return float(cfg[key])
    except ValueError:
        raise ConfigError(f"config key {key} must be a number, got {cfg[key]!r}") from None


def _emit(header: str, rows, out: str | None) -> None:
    if out:
        sweeps.emit_csv(header, rows, out)
    else:
        sys.stdout.write(sweeps.render_csv(header, rows))


def _scenario(cfg: dict, default: str, allowed) -> str:
    scenario = cfg.get("scenario", default)
    if scenario not in allowed:
        raise ConfigError(f"scenario {scenario!r} not valid here; allowed: {allowed}")
    return scenario


def _family(cfg: dict) -> str:
    family = cfg.get("family", states.PHI)
    if family not in (states.PHI, states.PSI):
        raise ConfigError(f"family must be PHI or PSI, got {family!r}")
    return family


def _channel_kind(scenario: str) -> str:
    return "PHASE" if "PHASE" in scenario else "AMPLITUDE"


def cmd_sweep(args) -> int:
    cfg = _merged_options(args)
    scenario = _scenario(cfg, "PHASE_BOTH", sweeps.SCENARIOS)
    kwargs = dict(
        scenario=scenario,
        family_kind=_family(cfg),
        eta=_float(cfg, "eta", 0.5),
        bell=cfg.get("bell", "psi_minus"),
        threads=args.threads,
    )
    if "c_in" in cfg:
        kwargs["c_in_values"] = parse_grid(cfg["c_in"])
    if "grid" in cfg:
        kwargs["grid"] = parse_grid(cfg["grid"])
    if "grid_b" in cfg:
        kwargs["grid_b"] = parse_grid(cfg["grid_b"])
    if "bipartitions" in cfg:
        kwargs["bipartitions"] = tuple(
            b.strip() for b in cfg["bipartitions"].split(",") if b.strip()
        )
    result = sweeps.run_sweep(sweeps.SweepConfig(**kwargs))
    for point, bip, message in result.failures:
        print(f"sweep point {point} {bip}: {message}", file=sys.stderr)
    _emit(sweeps.SWEEP_HEADER, result.rows, cfg.get("out"))
    print(f"sweep: {len(result.rows)} rows, {len(result.failures)} failures", file=sys.stderr)
    return EXIT_OK


def cmd_conserve(args) -> int:
    cfg = _merged_options(args)
    scenario = _scenario(cfg, "PHASE_ONE", ("PHASE_ONE", "AMP_ONE"))
    cin_grid = parse_grid(cfg["cin_grid"]) if "cin_grid" in cfg else sweeps.DEFAULT_CIN_GRID
    if "c_in" in cfg:
        cin_grid = parse_grid(cfg["c_in"])
    grid = parse_grid(cfg["grid"]) if "grid" in cfg else sweeps.DEFAULT_CIN_GRID
    max_violation, rows = sweeps.conservation_audit(
        _family(cfg), _channel_kind(scenario), cin_grid, grid, threads=args.threads
    )
    _emit(sweeps.CONSERVE_HEADER, rows, cfg.get("out"))
    print(f"conserve: max violation {max_violation:.3e}", file=sys.stderr)
    return EXIT_OK if max_violation <= sweeps.CONSERVATION_TOL else EXIT_AUDIT


def cmd_dominance(args) -> int:
    cfg = _merged_options(args)
    scenario = _scenario(cfg, "PHASE_ONE", ("PHASE_ONE", "AMP_ONE"))
    cin_grid = parse_grid(cfg["cin_grid"]) if "cin_grid" in cfg else sweeps.DEFAULT_CIN_GRID
    if "c_in" in cfg:
        cin_grid = parse_grid(cfg["c_in"])
    grid = parse_grid(cfg["grid"]) if "grid" in cfg else sweeps.DEFAULT_CIN_GRID
    ok, rows = sweeps.dominance_audit(
        scenario, _family(cfg), cin_grid, grid, threads=args.threads
    )
    _emit(sweeps.DOMINANCE_HEADER, rows, cfg.get("out"))
    bad = sum(1 for r in rows if not r.holds)
    print(f"dominance: {len(rows)} points, {bad} violations", file=sys.stderr)
    return EXIT_OK if ok else EXIT_AUDIT


def cmd_werner(args) -> int:
    cfg = _merged_options(args)
    scenario = _scenario(cfg, "WERNER_PHASE", ("WERNER_PHASE", "WERNER_AMP"))
    grid = parse_grid(cfg["grid"]) if "grid" in cfg else sweeps.DEFAULT_STRENGTH_GRID
    rows = sweeps.werner_rescaled_sweep(
        _float(cfg, "eta", 0.5),
        _channel_kind(scenario),
        grid,
        bell=cfg.get("bell", "psi_minus"),
        threads=args.threads,
    )
    _emit(sweeps.WERNER_HEADER, rows, cfg.get("out"))
    print(f"werner: {len(rows)} rows", file=sys.stderr)
    return EXIT_OK


def cmd_geometric(args) -> int:
    cfg = _merged_options(args)
    _scenario(cfg, "PHASE_ONE", ("PHASE_ONE",))
    cin_grid = parse_grid(cfg["cin_grid"]) if "cin_grid" in cfg else sweeps.DEFAULT_CIN_GRID
    if "c_in" in cfg:
        cin_grid = parse_grid(cfg["c_in"])
    grid = parse_grid(cfg["grid"]) if "grid" in cfg else sweeps.DEFAULT_CIN_GRID
    ok, rows = sweeps.inequality_audit_geometric(
        _family(cfg), cin_grid, grid, threads=args.threads
    )
    _emit(sweeps.GEOMETRIC_HEADER, rows, cfg.get("out"))
    unsat = sum(1 for r in rows if r.bipartition == "AB" and not r.saturated)
    print(f"geometric: {len(rows)} rows, {unsat} unsaturated AB points", file=sys.stderr)
    return EXIT_OK if ok else EXIT_AUDIT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcorr",
        description="Correlation dynamics of two qubits under damping channels",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    handlers = {
        "sweep": cmd_sweep,
        "conserve": cmd_conserve,
        "dominance": cmd_dominance,
        "werner": cmd_werner,
        "geometric": cmd_geometric,
    }
    for name, fn in handlers.items():
        p = sub.add_parser(name)
        p.add_argument("--config", help="key=value config file")
        p.add_argument("--out", help="output CSV path (default: stdout)")
        p.add_argument("--grid", help="strength grid override, start:step:end")
        p.add_argument("--cin", type=float, help="initial concurrence override")
        p.add_argument("--eta", type=float, help="Werner mixing override")
        p.add_argument("--scenario", help="scenario override")
        p.add_argument("--threads", type=int, default=1, help="parallel grid workers")
        p.set_defaults(handler=fn)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
