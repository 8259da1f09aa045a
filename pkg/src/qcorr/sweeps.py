"""Scenario sweeps over damping-strength grids, plus the correlation audits.

Scenarios:
    PHASE_ONE / AMP_ONE    one qubit (A) damped; states built by single-qubit
                           purification, so environment bipartitions exist
    PHASE_BOTH / AMP_BOTH  both qubits damped via a double purification
    WERNER_PHASE / WERNER_AMP
                           Werner initial state, both qubits damped directly

Audit discord convention: the conservation relation for a pure (A, B, E)
state holds for discords whose conditional states are those of the common
subsystem A, i.e. projectors act on the partner (B for the AB pair, E for
the AE pair). In the two-qubit reductions used here the partner is always
the second qubit, so audits call discord(..., side="B"). Both one-way
values are still reported in every sweep row.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import channels, measures, states

SCENARIOS = (
    "PHASE_ONE",
    "PHASE_BOTH",
    "AMP_ONE",
    "AMP_BOTH",
    "WERNER_PHASE",
    "WERNER_AMP",
)

SINGLE_BIPARTITIONS = ("AB", "AE", "BE")
DOUBLE_BIPARTITIONS = ("AB", "AE_A", "AE_B", "BE_A", "BE_B", "E_AE_B")
WERNER_BIPARTITIONS = ("AB",)

_SINGLE_KEEP = {"AB": (0, 1), "AE": (0, 2), "BE": (1, 2)}
_DOUBLE_KEEP = {
    "AB": (0, 1),
    "AE_A": (0, 2),
    "AE_B": (0, 3),
    "BE_A": (1, 2),
    "BE_B": (1, 3),
    "E_AE_B": (2, 3),
}

DEFAULT_STRENGTH_GRID = tuple(np.round(np.linspace(0.0, 1.0, 51), 10))
DEFAULT_CIN_VALUES = (0.1, 0.25, 0.5, 0.75, 0.9, 1.0)
DEFAULT_CIN_GRID = tuple(np.round(np.linspace(0.0, 1.0, 11), 10))

CONSERVATION_TOL = 1e-4
STRICT_TOL = 1e-6
SATURATION_TOL = 1e-6
GEO_INEQ_TOL = 1e-9


class ConfigError(ValueError):
    """Invalid sweep/audit configuration."""


def _check_grid(grid, name: str) -> tuple:
    vals = tuple(float(x) for x in grid)
    if not vals:
        raise ConfigError(f"{name} must not be empty")
    if any(not 0.0 <= x <= 1.0 for x in vals):
        raise ConfigError(f"{name} values must lie in [0, 1], got {vals}")
    if any(b < a for a, b in zip(vals, vals[1:])):
        raise ConfigError(f"{name} must be sorted ascending, got {vals}")
    return vals


@dataclass(frozen=True)
class SweepConfig:
    scenario: str
    family_kind: str = states.PHI
    c_in_values: tuple = DEFAULT_CIN_VALUES
    eta: float = 0.5
    bell: str = "psi_minus"
    grid: tuple = DEFAULT_STRENGTH_GRID
    grid_b: tuple | None = None
    bipartitions: tuple = ()
    threads: int = 1

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"unknown scenario {self.scenario!r}; choose from {SCENARIOS}")
        object.__setattr__(self, "grid", _check_grid(self.grid, "grid"))
        if self.grid_b is not None:
            if not self.scenario.endswith("_BOTH"):
                raise ConfigError("grid_b is only meaningful for double-damping scenarios")
            object.__setattr__(self, "grid_b", _check_grid(self.grid_b, "grid_b"))
        allowed = self._allowed_bipartitions()
        bips = tuple(self.bipartitions) or self._default_bipartitions()
        for b in bips:
            if b not in allowed:
                raise ConfigError(
                    f"bipartition {b!r} not valid for {self.scenario}; allowed: {allowed}"
                )
        object.__setattr__(self, "bipartitions", bips)
        if self.scenario.startswith("WERNER"):
            if not 0.0 < self.eta <= 1.0:
                raise ConfigError(f"eta must lie in (0, 1], got {self.eta}")
        else:
            object.__setattr__(
                self, "c_in_values", _check_grid(self.c_in_values, "c_in values")
            )
            states.StateFamily(self.family_kind, self.c_in_values[0])
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")

    def _allowed_bipartitions(self):
        if self.scenario.endswith("_ONE"):
            return SINGLE_BIPARTITIONS
        if self.scenario.endswith("_BOTH"):
            return DOUBLE_BIPARTITIONS
        return WERNER_BIPARTITIONS

    def _default_bipartitions(self):
        if self.scenario.endswith("_ONE"):
            return SINGLE_BIPARTITIONS
        if self.scenario.endswith("_BOTH"):
            return ("AB", "AE_A", "E_AE_B")
        return WERNER_BIPARTITIONS


@dataclass(frozen=True)
class SweepRow:
    scenario: str
    family: str
    c_in_or_eta: float
    strength_a: float
    strength_b: float
    bipartition: str
    report: measures.CorrelationReport


@dataclass(frozen=True)
class SweepResult:
    rows: tuple
    failures: tuple


def _channel(kind: str, strength: float):
    if kind == "PHASE":
        return channels.phase_damping(strength)
    return channels.amplitude_damping(strength)


def _pmap(fn, items, threads: int):
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _bipartition_states(config: SweepConfig, c_in: float, sa: float, sb: float):
    """Map bipartition token -> two-qubit DensityMatrix at one grid point."""
    kind = "PHASE" if "PHASE" in config.scenario else "AMPLITUDE"
    if config.scenario.startswith("WERNER"):
        w = states.make_werner(config.eta, states.bell_state(config.bell))
        damped = channels.apply_two_qubit(w, _channel(kind, sa), _channel(kind, sb))
        return {"AB": damped}
    psi = states.make_pure(states.StateFamily(config.family_kind, c_in))
    if config.scenario.endswith("_ONE"):
        pur = states.to_density(
            channels.purify_single(psi, _channel(kind, sa), "A"),
            labels=("A", "B", "E"),
        )
        return {b: pur.reduced(_SINGLE_KEEP[b]) for b in config.bipartitions}
    pur = states.to_density(
        channels.purify_double(psi, _channel(kind, sa), _channel(kind, sb)),
        labels=("A", "B", "E_A", "E_B"),
    )
    return {b: pur.reduced(_DOUBLE_KEEP[b]) for b in config.bipartitions}


def run_sweep(config: SweepConfig) -> SweepResult:
    """Evaluate every requested measure on every (parameter, bipartition) cell.

    Grid points are independent work items; rows are sorted by
    (c_in_or_eta, strength_a, strength_b, bipartition) after collection so
    the output does not depend on scheduling. A failing point is recorded
    as a diagnostic instead of aborting the sweep.
    """
    werner = config.scenario.startswith("WERNER")
    single = config.scenario.endswith("_ONE")
    cis = (config.eta,) if werner else config.c_in_values
    grid_b = config.grid_b
    points = []
    for ci in cis:
        for sa in config.grid:
            if single:
                points.append((ci, sa, 0.0))
            elif grid_b is not None:
                points.extend((ci, sa, sb) for sb in grid_b)
            else:
                points.append((ci, sa, sa))

    fam = "WERNER" if werner else config.family_kind
    bip_order = {b: i for i, b in enumerate(config.bipartitions)}

    def work(point):
        ci, sa, sb = point
        try:
            mats = _bipartition_states(config, ci, sa, sb)
        except Exception as exc:  # diagnostic record, not a sweep abort
            return [], [(point, "", repr(exc))]
        rows, fails = [], []
        for b in config.bipartitions:
            try:
                rep = measures.correlation_report(mats[b], bipartition=b)
                rows.append(
                    SweepRow(
                        scenario=config.scenario,
                        family=fam,
                        c_in_or_eta=ci,
                        strength_a=sa,
                        strength_b=sb,
                        bipartition=b,
                        report=rep,
                    )
                )
            except Exception as exc:
                fails.append((point, b, repr(exc)))
        return rows, fails

    rows, failures = [], []
    for r, f in _pmap(work, points, config.threads):
        rows.extend(r)
        failures.extend(f)
    rows.sort(
        key=lambda r: (
            r.c_in_or_eta,
            r.strength_a,
            r.strength_b,
            bip_order[r.bipartition],
        )
    )
    return SweepResult(rows=tuple(rows), failures=tuple(failures))


def _pair_measures(family_kind: str, channel_kind: str, c_in: float, strength: float):
    """(E_AB, E_AE, D_AB, D_AE) for a single-damped pure family state.

    Discords condition on subsystem A: projectors act on the second qubit
    of each reduced pair (B and E respectively).
    """
    psi = states.make_pure(states.StateFamily(family_kind, c_in))
    ch = _channel(channel_kind, strength)
    pur = states.to_density(channels.purify_single(psi, ch, "A"), labels=("A", "B", "E"))
    ab = pur.reduced((0, 1))
    ae = pur.reduced((0, 2))
    return (
        measures.eof(ab),
        measures.eof(ae),
        measures.discord(ab, measures.SIDE_B),
        measures.discord(ae, measures.SIDE_B),
        ab,
        ae,
    )


@dataclass(frozen=True)
class ConservationRow:
    channel: str
    family: str
    c_in: float
    strength: float
    e_ab: float
    e_ae: float
    d_ab: float
    d_ae: float
    violation: float


def conservation_audit(
    family_kind: str,
    channel_kind: str,
    cin_grid=DEFAULT_CIN_GRID,
    strength_grid=DEFAULT_CIN_GRID,
    threads: int = 1,
):
    """Max violation of E_AB + E_AE = D_AB + D_AE over a (c_in, strength) lattice."""
    cin_grid = _check_grid(cin_grid, "cin_grid")
    strength_grid = _check_grid(strength_grid, "strength grid")
    points = [(c, s) for c in cin_grid for s in strength_grid]

    def work(point):
        c, s = point
        e_ab, e_ae, d_ab, d_ae, _, _ = _pair_measures(family_kind, channel_kind, c, s)
        return ConservationRow(
            channel=channel_kind,
            family=family_kind,
            c_in=c,
            strength=s,
            e_ab=e_ab,
            e_ae=e_ae,
            d_ab=d_ab,
            d_ae=d_ae,
            violation=abs(e_ab + e_ae - d_ab - d_ae),
        )

    rows = _pmap(work, points, threads)
    rows.sort(key=lambda r: (r.c_in, r.strength))
    max_violation = max(r.violation for r in rows)
    return max_violation, tuple(rows)


@dataclass(frozen=True)
class DominanceRow:
    scenario: str
    family: str
    c_in: float
    strength: float
    e_ab: float
    d_ab: float
    e_ae: float
    d_ae: float
    holds: bool


def dominance_audit(
    scenario: str,
    family_kind: str,
    cin_grid=DEFAULT_CIN_GRID,
    strength_grid=DEFAULT_CIN_GRID,
    threads: int = 1,
):
    """Pointwise inequality checks for single-qubit damping.

    PHASE_ONE: E_AB decomposes as D_AB + D_AE (the AE entanglement term is
    zero), so discord never exceeds EoF. AMP_ONE: E_AE <= D_AE with
    equality only at the endpoints, hence E_AB >= D_AB.
    """
    if scenario not in ("PHASE_ONE", "AMP_ONE"):
        raise ConfigError(f"dominance audit needs PHASE_ONE or AMP_ONE, got {scenario!r}")
    channel_kind = "PHASE" if scenario == "PHASE_ONE" else "AMPLITUDE"
    cin_grid = _check_grid(cin_grid, "cin_grid")
    strength_grid = _check_grid(strength_grid, "strength grid")
    points = [(c, s) for c in cin_grid for s in strength_grid]

    def work(point):
        c, s = point
        e_ab, e_ae, d_ab, d_ae, _, _ = _pair_measures(family_kind, channel_kind, c, s)
        if scenario == "PHASE_ONE":
            holds = (
                abs(e_ab - (d_ab + d_ae)) <= CONSERVATION_TOL
                and d_ab <= e_ab + STRICT_TOL
            )
        else:
            holds = e_ae <= d_ae + STRICT_TOL and e_ab >= d_ab - STRICT_TOL
            if s in (0.0, 1.0):
                holds = holds and abs(e_ae - d_ae) <= CONSERVATION_TOL
        return DominanceRow(
            scenario=scenario,
            family=family_kind,
            c_in=c,
            strength=s,
            e_ab=e_ab,
            d_ab=d_ab,
            e_ae=e_ae,
            d_ae=d_ae,
            holds=holds,
        )

    rows = _pmap(work, points, threads)
    rows.sort(key=lambda r: (r.c_in, r.strength))
    return all(r.holds for r in rows), tuple(rows)


@dataclass(frozen=True)
class WernerRow:
    channel: str
    bell: str
    eta: float
    strength: float
    eof: float
    discord_a: float
    discord_b: float
    eof_ratio: float | None
    discord_ratio_a: float | None
    discord_ratio_b: float | None


def werner_rescaled_sweep(
    eta: float,
    channel_kind: str,
    strength_grid=DEFAULT_STRENGTH_GRID,
    bell: str = "psi_minus",
    threads: int = 1,
):
    """Rescaled correlations E/E_in and D/D_in for a damped Werner state.

    For eta <= 1/3 the initial EoF vanishes, so the rescaled EoF has no
    meaning; those entries are emitted as the sentinel "undefined".
    """
    if not 0.0 < eta <= 1.0:
        raise ConfigError(f"eta must lie in (0, 1], got {eta}")
    strength_grid = _check_grid(strength_grid, "strength grid")
    w0 = states.make_werner(eta, states.bell_state(bell))
    e_in = measures.eof(w0)
    d_in_a = measures.discord(w0, measures.SIDE_A)
    d_in_b = measures.discord(w0, measures.SIDE_B)

    def ratio(v, v0):
        return None if v0 <= 1e-12 else v / v0

    def work(s):
        ch = _channel(channel_kind, s)
        damped = channels.apply_two_qubit(w0, ch, _channel(channel_kind, s))
        e = measures.eof(damped)
        da = measures.discord(damped, measures.SIDE_A)
        db = measures.discord(damped, measures.SIDE_B)
        return WernerRow(
            channel=channel_kind,
            bell=bell,
            eta=eta,
            strength=s,
            eof=e,
            discord_a=da,
            discord_b=db,
            eof_ratio=ratio(e, e_in),
            discord_ratio_a=ratio(da, d_in_a),
            discord_ratio_b=ratio(db, d_in_b),
        )

    rows = _pmap(work, list(strength_grid), threads)
    rows.sort(key=lambda r: r.strength)
    return tuple(rows)


@dataclass(frozen=True)
class GeometricRow:
    family: str
    c_in: float
    strength: float
    bipartition: str
    negativity: float
    neg_sq: float
    geo_discord: float
    geo_discord_raw: float
    saturated: bool


def inequality_audit_geometric(
    family_kind: str = states.PHI,
    cin_grid=DEFAULT_CIN_GRID,
    strength_grid=DEFAULT_CIN_GRID,
    threads: int = 1,
):
    """Check N^2 <= G_D on phase-damped AB and AE pairs; flag saturation.

    Returns (ok, rows): ok fails when the inequality is violated anywhere
    or an AB row is not saturated. AE rows document the known blind spot
    of geometric discord: zero negativity with nonzero discord.
    """
    cin_grid = _check_grid(cin_grid, "cin_grid")
    strength_grid = _check_grid(strength_grid, "strength grid")
    points = [(c, s) for c in cin_grid for s in strength_grid]

    def work(point):
        c, s = point
        _, _, _, _, ab, ae = _pair_measures(family_kind, "PHASE", c, s)
        out = []
        for token, dm in (("AB", ab), ("AE", ae)):
            n = measures.negativity(dm)
            gd = measures.geometric_discord(dm, measures.SIDE_B)
            raw = measures.geometric_discord(dm, measures.SIDE_B, normalized=False)
            out.append(
                GeometricRow(
                    family=family_kind,
                    c_in=c,
                    strength=s,
                    bipartition=token,
                    negativity=n,
                    neg_sq=n * n,
                    geo_discord=gd,
                    geo_discord_raw=raw,
                    saturated=abs(n * n - gd) <= SATURATION_TOL,
                )
            )
        return out

    rows = [r for chunk in _pmap(work, points, threads) for r in chunk]
    rows.sort(key=lambda r: (r.c_in, r.strength, r.bipartition))
    ok = all(r.neg_sq <= r.geo_discord + GEO_INEQ_TOL for r in rows) and all(
        r.saturated for r in rows if r.bipartition == "AB"
    )
    return ok, tuple(rows)


def _fmt(v) -> str:
    if v is None:
        return "undefined"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


SWEEP_HEADER = (
    "scenario,family,c_in_or_eta,strength_a,strength_b,bipartition,"
    "concurrence,eof,discord_mA,discord_mB,discord_sym,mutual_info,"
    "negativity,geo_discord,geo_discord_raw"
)
CONSERVE_HEADER = "channel,family,c_in,strength,e_ab,e_ae,d_ab,d_ae,violation"
DOMINANCE_HEADER = "scenario,family,c_in,strength,e_ab,d_ab,e_ae,d_ae,holds"
WERNER_HEADER = (
    "channel,bell,eta,strength,eof,discord_mA,discord_mB,"
    "eof_ratio,discord_ratio_mA,discord_ratio_mB"
)
GEOMETRIC_HEADER = (
    "family,c_in,strength,bipartition,negativity,neg_sq,"
    "geo_discord,geo_discord_raw,saturated"
)


def _record(row) -> tuple:
    if isinstance(row, SweepRow):
        rep = row.report
        return (
            row.scenario,
            row.family,
            row.c_in_or_eta,
            row.strength_a,
            row.strength_b,
            row.bipartition,
            rep.concurrence,
            rep.eof,
            rep.discord_a,
            rep.discord_b,
            rep.discord_sym,
            rep.mutual_info,
            rep.negativity,
            rep.geo_discord,
            rep.geo_discord_raw,
        )
    if isinstance(row, ConservationRow):
        return (
            row.channel, row.family, row.c_in, row.strength,
            row.e_ab, row.e_ae, row.d_ab, row.d_ae, row.violation,
        )
    if isinstance(row, DominanceRow):
        return (
            row.scenario, row.family, row.c_in, row.strength,
            row.e_ab, row.d_ab, row.e_ae, row.d_ae, row.holds,
        )
    if isinstance(row, WernerRow):
        return (
            row.channel, row.bell, row.eta, row.strength, row.eof,
            row.discord_a, row.discord_b, row.eof_ratio,
            row.discord_ratio_a, row.discord_ratio_b,
        )
    if isinstance(row, GeometricRow):
        return (
            row.family, row.c_in, row.strength, row.bipartition,
            row.negativity, row.neg_sq, row.geo_discord,
            row.geo_discord_raw, row.saturated,
        )
    raise TypeError(f"unknown row type {type(row).__name__}")


def render_csv(header: str, rows) -> str:
    """Deterministic CSV text: fixed column order, 12 significant digits."""
    lines = [header]
    lines.extend(",".join(_fmt(v) for v in _record(r)) for r in rows)
    return "\n".join(lines) + "\n"


def emit_csv(header: str, rows, path: str) -> None:
    """Write rows as CSV; identical inputs produce byte-identical files."""
    text = render_csv(header, rows)
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(text)
