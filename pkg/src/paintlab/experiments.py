"""Reproducible batch experiments.

Every trial derives its own seed from the master seed by counter
(``trial_seed = child_seed(master, index)``), generates a fresh graph, plays
one game, and emits one report row.  Config plus master seed determine every
byte of the output files; wall-clock time is kept on the row objects but
never serialized, since timing is the one thing reruns cannot reproduce.
"""

from __future__ import annotations

import csv
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import IO, Optional

from . import bounds, solver
from .engine import Outcome, play
from .errors import ConfigError, ParameterError, ResourceCapError
from .graph import Graph, gnp
from .rng import SplitStream, child_seed
from .strategies import Regime, StrategyParams, make_corrector, make_painter

CONFIG_VERSION = 1


@dataclass(frozen=True)
class BudgetRule:
    """Either a fixed eraser count or a multiple of the predicted chromatic
    number n/(2 log_b(np))."""

    fixed: Optional[int] = None
    predicted_times: Optional[float] = None

    def __post_init__(self):
        if (self.fixed is None) == (self.predicted_times is None):
            raise ConfigError("budget rule needs exactly one of fixed / predicted_times")
        if self.fixed is not None and self.fixed < 0:
            raise ConfigError("fixed budget must be >= 0")
        if self.predicted_times is not None and self.predicted_times <= 0:
            raise ConfigError("predicted_times factor must be > 0")

    def resolve(self, n: int, p: float) -> int:
        if self.fixed is not None:
            return self.fixed
        if not 0.0 < p < 1.0 or n * p <= 1.0:
            raise ConfigError("predicted budgets need 0 < p < 1 and np > 1")
        b = 1.0 / (1.0 - p)
        predicted = n / (2.0 * math.log(n * p) / math.log(b))
        return math.ceil(self.predicted_times * predicted)

    @classmethod
    def from_dict(cls, obj: dict) -> "BudgetRule":
        if not isinstance(obj, dict):
            raise ConfigError("budget must be an object")
        known = {"fixed", "predicted_times"}
        if set(obj.keys()) - known:
            raise ConfigError(f"unknown budget keys: {set(obj) - known}")
        return cls(fixed=obj.get("fixed"), predicted_times=obj.get("predicted_times"))

    def to_dict(self) -> dict:
        if self.fixed is not None:
            return {"fixed": self.fixed}
        return {"predicted_times": self.predicted_times}


@dataclass
class ExperimentConfig:
    n: int
    p: float
    trials: int
    master_seed: int
    budget: BudgetRule
    painter: str
    corrector: str
    params: Optional[StrategyParams] = None
    workers: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.n < 0 or not 0.0 <= self.p <= 1.0:
            raise ConfigError("invalid regime: need n >= 0 and p in [0, 1]")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        if obj.get("version") != CONFIG_VERSION:
            raise ConfigError(f"config version must be {CONFIG_VERSION}")
        params = None
        if "params" in obj and obj["params"] is not None:
            raw = dict(obj["params"])
            if "regime" in raw:
                raw["regime"] = Regime(raw["regime"])
            try:
                params = StrategyParams(**raw)
            except (TypeError, ParameterError) as exc:
                raise ConfigError(f"bad strategy params: {exc}") from exc
        try:
            return cls(
                n=int(obj["n"]),
                p=float(obj["p"]),
                trials=int(obj["trials"]),
                master_seed=int(obj["master_seed"]),
                budget=BudgetRule.from_dict(obj["budget"]),
                painter=str(obj["painter"]),
                corrector=str(obj["corrector"]),
                params=params,
                workers=int(obj.get("workers", 1)),
            )
        except KeyError as exc:
            raise ConfigError(f"config is missing {exc.args[0]!r}") from exc

    def to_json(self) -> str:
        obj = {
            "version": CONFIG_VERSION,
            "n": self.n,
            "p": self.p,
            "trials": self.trials,
            "master_seed": self.master_seed,
            "budget": self.budget.to_dict(),
            "painter": self.painter,
            "corrector": self.corrector,
            "workers": self.workers,
        }
        if self.params is not None:
            d = asdict(self.params)
            d["regime"] = self.params.regime.value
            obj["params"] = d
        return json.dumps(obj, sort_keys=True, indent=2)


@dataclass
class ReportRow:
    trial: int
    seed: int
    outcome: str
    forfeited_by: Optional[str]
    rounds: int
    max_erasers_used: int
    spend_small: int
    spend_medium: int
    spend_large: int
    spend_other: int
    fallbacks: int
    chi_asymptotic: Optional[float]
    ratio: Optional[float]
    wall_time_s: float = field(default=0.0, compare=False)

    CSV_FIELDS = (
        "trial", "seed", "outcome", "forfeited_by", "rounds",
        "max_erasers_used", "spend_small", "spend_medium", "spend_large",
        "spend_other", "fallbacks", "chi_asymptotic", "ratio",
    )  # wall_time_s deliberately excluded: outputs must be byte-reproducible

    def csv_record(self) -> list:
        vals = []
        for name in self.CSV_FIELDS:
            v = getattr(self, name)
            vals.append("" if v is None else v)
        return vals


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    budget: int
    rows: list[ReportRow]
    summary: dict


def _default_corrector_regime(name: str, p: float, n: int) -> Optional[StrategyParams]:
    if name == "dense":
        return StrategyParams(regime=Regime.DENSE)
    if name == "sparse":
        return StrategyParams(regime=Regime.SPARSE)
    if name == "very-sparse":
        return StrategyParams(regime=Regime.VERY_SPARSE)
    return None


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Seeded tournament: one graph + one game per trial, deterministic rows."""
    painter = make_painter(config.painter)
    params = config.params or _default_corrector_regime(config.corrector, config.p, config.n)
    corrector = make_corrector(config.corrector, params)
    budget = config.budget.resolve(config.n, config.p)
    try:
        chi_pred = bounds.chi_asymptotic(config.n, config.p)
    except ParameterError:
        chi_pred = None

    def one_trial(index: int) -> ReportRow:
        t0 = time.perf_counter()
        trial_seed = child_seed(config.master_seed, index)
        graph_seed = child_seed(trial_seed, 0)
        game_seed = child_seed(trial_seed, 1)
        g = gnp(config.n, config.p, graph_seed)
        if not isinstance(g, Graph):
            raise ConfigError("experiment graphs must be materializable")
        transcript = play(g, budget, painter, corrector, game_seed, record=False)
        spend = transcript.stats.spend_by_class
        ratio = None
        if chi_pred:
            ratio = (transcript.stats.max_erasers_used + 1) / chi_pred
        return ReportRow(
            trial=index,
            seed=trial_seed,
            outcome=transcript.outcome.value,
            forfeited_by=transcript.forfeited_by,
            rounds=transcript.stats.rounds,
            max_erasers_used=transcript.stats.max_erasers_used,
            spend_small=spend.get("small", 0),
            spend_medium=spend.get("medium", 0),
            spend_large=spend.get("large", 0),
            spend_other=spend.get("other", 0),
            fallbacks=transcript.stats.fallback_count,
            chi_asymptotic=chi_pred,
            ratio=ratio,
            wall_time_s=time.perf_counter() - t0,
        )

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            rows = list(pool.map(one_trial, range(config.trials)))
    else:
        rows = [one_trial(i) for i in range(config.trials)]

    wins = sum(1 for r in rows if r.outcome == Outcome.CORRECTOR_WINS.value)
    ratios = [r.ratio for r in rows if r.ratio is not None]
    summary = {
        "n": config.n,
        "p": config.p,
        "trials": config.trials,
        "master_seed": config.master_seed,
        "painter": config.painter,
        "corrector": config.corrector,
        "budget": budget,
        "corrector_wins": wins,
        "win_rate": wins / config.trials,
        "chi_asymptotic": chi_pred,
        "ratio_min": min(ratios) if ratios else None,
        "ratio_mean": sum(ratios) / len(ratios) if ratios else None,
        "ratio_max": max(ratios) if ratios else None,
        "total_fallbacks": sum(r.fallbacks for r in rows),
    }
    return ExperimentResult(config=config, budget=budget, rows=rows, summary=summary)


def rows_to_csv(rows: list[ReportRow], fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(ReportRow.CSV_FIELDS)
    for row in rows:
        writer.writerow(row.csv_record())


def summary_to_json(summary: dict) -> str:
    return json.dumps(summary, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# chain check


@dataclass
class ChainRow:
    name: str
    n: int
    m: int
    chi: int
    chi_list: Optional[int]
    chi_paint: int
    upper: float


@dataclass
class ChainCheckResult:
    rows: list[ChainRow]
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def _fixture_families(n_max: int) -> list[tuple[str, Graph]]:
    graphs: list[tuple[str, Graph]] = []
    for n in range(1, 7):
        graphs.append((f"K{n}", Graph.complete(n)))
    for n in range(1, 10):
        graphs.append((f"P{n}", Graph.path(n)))
    for n in range(3, 10):
        graphs.append((f"C{n}", Graph.cycle(n)))
    for a in range(1, 5):
        for b in range(a, 9 - a):
            graphs.append((f"K{a},{b}", Graph.complete_bipartite(a, b)))
    return [(name, g) for name, g in graphs if g.n <= max(n_max, 9)]


def chain_check(n_max: int, samples: int, seed: int) -> ChainCheckResult:
    """Exact chi <= chi_L <= chi_P <= chi*log(n)+1 over fixture families and
    seeded random graphs (chi_L only where the choosability caps allow)."""
    if n_max > solver.PAINTABILITY_CAP:
        raise ConfigError(f"n_max exceeds the paintability cap {solver.PAINTABILITY_CAP}")
    stream = SplitStream(seed)
    todo = _fixture_families(n_max)
    for i in range(samples):
        n = 1 + stream.randrange(n_max)
        p = 0.1 + 0.6 * stream.uniform()
        g = gnp(n, p, stream.u64())
        todo.append((f"gnp-{i}(n={n})", g))

    rows: list[ChainRow] = []
    violations: list[str] = []
    for name, g in todo:
        chi = solver.chromatic_number(g)
        chi_p = solver.paintability(g)
        chi_l: Optional[int] = None
        if g.n <= solver.CHOOSABLE_N_CAP:
            try:
                chi_l = solver.choice_number(g)
            except ResourceCapError:
                chi_l = None
        upper = chi * math.log(max(g.n, 1)) + 1.0
        rows.append(ChainRow(name, g.n, g.m, chi, chi_l, chi_p, upper))
        if not chi <= chi_p:
            violations.append(f"{name}: chi {chi} > chi_P {chi_p}")
        if chi_p > upper + 1e-9:
            violations.append(f"{name}: chi_P {chi_p} > chi*log n + 1 = {upper:.4f}")
        if chi_l is not None and not chi <= chi_l <= chi_p:
            violations.append(f"{name}: chain broken at chi_L: {chi}, {chi_l}, {chi_p}")
    return ChainCheckResult(rows=rows, violations=violations)


# ---------------------------------------------------------------------------
# ratio sweep


@dataclass
class SweepResult:
    table: list[dict]
    non_increasing: bool
    slack: float


def ratio_sweep(
    n_list: list[int],
    p: float,
    corrector: str,
    painter: str,
    trials: int,
    master_seed: int,
    factor: float = 2.5,
    slack: float = 0.05,
) -> SweepResult:
    """Mean eraser ratios across graph sizes; verdict checks the means are
    non-increasing up to the given multiplicative slack."""
    table = []
    for n in n_list:
        cfg = ExperimentConfig(
            n=n,
            p=p,
            trials=trials,
            master_seed=master_seed,
            budget=BudgetRule(predicted_times=factor),
            painter=painter,
            corrector=corrector,
        )
        res = run_experiment(cfg)
        table.append(
            {
                "n": n,
                "mean_ratio": res.summary["ratio_mean"],
                "win_rate": res.summary["win_rate"],
                "budget": res.budget,
            }
        )
    ok = True
    for prev, cur in zip(table, table[1:]):
        if cur["mean_ratio"] > prev["mean_ratio"] * (1.0 + slack):
            ok = False
    return SweepResult(table=table, non_increasing=ok, slack=slack)
