"""Acceptance suite: one test per release criterion, one printed verdict line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the verdict lines.
The asymptotic headline results are not reachable at these sizes; every
quantitative threshold below is a calibrated, frozen fixture with the
structural guarantees (chains, exhaustive families, partition contracts)
checked exactly.
"""

import json
import math
import time
from pathlib import Path

import numpy as np
import pytest

from paintlab import bounds, indsets, solver
from paintlab import experiments as ex
from paintlab.cli import main as cli_main
from paintlab.engine import Outcome, play
from paintlab.graph import ComponentClass, Graph, gnp
from paintlab.rng import SplitStream, child_seed
from paintlab.smallgraphs import enumerate_trees, enumerate_unicyclic
from paintlab import strategies as st

MASTER_SEED = 20240809


def _verdict(num: int, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


def test_criterion_1_chain_suite():
    t0 = time.time()
    res = ex.chain_check(n_max=8, samples=300, seed=12345)
    wall = time.time() - t0
    ok = res.ok and wall < 600
    _verdict(
        1,
        ok,
        f"chain chi <= chi_L <= chi_P <= chi*ln n + 1 on {len(res.rows)} graphs, "
        f"{len(res.violations)} violations, {wall:.0f}s",
    )


def test_criterion_2_exact_values():
    problems = []
    for n in range(1, 7):
        if solver.paintability(Graph.complete(n)) != n:
            problems.append(f"K{n}")
    for n in range(3, 10):
        expect = 3 if n % 2 else 2
        if solver.paintability(Graph.cycle(n)) != expect:
            problems.append(f"C{n}")
    trees = 0
    for n in range(2, 10):
        for t in enumerate_trees(n):
            trees += 1
            if solver.paintability(t) != 2:
                problems.append(f"tree n={n}")
    unicyclic = 0
    for n in range(3, 9):
        for g in enumerate_unicyclic(n):
            unicyclic += 1
            if solver.paintability(g) > 3:
                problems.append(f"unicyclic n={n}")
    _verdict(
        2,
        not problems,
        f"chi_P exact on K1..K6, C3..C9, {trees} trees, {unicyclic} unicyclic"
        + (f"; failed: {problems[:3]}" if problems else ""),
    )


def test_criterion_3_strategy_soundness_vs_optimal():
    losses = []
    games = 0
    for n in range(2, 10):
        for tree in enumerate_trees(n):
            for seed in range(2):
                t = play(tree, 1, st.make_painter("optimal"), st.make_corrector("tree"), seed=seed)
                games += 1
                if t.outcome is not Outcome.CORRECTOR_WINS:
                    losses.append(("tree", n, seed))
    for n in range(3, 9):
        for g in enumerate_unicyclic(n):
            for seed in range(2):
                t = play(g, 2, st.make_painter("optimal"), st.make_corrector("tree"), seed=seed)
                games += 1
                if t.outcome is not Outcome.CORRECTOR_WINS:
                    losses.append(("unicyclic", n, seed))
    _verdict(
        3,
        not losses,
        f"tree@1 / unicyclic@2 vs game-tree painter: {games} games, {len(losses)} losses",
    )


def test_criterion_4_reduction_soundness_k24():
    k24 = Graph.complete_bipartite(2, 4)
    lists = {
        0: frozenset({1, 2}),
        1: frozenset({3, 4}),
        2: frozenset({1, 3}),
        3: frozenset({1, 4}),
        4: frozenset({2, 3}),
        5: frozenset({2, 4}),
    }
    assert not solver.is_list_colourable(k24, lists)
    correctors = ("dense", "sparse", "very-sparse", "tree", "maximal-is", "optimal")
    failures = []
    for cname in correctors:
        for seed in range(20):
            t = play(k24, 1, st.list_adversary_painter(lists), st.make_corrector(cname), seed=seed)
            if t.outcome is not Outcome.PAINTER_WINS:
                failures.append((cname, seed))
    _verdict(
        4,
        not failures,
        f"K2,4 list adversary at budget 1 beats {len(correctors)} correctors x 20 seeds"
        + (f"; survived: {failures[:3]}" if failures else ""),
    )


def test_criterion_5_partition_contract():
    n = 10**5
    violations = 0
    checked = 0
    for p in (0.5, 0.05, 0.01):
        g = gnp(n, p, seed=hash(("criterion5", p)) & (2**63 - 1))
        stream = SplitStream(4242)
        omega = max(1.5, math.log(math.log(n)))
        ln2 = math.log(n) ** 2
        lo = int(n * p / (omega * ln2)) + 1
        hi = max(int(n / (omega * ln2)), lo + 5)
        for _ in range(34):
            size = lo + stream.randrange(hi - lo + 1)
            S = stream.permutation(n)[:size]
            for part in (
                indsets.medium_partition_dense(g, S, p, seed=stream.u64()),
                indsets.medium_partition_typed(g, S, p, omega, seed=stream.u64()),
            ):
                checked += 1
                if indsets.check_partition(g, S, part, p):
                    violations += 1

    # statistical guarantee check: sets of size >= s0 on G(1e5, 1/2)
    # contain an independent set of size ceil(1/(9p))
    g = gnp(n, 0.5, seed=777)
    s0 = 10 * math.log(n) / 0.5
    target = math.ceil(1 / (9 * 0.5))
    stream = SplitStream(31337)
    fallbacks = 0
    for _ in range(100):
        size = int(s0) + stream.randrange(500)
        S = stream.permutation(n)[:size]
        _, rep = indsets.find_independent_of_size(g, S, target, max_attempts=8, seed=stream.u64())
        fallbacks += int(rep.fallback)
    ok = checked >= 200 and violations == 0 and fallbacks <= 5
    _verdict(
        5,
        ok,
        f"{checked} partitions, {violations} contract violations; "
        f"statistical check fallback rate {fallbacks}/100",
    )


def test_criterion_6_dense_simulation_fixture():
    t0 = time.time()
    n = 2**14
    budget_expected = math.ceil(2.5 * n / (2 * math.log2(n / 2)))
    painters = ("full-set", "random:0.5", "low-eraser")
    results = {}
    for painter in painters:
        cfg = ex.ExperimentConfig(
            n=n,
            p=0.5,
            trials=5,
            master_seed=MASTER_SEED,
            budget=ex.BudgetRule(predicted_times=2.5),
            painter=painter,
            corrector="dense",
        )
        res = ex.run_experiment(cfg)
        assert res.budget == budget_expected
        results[painter] = (res.summary["win_rate"], res.summary["ratio_mean"])
    wall = time.time() - t0
    ok = (
        all(w == 1.0 for w, _ in results.values())
        and all(r <= 2.5 for _, r in results.values())
        and wall < 1200
    )
    detail = ", ".join(
        f"{p}: win {w:.0%} ratio {r:.3f}" for p, (w, r) in results.items()
    )
    _verdict(6, ok, f"dense n=2^14 budget {budget_expected}: {detail} ({wall:.0f}s)")


def test_criterion_7_ratio_trend():
    res = ex.ratio_sweep(
        [2**12, 2**13, 2**14], 0.5, "dense", "full-set", trials=5, master_seed=MASTER_SEED
    )
    ratios = [row["mean_ratio"] for row in res.table]
    wins = [row["win_rate"] for row in res.table]
    ok = res.non_increasing and all(w == 1.0 for w in wins)
    _verdict(
        7,
        ok,
        "mean ratios over n=2^12..2^14: "
        + ", ".join(f"{r:.4f}" for r in ratios)
        + f" (non-increasing within {res.slack:.0%} slack)",
    )


def test_criterion_8_very_sparse_suite():
    n, p = 3000, 0.5 / 3000
    master = 883
    complex_trials = 0
    for i in range(50):
        g = gnp(n, p, child_seed(child_seed(master, i), 0))
        if any(c is ComponentClass.COMPLEX for _, c in g.components()):
            complex_trials += 1
    win_rates = {}
    for painter in ("full-set", "random:0.5", "low-eraser"):
        cfg = ex.ExperimentConfig(
            n=n,
            p=p,
            trials=50,
            master_seed=master,
            budget=ex.BudgetRule(fixed=2),
            painter=painter,
            corrector="very-sparse",
        )
        win_rates[painter] = ex.run_experiment(cfg).summary["win_rate"]
    ok = complex_trials <= 2 and all(w == 1.0 for w in win_rates.values())
    _verdict(
        8,
        ok,
        f"complex-component trials {complex_trials}/50 (<=2 allowed); "
        + ", ".join(f"{p}: {w:.0%}" for p, w in win_rates.items())
        + " at budget 2",
    )


def test_criterion_9_numeric_identities():
    problems = []
    for i in range(1, 41):
        if bounds.phi(2.0**i / i) < 2.0**i / 4.0:
            problems.append(f"phi at i={i}")
    if abs(bounds.constant_factor(4.0) - 4.0) > 1e-12:
        problems.append("constant_factor discontinuous at C=4")
    if abs(bounds.constant_factor(4.0 + 1e-9) - 4.0) > 1e-6:
        problems.append("constant_factor discontinuous above C=4")
    for n, p in ((10**4, 0.5), (2**14, 0.5), (10**6, 1e-3), (10**5, 0.01)):
        rb = bounds.regime_bounds(n, p, 2.0)
        if abs(rb.chi_async - rb.eraser_budget_prediction) > 1e-9 * rb.chi_async:
            problems.append(f"identity at ({n},{p})")
    lg = math.lgamma
    for n, p in ((10**4, 0.5), (10**6, 0.5), (10**5, 0.01)):
        kstar = indsets.k0(n, p)
        f = lambda k: (
            lg(n + 1) - lg(k + 1) - lg(n - k + 1)
            + 0.5 * k * (k - 1) * math.log1p(-p) - 4 * math.log(n)
        )
        if kstar is None or f(kstar) < 0 or (kstar < n and f(kstar + 1) >= 0):
            problems.append(f"k0 inequality at ({n},{p})")
    _verdict(9, not problems, "phi / constant-factor / identity / k0 checks"
             + (f"; failed: {problems}" if problems else ""))


def test_criterion_10_cli_determinism(tmp_path):
    cfg = {
        "version": 1,
        "n": 256,
        "p": 0.5,
        "trials": 2,
        "master_seed": 9,
        "budget": {"predicted_times": 3.0},
        "painter": "full-set",
        "corrector": "dense",
    }
    cfg_file = tmp_path / "cfg.json"
    cfg_file.write_text(json.dumps(cfg))
    k4_file = tmp_path / "k4.edges"
    k4_file.write_text(Graph.complete(4).to_edge_list_text())

    commands = {
        "gen": ["gen", "--n", "64", "--p", "0.4", "--seed", "3"],
        "solve": ["solve", "--graph", str(k4_file)],
        "play": [
            "play", "--gnp", "32:0.4:2", "--budget", "6",
            "--painter", "full-set", "--corrector", "maximal-is", "--seed", "4",
        ],
        "simulate": ["simulate", "--config", str(cfg_file)],
        "chain-check": ["chain-check", "--n-max", "5", "--samples", "5", "--seed", "1"],
        "ratio-sweep": [
            "ratio-sweep", "--n-list", "256", "--p", "0.5", "--trials", "2", "--seed", "5",
        ],
        "predict": ["predict", "--n", "4096", "--p", "0.5", "--omega", "2"],
        "verify-partition": [
            "verify-partition", "--gnp", "1500:0.2:3", "--set-size", "200", "--seed", "8",
        ],
    }
    unstable = []
    for name, argv in commands.items():
        outs = []
        for run_idx in range(2):
            out = tmp_path / f"{name}.{run_idx}.out"
            if name == "simulate":
                code = cli_main(argv + ["--out", str(tmp_path / f'{name}.{run_idx}')])
                body = (
                    Path(f"{tmp_path}/{name}.{run_idx}.rows.csv").read_bytes()
                    + Path(f"{tmp_path}/{name}.{run_idx}.summary.json").read_bytes()
                )
            else:
                code = cli_main(argv + ["--out", str(out)])
                body = out.read_bytes()
            assert code == 0, (name, code)
            outs.append(body)
        if outs[0] != outs[1]:
            unstable.append(name)
    _verdict(
        10,
        not unstable,
        f"byte-identical reruns for {len(commands)} subcommands"
        + (f"; unstable: {unstable}" if unstable else ""),
    )
