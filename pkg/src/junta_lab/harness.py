"""Reproducible experiment runner with CSV rows and a JSON aggregate sidecar.

Configs are JSON objects whose keys are the ``ExperimentConfig`` field names.
Trial ``i`` uses the generator seeded with ``seed ^ i``, so serial and
parallel runs produce identical reports. ``JUNTA_LAB_WORKERS`` sets the
worker-process count (default 1).
"""

import csv
import dataclasses
import io as _io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import generators
from .boolean import BooleanFunction
from .errors import BudgetExceededError, CapacityError, ParameterError
from .oracles import NO, YES, certify
from .samplers import QueryLedger, make_rng
from .testers import BOOLEAN_TESTERS, DEFAULT_BUDGET, TESTERS, check_gap, projected_gapless_cost, run_tester

CSV_HEADER = (
    "trial", "seed", "certified_distance", "verdict", "statistic",
    "fourier_calls", "influence_calls", "controlled_u_calls",
)
INSTANCE_CLASSES = ("exact-junta", "perturbed", "far", "dyes", "dno", "from-file")
WORKERS_ENV = "JUNTA_LAB_WORKERS"
SEED_MASK = 2**64 - 1


@dataclass(frozen=True)
class ExperimentConfig:
    tester: str
    n: int
    k: int
    eps1: float
    eps2: float
    instance_class: str
    trials: int = 50
    seed: int = 0
    output_path: str = "report.csv"
    budget_ceiling: float = DEFAULT_BUDGET
    input_path: str = None
    c1: float = None

    def validate(self):
        if self.tester not in TESTERS:
            raise ParameterError(f"unknown tester {self.tester!r}; choose from {sorted(TESTERS)}")
        if self.instance_class not in INSTANCE_CLASSES:
            raise ParameterError(f"unknown instance_class {self.instance_class!r}")
        for name in ("n", "k", "trials", "seed"):
            if not isinstance(getattr(self, name), int) or isinstance(getattr(self, name), bool):
                raise ParameterError(f"{name} must be an integer")
        if self.trials < 0:
            raise ParameterError("trials must be >= 0")
        if not 0 <= self.seed <= SEED_MASK:
            raise ParameterError("seed must be a 64-bit unsigned integer")
        if not 1 <= self.k < self.n:
            raise ParameterError(f"need 1 <= k < n, got k={self.k}, n={self.n}")
        check_gap(self.tester, self.eps1, self.eps2)
        boolean = self.tester in BOOLEAN_TESTERS
        if self.instance_class in ("dyes", "dno") and not boolean:
            raise ParameterError(f"{self.instance_class} instances are Boolean; tester {self.tester} is not")
        if self.instance_class == "from-file" and not self.input_path:
            raise ParameterError("from-file instances need input_path")
        if self.budget_ceiling is not None and self.budget_ceiling <= 0:
            raise ParameterError("budget_ceiling must be positive")
        return self

    @property
    def boolean(self):
        return self.tester in BOOLEAN_TESTERS

    def to_dict(self):
        return dataclasses.asdict(self)


def load_config(path=None, **overrides):
    """Read a JSON config and apply non-None overrides on top."""
    data = {}
    if path is not None:
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ParameterError(f"config {path} is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ParameterError("config must be a JSON object")
    data.update({k: v for k, v in overrides.items() if v is not None})
    fields = {f.name for f in dataclasses.fields(ExperimentConfig)}
    unknown = set(data) - fields
    if unknown:
        raise ParameterError(f"unknown config keys {sorted(unknown)}")
    try:
        cfg = ExperimentConfig(**data)
    except TypeError as exc:
        raise ParameterError(str(exc)) from None
    return cfg.validate()


def _load_file_instance(cfg):
    from .io import read_instance

    inst = read_instance(cfg.input_path)
    if isinstance(inst, BooleanFunction) != cfg.boolean:
        raise ParameterError(f"{cfg.input_path} holds the wrong instance type for {cfg.tester}")
    if inst.n != cfg.n:
        raise ParameterError(f"{cfg.input_path} has n={inst.n}, config says n={cfg.n}")
    return inst


def make_instance(cfg, rng):
    """Instance for one trial; returns ``(object, info dict)``."""
    n, k = cfg.n, cfg.k
    cls = cfg.instance_class
    if cls == "exact-junta":
        maker = generators.random_k_junta_boolean if cfg.boolean else generators.random_k_junta_unitary
        obj, t = maker(n, k, rng)
        return obj, {"junta_set": t}
    if cls == "perturbed":
        maker = generators.perturbed_junta_boolean if cfg.boolean else generators.perturbed_junta_unitary
        obj, _ = maker(n, k, cfg.eps1, rng)
        return obj, {}
    if cls == "far":
        inst = generators.far_instance(n, k, cfg.eps2, rng, kind="boolean" if cfg.boolean else "unitary")
        return inst.obj, dict(inst.info)
    if cls in ("dyes", "dno"):
        a = n - k
        c1 = cfg.c1 if cfg.c1 is not None else 0.005 * math.sqrt(a)
        draw = generators.sample_dyes_dno(k, a, c1, rng, "yes" if cls == "dyes" else "no")
        return draw.f, {"action": draw.action}
    return _load_file_instance(cfg), {}


def run_trial(cfg, trial):
    """One trial as a CSV row dict plus the certification label."""
    seed = cfg.seed ^ trial
    rng = make_rng(seed)
    obj, _ = make_instance(cfg, rng)
    try:
        cert = certify(obj, cfg.k, cfg.eps1, cfg.eps2)
        distance, label = cert.distance, cert.classification
    except CapacityError:
        distance, label = None, None
    ledger = QueryLedger()
    extra = {"budget_ceiling": cfg.budget_ceiling} if cfg.tester == "alg8" else {}
    verdict = run_tester(cfg.tester, obj, cfg.k, cfg.eps1, cfg.eps2, rng, ledger, **extra)
    row = {
        "trial": trial,
        "seed": seed,
        "certified_distance": "" if distance is None else repr(distance),
        "verdict": verdict.verdict,
        "statistic": repr(verdict.statistic),
        "fourier_calls": ledger.fourier_sample_calls,
        "influence_calls": ledger.influence_sample_calls,
        "controlled_u_calls": ledger.controlled_U_applications,
    }
    return row, label


def _trial_job(args):
    cfg, trial = args
    return run_trial(cfg, trial)


def _workers():
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        w = int(raw)
    except ValueError:
        raise ParameterError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    return max(1, w)


def aggregate(cfg, rows, labels):
    """Success fraction over certified YES/NO trials and mean query counts."""
    scored = [(r, lab) for r, lab in zip(rows, labels) if lab in (YES, NO)]
    correct = sum(1 for r, lab in scored if (r["verdict"] == "Yes") == (lab == YES))
    t = len(rows)

    def mean(key):
        return sum(r[key] for r in rows) / t if t else 0.0

    return {
        "config": cfg.to_dict(),
        "status": "ok",
        "trials": t,
        "certified": {lab: sum(1 for x in labels if x == lab) for lab in (YES, NO, "NEITHER")},
        "uncertified": sum(1 for x in labels if x is None),
        "scored_trials": len(scored),
        "successes": correct,
        "success_fraction": correct / len(scored) if scored else None,
        "yes_verdicts": sum(1 for r in rows if r["verdict"] == "Yes"),
        "mean_fourier_calls": mean("fourier_calls"),
        "mean_influence_calls": mean("influence_calls"),
        "mean_controlled_u_calls": mean("controlled_u_calls"),
    }


def sidecar_path(output_path):
    p = Path(output_path)
    return p.with_suffix(".json") if p.suffix == ".csv" else p.with_name(p.name + ".json")


def _csv_text(rows):
    buf = _io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_HEADER, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _write(cfg, rows, summary):
    out = Path(cfg.output_path)
    if out.parent and not out.parent.exists():
        out.parent.mkdir(parents=True)
    out.write_text(_csv_text(rows))
    sidecar_path(out).write_text(json.dumps(summary, sort_keys=True, indent=2) + "\n")


def check_budget(cfg):
    """Abort an alg8 run whose projected cost exceeds the ceiling."""
    if cfg.tester != "alg8" or cfg.budget_ceiling is None:
        return
    cost = projected_gapless_cost(cfg.n, cfg.k, cfg.eps1, cfg.eps2)
    if cost["controlled_U_applications"] > cfg.budget_ceiling:
        raise BudgetExceededError(
            f"projected {cost['controlled_U_applications']:.3e} controlled-U applications "
            f"exceed the ceiling {cfg.budget_ceiling:.3e}",
            cost,
        )


def run_experiment(cfg):
    """Run every trial, write the CSV and JSON sidecar, return the aggregate.

    On a budget overrun the CSV holds only the header and the sidecar records
    the projected cost before the error is re-raised.
    """
    cfg.validate()
    try:
        check_budget(cfg)
    except BudgetExceededError as exc:
        _write(cfg, [], {
            "config": cfg.to_dict(), "status": "budget_exceeded",
            "error": str(exc), "cost_estimate": exc.estimate,
        })
        raise
    jobs = [(cfg, t) for t in range(cfg.trials)]
    workers = _workers()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_trial_job, jobs))
    else:
        results = [_trial_job(j) for j in jobs]
    rows = [r for r, _ in results]
    labels = [lab for _, lab in results]
    summary = aggregate(cfg, rows, labels)
    _write(cfg, rows, summary)
    return summary
