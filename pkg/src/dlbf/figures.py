"""Datasets behind the deletability and false-positive figures.

``fig2`` is the analytical deletability sweep, ``fig3`` the simulated
deletability for several region counts, ``fig4`` the simulated
false-positive rate before/after removal next to a standard filter.
"""

from __future__ import annotations

from .analysis import MODEL_COLUMNS, ModelParams, deletability_curve, fpr_dlbf, fpr_sbf
from .filters import FilterParams
from .simulation import SIMULATION_COLUMNS, ExperimentConfig, run_experiment, run_sbf_baseline

FIGURES = ("fig2", "fig3", "fig4")

DEFAULTS = {
    "m": 240,
    "k": 5,
    "r": 24,
    "hash_seed": 0,
    "trials": 2000,
    "probes": 500,
    "seed": 0,
    "ratios": (2, 4, 10, 20, 40),
    "densities": tuple(range(2, 33)),
    "r_values": (12, 24, 60, 120),
    "n_values": tuple(range(2, 51, 2)),
    "source": "synthetic",
    "wordlist": None,
    "workers": 1,
}

FIG4_COLUMNS = (
    "m", "r", "k", "n", "trials", "probes", "master_seed",
    "mean_fpr_before", "ci95_fpr_before", "mean_fpr_after", "ci95_fpr_after",
    "mean_fpr_sbf", "ci95_fpr_sbf", "model_fpr_dlbf", "model_fpr_sbf",
)


def columns(which: str) -> tuple[str, ...]:
    return {"fig2": MODEL_COLUMNS, "fig3": SIMULATION_COLUMNS, "fig4": FIG4_COLUMNS}[which]


def _config(opts: dict, r: int, n: int) -> ExperimentConfig:
    return ExperimentConfig(
        params=FilterParams(m=opts["m"], r=r, k=opts["k"], seed=opts["hash_seed"]),
        n=n,
        trials=opts["trials"],
        probes=opts["probes"],
        master_seed=opts["seed"],
        source=opts["source"],
        wordlist=opts["wordlist"],
    )


def figure_dataset(which: str, **overrides) -> list[dict]:
    """Rows for one figure; keyword overrides replace entries of ``DEFAULTS``."""
    if which not in FIGURES:
        raise ValueError(f"unknown figure {which!r}; valid ids: {', '.join(FIGURES)}")
    unknown = set(overrides) - set(DEFAULTS)
    if unknown:
        raise TypeError(f"unknown figure options: {sorted(unknown)}")
    opts = {**DEFAULTS, **{k: v for k, v in overrides.items() if v is not None}}

    if which == "fig2":
        points = deletability_curve(opts["m"], opts["ratios"], opts["k"], opts["densities"])
        return [p.as_row() for p in points]

    if which == "fig3":
        return [
            run_experiment(_config(opts, r, n), workers=opts["workers"]).as_row()
            for r in opts["r_values"]
            for n in opts["n_values"]
        ]

    rows = []
    for n in opts["n_values"]:
        config = _config(opts, opts["r"], n)
        dlbf = run_experiment(config, workers=opts["workers"])
        sbf = run_sbf_baseline(config, workers=opts["workers"])
        row = {key: dlbf.as_row()[key] for key in FIG4_COLUMNS[:11]}
        row.update(
            mean_fpr_sbf=sbf["fpr_before"].mean,
            ci95_fpr_sbf=sbf["fpr_before"].ci95,
            model_fpr_dlbf=fpr_dlbf(ModelParams(opts["m"], opts["r"], opts["k"], n)),
            model_fpr_sbf=fpr_sbf(opts["m"], opts["k"], n),
        )
        rows.append(row)
    return rows
