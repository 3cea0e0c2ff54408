"""Figure-data regeneration: every curve is recomputed, nothing hard-coded.

Each figure id maps to a (header, rows) table mirroring the corresponding
plot: fig1 the strict-bound CQ-channel advantage, fig2 the dimensional
advantage of the noiseless capacity, fig3a/fig3b the dephasing capacities
against the noise parameter, fig4a the noiseless dense-coding hierarchy and
fig4b its complete-dephasing counterpart.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import dense_coding, dephasing, noiseless, optimize
from .errors import UnknownFigure

FIGURE_IDS = ("fig1", "fig2", "fig3a", "fig3b", "fig4a", "fig4b")

FIG2_DIMS = (2, 3, 4, 8, math.inf)
FIG3A_ENERGIES = (0.1, 0.2, 0.3, 0.4, 0.5)
FIG3B_ENERGIES = (0.5, 0.7, 1.0)


def _cfg(seed: int) -> optimize.OptimizerConfig:
    return optimize.OptimizerConfig(
        seed=seed,
        max_evals=dense_coding._DC_MAX_EVALS,
        refine_iters=dense_coding._DC_REFINE_ITERS,
    )


def _fig1_row(args):
    e, seed = args
    assisted = dense_coding.dc_dephasing_capacity(e, "strict", "optimized", _cfg(seed))
    unassisted = dephasing.strict_optimal_capacity(0.5, e)
    return [e, assisted.value, unassisted.value]


def _fig2_row(args):
    e, _seed = args
    values = dict(noiseless.capacity_curve(e, FIG2_DIMS))
    return [e] + [values[d] for d in FIG2_DIMS]


def _fig3a_row(args):
    lam, _seed = args
    return [lam] + [
        dephasing.avg_equiprob_capacity(lam, e).value for e in FIG3A_ENERGIES
    ]


def _fig3b_row(args):
    lam, _seed = args
    row = [lam]
    for e in FIG3B_ENERGIES:
        row.append(dephasing.strict_equiprob_capacity(lam, e).value)
        row.append(dephasing.strict_optimal_capacity(lam, e).value)
    return row


def _fig4a_row(args):
    e, seed = args
    cfg = _cfg(seed)
    return [
        e,
        dense_coding.dc_noiseless_numeric(e, "average", "optimized", cfg).value,
        dense_coding.dc_noiseless_numeric(e, "average", "equiprobable", cfg).value,
        dense_coding.dc_noiseless_numeric(e, "strict", "optimized", cfg).value,
        dense_coding.dc_noiseless_numeric(e, "strict", "equiprobable", cfg).value,
        noiseless.noiseless_capacity(2, e).value,
    ]


def _fig4b_row(args):
    e, seed = args
    cfg = _cfg(seed)
    return [
        e,
        dense_coding.dc_dephasing_capacity(e, "strict", "optimized", cfg).value,
        dense_coding.dc_dephasing_capacity(e, "strict", "equiprobable", cfg).value,
        dephasing.strict_optimal_capacity(0.5, e).value,
        dephasing.strict_equiprob_capacity(0.5, e).value,
    ]


_FIGURES = {
    "fig1": (
        ["E", "C^DC_{E}_S(deph 1/2)", "C_{E}_S(deph 1/2)"],
        _fig1_row,
        lambda n: np.linspace(0.1, 1.0, n),
    ),
    "fig2": (
        ["E"] + [f"d={'inf' if d == math.inf else d}" for d in FIG2_DIMS],
        _fig2_row,
        lambda n: np.linspace(0.05, 0.5, n),
    ),
    "fig3a": (
        ["lambda"] + [f"E={e}" for e in FIG3A_ENERGIES],
        _fig3a_row,
        lambda n: np.linspace(0.0, 1.0, n),
    ),
    "fig3b": (
        ["lambda"]
        + [
            name
            for e in FIG3B_ENERGIES
            for name in (f"Ctilde_{{E}}_S(E={e})", f"C_{{E}}_S(E={e})")
        ],
        _fig3b_row,
        lambda n: np.linspace(0.0, 1.0, n),
    ),
    "fig4a": (
        ["E", "C^DC_avg", "Ctilde^DC_avg", "C^DC_strict", "Ctilde^DC_strict", "C_{E}"],
        _fig4a_row,
        lambda n: np.linspace(0.05, 0.45, n),
    ),
    "fig4b": (
        [
            "E",
            "C^DC_{E}_S(deph)",
            "Ctilde^DC_{E}_S(deph)",
            "C_{E}_S(deph)",
            "Ctilde_{E}_S(deph)",
        ],
        _fig4b_row,
        lambda n: np.linspace(0.1, 0.9, n),
    ),
}


def figure_table(name: str, resolution: int = 9, seed: int = 42, jobs: int = 1):
    """(header, rows) for one figure id; rows ordered along the x grid."""
    if name not in _FIGURES:
        raise UnknownFigure(f"unknown figure {name!r}; known: {', '.join(FIGURE_IDS)}")
    if resolution < 2:
        raise UnknownFigure(f"resolution must be >= 2, got {resolution}")
    header, row_fn, grid_fn = _FIGURES[name]
    grid = [float(x) for x in grid_fn(resolution)]
    args = [(x, seed) for x in grid]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(row_fn, args))
    else:
        rows = [row_fn(a) for a in args]
    return header, rows
