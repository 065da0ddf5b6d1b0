"""Least-squares fits used to relate seed size to network structure and runtime to size."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import stats


@dataclass(frozen=True)
class PlanarFit:
    coef_M: float
    coef_C: float
    intercept: float
    r_squared: float
    p_value: float


def _ols(y: np.ndarray, design: np.ndarray) -> tuple[np.ndarray, float, float]:
    n, p = design.shape
    if np.linalg.matrix_rank(design) < p:
        raise ValueError("rank-deficient design: predictors are constant or collinear")
    beta, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ beta
    ss_res = float(resid @ resid)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    r2 = min(max(r2, 0.0), 1.0)
    df_model, df_resid = p - 1, n - p
    if ss_res <= 1e-12 * max(ss_tot, 1.0):
        p_value = 0.0  # exact fit
    else:
        f_stat = ((ss_tot - ss_res) / df_model) / (ss_res / df_resid)
        p_value = float(stats.f.sf(f_stat, df_model, df_resid))
    return beta, r2, p_value


def planar_fit(M: Sequence[float], C: Sequence[float], S: Sequence[float]) -> PlanarFit:
    """Fit ``S = a*M + b*C + c`` by ordinary least squares.

    The p-value is that of the overall F-test. Needs at least 4 rows.
    """
    M, C, S = (np.asarray(x, dtype=float) for x in (M, C, S))
    if not (M.shape == C.shape == S.shape) or M.ndim != 1:
        raise ValueError("M, C and S must be equal-length 1-d sequences")
    if M.size < 4:
        raise ValueError("planar fit needs at least 4 rows")
    design = np.column_stack((M, C, np.ones_like(M)))
    (a, b, c), r2, p = _ols(S, design)
    return PlanarFit(float(a), float(b), float(c), r2, p)


@dataclass(frozen=True)
class LineFit:
    slope: float
    intercept: float
    r_squared: float
    p_value: float


def line_fit(x: Sequence[float], y: Sequence[float]) -> LineFit:
    res = stats.linregress(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    return LineFit(float(res.slope), float(res.intercept), float(res.rvalue ** 2), float(res.pvalue))
