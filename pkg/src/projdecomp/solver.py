"""Projective decomposition ``A = sigma * D_alpha W D_beta``.

``W`` has unit RMS in every row and every column; ``sigma`` is the RMS of
``A``; ``alpha`` and ``beta`` are strictly positive row and column scale
factors. :func:`decompose` computes it by alternately rescaling rows and
columns to unit RMS. :func:`sinkhorn_oracle` reaches the same result by
an independent route (classic sum balancing of the elementwise square)
and exists to cross-check the main solver.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DomainError, InfeasibleZeroLineError
from .matrix import Matrix, as_matrix, hadamard_power, rms, rms_cols, rms_rows

__all__ = [
    "Status",
    "Gauge",
    "SolverConfig",
    "ConvergenceReport",
    "Decomposition",
    "Defect",
    "precheck",
    "decompose",
    "sinkhorn_oracle",
    "gauge_constant",
    "gauge_fix",
    "reconstruct",
    "residual",
]


class Status(str, enum.Enum):
    CONVERGED = "converged"
    MAX_ITERATIONS = "max_iterations"
    STALLED = "stalled"
    INFEASIBLE_ZERO_LINE = "infeasible_zero_line"


class Gauge(str, enum.Enum):
    """How the free constant ``g`` in ``(g*alpha, beta/g)`` is chosen."""

    BALANCED = "balanced"
    UNIT_CONCAT = "unit_concat_if_feasible"
    NONE = "none"


@dataclass(frozen=True)
class SolverConfig:
    """Solver settings.

    Parameters
    ----------
    tol : float
        Largest allowed ``|RMS - 1|`` over all rows and columns of W.
    max_iter : int
        Cap on full (row pass, column pass) iterations.
    stall_window, stall_factor
        Stop with ``Status.STALLED`` when the residual has improved by less
        than ``stall_factor * tol`` over the last ``stall_window`` iterations.
    gauge : Gauge or str
        Gauge policy applied to ``(alpha, beta)``.
    """

    tol: float = 1e-10
    max_iter: int = 10000
    stall_window: int = 100
    stall_factor: float = 1e-3
    gauge: Gauge = Gauge.BALANCED

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.stall_window < 1:
            raise ValueError(f"stall_window must be >= 1, got {self.stall_window}")
        object.__setattr__(self, "gauge", Gauge(self.gauge))


@dataclass(frozen=True)
class ConvergenceReport:
    iterations: int
    residual: float
    status: Status
    history: tuple = field(default=(), repr=False)

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED


@dataclass(frozen=True)
class Decomposition:
    sigma: float
    alpha: np.ndarray
    beta: np.ndarray
    W: Matrix
    report: ConvergenceReport
    gauge: Gauge = Gauge.BALANCED
    # True when unit_concat_if_feasible had no real solution and fell back to balanced
    gauge_fallback: bool = False

    @property
    def shape(self):
        return self.W.shape

    def reconstruct(self) -> Matrix:
        return reconstruct(self)


class Defect(NamedTuple):
    kind: str  # "zero_row", "zero_col" or "zero_matrix"
    index: int | None = None


def precheck(A) -> list[Defect]:
    """List the defects that make ``A`` undecomposable (0-based indices).

    An entirely zero matrix is reported as a single ``zero_matrix`` defect.
    """
    A = as_matrix(A)
    if A.nnz == 0:
        return [Defect("zero_matrix")]
    rows, cols, _ = A.to_coo()
    m, n = A.shape
    row_hit = np.zeros(m, bool)
    col_hit = np.zeros(n, bool)
    row_hit[rows] = True
    col_hit[cols] = True
    defects = [Defect("zero_row", int(i)) for i in np.flatnonzero(~row_hit)]
    defects += [Defect("zero_col", int(j)) for j in np.flatnonzero(~col_hit)]
    return defects


def _raise_for_defects(A):
    defects = precheck(A)
    if not defects:
        return
    if defects[0].kind == "zero_matrix":
        raise DomainError("cannot decompose an all-zero matrix")
    raise InfeasibleZeroLineError(
        [d.index for d in defects if d.kind == "zero_row"],
        [d.index for d in defects if d.kind == "zero_col"],
    )


def _vec_rms(v):
    return float(np.sqrt(np.mean(v * v)))


def gauge_constant(alpha, beta, policy=Gauge.BALANCED) -> tuple[float, bool]:
    """Return ``(g, fell_back)`` for the given policy.

    ``fell_back`` is True only for ``unit_concat_if_feasible`` when
    ``g^2 sum(alpha^2) + sum(beta^2) / g^2 = m + n`` has no real root.
    """
    alpha = np.asarray(alpha, dtype=np.float64)
    beta = np.asarray(beta, dtype=np.float64)
    if np.any(~(alpha > 0)) or np.any(~(beta > 0)) or not np.all(np.isfinite(alpha)) or not np.all(
        np.isfinite(beta)
    ):
        raise DomainError("gauge fixing requires strictly positive, finite scale factors")
    policy = Gauge(policy)
    if policy is Gauge.NONE:
        return 1.0, False
    g_bal = float(np.sqrt(_vec_rms(beta) / _vec_rms(alpha)))
    if policy is Gauge.BALANCED:
        return g_bal, False
    # quadratic in x = g^2:  Sa x^2 - (m+n) x + Sb = 0
    m, n = len(alpha), len(beta)
    sa = float(np.sum(alpha * alpha))
    sb = float(np.sum(beta * beta))
    disc = (m + n) ** 2 - 4.0 * sa * sb
    if disc < 0:
        return g_bal, True
    root = np.sqrt(disc)
    candidates = [((m + n) - root) / (2 * sa), ((m + n) + root) / (2 * sa)]
    x = min((c for c in candidates if c > 0), key=lambda c: abs(c - g_bal * g_bal))
    return float(np.sqrt(x)), False


def gauge_fix(alpha, beta, policy=Gauge.BALANCED):
    """Return ``(g * alpha, beta / g)`` with ``g`` chosen by ``policy``."""
    g, _ = gauge_constant(alpha, beta, policy)
    return np.asarray(alpha, dtype=np.float64) * g, np.asarray(beta, dtype=np.float64) / g


def residual(W) -> float:
    """Largest deviation of any row or column RMS of ``W`` from 1."""
    W = as_matrix(W)
    return float(max(np.max(np.abs(rms_rows(W) - 1.0)), np.max(np.abs(rms_cols(W) - 1.0))))


def reconstruct(d: Decomposition) -> Matrix:
    """``sigma * D_alpha W D_beta``, elementwise as ``((sigma*alpha_i)*w_ij)*beta_j``."""
    row_f = d.sigma * np.asarray(d.alpha)
    beta = np.asarray(d.beta)
    return d.W._map_values(lambda v, r, c: (row_f[r] * v) * beta[c])


def _form_w(base: Matrix, alpha, beta) -> Matrix:
    # divide rather than multiply by reciprocals: one rounding per factor
    return base._map_values(lambda v, r, c: (v / alpha[r]) / beta[c])


def _stalled(history, cfg) -> bool:
    k = len(history) - 1
    if k < cfg.stall_window:
        return False
    return history[k - cfg.stall_window] - history[k] < cfg.stall_factor * cfg.tol


def _resolve_config(cfg, overrides) -> SolverConfig:
    if cfg is None:
        return SolverConfig(**overrides)
    if overrides:
        return SolverConfig(**{**cfg.__dict__, **overrides})
    return cfg


def decompose(A, cfg: SolverConfig | None = None, **overrides) -> Decomposition:
    """Projective decomposition of ``A`` by alternating row/column RMS scaling.

    Each iteration divides every row of W by its RMS (folding the factor
    into ``alpha``), then every column by its RMS (folding it into
    ``beta``). W is always re-formed from ``A / sigma`` and the current
    factors, so ``reconstruct`` reproduces ``A`` to round-off whatever the
    convergence status. Non-convergence is reported, not raised.

    Raises
    ------
    InfeasibleZeroLineError
        ``A`` has an all-zero row or column.
    DomainError
        ``A`` is entirely zero.
    """
    cfg = _resolve_config(cfg, overrides)
    A = as_matrix(A)
    _raise_for_defects(A)
    m, n = A.shape
    sigma = rms(A)
    base = A._map_values(lambda v, r, c: v / sigma)

    alpha = np.ones(m)
    beta = np.ones(n)
    W = base
    row_rms = rms_rows(W)
    col_rms = rms_cols(W)
    res = float(max(np.max(np.abs(row_rms - 1.0)), np.max(np.abs(col_rms - 1.0))))
    history = [res]
    fell_back = False
    status = Status.CONVERGED
    iterations = 0
    while res > cfg.tol:
        if iterations >= cfg.max_iter:
            status = Status.MAX_ITERATIONS
            break
        alpha = alpha * row_rms
        W = _form_w(base, alpha, beta)
        beta = beta * rms_cols(W)
        g, fell_back = gauge_constant(alpha, beta, cfg.gauge)
        alpha, beta = alpha * g, beta / g
        W = _form_w(base, alpha, beta)
        iterations += 1
        row_rms = rms_rows(W)
        col_rms = rms_cols(W)
        res = float(max(np.max(np.abs(row_rms - 1.0)), np.max(np.abs(col_rms - 1.0))))
        history.append(res)
        if res > cfg.tol and _stalled(history, cfg):
            status = Status.STALLED
            break

    report = ConvergenceReport(iterations, res, status, tuple(history))
    return Decomposition(sigma, alpha, beta, W, report, cfg.gauge, fell_back)


def sinkhorn_oracle(A, cfg: SolverConfig | None = None, **overrides) -> Decomposition:
    """Independent reference solver.

    Squares ``A / sigma`` elementwise and runs textbook Sinkhorn-Knopp sum
    balancing towards row sums ``n`` and column sums ``m``; the square
    roots of the resulting diagonal scalings give ``1/alpha`` and
    ``1/beta``. Uses plain dense numpy arithmetic and none of the RMS
    helpers used by :func:`decompose`.
    """
    cfg = _resolve_config(cfg, overrides)
    A = as_matrix(A)
    _raise_for_defects(A)
    m, n = A.shape
    a = A.toarray()
    sigma = float(np.sqrt(np.sum(a * a) / (m * n)))
    a0 = a / sigma
    B = hadamard_power(a0, 2).toarray()

    x = np.ones(m)
    y = np.ones(n)

    def err(x, y):
        rows = x * (B @ y)
        cols = y * (B.T @ x)
        return float(max(np.max(np.abs(np.sqrt(rows / n) - 1)), np.max(np.abs(np.sqrt(cols / m) - 1))))

    res = err(x, y)
    history = [res]
    status = Status.CONVERGED
    iterations = 0
    while res > cfg.tol:
        if iterations >= cfg.max_iter:
            status = Status.MAX_ITERATIONS
            break
        x = n / (B @ y)
        y = m / (B.T @ x)
        iterations += 1
        res = err(x, y)
        history.append(res)
        if res > cfg.tol and _stalled(history, cfg):
            status = Status.STALLED
            break

    g, fell_back = gauge_constant(1 / np.sqrt(x), 1 / np.sqrt(y), cfg.gauge)
    alpha = g / np.sqrt(x)
    beta = 1 / (g * np.sqrt(y))
    w = a0 / alpha[:, None] / beta[None, :]
    W = Matrix(w).to_sparse() if A.is_sparse else Matrix(w)
    report = ConvergenceReport(iterations, res, status, tuple(history))
    return Decomposition(sigma, alpha, beta, W, report, cfg.gauge, fell_back)
