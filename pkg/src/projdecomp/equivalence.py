"""Equivalence up to scale, expected scale and relative-ratio checks.

Two m x n matrices are equivalent up to scale when ``D_q B = A D_p`` for
strictly positive ``p`` (length n) and ``q`` (length m). Equivalence is
decided here through canonical forms: both matrices are decomposed and
their scale-invariant forms compared, and any witness ``(p, q)`` that comes
out of that comparison is re-checked directly against ``D_q B = A D_p``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError
from .matrix import as_matrix, rms_cols, rms_rows
from .solver import Gauge, SolverConfig, Status, decompose, residual

__all__ = [
    "EquivalenceWitness",
    "AxiomCheck",
    "AxiomReport",
    "is_scale_invariant",
    "equivalent_up_to_scale",
    "witness_defect",
    "verify_equivalence_axioms",
    "expected_scale",
    "expected_scale_matrix",
    "relative_ratio_defect",
]


@dataclass(frozen=True)
class EquivalenceWitness:
    p: np.ndarray
    q: np.ndarray
    max_defect: float
    status_a: Status = Status.CONVERGED
    status_b: Status = Status.CONVERGED


def is_scale_invariant(W, tol: float = 1e-10) -> bool:
    return residual(W) <= tol


def witness_defect(A, B, p, q) -> float:
    """``max |D_q B - A D_p|`` divided by the RMS of ``A D_p``."""
    a = as_matrix(A).toarray()
    b = as_matrix(B).toarray()
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    rhs = a * p[None, :]
    lhs = q[:, None] * b
    scale = float(np.sqrt(np.mean(rhs * rhs)))
    if scale == 0.0:
        return float(np.max(np.abs(lhs)))
    return float(np.max(np.abs(lhs - rhs)) / scale)


def _solver_config(tol):
    return SolverConfig(tol=min(1e-10, tol / 10), gauge=Gauge.BALANCED)


def equivalent_up_to_scale(A, B, tol: float = 1e-8) -> EquivalenceWitness | None:
    """Return a verified witness ``(p, q)`` with ``D_q B = A D_p``, or None.

    Raises ``DimensionError`` on mismatched shapes and the solver's domain
    errors when either matrix has an all-zero row, column or is zero.
    """
    A = as_matrix(A)
    B = as_matrix(B)
    if A.shape != B.shape:
        raise DimensionError(f"shapes differ: {A.shape} vs {B.shape}")
    cfg = _solver_config(tol)
    da = decompose(A, cfg)
    db = decompose(B, cfg)
    wa = da.W.toarray()
    wb = db.W.toarray()
    if not np.array_equal(np.sign(wa), np.sign(wb)):
        return None
    if np.max(np.abs(wa - wb)) > tol:
        return None
    # A = sa Da W Db_A, B = sb Da_B W Db_B  =>  q = sa*alpha_A/(sb*alpha_B), p = beta_B/beta_A
    q = (da.sigma * da.alpha) / (db.sigma * db.alpha)
    p = db.beta / da.beta
    defect = witness_defect(A, B, p, q)
    if defect > tol:
        return None
    return EquivalenceWitness(p, q, defect, da.report.status, db.report.status)


@dataclass(frozen=True)
class AxiomCheck:
    # None means the premise did not hold and the axiom was not exercised
    passed: bool | None
    witness: EquivalenceWitness | None = None
    detail: str = ""


@dataclass(frozen=True)
class AxiomReport:
    reflexive: AxiomCheck
    symmetric: AxiomCheck
    transitive: AxiomCheck

    @property
    def ok(self) -> bool:
        return all(c.passed is not False for c in (self.reflexive, self.symmetric, self.transitive))


def verify_equivalence_axioms(A, B=None, C=None, tol: float = 1e-8) -> AxiomReport:
    """Instance-level check that equivalence up to scale behaves as an
    equivalence relation on ``A``, ``B`` and ``C``.

    Reflexivity uses ``p = 1, q = 1``. Symmetry inverts an ``A ~ B``
    witness and checks it relates ``B`` to ``A``; if ``A`` and ``B`` are
    not equivalent it checks that ``B ~ A`` is rejected too. Transitivity
    multiplies the ``A ~ B`` and ``B ~ C`` witnesses elementwise and checks
    the product relates ``A`` to ``C``; it is skipped when either premise
    fails.
    """
    A = as_matrix(A)
    m, n = A.shape
    ones_p, ones_q = np.ones(n), np.ones(m)
    d = witness_defect(A, A, ones_p, ones_q)
    found = equivalent_up_to_scale(A, A, tol)
    refl = AxiomCheck(d <= tol and found is not None, EquivalenceWitness(ones_p, ones_q, d))

    if B is None:
        skip = AxiomCheck(None, detail="no B supplied")
        return AxiomReport(refl, skip, skip)

    ab = equivalent_up_to_scale(A, B, tol)
    ba = equivalent_up_to_scale(B, A, tol)
    if ab is None:
        sym = AxiomCheck(ba is None, None, "A !~ B; requires B !~ A")
    else:
        p_inv, q_inv = 1.0 / ab.p, 1.0 / ab.q
        d = witness_defect(B, A, p_inv, q_inv)
        sym = AxiomCheck(
            d <= tol and ba is not None,
            EquivalenceWitness(p_inv, q_inv, d),
            "inverted A~B witness relates B to A",
        )

    if C is None:
        return AxiomReport(refl, sym, AxiomCheck(None, detail="no C supplied"))
    bc = equivalent_up_to_scale(B, C, tol)
    if ab is None or bc is None:
        trans = AxiomCheck(None, detail="premise A~B and B~C does not hold")
    else:
        p, q = ab.p * bc.p, ab.q * bc.q
        d = witness_defect(A, C, p, q)
        ac = equivalent_up_to_scale(A, C, tol)
        trans = AxiomCheck(
            d <= tol and ac is not None,
            EquivalenceWitness(p, q, d),
            "product of A~B and B~C witnesses relates A to C",
        )
    return AxiomReport(refl, sym, trans)


def expected_scale(M, i: int, j: int) -> float:
    """``sqrt(rms(row i) * rms(column j))`` for 0-based ``(i, j)``."""
    M = as_matrix(M)
    m, n = M.shape
    if not (0 <= i < m and 0 <= j < n):
        raise IndexError(f"entry ({i}, {j}) out of range for shape {M.shape}")
    return float(np.sqrt(rms_rows(M)[i] * rms_cols(M)[j]))


def expected_scale_matrix(M) -> np.ndarray:
    """Expected scale of every entry as an m x n array."""
    M = as_matrix(M)
    return np.sqrt(np.outer(rms_rows(M), rms_cols(M)))


def _exhaustive(a, w, chunk=1024):
    m, n = a.shape
    worst = 0.0
    for i in range(m - 1):
        for j in range(i + 1, m):
            # lhs(s,t) = w_is w_jt a_it a_js = u_s v_t ; rhs(s,t) = a_is a_jt w_it w_js = v_s u_t
            u = w[i] * a[j]
            v = w[j] * a[i]
            for lo in range(0, n, chunk):
                sl = slice(lo, lo + chunk)
                d = _relative(np.outer(u[sl], v), np.outer(v[sl], u))
                worst = max(worst, float(d.max()))
    return worst


def _relative(lhs, rhs):
    denom = np.maximum(np.abs(lhs), np.abs(rhs))
    diff = np.abs(lhs - rhs)
    out = np.zeros_like(diff)
    nz = denom > 0
    out[nz] = diff[nz] / denom[nz]
    return out


def relative_ratio_defect(A, W, mode="exhaustive", k: int = 100_000, seed: int = 0) -> float:
    """Worst relative violation of ``w_is w_jt a_it a_js = a_is a_jt w_it w_js``.

    Each quadruple's defect is ``|lhs - rhs| / max(|lhs|, |rhs|)`` with
    ``0/0`` taken as 0. ``mode`` is ``"exhaustive"`` (all ``i != j``,
    ``s != t``) or ``"sampled"`` (``k`` quadruples drawn uniformly with a
    seeded PCG64 generator).
    """
    A = as_matrix(A)
    W = as_matrix(W)
    if A.shape != W.shape:
        raise DimensionError(f"shapes differ: {A.shape} vs {W.shape}")
    m, n = A.shape
    if m < 2 or n < 2:
        raise DomainError("relative ratios need at least 2 rows and 2 columns")
    a = A.toarray()
    w = W.toarray()
    if mode == "exhaustive":
        # the identity is symmetric under transposition; loop over the shorter side
        if m > n:
            a, w = a.T, w.T
        return _exhaustive(a, w)
    if mode == "sampled":
        rng = np.random.Generator(np.random.PCG64(seed))
        i = rng.integers(0, m, k)
        j = (i + rng.integers(1, m, k)) % m
        s = rng.integers(0, n, k)
        t = (s + rng.integers(1, n, k)) % n
        lhs = w[i, s] * w[j, t] * a[i, t] * a[j, s]
        rhs = a[i, s] * a[j, t] * w[i, t] * w[j, s]
        return float(np.max(_relative(lhs, rhs)))
    raise ValueError(f"unknown mode {mode!r}; expected 'exhaustive' or 'sampled'")
