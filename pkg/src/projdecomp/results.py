"""JSON persistence of a decomposition.

``json`` writes floats with ``repr``, which round-trips float64 exactly.
W is stored either inline (``{"shape", "rows", "cols", "vals"}`` for
sparse, ``{"shape", "data"}`` for dense) or as a path to a matrix file,
resolved relative to the JSON document.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .matrix import Matrix
from .matrixio import guess_format, parse_matrix
from .solver import ConvergenceReport, Decomposition, Gauge, Status

__all__ = ["ResultDocument"]


@dataclass
class ResultDocument:
    sigma: float
    alpha: list[float]
    beta: list[float]
    gauge_policy: str
    report: dict
    matrix_ref: str | dict | None = None
    tool_version: str = __version__
    extra: dict = field(default_factory=dict)
    # file the document was loaded from; used to resolve a relative matrix_ref
    source: str | None = field(default=None, compare=False, repr=False)

    @classmethod
    def from_decomposition(cls, d: Decomposition, w_path=None, inline_w=False) -> "ResultDocument":
        ref = None
        if w_path is not None:
            ref = str(w_path)
        elif inline_w:
            ref = _inline(d.W)
        return cls(
            sigma=float(d.sigma),
            alpha=[float(x) for x in d.alpha],
            beta=[float(x) for x in d.beta],
            gauge_policy=Gauge(d.gauge).value,
            report={
                "iterations": int(d.report.iterations),
                "residual": float(d.report.residual),
                "status": Status(d.report.status).value,
            },
            matrix_ref=ref,
            extra={"gauge_fallback": bool(d.gauge_fallback)},
        )

    def to_dict(self) -> dict:
        out = {
            "sigma": self.sigma,
            "alpha": self.alpha,
            "beta": self.beta,
            "gauge_policy": self.gauge_policy,
            "report": self.report,
            "matrix_ref": self.matrix_ref,
            "tool_version": self.tool_version,
        }
        if self.extra:
            out["extra"] = self.extra
        return out

    @classmethod
    def from_dict(cls, doc: dict) -> "ResultDocument":
        try:
            return cls(
                sigma=float(doc["sigma"]),
                alpha=[float(x) for x in doc["alpha"]],
                beta=[float(x) for x in doc["beta"]],
                gauge_policy=str(doc["gauge_policy"]),
                report=dict(doc["report"]),
                matrix_ref=doc.get("matrix_ref"),
                tool_version=str(doc.get("tool_version", "")),
                extra=dict(doc.get("extra", {})),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed result document: {exc}") from None

    def dump(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "ResultDocument":
        with open(path) as fh:
            doc = cls.from_dict(json.load(fh))
        doc.source = str(path)
        return doc

    def load_w(self, base_dir=None) -> Matrix:
        """Return W from the inline block or the referenced file."""
        ref = self.matrix_ref
        if ref is None:
            raise ValueError("result document carries no W")
        if isinstance(ref, dict):
            return _from_inline(ref)
        if base_dir is None and self.source is not None:
            base_dir = os.path.dirname(self.source)
        path = ref if os.path.isabs(ref) or base_dir is None else os.path.join(base_dir, ref)
        return parse_matrix(path, guess_format(path))

    def to_decomposition(self, base_dir=None) -> Decomposition:
        report = ConvergenceReport(
            int(self.report["iterations"]), float(self.report["residual"]), Status(self.report["status"])
        )
        return Decomposition(
            self.sigma,
            np.array(self.alpha),
            np.array(self.beta),
            self.load_w(base_dir),
            report,
            Gauge(self.gauge_policy),
            bool(self.extra.get("gauge_fallback", False)),
        )


def _inline(W: Matrix) -> dict:
    if W.is_sparse:
        r, c, v = W.to_coo()
        return {"shape": list(W.shape), "rows": r.tolist(), "cols": c.tolist(), "vals": v.tolist()}
    return {"shape": list(W.shape), "data": W.toarray().tolist()}


def _from_inline(ref: dict) -> Matrix:
    if "data" in ref:
        return Matrix(ref["data"])
    return Matrix.from_coo(ref["shape"], ref["rows"], ref["cols"], ref["vals"])
