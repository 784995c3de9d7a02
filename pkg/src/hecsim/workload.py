"""Pareto task-size sampling, per-device normalization and edge/cloud allocation."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from hecsim.errors import DomainError, InvalidParameterError
from hecsim.model import GB, SplitPolicy

EDGE = "edge"
CLOUD = "cloud"


@dataclass(frozen=True)
class ParetoParams:
    """Shape ``alpha`` and minimum size ``x_min`` (GB) of a Pareto (type I) law.

    ``alpha <= 1`` has an infinite mean and is rejected.
    """

    alpha: float = 2.0
    x_min: GB = 1.0

    def __post_init__(self):
        if not math.isfinite(self.alpha) or self.alpha <= 1.0:
            raise InvalidParameterError(
                f"alpha must be > 1 (alpha <= 1 gives an infinite mean), got {self.alpha!r}"
            )
        if not math.isfinite(self.x_min) or self.x_min <= 0.0:
            raise InvalidParameterError(f"x_min must be finite and > 0, got {self.x_min!r}")

    @property
    def mean(self) -> GB:
        return self.alpha * self.x_min / (self.alpha - 1.0)


@dataclass(frozen=True)
class TaskSet:
    sizes: np.ndarray
    on_edge: np.ndarray  # bool mask, True = processed on the device

    def __post_init__(self):
        if self.sizes.shape != self.on_edge.shape:
            raise InvalidParameterError("sizes and assignments must have the same length")

    @property
    def assignments(self) -> list[str]:
        return [EDGE if e else CLOUD for e in self.on_edge]

    def __len__(self):
        return len(self.sizes)


def pareto_pdf(x, pp: ParetoParams):
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < pp.x_min):
        raise DomainError(f"pdf is only defined for x >= x_min={pp.x_min}")
    out = pp.alpha * pp.x_min**pp.alpha / x_arr ** (pp.alpha + 1.0)
    return float(out) if out.ndim == 0 else out


def pareto_cdf(x, pp: ParetoParams):
    """``1 - (x_min / x)**alpha`` above the support minimum, 0 below it."""
    x_arr = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        out = np.where(x_arr < pp.x_min, 0.0, 1.0 - (pp.x_min / x_arr) ** pp.alpha)
    return float(out) if out.ndim == 0 else out


def pareto_quantile(u, pp: ParetoParams):
    """Inverse CDF, ``x_min * (1 - u)**(-1/alpha)`` for ``u`` in ``[0, 1)``."""
    u_arr = np.asarray(u, dtype=float)
    if np.any(~((u_arr >= 0.0) & (u_arr < 1.0))):
        raise DomainError("quantile argument must lie in [0, 1)")
    out = pp.x_min * (1.0 - u_arr) ** (-1.0 / pp.alpha)
    return float(out) if out.ndim == 0 else out


def sample_tasks(rng: np.random.Generator, n_tasks: int, pp: ParetoParams) -> np.ndarray:
    if n_tasks < 1:
        raise InvalidParameterError(f"n_tasks must be >= 1, got {n_tasks}")
    return pareto_quantile(rng.random(n_tasks), pp).reshape(n_tasks)


def normalize_to_annual(sizes, d_total: GB) -> np.ndarray:
    """Rescale ``sizes`` so they add up to ``d_total``.

    Sums are taken with ``math.fsum``. The last rounding residual is pushed
    onto the largest element so the correctly-rounded sum hits ``d_total``.
    """
    arr = np.array(sizes, dtype=float).reshape(-1)
    if arr.size == 0:
        raise InvalidParameterError("cannot normalize an empty task list")
    if not math.isfinite(d_total) or d_total <= 0:
        raise InvalidParameterError(f"d_total must be finite and > 0, got {d_total!r}")
    if np.any(~(arr > 0)) or not np.all(np.isfinite(arr)):
        raise InvalidParameterError("task sizes must be finite and > 0")
    total = math.fsum(arr)
    out = arr * (d_total / total)
    big = int(np.argmax(out))
    for _ in range(4):
        residual = d_total - math.fsum(out)
        if residual == 0.0:
            break
        out[big] += residual
    return out


def allocate(rng: np.random.Generator, sizes, split: SplitPolicy) -> TaskSet:
    """Label each task edge with probability ``p_edge``, independently."""
    arr = np.asarray(sizes, dtype=float).reshape(-1)
    if arr.size == 0:
        raise InvalidParameterError("cannot allocate an empty task list")
    on_edge = rng.random(arr.size) < split.p_edge
    return TaskSet(arr, on_edge)


def edge_cloud_volumes(ts: TaskSet) -> tuple[GB, GB]:
    return math.fsum(ts.sizes[ts.on_edge]), math.fsum(ts.sizes[~ts.on_edge])


def split_volume(sizes, split: SplitPolicy) -> tuple[GB, GB]:
    """Deterministic alternative to :func:`allocate`: split total GB by ``p_edge``."""
    total = math.fsum(np.asarray(sizes, dtype=float).reshape(-1))
    return split.p_edge * total, split.p_cloud * total
