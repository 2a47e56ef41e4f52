"""
Core domain models for skewsq.

This module defines the value objects passed between the numerical layers,
the estimators, and the command-line front end. Array-valued fields are
numpy arrays that are made read-only on construction.
"""

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from skewsq.core.errors import DataError

DEFAULT_AXIS: Tuple[float, float, float] = (-0.27, -0.28, -0.92)
DEFAULT_OMEGA_M = 31.41
DEFAULT_SAMPLE_RATE = 1600.0


def _readonly(values: Any, dtype: Any = float) -> np.ndarray:
    """Copy ``values`` into a fresh array and lock it against writes."""
    arr = np.array(values, dtype=dtype, copy=True)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class SpectralDecomp:
    """
    Real spectral decomposition ``S = N diag(eigenvalues) N^T``.

    Eigenvalues are stored in non-increasing order and column ``i`` of
    ``n_factor`` is the eigenvector belonging to ``eigenvalues[i]``.
    """

    n_factor: np.ndarray
    eigenvalues: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "n_factor", _readonly(self.n_factor))
        object.__setattr__(self, "eigenvalues", _readonly(self.eigenvalues))

    @property
    def dimension(self) -> int:
        return int(self.eigenvalues.shape[0])

    def reconstruct(self) -> np.ndarray:
        """Return ``N diag(eigenvalues) N^T``."""
        return (self.n_factor * self.eigenvalues) @ self.n_factor.T


@dataclass(frozen=True)
class SkewSquareResult:
    """Best approximant of a matrix among squares of skew-symmetric matrices."""

    u_star: np.ndarray
    n_factor: np.ndarray
    d_star: np.ndarray
    mu_star: np.ndarray
    residual: float
    eigenvalues: np.ndarray

    def __post_init__(self) -> None:
        for name in ("u_star", "n_factor", "d_star", "mu_star", "eigenvalues"):
            object.__setattr__(self, name, _readonly(getattr(self, name)))

    @property
    def dimension(self) -> int:
        return int(self.d_star.shape[0])

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {
            "dimension": self.dimension,
            "u_star": self.u_star.tolist(),
            "d_star": self.d_star.tolist(),
            "mu_star": self.mu_star.tolist(),
            "eigenvalues": self.eigenvalues.tolist(),
            "residual": self.residual,
        }


class ProfileKind(Enum):
    """Rotation-angle profiles used by the rotation experiments."""

    PUNCTUATED = "punctuated"
    CONSTANT = "constant"
    OSCILLATORY = "oscillatory"

    @classmethod
    def from_string(cls, kind: str) -> "ProfileKind":
        """Parse a profile kind, case-insensitive."""
        try:
            return cls(kind.strip().lower())
        except ValueError:
            raise DataError(
                f"Unknown profile kind '{kind}' "
                f"(expected one of: {', '.join(k.value for k in cls)})"
            ) from None

    @property
    def default_tau1(self) -> float:
        """Period used by the reference trials of this profile."""
        return 11.62 if self is ProfileKind.OSCILLATORY else 5.81


@dataclass(frozen=True)
class MotionProfile:
    """
    Fixed-axis rotation ``R(tau) = rodrigues(axis, theta(tau))``.

    The axis is normalized on construction; ``tau1`` is ignored by the
    constant profile.
    """

    kind: ProfileKind
    omega_m: float = DEFAULT_OMEGA_M
    tau1: float = 5.81
    axis: np.ndarray = field(default_factory=lambda: np.array(DEFAULT_AXIS))

    def __post_init__(self) -> None:
        if not (math.isfinite(self.omega_m) and self.omega_m > 0):
            raise DataError(f"omega_m must be positive, got {self.omega_m}")
        if not (math.isfinite(self.tau1) and self.tau1 > 0):
            raise DataError(f"tau1 must be positive, got {self.tau1}")
        axis = np.asarray(self.axis, dtype=float)
        if axis.shape != (3,) or not np.all(np.isfinite(axis)):
            raise DataError("axis must be three finite components")
        norm = float(np.linalg.norm(axis))
        if norm == 0.0:
            raise DataError("axis must be nonzero")
        object.__setattr__(self, "axis", _readonly(axis / norm))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "omega_m": self.omega_m,
            "tau1": self.tau1,
            "axis": self.axis.tolist(),
        }


@dataclass(frozen=True)
class MeasurementSeries:
    """
    Per-instant 3x3 measurement matrices ``P~`` on a strictly increasing grid.

    ``truth_w`` holds the ground-truth body angular velocity when known
    (synthesized series); series read back without truth columns leave it
    ``None``, as they do ``noise_sigma`` and ``seed``.
    """

    times: np.ndarray
    p_tilde: np.ndarray
    truth_w: Optional[np.ndarray] = None
    noise_sigma: Optional[float] = None
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=float)
        p_tilde = np.asarray(self.p_tilde, dtype=float)
        if times.ndim != 1 or times.size == 0:
            raise DataError("times must be a non-empty one-dimensional grid")
        if p_tilde.shape != (times.size, 3, 3):
            raise DataError(
                f"expected {times.size} 3x3 matrices, got array of shape {p_tilde.shape}"
            )
        if not (np.all(np.isfinite(times)) and np.all(np.isfinite(p_tilde))):
            raise DataError("series contains non-finite values")
        if np.any(np.diff(times) <= 0):
            raise DataError("times must be strictly increasing")
        object.__setattr__(self, "times", _readonly(times))
        object.__setattr__(self, "p_tilde", _readonly(p_tilde))
        if self.truth_w is not None:
            truth = np.asarray(self.truth_w, dtype=float)
            if truth.shape != (times.size, 3):
                raise DataError(
                    f"truth_w must have shape ({times.size}, 3), got {truth.shape}"
                )
            object.__setattr__(self, "truth_w", _readonly(truth))

    def __len__(self) -> int:
        return int(self.times.size)

    def window(self, end_time: float) -> "MeasurementSeries":
        """Return the prefix of the series with ``tau <= end_time``."""
        count = int(np.searchsorted(self.times, end_time, side="right"))
        if count == 0:
            raise DataError(f"no instants at or before tau={end_time}")
        truth = None if self.truth_w is None else self.truth_w[:count]
        return replace(
            self, times=self.times[:count], p_tilde=self.p_tilde[:count], truth_w=truth
        )


class EstimationMethod(Enum):
    """Angular velocity estimators."""

    SQRT_AO = "sqrt_ao"
    AO_INTEGRATION = "ao_integration"
    PLAIN_SQRT_AO = "plain_sqrt_ao"

    @classmethod
    def from_string(cls, name: str) -> "EstimationMethod":
        """Parse a method name, accepting the short aliases used on the command line."""
        key = name.strip().lower().replace("-", "_")
        aliases = {
            "ao": cls.AO_INTEGRATION,
            "sqrtao": cls.SQRT_AO,
            "plain": cls.PLAIN_SQRT_AO,
        }
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            raise DataError(f"Unknown estimation method '{name}'") from None


class SignReference(Enum):
    """
    Reference used to pick the sign of each extracted root.

    ``PREVIOUS`` compares against the last nonzero estimate. ``PROPAGATED``
    first advances that estimate by the measured angular acceleration, so the
    reference follows the rate through sign reversals.
    """

    PREVIOUS = "previous"
    PROPAGATED = "propagated"

    @classmethod
    def from_string(cls, name: str) -> "SignReference":
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise DataError(
                f"Unknown sign reference '{name}' "
                f"(expected one of: {', '.join(r.value for r in cls)})"
            ) from None


@dataclass(frozen=True)
class ProjectionRecord:
    """Per-instant diagnostics of the projection ``B~ -> B^``."""

    residuals: np.ndarray
    mu_star: np.ndarray
    eigenvalues: np.ndarray

    def __post_init__(self) -> None:
        for name in ("residuals", "mu_star", "eigenvalues"):
            object.__setattr__(self, name, _readonly(getattr(self, name)))


@dataclass(frozen=True)
class EstimateSeries:
    """Estimated body angular velocity vectors on the measurement grid."""

    times: np.ndarray
    w_est: np.ndarray
    method: EstimationMethod
    projections: Optional[ProjectionRecord] = None
    failures: int = 0

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=float)
        w_est = np.asarray(self.w_est, dtype=float)
        if w_est.shape != (times.size, 3):
            raise DataError(
                f"w_est must have shape ({times.size}, 3), got {w_est.shape}"
            )
        if not (np.all(np.isfinite(times)) and np.all(np.isfinite(w_est))):
            raise DataError("estimate contains non-finite values")
        object.__setattr__(self, "times", _readonly(times))
        object.__setattr__(self, "w_est", _readonly(w_est))

    def __len__(self) -> int:
        return int(self.times.size)

    def window(self, end_time: float) -> "EstimateSeries":
        """Return the prefix of the estimate with ``tau <= end_time``."""
        count = int(np.searchsorted(self.times, end_time, side="right"))
        if count == 0:
            raise DataError(f"no instants at or before tau={end_time}")
        return replace(self, times=self.times[:count], w_est=self.w_est[:count], projections=None)


@dataclass(frozen=True)
class BoundReport:
    """
    Evaluation of the angular velocity error bounds at one instant.

    ``applicable`` is False when the dimension has no bound constant or when
    the true and estimated roots do not have a positive inner product; the
    angular and combined checks are then ``None``. The projection check only
    needs ``B~`` and is evaluated whenever it is supplied.
    """

    dimension: int
    applicable: bool
    reason: str = ""
    c_n: Optional[float] = None
    w_error_fourth: Optional[float] = None
    b_error_sq: Optional[float] = None
    holds_angular: Optional[bool] = None
    b_hat_error: Optional[float] = None
    b_tilde_error: Optional[float] = None
    holds_projection: Optional[bool] = None
    holds_combined: Optional[bool] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dimension": self.dimension,
            "applicable": self.applicable,
            "reason": self.reason,
            "c_n": self.c_n,
            "w_error_fourth": self.w_error_fourth,
            "b_error_sq": self.b_error_sq,
            "holds_angular": self.holds_angular,
            "b_hat_error": self.b_hat_error,
            "b_tilde_error": self.b_tilde_error,
            "holds_projection": self.holds_projection,
            "holds_combined": self.holds_combined,
        }


@dataclass
class BoundsSummary:
    """Counts from a Monte-Carlo run of the error-bound checks."""

    dimension: int
    draws: int
    not_applicable: int = 0
    angular_violations: int = 0
    projection_violations: int = 0
    combined_violations: int = 0
    worst_angular_ratio: float = 0.0
    worst_projection_ratio: float = 0.0

    @property
    def applicable(self) -> int:
        return self.draws - self.not_applicable

    @property
    def all_hold(self) -> bool:
        return (
            self.angular_violations == 0
            and self.projection_violations == 0
            and self.combined_violations == 0
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dimension": self.dimension,
            "draws": self.draws,
            "applicable": self.applicable,
            "not_applicable": self.not_applicable,
            "angular_violations": self.angular_violations,
            "projection_violations": self.projection_violations,
            "combined_violations": self.combined_violations,
            "worst_angular_ratio": self.worst_angular_ratio,
            "worst_projection_ratio": self.worst_projection_ratio,
            "all_hold": self.all_hold,
        }


@dataclass
class ComparisonReport:
    """
    Truth and per-method estimates on one trial, with error metrics.

    ``profile``, ``noise_sigma`` and ``seed`` are known for simulated trials
    only; a series read from disk leaves them ``None``.
    """

    times: np.ndarray
    truth_w: np.ndarray
    estimates: List[EstimateSeries]
    errors: Dict[str, float]
    component_errors: Dict[str, List[Optional[float]]]
    error_slopes: Dict[str, float] = field(default_factory=dict)
    profile: Optional[MotionProfile] = None
    noise_sigma: Optional[float] = None
    seed: Optional[int] = None

    def estimate_for(self, method: EstimationMethod) -> EstimateSeries:
        for estimate in self.estimates:
            if estimate.method is method:
                return estimate
        raise KeyError(method.value)

    def to_dict(self) -> Dict[str, Any]:
        """Convert the metrics (not the time series) to a dictionary."""
        return {
            "profile": None if self.profile is None else self.profile.to_dict(),
            "noise_sigma": self.noise_sigma,
            "seed": self.seed,
            "instants": int(self.times.size),
            "duration": float(self.times[-1] - self.times[0]),
            "relative_l2_error": dict(self.errors),
            "component_relative_l2_error": {
                name: list(values) for name, values in self.component_errors.items()
            },
            "error_slope": dict(self.error_slopes),
            "failures": {e.method.value: e.failures for e in self.estimates},
        }


@dataclass(frozen=True)
class RunConfig:
    """
    Settings shared by the simulate and compare commands.

    ``tau1`` and ``duration`` left as ``None`` resolve to the profile's
    reference period and three periods respectively.
    """

    profile_kind: ProfileKind = ProfileKind.PUNCTUATED
    omega_m: float = DEFAULT_OMEGA_M
    tau1: Optional[float] = None
    axis: Tuple[float, float, float] = DEFAULT_AXIS
    duration: Optional[float] = None
    sample_rate: float = DEFAULT_SAMPLE_RATE
    noise_sigma: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.sample_rate) and self.sample_rate > 0):
            raise DataError(f"sample rate must be positive, got {self.sample_rate}")
        if self.duration is not None and not (
            math.isfinite(self.duration) and self.duration > 0
        ):
            raise DataError(f"duration must be positive, got {self.duration}")
        if not (math.isfinite(self.noise_sigma) and self.noise_sigma >= 0):
            raise DataError(f"noise sigma must be non-negative, got {self.noise_sigma}")
        if not any(self.axis):
            raise DataError("axis must be nonzero")

    @property
    def resolved_tau1(self) -> float:
        return self.tau1 if self.tau1 is not None else self.profile_kind.default_tau1

    @property
    def resolved_duration(self) -> float:
        return self.duration if self.duration is not None else 3.0 * self.resolved_tau1

    def profile(self) -> MotionProfile:
        return MotionProfile(
            kind=self.profile_kind,
            omega_m=self.omega_m,
            tau1=self.resolved_tau1,
            axis=np.array(self.axis, dtype=float),
        )
