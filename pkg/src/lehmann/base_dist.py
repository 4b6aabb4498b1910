"""Base distribution families F(x | theta).

A :class:`BaseDistribution` bundles a parameterized law with its density,
distribution function, and closed-form quantile. Three families ship with
the package (uniform on the unit interval, exponential, Weibull), covering
bounded, light-tailed half-line, and lifetime-shaped supports. New
families can be added with :func:`register_family`; they only need the
vectorized kernels below, including a log-CDF and log-survival path so
downstream exponent arithmetic stays in log space.

Densities and CDFs are total functions on the reals (zero / clamped
outside the support); quantiles are defined on the open interval (0, 1)
only. Parameters are validated at construction, never at evaluation, and
instances are immutable.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import ClassVar

import numpy as np

from .errors import DomainError

_LN2 = math.log(2.0)


def log1mexp(z):
    """log(1 - exp(z)) for z <= 0, stable near both ends."""
    z = np.asarray(z, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        near = np.log(-np.expm1(z))
        far = np.log1p(-np.exp(z))
    return np.where(z > -_LN2, near, far)


def _ret(out, x):
    """Collapse a 0-d result back to a Python float."""
    return float(out) if np.ndim(x) == 0 else out


@dataclass(frozen=True)
class Support:
    """A real interval with open/closed endpoint flags."""

    lower: float
    upper: float
    lower_open: bool = False
    upper_open: bool = False

    def contains(self, x):
        """Elementwise membership test (scalar in, bool out)."""
        x = np.asarray(x, dtype=float)
        lo = x > self.lower if self.lower_open else x >= self.lower
        hi = x < self.upper if self.upper_open else x <= self.upper
        ok = lo & hi
        return bool(ok) if ok.ndim == 0 else ok


class BaseDistribution(ABC):
    """A base law F(x | theta) with closed-form quantile.

    Subclasses are frozen dataclasses whose fields are the parameters, in
    ``param_names`` order. They implement the vectorized kernels
    ``_pdf``, ``_log_pdf``, ``_cdf``, ``_log_cdf``, ``_log_sf`` and
    ``_quantile``; the public methods handle scalar round-tripping and
    argument validation.
    """

    family_id: ClassVar[str]
    param_names: ClassVar[tuple[str, ...]]

    # -- parameter plumbing -------------------------------------------------

    @property
    def theta(self) -> tuple[float, ...]:
        """Parameter vector, in ``param_names`` order."""
        return tuple(getattr(self, name) for name in self.param_names)

    @classmethod
    def from_theta(cls, theta) -> "BaseDistribution":
        """Construct from a parameter vector (validated as usual)."""
        theta = tuple(float(t) for t in theta)
        if len(theta) != len(cls.param_names):
            raise DomainError(
                f"{cls.family_id} expects {len(cls.param_names)} "
                f"parameter(s) {cls.param_names}, got {len(theta)}"
            )
        return cls(*theta)

    def describe(self) -> str:
        """Descriptor text, e.g. ``exponential(rate=1.5)``."""
        args = ",".join(f"{n}={getattr(self, n)!r}" for n in self.param_names)
        return f"{self.family_id}({args})"

    @property
    @abstractmethod
    def support(self) -> Support: ...

    # -- evaluation ---------------------------------------------------------

    def pdf(self, x):
        """Density f(x | theta); zero outside the support."""
        arr = np.asarray(x, dtype=float)
        return _ret(self._pdf(arr), x)

    def log_pdf(self, x):
        """ln f(x | theta); -inf where the density vanishes."""
        arr = np.asarray(x, dtype=float)
        return _ret(self._log_pdf(arr), x)

    def cdf(self, x):
        """F(x | theta), clamped to [0, 1] on the whole real line."""
        arr = np.asarray(x, dtype=float)
        return _ret(self._cdf(arr), x)

    def log_cdf(self, x):
        """ln F(x | theta), computed without forming F directly."""
        arr = np.asarray(x, dtype=float)
        return _ret(self._log_cdf(arr), x)

    def log_sf(self, x):
        """ln(1 - F(x | theta)), the log survival function."""
        arr = np.asarray(x, dtype=float)
        return _ret(self._log_sf(arr), x)

    def quantile(self, u):
        """Q(u) = F^{-1}(u) for u strictly inside (0, 1)."""
        arr = np.asarray(u, dtype=float)
        if not np.all((arr > 0.0) & (arr < 1.0)):
            raise DomainError("quantile requires u strictly inside (0, 1)")
        return _ret(self._quantile(arr), u)

    @abstractmethod
    def _pdf(self, x): ...

    @abstractmethod
    def _log_pdf(self, x): ...

    @abstractmethod
    def _cdf(self, x): ...

    @abstractmethod
    def _log_cdf(self, x): ...

    @abstractmethod
    def _log_sf(self, x): ...

    @abstractmethod
    def _quantile(self, u): ...

    def _quantile_sf(self, s):
        # inverse survival kernel on (0, 1]; this default loses the upper
        # tail once s drops below one ulp of 1, families override where
        # the tail has more resolution than 1 - s can carry
        u = np.minimum(1.0 - np.asarray(s, dtype=float), _ONE_BELOW)
        return self._quantile(u)


_ONE_BELOW = float(np.nextafter(1.0, 0.0))


def _require_positive(family: str, name: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0.0):
        raise DomainError(f"{family}: {name} must be finite and > 0, got {value!r}")


# -- bundled families -------------------------------------------------------

FAMILIES: dict[str, type[BaseDistribution]] = {}


def register_family(cls):
    """Register a family under its ``family_id`` for descriptor parsing.

    Usable as a class decorator; returns ``cls``.
    """
    FAMILIES[cls.family_id] = cls
    return cls


@register_family
@dataclass(frozen=True)
class Uniform(BaseDistribution):
    """Uniform law on the closed unit interval. No free parameters."""

    family_id: ClassVar[str] = "uniform"
    param_names: ClassVar[tuple[str, ...]] = ()

    @property
    def support(self) -> Support:
        return Support(0.0, 1.0)

    def _pdf(self, x):
        return np.where((x >= 0.0) & (x <= 1.0), 1.0, 0.0)

    def _log_pdf(self, x):
        return np.where((x >= 0.0) & (x <= 1.0), 0.0, -np.inf)

    def _cdf(self, x):
        return np.clip(x, 0.0, 1.0)

    def _log_cdf(self, x):
        with np.errstate(divide="ignore"):
            return np.log(np.clip(x, 0.0, 1.0))

    def _log_sf(self, x):
        with np.errstate(divide="ignore"):
            return np.log1p(-np.clip(x, 0.0, 1.0))

    def _quantile(self, u):
        return u + 0.0

    def _quantile_sf(self, s):
        return 1.0 - np.asarray(s, dtype=float)


@register_family
@dataclass(frozen=True)
class Exponential(BaseDistribution):
    """Exponential law with rate parameter (support [0, inf))."""

    rate: float = 1.0

    family_id: ClassVar[str] = "exponential"
    param_names: ClassVar[tuple[str, ...]] = ("rate",)

    def __post_init__(self):
        object.__setattr__(self, "rate", float(self.rate))
        _require_positive(self.family_id, "rate", self.rate)

    @property
    def support(self) -> Support:
        return Support(0.0, math.inf)

    def _z(self, x):
        # -rate*x clamped so x < 0 maps to the lower endpoint
        return -self.rate * np.maximum(x, 0.0)

    def _pdf(self, x):
        return np.where(x >= 0.0, self.rate * np.exp(-self.rate * x), 0.0)

    def _log_pdf(self, x):
        return np.where(x >= 0.0, math.log(self.rate) - self.rate * x, -np.inf)

    def _cdf(self, x):
        return -np.expm1(self._z(x))

    def _log_cdf(self, x):
        return log1mexp(self._z(x))

    def _log_sf(self, x):
        return self._z(x)

    def _quantile(self, u):
        return -np.log1p(-u) / self.rate

    def _quantile_sf(self, s):
        return -np.log(s) / self.rate


@register_family
@dataclass(frozen=True)
class Weibull(BaseDistribution):
    """Weibull law with shape and scale parameters (support [0, inf))."""

    shape: float = 1.0
    scale: float = 1.0

    family_id: ClassVar[str] = "weibull"
    param_names: ClassVar[tuple[str, ...]] = ("shape", "scale")

    def __post_init__(self):
        object.__setattr__(self, "shape", float(self.shape))
        object.__setattr__(self, "scale", float(self.scale))
        _require_positive(self.family_id, "shape", self.shape)
        _require_positive(self.family_id, "scale", self.scale)

    @property
    def support(self) -> Support:
        return Support(0.0, math.inf)

    def _z(self, x):
        # (x/scale)**shape on x >= 0, 0 below
        return (np.maximum(x, 0.0) / self.scale) ** self.shape

    def _pdf(self, x):
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            out = np.exp(self._log_pdf(x))
        return out

    def _log_pdf(self, x):
        k, s = self.shape, self.scale
        if k == 1.0:
            return np.where(x >= 0.0, -math.log(s) - x / s, -np.inf)
        with np.errstate(divide="ignore", invalid="ignore"):
            body = math.log(k / s) + (k - 1.0) * np.log(x / s) - self._z(x)
        return np.where(x >= 0.0, body, -np.inf)

    def _cdf(self, x):
        return -np.expm1(-self._z(x))

    def _log_cdf(self, x):
        return log1mexp(-self._z(x))

    def _log_sf(self, x):
        return -self._z(x)

    def _quantile(self, u):
        return self.scale * (-np.log1p(-u)) ** (1.0 / self.shape)

    def _quantile_sf(self, s):
        return self.scale * (-np.log(s)) ** (1.0 / self.shape)
