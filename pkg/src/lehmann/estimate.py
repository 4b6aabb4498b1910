"""Likelihood evaluation and maximum-likelihood fitting.

For the powered laws the exponent has a closed-form MLE at fixed base
parameters: with S = sum of log F(x_j) (first kind) or log(1 - F(x_j))
(second kind), the maximizer is ``lambda_hat = -n / S``. Fitting the
remaining base parameters therefore reduces to maximizing the profile
log-likelihood ``ll(lambda_hat(theta), theta)`` over a bounded box,
which is done by golden-section line searches with coordinate cycling
and a fixed low-discrepancy multistart set. No gradients are needed.

``base_family`` arguments accept a registered family id, the family
class, or an instance (its class is used).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .base_dist import FAMILIES, BaseDistribution
from .errors import DegenerateSampleError, DomainError, SupportError
from .extend import Kind, _coerce_kind, sample_values

_GOLDEN_TOL = 1e-8
_GOLDEN_MAX_ITER = 200
_MAX_SWEEPS = 10
_N_MULTISTARTS = 5
_TIE_TOL = 1e-10
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_HALTON_BASES = (2, 3, 5)


@dataclass(frozen=True)
class FitResult:
    """Outcome of a likelihood maximization."""

    lambda_hat: float
    theta_hat: tuple[float, ...]
    loglik: float
    n: int
    profile_trace: tuple[tuple[tuple[float, ...], float], ...] | None = None
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.lambda_hat > 0.0:
            raise DomainError(f"lambda_hat must be > 0, got {self.lambda_hat!r}")

    def to_json(self) -> str:
        return json.dumps(
            {
                "lambda_hat": self.lambda_hat,
                "theta_hat": list(self.theta_hat),
                "loglik": self.loglik,
                "n": self.n,
                "warnings": list(self.warnings),
            }
        )


def _resolve_family(base_family) -> type[BaseDistribution]:
    if isinstance(base_family, str):
        family = FAMILIES.get(base_family)
        if family is None:
            raise DomainError(
                f"unknown base family {base_family!r}; known: {sorted(FAMILIES)}"
            )
        return family
    if isinstance(base_family, BaseDistribution):
        return type(base_family)
    if isinstance(base_family, type) and issubclass(base_family, BaseDistribution):
        return base_family
    raise DomainError(f"not a base family: {base_family!r}")


def _check_support(base: BaseDistribution, x: np.ndarray) -> None:
    inside = base.support.contains(x)
    if not np.all(inside):
        idx = int(np.argmin(inside))
        raise SupportError(
            f"sample value x[{idx}]={float(x[idx])!r} lies outside the support of "
            f"{base.describe()}"
        )


def _prepare(kind, base_family, theta, s):
    kind = _coerce_kind(kind)
    family = _resolve_family(base_family)
    base = family.from_theta(theta)
    x = sample_values(s)
    if x.ndim != 1 or x.size < 1:
        raise DomainError("sample must contain at least one value")
    _check_support(base, x)
    return kind, base, x


def loglik(kind, base_family, theta, lam, s) -> float:
    """Log-likelihood of the powered law at (lam, theta).

    n*ln(lam) + sum(ln f(x_j)) + (lam-1)*sum(ln F(x_j)) for the first
    kind, with ln(1 - F(x_j)) in the last sum for the second kind.
    Observations where the base density vanishes give -inf.
    """
    kind, base, x = _prepare(kind, base_family, theta, s)
    lam = float(lam)
    if not (math.isfinite(lam) and lam > 0.0):
        raise DomainError(f"lambda must be finite and > 0, got {lam!r}")
    lp = base.log_pdf(x)
    if np.isneginf(lp).any():
        return float("-inf")
    total = float(np.sum(lp))
    if lam != 1.0:
        w = base.log_cdf(x) if kind is Kind.FIRST else base.log_sf(x)
        total += x.size * math.log(lam) + (lam - 1.0) * float(np.sum(w))
    return total


def _log_kernel_sum(kind: Kind, base: BaseDistribution, x: np.ndarray) -> float:
    w = base.log_cdf(x) if kind is Kind.FIRST else base.log_sf(x)
    return float(np.sum(w))


def mle_lambda(kind, base_family, theta, s) -> float:
    """Closed-form exponent MLE: -n / sum(ln F) resp. -n / sum(ln(1-F)).

    Raises DegenerateSampleError when the sum is saturated: nonfinite
    (some F(x_j) is exactly 0 for the first kind / 1 for the second) or
    smaller than 1e-300 in magnitude (all F(x_j) at the opposite end).
    """
    kind, base, x = _prepare(kind, base_family, theta, s)
    total = _log_kernel_sum(kind, base, x)
    if not math.isfinite(total) or abs(total) < 1e-300:
        raise DegenerateSampleError(
            f"sum of log-CDF terms is {total!r}; the sample saturates the "
            f"base CDF under {base.describe()} and the exponent MLE is undefined"
        )
    return -x.size / total


# -- profile maximization ----------------------------------------------------


def _halton(index: int, base: int) -> float:
    f, r = 1.0, 0.0
    while index > 0:
        f /= base
        r += f * (index % base)
        index //= base
    return r


def _multistarts(bounds) -> list[tuple[float, ...]]:
    dim = len(bounds)
    if dim == 1:
        # golden section over the full bracket does not depend on the
        # start, so one start is exactly equivalent to five
        count = 1
    else:
        count = _N_MULTISTARTS
    points = []
    for i in range(1, count + 1):
        points.append(
            tuple(
                lo + _halton(i, _HALTON_BASES[j]) * (hi - lo)
                for j, (lo, hi) in enumerate(bounds)
            )
        )
    return points


def _golden_max(h, lo: float, hi: float):
    """Golden-section maximization of h on [lo, hi] to width _GOLDEN_TOL."""
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    hc, hd = h(c), h(d)
    for _ in range(_GOLDEN_MAX_ITER):
        if (b - a) <= _GOLDEN_TOL:
            break
        if hc >= hd:
            b, d, hd = d, c, hc
            c = b - _INVPHI * (b - a)
            hc = h(c)
        else:
            a, c, hc = c, d, hd
            d = a + _INVPHI * (b - a)
            hd = h(d)
    return (c, hc) if hc >= hd else (d, hd)


def _coordinate_max(h, start, bounds):
    """Cycle golden-section line searches over the coordinates of theta."""
    theta = list(start)
    value = h(theta)
    for _ in range(_MAX_SWEEPS):
        moved = 0.0
        for i, (lo, hi) in enumerate(bounds):

            def line(v, _i=i):
                trial = theta.copy()
                trial[_i] = v
                return h(trial)

            xi, vi = _golden_max(line, lo, hi)
            moved = max(moved, abs(xi - theta[i]))
            theta[i] = xi
            value = vi
        if len(bounds) == 1 or moved < _GOLDEN_TOL:
            break
    return tuple(theta), value


def _check_bounds(bounds, param_names) -> tuple[tuple[float, float], ...]:
    if bounds is None:
        raise DomainError(
            f"theta_bounds required: the family has parameters {param_names}"
        )
    out = []
    for lo, hi in bounds:
        lo, hi = float(lo), float(hi)
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise DomainError(f"theta_bounds must be finite with lo < hi, got {(lo, hi)}")
        out.append((lo, hi))
    if len(out) != len(param_names):
        raise DomainError(
            f"theta_bounds has {len(out)} component(s), family expects "
            f"{len(param_names)}"
        )
    return tuple(out)


def _pick_best(candidates):
    """Highest value wins; values within _TIE_TOL prefer the smaller theta."""
    best_theta, best_val = candidates[0]
    for theta, val in candidates[1:]:
        if val > best_val + _TIE_TOL:
            best_theta, best_val = theta, val
        elif abs(val - best_val) <= _TIE_TOL:
            if math.hypot(*theta) < math.hypot(*best_theta):
                best_theta, best_val = theta, val
    return best_theta, best_val


def _boundary_warnings(theta, bounds) -> tuple[str, ...]:
    notes = []
    for i, (v, (lo, hi)) in enumerate(zip(theta, bounds)):
        if v - lo <= 2.0 * _GOLDEN_TOL:
            notes.append(f"theta[{i}]={v!r} sits at the lower bound {lo!r}")
        elif hi - v <= 2.0 * _GOLDEN_TOL:
            notes.append(f"theta[{i}]={v!r} sits at the upper bound {hi!r}")
    return tuple(notes)


def _maximize_over_theta(objective, bounds, extra_candidates):
    """Shared driver: multistart coordinate search plus direct candidates."""

    def safe(theta_list) -> float:
        try:
            val = objective(tuple(theta_list))
        except DegenerateSampleError:
            return float("-inf")
        return float("-inf") if math.isnan(val) else val

    finals = []
    for start in _multistarts(bounds):
        theta, val = _coordinate_max(safe, start, bounds)
        finals.append((theta, val))
    for theta in extra_candidates:
        theta = tuple(float(v) for v in theta)
        if len(theta) != len(bounds):
            raise DomainError(f"extra candidate {theta!r} has the wrong dimension")
        finals.append((theta, safe(theta)))
    (theta_hat, value) = _pick_best(finals)
    return theta_hat, value, tuple(finals)


def _degenerate_guard(family, x: np.ndarray) -> None:
    if len(family.param_names) > 0 and x.size >= 2 and np.all(x == x[0]):
        raise DegenerateSampleError(
            "all sample values are equal; base-parameter fitting would chase "
            "a boundary spike"
        )


def fit_full(kind, base_family, s, theta_bounds=None, extra_candidates=()) -> FitResult:
    """Maximize ll(lambda, theta) jointly, lambda by its closed form.

    For each candidate theta the exponent is profiled out analytically;
    theta then maximizes the profile by golden-section coordinate search
    inside ``theta_bounds``. ``extra_candidates`` are theta points
    evaluated alongside the multistart results (useful for exact nesting
    guarantees). A solution at the edge of the box is reported in
    ``warnings``.
    """
    kind = _coerce_kind(kind)
    family = _resolve_family(base_family)
    x = sample_values(s)
    _degenerate_guard(family, x)

    if not family.param_names:
        lam = mle_lambda(kind, family, (), x)
        ll = loglik(kind, family, (), lam, x)
        return FitResult(lam, (), ll, x.size)

    bounds = _check_bounds(theta_bounds, family.param_names)

    def profile(theta) -> float:
        lam = mle_lambda(kind, family, theta, x)
        return loglik(kind, family, theta, lam, x)

    theta_hat, _val, trace = _maximize_over_theta(profile, bounds, extra_candidates)
    lam_hat = mle_lambda(kind, family, theta_hat, x)
    ll = loglik(kind, family, theta_hat, lam_hat, x)
    return FitResult(
        lam_hat, theta_hat, ll, x.size,
        profile_trace=trace, warnings=_boundary_warnings(theta_hat, bounds),
    )


def fit_restricted(
    kind, base_family, s, lambda_fixed, theta_bounds=None, extra_candidates=()
) -> FitResult:
    """Maximize ll(lambda_fixed, theta) over theta only."""
    kind = _coerce_kind(kind)
    family = _resolve_family(base_family)
    lam = float(lambda_fixed)
    if not (math.isfinite(lam) and lam > 0.0):
        raise DomainError(f"lambda_fixed must be finite and > 0, got {lambda_fixed!r}")
    x = sample_values(s)
    _degenerate_guard(family, x)

    if not family.param_names:
        return FitResult(lam, (), loglik(kind, family, (), lam, x), x.size)

    bounds = _check_bounds(theta_bounds, family.param_names)

    def objective(theta) -> float:
        return loglik(kind, family, theta, lam, x)

    theta_hat, _val, trace = _maximize_over_theta(objective, bounds, extra_candidates)
    ll = loglik(kind, family, theta_hat, lam, x)
    return FitResult(
        lam, theta_hat, ll, x.size,
        profile_trace=trace, warnings=_boundary_warnings(theta_hat, bounds),
    )
