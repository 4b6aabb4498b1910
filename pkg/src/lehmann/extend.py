"""Exponentiated (power-transformed) distributions and sampling.

Raising a base CDF to a positive power, ``G(x) = F(x)**lam``, or raising
its survival function, ``G(x) = 1 - (1 - F(x))**lam``, generates a family
of alternatives indexed by the exponent. This module builds those laws
from any :class:`~lehmann.base_dist.BaseDistribution`, evaluates them,
samples them by inverse transform, composes exponents, and computes
moments by quadrature of the quantile function.

Conventions:

- ``Kind.FIRST`` powers the CDF, ``Kind.SECOND`` powers the survival
  function. For integer ``lam = m`` these are the laws of the maximum
  and minimum of an m-fold base sample.
- All exponent arithmetic happens in log space; direct powering of F
  would underflow for large ``lam``.
- At a support boundary where F(x) = 0 (first kind) or F(x) = 1 (second
  kind) and ``lam < 1``, the density diverges; ``pdf`` returns positive
  infinity there. Such x are boundary points, not interior mass.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, replace

import numpy as np

from ._quadrature import integrate_unit
from .base_dist import BaseDistribution, Support, log1mexp, _ret
from .errors import DomainError, ParseError
from .rng import GENERATOR_ID, open_uniform, substream

logger = logging.getLogger("lehmann.extend")

# open-interval clamp targets for arguments fed to base quantiles
_OPEN_LO = float(np.nextafter(0.0, 1.0))
_OPEN_HI = float(np.nextafter(1.0, 0.0))
_LN_HALF = math.log(0.5)

# exponents above this are accepted but almost certainly a typo
_LAMBDA_SANITY_CAP = 1e8


class Kind(enum.Enum):
    """Which function gets powered: the CDF or the survival function."""

    FIRST = 1
    SECOND = 2

    @property
    def tag(self) -> str:
        """Descriptor prefix, ``lehmann1`` or ``lehmann2``."""
        return f"lehmann{self.value}"


def _coerce_kind(kind) -> Kind:
    if isinstance(kind, Kind):
        return kind
    if kind in (1, 2):
        return Kind(kind)
    raise DomainError(f"kind must be Kind.FIRST, Kind.SECOND, 1 or 2, got {kind!r}")


@dataclass(frozen=True)
class ExtendedDistribution:
    """The law G(x) = F(x)**lam (first kind) or 1-(1-F(x))**lam (second).

    ``lam`` must be strictly positive; ``lam == 1`` reproduces the base
    exactly. The support equals the base support for every ``lam``.
    Instances are immutable and safe to share across threads.
    """

    base: BaseDistribution
    lam: float
    kind: Kind = Kind.FIRST

    def __post_init__(self):
        object.__setattr__(self, "lam", float(self.lam))
        object.__setattr__(self, "kind", _coerce_kind(self.kind))
        if not (math.isfinite(self.lam) and self.lam > 0.0):
            raise DomainError(f"lambda must be finite and > 0, got {self.lam!r}")
        if self.lam > _LAMBDA_SANITY_CAP:
            logger.warning(
                "lambda=%r exceeds %g; accepted, but this is likely a user error",
                self.lam,
                _LAMBDA_SANITY_CAP,
            )

    @property
    def support(self) -> Support:
        return self.base.support

    def describe(self) -> str:
        """Descriptor text, e.g. ``lehmann1(base=uniform(),lambda=2.0)``."""
        return f"{self.kind.tag}(base={self.base.describe()},lambda={self.lam!r})"

    def compose(self, lambda_prime: float) -> "ExtendedDistribution":
        """Apply a further exponent: same base and kind, lam*lambda_prime."""
        lp = float(lambda_prime)
        if not (math.isfinite(lp) and lp > 0.0):
            raise DomainError(f"lambda_prime must be finite and > 0, got {lambda_prime!r}")
        return replace(self, lam=self.lam * lp)

    # -- evaluation ---------------------------------------------------------

    def _kernel_log(self, x):
        """log F (first kind) or log(1-F) (second kind) of the base."""
        if self.kind is Kind.FIRST:
            return self.base._log_cdf(x)
        return self.base._log_sf(x)

    def cdf(self, x):
        arr = np.asarray(x, dtype=float)
        if self.lam == 1.0:
            return _ret(self.base._cdf(arr), x)
        z = self.lam * self._kernel_log(arr)
        out = np.exp(z) if self.kind is Kind.FIRST else -np.expm1(z)
        return _ret(out, x)

    def log_cdf(self, x):
        arr = np.asarray(x, dtype=float)
        if self.lam == 1.0:
            return _ret(self.base._log_cdf(arr), x)
        z = self.lam * self._kernel_log(arr)
        out = z if self.kind is Kind.FIRST else log1mexp(z)
        return _ret(out, x)

    def log_sf(self, x):
        arr = np.asarray(x, dtype=float)
        if self.lam == 1.0:
            return _ret(self.base._log_sf(arr), x)
        z = self.lam * self._kernel_log(arr)
        out = log1mexp(z) if self.kind is Kind.FIRST else z
        return _ret(out, x)

    def log_pdf(self, x):
        arr = np.asarray(x, dtype=float)
        lp = self.base._log_pdf(arr)
        if self.lam == 1.0:
            return _ret(lp, x)
        w = self._kernel_log(arr)
        # w = -inf with lam < 1 gives +inf: the boundary divergence.
        # Outside the support lp = -inf must win over that +inf.
        with np.errstate(invalid="ignore"):
            out = math.log(self.lam) + lp + (self.lam - 1.0) * w
        out = np.where(np.isneginf(lp), -np.inf, out)
        return _ret(out, x)

    def pdf(self, x):
        with np.errstate(over="ignore"):
            out = np.exp(self.log_pdf(np.asarray(x, dtype=float)))
        return _ret(out, x)

    def quantile(self, u):
        arr = np.asarray(u, dtype=float)
        if not np.all((arr > 0.0) & (arr < 1.0)):
            raise DomainError("quantile requires u strictly inside (0, 1)")
        if self.lam == 1.0:
            return _ret(self.base._quantile(arr), u)
        if self.kind is Kind.FIRST:
            w = np.clip(np.exp(np.log(arr) / self.lam), _OPEN_LO, _OPEN_HI)
            return _ret(self.base._quantile(w), u)
        # for the second kind the target survival fraction s can sit far
        # below one ulp of 1, where 1 - s rounds away; small s inverts
        # through the survival side instead
        log_s = np.log1p(-arr) / self.lam
        s = np.maximum(np.exp(log_s), _OPEN_LO)
        w = np.clip(-np.expm1(log_s), _OPEN_LO, _OPEN_HI)
        x = np.where(log_s < _LN_HALF, self.base._quantile_sf(s), self.base._quantile(w))
        return _ret(x, u)

    def moment(self, k: int) -> float:
        """k-th raw moment, E[X**k], by quadrature on the unit interval.

        Substituting t = F(x)**lam (first kind) or t = (1-F(x))**lam
        (second kind) turns the moment integral into
        ``integral of Q(t**(1/lam))**k dt`` over (0, 1), with no
        endpoint weight to go singular for lam < 1. Raises
        :class:`~lehmann.errors.NumericalError` (carrying the best
        estimate) if the quadrature does not converge, which is also how
        a divergent moment surfaces.
        """
        if k != int(k) or int(k) < 1:
            raise DomainError(f"moment order k must be a positive integer, got {k!r}")
        k = int(k)
        inv = 1.0 / self.lam
        first = self.kind is Kind.FIRST

        def integrand(t: float) -> float:
            # extreme refinement can round a node onto an endpoint
            t = min(max(t, _OPEN_LO), _OPEN_HI)
            x = _invert_power_fraction(self.base, first, math.log(t) * inv)
            return float(x) ** k

        value, _err = integrate_unit(integrand)
        return value


def _invert_power_fraction(base: BaseDistribution, first: bool, log_w: float):
    """Point x with ln F(x) = log_w (first kind) or ln(1-F(x)) = log_w.

    Scalar helper for quadrature integrands. Routes through whichever of
    the CDF and survival inverses receives the small fraction, so x stays
    sharp near both support ends.
    """
    if log_w < _LN_HALF:
        frac = max(math.exp(log_w), _OPEN_LO)
        return base._quantile(frac) if first else base._quantile_sf(frac)
    comp = min(max(-math.expm1(log_w), _OPEN_LO), _OPEN_HI)
    return base._quantile_sf(comp) if first else base._quantile(comp)


def extend(base: BaseDistribution, lam: float, kind=Kind.FIRST) -> ExtendedDistribution:
    """Construct the exponentiated law G from a base distribution."""
    return ExtendedDistribution(base, lam, kind)


# -- sampling ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Sample:
    """Observations plus the provenance needed to regenerate them."""

    values: np.ndarray
    seed: int
    source: str
    generator: str = GENERATOR_ID

    def __len__(self) -> int:
        return len(self.values)


def sample(dist, n: int, seed: int) -> Sample:
    """Draw n values from ``dist`` by inverse transform.

    ``dist`` is any object with ``quantile`` and ``describe`` (base or
    extended). The uniform stream is derived deterministically from the
    seed, so identical (dist, n, seed) always reproduces the identical
    sample. Uniforms are drawn on the open interval (0, 1).
    """
    if int(n) != n or int(n) < 1:
        raise DomainError(f"sample size n must be a positive integer, got {n!r}")
    gen = substream(seed)
    u = open_uniform(gen, int(n))
    values = np.asarray(dist.quantile(u), dtype=float)
    return Sample(values=values, seed=int(seed), source=dist.describe())


def sample_values(s) -> np.ndarray:
    """Accept a Sample or a bare array-like; return the values array."""
    return np.asarray(getattr(s, "values", s), dtype=float)


# -- CSV round trip ----------------------------------------------------------


def sample_to_csv(s: Sample) -> str:
    """Serialize: `#` metadata lines, a `value` header, one value per row."""
    lines = [
        f"# seed: {s.seed}",
        f"# source: {s.source}",
        f"# generator: {s.generator}",
        "value",
    ]
    lines.extend(repr(float(v)) for v in s.values)
    return "\n".join(lines) + "\n"


def sample_from_csv(text: str) -> Sample:
    """Parse the format written by :func:`sample_to_csv`."""
    meta: dict[str, str] = {}
    values: list[float] = []
    saw_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, val = line[1:].partition(":")
            if sep:
                meta[key.strip()] = val.strip()
            continue
        if not saw_header:
            if line != "value":
                raise ParseError(
                    "sample CSV must start with a 'value' header row",
                    text=raw, position=lineno, expected="value",
                )
            saw_header = True
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise ParseError(
                f"bad numeric row {line!r}", text=raw, position=lineno,
                expected="a real number",
            ) from None
    if not saw_header:
        raise ParseError("sample CSV has no 'value' header row", expected="value")
    try:
        seed = int(meta.get("seed", "0"))
    except ValueError:
        raise ParseError(f"bad seed metadata {meta.get('seed')!r}") from None
    return Sample(
        values=np.asarray(values, dtype=float),
        seed=seed,
        source=meta.get("source", ""),
        generator=meta.get("generator", GENERATOR_ID),
    )
