"""Parametric distribution catalog with numerically careful closed forms.

Every distribution carries its density, log-density, cdf, survival
function, quantile function and inverse survival function as vectorized
callables.  The log-density and the inverse survival function are
first-class rather than derived, because record-value integrands push far
into the tails where exp/log round trips and 1-p cancellations destroy
precision.

Conventions: support endpoints are open; evaluating a pdf exactly at an
endpoint returns the one-sided limit, evaluation outside the support
returns 0 (pdf), 0/1 (cdf) and 1/0 (survival).  All callables accept
floats or numpy arrays and return matching scalars or arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConsistencyError, ParameterError

__all__ = [
    "Distribution",
    "make_exponential",
    "make_pareto",
    "make_weibull",
    "make_uniform01",
    "make_power_decreasing",
    "make_power_increasing",
    "make_custom",
    "affine_transform",
]

_INF = math.inf


def _scalarize(a: np.ndarray):
    # 0-d arrays become numpy scalars (float subclasses); arrays pass through.
    return a[()]


@dataclass(frozen=True, eq=False)
class Distribution:
    """A continuous distribution described by its standard functions.

    ``log_cdf`` and ``log_survival`` default to logs of the plain
    functions, but catalog members supply closed forms: record-value
    densities need the cumulative hazard -log S(x) far beyond the point
    where S(x) itself underflows.  ``hazard`` (pdf/survival) and
    ``reversed_hazard`` (pdf/cdf) are derived on demand.
    """

    name: str
    params: dict
    support: tuple[float, float]
    pdf: Callable
    log_pdf: Callable
    cdf: Callable
    survival: Callable
    quantile: Callable
    inverse_survival: Callable
    log_cdf: Callable = None
    log_survival: Callable = None

    def __post_init__(self) -> None:
        if self.log_cdf is None:
            def log_cdf(x, _cdf=self.cdf):
                with np.errstate(divide="ignore"):
                    return np.log(np.asarray(_cdf(x), float))[()]

            object.__setattr__(self, "log_cdf", log_cdf)
        if self.log_survival is None:
            def log_survival(x, _sf=self.survival):
                with np.errstate(divide="ignore"):
                    return np.log(np.asarray(_sf(x), float))[()]

            object.__setattr__(self, "log_survival", log_survival)

    def hazard(self, x):
        return self.pdf(x) / self.survival(x)

    def reversed_hazard(self, x):
        return self.pdf(x) / self.cdf(x)


def make_exponential(theta: float) -> Distribution:
    """Exponential with rate theta: density theta * exp(-theta x) on (0, inf)."""
    theta = float(theta)
    if not (theta > 0.0 and math.isfinite(theta)):
        raise ParameterError(f"exponential rate must be positive and finite, got {theta}")
    log_theta = math.log(theta)

    def pdf(x):
        x = np.asarray(x, float)
        out = np.zeros(x.shape)
        m = x >= 0.0
        out[m] = theta * np.exp(-theta * x[m])
        return _scalarize(out)

    def log_pdf(x):
        x = np.asarray(x, float)
        out = np.full(x.shape, -_INF)
        m = x >= 0.0
        out[m] = log_theta - theta * x[m]
        return _scalarize(out)

    def cdf(x):
        x = np.asarray(x, float)
        out = np.zeros(x.shape)
        m = x > 0.0
        out[m] = -np.expm1(-theta * x[m])
        return _scalarize(out)

    def survival(x):
        x = np.asarray(x, float)
        out = np.ones(x.shape)
        m = x > 0.0
        out[m] = np.exp(-theta * x[m])
        return _scalarize(out)

    def quantile(p):
        p = np.asarray(p, float)
        return _scalarize(-np.log1p(-p) / theta)

    def inverse_survival(q):
        q = np.asarray(q, float)
        return _scalarize(-np.log(q) / theta)

    def log_cdf(x):
        x = np.asarray(x, float)
        out = np.full(x.shape, -_INF)
        m = x > 0.0
        with np.errstate(divide="ignore"):
            out[m] = np.log(-np.expm1(-theta * x[m]))
        return _scalarize(out)

    def log_survival(x):
        x = np.asarray(x, float)
        out = np.zeros(x.shape)
        m = x > 0.0
        out[m] = -theta * x[m]
        return _scalarize(out)

    return Distribution(
        "exponential", {"theta": theta}, (0.0, _INF),
        pdf, log_pdf, cdf, survival, quantile, inverse_survival,
        log_cdf, log_survival,
    )


def make_pareto(theta: float) -> Distribution:
    """Pareto with tail index theta: density theta * x^-(theta+1) on (1, inf)."""
    theta = float(theta)
    if not (theta > 0.0 and math.isfinite(theta)):
        raise ParameterError(f"pareto tail index must be positive and finite, got {theta}")
    log_theta = math.log(theta)

    def pdf(x):
        x = np.asarray(x, float)
        out = np.zeros(x.shape)
        m = x >= 1.0
        out[m] = theta * x[m] ** (-theta - 1.0)
        return _scalarize(out)

    def log_pdf(x):
        x = np.asarray(x, float)
        out = np.full(x.shape, -_INF)
        m = x >= 1.0
        out[m] = log_theta - (theta + 1.0) * np.log(x[m])
        return _scalarize(out)

    def cdf(x):
        x = np.asarray(x, float)
        out = np.zeros(x.shape)
        m = x > 1.0
        out[m] = -np.expm1(-theta * np.log(x[m]))
        return _scalarize(out)

    def survival(x):
        x = np.asarray(x, float)
        out = np.ones(x.shape)
        m = x > 1.0
        out[m] = x[m] ** -theta
        return _scalarize(out)

    def quantile(p):
        p = np.asarray(p, float)
        return _scalarize((1.0 - p) ** (-1.0 / theta))

    def inverse_survival(q):
        q = np.asarray(q, float)
        return _scalarize(q ** (-1.0 / theta))

    def log_cdf(x):
        x = np.asarray(x, float)
        out = np.full(x.shape, -_INF)
        m = x > 1.0
        with np.errstate(divide="ignore"):
            out[m] = np.log(-np.expm1(-theta * np.log(x[m])))
        return _scalarize(out)

    def log_survival(x):
        x = np.asarray(x, float)
        out = np.zeros(x.shape)
        m = x > 1.0
        out[m] = -theta * np.log(x[m])
        return _scalarize(out)

    return Distribution(
        "pareto", {"theta": theta}, (1.0, _INF),
        pdf, log_pdf, cdf, survival, quantile, inverse_survival,
        log_cdf, log_survival,
    )


def make_weibull(lam: float, beta: float) -> Distribution:
    """Weibull with survival exp(-lam * x^beta) on (0, inf).

    beta = 1 reduces to the exponential with rate lam.
    """
    lam = float(lam)
    beta = float(beta)
    if not (lam > 0.0 and math.isfinite(lam)):
        raise ParameterError(f"weibull scale parameter must be positive and finite, got {lam}")
    if not (beta > 0.0 and math.isfinite(beta)):
        raise ParameterError(f"weibull shape parameter must be positive and finite, got {beta}")
    log_lam_beta = math.log(lam * beta)

    def pdf(x):
        x = np.asarray(x, float)
        out = np.zeros(x.shape)
        m = x > 0.0
        xm = x[m]
        out[m] = lam * beta * xm ** (beta - 1.0) * np.exp(-lam * xm**beta)
        if beta == 1.0:
            out[x == 0.0] = lam
        elif beta < 1.0:
            out[x == 0.0] = _INF
        return _scalarize(out)

    def log_pdf(x):
        x = np.asarray(x, float)
        out = np.full(x.shape, -_INF)
        m = x > 0.0
        xm = x[m]
        out[m] = log_lam_beta + (beta - 1.0) * np.log(xm) - lam * xm**beta
        if beta == 1.0:
            out[x == 0.0] = math.log(lam)
        elif beta < 1.0:
            out[x == 0.0] = _INF
        return _scalarize(out)

    def cdf(x):
        x = np.asarray(x, float)
        out = np.zeros(x.shape)
        m = x > 0.0
        out[m] = -np.expm1(-lam * x[m] ** beta)
        return _scalarize(out)

    def survival(x):
        x = np.asarray(x, float)
        out = np.ones(x.shape)
        m = x > 0.0
        out[m] = np.exp(-lam * x[m] ** beta)
        return _scalarize(out)

    def quantile(p):
        p = np.asarray(p, float)
        return _scalarize((-np.log1p(-p) / lam) ** (1.0 / beta))

    def inverse_survival(q):
        q = np.asarray(q, float)
        return _scalarize((-np.log(q) / lam) ** (1.0 / beta))

    def log_cdf(x):
        x = np.asarray(x, float)
        out = np.full(x.shape, -_INF)
        m = x > 0.0
        with np.errstate(divide="ignore"):
            out[m] = np.log(-np.expm1(-lam * x[m] ** beta))
        return _scalarize(out)

    def log_survival(x):
        x = np.asarray(x, float)
        out = np.zeros(x.shape)
        m = x > 0.0
        out[m] = -lam * x[m] ** beta
        return _scalarize(out)

    return Distribution(
        "weibull", {"lambda": lam, "beta": beta}, (0.0, _INF),
        pdf, log_pdf, cdf, survival, quantile, inverse_survival,
        log_cdf, log_survival,
    )


def make_uniform01() -> Distribution:
    """Uniform on (0, 1)."""

    def pdf(x):
        x = np.asarray(x, float)
        return _scalarize(np.where((x >= 0.0) & (x <= 1.0), 1.0, 0.0))

    def log_pdf(x):
        x = np.asarray(x, float)
        return _scalarize(np.where((x >= 0.0) & (x <= 1.0), 0.0, -_INF))

    def cdf(x):
        x = np.asarray(x, float)
        return _scalarize(np.clip(x, 0.0, 1.0))

    def survival(x):
        x = np.asarray(x, float)
        return _scalarize(np.clip(1.0 - x, 0.0, 1.0))

    def quantile(p):
        p = np.asarray(p, float)
        return _scalarize(p + 0.0)

    def inverse_survival(q):
        q = np.asarray(q, float)
        return _scalarize(1.0 - q)

    def log_cdf(x):
        x = np.asarray(x, float)
        with np.errstate(divide="ignore"):
            return _scalarize(np.log(np.clip(x, 0.0, 1.0)))

    def log_survival(x):
        x = np.asarray(x, float)
        with np.errstate(divide="ignore"):
            return _scalarize(np.log1p(-np.clip(x, 0.0, 1.0)))

    return Distribution(
        "uniform", {}, (0.0, 1.0),
        pdf, log_pdf, cdf, survival, quantile, inverse_survival,
        log_cdf, log_survival,
    )


def make_power_decreasing() -> Distribution:
    """Density 3(1-x)^2 on (0, 1); a strictly decreasing polynomial density."""

    def pdf(x):
        x = np.asarray(x, float)
        out = np.zeros(x.shape)
        m = (x >= 0.0) & (x <= 1.0)
        out[m] = 3.0 * (1.0 - x[m]) ** 2
        return _scalarize(out)

    def log_pdf(x):
        x = np.asarray(x, float)
        out = np.full(x.shape, -_INF)
        m = (x >= 0.0) & (x < 1.0)
        out[m] = math.log(3.0) + 2.0 * np.log(1.0 - x[m])
        return _scalarize(out)

    def cdf(x):
        x = np.asarray(x, float)
        return _scalarize(1.0 - np.clip(1.0 - x, 0.0, 1.0) ** 3)

    def survival(x):
        x = np.asarray(x, float)
        return _scalarize(np.clip(1.0 - x, 0.0, 1.0) ** 3)

    def quantile(p):
        p = np.asarray(p, float)
        return _scalarize(1.0 - (1.0 - p) ** (1.0 / 3.0))

    def inverse_survival(q):
        q = np.asarray(q, float)
        return _scalarize(1.0 - q ** (1.0 / 3.0))

    def log_cdf(x):
        x = np.asarray(x, float)
        with np.errstate(divide="ignore"):
            return _scalarize(np.log(-np.expm1(3.0 * np.log1p(-np.clip(x, 0.0, 1.0)))))

    def log_survival(x):
        x = np.asarray(x, float)
        with np.errstate(divide="ignore"):
            return _scalarize(3.0 * np.log1p(-np.clip(x, 0.0, 1.0)))

    return Distribution(
        "power_decreasing", {}, (0.0, 1.0),
        pdf, log_pdf, cdf, survival, quantile, inverse_survival,
        log_cdf, log_survival,
    )


def make_power_increasing(m: int) -> Distribution:
    """Density m x^(m-1) on (0, 1) for integer m >= 2; strictly increasing."""
    if not (isinstance(m, (int, np.integer)) and m >= 2):
        raise ParameterError(f"power exponent must be an integer >= 2, got {m!r}")
    m = int(m)
    log_m = math.log(m)

    def pdf(x):
        x = np.asarray(x, float)
        out = np.zeros(x.shape)
        mask = (x >= 0.0) & (x <= 1.0)
        out[mask] = m * x[mask] ** (m - 1)
        return _scalarize(out)

    def log_pdf(x):
        x = np.asarray(x, float)
        out = np.full(x.shape, -_INF)
        mask = (x > 0.0) & (x <= 1.0)
        out[mask] = log_m + (m - 1) * np.log(x[mask])
        return _scalarize(out)

    def cdf(x):
        x = np.asarray(x, float)
        return _scalarize(np.clip(x, 0.0, 1.0) ** m)

    def survival(x):
        x = np.asarray(x, float)
        return _scalarize(1.0 - np.clip(x, 0.0, 1.0) ** m)

    def quantile(p):
        p = np.asarray(p, float)
        return _scalarize(p ** (1.0 / m))

    def inverse_survival(q):
        q = np.asarray(q, float)
        return _scalarize((1.0 - q) ** (1.0 / m))

    def log_cdf(x):
        x = np.asarray(x, float)
        with np.errstate(divide="ignore"):
            return _scalarize(m * np.log(np.clip(x, 0.0, 1.0)))

    def log_survival(x):
        x = np.asarray(x, float)
        with np.errstate(divide="ignore"):
            return _scalarize(np.log(-np.expm1(m * np.log(np.clip(x, 0.0, 1.0)))))

    return Distribution(
        "power_increasing", {"m": m}, (0.0, 1.0),
        pdf, log_pdf, cdf, survival, quantile, inverse_survival,
        log_cdf, log_survival,
    )


_N_PROBES = 16


def make_custom(
    pdf: Callable,
    cdf: Callable,
    quantile: Callable,
    support: tuple[float, float],
    *,
    name: str = "custom",
    params: dict | None = None,
    log_pdf: Callable | None = None,
    survival: Callable | None = None,
    inverse_survival: Callable | None = None,
    log_cdf: Callable | None = None,
    log_survival: Callable | None = None,
) -> Distribution:
    """Wrap user-supplied functions as a Distribution, after probing them.

    Consistency probes run at 16 interior points (placed by the quantile
    function so that infinite supports work): the cdf derivative must match
    the pdf, and quantile(cdf(x)) must return x.  A failure raises
    :class:`ConsistencyError` naming the probe, catching sign errors and
    mismatched parameterizations before they poison downstream integrals.
    """
    lo, hi = float(support[0]), float(support[1])
    if not lo < hi:
        raise ParameterError(f"support must satisfy lo < hi, got {support!r}")

    if log_pdf is None:
        def log_pdf(x, _pdf=pdf):
            with np.errstate(divide="ignore"):
                return np.log(np.asarray(_pdf(x), float))

    if survival is None:
        def survival(x, _cdf=cdf):
            return 1.0 - np.asarray(_cdf(x), float)

    if inverse_survival is None:
        def inverse_survival(q, _quantile=quantile):
            return np.asarray(_quantile(1.0 - np.asarray(q, float)), float)

    probes = np.asarray(quantile((np.arange(_N_PROBES) + 0.5) / _N_PROBES), float)
    for x in probes:
        h = 1e-6 * max(1.0, abs(x))
        a = max(x - h, lo)
        b = min(x + h, hi)
        deriv = (float(cdf(b)) - float(cdf(a))) / (b - a)
        density = float(pdf(x))
        if not math.isfinite(density) or abs(deriv - density) > 1e-3 * (1.0 + abs(density)):
            raise ConsistencyError(
                f"pdf-cdf consistency probe failed at x={x!r}: "
                f"cdf slope {deriv!r} vs pdf {density!r}"
            )
        roundtrip = float(quantile(float(cdf(x))))
        if abs(roundtrip - x) > 1e-6 * max(1.0, abs(x)):
            raise ConsistencyError(
                f"quantile-cdf roundtrip probe failed at x={x!r}: got {roundtrip!r}"
            )

    return Distribution(
        name, dict(params or {}), (lo, hi),
        pdf, log_pdf, cdf, survival, quantile, inverse_survival,
        log_cdf, log_survival,
    )


def affine_transform(dist: Distribution, a: float, b: float) -> Distribution:
    """The distribution of a*X + b for a > 0."""
    a = float(a)
    b = float(b)
    if not (a > 0.0 and math.isfinite(a) and math.isfinite(b)):
        raise ParameterError(f"affine transform needs a > 0 and finite b, got a={a}, b={b}")
    lo, hi = dist.support
    log_a = math.log(a)

    def back(y):
        return (np.asarray(y, float) - b) / a

    return Distribution(
        f"affine({dist.name})",
        {**dist.params, "scale": a, "shift": b},
        (a * lo + b, a * hi + b),
        lambda y: dist.pdf(back(y)) / a,
        lambda y: dist.log_pdf(back(y)) - log_a,
        lambda y: dist.cdf(back(y)),
        lambda y: dist.survival(back(y)),
        lambda p: a * np.asarray(dist.quantile(p), float) + b,
        lambda q: a * np.asarray(dist.inverse_survival(q), float) + b,
        lambda y: dist.log_cdf(back(y)),
        lambda y: dist.log_survival(back(y)),
    )
