"""Inaccuracy measures between a record distribution and its parent.

Three measures are supported, each with several evaluation paths that
must agree and are tested against one another:

* kerridge: density inaccuracy of assuming the parent density while the
  data are record values.  Closed forms exist for most catalog parents;
  the general path is a gamma-weighted expectation through the record
  representation U = S^{-1}(e^{-T}), T ~ Gamma(n, rate k), with plain
  x-space quadrature as a cross-check.
* cri: cumulative residual inaccuracy between the upper record's
  survival function and the parent's.
* cpi: cumulative past inaccuracy between the lower record's cdf and the
  parent's.

The cri/cpi measures additionally have representation forms (mean
differences, hazard-weighted double integrals, cdf differences) exposed
as separate functions so the identity checks exercise genuinely
different arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
import scipy.special as _sc

from .distributions import Distribution, affine_transform
from .errors import (
    DivergenceError,
    IntegrandError,
    NonConvergenceError,
    ParameterError,
    UnsupportedMethodError,
)
from .measures import MeasureResult, _quad, kerridge as _generic_kerridge
from .numerics import (
    DEFAULT_QUADRATURE,
    QuadratureConfig,
    digamma,
    gamma_expectation,
)
from .records import (
    RecordSpec,
    gamma_transform_point,
    record_cdf,
    record_distribution,
    record_survival,
)

__all__ = [
    "RecordMeasureRequest",
    "kerridge_record",
    "residual_record_inaccuracy",
    "past_record_inaccuracy",
    "residual_inaccuracy_mean_difference_form",
    "residual_inaccuracy_hazard_forms",
    "past_inaccuracy_cdf_difference_form",
    "scale_shift_check",
    "compute_record_measure",
]

_MEASURES = ("kerridge", "cri", "cpi")
_REQUEST_METHODS = ("auto", "closed_form", "quadrature", "gamma_expectation", "monte_carlo")


@dataclass(frozen=True)
class RecordMeasureRequest:
    """What to compute: which parent, which record sequence, which measure.

    The cumulative measures are tied to a side: cri compares upper-record
    and parent survival functions, cpi compares lower-record and parent
    cdfs, so requests mixing them up are rejected here rather than
    producing a meaningless number.
    """

    parent: Distribution
    spec: RecordSpec
    measure: str
    method: str = "auto"

    def __post_init__(self) -> None:
        if self.measure not in _MEASURES:
            raise ParameterError(f"measure must be one of {_MEASURES}, got {self.measure!r}")
        if self.method not in _REQUEST_METHODS:
            raise ParameterError(
                f"method must be one of {_REQUEST_METHODS}, got {self.method!r}"
            )
        if self.measure == "cri" and self.spec.side != "upper":
            raise ParameterError("cri is defined for upper records; got side 'lower'")
        if self.measure == "cpi" and self.spec.side != "lower":
            raise ParameterError("cpi is defined for lower records; got side 'upper'")


# ---------------------------------------------------------------------------
# closed forms


def _kerridge_closed(parent: Distribution, spec: RecordSpec) -> float | None:
    n, k = spec.n, spec.k
    p = parent.params
    if parent.name == "uniform":
        # flat density: the log-density term vanishes identically
        return 0.0
    if spec.side != "upper":
        return None
    if parent.name == "exponential":
        return n / k - math.log(p["theta"])
    if parent.name == "pareto":
        theta = p["theta"]
        return (1.0 + 1.0 / theta) * n / k - math.log(theta)
    if parent.name == "power_decreasing":
        return -math.log(3.0) + 2.0 * n / (3.0 * k)
    if parent.name == "weibull":
        lam, beta = p["lambda"], p["beta"]
        return (
            n / k
            - math.log(beta)
            - math.log(lam) / beta
            - (beta - 1.0) / beta * (digamma(n) - math.log(k))
        )
    return None


def _uniform_cumulative_closed(n: int, k: int) -> float:
    return sum((i + 1) * k**i / (k + 1) ** (i + 2) for i in range(n))


def _cri_closed(parent: Distribution, spec: RecordSpec) -> float | None:
    n, k = spec.n, spec.k
    if parent.name == "exponential":
        return n * (n + 1) / (2.0 * parent.params["theta"] * k**2)
    if parent.name == "uniform":
        return _uniform_cumulative_closed(n, k)
    return None


def _cpi_closed(parent: Distribution, spec: RecordSpec) -> float | None:
    # the uniform law is symmetric about 1/2, so cdf-side values mirror
    # the survival-side ones
    if parent.name == "uniform":
        return _uniform_cumulative_closed(spec.n, spec.k)
    return None


def _closed(value: float | None, what: str) -> MeasureResult:
    if value is None:
        raise UnsupportedMethodError(f"no closed form is known for {what}")
    return MeasureResult(value, "closed_form", 0.0)


def _gamma_expect(g, n: int, k: int, config: QuadratureConfig, what: str):
    # same contract as _quad: a quadrature breakdown on one of these
    # expectations means the defining integral could not be certified finite
    try:
        return gamma_expectation(g, n, k, config)
    except NonConvergenceError as exc:
        raise DivergenceError(
            f"{what} did not converge and is likely divergent ({exc})",
            partial_value=exc.partial_value,
        ) from exc
    except IntegrandError as exc:
        raise DivergenceError(f"{what} could not be evaluated ({exc})") from exc


def _finite_cap(fn, t_hi: float = 700.0) -> float:
    """Largest probe point where fn(t) still evaluates to a finite number.

    The t -> x round trip behind these integrands runs through exp(-t), so
    far enough out the intermediate either underflows to 0 or overflows to
    inf even though the true value is moderate.  Capping t at the last
    finite probe freezes the integrand on a region whose gamma weight is
    negligible (below exp(-cap)); the discarded mass is folded into the
    reported error estimate by the caller.
    """
    t = t_hi
    while t > 4.0:
        with np.errstate(all="ignore"):
            v = np.asarray(fn(np.asarray([t], float)), float)
        if np.all(np.isfinite(v)):
            return t
        t /= 2.0
    return t


def _capped(fn, cap: float):
    def capped_fn(t):
        return fn(np.minimum(np.asarray(t, float), cap))

    return capped_fn


def _cap_tail_mass(n: int, k: int, cap: float) -> float:
    return float(_sc.gammaincc(n, k * cap))


# ---------------------------------------------------------------------------
# kerridge


def kerridge_record(
    parent: Distribution,
    spec: RecordSpec,
    method: str = "auto",
    config: QuadratureConfig = DEFAULT_QUADRATURE,
) -> MeasureResult:
    """Kerridge inaccuracy of assuming the parent density for record data."""
    if method == "auto":
        value = _kerridge_closed(parent, spec)
        if value is not None:
            return MeasureResult(value, "closed_form", 0.0)
        method = "gamma_expectation"
    if method == "closed_form":
        return _closed(_kerridge_closed(parent, spec), f"kerridge on {parent.name}")
    if method == "gamma_expectation":
        def surprise(t):
            x = np.asarray(gamma_transform_point(parent, spec.side, t), float)
            return -np.asarray(parent.log_pdf(x), float)

        cap = _finite_cap(surprise)
        res = _gamma_expect(
            _capped(surprise, cap), spec.n, spec.k, config,
            f"record kerridge expectation on {parent.name}",
        )
        err = res.abs_error_estimate + _cap_tail_mass(spec.n, spec.k, cap)
        return MeasureResult(res.value, "gamma_expectation", err)
    if method == "quadrature":
        return _generic_kerridge(record_distribution(parent, spec), parent, config)
    if method == "monte_carlo":
        from .oracle import McConfig, mc_measure

        return mc_measure(RecordMeasureRequest(parent, spec, "kerridge"), McConfig())
    raise UnsupportedMethodError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# cumulative residual inaccuracy (upper records)


def _require_side(spec: RecordSpec, side: str, what: str) -> None:
    if spec.side != side:
        raise ParameterError(f"{what} is defined for {side} records, got {spec.side!r}")


def _cumulative_sum_integrand(parent: Distribution, n: int, k: int, side: str):
    """The direct integrand: sum_i (k^i/i!) g^k (-log g)^(i+1).

    g is the parent survival function for upper records and the cdf for
    lower ones.  Assembled in log space so huge cumulative hazards and
    underflowing weights cannot produce inf*0.
    """
    log_g_fn = parent.log_survival if side == "upper" else parent.log_cdf
    log_k = math.log(k)
    log_fact = [math.lgamma(i + 1) for i in range(n)]

    def integrand(x):
        lg = np.asarray(log_g_fn(x), float)
        out = np.zeros(lg.shape)
        m = np.isfinite(lg) & (lg < 0.0)
        if np.any(m):
            lgm = lg[m]
            log_y = np.log(-lgm)
            acc = np.zeros(lgm.shape)
            for i in range(n):
                acc += np.exp(i * log_k - log_fact[i] + k * lgm + (i + 1) * log_y)
            out[m] = acc
        return out[()]

    return integrand


def residual_record_inaccuracy(
    parent: Distribution,
    spec: RecordSpec,
    method: str = "auto",
    config: QuadratureConfig = DEFAULT_QUADRATURE,
) -> MeasureResult:
    """Cumulative residual inaccuracy between the upper record and parent."""
    _require_side(spec, "upper", "residual record inaccuracy")
    if method == "auto":
        value = _cri_closed(parent, spec)
        if value is not None:
            return MeasureResult(value, "closed_form", 0.0)
        method = "quadrature"
    if method == "closed_form":
        return _closed(_cri_closed(parent, spec), f"residual inaccuracy on {parent.name}")
    if method == "quadrature":
        integrand = _cumulative_sum_integrand(parent, spec.n, spec.k, "upper")
        return _quad(integrand, parent.support, config, "residual record inaccuracy")
    if method == "gamma_expectation":
        return _residual_expectation_form(parent, spec, config)
    if method == "monte_carlo":
        from .oracle import McConfig, mc_measure

        return mc_measure(RecordMeasureRequest(parent, spec, "cri"), McConfig())
    raise UnsupportedMethodError(f"unknown method {method!r}")


def _residual_expectation_form(
    parent: Distribution, spec: RecordSpec, config: QuadratureConfig
) -> MeasureResult:
    """Expectation form: (1/k^2) sum_i (i+1) E[survival/pdf at the record].

    The expectation runs over the (i+2)-th upper k-record, which through
    the gamma representation is E over T ~ Gamma(i+2, k) of
    e^-t / pdf(inverse_survival(e^-t)).
    """
    n, k = spec.n, spec.k

    def reciprocal_hazard(t):
        t = np.asarray(t, float)
        x = np.asarray(parent.inverse_survival(np.exp(-t)), float)
        return np.exp(-t) / np.asarray(parent.pdf(x), float)

    cap = _finite_cap(reciprocal_hazard)
    capped = _capped(reciprocal_hazard, cap)
    total = 0.0
    err = 0.0
    for i in range(n):
        res = _gamma_expect(
            capped, i + 2, k, config,
            f"residual inaccuracy expectation term {i} on {parent.name}",
        )
        total += (i + 1) / k**2 * res.value
        err += (i + 1) / k**2 * (res.abs_error_estimate + _cap_tail_mass(i + 2, k, cap))
    return MeasureResult(total, "gamma_expectation", err)


def residual_inaccuracy_mean_difference_form(
    parent: Distribution,
    spec: RecordSpec,
    config: QuadratureConfig = DEFAULT_QUADRATURE,
) -> MeasureResult:
    """Representation through record means: sum_i ((i+1)/k) (m_{i+2} - m_{i+1}).

    m_j is the integral of the j-th upper k-record's survival function;
    a common lower integration limit makes the differences shift-free.
    """
    _require_side(spec, "upper", "mean-difference form")
    n, k = spec.n, spec.k
    mu: list[float] = []
    mu_err: list[float] = []
    for j in range(1, n + 2):
        rspec = RecordSpec("upper", j, k)
        res = _quad(
            lambda x, _rspec=rspec: _record_survival_arr(parent, _rspec, x),
            parent.support,
            config,
            f"record mean (index {j})",
        )
        mu.append(res.value)
        mu_err.append(res.abs_error_estimate)
    total = sum((i + 1) / k * (mu[i + 1] - mu[i]) for i in range(n))
    err = sum((i + 1) / k * (mu_err[i + 1] + mu_err[i]) for i in range(n))
    return MeasureResult(total, "quadrature", err)


def _record_survival_arr(parent: Distribution, spec: RecordSpec, x):
    return np.asarray(record_survival(parent, spec, x), float)


def residual_inaccuracy_hazard_forms(
    parent: Distribution,
    spec: RecordSpec,
    config: QuadratureConfig | None = None,
) -> tuple[MeasureResult, MeasureResult]:
    """Two double-integral representations weighted by hazard quantities.

    Form one integrates the parent hazard rate against tail integrals of
    (-k log survival)^i survival^k; form two integrates the density
    weight survival^(k-1) pdf against head integrals of
    (-k log survival)^(i+1).  Both must agree with the direct path.

    Form one's tail integrals are evaluated after substituting the
    cumulative hazard for the integration variable.  In x-space a heavy
    tail spreads the mass so thinly that the adaptive integrator can
    declare convergence below its absolute floor without ever sampling
    it; in hazard-space the mass sits against the finite endpoint where
    the first panel sees it.
    """
    _require_side(spec, "upper", "hazard double-integral forms")
    n, k = spec.n, spec.k
    lo, hi = parent.support
    if config is None:
        # double integrals: keep the budgets modest, agreement is checked
        # at 1e-6 anyway
        outer_cfg = QuadratureConfig(abs_tol=1e-9, rel_tol=1e-8, max_subdivisions=400)
        inner_cfg = QuadratureConfig(abs_tol=1e-10, rel_tol=1e-9, max_subdivisions=400)
    else:
        outer_cfg = config
        inner_cfg = replace(
            config, abs_tol=0.1 * config.abs_tol, rel_tol=0.1 * config.rel_tol
        )
    log_k = math.log(k)
    log_fact = [math.lgamma(i + 1) for i in range(n)]

    def tail_sum(s):
        # sum_i (ks)^i/i! * e^{-(k+1)s} / f(x(s)), x(s) the record-scale
        # image of the cumulative hazard s.  Points where the transformed
        # abscissa has collapsed onto a support endpoint carry true mass
        # below working precision and are dropped.
        s = np.asarray(s, float)
        flat = np.atleast_1d(s).astype(float)
        out = np.zeros(flat.shape)
        live = flat < 700.0
        if np.any(live):
            sl = flat[live]
            with np.errstate(all="ignore"):
                x = np.asarray(gamma_transform_point(parent, "upper", sl), float)
                lp = np.asarray(parent.log_pdf(x), float)
                base = -(k + 1.0) * sl - lp
                ls = np.log(sl)
                acc = np.zeros(sl.shape)
                for i in range(n):
                    acc += np.exp(base + i * (log_k + ls) - log_fact[i])
            out[live] = np.where(np.isfinite(lp), acc, 0.0)
        return out.reshape(s.shape)[()]

    def head_piece(i):
        def f(x):
            lg = np.asarray(parent.log_survival(x), float)
            out = np.zeros(lg.shape)
            m = np.isfinite(lg) & (lg < 0.0)
            if np.any(m):
                out[m] = np.exp((i + 1) * (log_k + np.log(-lg[m])))
            out[~np.isfinite(lg)] = np.inf
            return out[()]

        return f

    def form_one_outer(ts):
        ts = np.asarray(ts, float)
        flat = np.atleast_1d(ts)
        vals = np.empty(flat.shape)
        for j, t in enumerate(flat):
            log_s = float(parent.log_survival(t))
            log_dens = float(parent.log_pdf(t))
            if not (math.isfinite(log_s) and math.isfinite(log_dens)):
                vals[j] = 0.0
                continue
            s0 = max(-log_s, 1e-300)
            inner = _quad(tail_sum, (s0, math.inf), inner_cfg, "hazard-form tail integral")
            vals[j] = math.exp(log_dens - log_s) * inner.value
        return vals.reshape(ts.shape)[()]

    def form_two_outer(ts):
        ts = np.asarray(ts, float)
        flat = np.atleast_1d(ts)
        vals = np.empty(flat.shape)
        for j, t in enumerate(flat):
            dens = float(parent.pdf(t))
            s = float(parent.survival(t))
            weight = s ** (k - 1) * dens
            if weight == 0.0 or not math.isfinite(weight):
                vals[j] = 0.0
                continue
            acc = 0.0
            for i in range(n):
                inner = _quad(
                    head_piece(i), (lo, float(t)), inner_cfg, "hazard-form head integral"
                )
                acc += math.exp(-log_fact[i]) * inner.value
            vals[j] = weight * acc
        return vals.reshape(ts.shape)[()]

    one = _quad(form_one_outer, (lo, hi), outer_cfg, "hazard-weighted form one")
    two = _quad(form_two_outer, (lo, hi), outer_cfg, "hazard-weighted form two")
    return one, two


# ---------------------------------------------------------------------------
# cumulative past inaccuracy (lower records)


def past_record_inaccuracy(
    parent: Distribution,
    spec: RecordSpec,
    method: str = "auto",
    config: QuadratureConfig = DEFAULT_QUADRATURE,
) -> MeasureResult:
    """Cumulative past inaccuracy between the lower record and parent."""
    _require_side(spec, "lower", "past record inaccuracy")
    if method == "auto":
        value = _cpi_closed(parent, spec)
        if value is not None:
            return MeasureResult(value, "closed_form", 0.0)
        method = "quadrature"
    if method == "closed_form":
        return _closed(_cpi_closed(parent, spec), f"past inaccuracy on {parent.name}")
    if method == "quadrature":
        integrand = _cumulative_sum_integrand(parent, spec.n, spec.k, "lower")
        return _quad(integrand, parent.support, config, "past record inaccuracy")
    if method == "gamma_expectation":
        return _past_expectation_form(parent, spec, config)
    if method == "monte_carlo":
        from .oracle import McConfig, mc_measure

        return mc_measure(RecordMeasureRequest(parent, spec, "cpi"), McConfig())
    raise UnsupportedMethodError(f"unknown method {method!r}")


def _past_expectation_form(
    parent: Distribution, spec: RecordSpec, config: QuadratureConfig
) -> MeasureResult:
    """Mirror of the residual expectation form with reversed-hazard weights."""
    n, k = spec.n, spec.k

    def reciprocal_reversed_hazard(t):
        t = np.asarray(t, float)
        x = np.asarray(parent.quantile(np.exp(-t)), float)
        return np.exp(-t) / np.asarray(parent.pdf(x), float)

    cap = _finite_cap(reciprocal_reversed_hazard)
    capped = _capped(reciprocal_reversed_hazard, cap)
    total = 0.0
    err = 0.0
    for i in range(n):
        res = _gamma_expect(
            capped, i + 2, k, config,
            f"past inaccuracy expectation term {i} on {parent.name}",
        )
        total += (i + 1) / k**2 * res.value
        err += (i + 1) / k**2 * (res.abs_error_estimate + _cap_tail_mass(i + 2, k, cap))
    return MeasureResult(total, "gamma_expectation", err)


def past_inaccuracy_cdf_difference_form(
    parent: Distribution,
    spec: RecordSpec,
    config: QuadratureConfig = DEFAULT_QUADRATURE,
) -> MeasureResult:
    """Representation through cdf gaps of successive lower records."""
    _require_side(spec, "lower", "cdf-difference form")
    n, k = spec.n, spec.k
    specs = [RecordSpec("lower", j, k) for j in range(1, n + 2)]

    def integrand(x):
        x = np.asarray(x, float)
        cdfs = [np.asarray(record_cdf(parent, s, x), float) for s in specs]
        acc = np.zeros(x.shape)
        for i in range(n):
            acc += (i + 1) / k * (cdfs[i + 1] - cdfs[i])
        return acc[()]

    return _quad(integrand, parent.support, config, "cdf-difference form")


# ---------------------------------------------------------------------------
# scale/shift behavior and dispatch


def scale_shift_check(
    parent: Distribution,
    spec: RecordSpec,
    a: float,
    b: float,
    config: QuadratureConfig = DEFAULT_QUADRATURE,
) -> tuple[MeasureResult, MeasureResult]:
    """Residual record inaccuracy scales linearly under x -> a*x + b.

    Returns the measure on the transformed parent next to a times the
    measure on the original; the two must agree.  The transformed parent
    never hits a closed form, so the left side exercises the quadrature
    path even when the right side is exact.
    """
    _require_side(spec, "upper", "scale-shift check")
    transformed = affine_transform(parent, a, b)
    lhs = residual_record_inaccuracy(transformed, spec, "auto", config)
    base = residual_record_inaccuracy(parent, spec, "auto", config)
    rhs = MeasureResult(a * base.value, base.method, a * base.abs_error_estimate)
    return lhs, rhs


def compute_record_measure(
    request: RecordMeasureRequest,
    config: QuadratureConfig = DEFAULT_QUADRATURE,
) -> MeasureResult:
    if request.measure == "kerridge":
        return kerridge_record(request.parent, request.spec, request.method, config)
    if request.measure == "cri":
        return residual_record_inaccuracy(request.parent, request.spec, request.method, config)
    return past_record_inaccuracy(request.parent, request.spec, request.method, config)
