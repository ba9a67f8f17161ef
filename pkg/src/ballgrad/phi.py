"""The radial profile behind the sharp gradient bound and its derivatives,
each computable by independent routes, plus the grid verification sweeps
for monotonicity, concavity and the auxiliary inequality.

Throughout, ``n`` is the ambient dimension and ``rho`` the radial variable
in [0, 1].  The profile is

    Phi(rho) = integral over [-1, 1] of
        |t - (n-2) rho / n| (1 - t^2)^((n-3)/2) (1 - 2 t rho + rho^2)^(-(n-2)/2) dt,

with Phi(0) = 2/(n-1).  For n = 3 it has the elementary closed form
implemented in :func:`phi3_closed`; for n = 2 the integrand loses its rho
dependence and Phi is the constant 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Literal

import numpy as np

from . import specfun
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate
from .report import CheckResult, VerificationReport
from .specfun import HypergeometricInput, hyp2f1

__all__ = [
    "PhiEvaluation",
    "phi_quad",
    "phi_series",
    "phi3_closed",
    "varphi",
    "phi_second_closed",
    "phi_second_series",
    "phi_second_fd",
    "psi",
    "psi_prime_closed",
    "psi_prime_quadratic",
    "verify_monotone",
    "verify_concavity",
    "verify_technical",
    "SECOND_CLOSED_RHO_MIN",
]

Method = Literal["quad", "series", "closed3", "second_closed", "second_series", "second_fd"]

# Below this radius the closed second-derivative form divides a vanishing
# brace by rho^2; the series route is exact there instead.
SECOND_CLOSED_RHO_MIN = 1e-3

_ADAPTIVE_CAP = 3000


@dataclass(frozen=True)
class PhiEvaluation:
    """One evaluation of the profile or a derivative by one route."""

    n: int
    rho: float
    value: float
    method: Method
    error_estimate: float


def _check_dim(n, minimum):
    if n != int(n) or n < minimum:
        raise ValueError(f"dimension must be an integer >= {minimum}")
    return int(n)


def kink_abscissa(n: int, rho: float) -> float:
    """Interior point where the defining integrand loses smoothness."""
    return (n - 2.0) * rho / n


def phi_quad(n: int, rho: float, spec: QuadratureSpec | None = None) -> PhiEvaluation:
    """Profile value by adaptive quadrature of the defining integral.

    The kink abscissa is declared to the quadrature, and the endpoint pieces
    run in the cosine-substituted variable, so rho = 1 (where the kernel
    factor has an integrable endpoint singularity) is allowed.
    """
    n = _check_dim(n, 2)
    if not 0.0 <= rho <= 1.0:
        raise ValueError("rho must lie in [0, 1]")
    s = kink_abscissa(n, rho)
    d_exp = 0.5 * (n - 2)

    if n == 2:

        def f(t):
            return np.abs(t)

    else:

        def f(t):
            return np.abs(t - s) * (1.0 - 2.0 * t * rho + rho * rho) ** (-d_exp)

    qspec = replace(spec if spec is not None else DEFAULT_SPEC, kinks=(s,))
    res = integrate(f, -1.0, 1.0, qspec, weight_exponent=0.5 * (n - 3))
    return PhiEvaluation(n, rho, res.value, "quad", res.error_estimate)


def phi_series(n: int, rho: float, K: int | None = None) -> PhiEvaluation:
    """Profile value by the Gegenbauer expansion in powers of rho.

    The degree-0 and degree-1 moments are kept as explicit weighted
    integrals (there is no closed reduction for them); the k >= 2 tail uses
    the closed-form coefficients

        2 n (n-2) / (k (k-1) (k+n-2) (k+n-1))
            * (1 - s^2)^((n+1)/2) * C_{k-2}^{(n+2)/2}(s) * rho^k

    with s = (n-2) rho / n.  With ``K`` unset the sum stops adaptively; the
    reported error estimate is the first omitted term.
    """
    n = _check_dim(n, 3)
    if not 0.0 <= rho < 1.0:
        raise ValueError("the expansion requires rho in [0, 1)")
    s = kink_abscissa(n, rho)
    lam = 0.5 * (n - 2)
    head = specfun.abs_kernel_coefficient(lam, 0, s) + specfun.abs_kernel_coefficient(lam, 1, s) * rho

    wpow = (1.0 - s * s) ** (0.5 * (n + 1))
    it = specfun.gegenbauer_iter(0.5 * (n + 2), s)
    cap = K if K is not None else _ADAPTIVE_CAP
    adaptive = K is None

    terms = [head]
    running = head
    pw = rho * rho
    small = 0
    omitted = 0.0
    k = 2
    while True:
        coef = 2.0 * n * (n - 2.0) / (k * (k - 1.0) * (k + n - 2.0) * (k + n - 1.0))
        term = coef * wpow * next(it) * pw
        if k > cap or (adaptive and small >= 3):
            omitted = abs(term)
            break
        terms.append(term)
        running += term
        if adaptive:
            small = small + 1 if abs(term) <= 1e-12 * abs(running) else 0
        pw *= rho
        k += 1
    return PhiEvaluation(n, rho, math.fsum(terms), "series", omitted)


def phi3_closed(rho: float) -> float:
    """Elementary closed form of the profile in dimension three.

    Returns (2/3) [ (1 + rho^2/3)^(3/2) - 1 + rho^2 ] / rho^2, with the even
    Taylor expansion about 0 below rho = 1e-4 to avoid 0/0.  The numerator
    is assembled through expm1/log1p so small rho keeps full precision.
    """
    if not 0.0 <= rho <= 1.0:
        raise ValueError("rho must lie in [0, 1]")
    r2 = rho * rho
    if rho < 1e-4:
        return 1.0 + r2 / 36.0
    num = math.expm1(1.5 * math.log1p(r2 / 3.0)) + r2
    return (2.0 / 3.0) * num / r2


def varphi(n: int, t: float) -> float:
    """Substitution t (1 - (n-2)^2 t / n^2) / (1 - (n-4) t / n) on [0, 1].

    Increases from 0 to (n-1)/n, which is the largest hypergeometric
    argument used anywhere in the package.
    """
    n = _check_dim(n, 3)
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0, 1]")
    return t * (1.0 - (n - 2.0) ** 2 * t / (n * n)) / (1.0 - (n - 4.0) * t / n)


def phi_second_closed(n: int, rho: float, rel_tol: float = specfun.DEFAULT_SERIES_RTOL) -> PhiEvaluation:
    """Second derivative of the profile by the hypergeometric closed form.

    Valid for n >= 4 and rho above :data:`SECOND_CLOSED_RHO_MIN`; below that
    the 1/rho^2 prefactor against a vanishing brace loses too many digits
    and :func:`phi_second_series` is exact instead.
    """
    n = _check_dim(n, 4)
    if not SECOND_CLOSED_RHO_MIN < rho <= 1.0:
        raise ValueError(
            f"closed form needs rho in ({SECOND_CLOSED_RHO_MIN}, 1]; use phi_second_series below"
        )
    r2 = rho * rho
    w = 1.0 - (n - 2.0) ** 2 * r2 / (n * n)
    aa = 1.0 - (n - 4.0) * r2 / n
    z = r2 * w / aa
    f_val = hyp2f1(HypergeometricInput(1.0, 0.5 * n, 0.5 * (n + 1), z), rel_tol)
    term1 = (1.0 - (n - 2.0) * (n - 3.0) * r2 / (n * n)) * aa
    term2 = (
        (1.0 - (n - 2.0) * (n - 3.0) * r2 / (n * (n - 1.0)))
        * w
        * (1.0 - (n - 2.0) * r2 / n)
        * f_val
    )
    prefactor = 2.0 * (n - 2.0) / r2 * w ** (0.5 * (n - 3)) * aa ** (-0.5 * n)
    value = prefactor * (term1 - term2)
    est = abs(prefactor) * (rel_tol * abs(term2) + 1e-16 * (abs(term1) + abs(term2)))
    return PhiEvaluation(n, rho, value, "second_closed", est)


def phi_second_series(n: int, rho: float, K: int | None = None) -> PhiEvaluation:
    """Second derivative of the profile by its three-part Gegenbauer series.

    The three series run over parameters (n-2)/2, n/2 and (n+2)/2 with
    prefactors 2(n-2)^2/n^2, -4(n-2)^2/(n(n-1)) and 2(n-2)/(n+1), degree
    ratios 1, (n-1)/(n+k-1) and n(n+1)/((n+k)(n+k+1)), and powers of
    w = 1 - s^2 with exponents (n-3)/2, (n-1)/2 and (n+1)/2.  At rho = 0
    only the degree-0 terms survive, which makes this the exact route near
    the origin.
    """
    n = _check_dim(n, 3)
    if not 0.0 <= rho < 1.0:
        raise ValueError("the expansion requires rho in [0, 1)")
    s = kink_abscissa(n, rho)
    w = 1.0 - s * s
    a1 = 2.0 * (n - 2.0) ** 2 / (n * n) * w ** (0.5 * (n - 3))
    a2 = -4.0 * (n - 2.0) ** 2 / (n * (n - 1.0)) * w ** (0.5 * (n - 1))
    a3 = 2.0 * (n - 2.0) / (n + 1.0) * w ** (0.5 * (n + 1))
    it1 = specfun.gegenbauer_iter(0.5 * (n - 2), s)
    it2 = specfun.gegenbauer_iter(0.5 * n, s)
    it3 = specfun.gegenbauer_iter(0.5 * (n + 2), s)

    cap = K if K is not None else _ADAPTIVE_CAP
    adaptive = K is None
    terms = []
    running = 0.0
    pw = 1.0
    small = 0
    omitted = 0.0
    k = 0
    while True:
        term = (
            a1 * next(it1)
            + a2 * (n - 1.0) / (n + k - 1.0) * next(it2)
            + a3 * n * (n + 1.0) / ((n + k) * (n + k + 1.0)) * next(it3)
        ) * pw
        if k > cap or (adaptive and small >= 3) or (k >= 1 and pw == 0.0):
            omitted = abs(term)
            break
        terms.append(term)
        running += term
        if adaptive:
            small = small + 1 if abs(term) <= 1e-12 * abs(running) else 0
        pw *= rho
        k += 1
    return PhiEvaluation(n, rho, math.fsum(terms), "second_series", omitted)


def phi_second_fd(n: int, rho: float, step: float = 1e-3, spec: QuadratureSpec | None = None) -> PhiEvaluation:
    """Second derivative by a Richardson-extrapolated central difference of
    the quadrature route.

    Uses the symmetric second difference at widths ``step`` and ``step/2``
    combined as (4 D(h/2) - D(h)) / 3.  The profile is even in rho, so
    points reflected below the origin reuse the positive-radius value.  The
    quadrature runs at the binary64 floor, since the difference quotient
    amplifies per-evaluation noise by 4/h^2.
    """
    n = _check_dim(n, 2)
    if not 0.0 <= rho <= 1.0 - step:
        raise ValueError("need rho + step <= 1")
    tight = spec if spec is not None else QuadratureSpec(abs_tol=1e-15, rel_tol=1e-15)

    def value(r):
        return phi_quad(n, abs(r), tight).value

    center = value(rho)

    def second_difference(h):
        return (value(rho + h) - 2.0 * center + value(rho - h)) / (h * h)

    d_h = second_difference(step)
    d_h2 = second_difference(0.5 * step)
    val = (4.0 * d_h2 - d_h) / 3.0
    noise = 16.0 * 1e-15 / (step * step)
    return PhiEvaluation(n, rho, val, "second_fd", max(abs(d_h - d_h2) / 3.0, noise))


def _phi_second_best(n, rho):
    """Closed form where it is well conditioned, series otherwise."""
    if n >= 4 and rho > SECOND_CLOSED_RHO_MIN:
        return phi_second_closed(n, rho).value
    return phi_second_series(n, rho).value


def psi(n: int, t: float, rel_tol: float = specfun.DEFAULT_SERIES_RTOL) -> float:
    """Difference whose sign settles the auxiliary inequality.

    Vanishes at t = 0; positive on (0, 1) for n >= 4 and negative for n = 3,
    mirroring the reversal of the inequality in dimension three.
    """
    n = _check_dim(n, 3)
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0, 1]")
    ph = varphi(n, t)
    f_val = hyp2f1(HypergeometricInput(1.0, 0.5 * n, 0.5 * (n + 1), ph), rel_tol)
    first = ph ** (0.5 * (n - 1)) * math.sqrt(1.0 - ph) * f_val
    num = (
        t ** (0.5 * (n - 1))
        * (1.0 - (n - 2.0) ** 2 * t / (n * n)) ** (0.5 * (n - 3))
        * (1.0 - (n - 2.0) * (n - 3.0) * t / (n * n))
    )
    den = (1.0 - (n - 4.0) * t / n) ** (0.5 * (n - 2)) * (
        1.0 - (n - 2.0) * (n - 3.0) * t / (n * (n - 1.0))
    )
    return first - num / den


def psi_prime_quadratic(n: int, t: float) -> float:
    """Quadratic factor of the closed-form derivative of :func:`psi`.

    Constant 128 for n = 4 (the linear and quadratic coefficients carry a
    factor n - 4); positive on [0, 1] for every n >= 4.
    """
    n = _check_dim(n, 3)
    return (
        n**3 * (n * n - 3.0 * n - 2.0)
        - 2.0 * n * (n - 2.0) * (n - 4.0) * (n * n - 3.0 * n + 1.0) * t
        + (n - 2.0) ** 2 * (n - 3.0) * (n - 4.0) ** 2 * t * t
    )


def psi_prime_closed(n: int, t: float) -> float:
    """Closed form of the derivative of :func:`psi` for n >= 4."""
    n = _check_dim(n, 4)
    if not 0.0 < t <= 1.0:
        raise ValueError("t must lie in (0, 1]")
    pref = t ** (0.5 * (n - 1)) / (2.0 * n**5 * (n - 1.0))
    return (
        pref
        * (1.0 - (n - 4.0) * t / n) ** (-0.5 * n)
        * (1.0 - (n - 2.0) ** 2 * t / (n * n)) ** (0.5 * (n - 5))
        * (1.0 - (n - 2.0) * (n - 3.0) * t / (n * (n - 1.0))) ** (-2.0)
        * psi_prime_quadratic(n, t)
    )


# ---------------------------------------------------------------------------
# verification sweeps


def _technical_rhs(n, t):
    return ((1.0 - (n - 4.0) * t / n) * (1.0 - (n - 2.0) * (n - 3.0) * t / (n * n))) / (
        (1.0 - (n - 2.0) * t / n)
        * (1.0 - (n - 2.0) ** 2 * t / (n * n))
        * (1.0 - (n - 2.0) * (n - 3.0) * t / (n * (n - 1.0)))
    )


def technical_gap(n: int, t: float) -> float:
    """Hypergeometric side minus rational side of the auxiliary inequality.

    Both sides equal 1 at t = 0; the gap is positive on (0, 1] for n >= 4
    and negative for n = 3.
    """
    n = _check_dim(n, 3)
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0, 1]")
    lhs = hyp2f1(HypergeometricInput(1.0, 0.5 * n, 0.5 * (n + 1), varphi(n, t)))
    return lhs - _technical_rhs(n, t)


def verify_monotone(n: int, grid_size: int = 1001, spec: QuadratureSpec | None = None) -> VerificationReport:
    """Monotonicity sweep of the profile on a uniform grid of [0, 1].

    Asserts strict decrease with maximum 2/(n-1) at the origin for n >= 4,
    strict increase with the maximum at rho = 1 for n = 3, and a vanishing
    one-sided derivative at the origin.  Strictness carries a 1e-12 margin
    to stay clear of float noise.
    """
    n = _check_dim(n, 3)
    if grid_size < 3:
        raise ValueError("grid_size must be at least 3")
    grid = np.linspace(0.0, 1.0, grid_size)
    values = [phi_quad(n, float(r), spec).value for r in grid]

    checks = []

    err0 = abs(values[0] - 2.0 / (n - 1.0))
    checks.append(CheckResult("value_at_origin", err0 <= 1e-10, err0, "rho=0"))

    diffs = np.diff(values)
    if n >= 4:
        worst = float(diffs.max())
        idx = int(diffs.argmax())
        checks.append(
            CheckResult("strictly_decreasing", worst <= -1e-12, worst, f"rho={grid[idx + 1]:.6f}")
        )
        max_err = abs(max(values) - 2.0 / (n - 1.0))
        checks.append(CheckResult("maximum_at_origin", max_err <= 1e-10, max_err, "rho=0"))
    else:
        worst = float(diffs.min())
        idx = int(diffs.argmin())
        checks.append(
            CheckResult("strictly_increasing", worst >= 1e-12, worst, f"rho={grid[idx + 1]:.6f}")
        )
        max_err = abs(max(values) - phi3_closed(1.0))
        checks.append(CheckResult("maximum_at_one", max_err <= 1e-10, max_err, "rho=1"))

    # The profile is even, so the symmetric difference about the origin is
    # identically zero; the one-sided quotient at delta is the honest probe
    # and converges to the derivative at rate delta.
    delta = 1e-6
    tight = QuadratureSpec(abs_tol=1e-15, rel_tol=1e-15)
    slope = abs(phi_quad(n, delta, tight).value - phi_quad(n, 0.0, tight).value) / delta
    checks.append(CheckResult("derivative_zero_at_origin", slope <= 1e-6, slope, "rho=0"))

    return VerificationReport("monotone", n, tuple(checks))


def verify_concavity(n: int, grid_size: int = 1001) -> VerificationReport:
    """Concavity sweep of the profile on an interior grid of (0, 1).

    For n >= 4 the second derivative must stay below -1e-12 everywhere and
    the closed, series and finite-difference routes must agree; for n = 3
    the second derivative is positive, recorded as an expected failure.
    """
    n = _check_dim(n, 3)
    if grid_size < 3:
        raise ValueError("grid_size must be at least 3")
    grid = (np.arange(1, grid_size + 1)) / (grid_size + 1.0)
    values = [_phi_second_best(n, float(r)) for r in grid]

    checks = []
    worst = max(values)
    idx = int(np.argmax(values))
    checks.append(
        CheckResult(
            "second_derivative_negative",
            worst <= -1e-12,
            float(worst),
            f"rho={grid[idx]:.6f}",
            expected=(n == 3),
        )
    )

    agree_grid = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]
    worst_rel = 0.0
    at = ""
    for r in agree_grid:
        series = phi_second_series(n, r).value
        fd = phi_second_fd(n, r).value
        routes = [series, fd]
        if n >= 4:
            routes.append(phi_second_closed(n, r).value)
        scale = max(abs(v) for v in routes)
        rel = (max(routes) - min(routes)) / scale
        if rel > worst_rel:
            worst_rel, at = rel, f"rho={r}"
    checks.append(CheckResult("route_agreement", worst_rel <= 1e-6, worst_rel, at))

    return VerificationReport("concavity", n, tuple(checks))


def verify_technical(n: int, grid_size: int = 1001) -> VerificationReport:
    """Sweep of the auxiliary inequality on a uniform grid of [0, 1].

    Both sides coincide at t = 0, so strictness is asserted on the positive
    grid points and equality to 1e-12 at the origin.  For n >= 4 the gap,
    the difference :func:`psi` and the quadratic factor must all be
    positive; for n = 3 the gap has the opposite sign.
    """
    n = _check_dim(n, 3)
    if grid_size < 3:
        raise ValueError("grid_size must be at least 3")
    grid = np.linspace(0.0, 1.0, grid_size)
    gaps = [technical_gap(n, float(t)) for t in grid]

    checks = []
    at0 = abs(gaps[0])
    checks.append(CheckResult("sides_equal_at_origin", at0 <= 1e-12, at0, "t=0"))

    interior = gaps[1:]
    if n >= 4:
        worst = min(interior)
        idx = 1 + int(np.argmin(interior))
        checks.append(
            CheckResult("gap_positive", worst > 0.0, float(worst), f"t={grid[idx]:.6f}")
        )
        psis = [psi(n, float(t)) for t in grid[1:]]
        worst_psi = min(psis)
        idxp = 1 + int(np.argmin(psis))
        checks.append(
            CheckResult("psi_positive", worst_psi > 0.0, float(worst_psi), f"t={grid[idxp]:.6f}")
        )
        quads = [psi_prime_quadratic(n, float(t)) for t in grid]
        worst_q = min(quads)
        idxq = int(np.argmin(quads))
        checks.append(
            CheckResult("quadratic_positive", worst_q > 0.0, float(worst_q), f"t={grid[idxq]:.6f}")
        )
    else:
        worst = max(interior)
        idx = 1 + int(np.argmax(interior))
        checks.append(
            CheckResult("gap_reversed", worst < 0.0, float(worst), f"t={grid[idx]:.6f}")
        )

    psi0 = abs(psi(n, 0.0))
    checks.append(CheckResult("psi_zero_at_origin", psi0 <= 1e-12, psi0, "t=0"))

    return VerificationReport("technical", n, tuple(checks))
