"""Pochhammer symbols, Gegenbauer polynomials and the Gauss hypergeometric
function, restricted to the real parameter ranges this package needs, plus
the classical identities connecting them.

All functions are pure, deterministic and safe for concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConvergenceError
from .quadrature import QuadratureSpec, integrate
from .report import CheckResult, VerificationReport

__all__ = [
    "pochhammer",
    "GegenbauerSpec",
    "gegenbauer",
    "gegenbauer_iter",
    "HypergeometricInput",
    "hyp2f1",
    "abs_kernel_coefficient",
    "gegenbauer_weighted_derivative",
    "verify_identities",
]

DEFAULT_SERIES_RTOL = 1e-13
_SERIES_BUDGET = 10_000


def pochhammer(lam: float, k: int) -> float:
    """Rising factorial lam * (lam+1) * ... * (lam+k-1), with the empty
    product equal to 1."""
    if k < 0 or k != int(k):
        raise ValueError("k must be a nonnegative integer")
    out = 1.0
    for i in range(int(k)):
        out *= lam + i
    return out


def _gegenbauer_value(lam: float, degree: int, x: float) -> float:
    # Forward three-term recurrence; stable for |x| <= 1 at the degrees used
    # here (up to a few thousand).
    if degree == 0:
        return 1.0
    c_prev = 1.0
    c = 2.0 * lam * x
    for k in range(2, degree + 1):
        c, c_prev = (2.0 * (k + lam - 1.0) * x * c - (k + 2.0 * lam - 2.0) * c_prev) / k, c
    return c


def _gegenbauer_array(lam: float, degree: int, x):
    """Same recurrence, elementwise over a numpy array of points."""
    x = np.asarray(x, dtype=float)
    if degree == 0:
        return np.ones_like(x)
    c_prev = np.ones_like(x)
    c = 2.0 * lam * x
    for k in range(2, degree + 1):
        c, c_prev = (2.0 * (k + lam - 1.0) * x * c - (k + 2.0 * lam - 2.0) * c_prev) / k, c
    return c


def gegenbauer_iter(lam: float, x: float):
    """Yield the Gegenbauer values of degree 0, 1, 2, ... at ``x``."""
    c_prev = 1.0
    yield c_prev
    c = 2.0 * lam * x
    yield c
    k = 2
    while True:
        c, c_prev = (2.0 * (k + lam - 1.0) * x * c - (k + 2.0 * lam - 2.0) * c_prev) / k, c
        yield c
        k += 1


@dataclass(frozen=True)
class GegenbauerSpec:
    """Parameter, degree and evaluation point of one Gegenbauer polynomial."""

    lam: float
    degree: int
    x: float

    def __post_init__(self):
        if self.lam <= -0.5:
            raise ValueError("parameter must exceed -1/2")
        if self.lam == 0.0:
            raise ValueError("parameter 0 degenerates; not supported")
        if self.degree < 0 or self.degree != int(self.degree):
            raise ValueError("degree must be a nonnegative integer")
        if not -1.0 <= self.x <= 1.0:
            raise ValueError("evaluation point must lie in [-1, 1]")


def gegenbauer(spec: GegenbauerSpec) -> float:
    """Evaluate the Gegenbauer polynomial described by ``spec``."""
    return _gegenbauer_value(spec.lam, int(spec.degree), spec.x)


@dataclass(frozen=True)
class HypergeometricInput:
    """Arguments of a real Gauss hypergeometric evaluation.

    The series diverges at z >= 1 and the function has poles when c is zero
    or a negative integer; both are rejected at construction.
    """

    a: float
    b: float
    c: float
    z: float

    def __post_init__(self):
        if self.c <= 0.0 and self.c == round(self.c):
            raise ValueError("pole: c must not be zero or a negative integer")
        if self.z >= 1.0:
            raise ValueError("divergent: argument must satisfy z < 1")


def _gauss_series(a, b, c, z, rel_tol):
    if z == 0.0:
        return 1.0
    term = 1.0
    terms = [term]
    running = term
    small = 0
    for k in range(_SERIES_BUDGET):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
        if term == 0.0:
            # one of the upper parameters is a nonpositive integer: polynomial case
            return math.fsum(terms)
        terms.append(term)
        running += term
        if abs(term) <= rel_tol * abs(running):
            small += 1
            if small >= 3:
                return math.fsum(terms)
        else:
            small = 0
    tail = abs(term) * abs(z) / max(1.0 - abs(z), 1e-6)
    raise ConvergenceError(
        f"hypergeometric series did not converge within {_SERIES_BUDGET} terms",
        value=math.fsum(terms),
        error_estimate=tail,
    )


def hyp2f1(inp: HypergeometricInput, rel_tol: float = DEFAULT_SERIES_RTOL) -> float:
    """Gauss hypergeometric function for real parameters and argument z < 1.

    The power series is summed directly for z in [0, 1), where all in-scope
    arguments fall and the term ratio tends to z.  Negative arguments,
    including z <= -1 where the raw series diverges, are first mapped into
    [0, 1) by the argument transformation z -> z/(z-1), under which the value
    picks up the factor (1-z)^(-b) and the upper parameter a becomes c - a.
    The series is stopped once three consecutive terms fall below ``rel_tol``
    relative to the partial sum; terms are accumulated exactly at the end.
    """
    a, b, c, z = inp.a, inp.b, inp.c, inp.z
    if z < 0.0:
        w = z / (z - 1.0)
        return (1.0 - z) ** (-b) * _gauss_series(c - a, b, c, w, rel_tol)
    return _gauss_series(a, b, c, z, rel_tol)


def abs_kernel_coefficient(lam: float, k: int, s: float, spec: QuadratureSpec | None = None) -> float:
    """Weighted moment of |x - s| against one Gegenbauer polynomial.

    Returns the integral over [-1, 1] of
    ``|x - s| * (1 - x^2)^(lam - 1/2) * C_k(x)`` for parameter ``lam``.
    Degrees k >= 2 use the closed form

        8 lam (lam+1) / (k (k-1) (k+2 lam) (k+2 lam+1))
            * (1 - s^2)^(lam + 3/2) * C_{k-2}^{lam+2}(s),

    while k = 0 and k = 1, which have no such reduction, are integrated
    directly with the kink at ``s`` declared.
    """
    if lam <= -0.5:
        raise ValueError("parameter must exceed -1/2")
    if k < 0 or k != int(k):
        raise ValueError("degree must be a nonnegative integer")
    if not -1.0 < s < 1.0:
        raise ValueError("s must lie strictly inside (-1, 1)")
    k = int(k)
    if k >= 2:
        coef = 8.0 * lam * (lam + 1.0) / (k * (k - 1.0) * (k + 2.0 * lam) * (k + 2.0 * lam + 1.0))
        return coef * (1.0 - s * s) ** (lam + 1.5) * _gegenbauer_value(lam + 2.0, k - 2, s)

    if k == 0:

        def f(x):
            return np.abs(x - s)

    else:

        def f(x):
            return np.abs(x - s) * (2.0 * lam * x)

    qspec = QuadratureSpec(kinks=(s,)) if spec is None else replace(spec, kinks=(s,))
    return integrate(f, -1.0, 1.0, qspec, weight_exponent=lam - 0.5).value


def gegenbauer_weighted_derivative(lam: float, k: int, x: float) -> float:
    """d/dx of (1 - x^2)^(lam - 1/2) * C_k(x) for parameter ``lam`` != 1.

    Evaluated through the lowered-parameter identity

        -(k+1)(k + 2 lam - 1) / (2 (lam - 1))
            * (1 - x^2)^(lam - 3/2) * C_{k+1}^{lam-1}(x),

    whose derivation excludes lam = 1.
    """
    if lam == 1.0:
        raise ValueError("lam = 1 is excluded")
    if k < 0 or k != int(k):
        raise ValueError("degree must be a nonnegative integer")
    if not -1.0 < x < 1.0:
        raise ValueError("x must lie strictly inside (-1, 1)")
    lead = -(k + 1.0) * (k + 2.0 * lam - 1.0) / (2.0 * (lam - 1.0))
    return lead * (1.0 - x * x) ** (lam - 1.5) * _gegenbauer_value(lam - 1.0, int(k) + 1, x)


# ---------------------------------------------------------------------------
# identity sweeps


def _truncation_degree(lam: float, z: float, tol: float) -> int:
    # Terms are bounded by C_k(1) z^k = (2 lam)_k / k! z^k, whose successive
    # ratio z (k + 2 lam)/(k + 1) decreases for lam >= 1/2; step until the
    # geometric majorant of the tail drops below tol.
    if lam < 0.5 or not 0.0 < z < 1.0:
        raise ValueError("tail bound assumes lam >= 1/2 and 0 < z < 1")
    t = 1.0
    k = 0
    while True:
        ratio = z * (k + 2.0 * lam) / (k + 1.0)
        if ratio < 1.0 and t * ratio / (1.0 - ratio) < tol:
            return k
        t *= ratio
        k += 1
        if k > 100_000:
            raise RuntimeError("tail bound did not close")


def _generating_relation_check() -> CheckResult:
    worst = 0.0
    at = ""
    for lam in (0.5, 1.0, 1.5, 2.5):
        for x in np.linspace(-0.9, 0.9, 10):
            for z in (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7):
                kmax = _truncation_degree(lam, z, 1e-12)
                it = gegenbauer_iter(lam, float(x))
                acc = []
                pw = 1.0
                for _ in range(kmax + 1):
                    acc.append(next(it) * pw)
                    pw *= z
                partial = math.fsum(acc)
                closed = (1.0 - 2.0 * x * z + z * z) ** (-lam)
                err = abs(partial - closed)
                if err > worst:
                    worst, at = err, f"lam={lam},x={x:.2f},z={z}"
    return CheckResult("generating_relation", worst <= 1e-10, worst, at)


def _rainville_check(n: int) -> CheckResult:
    # The closed side grows like (1 - x z)^(1-n), so the absolute 1e-9
    # comparison is only meaningful for moderate n; clamp the parameter
    # dimension (the identity itself is parameter-independent).
    n = min(max(n, 4), 8)
    nu = float(n - 1)
    lam = 0.5 * n
    worst = 0.0
    at = ""
    for x in np.linspace(-0.95, 0.95, 8):
        for z in (0.0, 0.2, 0.4, 0.6, 0.8):
            acc = []
            it = gegenbauer_iter(lam, float(x))
            ratio = 1.0
            pw = 1.0
            bound = 1.0  # majorant (nu)_k / k! z^k of the current term
            k = 0
            while True:
                acc.append(ratio * next(it) * pw)
                next_bound = bound * z * (nu + k) / (k + 1.0)
                r_next = z * (nu + k + 1.0) / (k + 2.0)
                if z == 0.0 or (r_next < 0.95 and next_bound / (1.0 - r_next) < 1e-13) or k > 4000:
                    break
                ratio *= (nu + k) / (2.0 * lam + k)
                pw *= z
                bound = next_bound
                k += 1
            partial = math.fsum(acc)
            if z == 0.0:
                closed = 1.0
            else:
                arg = z * z * (x * x - 1.0) / (1.0 - x * z) ** 2
                closed = (1.0 - x * z) ** (-nu) * hyp2f1(
                    HypergeometricInput(0.5 * nu, 0.5 * (nu + 1.0), lam + 0.5, arg)
                )
            err = abs(partial - closed)
            if err > worst:
                worst, at = err, f"n={n},x={x:.2f},z={z}"
    return CheckResult("rainville_expansion", worst <= 1e-9, worst, at)


def _pfaff_check(n: int) -> CheckResult:
    params = [(1.0, 0.5 * n, 0.5 * (n + 1.0)), (0.5, 1.5, 2.5), (2.0, 1.0, 3.5)]
    worst = 0.0
    at = ""
    for a, b, c in params:
        for z in np.linspace(0.0, 0.9, 10):
            lhs = hyp2f1(HypergeometricInput(a, b, c, float(z)))
            if z == 0.0:
                rhs = lhs
            else:
                rhs = (1.0 - z) ** (-b) * hyp2f1(HypergeometricInput(c - a, b, c, float(z / (z - 1.0))))
            err = abs(lhs - rhs) / abs(lhs)
            if err > worst:
                worst, at = err, f"a={a},b={b},c={c},z={z:.2f}"
    return CheckResult("pfaff_transformation", worst <= 1e-12, worst, at)


def _contiguous_check(n: int) -> CheckResult:
    a, b, c = 1.0, 0.5 * n, 0.5 * (n + 1.0)
    worst = 0.0
    at = ""
    tight = 1e-15  # the two sides cancel near z = 1, so sum well past the check tolerance
    for z in np.linspace(0.05, 0.9, 9):
        z = float(z)
        lhs = (c - b) * z * hyp2f1(HypergeometricInput(a, b, c + 1.0, z), tight)
        rhs = c * hyp2f1(HypergeometricInput(a - 1.0, b, c, z), tight) - c * (1.0 - z) * hyp2f1(
            HypergeometricInput(a, b, c, z), tight
        )
        err = abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1.0)
        if err > worst:
            worst, at = err, f"z={z:.2f}"
    return CheckResult("contiguous_relation", worst <= 1e-12, worst, at)


def _kernel_moment_check(n: int) -> CheckResult:
    lams = {0.5, 1.5, 0.5 * (n - 2)}
    worst = 0.0
    at = ""
    for lam in sorted(lams):
        if lam <= -0.5 or lam == 0.0:
            continue
        for k in range(2, 11):
            for s in np.linspace(-0.8, 0.8, 5):
                s = float(s)
                closed = abs_kernel_coefficient(lam, k, s)

                def f(x, _k=k, _lam=lam, _s=s):
                    return np.abs(x - _s) * _gegenbauer_array(_lam, _k, x)

                brute = integrate(
                    f, -1.0, 1.0, QuadratureSpec(kinks=(s,)), weight_exponent=lam - 0.5
                ).value
                err = abs(closed - brute)
                if err > worst:
                    worst, at = err, f"lam={lam},k={k},s={s:.2f}"
    return CheckResult("kernel_moment_closed_form", worst <= 1e-9, worst, at)


def _weighted_derivative_check(n: int) -> CheckResult:
    lams = {0.5, 2.0, 3.0, 0.5 * (n - 2)}
    worst = 0.0
    at = ""
    h = 1e-5
    for lam in sorted(lams):
        if lam == 1.0 or lam <= -0.5 or lam == 0.0:
            continue
        for k in range(0, 6):
            for x in np.linspace(-0.8, 0.8, 5):
                x = float(x)
                val = gegenbauer_weighted_derivative(lam, k, x)

                def wfun(t):
                    return (1.0 - t * t) ** (lam - 0.5) * _gegenbauer_value(lam, k, t)

                fd = (wfun(x + h) - wfun(x - h)) / (2.0 * h)
                err = abs(val - fd) / max(abs(val), abs(fd), 1e-12)
                if err > worst:
                    worst, at = err, f"lam={lam},k={k},x={x:.2f}"
    return CheckResult("weighted_derivative_identity", worst <= 1e-6, worst, at)


def _hyp_derivative_check(n: int) -> CheckResult:
    params = [(1.0, 0.5 * n, 0.5 * (n + 1.0)), (2.0, 1.5, 3.0)]
    worst = 0.0
    at = ""
    h = 1e-6
    for a, b, c in params:
        for z in (0.1, 0.25, 0.4, 0.55, 0.7):

            def lhs_fun(t):
                return t ** (c - a) * (1.0 - t) ** (a + b - c) * hyp2f1(HypergeometricInput(a, b, c, t))

            fd = (lhs_fun(z + h) - lhs_fun(z - h)) / (2.0 * h)
            rhs = (
                (c - a)
                * z ** (c - a - 1.0)
                * (1.0 - z) ** (a + b - c - 1.0)
                * hyp2f1(HypergeometricInput(a - 1.0, b, c, z))
            )
            err = abs(fd - rhs) / max(abs(rhs), 1e-12)
            if err > worst:
                worst, at = err, f"a={a},b={b},c={c},z={z}"
    return CheckResult("hypergeometric_derivative_identity", worst <= 1e-6, worst, at)


def verify_identities(n: int = 5) -> VerificationReport:
    """Run the classical-identity sweeps at dimension ``n`` where one enters."""
    if n < 3:
        raise ValueError("identity sweeps need n >= 3")
    checks = (
        _generating_relation_check(),
        _rainville_check(n),
        _pfaff_check(n),
        _contiguous_check(n),
        _kernel_moment_check(n),
        _weighted_derivative_check(n),
        _hyp_derivative_check(n),
    )
    return VerificationReport("identities", n, checks)
