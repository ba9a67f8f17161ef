"""Adaptive one-dimensional quadrature for the integrands of this package.

Two features are tuned to the integrals that actually occur here:

* absolute-value kinks at analytically known interior abscissae, which the
  caller declares so each subinterval stays smooth, and
* algebraic endpoint weights ``(1 - t^2)^alpha`` on ``[-1, 1]``, which are
  regularized by the substitution ``t = cos(theta)`` on any subinterval that
  touches an endpoint.  The substitution turns the weight into the smooth
  factor ``sin(theta)^(2*alpha + 1)`` and keeps every evaluation strictly
  inside the open interval, so one mechanism covers every exponent, integer
  or not.

Integrands must accept numpy arrays and evaluate elementwise.  Everything in
this module is pure and re-entrant.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import ConvergenceError

__all__ = [
    "QuadratureSpec",
    "QuadratureResult",
    "DEFAULT_SPEC",
    "integrate",
    "zonal_sphere_integral",
    "zonal_weight_normalization",
]

_MIN_TOL = 1e-15
# Per-panel roundoff allowance added to the reported estimate; splitting
# cannot reduce it, so it never drives the adaptive loop.
_EST_FLOOR = 2.0 ** -48


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances, budgets and declared kink abscissae for one integral.

    ``kinks`` lists interior points, strictly increasing and inside (-1, 1),
    where the integrand is continuous but not smooth; the integration range
    is split there before any adaptive work starts.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-11
    max_subdivisions: int = 2000
    base_nodes: int = 15
    kinks: Sequence[float] = ()

    def __post_init__(self):
        object.__setattr__(self, "kinks", tuple(float(k) for k in self.kinks))
        if self.abs_tol < _MIN_TOL or self.rel_tol < _MIN_TOL:
            raise ValueError("tolerances below 1e-15 are not attainable in binary64")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be positive")
        if self.base_nodes < 2:
            raise ValueError("base_nodes must be at least 2")
        ks = self.kinks
        if any(not -1.0 < k < 1.0 for k in ks):
            raise ValueError("kinks must lie strictly inside (-1, 1)")
        if any(hi <= lo for lo, hi in zip(ks, ks[1:])):
            raise ValueError("kinks must be strictly increasing")


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    subdivisions_used: int


DEFAULT_SPEC = QuadratureSpec()


@lru_cache(maxsize=None)
def _gauss_rule(m: int):
    nodes, weights = np.polynomial.legendre.leggauss(m)
    return nodes, weights


def _cos_transformed(f, weight_exponent):
    """Integrand after t = cos(theta), including Jacobian and weight.

    The weight (1 - t^2)^alpha and the Jacobian sin(theta) combine into
    sin(theta)^(2 alpha + 1), evaluated directly from theta so no precision
    is lost where cos(theta) rounds to +-1.
    """
    power = 2.0 * weight_exponent + 1.0
    if power == 1.0:

        def g(theta):
            return f(np.cos(theta)) * np.sin(theta)

    elif power == 0.0:

        def g(theta):
            return f(np.cos(theta))

    else:

        def g(theta):
            return f(np.cos(theta)) * np.sin(theta) ** power

    return g


def _weighted(f, weight_exponent):
    if weight_exponent == 0.0:
        return f

    def g(t):
        return f(t) * ((1.0 - t) * (1.0 + t)) ** weight_exponent

    return g


def _panel(g, lo, hi, nodes, weights):
    half = 0.5 * (hi - lo)
    t = 0.5 * (lo + hi) + half * nodes
    return half * float(np.dot(weights, g(t)))


def integrate(
    f: Callable,
    a: float,
    b: float,
    spec: QuadratureSpec | None = None,
    weight_exponent: float = 0.0,
) -> QuadratureResult:
    """Integrate ``f(t) * (1 - t^2)^weight_exponent`` over ``[a, b]``.

    The interval is split at every declared kink; end pieces touching -1 or
    +1 are evaluated in the cos-substituted variable, where the weight turns
    into exact powers of sin(theta).  Each piece is then bisected
    worst-error-first, with the panel error estimated as the gap between the
    whole-panel Gauss value and the sum over its two halves (the returned
    value always uses the halves).

    Raises :class:`ConvergenceError`, carrying the best estimate, if the
    subdivision budget runs out first.
    """
    if spec is None:
        spec = DEFAULT_SPEC
    if not a < b:
        raise ValueError("integration interval must satisfy a < b")
    if weight_exponent != 0.0 and not (-1.0 <= a and b <= 1.0):
        raise ValueError("the endpoint weight is defined on [-1, 1] only")
    for k in spec.kinks:
        if not a < k < b:
            raise ValueError(f"kink {k} is not interior to [{a}, {b}]")
    nodes, weights = _gauss_rule(spec.base_nodes)

    pieces = []
    cuts = [a, *spec.kinks, b]
    for lo, hi in zip(cuts, cuts[1:]):
        if lo == -1.0:
            pieces.append((_cos_transformed(f, weight_exponent), math.acos(hi), math.pi))
        elif hi == 1.0:
            pieces.append((_cos_transformed(f, weight_exponent), 0.0, math.acos(lo)))
        else:
            pieces.append((_weighted(f, weight_exponent), lo, hi))

    tie = 0

    def make_entry(g, lo, hi, q_whole):
        nonlocal tie
        mid = 0.5 * (lo + hi)
        q_left = _panel(g, lo, mid, nodes, weights)
        q_right = _panel(g, mid, hi, nodes, weights)
        refined = q_left + q_right
        gap = abs(q_whole - refined)
        floor = _EST_FLOOR * (abs(q_left) + abs(q_right))
        tie += 1
        return [-gap, tie, lo, hi, q_left, q_right, refined, gap, floor, g]

    heap = [make_entry(g, lo, hi, _panel(g, lo, hi, nodes, weights)) for g, lo, hi in pieces]
    heapq.heapify(heap)

    splits = 0
    while True:
        total = math.fsum(e[6] for e in heap)
        gap_total = math.fsum(e[7] for e in heap)
        estimate = gap_total + math.fsum(e[8] for e in heap)
        if gap_total <= max(spec.abs_tol, spec.rel_tol * abs(total)):
            return QuadratureResult(total, estimate, splits)
        if splits >= spec.max_subdivisions:
            raise ConvergenceError(
                f"quadrature did not meet its tolerance within {spec.max_subdivisions} subdivisions",
                value=total,
                error_estimate=estimate,
            )
        _, _, lo, hi, q_left, q_right, _, _, _, g = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        heapq.heappush(heap, make_entry(g, lo, mid, q_left))
        heapq.heappush(heap, make_entry(g, mid, hi, q_right))
        splits += 1


def zonal_weight_normalization(n: int) -> float:
    """Constant c_n with c_n * integral of (1-t^2)^((n-3)/2) over [-1,1] = 1."""
    if n < 2:
        raise ValueError("dimension must be at least 2")
    return math.exp(math.lgamma(0.5 * n) - math.lgamma(0.5 * (n - 1))) / math.sqrt(math.pi)


def zonal_sphere_integral(g: Callable, n: int, spec: QuadratureSpec | None = None) -> float:
    """Normalized integral of an axially symmetric function over the sphere.

    Computes ``c_n * integral of g(t) (1-t^2)^((n-3)/2) dt`` over [-1, 1],
    normalized so that ``g == 1`` integrates to exactly 1.  For n = 2 the
    weight is singular at the endpoints; the cosine substitution inside
    :func:`integrate` absorbs it.
    """
    if n < 2:
        raise ValueError("dimension must be at least 2")
    c = zonal_weight_normalization(n)
    return c * integrate(g, -1.0, 1.0, spec, weight_exponent=0.5 * (n - 3)).value
