"""Strictly increasing singular functions on [0,1] with certified error bounds.

Three families are supported:

* ``salem``     -- the self-affine function with contraction ratio ``lam``,
                   satisfying L(x) = lam*L(2x) on [0,1/2] and
                   L(x) = lam + (1-lam)*L(2x-1) on [1/2,1].  Strictly
                   increasing, surjective, singular for lam != 1/2.
* ``minkowski`` -- the question-mark function, evaluated from the continued
                   fraction of x (alternating dyadic series).
* ``cantor``    -- the devil's staircase.  Monotone and singular but NOT
                   strictly increasing; kept as a negative control.

All evaluations truncate at a finite ``depth`` and return a rigorous
truncation bound alongside the value.  Inputs are binary64 floats; digit
extraction uses the float's exact dyadic expansion, so it is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError, PrecisionError

SALEM = "salem"
MINKOWSKI = "minkowski"
CANTOR = "cantor"
KINDS = (SALEM, MINKOWSKI, CANTOR)

#: continued-fraction partial quotients are clamped here so every
#: 2**(-sum a_i) term stays representable
_MAX_CF_QUOTIENT = 62


@dataclass(frozen=True)
class SingularFunctionSpec:
    """Which singular function to use and how deep to evaluate it.

    ``lam`` is only meaningful for the salem kind.  lam = 1/2 collapses the
    recursion to the identity, which is not singular; it is rejected unless
    ``allow_non_singular`` is set (test fixtures use that escape hatch).
    """

    kind: str = SALEM
    lam: float = 0.25
    depth: int = 52
    allow_non_singular: bool = False

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ConfigurationError(f"unknown kind {self.kind!r}, expected one of {KINDS}")
        if not 1 <= self.depth <= 63:
            raise ConfigurationError(f"depth must be in [1, 63], got {self.depth}")
        if self.kind == SALEM:
            if not 0.0 < self.lam < 1.0:
                raise ConfigurationError(f"salem ratio must lie in (0,1), got {self.lam}")
            if self.lam == 0.5 and not self.allow_non_singular:
                raise ConfigurationError(
                    "lam = 1/2 gives the identity, which is not singular; "
                    "pass allow_non_singular=True for fixture use"
                )

    @property
    def strictly_increasing(self) -> bool:
        return self.kind != CANTOR

    @property
    def error_bound(self) -> float:
        """Worst-case truncation bound of ``evaluate`` over the whole domain."""
        if self.kind == SALEM:
            return max(self.lam, 1.0 - self.lam) ** self.depth
        if self.kind == MINKOWSKI:
            return 2.0 ** (1 - self.depth)
        return 2.0 ** (-self.depth)


@dataclass(frozen=True)
class SingularSetProbe:
    """Finite surrogate for the full-measure set where the derivative vanishes.

    A point belongs to the probed set iff its dyadic slope at resolution
    ``depth`` falls below ``eps``.  Membership is monotone in eps: a larger
    threshold accepts a superset of points.
    """

    depth: int = 40
    eps: float = 0.01

    def __post_init__(self) -> None:
        if self.depth < 1:
            raise ConfigurationError(f"probe depth must be >= 1, got {self.depth}")
        if not self.eps > 0.0:
            raise ConfigurationError(f"probe eps must be positive, got {self.eps}")


def _check_unit_interval(x: float) -> None:
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0,1], got {x}")


def _binary_digits(x: float, depth: int) -> list[int]:
    """First ``depth`` binary digits of x in [0,1).  Exact for binary64."""
    digits = []
    t = x
    for _ in range(depth):
        t *= 2.0  # exact: power-of-two scaling
        if t >= 1.0:
            digits.append(1)
            t -= 1.0  # exact by Sterbenz for t in [1,2)
        else:
            digits.append(0)
    return digits


def _eval_salem(x: float, lam: float, depth: int) -> tuple[float, float]:
    v = 0.0
    s = 1.0
    t = x
    for _ in range(depth):
        t *= 2.0
        if t >= 1.0:
            t -= 1.0
            v += s * lam
            s *= 1.0 - lam
        else:
            s *= lam
    return v, s


def _continued_fraction(x: float, max_terms: int) -> tuple[list[int], bool, bool]:
    """Partial quotients of x in (0,1), from its exact rational value.

    Returns (quotients, terminated, clamped).  Quotients above the
    representability cap are clamped, which perturbs the value by less
    than 2**-61.
    """
    p, q = x.as_integer_ratio()
    quotients = []
    clamped = False
    # x = p/q with 0 < p < q; Euclid on (q, p) yields [a1, a2, ...]
    num, den = q, p
    while den > 0 and len(quotients) < max_terms:
        a, num = divmod(num, den)
        num, den = den, num
        if a > _MAX_CF_QUOTIENT:
            a = _MAX_CF_QUOTIENT
            clamped = True
        quotients.append(a)
    return quotients, den == 0, clamped


def _eval_minkowski(x: float, depth: int) -> tuple[float, float]:
    quotients, terminated, clamped = _continued_fraction(x, depth)
    v = 0.0
    exponent = 1.0
    sign = 1.0
    for a in quotients:
        exponent -= a
        v += sign * 2.0**exponent
        sign = -sign
    err = 0.0 if terminated else 2.0 ** (1 - len(quotients))
    if clamped:
        err = max(err, 2.0**-61)
    return v, err


def _eval_cantor(x: float, depth: int) -> tuple[float, float]:
    p, q = x.as_integer_ratio()
    v = 0.0
    place = 1.0
    for _ in range(depth):
        p *= 3
        digit, p = divmod(p, q)
        place *= 0.5
        if digit == 1:
            # constant on the excised cylinder from here on: exact
            return v + place, 0.0
        if digit == 2:
            v += place
    return v, place


def evaluate(spec: SingularFunctionSpec, x: float) -> tuple[float, float]:
    """Evaluate f(x), returning (value, truncation bound).

    The exact function value lies within the bound of the returned value.
    The endpoints are exact: evaluate(0) = 0 and evaluate(1) = 1.
    """
    _check_unit_interval(x)
    if x == 0.0:
        return 0.0, 0.0
    if x == 1.0:
        return 1.0, 0.0
    if spec.kind == SALEM:
        return _eval_salem(x, spec.lam, spec.depth)
    if spec.kind == MINKOWSKI:
        return _eval_minkowski(x, spec.depth)
    return _eval_cantor(x, spec.depth)


def evaluate_many(spec: SingularFunctionSpec, xs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised ``evaluate`` over an array of coordinates."""
    xs = np.asarray(xs, dtype=np.float64)
    if xs.size and (xs.min() < 0.0 or xs.max() > 1.0):
        raise DomainError("coordinates must lie in [0,1]")
    if spec.kind != SALEM:
        pairs = [evaluate(spec, float(x)) for x in xs.ravel()]
        v = np.array([p[0] for p in pairs]).reshape(xs.shape)
        e = np.array([p[1] for p in pairs]).reshape(xs.shape)
        return v, e
    lam = spec.lam
    ones = xs == 1.0
    t = np.where(ones, 0.0, xs)
    v = np.zeros_like(t)
    s = np.ones_like(t)
    for _ in range(spec.depth):
        t = t * 2.0
        b = t >= 1.0
        t = t - b
        v = v + s * (lam * b)
        s = s * np.where(b, 1.0 - lam, lam)
    v[ones] = 1.0
    s[ones] = 0.0
    s[xs == 0.0] = 0.0  # endpoints are exact, matching the scalar path
    return v, s


def _ones_counts(xs: np.ndarray, k: int) -> np.ndarray:
    """Number of 1-digits among the first k binary digits, per element."""
    t = np.array(xs, dtype=np.float64, copy=True)
    o = np.zeros(t.shape, dtype=np.int64)
    for _ in range(k):
        t = t * 2.0
        b = t >= 1.0
        t = t - b
        o += b
    return o


def dyadic_slope(spec: SingularFunctionSpec, x: float, k: int) -> float:
    """Difference quotient of f over the depth-k dyadic cell containing x.

    For the salem kind this is the digit product of 2*lam per 0-digit and
    2*(1-lam) per 1-digit, accumulated in log space so deep products do not
    underflow.  Other kinds fall back to evaluating the cell endpoints.
    Dyadic rationals sit on a cell boundary and are assigned to the
    right-closed cell [x, x + 2**-k), matching the half-open grid convention.
    """
    if not 0.0 < x < 1.0:
        raise DomainError(f"x must lie in (0,1), got {x}")
    if k > spec.depth:
        raise PrecisionError(f"slope depth {k} exceeds spec depth {spec.depth}")
    if spec.kind == SALEM:
        o = sum(_binary_digits(x, k))
        log2_slope = k + (k - o) * math.log2(spec.lam) + o * math.log2(1.0 - spec.lam)
        return 2.0**log2_slope
    scale = float(1 << k)
    a = math.floor(x * scale) / scale
    b = a + 1.0 / scale
    va, _ = evaluate(spec, a)
    vb, _ = evaluate(spec, b)
    return (vb - va) * scale


def dyadic_slopes_many(spec: SingularFunctionSpec, xs: np.ndarray, k: int) -> np.ndarray:
    """Vectorised ``dyadic_slope`` (salem fast path; loop otherwise)."""
    if k > spec.depth:
        raise PrecisionError(f"slope depth {k} exceeds spec depth {spec.depth}")
    xs = np.asarray(xs, dtype=np.float64)
    if xs.size and (xs.min() <= 0.0 or xs.max() >= 1.0):
        raise DomainError("coordinates must lie in (0,1)")
    if spec.kind != SALEM:
        return np.array([dyadic_slope(spec, float(x), k) for x in xs.ravel()]).reshape(xs.shape)
    o = _ones_counts(xs, k)
    log2_slope = k + (k - o) * math.log2(spec.lam) + o * math.log2(1.0 - spec.lam)
    return 2.0**log2_slope


def in_singular_set(spec: SingularFunctionSpec, probe: SingularSetProbe, x: float) -> bool:
    """Membership in the computable slope-threshold set standing in for S."""
    return dyadic_slope(spec, x, probe.depth) < probe.eps


def in_singular_set_many(
    spec: SingularFunctionSpec, probe: SingularSetProbe, xs: np.ndarray
) -> np.ndarray:
    return dyadic_slopes_many(spec, xs, probe.depth) < probe.eps
