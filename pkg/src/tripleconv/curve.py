"""Local curve model y -> (y, g(y)) with g(y) = lam/2 y^2 + a y^4 + phi(y).

The curve is a compact cap of half-width r around the origin, carrying the
arclength weight G_r(y) = sqrt(1 + g'(y)^2) * eta(y/r), where eta is a smooth
cutoff equal to 1 on [-1, 1] and vanishing outside [-2, 2].  The quartic
coefficient a controls the second arclength derivative of the curvature at
the origin through the identity  d2(kappa)/ds2(0) = 24a - 3 lam^3, which is
what `classify_regime` reports.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import ClassVar

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import ConfigError

MAX_PHI_DEGREE = 12
_PHI_OFFSET = 5  # phi = sum_{k>=5} c_k y^k; coefficients stored from degree 5


@dataclass(frozen=True)
class CurveParams:
    """Immutable model parameters.

    Attributes
    ----------
    r : float
        Cap half-width, > 0.  The weight is 1 on [-r, r] and supported on
        [-2r, 2r].
    lam : float
        Curvature at the origin, > 0 (the coefficient of y^2/2).
    a : float
        Quartic coefficient.
    phi : tuple of float
        Coefficients (c5, c6, ...) of the perturbation
        phi(y) = sum_k c_k y^k, degrees 5 through 12.  Degrees below 5 are
        not representable, which enforces phi(y) = O(|y|^5).
    """

    r: float
    lam: float
    a: float
    phi: tuple[float, ...] = ()

    MOLLIFIER_INNER: ClassVar[float] = 1.0
    MOLLIFIER_OUTER: ClassVar[float] = 2.0

    def __post_init__(self):
        if not (self.r > 0.0 and np.isfinite(self.r)):
            raise ConfigError(f"r must be positive and finite, got {self.r}")
        if not (self.lam > 0.0 and np.isfinite(self.lam)):
            raise ConfigError(f"lambda must be positive and finite, got {self.lam}")
        if not np.isfinite(self.a):
            raise ConfigError(f"a must be finite, got {self.a}")
        if len(self.phi) > MAX_PHI_DEGREE - _PHI_OFFSET + 1:
            raise ConfigError(
                f"phi supports degrees {_PHI_OFFSET}..{MAX_PHI_DEGREE}; "
                f"got {len(self.phi)} coefficients"
            )
        if any(not np.isfinite(c) for c in self.phi):
            raise ConfigError("phi coefficients must be finite")
        object.__setattr__(self, "phi", tuple(float(c) for c in self.phi))


@lru_cache(maxsize=None)
def _g_coeff_table(params: CurveParams) -> tuple[np.ndarray, ...]:
    """Ascending coefficient arrays of g and its first four derivatives."""
    c = np.zeros(max(_PHI_OFFSET + len(params.phi), 5))
    c[2] = params.lam / 2.0
    c[4] = params.a
    for k, ck in enumerate(params.phi):
        c[_PHI_OFFSET + k] = ck
    table = [c]
    for _ in range(4):
        table.append(P.polyder(table[-1]))
    return tuple(table)


def g(params: CurveParams, y):
    """Height g(y) = lam/2 y^2 + a y^4 + phi(y).  Accepts scalars or arrays."""
    return P.polyval(y, _g_coeff_table(params)[0])


def g_prime(params: CurveParams, y):
    return P.polyval(y, _g_coeff_table(params)[1])


def g_double_prime(params: CurveParams, y):
    return P.polyval(y, _g_coeff_table(params)[2])


def g_derivative(params: CurveParams, y, order: int):
    """Exact polynomial derivative of g of the given order (0..4)."""
    if not 0 <= order <= 4:
        raise ValueError("derivative order must be between 0 and 4")
    return P.polyval(y, _g_coeff_table(params)[order])


def _bump_transition(t):
    """Smooth step B(t) = e^{-1/t} / (e^{-1/t} + e^{-1/(1-t)}) on (0, 1).

    B(0+) = 0, B(1-) = 1, and B(t) + B(1-t) = 1 exactly.  Underflow of the
    exponentials is harmless: at most one of them can underflow at a time.
    """
    t = np.asarray(t, dtype=float)
    out = np.empty_like(t)
    lo = t <= 0.0
    hi = t >= 1.0
    mid = ~(lo | hi)
    out[lo] = 0.0
    out[hi] = 1.0
    tm = t[mid]
    with np.errstate(under="ignore"):
        e0 = np.exp(-1.0 / tm)
        e1 = np.exp(-1.0 / (1.0 - tm))
        out[mid] = e0 / (e0 + e1)
    return out


def mollifier(params: CurveParams, x):
    """Smooth even cutoff eta: 1 on [-1, 1], 0 outside (-2, 2).

    On 1 < |x| < 2 it equals B(2 - |x|) with the standard two-exponential
    step B, so the plateau and the vanishing are exact (no tolerance games
    at the matching points).
    """
    x = np.asarray(x, dtype=float)
    val = _bump_transition(2.0 - np.abs(x))
    return val if val.ndim else float(val)


def eta_r(params: CurveParams, y):
    """Rescaled cutoff eta(y / r)."""
    return mollifier(params, np.asarray(y, dtype=float) / params.r)


def weight_G(params: CurveParams, y):
    """Arclength weight G_r(y) = sqrt(1 + g'(y)^2) * eta(y/r).

    Nonnegative, >= 1 on [-r, r], identically 0 for |y| >= 2r.
    """
    y = np.asarray(y, dtype=float)
    val = np.sqrt(1.0 + g_prime(params, y) ** 2) * eta_r(params, y)
    return val if val.ndim else float(val)


def curvature(params: CurveParams, y):
    """Signed curvature kappa(y) = g''(y) / (1 + g'(y)^2)^(3/2)."""
    y = np.asarray(y, dtype=float)
    gp = g_prime(params, y)
    val = g_double_prime(params, y) / np.power(1.0 + gp * gp, 1.5)
    return val if val.ndim else float(val)


class Regime(str, enum.Enum):
    """Position of the quartic coefficient relative to the three thresholds."""

    NOT_A_MINIMUM = "not_a_minimum"
    EXTREMIZERS_EXIST = "extremizers_exist"
    OPEN_GAP = "open_gap"
    NO_EXTREMIZERS = "no_extremizers"


@dataclass(frozen=True)
class RegimeReport:
    a_value: float
    threshold_min: float        # (lam/2)^3: curvature minimum sits at the origin iff a >= this
    threshold_exist: float      # (3/2) (lam/2)^3
    threshold_nonexist: float   # 2 (lam/2)^3
    regime: Regime
    kappa_s2_at_origin: float   # 24 a - 3 lam^3


def classify_regime(params: CurveParams) -> RegimeReport:
    """Classify a against the thresholds (lam/2)^3 < 3/2 (lam/2)^3 < 2 (lam/2)^3.

    kappa_s2_at_origin is the second derivative of the curvature with respect
    to arclength at the origin, 24a - 3 lam^3; it exceeds 3 lam^3 exactly on
    the no_extremizers side.
    """
    lam, a = params.lam, params.a
    base = (lam / 2.0) ** 3
    if a < base:
        regime = Regime.NOT_A_MINIMUM
    elif a < 1.5 * base:
        regime = Regime.EXTREMIZERS_EXIST
    elif a <= 2.0 * base:
        regime = Regime.OPEN_GAP
    else:
        regime = Regime.NO_EXTREMIZERS
    return RegimeReport(
        a_value=a,
        threshold_min=base,
        threshold_exist=1.5 * base,
        threshold_nonexist=2.0 * base,
        regime=regime,
        kappa_s2_at_origin=24.0 * a - 3.0 * lam**3,
    )


_PARAM_KEYS = {"r", "lambda", "a", "phi"}


def params_from_dict(data: dict) -> CurveParams:
    """Build CurveParams from a parsed key-value mapping.

    Accepted keys: r, lambda, a, phi (list [c5, c6, ...]).  Unknown keys are
    a hard error so that configuration typos cannot silently change runs.
    """
    if not isinstance(data, dict):
        raise ConfigError("parameter file must contain a key-value object")
    unknown = set(data) - _PARAM_KEYS
    if unknown:
        raise ConfigError(f"unknown parameter keys: {sorted(unknown)}")
    missing = {"r", "lambda", "a"} - set(data)
    if missing:
        raise ConfigError(f"missing required parameter keys: {sorted(missing)}")

    def _num(key):
        v = data[key]
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ConfigError(f"parameter {key!r} must be a number, got {v!r}")
        return float(v)

    phi = data.get("phi", [])
    if not isinstance(phi, (list, tuple)) or any(
        isinstance(c, bool) or not isinstance(c, (int, float)) for c in phi
    ):
        raise ConfigError("parameter 'phi' must be a list of numbers [c5, c6, ...]")
    return CurveParams(r=_num("r"), lam=_num("lambda"), a=_num("a"),
                       phi=tuple(float(c) for c in phi))


def load_params(path) -> CurveParams:
    """Load CurveParams from a JSON file with keys r, lambda, a, phi."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read parameter file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"cannot parse parameter file {path}: {exc}") from exc
    return params_from_dict(data)
