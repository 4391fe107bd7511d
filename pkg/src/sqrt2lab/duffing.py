"""Cubic-quintic Duffing oscillator driven by parity-map orbits.

The unperturbed equation is x'' - a x + b x^3 + c x^5 = 0 with energy
K = v^2/2 - a x^2/2 + b x^4/4 + c x^6/6; its K = 0 level set (the
separatrix) divides single-center from double-center orbits.  The forced
variant replaces the right-hand side with a bounded, piecewise-constant
signal derived from an integer orbit of the parity map, holding each
transformed iterate for a fixed time slice.

Raw orbit iterates grow without bound, so they cannot drive the equation
directly; the two transforms offered are the parity sign (+1 odd, -1
even) and a log-compressed value scaled into [0, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from scipy.integrate import quad

from .errors import (
    BlowupError,
    DegenerateParamsError,
    InvalidProfileError,
    NonConvergentError,
    OutsideSeparatrixError,
)

BLOWUP_LIMIT = 1.0e6


@dataclass(frozen=True)
class DuffingParams:
    """Oscillator coefficients plus forcing/damping and profile shape values.

    ``a, b, c`` weigh the linear, cubic and quintic terms; ``gamma``,
    ``delta_damp`` and ``omega`` parameterize the harmonic perturbation
    used by the Melnikov integral; ``amp``, ``lam`` and ``k`` shape the
    homoclinic profile and are free inputs, not derived from a, b, c.
    """

    a: float = 1.0
    b: float = 1.0
    c: float = 1.0
    gamma: float = 0.3
    delta_damp: float = 0.1
    omega: float = 1.0
    amp: float = 1.0
    lam: float = 1.0
    k: float = 1.0

    @property
    def discriminant(self) -> float:
        return self.b * self.b + 4.0 * self.a * self.c


@dataclass(frozen=True)
class TrajectoryPoint:
    t: float
    x: float
    v: float


class Transform(Enum):
    PARITY_SIGN = "parity"
    LOG_SCALED = "log"


@dataclass(frozen=True)
class ForcingSignal:
    """Piecewise-constant drive built from an integer orbit.

    The value ``transform(orbit[r])`` is held on [r * hold_time,
    (r+1) * hold_time); beyond the last supplied iterate the drive is 0.
    """

    source_orbit: tuple[int, ...]
    transform: Transform
    hold_time: float

    def __post_init__(self):
        if self.hold_time <= 0:
            raise ValueError("hold_time must be positive")
        if not self.source_orbit:
            raise ValueError("source orbit must be nonempty")

    def values(self) -> list[float]:
        if self.transform is Transform.PARITY_SIGN:
            return [1.0 if v & 1 else -1.0 for v in self.source_orbit]
        logs = [math.log1p(v) for v in self.source_orbit]
        peak = max(logs)
        if peak == 0.0:
            return [0.0] * len(logs)
        return [x / peak for x in logs]


def equilibria(p: DuffingParams) -> list[tuple[float, str]]:
    """Fixed points of the unperturbed force, each labeled center or saddle.

    Requires c != 0 and a positive discriminant b^2 + 4ac; the symmetric
    pair +-sqrt((-b + sqrt(disc)) / (2c)) are centers and the origin is a
    saddle for a > 0.
    """
    if p.c == 0:
        raise DegenerateParamsError("quintic coefficient c must be nonzero")
    disc = p.discriminant
    if disc <= 0:
        raise DegenerateParamsError(f"discriminant b^2 + 4ac = {disc} is not positive")
    square = (-p.b + math.sqrt(disc)) / (2.0 * p.c)
    if square <= 0:
        raise DegenerateParamsError("center displacement squared is not positive")
    xe = math.sqrt(square)
    origin = "saddle" if p.a > 0 else "center"
    return [(-xe, "center"), (0.0, origin), (xe, "center")]


def force(p: DuffingParams, x: float) -> float:
    """Restoring force a x - b x^3 - c x^5 of the unperturbed system."""
    x2 = x * x
    return x * (p.a - x2 * (p.b + p.c * x2))


def energy(p: DuffingParams, x: float, v: float) -> float:
    """Energy constant K = v^2/2 - a x^2/2 + b x^4/4 + c x^6/6."""
    x2 = x * x
    return 0.5 * v * v - 0.5 * p.a * x2 + 0.25 * p.b * x2 * x2 + p.c * x2 * x2 * x2 / 6.0


def separatrix_velocity(p: DuffingParams, x0: float) -> float:
    """Nonnegative velocity putting (x0, v) on the zero-energy level set.

    v = x0 * sqrt((6a - 3b x0^2 - 2c x0^4) / 6); a negative radicand means
    x0 lies outside the separatrix lobe.
    """
    x2 = x0 * x0
    radicand = (6.0 * p.a - 3.0 * p.b * x2 - 2.0 * p.c * x2 * x2) / 6.0
    if radicand < 0:
        raise OutsideSeparatrixError(f"x0={x0} lies outside the zero-energy set")
    return abs(x0) * math.sqrt(radicand)


def homoclinic_profile(p: DuffingParams, t: float) -> tuple[float, float]:
    """Homoclinic arc amp*sech(sqrt(k) t)/sqrt(1 + lam*sech^2(sqrt(k) t)) and its slope."""
    if p.k <= 0:
        raise InvalidProfileError("profile stiffness k must be positive")
    root_k = math.sqrt(p.k)
    s = 1.0 / math.cosh(root_k * t)
    u = math.tanh(root_k * t)
    denom = 1.0 + p.lam * s * s
    if denom <= 0:
        raise InvalidProfileError(f"profile radicand 1 + lam*sech^2 = {denom} is not positive")
    x = p.amp * s / math.sqrt(denom)
    v = -p.amp * root_k * s * u / denom**1.5
    return x, v


def _melnikov_integrand(p: DuffingParams, t0: float):
    def f(t: float) -> float:
        _, v = homoclinic_profile(p, t)
        return v * (p.gamma * math.cos(p.omega * (t + t0)) - p.delta_damp * v)

    return f


def melnikov(p: DuffingParams, t0: float, tail_tol: float = 1.0e-10) -> float:
    """Melnikov distance integral of the perturbed homoclinic arc.

    Integrates v0(t) * (gamma cos(omega (t + t0)) - delta v0(t)) over a
    window [-T, T] that widens until the increment falls below
    ``tail_tol`` relative to the running value; the profile decays like
    exp(-sqrt(k) |t|), so T never needs to pass 200/sqrt(k).
    """
    if p.k <= 0:
        raise InvalidProfileError("profile stiffness k must be positive")
    f = _melnikov_integrand(p, t0)
    root_k = math.sqrt(p.k)
    t_cap = 200.0 / root_k
    T = 30.0 / root_k
    value, _ = quad(f, -T, T, epsabs=1.0e-13, epsrel=1.0e-12, limit=200)
    while True:
        T_next = min(T + 30.0 / root_k, t_cap)
        left, _ = quad(f, -T_next, -T, epsabs=1.0e-14, epsrel=1.0e-12, limit=100)
        right, _ = quad(f, T, T_next, epsabs=1.0e-14, epsrel=1.0e-12, limit=100)
        increment = left + right
        value += increment
        if abs(increment) <= tail_tol * max(abs(value), 1.0e-6):
            return value
        if T_next >= t_cap:
            raise NonConvergentError(
                f"tail {abs(increment):.3e} still above tolerance at T = {t_cap:.1f}"
            )
        T = T_next


def melnikov_scan(p: DuffingParams, t0_values: Sequence[float]) -> list[tuple[float, float]]:
    """M(t0) sampled over a grid of phase offsets."""
    return [(t0, melnikov(p, t0)) for t0 in t0_values]


def simulate(
    p: DuffingParams,
    forcing: ForcingSignal | None,
    t_end: float,
    dt: float,
    x0: float = 0.0,
    v0: float = 0.0,
    sample_every: int = 1,
) -> list[TrajectoryPoint]:
    """Fixed-step fourth-order integration of x'' = a x - b x^3 - c x^5 + F(t).

    The drive F is piecewise constant per the forcing signal; integration
    windows snap to the hold boundaries (the substep at the end of a hold
    window shrinks to land on it), so no step straddles a jump in F.
    Points are recorded every ``sample_every`` steps plus the final state.
    Raises :class:`BlowupError` once |x| passes 1e6.
    """
    if dt <= 0 or t_end <= 0:
        raise ValueError("need positive dt and t_end")
    if sample_every < 1:
        raise ValueError("sample_every must be at least 1")
    if forcing is None:
        segments = [(0.0, t_end, 0.0)]
    else:
        vals = forcing.values()
        hold = forcing.hold_time
        segments = []
        t = 0.0
        i = 0
        while t < t_end:
            seg_end = min(t + hold, t_end)
            F = vals[i] if i < len(vals) else 0.0
            segments.append((t, seg_end, F))
            t = seg_end
            i += 1
    out = [TrajectoryPoint(0.0, x0, v0)]
    x, v = x0, v0
    a, b, c = p.a, p.b, p.c
    steps_done = 0
    for seg_start, seg_end, F in segments:
        span = seg_end - seg_start
        n_full = int(span / dt + 1e-9)
        remainder = span - n_full * dt
        sizes = [dt] * n_full
        if remainder > 1e-9 * dt:
            sizes.append(remainder)
        t = seg_start
        for h in sizes:
            k1x = v
            k1v = x * (a - x * x * (b + c * x * x)) + F
            x2 = x + 0.5 * h * k1x
            k2x = v + 0.5 * h * k1v
            k2v = x2 * (a - x2 * x2 * (b + c * x2 * x2)) + F
            x3 = x + 0.5 * h * k2x
            k3x = v + 0.5 * h * k2v
            k3v = x3 * (a - x3 * x3 * (b + c * x3 * x3)) + F
            x4 = x + h * k3x
            k4x = v + h * k3v
            k4v = x4 * (a - x4 * x4 * (b + c * x4 * x4)) + F
            x += h * (k1x + 2.0 * k2x + 2.0 * k3x + k4x) / 6.0
            v += h * (k1v + 2.0 * k2v + 2.0 * k3v + k4v) / 6.0
            t += h
            steps_done += 1
            if abs(x) > BLOWUP_LIMIT:
                raise BlowupError(f"|x| exceeded {BLOWUP_LIMIT:g} at t={t:.6g}")
            if steps_done % sample_every == 0:
                out.append(TrajectoryPoint(t, x, v))
        t = seg_end
    if out[-1].t < t_end:
        out.append(TrajectoryPoint(t_end, x, v))
    return out


def phase_portrait(points: Sequence[TrajectoryPoint]) -> list[tuple[float, float]]:
    """Project a trajectory onto the (x, v) phase plane."""
    if not points:
        raise ValueError("phase_portrait requires a nonempty trajectory")
    return [(pt.x, pt.v) for pt in points]


def sensitivity_split(
    p: DuffingParams,
    forcing: ForcingSignal | None,
    t_end: float,
    dt: float,
    x0: float = 0.0,
    v0: float = 0.0,
    epsilon: float = 1.0e-8,
    sample_every: int = 100,
) -> list[tuple[float, float]]:
    """Phase-distance between two runs whose initial x differs by epsilon.

    Both runs share the identical drive; the returned (t, separation)
    series documents sensitivity to initial conditions.
    """
    run_a = simulate(p, forcing, t_end, dt, x0, v0, sample_every=sample_every)
    run_b = simulate(p, forcing, t_end, dt, x0 + epsilon, v0, sample_every=sample_every)
    return [
        (pa.t, math.hypot(pa.x - pb.x, pa.v - pb.v))
        for pa, pb in zip(run_a, run_b)
    ]
