"""Smooth bell windows subordinate to a Whitney decomposition.

Each junction between adjacent pieces carries one rising profile shared by
both neighboring bells, so the folding identities hold exactly:

    rho(t)^2 + rho(-t)^2 = 1        (partition of energy across the junction)
    b_left * b_right even about it  (adjacent-atom orthogonality)

The profile is rho(t) = sin(pi/2 * v((t+1)/2)) where v is the ratio-normalized
Gevrey cutoff v(u) = h(u) / (h(u) + h(1-u)), h(u) = exp(-u^(-gamma)) and
gamma = (1 - eta) / eta.  That makes v(u) + v(1-u) = 1 exact in floating
point, v of Gevrey order 1/(1-eta), and hence every bell's Fourier edge decay
of class exp(-a |xi|^(1-eta)).

At the two interval boundaries there is no neighbor to fold against, so the
outermost bells cut off smoothly against a *virtual* junction inset by
delta/8 from +-D/2: the ramp occupies the outer delta/4 of the terminal piece
and the bell vanishes, with all derivatives, exactly at the interval edge.
Atoms built on such a piece take their cosine interval between junction
centers (see lcbasis), which restores exact orthonormality.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UnsupportedOrderError
from .whitney import WhitneyDecomposition

_EXP_CAP = 709.0  # |log| beyond which exp overflows/saturates in float64
MAX_BELL_DERIVATIVE = 2
# Scale inside the cutoff exponent: h(u) = exp(-SHARPNESS * u^(-gamma)).
# The Gevrey class is invariant under this scale; 0.3 is calibrated so the
# subexponential tail regime is reachable within float64 dynamic range
# (with scale 1 the asymptotic exponent only emerges at magnitudes far below
# machine precision and any measured fit reads ~1 instead of 1 - eta).
SHARPNESS = 0.3


@dataclass(frozen=True)
class GevreyProfile:
    """Rising cutoff rho on [-1, 1]: 0 below -1, 1 above +1, Gevrey-regular."""

    eta: float

    def __post_init__(self):
        if not 0.0 < self.eta < 1.0:
            raise DomainError(f"eta = {self.eta} must lie strictly inside (0, 1)")

    @property
    def gamma(self) -> float:
        return (1.0 - self.eta) / self.eta

    def _transition(self, u: np.ndarray):
        """v, v', v'' on the unit interval (vectorized, saturation-safe)."""
        g = self.gamma
        mu = SHARPNESS
        u = np.clip(u, 0.0, 1.0)
        uc = np.clip(u, 1e-12, 1.0 - 1e-12)
        q = mu * (uc ** (-g) - (1.0 - uc) ** (-g))
        # points at (or clipped onto) the edges are exactly 0/1 whatever the
        # clamped exponent says; for small gamma the clamp alone no longer
        # saturates exp
        live = (np.abs(q) <= _EXP_CAP) & (u > 0.0) & (u < 1.0)
        v = np.where(q > 0.0, 0.0, 1.0)
        dv = np.zeros_like(uc)
        d2v = np.zeros_like(uc)
        if np.any(live):
            ul = uc[live]
            ql = q[live]
            vl = 1.0 / (1.0 + np.exp(ql))
            w = vl * (1.0 - vl)
            qp = -mu * g * (ul ** (-g - 1.0) + (1.0 - ul) ** (-g - 1.0))
            qpp = mu * g * (g + 1.0) * (ul ** (-g - 2.0) - (1.0 - ul) ** (-g - 2.0))
            dvl = -qp * w
            v[live] = vl
            dv[live] = dvl
            d2v[live] = -qpp * w - qp * dvl * (1.0 - 2.0 * vl)
        return v, dv, d2v

    def value(self, t):
        t = np.asarray(t, dtype=float)
        v, _, _ = self._transition((t + 1.0) * 0.5)
        return np.sin(0.5 * np.pi * v)

    def derivative(self, t, order: int = 1):
        if order == 0:
            return self.value(t)
        if not 1 <= order <= MAX_BELL_DERIVATIVE:
            raise UnsupportedOrderError(
                f"profile derivatives implemented up to order {MAX_BELL_DERIVATIVE}"
            )
        t = np.asarray(t, dtype=float)
        v, dv, d2v = self._transition((t + 1.0) * 0.5)
        half_pi_v = 0.5 * np.pi * v
        if order == 1:
            return 0.25 * np.pi * np.cos(half_pi_v) * dv
        return 0.125 * np.pi * (
            np.cos(half_pi_v) * d2v
            - 0.5 * np.pi * np.sin(half_pi_v) * dv * dv
        )


@dataclass(frozen=True)
class BellWindow:
    """b_j(x) = rho((x - lc)/lr) * rho((rc - x)/rr), supported in [lc-lr, rc+rr].

    (lc, lr) and (rc, rr) are the centers and radii of the piece's left and
    right junctions; boundary junctions are virtual (inset from +-D/2) and
    flagged.  The cosine interval of the piece's atoms is [lc, rc].
    """

    index: int
    interval: tuple[float, float]
    eta: float
    left_center: float
    left_radius: float
    right_center: float
    right_radius: float
    left_boundary: bool
    right_boundary: bool
    profile: GevreyProfile

    @property
    def support(self) -> tuple[float, float]:
        return (self.left_center - self.left_radius, self.right_center + self.right_radius)

    @property
    def core(self) -> tuple[float, float]:
        return (self.left_center + self.left_radius, self.right_center - self.right_radius)

    @property
    def cosine_interval(self) -> tuple[float, float]:
        return (self.left_center, self.right_center)

    def value(self, x):
        x = np.asarray(x, dtype=float)
        rise = self.profile.value((x - self.left_center) / self.left_radius)
        fall = self.profile.value((self.right_center - x) / self.right_radius)
        return rise * fall

    def derivative(self, x, order: int = 1):
        if order == 0:
            return self.value(x)
        if not 1 <= order <= MAX_BELL_DERIVATIVE:
            raise UnsupportedOrderError(
                f"bell derivatives implemented up to order {MAX_BELL_DERIVATIVE}"
            )
        x = np.asarray(x, dtype=float)
        tl = (x - self.left_center) / self.left_radius
        tr = (self.right_center - x) / self.right_radius
        rise = self.profile.value(tl)
        fall = self.profile.value(tr)
        d_rise = self.profile.derivative(tl, 1) / self.left_radius
        d_fall = -self.profile.derivative(tr, 1) / self.right_radius
        if order == 1:
            return d_rise * fall + rise * d_fall
        dd_rise = self.profile.derivative(tl, 2) / self.left_radius**2
        dd_fall = self.profile.derivative(tr, 2) / self.right_radius**2
        return dd_rise * fall + 2.0 * d_rise * d_fall + rise * dd_fall


def bell_value(bell: BellWindow, x):
    return bell.value(x)


def build_bells(w: WhitneyDecomposition, eta: float) -> list[BellWindow]:
    """One bell per piece, sharing junction profiles with neighbors.

    Interior junction radius: min(delta_left, delta_right) / 4.  Boundary
    junctions are virtual, inset by delta/8 so the cutoff ramp stays within
    the outer delta/4 of the terminal piece and inside [-D/2, D/2].
    """
    profile = GevreyProfile(eta)
    n = len(w.pieces)
    # junction i sits between piece i-1 and piece i
    centers = []
    radii = []
    for i in range(n + 1):
        if i == 0:
            a0, l0 = w.pieces[0]
            centers.append(a0 + l0 / 8.0)
            radii.append(l0 / 8.0)
        elif i == n:
            an, ln_ = w.pieces[-1]
            centers.append(an + ln_ - ln_ / 8.0)
            radii.append(ln_ / 8.0)
        else:
            prev_len = w.pieces[i - 1][1]
            next_len = w.pieces[i][1]
            centers.append(w.pieces[i][0])
            radii.append(min(prev_len, next_len) / 4.0)
    bells = []
    for j, (a, ln_) in enumerate(w.pieces):
        bells.append(
            BellWindow(
                index=j,
                interval=(a, a + ln_),
                eta=eta,
                left_center=centers[j],
                left_radius=radii[j],
                right_center=centers[j + 1],
                right_radius=radii[j + 1],
                left_boundary=(j == 0),
                right_boundary=(j == n - 1),
                profile=profile,
            )
        )
    return bells


def partition_of_energy(bells: list[BellWindow], x) -> np.ndarray:
    """sum_j b_j(x)^2; equals 1 away from the two boundary ramps."""
    x = np.asarray(x, dtype=float)
    total = np.zeros_like(x)
    for b in bells:
        total += b.value(x) ** 2
    return total


def interior_region(bells: list[BellWindow]) -> tuple[float, float]:
    """Sub-interval on which the energy partition identity holds exactly.

    Excludes the two boundary cutoff ramps (each of width delta_terminal / 4).
    """
    first, last = bells[0], bells[-1]
    return (
        first.left_center + first.left_radius,
        last.right_center - last.right_radius,
    )
