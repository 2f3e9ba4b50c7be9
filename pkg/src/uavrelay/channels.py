"""Channel gain models for the relay geometry.

Two models are provided.  The first is a line-of-sight inverse-square
model: the relay flies at height H above the segment between the ground
nodes and each hop gain is beta / (squared slant distance).  The second
is an elevation-angle air-to-ground model where the line-of-sight
probability follows an S-curve in the elevation angle and the mean path
loss blends LoS and NLoS excess losses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

SPEED_OF_LIGHT = 2.998e8  # m/s

# S-curve and excess-loss constants (a, b, eta_los_db, eta_nlos_db) for the
# standard environment classes.  Defaults only; every value can be
# overridden by constructing AtgEnvironment directly.
ATG_PRESETS: dict[str, tuple[float, float, float, float]] = {
    "suburban": (4.88, 0.43, 0.1, 21.0),
    "urban": (9.61, 0.16, 1.0, 20.0),
    "dense-urban": (12.08, 0.11, 1.6, 23.0),
    "high-rise": (27.23, 0.08, 2.3, 34.0),
}


def db_to_linear(value_db: float) -> float:
    """Convert a dB quantity to linear scale."""
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value: float) -> float:
    if value <= 0.0:
        raise ValueError(f"cannot express non-positive value {value} in dB")
    return 10.0 * math.log10(value)


@dataclass(frozen=True)
class Placement:
    """Relay position: ground offset x from the source node, and height."""

    x: float
    height: float


@dataclass(frozen=True)
class FreeSpaceScenario:
    """Geometry and link budget for the inverse-square model.

    The source sits at ground coordinate 0 and the destination at D; the
    relay flies at (x, H) with d1 <= x <= d2.  beta1/beta2 are the
    noise-normalised hop gains at 1 m (linear scale; use ``from_db`` for
    dB inputs).  p_total is the shared transmit power budget in watts.
    """

    D: float
    H: float
    d1: float
    d2: float
    beta1: float
    beta2: float
    p_total: float
    h_min: float | None = None
    h_max: float | None = None

    def __post_init__(self):
        if not (self.D > 0.0 and math.isfinite(self.D)):
            raise ValueError(f"D must be positive and finite, got {self.D}")
        if not (self.H > 0.0 and math.isfinite(self.H)):
            raise ValueError(f"H must be positive and finite, got {self.H}")
        if not (0.0 <= self.d1 < self.d2 <= self.D):
            raise ValueError(
                f"placement bounds must satisfy 0 <= d1 < d2 <= D, got d1={self.d1}, "
                f"d2={self.d2}, D={self.D}"
            )
        if not (self.beta1 > 0.0 and self.beta2 > 0.0):
            raise ValueError("reference gains beta1, beta2 must be positive")
        if not (self.p_total > 0.0 and math.isfinite(self.p_total)):
            raise ValueError(f"p_total must be positive and finite, got {self.p_total}")
        if (self.h_min is None) != (self.h_max is None):
            raise ValueError("h_min and h_max must be provided together")
        if self.h_min is not None and not (0.0 < self.h_min <= self.H <= self.h_max):
            raise ValueError(
                f"height bounds must satisfy 0 < h_min <= H <= h_max, got "
                f"h_min={self.h_min}, H={self.H}, h_max={self.h_max}"
            )

    @classmethod
    def from_db(
        cls,
        D: float,
        H: float,
        d1: float,
        d2: float,
        beta1_db: float,
        beta2_db: float,
        p_total: float,
        h_min: float | None = None,
        h_max: float | None = None,
    ) -> "FreeSpaceScenario":
        """Build a scenario from reference gains expressed in dB."""
        return cls(D, H, d1, d2, db_to_linear(beta1_db), db_to_linear(beta2_db),
                   p_total, h_min, h_max)


def freespace_gains(scn: FreeSpaceScenario, x: float) -> tuple[float, float]:
    """Hop gains at ground offset x: h_i = beta_i / (H^2 + horizontal_i^2).

    Raises:
        ValueError: when x falls outside the allowed band [d1, d2].
    """
    if not (scn.d1 <= x <= scn.d2):
        raise ValueError(f"x = {x} outside allowed placement band [{scn.d1}, {scn.d2}]")
    h_sq = scn.H * scn.H
    h1 = scn.beta1 / (h_sq + x * x)
    h2 = scn.beta2 / (h_sq + (scn.D - x) * (scn.D - x))
    return h1, h2


@dataclass(frozen=True)
class AtgEnvironment:
    """Air-to-ground propagation environment.

    The LoS probability at elevation angle theta (degrees) is the
    S-curve 1 / (1 + a exp(-b (theta - a))).  eta_los_db/eta_nlos_db are
    the excess losses on top of free-space propagation; carrier_hz and
    noise_power_db fix the constant path-loss offset and the noise
    normalisation.
    """

    s_curve_a: float
    s_curve_b: float
    excess_loss_los_db: float
    excess_loss_nlos_db: float
    carrier_hz: float
    noise_power_db: float

    def __post_init__(self):
        if self.s_curve_a <= 0.0 or self.s_curve_b <= 0.0:
            raise ValueError("S-curve constants a, b must be positive")
        if self.excess_loss_los_db > self.excess_loss_nlos_db:
            raise ValueError("LoS excess loss cannot exceed the NLoS excess loss")
        if self.carrier_hz <= 0.0:
            raise ValueError(f"carrier frequency must be positive, got {self.carrier_hz}")
        if not math.isfinite(self.noise_power_db):
            raise ValueError("noise power (dB) must be finite")

    @classmethod
    def from_preset(cls, name: str, carrier_hz: float, noise_power_db: float) -> "AtgEnvironment":
        """Instantiate one of the named environment classes."""
        try:
            a, b, eta_los, eta_nlos = ATG_PRESETS[name]
        except KeyError:
            raise ValueError(
                f"unknown environment preset {name!r}; expected one of {sorted(ATG_PRESETS)}"
            ) from None
        return cls(a, b, eta_los, eta_nlos, carrier_hz, noise_power_db)

    @property
    def excess_loss_gap_db(self) -> float:
        """A = eta_los - eta_nlos, the (non-positive) LoS advantage in dB."""
        return self.excess_loss_los_db - self.excess_loss_nlos_db

    @property
    def path_loss_offset_db(self) -> float:
        """C = 20 log10(4 pi f_c / c) + eta_nlos, the distance-free loss term."""
        return 20.0 * math.log10(4.0 * math.pi * self.carrier_hz / SPEED_OF_LIGHT) \
            + self.excess_loss_nlos_db

    @property
    def noise_power_linear(self) -> float:
        return db_to_linear(self.noise_power_db)

    @property
    def gain_exponent(self) -> float:
        """A-tilde = -A/10 >= 0; scales the LoS probability inside the gain."""
        return -self.excess_loss_gap_db / 10.0

    @property
    def gain_scale(self) -> float:
        """C-tilde = 10^(-C/10) / noise, the noise-normalised gain at 1 m NLoS."""
        return db_to_linear(-self.path_loss_offset_db) / self.noise_power_linear


def _s_curve(env: AtgEnvironment, theta_deg: float) -> float:
    a, b = env.s_curve_a, env.s_curve_b
    return 1.0 / (1.0 + a * math.exp(-b * (theta_deg - a)))


def _check_elevation(theta_deg: float) -> None:
    if not (0.0 <= theta_deg <= 90.0):
        raise ValueError(f"elevation angle must lie in [0, 90] degrees, got {theta_deg}")


def los_probability(env: AtgEnvironment, theta_deg: float) -> float:
    """Line-of-sight probability at elevation angle theta in degrees."""
    _check_elevation(theta_deg)
    return _s_curve(env, theta_deg)


def mean_path_loss(env: AtgEnvironment, theta_deg: float, distance_m: float) -> float:
    """Mean path loss in dB, averaging the LoS and NLoS excess losses.

    L(theta, d) = A * P_los(theta) + 20 log10(d) + C with A the LoS
    advantage and C the constant offset (both from the environment).
    """
    _check_elevation(theta_deg)
    if distance_m <= 0.0:
        raise ValueError(f"distance must be positive, got {distance_m}")
    return env.excess_loss_gap_db * _s_curve(env, theta_deg) \
        + 20.0 * math.log10(distance_m) + env.path_loss_offset_db


def atg_normalized_gain(env: AtgEnvironment, theta_deg: float, distance_m: float) -> float:
    """Noise-normalised channel power gain, h = 10^(-L/10) / noise.

    Evaluated in the equivalent product form
    h = C-tilde * d^-2 * 10^(A-tilde * P_los(theta)).
    """
    _check_elevation(theta_deg)
    if distance_m <= 0.0:
        raise ValueError(f"distance must be positive, got {distance_m}")
    s = _s_curve(env, theta_deg)
    return env.gain_scale / (distance_m * distance_m) * 10.0 ** (env.gain_exponent * s)


def elevation_angles(D: float, x: float, height: float) -> tuple[float, float]:
    """Elevation angles (degrees) seen from the two ground nodes.

    The relay at (x, height) is seen under atan(height / x) from the
    source and atan(height / (D - x)) from the destination; a node
    directly underneath (zero ground offset) sees 90 degrees.
    """
    if height <= 0.0:
        raise ValueError(f"height must be positive, got {height}")
    if not (0.0 <= x <= D):
        raise ValueError(f"x = {x} outside the ground segment [0, {D}]")
    theta1 = math.degrees(math.atan2(height, x))
    theta2 = math.degrees(math.atan2(height, D - x))
    return theta1, theta2


def slant_distances(D: float, x: float, height: float) -> tuple[float, float]:
    """Straight-line distances from the relay at (x, height) to both nodes."""
    if height <= 0.0:
        raise ValueError(f"height must be positive, got {height}")
    if not (0.0 <= x <= D):
        raise ValueError(f"x = {x} outside the ground segment [0, {D}]")
    return math.hypot(x, height), math.hypot(D - x, height)
