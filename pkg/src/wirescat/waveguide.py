"""Geometry, transverse modes, channel bookkeeping and image positions.

The wire occupies 0 < y < d with hard (Dirichlet) walls at y = 0 and y = d
and is infinite along x.  Everything is nondimensional: the width d is fixed
to 1 internally and all physics depends only on kd, y0/d and a/d.

Mode m has transverse profile chi_m(y) = sqrt(2/d) sin(m pi y / d) and
longitudinal wavenumber

    k_x^(m) = sqrt(k^2 - (m pi/d)^2)            (open,   m <= N = floor(kd/pi))
    k_x^(m) = i sqrt((m pi/d)^2 - k^2)          (closed, decaying as x -> +inf)

The +i branch for closed channels makes exp(i k_x |x-x0|) die off away from
the source; it is applied consistently everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ModeOpeningSingularity

__all__ = [
    "WireConfig",
    "ChannelSet",
    "ImageArray",
    "open_channel_count",
    "longitudinal_wavenumber",
    "channels",
    "transverse_mode",
    "transverse_mode_sq",
    "image_positions",
    "guard_mode_openings",
]

DEFAULT_MODE_GUARD = 1e-9


@dataclass(frozen=True)
class WireConfig:
    """Wire geometry and impurity parameters (nondimensional, d = 1).

    Attributes
    ----------
    y0 : float
        Transverse impurity position, 0 < y0 < d.
    a : float
        Effective scattering length; may be negative (attractive impurity)
        and must satisfy |a| < d/2.  a = 0 denotes a transparent impurity.
    x0 : float
        Longitudinal impurity position; observables don't depend on it.
    d : float
        Wire width; fixed to 1 (kept explicit so formulas read dimensionally).
    mode_guard : float
        Half-width (in kd units) of the refusal band around each mode
        opening kd = n pi.
    """

    y0: float
    a: float = 0.1
    x0: float = 0.0
    d: float = 1.0
    mode_guard: float = DEFAULT_MODE_GUARD

    def __post_init__(self):
        if self.d != 1.0:
            raise DomainError("wire width is fixed to 1; rescale inputs by d")
        if not 0.0 < self.y0 < self.d:
            raise DomainError(f"impurity must sit strictly inside the wire, got y0={self.y0!r}")
        if not abs(self.a) < self.d / 2:
            raise DomainError(f"|a| must be < d/2, got a={self.a!r}")
        if not self.mode_guard > 0.0:
            raise DomainError("mode_guard must be positive")

    @property
    def r0(self) -> tuple[float, float]:
        return (self.x0, self.y0)


@dataclass(frozen=True)
class ChannelSet:
    """Wavenumber, open-channel count and longitudinal wavenumbers m = 1..m_max."""

    k: float
    n_open: int
    kx: np.ndarray = field(repr=False)  # complex, kx[m-1] = k_x^(m)

    @property
    def kx_open(self) -> np.ndarray:
        """Real longitudinal wavenumbers of the open channels."""
        return self.kx[: self.n_open].real


@dataclass(frozen=True)
class ImageArray:
    """Alternating-sign image array of a point source between the walls.

    The walls generate the reflection orbit {2nd + y0} U {2nd - y0}; indexed
    monotonically in y as

        y_n = 2 ceil(n/2) d + (-1)^n y0,     sign_n = (-1)^n,

    so consecutive images mirror each other across successive wall lines
    y = ..., -d, 0, d, 2d, ... and the n = 0 entry is the source itself.
    """

    indices: np.ndarray
    positions: np.ndarray = field(repr=False)  # shape (len, 2)
    signs: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.indices)


def guard_mode_openings(kd: float, guard: float = DEFAULT_MODE_GUARD) -> None:
    """Raise ModeOpeningSingularity if kd is within guard of any n*pi (n >= 1)."""
    if kd <= 0.0 or not np.isfinite(kd):
        raise DomainError(f"kd must be positive and finite, got {kd!r}")
    n = int(round(kd / np.pi))
    if n >= 1 and abs(kd - n * np.pi) <= guard:
        raise ModeOpeningSingularity(kd, n, guard)


def open_channel_count(kd: float, guard: float = DEFAULT_MODE_GUARD) -> int:
    """Number of propagating transverse modes, N = floor(kd/pi)."""
    guard_mode_openings(kd, guard)
    return int(np.floor(kd / np.pi))


def longitudinal_wavenumber(m: int, kd: float, guard: float = DEFAULT_MODE_GUARD) -> complex:
    """k_x^(m) in units 1/d, on the decaying branch for closed channels.

    Guards only this mode's own threshold kd = m pi; other modes opening
    nearby leave k_x^(m) perfectly regular.
    """
    if m < 1:
        raise DomainError(f"mode index must be >= 1, got {m}")
    if kd <= 0.0 or not np.isfinite(kd):
        raise DomainError(f"kd must be positive and finite, got {kd!r}")
    if abs(kd - m * np.pi) <= guard:
        raise ModeOpeningSingularity(kd, m, guard)
    val = kd * kd - (m * np.pi) ** 2
    return complex(np.sqrt(val)) if val >= 0 else 1j * float(np.sqrt(-val))


def channels(kd: float, m_max: int, guard: float = DEFAULT_MODE_GUARD) -> ChannelSet:
    """ChannelSet with kx for modes 1..m_max (vectorized branch selection)."""
    n_open = open_channel_count(kd, guard)
    if m_max < max(n_open, 1):
        raise DomainError(f"m_max={m_max} must cover the {n_open} open channels")
    m = np.arange(1, m_max + 1, dtype=float)
    val = kd * kd - (m * np.pi) ** 2
    kx = np.where(val >= 0, np.sqrt(np.abs(val)) + 0j, 1j * np.sqrt(np.abs(val)))
    return ChannelSet(k=kd, n_open=n_open, kx=kx)


def transverse_mode(m, y, d: float = 1.0):
    """chi_m(y) = sqrt(2/d) sin(m pi y / d) on 0 <= y <= d."""
    y_arr = np.asarray(y, dtype=float)
    if np.any(y_arr < 0.0) or np.any(y_arr > d):
        raise DomainError("y outside the wire [0, d]")
    out = np.sqrt(2.0 / d) * np.sin(np.multiply.outer(np.asarray(m, dtype=float), y_arr) * np.pi / d)
    return out if out.ndim else float(out)


def transverse_mode_sq(m, y0: float, d: float = 1.0):
    """chi_m(y0)^2, the weight every renormalization sum carries."""
    c = transverse_mode(m, y0, d)
    return c * c


def image_positions(cfg: WireConfig, n_min: int, n_max: int) -> ImageArray:
    """Image array entries for n in [n_min, n_max]; the range must include n = 0."""
    if n_min > 0 or n_max < 0:
        raise DomainError("image index range must include the n = 0 source")
    n = np.arange(n_min, n_max + 1)
    y = 2.0 * np.ceil(n / 2) * cfg.d + (-1.0) ** n * cfg.y0
    pos = np.column_stack([np.full(n.shape, cfg.x0), y])
    return ImageArray(indices=n, positions=pos, signs=(-1.0) ** n)
