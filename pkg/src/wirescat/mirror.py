"""Mirror-basis wavefunctions: the one combination of open modes that scatters.

Of the N degenerate open-channel wavefunctions, exactly one is nonzero at
the impurity; it is the free-space s wave plus all of its wall images and
equals -Im G_w:

    phi_s(x, y) = sum_{n=1}^N (1/k_x^(n)) chi_n(y) chi_n(y0) cos[k_x^(n)(x-x0)]

The companion all-positive-image object

    phi_s+(x, y) = (1/kd) cos[k(x-x0)]
                 + (2/d) sum_{n=1}^N (1/k_x^(n)) cos(n pi y/d) cos(n pi y0/d) cos[k_x^(n)(x-x0)]

(the n = 0 diffraction order belongs to the cosine extension and survives
in the half-Bessel image sum it resums) feeds the even-derivative partial
waves.  Higher mirrored partial waves come from analytic term-by-term
derivatives of these sums and all vanish at the impurity, so they pass the
scatterer untouched:

    p_x  = (1/k) d/dx phi_s
    d_xy = (2/k^2) d2/dxdy phi_s+
    f    = (1/k^3) (d^3/dx^3 - 3 d^3/dx dy^2) phi_s

Everything here uses open channels only; no image sums (those live in
greens and serve as test oracles).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, PoleEncountered
from .greens import greens_kummer_grid
from .renorm import renorm_state
from .waveguide import WireConfig, channels, open_channel_count

__all__ = [
    "MirrorKind",
    "GridSpec",
    "FieldGrid",
    "mirror_s",
    "mirror_s_plus",
    "mirror_partial",
    "renormalized_mirror_at_impurity",
    "field_map",
]

_D = 1.0


class MirrorKind(enum.Enum):
    S = "s"
    S_PLUS = "s_plus"
    PX = "px"
    DXY = "dxy"
    F = "f"


@dataclass(frozen=True)
class GridSpec:
    """Rectangular sampling grid; y range must stay inside the strip."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise DomainError("grid needs at least 2 points per axis")
        if not (0.0 <= self.y_min < self.y_max <= _D):
            raise DomainError("y range must lie inside [0, d]")
        if not self.x_min < self.x_max:
            raise DomainError("x range must be increasing")

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    @property
    def ys(self) -> np.ndarray:
        return np.linspace(self.y_min, self.y_max, self.ny)


@dataclass(frozen=True)
class FieldGrid:
    """Sampled field values; values[i, j] belongs to (xs[i], ys[j])."""

    kind: str
    k: float
    xs: np.ndarray = field(repr=False)
    ys: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)


def _open_mode_data(k: float, cfg: WireConfig):
    n = open_channel_count(k * _D, cfg.mode_guard)
    if n < 1:
        return np.array([], dtype=int), np.array([])
    kx = channels(k * _D, n, cfg.mode_guard).kx_open
    return np.arange(1, n + 1), kx


def mirror_s(r, k: float, cfg: WireConfig) -> float:
    """Scattering mirror s wave; identically -Im G_w and 0 below kd = pi."""
    modes, kx = _open_mode_data(k, cfg)
    if len(modes) == 0:
        return 0.0
    xi = float(r[0]) - cfg.x0
    chi_y = np.sqrt(2.0 / _D) * np.sin(modes * np.pi * float(r[1]) / _D)
    chi_y0 = np.sqrt(2.0 / _D) * np.sin(modes * np.pi * cfg.y0 / _D)
    return float(np.sum(chi_y * chi_y0 * np.cos(kx * xi) / kx))


def mirror_s_plus(r, k: float, cfg: WireConfig) -> float:
    """Cosine-extension companion of the mirror s wave (includes the n = 0 order)."""
    modes, kx = _open_mode_data(k, cfg)
    xi = float(r[0]) - cfg.x0
    total = np.cos(k * xi) / (k * _D)
    if len(modes):
        total += (2.0 / _D) * np.sum(
            np.cos(modes * np.pi * float(r[1]) / _D) * np.cos(modes * np.pi * cfg.y0 / _D)
            * np.cos(kx * xi) / kx)
    return float(total)


def mirror_partial(kind: MirrorKind, r, k: float, cfg: WireConfig) -> float:
    """Higher mirrored partial wave (analytic derivatives, never numeric).

    All of these vanish on the line x = x0, in particular at the impurity:
    they are the non-scattering channels.
    """
    kind = MirrorKind(kind)
    if kind == MirrorKind.S:
        return mirror_s(r, k, cfg)
    if kind == MirrorKind.S_PLUS:
        return mirror_s_plus(r, k, cfg)
    modes, kx = _open_mode_data(k, cfg)
    if len(modes) == 0:
        return 0.0
    xi = float(r[0]) - cfg.x0
    y = float(r[1])
    if kind == MirrorKind.PX:
        chi_y = np.sqrt(2.0 / _D) * np.sin(modes * np.pi * y / _D)
        chi_y0 = np.sqrt(2.0 / _D) * np.sin(modes * np.pi * cfg.y0 / _D)
        return float(-np.sum(chi_y * chi_y0 * np.sin(kx * xi)) / k)
    if kind == MirrorKind.DXY:
        return float((2.0 / k**2) * np.sum(
            (2.0 / _D) * (modes * np.pi / _D)
            * np.sin(modes * np.pi * y / _D) * np.cos(modes * np.pi * cfg.y0 / _D)
            * np.sin(kx * xi)))
    if kind == MirrorKind.F:
        chi_y = np.sqrt(2.0 / _D) * np.sin(modes * np.pi * y / _D)
        chi_y0 = np.sqrt(2.0 / _D) * np.sin(modes * np.pi * cfg.y0 / _D)
        coef = kx**2 - 3.0 * (modes * np.pi / _D) ** 2
        return float(np.sum(coef * chi_y * chi_y0 * np.sin(kx * xi)) / k**3)
    raise DomainError(f"unknown mirror kind {kind!r}")


def renormalized_mirror_at_impurity(k: float, cfg: WireConfig, tol: float = 1e-12) -> complex:
    """phi_s~(r0) = phi_s(r0)/(1 - s G_r); satisfies sigma = |s phi_s~(r0)|^2.

    phi_s(r0) diverges as eps^(-1/2) just above a mode opening while this
    renormalized value stays bounded: the divergence cancels against G_r.
    """
    if open_channel_count(k * _D, cfg.mode_guard) < 1:
        raise DomainError("renormalized mirror wave needs an open channel")
    st = renorm_state(k, cfg, tol)
    denom = 1.0 - (st.s or 0.0) * st.g_r
    if abs(denom) < 1e-14:
        raise PoleEncountered("1 - s G_r vanished")
    return complex(st.sigma_open / denom)


def _field_rows(kind: str, k: float, cfg: WireConfig, spec: GridSpec, tol: float):
    if kind == "greens":
        return greens_kummer_grid(spec.xs, spec.ys, cfg.r0, k, tol)
    mk = MirrorKind(kind)
    out = np.empty((spec.nx, spec.ny), dtype=float)
    for i, x in enumerate(spec.xs):
        for j, y in enumerate(spec.ys):
            out[i, j] = mirror_partial(mk, (x, y), k, cfg)
    return out


def field_map(kind, k: float, cfg: WireConfig, spec: GridSpec, tol: float = 1e-10) -> FieldGrid:
    """Deterministic field sample of a mirror wave or the wire Green's function.

    ``kind`` is a MirrorKind (or its value) or the string "greens" for the
    kummer-representation G_w.  Output ordering is row-major in (x, y);
    repeated runs are bit-identical.
    """
    kind_str = kind.value if isinstance(kind, MirrorKind) else str(kind)
    if kind_str != "greens":
        MirrorKind(kind_str)  # validate
    values = _field_rows(kind_str, k, cfg, spec, tol)
    return FieldGrid(kind=kind_str, k=k, xs=spec.xs, ys=spec.ys, values=values)
