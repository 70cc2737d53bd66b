"""Domains D = {rho < 0} with their boundary geometry.

A ``Domain`` bundles a real-valued defining polynomial with the two scale
parameters every computation needs: the finite-type bound m (degree cap 2m)
and the width of the boundary neighbourhood in which all nonisotropic
quantities are meaningful.  Real gradients are read as complex vectors via
g_j = 2 * d rho / d conj(z_j), so for rho = Im z1 the outward unit normal at
0 is i*e1 and the complex tangent space is the Hermitian orthocomplement of
the normal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Sequence

import numpy as np

from .polyring import (
    CxPolynomial,
    DegreeCapError,
    HermitianPolynomial,
    parse_defining,
    wirtinger_derivative,
)
from .restrict import TermArrays

__all__ = [
    "Domain",
    "BoundaryFrame",
    "ConvexityProbe",
    "frame_at",
    "project_to_boundary",
    "lineal_convexity_probe",
    "boundary_points",
    "interior_points",
    "load_domain",
    "domain_from_config",
]


@dataclass(frozen=True)
class Domain:
    """Polynomial domain {rho < 0} near its boundary.

    w0_radius bounds the boundary neighbourhood used by slices and radii;
    rmax caps radii in flat directions; bbox_radius bounds the sampling box
    around ``anchor`` (an interior reference point).
    """

    rho: HermitianPolynomial
    m: int
    w0_radius: float = 0.5
    rmax: float = 10.0
    bbox_radius: float = 1.0
    anchor: tuple[complex, ...] | None = None
    name: str = ""

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be a positive integer")
        d = self.rho.degree()
        if d > 2 * self.m:
            raise DegreeCapError(f"deg(rho) = {d} exceeds 2m = {2 * self.m}")

    @property
    def nvars(self) -> int:
        return self.rho.nvars

    @property
    def degree_cap(self) -> int:
        # derived polynomials may exceed 2m only through roundoff bookkeeping
        return 2 * self.m + 2

    @cached_property
    def term_arrays(self) -> TermArrays:
        return TermArrays.from_poly(self.rho.inner)

    @cached_property
    def _dz(self) -> list[CxPolynomial]:
        return [wirtinger_derivative(self.rho.inner, j) for j in range(self.nvars)]

    def rho_at(self, z: Sequence[complex]) -> float:
        return self.rho.eval_real(z)

    def rho_many(self, pts: np.ndarray) -> np.ndarray:
        return self.rho.eval_many_real(pts)

    def grad_c(self, z: Sequence[complex]) -> np.ndarray:
        """Real gradient of rho read as a complex vector: 2 * d rho/d conj(z_j)."""
        return np.array([2.0 * self._dz[j].eval(z).conjugate() for j in range(self.nvars)])

    def interior_anchor(self) -> np.ndarray:
        if self.anchor is not None:
            a = np.asarray(self.anchor, dtype=complex)
        else:
            # for rigid-style domains rho(0) = 0 and -i e1 steps inward
            a = np.zeros(self.nvars, dtype=complex)
            g = self.grad_c(a)
            if np.linalg.norm(g) > 0:
                a = a - 0.1 * self.bbox_radius * g / np.linalg.norm(g)
        if self.rho_at(a) >= 0:
            raise ValueError("anchor point is not in the domain interior")
        return a

    def smoothness_check(self, nsamples: int = 100, seed: int = 0, tol: float = 1e-8) -> float:
        """Min |grad rho| over sampled boundary points; raises if degenerate."""
        pts = boundary_points(self, nsamples, seed=seed)
        worst = min(float(np.linalg.norm(self.grad_c(p))) for p in pts)
        if worst < tol:
            raise ValueError(f"gradient degenerates on the boundary (|grad| = {worst:.2e})")
        return worst

    def to_config(self) -> dict:
        cfg = {
            "defining": self.rho.inner.to_text(),
            "m": self.m,
            "w0": self.w0_radius,
            "rmax": self.rmax,
            "bbox": self.bbox_radius,
        }
        if self.anchor is not None:
            cfg["anchor"] = [[z.real, z.imag] for z in self.anchor]
        if self.name:
            cfg["name"] = self.name
        return cfg


@dataclass(frozen=True)
class BoundaryFrame:
    """Unit normal and complex-tangent orthonormal basis at a point."""

    zeta: np.ndarray
    normal: np.ndarray  # outward real unit normal as a complex vector
    tangent_basis: np.ndarray  # (n-1, n), rows orthonormal, Hermitian-orthogonal to normal


def frame_at(d: Domain, zeta: Sequence[complex], require_boundary: bool = True,
             boundary_tol: float = 1e-8) -> BoundaryFrame:
    """Frame from the level set of rho through zeta.

    With ``require_boundary`` the point must satisfy |rho| < boundary_tol
    relative to the gradient scale; pass False to build frames at interior
    points of the boundary neighbourhood.
    """
    zeta = np.asarray(zeta, dtype=complex)
    g = d.grad_c(zeta)
    gn = float(np.linalg.norm(g))
    if gn < 1e-12:
        raise ValueError("degenerate point: gradient of rho vanishes")
    if require_boundary and abs(d.rho_at(zeta)) > boundary_tol * max(1.0, gn):
        raise ValueError(f"point is not on the boundary (rho = {d.rho_at(zeta):.3e})")
    normal = g / gn
    n = d.nvars
    # complete the normal to a unitary basis; remaining columns span T^{1,0}
    q, _ = np.linalg.qr(np.column_stack([normal, np.eye(n)]))
    tangents = q[:, 1:n].T.copy()
    return BoundaryFrame(zeta=zeta, normal=normal, tangent_basis=tangents)


def project_to_boundary(d: Domain, z: Sequence[complex], tol: float = 1e-12,
                        max_iter: int = 100) -> np.ndarray:
    """Orthogonal projection onto {rho = 0}.

    Fixed-point iteration: repeatedly move from z along the current gradient
    direction to the zero level; at convergence z - pi(z) is parallel to
    grad rho(pi(z)) and |rho(pi(z))| < tol.
    """
    z = np.asarray(z, dtype=complex)
    p = z.copy()
    lam = 0.0
    for _ in range(max_iter):
        g = d.grad_c(p)
        gn = float(np.linalg.norm(g))
        if gn < 1e-12:
            raise ValueError("projection hit a degenerate gradient")
        u = g / gn
        # 1D Newton for rho(z - lam*u) = 0 in lam
        lam_k = lam
        for _ in range(60):
            pt = z - lam_k * u
            r = d.rho_at(pt)
            if abs(r) < tol:
                break
            slope = -float(np.real(np.vdot(d.grad_c(pt), u)))
            if slope == 0.0:
                raise ValueError("projection Newton step degenerated")
            lam_k -= r / slope
            if abs(lam_k) > 4.0 * d.w0_radius + abs(lam):
                raise ValueError("projection left the boundary neighbourhood")
        new_p = z - lam_k * u
        if np.linalg.norm(new_p - p) < 1e-14 + 1e-10 * abs(lam_k):
            return new_p
        p, lam = new_p, lam_k
    raise ValueError("projection did not converge within the iteration budget")


@dataclass(frozen=True)
class ConvexityProbe:
    """Diagnostic: minimum of rho over the sampled complex tangent plane."""

    min_rho: float
    argmin: np.ndarray
    nsamples: int
    seed: int

    @property
    def locally_lineally_convex(self) -> bool:
        return self.min_rho >= -1e-10


def lineal_convexity_probe(d: Domain, zeta: Sequence[complex], nsamples: int = 2000,
                           seed: int = 0) -> ConvexityProbe:
    """Sample rho on zeta + span_C(tangent basis) within the w0 radius."""
    fr = frame_at(d, zeta)
    rng = np.random.default_rng(seed)
    k = d.nvars - 1
    w = rng.normal(size=(nsamples, 2 * k)).view(complex)
    norms = np.linalg.norm(w, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    radii = d.w0_radius * rng.uniform(0, 1, size=(nsamples, 1)) ** (1.0 / (2 * k))
    w = w / norms * radii
    pts = np.asarray(zeta, dtype=complex)[None, :] + w @ fr.tangent_basis
    vals = d.rho_many(pts)
    i = int(np.argmin(vals))
    return ConvexityProbe(min_rho=float(vals[i]), argmin=pts[i], nsamples=nsamples, seed=seed)


def boundary_points(d: Domain, count: int, seed: int = 0,
                    anchor: Sequence[complex] | None = None,
                    radius: float | None = None) -> list[np.ndarray]:
    """Deterministic boundary sample: ray-shooting from an interior anchor.

    Rays with no sign change inside the sampling radius are skipped, so the
    returned list always holds exactly ``count`` polished boundary points.
    """
    a = np.asarray(anchor, dtype=complex) if anchor is not None else d.interior_anchor()
    if radius is None:
        radius = d.bbox_radius
    rng = np.random.default_rng(seed)
    out: list[np.ndarray] = []
    attempts = 0
    n = d.nvars
    while len(out) < count:
        attempts += 1
        if attempts > 100 * count + 100:
            raise ValueError("could not sample enough boundary points (domain too flat?)")
        u = rng.normal(size=2 * n).view(complex)
        u /= np.linalg.norm(u)
        # bracket the zero of rho along the ray
        s_grid = np.linspace(0.0, radius, 33)[1:]
        vals = d.rho_many(a[None, :] + s_grid[:, None] * u[None, :])
        pos = np.nonzero(vals > 0)[0]
        if pos.size == 0:
            continue
        hi = pos[0]
        lo_s = 0.0 if hi == 0 else s_grid[hi - 1]
        hi_s = s_grid[hi]
        for _ in range(80):
            mid = 0.5 * (lo_s + hi_s)
            if d.rho_at(a + mid * u) > 0:
                hi_s = mid
            else:
                lo_s = mid
        p = project_to_boundary(d, a + 0.5 * (lo_s + hi_s) * u)
        out.append(p)
    return out


def interior_points(d: Domain, count: int, seed: int = 0,
                    depth_range: tuple[float, float] = (1e-4, 1e-2),
                    anchor: Sequence[complex] | None = None,
                    radius: float | None = None) -> list[np.ndarray]:
    """Interior points near the boundary: boundary samples pushed inward.

    Depths are log-uniform in ``depth_range``; the step is along the inward
    normal so |rho| at the returned point is comparable to the depth.
    """
    pts = boundary_points(d, count, seed=seed, anchor=anchor, radius=radius)
    rng = np.random.default_rng(seed + 1)
    lo, hi = depth_range
    depths = np.exp(rng.uniform(np.log(lo), np.log(hi), size=count))
    out = []
    for p, s in zip(pts, depths):
        g = d.grad_c(p)
        u = g / np.linalg.norm(g)
        q = p - s * u
        if d.rho_at(q) >= 0:  # strongly curved spots: shrink until inside
            for _ in range(40):
                s *= 0.5
                q = p - s * u
                if d.rho_at(q) < 0:
                    break
        out.append(q)
    return out


def domain_from_config(cfg: dict) -> Domain:
    """Build a Domain from {defining, m, w0, rmax, bbox, nvars?, anchor?, name?}."""
    nvars = cfg.get("nvars")
    rho = parse_defining(cfg["defining"], nvars=int(nvars) if nvars else None)
    anchor = None
    if cfg.get("anchor") is not None:
        anchor = tuple(complex(re, im) for re, im in cfg["anchor"])
    return Domain(
        rho=rho,
        m=int(cfg["m"]),
        w0_radius=float(cfg.get("w0", 0.5)),
        rmax=float(cfg.get("rmax", 10.0)),
        bbox_radius=float(cfg.get("bbox", 1.0)),
        anchor=anchor,
        name=str(cfg.get("name", "")),
    )


def load_domain(path: str | Path) -> Domain:
    """Load a domain description from a TOML or JSON file."""
    path = Path(path)
    data = path.read_bytes()
    if path.suffix.lower() == ".toml":
        try:
            import tomllib  # Python >= 3.11
        except ModuleNotFoundError:
            import tomli as tomllib
        cfg = tomllib.loads(data.decode())
    else:
        cfg = json.loads(data)
    return domain_from_config(cfg)
