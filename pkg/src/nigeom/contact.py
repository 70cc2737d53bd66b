"""Orders of contact of complex and real lines with the boundary.

The order of contact of a line through a boundary point is the vanishing
order of the restricted defining function.  For polynomial rho of degree at
most 2m, vanishing to order > 2m along a line means the restriction is
identically zero, so "infinite" order is decidable exactly; the sentinel
value 2m + 1 encodes it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .domain import Domain, frame_at
from .restrict import line_coeff_matrix, ray_polynomials

__all__ = [
    "ContactOrder",
    "ExceptionalLine",
    "complex_line_order",
    "real_line_order",
    "exceptional_real_lines",
    "linear_type",
]

# restriction coefficients below this relative size count as zero
_COEFF_TOL = 1e-9


@dataclass(frozen=True, order=True)
class ContactOrder:
    """Vanishing order of a restricted defining function; sentinel 2m+1 = infinite."""

    value: int
    infinite: bool = False

    @staticmethod
    def finite(j: int) -> "ContactOrder":
        return ContactOrder(value=j, infinite=False)

    @staticmethod
    def infinite_for(m: int) -> "ContactOrder":
        return ContactOrder(value=2 * m + 1, infinite=True)

    def __str__(self) -> str:
        return "inf" if self.infinite else str(self.value)

    def to_json(self):
        return "inf" if self.infinite else self.value


@dataclass(frozen=True)
class ExceptionalLine:
    """A real line whose contact order exceeds that of its complex line."""

    theta: float
    real_order: ContactOrder
    complex_order: ContactOrder


def _restriction(d: Domain, zeta, gamma) -> np.ndarray:
    gamma = np.asarray(gamma, dtype=complex)
    if np.linalg.norm(gamma) == 0:
        raise ValueError("direction must be nonzero")
    C = line_coeff_matrix(d.term_arrays, np.asarray(zeta, dtype=complex), gamma)
    C[0, 0] = 0.0  # remove rho(zeta); contact is about the difference
    return C


def _degree_masses(C: np.ndarray) -> np.ndarray:
    d1 = C.shape[0]
    masses = np.zeros(d1)
    for a in range(d1):
        for b in range(d1 - a):
            masses[a + b] += abs(C[a, b])
    return masses


def complex_line_order(d: Domain, zeta, gamma) -> ContactOrder:
    """Lowest degree with a nonzero term in t -> rho(zeta + t*gamma) - rho(zeta)."""
    C = _restriction(d, zeta, gamma)
    masses = _degree_masses(C)
    scale = max(1.0, masses.max())
    for j in range(1, 2 * d.m + 1):
        if j < masses.size and masses[j] > _COEFF_TOL * scale:
            return ContactOrder.finite(j)
    return ContactOrder.infinite_for(d.m)


def real_line_order(d: Domain, zeta, gamma, theta: float) -> ContactOrder:
    """Vanishing order of s -> rho(zeta + s e^{i theta} gamma), s real."""
    C = _restriction(d, zeta, gamma)
    ray = ray_polynomials(C[None], np.array([float(theta)]))[0, 0]
    scale = max(1.0, float(np.abs(ray).max()))
    for j in range(1, 2 * d.m + 1):
        if j < ray.size and abs(ray[j]) > _COEFF_TOL * scale:
            return ContactOrder.finite(j)
    return ContactOrder.infinite_for(d.m)


def exceptional_real_lines(d: Domain, zeta, gamma, nsteps: int = 720) -> list[ExceptionalLine]:
    """All real lines inside the complex line with strictly larger contact order.

    A real line of phase theta is exceptional iff the leading form of the
    restriction vanishes at theta.  Candidates come from a grid scan of the
    leading form combined with the exact unit-circle roots of its associated
    polynomial; each confirmed phase is reported once modulo pi.
    """
    j0 = complex_line_order(d, zeta, gamma)
    if j0.infinite:
        raise ValueError("complex line order must be finite to scan real lines")
    C = _restriction(d, zeta, gamma)
    j = j0.value
    # leading form on the circle: f(theta) = sum_{a+b=j} C[a,b] e^{i(a-b)theta}
    pairs = [(a, j - a) for a in range(j + 1)]
    coeffs = np.array([C[a, b] for a, b in pairs])
    scale = float(np.abs(coeffs).sum())

    # exact root check: u^j * f(theta) with u = e^{i theta} is a polynomial,
    # so exceptional phases are its unit-circle roots
    poly = np.zeros(2 * j + 1, dtype=complex)
    for a, b in pairs:
        poly[2 * a] = C[a, b]
    poly = poly[::-1]  # numpy orders highest degree first
    lead = np.nonzero(np.abs(poly) > _COEFF_TOL * scale)[0]
    thetas_exact: list[float] = []
    if lead.size:
        roots = np.roots(poly[lead[0]:])
        for r in roots:
            # multiple roots smear the modulus; be generous, the order check decides
            if abs(abs(r) - 1.0) < 1e-3:
                thetas_exact.append(float(np.angle(r)) % np.pi)

    # grid scan of |f|: contiguous runs of near-zero values form one candidate
    # cluster each (high-multiplicity zeros are flat, so runs can be wide)
    step = np.pi / nsteps
    grid = np.arange(nsteps) * step
    f = ray_polynomials(C[None], grid)[0][:, j]
    low = np.abs(f) < 1e-4 * scale
    clusters: list[tuple[float, float]] = []
    i = 0
    while i < nsteps:
        if low[i]:
            k = i
            while k + 1 < nsteps and low[k + 1]:
                k += 1
            clusters.append((grid[i] - step, grid[k] + step))
            i = k + 1
        else:
            i += 1
    # wrap-around: merge a run touching pi with one touching 0
    if len(clusters) >= 2 and clusters[0][0] <= 0 < clusters[-1][1] - np.pi + step:
        a0, b0 = clusters.pop(0)
        a1, b1 = clusters.pop()
        clusters.append((a1, b0 + np.pi))
    for t in thetas_exact:
        if not any(a - step <= t <= b + step or a - step <= t + np.pi <= b + step
                   for a, b in clusters):
            clusters.append((t - step, t + step))

    out = []
    seen: list[float] = []
    for a, b in sorted(clusters):
        t = _refine_phase(coeffs, pairs, 0.5 * (a + b), width=0.5 * (b - a) + step) % np.pi
        if any(min(abs(t - s), np.pi - abs(t - s)) < 2 * step for s in seen):
            continue
        ro = real_line_order(d, zeta, gamma, t)
        if ro.infinite or ro.value > j:
            seen.append(t)
            out.append(ExceptionalLine(theta=t, real_order=ro, complex_order=j0))
    out.sort(key=lambda e: e.theta)
    return out


def _leading_value(coeffs: np.ndarray, pairs: list[tuple[int, int]], theta: float) -> float:
    return float(
        np.real(sum(c * np.exp(1j * (a - b) * theta) for c, (a, b) in zip(coeffs, pairs)))
    )


def _refine_phase(coeffs, pairs, t0: float, width: float = 0.02) -> float:
    """Golden-section minimisation of |leading form| near t0."""
    phi = (np.sqrt(5.0) - 1) / 2
    a, b = t0 - width, t0 + width
    c, d_ = b - phi * (b - a), a + phi * (b - a)
    fc = abs(_leading_value(coeffs, pairs, c))
    fd = abs(_leading_value(coeffs, pairs, d_))
    for _ in range(60):
        if fc < fd:
            b, d_, fd = d_, c, fc
            c = b - phi * (b - a)
            fc = abs(_leading_value(coeffs, pairs, c))
        else:
            a, c, fc = c, d_, fd
            d_ = a + phi * (b - a)
            fd = abs(_leading_value(coeffs, pairs, d_))
    return float(0.5 * (a + b)) % np.pi


def linear_type(d: Domain, zeta, n_multistart: int = 200, seed: int = 0) -> tuple[ContactOrder, np.ndarray]:
    """Max complex-line contact order over unit directions in T^{1,0}(zeta).

    Multistart sampling over the tangent sphere plus coefficient-mass descent:
    from the best sampled direction, minimise the total mass of terms of the
    current best order to detect directions where it degenerates further.
    The winning direction is snapped to nearby coordinate axes and re-checked
    exactly, so coordinate-aligned maximisers are certified.
    """
    from scipy.optimize import minimize

    fr = frame_at(d, zeta, require_boundary=False)
    T = fr.tangent_basis  # (n-1, n)
    k = T.shape[0]
    rng = np.random.default_rng(seed)

    def order_of(c: np.ndarray) -> ContactOrder:
        gamma = c @ T
        nrm = np.linalg.norm(gamma)
        if nrm < 1e-12:
            return ContactOrder.finite(1)
        return complex_line_order(d, zeta, gamma / nrm)

    # candidate tangent coefficient vectors
    cands = [np.eye(k, dtype=complex)[i] for i in range(k)]
    raw = rng.normal(size=(max(n_multistart - k, 0), 2 * k)).view(complex)
    for row in raw:
        cands.append(row / np.linalg.norm(row))

    best_c = cands[0]
    best = order_of(best_c)
    for c in cands[1:]:
        o = order_of(c)
        if (o.infinite, o.value) > (best.infinite, best.value):
            best, best_c = o, c
    if best.infinite:
        return best, best_c @ T

    # mass-descent: push the coefficient mass up to the current order to zero
    improved = True
    while improved and not best.infinite:
        improved = False
        j = best.value

        def mass(x: np.ndarray) -> float:
            c = x[:k] + 1j * x[k:]
            nrm = np.linalg.norm(c)
            if nrm < 1e-9:
                return 1e9
            gamma = (c / nrm) @ T
            C = _restriction(d, zeta, gamma)
            masses = _degree_masses(C)
            return float(masses[1 : j + 1].sum())

        x0 = np.concatenate([best_c.real, best_c.imag])
        res = minimize(mass, x0, method="Nelder-Mead",
                       options={"maxiter": 400 * k, "fatol": 1e-14, "xatol": 1e-10})
        c = res.x[:k] + 1j * res.x[k:]
        c = c / np.linalg.norm(c)
        for cand in (_snap(c), c):
            o = order_of(cand)
            if (o.infinite, o.value) > (best.infinite, best.value):
                best, best_c = o, cand / np.linalg.norm(cand)
                improved = True
                break
    best_c = _snap(best_c)
    best_c = best_c / np.linalg.norm(best_c)
    return order_of(best_c), best_c @ T


def _snap(c: np.ndarray, tol: float = 1e-5) -> np.ndarray:
    """Zero out near-vanishing components, kill near-trivial phases."""
    c = c.copy()
    c[np.abs(c) < tol * np.abs(c).max()] = 0.0
    i = int(np.argmax(np.abs(c)))
    c = c * np.exp(-1j * np.angle(c[i]))  # lexicographic-ish phase fix
    re = np.where(np.abs(c.real) < tol, 0.0, c.real)
    im = np.where(np.abs(c.imag) < tol, 0.0, c.imag)
    return re + 1j * im
