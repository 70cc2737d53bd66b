"""Two-dimensional boundary slices and their tangential Taylor data.

The slice at (zeta, t) uses coordinates w = (w1, w2) via the affine map
z(w) = zeta - i*w1*n + w2*t with n the outward unit normal; w1 moves off the
level set, w2 moves along the tangent direction.  The restricted defining
function r_slice(w) = rho(z(w)) - rho(zeta) is computed by exact polynomial
composition, so the homogeneous tangential parts P^j (j = 2..2m) come from
exact term extraction rather than numerical differentiation.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Sequence

import numpy as np

from .domain import BoundaryFrame, Domain, frame_at
from .polyring import (
    CxPolynomial,
    HermitianPolynomial,
    compose_affine,
    poly_norm,
    wirtinger_derivative,
)

__all__ = ["Slice", "SliceTaylor", "make_slice", "slice_taylor", "smoothness_probe",
           "SmoothnessReport", "taylor_via_derivatives"]


@dataclass(frozen=True)
class Slice:
    """Restriction data of the defining function to a 2D slice."""

    frame: BoundaryFrame
    t: np.ndarray
    r_slice: HermitianPolynomial  # in (w1, w2); vanishes at w = 0

    def eval(self, w1: complex, w2: complex) -> float:
        return self.r_slice.eval_real([w1, w2])


@dataclass(frozen=True)
class SliceTaylor:
    """Homogeneous tangential Taylor polynomials P^j and their 1-norms.

    P[j] is the degree-j part of w2 -> r_slice(0, w2) as a polynomial in
    (w2, conj w2); norms[j] is the sum of absolute coefficients.
    """

    P: dict[int, CxPolynomial]
    norms: dict[int, float]

    def weight_at(self, w2_abs: float) -> float:
        """sum_j ||P^j|| * |w2|^j, the scale factor in the support estimate."""
        return float(sum(nrm * w2_abs**j for j, nrm in self.norms.items()))


def make_slice(d: Domain, zeta: Sequence[complex], t: Sequence[complex],
               tangent_tol: float = 1e-8) -> Slice:
    """Exact composition of rho with z(w) = zeta - i w1 n + w2 t.

    ``zeta`` may sit anywhere in the boundary neighbourhood; the frame is
    taken from the level set of rho through it.  ``t`` must be a unit vector
    in the complex tangent space.
    """
    zeta = np.asarray(zeta, dtype=complex)
    t = np.asarray(t, dtype=complex)
    if abs(np.linalg.norm(t) - 1.0) > 1e-10:
        raise ValueError("tangent vector must have unit norm")
    if abs(d.rho_at(zeta)) > d.w0_radius:
        raise ValueError("base point is outside the boundary neighbourhood")
    fr = frame_at(d, zeta, require_boundary=False)
    ip = complex(np.vdot(fr.normal, t))  # <t, n> with numpy's conjugation on the first arg
    if abs(ip) > tangent_tol:
        raise ValueError(f"direction is not complex-tangent (|<t, n>| = {abs(ip):.2e})")
    M = np.column_stack([-1j * fr.normal, t])
    comp = compose_affine(d.rho.inner, zeta, M)
    comp = comp.without_constant()  # r_slice(0) = 0 by definition
    comp = comp.chop(1e-14 * max(1.0, poly_norm(comp)))
    return Slice(frame=fr, t=t, r_slice=HermitianPolynomial.from_cx(comp, tol=1e-9))


def slice_taylor(s: Slice, m: int | None = None) -> SliceTaylor:
    """Extract P^j for j = 2..2m from the exact slice polynomial."""
    inner = s.r_slice.inner
    deg = inner.degree()
    top = 2 * m if m is not None else deg
    P: dict[int, CxPolynomial] = {}
    norms: dict[int, float] = {}
    for j in range(2, top + 1):
        terms = {}
        for (a, b), c in inner.terms.items():
            # keep pure-w2 terms of total degree j
            if a[0] == 0 and b[0] == 0 and a[1] + b[1] == j:
                terms[((a[1],), (b[1],))] = c
        pj = CxPolynomial.from_terms(1, terms)
        P[j] = pj
        norms[j] = poly_norm(pj)
    return SliceTaylor(P=P, norms=norms)


def taylor_via_derivatives(s: Slice, j: int) -> CxPolynomial:
    """P^j from mixed Wirtinger derivatives at 0 (cross-check route).

    Computes sum_{k+l=j} (1/k!)(1/l!) d^j r(0)/dw2^k dconj(w2)^l w2^k conj(w2)^l,
    which must agree with exact term extraction for polynomial input.
    """
    inner = s.r_slice.inner
    terms = {}
    for k in range(j + 1):
        l = j - k
        p = inner
        for _ in range(k):
            p = wirtinger_derivative(p, 1, antiholomorphic=False)
        for _ in range(l):
            p = wirtinger_derivative(p, 1, antiholomorphic=True)
        val = p.eval([0.0, 0.0]) / (factorial(k) * factorial(l))
        if val != 0:
            terms[((k,), (l,))] = val
    return CxPolynomial.from_terms(1, terms)


@dataclass(frozen=True)
class SmoothnessReport:
    """Divided-difference record of P^j coefficients along a (zeta, t) path."""

    j: int
    max_divided_difference: float
    coefficient_path: np.ndarray  # (npoints, ncoeffs)
    params: np.ndarray


def smoothness_probe(d: Domain, zeta_path: Sequence, t_path: Sequence, j: int,
                     params: Sequence[float] | None = None) -> SmoothnessReport:
    """Modulus of continuity of the P^j coefficient vector along a path.

    The coefficient vector lives in the fixed slots (k, l), k + l = j, so it
    is comparable across path points; the report carries the largest first
    divided difference of that vector.
    """
    npts = len(zeta_path)
    if len(t_path) != npts:
        raise ValueError("zeta_path and t_path must have equal length")
    if params is None:
        params = np.linspace(0.0, 1.0, npts)
    params = np.asarray(params, dtype=float)
    rows = []
    for zeta, t in zip(zeta_path, t_path):
        if abs(d.rho_at(zeta)) > d.w0_radius:
            raise ValueError("path leaves the boundary neighbourhood")
        st = slice_taylor(make_slice(d, zeta, t), m=d.m)
        pj = st.P.get(j, CxPolynomial.zero(1))
        row = np.array([pj.terms.get(((k,), (j - k,)), 0j) for k in range(j + 1)])
        rows.append(row)
    path = np.array(rows)
    if npts < 2:
        return SmoothnessReport(j, 0.0, path, params)
    diffs = np.linalg.norm(np.diff(path, axis=0), axis=1)
    steps = np.abs(np.diff(params))
    steps[steps == 0] = 1.0
    return SmoothnessReport(
        j=j,
        max_divided_difference=float((diffs / steps).max()),
        coefficient_path=path,
        params=params,
    )
