"""Fast restriction of (z, conj z) polynomials to complex lines.

The restriction of p to the line t -> zeta + t*gamma is a polynomial in
(t, conj t); its coefficients are what every contact-order and radius
computation consumes.  This module extracts them with vectorised binomial
convolutions so that one restriction costs microseconds and a batch over
many directions amortises the per-term bookkeeping.

Conventions: ``line_coeff_matrix`` returns C with C[a, b] the coefficient of
t^a * conj(t)^b; the full matrix is (d+1) x (d+1) for degree-d input, with
entries above the anti-diagonal a+b > d equal to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .polyring import CxPolynomial

__all__ = ["TermArrays", "line_coeff_matrix", "line_coeff_batch", "ray_polynomials"]


@dataclass(frozen=True)
class TermArrays:
    """Array view of a sparse polynomial, for numpy-heavy loops."""

    nvars: int
    degree: int
    alpha: np.ndarray  # (nterms, nvars) int
    beta: np.ndarray  # (nterms, nvars) int
    coeff: np.ndarray  # (nterms,) complex

    @staticmethod
    def from_poly(p: CxPolynomial) -> "TermArrays":
        monos = sorted(p.terms, key=lambda m: (sum(m[0]) + sum(m[1]), m[0] + m[1]))
        if not monos:
            return TermArrays(
                p.nvars,
                0,
                np.zeros((0, p.nvars), dtype=np.int64),
                np.zeros((0, p.nvars), dtype=np.int64),
                np.zeros(0, dtype=complex),
            )
        alpha = np.array([m[0] for m in monos], dtype=np.int64)
        beta = np.array([m[1] for m in monos], dtype=np.int64)
        coeff = np.array([p.terms[m] for m in monos], dtype=complex)
        deg = int((alpha.sum(axis=1) + beta.sum(axis=1)).max())
        return TermArrays(p.nvars, deg, alpha, beta, coeff)


def _binom_vectors(exps: np.ndarray, base: np.ndarray, slope: np.ndarray) -> dict:
    """Coefficient vectors of (base_j + t*slope_j)^e for every (j, e) needed.

    Returns {(j, e): (g, e+1) array} where g is the batch size of ``slope``.
    """
    out = {}
    g = slope.shape[0]
    for j in range(exps.shape[1]):
        for e in np.unique(exps[:, j]):
            e = int(e)
            if e == 0:
                continue
            i = np.arange(e + 1)
            binom = np.array([comb(e, k) for k in i], dtype=float)
            # (g, e+1): comb(e,i) * base^(e-i) * slope^i
            out[(j, e)] = (
                binom[None, :]
                * (base[j] ** (e - i))[None, :]
                * (slope[:, j : j + 1] ** i[None, :])
            )
    return out


def _conv_batch(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Polynomial product of batched coefficient vectors (g, l1)*(g, l2)."""
    g, l1 = u.shape
    l2 = v.shape[1]
    out = np.zeros((g, l1 + l2 - 1), dtype=complex)
    for i in range(l1):
        out[:, i : i + l2] += u[:, i : i + 1] * v
    return out


def line_coeff_batch(ta: TermArrays, zeta: np.ndarray, gammas: np.ndarray) -> np.ndarray:
    """Restriction coefficients of p along zeta + t*gamma for a batch of gammas.

    Returns (g, d+1, d+1) complex with entry [., a, b] the t^a conj(t)^b
    coefficient.
    """
    zeta = np.asarray(zeta, dtype=complex)
    gammas = np.atleast_2d(np.asarray(gammas, dtype=complex))
    g = gammas.shape[0]
    d = ta.degree
    C = np.zeros((g, d + 1, d + 1), dtype=complex)
    if ta.coeff.size == 0:
        return C

    hol = _binom_vectors(ta.alpha, zeta, gammas)
    anti = _binom_vectors(ta.beta, zeta.conjugate(), gammas.conjugate())

    for idx in range(ta.coeff.size):
        u = np.ones((g, 1), dtype=complex)
        for j in range(ta.nvars):
            e = int(ta.alpha[idx, j])
            if e:
                u = _conv_batch(u, hol[(j, e)])
        v = np.ones((g, 1), dtype=complex)
        for j in range(ta.nvars):
            e = int(ta.beta[idx, j])
            if e:
                v = _conv_batch(v, anti[(j, e)])
        block = ta.coeff[idx] * u[:, :, None] * v[:, None, :]
        C[:, : u.shape[1], : v.shape[1]] += block
    return C


def line_coeff_matrix(ta: TermArrays, zeta, gamma) -> np.ndarray:
    """Single-direction restriction coefficients, shape (d+1, d+1)."""
    return line_coeff_batch(ta, np.asarray(zeta, dtype=complex), np.asarray(gamma, dtype=complex)[None, :])[0]


def ray_polynomials(C: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """Real coefficients of s -> p(zeta + s e^{i theta} gamma) for each theta.

    ``C`` is a batch (g, d+1, d+1) of restriction matrices of a *real-valued*
    polynomial; the result is (g, ntheta, d+1) with entry [., t, k] the s^k
    coefficient along the ray of angle thetas[t].
    """
    if C.ndim == 2:
        C = C[None]
    g, d1, _ = C.shape
    a = np.arange(d1)
    A, B = np.meshgrid(a, a, indexing="ij")
    degs = (A + B).ravel()
    waves = (A - B).ravel()
    keep = degs < d1
    degs, waves = degs[keep], waves[keep]
    Cf = C.reshape(g, -1)[:, keep]
    phase = np.exp(1j * np.outer(thetas, waves))  # (ntheta, nk)
    # scatter-add into degree bins: (g, ntheta, d+1)
    out = np.zeros((g, thetas.size, d1), dtype=complex)
    for dd in range(d1):
        sel = degs == dd
        if sel.any():
            out[:, :, dd] = Cf[:, sel] @ phase[:, sel].T
    return out.real
