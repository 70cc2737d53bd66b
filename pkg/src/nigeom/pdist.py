"""Nonisotropic radii, extremal bases, distinguished polydiscs, pseudodistance.

The radius tau(zeta, gamma, eps) is the largest c such that |rho(zeta +
t*gamma) - rho(zeta)| stays below eps on the disc |t| < c.  Since the
restriction q is a real polynomial in (t, conj t), the disc supremum equals
the first-hitting radius over rays: tau = min over phases theta of the
smallest s > 0 with |q(s e^{i theta})| = eps.  We therefore compute tau by
building the ray polynomials for a phase grid in one batch, locating the
first threshold crossing on a geometric s-grid, and polishing by bisection;
the winning ray can additionally be polished with exact polynomial roots and
the phase refined by golden section.

An eps-extremal basis starts from the unit normal and greedily appends unit
vectors maximising tau in the remaining orthogonal complement.  The
maximisation is a seeded batch search (coordinate-aligned starts plus
shrinking random perturbations), optionally polished with Nelder-Mead; all
candidate evaluations share one vectorised restriction batch per round.

Distinguished polydiscs, the pseudodistance d(zeta, z) = inf {eps : z in
P_eps(zeta)}, and the empirical property suite live at the bottom.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .domain import Domain, boundary_points, interior_points
from .restrict import line_coeff_batch, ray_polynomials

__all__ = [
    "tau",
    "tau_batch",
    "ExtremalBasis",
    "extremal_basis",
    "extremal_bases_multi",
    "Polydisc",
    "polydisc_contains",
    "polydisc_sample",
    "pseudodistance",
    "PseudodistanceResult",
    "PropertyReport",
    "check_property_i",
    "check_property_ii",
    "check_property_iii",
    "check_property_iv",
    "check_property_v",
]

_IMAG_TOL = 1e-7


# ---------------------------------------------------------------------------
# tau: first-hitting radius of the restricted defining function
# ---------------------------------------------------------------------------


def _ray_matrix(d: Domain, zeta: np.ndarray, gammas: np.ndarray, nrays: int) -> np.ndarray:
    """Ray polynomials (g, 2*nrays, deg+1) covering the full circle.

    Rays are theta_k = k*pi/nrays for the first half; the second half is the
    sign-flipped copy s -> -s, which is the ray at theta + pi.
    """
    thetas = np.arange(nrays) * (np.pi / nrays)
    C = line_coeff_batch(d.term_arrays, zeta, gammas)
    C[:, 0, 0] = 0.0
    R = ray_polynomials(C, thetas)
    alt = (-1.0) ** np.arange(R.shape[2])
    return np.concatenate([R, R * alt[None, None, :]], axis=1)


def _first_hit_grid(R: np.ndarray, eps_values: np.ndarray, rmax: float,
                    s_points: int, iters: int = 26,
                    want_argmin: bool = False):
    """Smallest crossing radius per (eps, gamma); (taus, capped[, argmin_ray]).

    The lower end of the geometric s-grid is a certified no-hit bound from
    the coefficient masses, so the first grid cell with |q| >= eps brackets
    the true first hit; bisection then localises it.  Only rays whose
    bracket can undercut the best bracket top are refined.
    """
    g, t, d1 = R.shape
    eps_values = np.asarray(eps_values, dtype=float)
    absR = np.abs(R)
    M = absR.reshape(g, -1).max(axis=1)
    alive = M > 0
    taus = np.full((eps_values.size, g), rmax)
    capped = np.ones((eps_values.size, g), dtype=bool)
    argmin_ray = np.zeros((eps_values.size, g), dtype=np.int64)
    if not alive.any():
        return (taus, capped, argmin_ray) if want_argmin else (taus, capped)

    Md = absR.max(axis=(0, 1))  # (d1,) global per-degree bound
    eps_min = float(eps_values.min())
    s_lo = rmax
    for dd in range(1, d1):
        if Md[dd] > 0:
            s_lo = min(s_lo, (eps_min / (d1 * Md[dd])) ** (1.0 / dd))
    s_lo = max(min(s_lo, 0.5 * rmax), 1e-300)
    grid = np.geomspace(s_lo, rmax, s_points)
    powers = grid[None, :] ** np.arange(d1)[:, None]  # (d1, S)
    V = np.abs(np.tensordot(R, powers, axes=([2], [0])))  # (g, t, S)

    for ie, eps in enumerate(eps_values):
        hit = V >= eps  # (g, t, S)
        any_hit = hit.any(axis=2)
        first = np.where(any_hit, hit.argmax(axis=2), s_points - 1)
        lo = np.where(first > 0, grid[np.maximum(first - 1, 0)], 0.0)
        hi = np.where(any_hit, grid[first], np.inf)
        # rays with lo >= min(hi) cannot contain the overall first hit
        B = hi.min(axis=1)  # (g,)
        cand = any_hit & (lo < B[:, None] + 1e-300)
        gi, ti = np.nonzero(cand)
        if gi.size:
            lo_f = lo[gi, ti].copy()
            hi_f = hi[gi, ti].copy()
            Rf = R[gi, ti]  # (k, d1)
            for _ in range(iters):
                mid = 0.5 * (lo_f + hi_f)
                val = Rf[:, d1 - 1].copy()
                for dd in range(d1 - 2, -1, -1):
                    val = val * mid + Rf[:, dd]
                over = np.abs(val) >= eps
                hi_f = np.where(over, mid, hi_f)
                lo_f = np.where(over, lo_f, mid)
            s_ref = np.full((g, t), np.inf)
            s_ref[gi, ti] = hi_f
            best = s_ref.min(axis=1)
            arg = s_ref.argmin(axis=1)
        else:
            best = np.full(g, np.inf)
            arg = np.zeros(g, dtype=np.int64)
        ok = np.isfinite(best) & alive
        taus[ie, ok] = np.minimum(best[ok], rmax)
        capped[ie] = ~ok | (taus[ie] >= rmax)
        taus[ie, ~alive] = rmax
        argmin_ray[ie] = arg
    return (taus, capped, argmin_ray) if want_argmin else (taus, capped)


def tau_batch(d: Domain, zeta, gammas, eps_values, nrays: int = 32,
              s_points: int = 72) -> tuple[np.ndarray, np.ndarray]:
    """tau for a batch of directions and thresholds; returns (taus, capped).

    Shapes: gammas (g, n), eps_values (e,) -> taus (e, g).  Directions are
    normalised internally.
    """
    zeta = np.asarray(zeta, dtype=complex)
    gammas = np.atleast_2d(np.asarray(gammas, dtype=complex))
    norms = np.linalg.norm(gammas, axis=1, keepdims=True)
    if (norms == 0).any():
        raise ValueError("zero direction")
    R = _ray_matrix(d, zeta, gammas / norms, nrays)
    return _first_hit_grid(R, np.atleast_1d(np.asarray(eps_values, dtype=float)),
                           d.rmax, s_points)


def _first_root_polished(coeffs: np.ndarray, eps: float, smax: float) -> float | None:
    """Exact smallest positive s with |q(s)| = eps for one ray polynomial."""
    best = None
    for sign in (1.0, -1.0):
        c = coeffs.astype(complex).copy()
        c[0] -= sign * eps
        desc = c[::-1]
        nz = np.nonzero(np.abs(desc) > 0)[0]
        if nz.size == 0 or nz[0] == desc.size - 1:
            continue
        roots = np.roots(desc[nz[0]:])
        for r in roots:
            if r.real <= 0 or abs(r.imag) > 1e-5 * (1.0 + abs(r.real)):
                continue
            s = float(r.real)
            # Newton polish on q(s) - sign*eps
            for _ in range(4):
                val = np.polyval(coeffs[::-1], s) - sign * eps
                der = np.polyval(np.polyder(coeffs[::-1]), s)
                if der == 0:
                    break
                s -= val / der
            if s <= 0 or s > smax * 1.5:
                continue
            if abs(np.polyval(coeffs[::-1], s) - sign * eps) < 1e-9 * eps + 1e-14:
                if best is None or s < best:
                    best = s
    return best


def tau(d: Domain, zeta, gamma, eps: float, nrays: int = 192, s_points: int = 96,
        refine: bool = True) -> float:
    """Largest radius on which the restriction of rho along gamma varies < eps.

    Accurate to better than 1e-4 relative (machine accuracy at grid phases);
    capped at d.rmax in flat directions.
    """
    zeta = np.asarray(zeta, dtype=complex)
    gamma = np.asarray(gamma, dtype=complex)
    n = np.linalg.norm(gamma)
    if n == 0:
        raise ValueError("zero direction")
    gamma = gamma / n
    R = _ray_matrix(d, zeta, gamma[None, :], nrays)
    taus, capped, arg = _first_hit_grid(R, np.array([eps]), d.rmax, s_points,
                                        want_argmin=True)
    val = float(taus[0, 0])
    if capped[0, 0] or not refine:
        return val

    # golden-section refinement of s*(theta) around the winning ray, with the
    # exact first polynomial root along each probed phase
    C = line_coeff_batch(d.term_arrays, zeta, gamma[None, :])
    C[:, 0, 0] = 0.0

    def s_of(theta: float) -> float:
        ray = ray_polynomials(C, np.array([theta]))[0, 0]
        r = _first_root_polished(ray, eps, d.rmax)
        return r if r is not None else d.rmax

    i0 = int(arg[0, 0])
    step = np.pi / nrays  # angular spacing of the ray grid
    theta0 = (i0 % nrays) * step + (np.pi if i0 >= nrays else 0.0)
    a, b = theta0 - step, theta0 + step
    phi = (math.sqrt(5.0) - 1) / 2
    c1 = b - phi * (b - a)
    c2 = a + phi * (b - a)
    f1, f2 = s_of(c1), s_of(c2)
    best = min(s_of(theta0), f1, f2)
    for _ in range(24):
        if f1 < f2:
            b, c2, f2 = c2, c1, f1
            c1 = b - phi * (b - a)
            f1 = s_of(c1)
        else:
            a, c1, f1 = c1, c2, f2
            c2 = a + phi * (b - a)
            f2 = s_of(c2)
        best = min(best, f1, f2)
    return float(min(best, d.rmax))


# ---------------------------------------------------------------------------
# extremal bases
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtremalBasis:
    """Greedy orthonormal basis with nonisotropic radii at (zeta, eps).

    Row k of ``v`` is the k-th basis vector; ``Phi = conj(v)`` maps z - zeta
    to the coordinates lambda with lambda_k = <z - zeta, v_k>.
    """

    zeta: np.ndarray
    eps: float
    v: np.ndarray  # (n, n) rows orthonormal
    tau: np.ndarray  # (n,)
    capped: np.ndarray  # (n,) bool
    objective: str = "disc"

    @property
    def Phi(self) -> np.ndarray:
        return self.v.conj()

    def coords(self, z) -> np.ndarray:
        return self.Phi @ (np.asarray(z, dtype=complex) - self.zeta)

    def point(self, lam) -> np.ndarray:
        return self.zeta + np.asarray(lam, dtype=complex) @ self.v


def _complement_basis(vs: list[np.ndarray], n: int) -> np.ndarray:
    """Orthonormal basis (columns) of the orthocomplement of the given rows."""
    if not vs:
        return np.eye(n, dtype=complex)
    V = np.column_stack(vs)
    q, _ = np.linalg.qr(np.column_stack([V, np.eye(n)]))
    return q[:, len(vs):n]


def _ray_reach_objective(d: Domain, zeta: np.ndarray, gammas: np.ndarray,
                         eps: float) -> np.ndarray:
    """Alternative normalisation: reach along the positive ray only.

    This is the reading in which the chosen direction itself attains the
    eps-level of rho at its tip; it is direction-sensitive (not phase
    invariant) and kept behind the ``objective="ray"`` flag.
    """
    C = line_coeff_batch(d.term_arrays, zeta, gammas)
    C[:, 0, 0] = 0.0
    rays = ray_polynomials(C, np.array([0.0]))[:, 0, :]
    out = np.empty(rays.shape[0])
    for i in range(rays.shape[0]):
        r = _first_root_polished(rays[i], eps, d.rmax)
        out[i] = r if r is not None else d.rmax
    return out


def _maximize_tau_in_subspace(d: Domain, zeta: np.ndarray, H: np.ndarray,
                              eps_values: np.ndarray, rng: np.random.Generator,
                              n_multistart: int, rounds: int, nrays: int,
                              polish: bool, objective: str,
                              ) -> list[tuple[np.ndarray, float]]:
    """Per eps value, the best unit direction in the column span of H.

    Returns [(v, tau_v)] aligned with eps_values.  Candidate batches share
    their restriction work across all eps values.
    """
    n, dim = H.shape
    ne = eps_values.size
    if dim == 1:
        v = H[:, 0]
        if objective == "ray":
            t = np.array([_ray_reach_objective(d, zeta, v[None, :], e)[0] for e in eps_values])
            return [(v, float(t[i])) for i in range(ne)]
        taus, _ = tau_batch(d, zeta, v[None, :], eps_values, nrays=nrays)
        return [(v, float(taus[i, 0])) for i in range(ne)]

    def evaluate(cands: np.ndarray) -> np.ndarray:
        gammas = cands @ H.T  # (k, n)
        if objective == "ray":
            return np.stack(
                [_ray_reach_objective(d, zeta, gammas, e) for e in eps_values]
            )
        taus, _ = tau_batch(d, zeta, gammas, eps_values, nrays=nrays)
        return taus  # (ne, k)

    # round 0: subspace frame, projections of coordinate axes, random starts
    cands = [np.eye(dim, dtype=complex)[i] for i in range(dim)]
    for j in range(n):
        c = H.conj().T @ np.eye(n, dtype=complex)[j]
        nc = np.linalg.norm(c)
        if nc > 1e-9:
            cands.append(c / nc)
    nrand = max(n_multistart - len(cands), 2)
    raw = rng.normal(size=(nrand, 2 * dim)).view(complex)
    cands.extend(raw / np.linalg.norm(raw, axis=1, keepdims=True))
    cands = np.array(cands)

    vals = evaluate(cands)  # (ne, k)
    best_c = [cands[int(np.argmax(vals[i]))] for i in range(ne)]
    best_v = [float(vals[i].max()) for i in range(ne)]

    sigma = 0.5
    per_round = max(6, n_multistart // 4)
    for _ in range(rounds):
        batch = []
        owners = []
        for i in range(ne):
            pert = best_c[i][None, :] + sigma * rng.normal(
                size=(per_round, 2 * dim)).view(complex)
            pert /= np.linalg.norm(pert, axis=1, keepdims=True)
            batch.append(pert)
            owners.append(np.full(per_round, i))
        batch = np.concatenate(batch)
        owners = np.concatenate(owners)
        vals = evaluate(batch)
        for i in range(ne):
            sel = owners == i
            v_i = vals[i][sel]
            j = int(np.argmax(v_i))
            if v_i[j] > best_v[i]:
                best_v[i] = float(v_i[j])
                best_c[i] = batch[sel][j]
        sigma *= 0.45

    if polish:
        from scipy.optimize import minimize

        for i in range(ne):
            e = float(eps_values[i])

            def neg_tau(x: np.ndarray) -> float:
                c = x[:dim] + 1j * x[dim:]
                nc = np.linalg.norm(c)
                if nc < 1e-9:
                    return 0.0
                gamma = (c / nc) @ H.T
                return -tau(d, zeta, gamma, e, nrays=256, refine=True)

            x0 = np.concatenate([best_c[i].real, best_c[i].imag])
            res = minimize(neg_tau, x0, method="Nelder-Mead",
                           options={"maxiter": 120 * dim, "fatol": 1e-9, "xatol": 1e-7})
            c = res.x[:dim] + 1j * res.x[dim:]
            c /= np.linalg.norm(c)
            if -res.fun > best_v[i]:
                best_v[i] = float(-res.fun)
                best_c[i] = c

    return [(best_c[i] @ H.T, best_v[i]) for i in range(ne)]


def extremal_bases_multi(d: Domain, zeta, eps_values: Sequence[float],
                         n_multistart: int = 16, seed: int = 0,
                         precision: str = "fast",
                         objective: str = "disc") -> list[ExtremalBasis]:
    """Extremal bases at one point for several scales, sharing batched work.

    precision "fast" uses the seeded batch search alone; "precise" adds a
    Nelder-Mead polish of each chosen direction and high-resolution radii.
    """
    zeta = np.asarray(zeta, dtype=complex)
    eps_values = np.atleast_1d(np.asarray(eps_values, dtype=float))
    if (eps_values <= 0).any():
        raise ValueError("eps must be positive")
    n = d.nvars
    rng = np.random.default_rng(seed)
    g = d.grad_c(zeta)
    gn = np.linalg.norm(g)
    if gn < 1e-12:
        raise ValueError("degenerate point: gradient of rho vanishes")
    v1 = g / gn

    polish = precision == "precise"
    nrays = 48 if polish else 24
    rounds = 3 if polish else 2

    vs_per_eps: list[list[np.ndarray]] = [[v1] for _ in eps_values]
    for _ in range(1, n):
        # complements may differ across eps once chosen vectors differ
        groups: dict[tuple, list[int]] = {}
        for i in range(eps_values.size):
            key = tuple(np.round(np.concatenate(vs_per_eps[i]).view(float), 12))
            groups.setdefault(key, []).append(i)
        for idxs in groups.values():
            H = _complement_basis(vs_per_eps[idxs[0]], n)
            res = _maximize_tau_in_subspace(
                d, zeta, H, eps_values[idxs], rng, n_multistart, rounds, nrays,
                polish, objective)
            for pos, i in enumerate(idxs):
                v, _ = res[pos]
                v = v / np.linalg.norm(v)
                # re-orthogonalise against earlier vectors (numerical hygiene)
                for u in vs_per_eps[i]:
                    v = v - u * np.vdot(u, v)
                vs_per_eps[i].append(v / np.linalg.norm(v))

    out = []
    final_nrays = 256 if polish else 64
    for i, e in enumerate(eps_values):
        V = np.array(vs_per_eps[i])
        taus, capped = tau_batch(d, zeta, V, np.array([e]), nrays=final_nrays)
        tvals = taus[0].copy()
        if polish:
            tvals = np.array([tau(d, zeta, V[k], float(e), nrays=256, refine=True)
                              for k in range(n)])
        out.append(ExtremalBasis(zeta=zeta, eps=float(e), v=V, tau=tvals,
                                 capped=capped[0], objective=objective))
    return out


def extremal_basis(d: Domain, zeta, eps: float, n_multistart: int = 16,
                   seed: int = 0, precision: str = "fast",
                   objective: str = "disc") -> ExtremalBasis:
    """Greedy eps-extremal basis at zeta (v_1 = unit normal direction)."""
    return extremal_bases_multi(d, zeta, [eps], n_multistart=n_multistart,
                                seed=seed, precision=precision,
                                objective=objective)[0]


# ---------------------------------------------------------------------------
# polydiscs and the pseudodistance
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Polydisc:
    """Scaled distinguished polydisc A * P_eps(zeta)."""

    basis: ExtremalBasis
    scale: float = 1.0


def polydisc_contains(p: Polydisc, z) -> tuple[bool, np.ndarray]:
    """Membership test; also returns the basis coordinates of z - zeta."""
    lam = p.basis.coords(z)
    inside = bool(np.all(np.abs(lam) <= p.scale * p.basis.tau + 1e-15))
    return inside, lam


def polydisc_sample(p: Polydisc, count: int, rng: np.random.Generator,
                    on_boundary: bool = False) -> np.ndarray:
    """Random points of the polydisc; with on_boundary, max_k |l_k|/radius = 1."""
    n = p.basis.v.shape[0]
    u = rng.normal(size=(count, 2 * n)).view(complex)
    u /= np.abs(u)
    mags = rng.uniform(0.0, 1.0, size=(count, n))
    if on_boundary:
        mags /= mags.max(axis=1, keepdims=True)
    lam = u * mags * (p.scale * p.basis.tau)[None, :]
    return p.basis.zeta[None, :] + lam @ p.basis.v


@dataclass(frozen=True)
class PseudodistanceResult:
    value: float
    status: str  # "ok" | "zero" | "far" | "all-scales"
    eps_tested: tuple[float, float]


_LOG2_FLOOR = -48  # smallest dyadic scale probed


def pseudodistance_info(d: Domain, zeta, z, seed: int = 0,
                        resolution_log2: float = 1.0 / 8.0,
                        basis_kwargs: dict | None = None,
                        cache: dict | None = None) -> PseudodistanceResult:
    """inf {eps : z in P_eps(zeta)} bracketed on an absolute dyadic grid.

    A directional warm start (tau along the chord, monotone in eps) centres
    the scan; membership is then tested on the integer dyadic grid, where the
    smallest transition is refined on the absolute 2^(resolution_log2) grid.
    Membership is only quasi-monotone in eps (the basis jumps), so the scan
    widens the window until it sees a stable transition.  Bases for the scan
    window are built in one shared batch; pass ``cache`` (any dict) to reuse
    bases across calls with a common base point.
    """
    zeta = np.asarray(zeta, dtype=complex)
    z = np.asarray(z, dtype=complex)
    bk = dict(basis_kwargs or {})
    bk.setdefault("seed", seed)
    bk.setdefault("n_multistart", 10)
    if cache is None:
        cache = {}
    key0 = zeta.tobytes()
    delta = np.linalg.norm(z - zeta)
    if delta < 1e-14:
        return PseudodistanceResult(0.0, "zero", (0.0, 0.0))

    u = (z - zeta) / delta

    def tau_at(log2e: float) -> float:
        t, _ = tau_batch(d, zeta, u[None, :], np.array([2.0**log2e]), nrays=24)
        return float(t[0, 0])

    # warm start: smallest eps with tau(zeta, u, eps) >= |z - zeta|
    lo, hi = float(_LOG2_FLOOR), 0.0
    if tau_at(hi) < delta:
        start = 0.0  # even eps = 1 does not reach along the chord
    elif tau_at(lo) >= delta:
        start = lo
    else:
        for _ in range(18):
            mid = 0.5 * (lo + hi)
            if tau_at(mid) >= delta:
                hi = mid
            else:
                lo = mid
        start = hi

    def fetch(exps: list[float]) -> None:
        missing = sorted({x for x in exps if (key0, x) not in cache})
        if missing:
            bases = extremal_bases_multi(d, zeta, [2.0**x for x in missing], **bk)
            for x, b in zip(missing, bases):
                cache[(key0, x)] = b

    def member(x: float) -> bool:
        fetch([x])
        return polydisc_contains(Polydisc(cache[(key0, x)]), z)[0]

    i0 = int(math.floor(start))
    lo_i, hi_i = i0 - 3, min(i0 + 3, 0)
    fetch([float(i) for i in range(lo_i, hi_i + 1)])
    for _ in range(40):
        if not member(float(hi_i)) and hi_i < 0:
            hi_i = min(hi_i + 2, 0)
            continue
        if member(float(lo_i)) and lo_i > _LOG2_FLOOR:
            lo_i = max(lo_i - 2, _LOG2_FLOOR)
            continue
        break
    if not member(float(hi_i)):
        return PseudodistanceResult(math.inf, "far", (2.0**lo_i, 2.0**hi_i))
    if member(float(lo_i)):
        return PseudodistanceResult(2.0**lo_i, "all-scales", (2.0**lo_i, 2.0**hi_i))

    # smallest integer transition: scan down from hi_i
    smallest = hi_i
    for i in range(hi_i, lo_i, -1):
        if member(float(i)) and not member(float(i - 1)):
            smallest = i
            break
        if member(float(i - 1)):
            smallest = i - 1
    # refine on the absolute 2^resolution grid inside (smallest-1, smallest]
    steps = max(1, int(round(1.0 / resolution_log2)))
    lo_f, hi_f = float(smallest - 1), float(smallest)
    for _ in range(int(math.ceil(math.log2(steps))) + 1):
        mid = 0.5 * (lo_f + hi_f)
        mid = round(mid * steps) / steps  # stay on the absolute grid
        if mid <= lo_f or mid >= hi_f:
            break
        if member(mid):
            hi_f = mid
        else:
            lo_f = mid
    return PseudodistanceResult(2.0**hi_f, "ok", (2.0**lo_f, 2.0**hi_f))


def pseudodistance(d: Domain, zeta, z, seed: int = 0,
                   resolution_log2: float = 1.0 / 8.0,
                   basis_kwargs: dict | None = None,
                   cache: dict | None = None) -> float:
    """Nonisotropic pseudodistance; 0.0 for coincident points, inf if beyond eps = 1."""
    return pseudodistance_info(d, zeta, z, seed=seed,
                               resolution_log2=resolution_log2,
                               basis_kwargs=basis_kwargs, cache=cache).value


# ---------------------------------------------------------------------------
# empirical property suite
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PropertyReport:
    """Empirical constants for one pseudodistance property."""

    property_id: str
    constants: dict
    nsamples: int
    seed: int
    passed: bool
    details: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "property": self.property_id,
            "constants": self.constants,
            "nsamples": self.nsamples,
            "seed": self.seed,
            "passed": self.passed,
            "details": self.details,
        }


def _near_boundary_points(d: Domain, count: int, seed: int,
                          depth_range=(1e-4, 1e-2)) -> list[np.ndarray]:
    return interior_points(d, count, seed=seed, depth_range=depth_range)


def check_property_i(d: Domain, samples: int = 100, seed: int = 0,
                     boundary_probes: int = 200) -> PropertyReport:
    """Largest c with c*P_{|rho(zeta)|}(zeta) inside D, minimised over samples."""
    pts = _near_boundary_points(d, samples, seed)
    rng = np.random.default_rng(seed + 7)
    worst = math.inf
    worst_at = None
    for idx, zeta in enumerate(pts):
        eps = abs(d.rho_at(zeta))
        basis = extremal_basis(d, zeta, eps, seed=seed + idx)
        n = d.nvars
        u = rng.normal(size=(boundary_probes, 2 * n)).view(complex)
        u /= np.abs(u)
        mags = rng.uniform(0.0, 1.0, size=(boundary_probes, n))
        mags /= mags.max(axis=1, keepdims=True)
        lam_unit = u * mags * basis.tau[None, :]
        offsets = lam_unit @ basis.v

        def all_inside(c: float) -> bool:
            vals = d.rho_many(zeta[None, :] + c * offsets)
            return bool((vals < 0).all())

        lo, hi = 0.0, 2.0
        if all_inside(hi):
            c_star = hi
        else:
            for _ in range(24):
                mid = 0.5 * (lo + hi)
                if all_inside(mid):
                    lo = mid
                else:
                    hi = mid
            c_star = lo
        if c_star < worst:
            worst = c_star
            worst_at = zeta
    passed = worst >= 0.01
    return PropertyReport(
        property_id="i",
        constants={"c": worst},
        nsamples=samples,
        seed=seed,
        passed=passed,
        details={"worst_point": [[p.real, p.imag] for p in worst_at]},
    )


def _ratio_or_one(a: float, b: float) -> float:
    if a == 0.0 and b == 0.0:
        return 1.0
    if a == 0.0 or b == 0.0:
        return math.inf
    return a / b


def _prop_ii_worst(d: Domain, pts, rng, seed, eps_lo, eps_hi) -> float:
    K = 1.0
    for idx, zeta in enumerate(pts):
        eps = math.exp(rng.uniform(math.log(eps_lo), math.log(eps_hi)))
        basis = extremal_basis(d, zeta, eps, seed=seed + idx)
        gamma = rng.normal(size=2 * d.nvars).view(complex)
        gamma /= np.linalg.norm(gamma)
        t_g, capped_g = tau_batch(d, zeta, gamma[None, :], np.array([eps]), nrays=48)
        lhs = 0.0 if capped_g[0, 0] else 1.0 / t_g[0, 0]
        a = basis.coords(basis.zeta + gamma)
        rhs = 0.0
        for k in range(d.nvars):
            if not basis.capped[k]:
                rhs += abs(a[k]) / basis.tau[k]
        r = _ratio_or_one(lhs, rhs)
        K = max(K, r, 1.0 / r if r > 0 else math.inf)
    return K


def check_property_ii(d: Domain, samples: int = 200, seed: int = 0,
                      eps_range=(1e-5, 1e-2)) -> PropertyReport:
    """Comparability of 1/tau(gamma) with sum |a_j|/tau_j; capped radii count as flat."""
    eps_lo, eps_hi = eps_range
    pts = _near_boundary_points(d, 2 * samples, seed)
    rng = np.random.default_rng(seed + 13)
    K_half = _prop_ii_worst(d, pts[:samples], rng, seed, eps_lo, eps_hi)
    rng2 = np.random.default_rng(seed + 13)
    K_full = _prop_ii_worst(d, pts, rng2, seed, eps_lo, eps_hi)
    stable = math.isfinite(K_full) and K_full <= 2.0 * K_half
    return PropertyReport(
        property_id="ii",
        constants={"K": K_full, "K_half_sample": K_half},
        nsamples=2 * samples,
        seed=seed,
        passed=stable,
        details={"eps_range": list(eps_range)},
    )


def check_property_iii(d: Domain, samples: int = 100, k_values=(2.0, 4.0),
                       seed: int = 0, eps_range=(1e-5, 1e-2),
                       slack: float = 0.02) -> PropertyReport:
    """Engulfing ratios tau_j(zeta, k*eps)/tau_j(zeta, eps) along fixed directions."""
    pts = _near_boundary_points(d, samples, seed)
    rng = np.random.default_rng(seed + 19)
    eps_lo, eps_hi = eps_range
    constants: dict = {}
    passed = True
    for k in k_values:
        cmin, cmax = math.inf, 0.0
        for idx, zeta in enumerate(pts):
            eps = math.exp(rng.uniform(math.log(eps_lo), math.log(eps_hi)))
            basis = extremal_basis(d, zeta, eps, seed=seed + idx)
            taus_k, capped_k = tau_batch(d, zeta, basis.v, np.array([k * eps]), nrays=64)
            for j in range(d.nvars):
                if basis.capped[j] or capped_k[0, j]:
                    continue
                r = float(taus_k[0, j] / basis.tau[j])
                cmin, cmax = min(cmin, r), max(cmax, r)
        constants[f"c_{k:g}"] = cmin
        constants[f"C_{k:g}"] = cmax
        if not (1.0 - slack <= cmin <= cmax <= k * (1.0 + slack)):
            passed = False
    return PropertyReport(
        property_id="iii",
        constants=constants,
        nsamples=samples,
        seed=seed,
        passed=passed,
        details={"k_values": list(k_values), "slack": slack},
    )


def _prop_iv_worst(d: Domain, pts, rng, seed, eps_lo, eps_hi) -> float:
    K = 1.0
    for idx, zeta in enumerate(pts):
        eps = math.exp(rng.uniform(math.log(eps_lo), math.log(eps_hi)))
        basis = extremal_basis(d, zeta, eps, seed=seed + idx)
        pd = Polydisc(basis)
        z = polydisc_sample(pd, 1, rng)[0]
        gamma = rng.normal(size=2 * d.nvars).view(complex)
        gamma /= np.linalg.norm(gamma)
        t1, c1 = tau_batch(d, zeta, gamma[None, :], np.array([eps]), nrays=48)
        t2, c2 = tau_batch(d, z, gamma[None, :], np.array([eps]), nrays=48)
        if c1[0, 0] and c2[0, 0]:
            continue
        r = _ratio_or_one(float(t1[0, 0]), float(t2[0, 0]))
        K = max(K, r, 1.0 / r if r > 0 else math.inf)
    return K


def check_property_iv(d: Domain, samples: int = 200, seed: int = 0,
                      eps_range=(1e-5, 1e-2), bound: float = 16.0) -> PropertyReport:
    """tau is comparable at zeta and at any z in P_eps(zeta)."""
    eps_lo, eps_hi = eps_range
    pts = _near_boundary_points(d, 2 * samples, seed)
    rng = np.random.default_rng(seed + 23)
    K_half = _prop_iv_worst(d, pts[:samples], rng, seed, eps_lo, eps_hi)
    rng2 = np.random.default_rng(seed + 23)
    K_full = _prop_iv_worst(d, pts, rng2, seed, eps_lo, eps_hi)
    stable = math.isfinite(K_full) and K_full <= 2.0 * K_half
    return PropertyReport(
        property_id="iv",
        constants={"K": K_full, "K_half_sample": K_half},
        nsamples=2 * samples,
        seed=seed,
        passed=stable and K_full <= bound,
        details={"bound": bound},
    )


def _prop_v_constants(d: Domain, triples, resolution_log2) -> tuple[float, float]:
    K_sym, K_tri = 1.0, 0.0
    for zeta, z, w in triples:
        dz = pseudodistance(d, zeta, z, resolution_log2=resolution_log2)
        dzr = pseudodistance(d, z, zeta, resolution_log2=resolution_log2)
        dw = pseudodistance(d, z, w, resolution_log2=resolution_log2)
        dwz = pseudodistance(d, w, zeta, resolution_log2=resolution_log2)
        vals = [dz, dzr, dw, dwz]
        if any((not math.isfinite(v)) or v <= 0 for v in vals):
            continue
        r = dz / dzr
        K_sym = max(K_sym, r, 1.0 / r)
        K_tri = max(K_tri, dzr / (dw + dwz))
    return K_sym, K_tri


def check_property_v(d: Domain, samples: int = 100, seed: int = 0,
                     eps_range=(1e-4, 1e-2), bound: float = 64.0,
                     resolution_log2: float = 1.0 / 8.0) -> PropertyReport:
    """Quasi-symmetry and quasi-triangle inequality of the pseudodistance."""
    rng = np.random.default_rng(seed + 29)
    pts = _near_boundary_points(d, 2 * samples, seed)
    eps_lo, eps_hi = eps_range

    def build(count, offset):
        triples = []
        for i in range(count):
            zeta = pts[offset + i]
            eps = math.exp(rng.uniform(math.log(eps_lo), math.log(eps_hi)))
            basis = extremal_basis(d, zeta, eps, seed=seed + i)
            pd = Polydisc(basis, scale=0.5)
            z, w = polydisc_sample(pd, 2, rng)
            # keep the points inside the domain so all four distances make sense
            if d.rho_at(z) >= 0:
                z = zeta
            if d.rho_at(w) >= 0:
                w = zeta
            if np.array_equal(z, zeta) or np.array_equal(w, zeta):
                continue
            triples.append((zeta, z, w))
        return triples

    t_half = build(samples, 0)
    t_full = t_half + build(samples, samples)
    Ks_h, Kt_h = _prop_v_constants(d, t_half, resolution_log2)
    Ks_f, Kt_f = _prop_v_constants(d, t_full, resolution_log2)
    stable = (Ks_f <= 2.0 * Ks_h + 1e-9) and (Kt_f <= 2.0 * Kt_h + 1e-9)
    passed = stable and math.isfinite(Ks_f) and math.isfinite(Kt_f) and max(Ks_f, Kt_f) <= bound
    return PropertyReport(
        property_id="v",
        constants={"K_sym": Ks_f, "K_tri": Kt_f,
                   "K_sym_half_sample": Ks_h, "K_tri_half_sample": Kt_h},
        nsamples=len(t_full),
        seed=seed,
        passed=passed,
        details={"bound": bound},
    )
