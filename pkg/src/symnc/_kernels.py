"""Hot inner loops.

Every kernel exists twice: a loop version compiled with ``numba.njit`` and a
vectorized numpy version.  ``_config.USE_NUMBA`` picks which one the public
names point to; both are importable for tests and benchmarks.
"""
from functools import lru_cache
from math import comb

import numpy as np

from ._config import USE_NUMBA, HAVE_NUMBA

if HAVE_NUMBA:
    from numba import njit
else:  # pragma: no cover
    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda f: f


_PHASES = np.array([1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j])


@lru_cache(maxsize=None)
def binom_table(nmax):
    """Pascal triangle as float64, ``table[n, k] = C(n, k)`` (0 outside range)."""
    table = np.zeros((nmax + 1, nmax + 1))
    for n in range(nmax + 1):
        for k in range(n + 1):
            table[n, k] = comb(n, k)
    table.setflags(write=False)
    return table


# ---------------------------------------------------------------------------
# S-matrix from occupation counts (strings grouped by per-block weight)
# ---------------------------------------------------------------------------

def _smatrix_counts_loop(n0, n1, n2, n3, binom):
    n = n0 + n1 + n2 + n3
    out = np.zeros((n + 1, n + 1), dtype=np.complex128)
    for kin in range(n + 1):
        for j1 in range(n1 + 1):
            for j2 in range(n2 + 1):
                for j3 in range(n3 + 1):
                    j0 = kin - j1 - j2 - j3
                    if j0 < 0 or j0 > n0:
                        continue
                    mult = binom[n0, j0] * binom[n1, j1] * binom[n2, j2] * binom[n3, j3]
                    kout = j0 + (n1 - j1) + (n2 - j2) + j3
                    if (j2 + j3) % 2 == 1:
                        mult = -mult
                    out[kout, kin] += mult
    phase = _PHASES[n2 % 4]
    for k in range(n + 1):
        for kp in range(n + 1):
            if out[k, kp] != 0:
                out[k, kp] = phase * out[k, kp] / np.sqrt(binom[n, k] * binom[n, kp])
    return out


def _smatrix_counts_np(n0, n1, n2, n3, binom):
    n = n0 + n1 + n2 + n3
    j1, j2, j3 = np.meshgrid(np.arange(n1 + 1), np.arange(n2 + 1), np.arange(n3 + 1),
                             indexing="ij")
    j1, j2, j3 = j1.ravel(), j2.ravel(), j3.ravel()
    kin = np.arange(n + 1)[:, None]
    j0 = kin - (j1 + j2 + j3)[None, :]
    valid = (j0 >= 0) & (j0 <= n0)
    j0c = np.clip(j0, 0, n0)
    mult = binom[n0, j0c] * (binom[n1, j1] * binom[n2, j2] * binom[n3, j3])[None, :]
    mult = np.where(valid, mult, 0.0) * np.where((j2 + j3) % 2 == 1, -1.0, 1.0)[None, :]
    kout = j0c + (n1 - j1 + n2 - j2 + j3)[None, :]
    kin_b = np.broadcast_to(kin, kout.shape)
    acc = np.zeros((n + 1) * (n + 1))
    np.add.at(acc, (kout * (n + 1) + kin_b)[valid], mult[valid])
    out = acc.reshape(n + 1, n + 1).astype(np.complex128)
    row = binom[n, : n + 1]
    out *= _PHASES[n2 % 4] / np.sqrt(np.outer(row, row))
    return out


# ---------------------------------------------------------------------------
# S-matrix from an ordered index tuple (literal sum over 2^N basis strings)
# ---------------------------------------------------------------------------

def _smatrix_strings_loop(mus, binom):
    n = mus.shape[0]
    flip = 0
    sign_mask = 0
    ny = 0
    for p in range(n):
        bit = 1 << (n - 1 - p)
        mu = mus[p]
        if mu == 1 or mu == 2:
            flip |= bit
        if mu == 2 or mu == 3:
            sign_mask |= bit
        if mu == 2:
            ny += 1
    acc = np.zeros((n + 1, n + 1))
    for s in range(1 << n):
        kin = 0
        x = s
        while x:
            x &= x - 1
            kin += 1
        t = s ^ flip
        kout = 0
        x = t
        while x:
            x &= x - 1
            kout += 1
        par = 0
        x = s & sign_mask
        while x:
            x &= x - 1
            par ^= 1
        acc[kout, kin] += -1.0 if par else 1.0
    out = np.zeros((n + 1, n + 1), dtype=np.complex128)
    phase = _PHASES[ny % 4]
    for k in range(n + 1):
        for kp in range(n + 1):
            out[k, kp] = phase * acc[k, kp] / np.sqrt(binom[n, k] * binom[n, kp])
    return out


def _smatrix_strings_np(mus, binom):
    mus = np.asarray(mus)
    n = mus.shape[0]
    weights = 1 << (n - 1 - np.arange(n))
    flip = int(weights[(mus == 1) | (mus == 2)].sum())
    sign_mask = int(weights[(mus == 2) | (mus == 3)].sum())
    ny = int((mus == 2).sum())
    s = np.arange(1 << n, dtype=np.uint64)
    kin = np.bitwise_count(s).astype(np.int64)
    kout = np.bitwise_count(s ^ np.uint64(flip)).astype(np.int64)
    sign = 1.0 - 2.0 * (np.bitwise_count(s & np.uint64(sign_mask)) % 2)
    acc = np.bincount(kout * (n + 1) + kin, weights=sign, minlength=(n + 1) ** 2)
    out = acc.reshape(n + 1, n + 1).astype(np.complex128)
    row = binom[n, : n + 1]
    out *= _PHASES[ny % 4] / np.sqrt(np.outer(row, row))
    return out


# ---------------------------------------------------------------------------
# Coherent-state overlap <n|rho|n> on a latitude-longitude mesh
# ---------------------------------------------------------------------------

def _overlap_point_loop(rho, theta, phi, sqrtb):
    d = rho.shape[0]
    n = d - 1
    s = np.sin(0.5 * theta)
    c = np.cos(0.5 * theta)
    amps = np.empty(d, dtype=np.complex128)
    for k in range(d):
        amps[k] = sqrtb[k] * s ** k * c ** (n - k) * np.exp(-1j * (n - k) * phi)
    acc = 0.0
    for k in range(d):
        row = 0.0 + 0.0j
        for l in range(d):
            row += rho[k, l] * amps[l]
        acc += (np.conj(amps[k]) * row).real
    return acc


def _overlap_mesh_loop(rho, thetas, phis, sqrtb):
    # for fixed theta, <n|rho|n> = g_0 + 2 Re sum_{d>0} g_d e^{i d phi}
    # with g_d = sum_k mag_k mag_{k+d} rho[k, k+d]
    d = rho.shape[0]
    n = d - 1
    nt = thetas.shape[0]
    nphi = phis.shape[0]
    out = np.empty((nt, nphi))
    mag = np.empty(d)
    g = np.empty(d, dtype=np.complex128)
    wave = np.empty((nphi, d), dtype=np.complex128)
    for j in range(nphi):
        for m in range(d):
            wave[j, m] = np.exp(1j * m * phis[j])
    for i in range(nt):
        s = np.sin(0.5 * thetas[i])
        c = np.cos(0.5 * thetas[i])
        for k in range(d):
            mag[k] = sqrtb[k] * s ** k * c ** (n - k)
        for m in range(d):
            acc = 0.0 + 0.0j
            for k in range(d - m):
                acc += mag[k] * mag[k + m] * rho[k, k + m]
            g[m] = acc
        for j in range(nphi):
            val = g[0].real
            for m in range(1, d):
                val += 2.0 * (g[m] * wave[j, m]).real
            out[i, j] = val
    return out


def _overlap_mesh_np(rho, thetas, phis, sqrtb):
    d = rho.shape[0]
    n = d - 1
    k = np.arange(d)
    s = np.sin(0.5 * thetas)[:, None]
    c = np.cos(0.5 * thetas)[:, None]
    mag = sqrtb[None, :] * s ** k * c ** (n - k)
    weighted = mag[:, :, None] * mag[:, None, :] * rho[None, :, :]
    g = np.stack([np.trace(weighted, offset=m, axis1=1, axis2=2) for m in range(d)], axis=1)
    g[:, 1:] *= 2.0
    wave = np.exp(1j * np.outer(phis, k))
    return (g @ wave.T).real


def _overlap_point_np(rho, theta, phi, sqrtb):
    return float(_overlap_mesh_np(rho, np.array([theta]), np.array([phi]), sqrtb)[0, 0])


# ---------------------------------------------------------------------------
# Coordinate-wise quadratic polish of mesh maxima
# ---------------------------------------------------------------------------

def _make_refine(point):
    def refine(rho, sqrtb, starts, h_theta, h_phi, rounds):
        m = starts.shape[0]
        values = np.empty(m)
        best = np.empty((m, 2))
        for s in range(m):
            x = np.array([starts[s, 0], starts[s, 1]])
            h = np.array([h_theta, h_phi])
            f0 = point(rho, x[0], x[1], sqrtb)
            for _ in range(rounds):
                for ax in range(2):
                    xm = x.copy()
                    xm[ax] -= h[ax]
                    xp = x.copy()
                    xp[ax] += h[ax]
                    fm = point(rho, xm[0], xm[1], sqrtb)
                    fp = point(rho, xp[0], xp[1], sqrtb)
                    cand = x.copy()
                    fc = f0
                    moved_edge = False
                    if fm > fc:
                        cand = xm
                        fc = fm
                        moved_edge = True
                    if fp > fc:
                        cand = xp
                        fc = fp
                        moved_edge = True
                    curv = fp - 2.0 * f0 + fm
                    if curv < 0.0:
                        step = 0.5 * h[ax] * (fm - fp) / curv
                        if step > h[ax]:
                            step = h[ax]
                        elif step < -h[ax]:
                            step = -h[ax]
                        xv = x.copy()
                        xv[ax] += step
                        fv = point(rho, xv[0], xv[1], sqrtb)
                        if fv > fc:
                            cand = xv
                            fc = fv
                            moved_edge = False
                    x = cand
                    f0 = fc
                    if not moved_edge:
                        h[ax] *= 0.5
            values[s] = f0
            best[s, 0] = x[0]
            best[s, 1] = x[1]
        return values, best

    return refine


_refine_np = _make_refine(_overlap_point_np)

if HAVE_NUMBA:
    smatrix_counts_nb = njit(cache=True)(_smatrix_counts_loop)
    smatrix_strings_nb = njit(cache=True)(_smatrix_strings_loop)
    overlap_mesh_nb = njit(cache=True)(_overlap_mesh_loop)
    _overlap_point_nb = njit(cache=True)(_overlap_point_loop)
    refine_nb = njit(cache=True)(_make_refine(_overlap_point_nb))
else:  # pragma: no cover
    smatrix_counts_nb = _smatrix_counts_loop
    smatrix_strings_nb = _smatrix_strings_loop
    overlap_mesh_nb = _overlap_mesh_loop
    refine_nb = _make_refine(_overlap_point_loop)

NUMBA_KERNELS = {
    "smatrix_counts": smatrix_counts_nb,
    "smatrix_strings": smatrix_strings_nb,
    "overlap_mesh": overlap_mesh_nb,
    "refine": refine_nb,
}
NUMPY_KERNELS = {
    "smatrix_counts": _smatrix_counts_np,
    "smatrix_strings": _smatrix_strings_np,
    "overlap_mesh": _overlap_mesh_np,
    "refine": _refine_np,
}

_active = NUMBA_KERNELS if USE_NUMBA else NUMPY_KERNELS
smatrix_counts = _active["smatrix_counts"]
smatrix_strings = _active["smatrix_strings"]
overlap_mesh = _active["overlap_mesh"]
refine_maxima = _active["refine"]
