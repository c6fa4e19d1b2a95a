"""Hot kernels: mod-p elimination and whole-algebra enumeration.

Every kernel exists twice, as a numba ``@njit`` loop and as a vectorised
numpy routine.  ``SEMILOC_NUMBA=0`` in the environment (or a missing numba)
selects the numpy path; both paths return identical results.

Elements of an ``n``-dimensional algebra over GF(p) are enumerated by an
index in ``range(p**n)`` whose base-p digits, most significant first, are the
coordinates.  Index order is therefore lexicographic order on coordinates.
"""

import os
from types import SimpleNamespace

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba ships with the sandbox
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("SEMILOC_NUMBA", "1").lower() not in (
    "0",
    "off",
    "false",
    "no",
)

# chunk length for the numpy batch paths; bounds peak memory
_CHUNK = 4096


def inverse_table(p):
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, p - 2, p)
    return inv


def decode_indices(indices, n, p):
    """Coordinates (rows) of the elements with the given enumeration indices."""
    indices = np.asarray(indices, dtype=np.int64)
    powers = p ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return (indices[:, None] // powers[None, :]) % p


def encode_coords(coords, p):
    coords = np.asarray(coords, dtype=np.int64)
    n = coords.shape[-1]
    powers = p ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return coords @ powers


# ---------------------------------------------------------------- numpy path


def _rref_np(a, p):
    """Row reduce ``a`` in place; return (rank, pivot columns)."""
    inv = inverse_table(p)
    rows, cols = a.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * inv[a[r, c]]) % p
        f = a[:, c].copy()
        f[r] = 0
        if f.any():
            a -= np.outer(f, a[r])
            a %= p
        pivots.append(c)
        r += 1
    return r, np.array(pivots, dtype=np.int64)


def _batch_full_rank_np(mats, p):
    """Full-rank flag for each square matrix in the stack ``mats`` (modified)."""
    inv = inverse_table(p)
    count, d, _ = mats.shape
    alive = np.ones(count, dtype=bool)
    idx = np.arange(count)
    for c in range(d):
        live = idx[alive]
        if live.size == 0:
            break
        sub = mats[live, c:, c] != 0
        has = sub.any(axis=1)
        alive[live[~has]] = False
        live = live[has]
        if live.size == 0:
            break
        piv = c + np.argmax(mats[live, c:, c] != 0, axis=1)
        rows_c = mats[live, c, :].copy()
        mats[live, c, :] = mats[live, piv, :]
        mats[live, piv, :] = rows_c
        scale = inv[mats[live, c, c]]
        mats[live, c, :] = (mats[live, c, :] * scale[:, None]) % p
        f = mats[live, :, c].copy()
        f[:, c] = 0
        mats[live] = (mats[live] - f[:, :, None] * mats[live, c, :][:, None, :]) % p
    return alive


def _unit_flags_coords_np(coords, lstack, p):
    coords = np.asarray(coords, dtype=np.int64)
    out = np.empty(coords.shape[0], dtype=bool)
    for s in range(0, coords.shape[0], _CHUNK):
        block = coords[s : s + _CHUNK]
        mats = np.einsum("nk,kij->nij", block, lstack) % p
        out[s : s + _CHUNK] = _batch_full_rank_np(mats, p)
    return out


def _unit_flags_range_np(n, p, lstack):
    total = p**n
    out = np.empty(total, dtype=bool)
    for s in range(0, total, _CHUNK):
        idx = np.arange(s, min(total, s + _CHUNK), dtype=np.int64)
        out[s : s + idx.size] = _unit_flags_coords_np(decode_indices(idx, n, p), lstack, p)
    return out


def _qr_search_np(n, p, rstack, one, units):
    """Spanning search for {x : 1 - a x is a unit for every a}."""
    total = p**n
    in_span = np.zeros(total, dtype=bool)
    in_span[0] = True
    span_codes = np.array([0], dtype=np.int64)
    basis = []
    powers = p ** np.arange(n - 1, -1, -1, dtype=np.int64)
    probe = np.vstack([np.eye(n, dtype=np.int64), one[None, :]])
    for idx in range(1, total):
        if in_span[idx]:
            continue
        x = decode_indices(np.array([idx]), n, p)[0]
        rx = np.einsum("j,ijk->ik", x, rstack) % p
        ys = (one[None, :] - probe @ rx) % p
        if not units[ys @ powers].all():
            continue
        ok = True
        for s in range(0, total, _CHUNK):
            a = decode_indices(np.arange(s, min(total, s + _CHUNK)), n, p)
            ys = (one[None, :] - a @ rx) % p
            if not units[ys @ powers].all():
                ok = False
                break
        if not ok:
            continue
        basis.append(x)
        code_x = int(x @ powers)
        span_coords = decode_indices(span_codes, n, p)
        new = [((span_coords + c * x) % p) @ powers for c in range(1, p)]
        span_codes = np.concatenate([span_codes] + new)
        in_span[span_codes] = True
        assert in_span[code_x]
    if not basis:
        return np.zeros((0, n), dtype=np.int64)
    return np.array(basis, dtype=np.int64)


numpy_kernels = SimpleNamespace(
    rref_inplace=_rref_np,
    unit_flags_coords=_unit_flags_coords_np,
    unit_flags_range=_unit_flags_range_np,
    quasi_regular_search=_qr_search_np,
)

# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:
    njit = numba.njit(cache=True, nogil=True)

    @njit
    def _inv_table_nb(p):
        inv = np.zeros(p, dtype=np.int64)
        for x in range(1, p):
            r = 1
            b = x
            e = p - 2
            while e > 0:
                if e & 1:
                    r = r * b % p
                b = b * b % p
                e >>= 1
            inv[x] = r
        return inv

    @njit
    def _rref_nb(a, p):
        inv = _inv_table_nb(p)
        rows, cols = a.shape
        pivots = np.empty(min(rows, cols), dtype=np.int64)
        r = 0
        for c in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(cols):
                    t = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = t
            s = inv[a[r, c]]
            if s != 1:
                for j in range(c, cols):
                    a[r, j] = a[r, j] * s % p
            for i in range(rows):
                if i != r:
                    f = a[i, c]
                    if f != 0:
                        for j in range(c, cols):
                            a[i, j] = (a[i, j] - f * a[r, j]) % p
            pivots[r] = c
            r += 1
        return r, pivots[:r].copy()

    @njit
    def _full_rank_nb(m, p, inv):
        d = m.shape[0]
        for c in range(d):
            piv = -1
            for i in range(c, d):
                if m[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                return False
            if piv != c:
                for j in range(c, d):
                    t = m[c, j]
                    m[c, j] = m[piv, j]
                    m[piv, j] = t
            s = inv[m[c, c]]
            for i in range(c + 1, d):
                f = m[i, c] * s % p
                if f != 0:
                    for j in range(c, d):
                        m[i, j] = (m[i, j] - f * m[c, j]) % p
        return True

    @njit
    def _combine_nb(x, lstack, p, out):
        n = x.shape[0]
        d = lstack.shape[1]
        for i in range(d):
            for j in range(d):
                out[i, j] = 0
        for k in range(n):
            c = x[k]
            if c != 0:
                for i in range(d):
                    for j in range(d):
                        out[i, j] += c * lstack[k, i, j]
        for i in range(d):
            for j in range(d):
                out[i, j] %= p

    @njit
    def _unit_flags_coords_nb(coords, lstack, p):
        inv = _inv_table_nb(p)
        count = coords.shape[0]
        d = lstack.shape[1]
        out = np.empty(count, dtype=np.bool_)
        work = np.empty((d, d), dtype=np.int64)
        for t in range(count):
            _combine_nb(coords[t], lstack, p, work)
            out[t] = _full_rank_nb(work, p, inv)
        return out

    @njit
    def _decode_nb(idx, n, p, out):
        for k in range(n - 1, -1, -1):
            out[k] = idx % p
            idx //= p

    @njit
    def _unit_flags_range_nb(n, p, lstack):
        inv = _inv_table_nb(p)
        total = p**n
        d = lstack.shape[1]
        out = np.empty(total, dtype=np.bool_)
        work = np.empty((d, d), dtype=np.int64)
        x = np.empty(n, dtype=np.int64)
        for t in range(total):
            _decode_nb(t, n, p, x)
            _combine_nb(x, lstack, p, work)
            out[t] = _full_rank_nb(work, p, inv)
        return out

    @njit
    def _qr_ok_nb(a, rx, one, units, p, n, y):
        # is 1 - a x a unit, with a x computed as the row vector a @ rx
        code = 0
        for k in range(n):
            s = 0
            for i in range(n):
                if a[i] != 0:
                    s += a[i] * rx[i, k]
            y[k] = (one[k] - s) % p
            code = code * p + y[k]
        return units[code]

    @njit
    def _qr_search_nb(n, p, rstack, one, units):
        total = p**n
        in_span = np.zeros(total, dtype=np.bool_)
        in_span[0] = True
        span_codes = np.zeros(total, dtype=np.int64)
        span_len = 1
        basis = np.zeros((n, n), dtype=np.int64)
        nb = 0
        x = np.empty(n, dtype=np.int64)
        a = np.empty(n, dtype=np.int64)
        y = np.empty(n, dtype=np.int64)
        s_coords = np.empty(n, dtype=np.int64)
        rx = np.empty((n, n), dtype=np.int64)
        for idx in range(1, total):
            if in_span[idx]:
                continue
            _decode_nb(idx, n, p, x)
            _combine_nb(x, rstack, p, rx)
            ok = _qr_ok_nb(one, rx, one, units, p, n, y)
            if ok:
                for i in range(n):
                    for k in range(n):
                        a[k] = 1 if k == i else 0
                    if not _qr_ok_nb(a, rx, one, units, p, n, y):
                        ok = False
                        break
            if ok:
                for t in range(total):
                    _decode_nb(t, n, p, a)
                    if not _qr_ok_nb(a, rx, one, units, p, n, y):
                        ok = False
                        break
            if not ok:
                continue
            for k in range(n):
                basis[nb, k] = x[k]
            nb += 1
            old_len = span_len
            for s in range(old_len):
                _decode_nb(span_codes[s], n, p, s_coords)
                for c in range(1, p):
                    code = 0
                    for k in range(n):
                        code = code * p + (s_coords[k] + c * x[k]) % p
                    span_codes[span_len] = code
                    span_len += 1
                    in_span[code] = True
        return basis[:nb].copy()

    numba_kernels = SimpleNamespace(
        rref_inplace=_rref_nb,
        unit_flags_coords=_unit_flags_coords_nb,
        unit_flags_range=_unit_flags_range_nb,
        quasi_regular_search=_qr_search_nb,
    )
else:  # pragma: no cover
    numba_kernels = None

active = numba_kernels if USE_NUMBA else numpy_kernels
BACKEND = "numba" if USE_NUMBA else "numpy"


def rref_inplace(a, p):
    return active.rref_inplace(a, p)


def unit_flags_coords(coords, lstack, p):
    """For each coordinate row x, is sum_k x_k lstack[k] invertible mod p."""
    coords = np.ascontiguousarray(coords, dtype=np.int64)
    lstack = np.ascontiguousarray(lstack, dtype=np.int64)
    if coords.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    if lstack.shape[1] == 0:
        # the zero ring: its only element is a unit
        return np.ones(coords.shape[0], dtype=bool)
    return np.asarray(active.unit_flags_coords(coords, lstack, p), dtype=bool)


def unit_flags_range(n, p, lstack):
    """Unit flags for every element of an n-dimensional algebra, in index order."""
    lstack = np.ascontiguousarray(lstack, dtype=np.int64)
    if n == 0:
        return np.ones(1, dtype=bool)
    return np.asarray(active.unit_flags_range(n, p, lstack), dtype=bool)


def quasi_regular_search(n, p, rstack, one, units):
    """Basis of {x : 1 - a x unit for all a}, found in lexicographic order."""
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    return np.asarray(
        active.quasi_regular_search(
            n,
            p,
            np.ascontiguousarray(rstack, dtype=np.int64),
            np.ascontiguousarray(one, dtype=np.int64),
            np.ascontiguousarray(units, dtype=np.bool_),
        ),
        dtype=np.int64,
    )
