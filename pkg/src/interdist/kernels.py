"""Hot integer kernels, each with a numba and a pure-numpy implementation.

The public functions dispatch on :data:`interdist._accel.HAVE_NUMBA`.  Both paths must
return identical arrays; ``tests/test_kernels.py`` and ``benchmarks/bench_kernels.py``
exercise them side by side through :func:`implementations`.
"""

from __future__ import annotations

import itertools

import numpy as np

from ._accel import HAVE_NUMBA, njit

# -- line hits of a value table ----------------------------------------------------------


def _line_hits_loop(fvals, sub, mul):
    q = fvals.shape[0]
    rows = mul.shape[0]
    hits = np.zeros((rows, q), np.int32)
    for a in range(rows):
        for x in range(q):
            hits[a, sub[fvals[x], mul[a, x]]] += 1
    return hits


def _line_hits_np(fvals, sub, mul):
    q = fvals.shape[0]
    rows = mul.shape[0]
    resid = sub[fvals[None, :], mul]  # resid[a, x] = f(x) - a*x
    idx = resid + (q * np.arange(rows, dtype=np.int64))[:, None]
    return np.bincount(idx.ravel(), minlength=rows * q).reshape(rows, q).astype(np.int32)


# -- per-line intersection counts of one set ------------------------------------------


def _line_counts_loop(member, line_pts):
    n_lines, k = line_pts.shape
    out = np.zeros(n_lines, np.int32)
    for l in range(n_lines):
        c = 0
        for j in range(k):
            c += member[line_pts[l, j]]
        out[l] = c
    return out


def _line_counts_np(member, line_pts):
    return member[line_pts].sum(axis=1).astype(np.int32)


# -- batched distributions of many equal-size sets -------------------------------------


def _batch_hist_loop(sets, point_lines, n_lines, width):
    b, k = sets.shape
    r = point_lines.shape[1]
    out = np.zeros((b, width), np.int32)
    counts = np.zeros(n_lines, np.int32)
    for i in range(b):
        counts[:] = 0
        for j in range(k):
            pt = sets[i, j]
            for t in range(r):
                counts[point_lines[pt, t]] += 1
        for l in range(n_lines):
            out[i, counts[l]] += 1
    return out


def _batch_hist_np(sets, point_lines, n_lines, width):
    b = sets.shape[0]
    out = np.zeros((b, width), np.int32)
    chunk = 1 << 14
    for lo in range(0, b, chunk):
        s = sets[lo : lo + chunk]
        lines = point_lines[s].reshape(s.shape[0], -1)
        off = (n_lines * np.arange(s.shape[0], dtype=np.int64))[:, None]
        counts = np.bincount((lines + off).ravel(), minlength=s.shape[0] * n_lines)
        counts = counts.reshape(s.shape[0], n_lines)
        off2 = (width * np.arange(s.shape[0], dtype=np.int64))[:, None]
        out[lo : lo + chunk] = np.bincount(
            (counts + off2).ravel(), minlength=s.shape[0] * width
        ).reshape(s.shape[0], width)
    return out


def _batch_u0_loop(sets, point_lines, n_lines):
    b, k = sets.shape
    r = point_lines.shape[1]
    out = np.zeros(b, np.int32)
    seen = np.zeros(n_lines, np.int64)
    for i in range(b):
        stamp = i + 1
        touched = 0
        for j in range(k):
            pt = sets[i, j]
            for t in range(r):
                l = point_lines[pt, t]
                if seen[l] != stamp:
                    seen[l] = stamp
                    touched += 1
        out[i] = n_lines - touched
    return out


def _batch_u0_np(sets, point_lines, n_lines):
    return _batch_hist_np(sets, point_lines, n_lines, sets.shape[1] + 1)[:, 0]


# -- exhaustive enumeration of k-subsets ------------------------------------------------


def _exhaustive_loop(n_points, k, point_lines, n_lines):
    """Depth-first over k-subsets in lexicographic order; first witness per u0."""
    r = point_lines.shape[1]
    found = np.zeros(n_lines + 1, np.bool_)
    witness = np.full((n_lines + 1, k), -1, np.int32)
    counts = np.zeros(n_lines, np.int32)
    combo = np.zeros(k, np.int32)
    nxt = np.zeros(k, np.int32)
    placed = np.zeros(k, np.bool_)
    touched = 0
    depth = 0
    while depth >= 0:
        if placed[depth]:
            pt = combo[depth]
            for t in range(r):
                l = point_lines[pt, t]
                counts[l] -= 1
                if counts[l] == 0:
                    touched -= 1
            placed[depth] = False
        c = nxt[depth]
        if c > n_points - (k - depth):
            depth -= 1
            continue
        combo[depth] = c
        nxt[depth] = c + 1
        for t in range(r):
            l = point_lines[c, t]
            if counts[l] == 0:
                touched += 1
            counts[l] += 1
        placed[depth] = True
        if depth == k - 1:
            u0 = n_lines - touched
            if not found[u0]:
                found[u0] = True
                witness[u0, :] = combo
        else:
            depth += 1
            nxt[depth] = c + 1
            placed[depth] = False
    return found, witness


def _exhaustive_np(n_points, k, point_lines, n_lines):
    found = np.zeros(n_lines + 1, np.bool_)
    witness = np.full((n_lines + 1, k), -1, np.int32)
    combos = itertools.combinations(range(n_points), k)
    chunk = 1 << 15
    while True:
        block = np.fromiter(
            itertools.chain.from_iterable(itertools.islice(combos, chunk)), np.int32
        )
        if block.size == 0:
            break
        block = block.reshape(-1, k)
        u0 = _batch_u0_np(block, point_lines, n_lines)
        vals, first = np.unique(u0, return_index=True)
        for v, i in zip(vals, first):
            if not found[v]:
                found[v] = True
                witness[v] = block[i]
    return found, witness


# -- dispatch -----------------------------------------------------------------------------

_LOOPS = {
    "line_hits": _line_hits_loop,
    "line_counts": _line_counts_loop,
    "batch_hist": _batch_hist_loop,
    "batch_u0": _batch_u0_loop,
    "exhaustive": _exhaustive_loop,
}
_NUMPY = {
    "line_hits": _line_hits_np,
    "line_counts": _line_counts_np,
    "batch_hist": _batch_hist_np,
    "batch_u0": _batch_u0_np,
    "exhaustive": _exhaustive_np,
}
_NUMBA = {}
if HAVE_NUMBA:
    _NUMBA = {name: njit(cache=True, nogil=True)(fn) for name, fn in _LOOPS.items()}


def implementations(name: str) -> dict:
    """Map backend name to callable for kernel ``name`` (numba only when available)."""
    out = {"numpy": _NUMPY[name]}
    if name in _NUMBA:
        out["numba"] = _NUMBA[name]
    return out


def _pick(name):
    return _NUMBA[name] if HAVE_NUMBA else _NUMPY[name]


def line_hits(fvals, sub, mul) -> np.ndarray:
    """``hits[a, b]`` = number of x with f(x) = a*x + b, from value and field tables.

    Passing a row slice ``mul[lo:hi]`` yields the rows for slopes lo..hi-1 only.
    """
    return _pick("line_hits")(
        np.ascontiguousarray(fvals, np.int32),
        np.ascontiguousarray(sub, np.int32),
        np.ascontiguousarray(mul, np.int32),
    )


def line_counts(member, line_pts) -> np.ndarray:
    """Per-line size of a point set given as a 0/1 membership vector."""
    return _pick("line_counts")(
        np.ascontiguousarray(member, np.int32), np.ascontiguousarray(line_pts, np.int32)
    )


def batch_hist(sets, point_lines, n_lines: int, width: int) -> np.ndarray:
    """Row i is the intersection histogram of point-index row ``sets[i]``."""
    return _pick("batch_hist")(
        np.ascontiguousarray(sets, np.int32),
        np.ascontiguousarray(point_lines, np.int32),
        n_lines,
        width,
    )


def batch_u0(sets, point_lines, n_lines: int) -> np.ndarray:
    """Number of lines missing each set (rows of ``sets`` are distinct point indices)."""
    return _pick("batch_u0")(
        np.ascontiguousarray(sets, np.int32),
        np.ascontiguousarray(point_lines, np.int32),
        n_lines,
    )


def exhaustive(n_points: int, k: int, point_lines, n_lines: int):
    """All attainable u0 over k-subsets of the first ``n_points`` points.

    Returns ``(found, witness)``: boolean mask over 0..n_lines and the
    lexicographically first subset reaching each value.
    """
    return _pick("exhaustive")(
        n_points, k, np.ascontiguousarray(point_lines, np.int32), n_lines
    )
