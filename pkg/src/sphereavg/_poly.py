"""Truncated products of polynomials with sparse factors.

Integer inputs are kept in ``int64`` while a worst-case magnitude bound proves
the products safe, and are promoted to Python-int object arrays otherwise, so
integer results are always exact.
"""

from __future__ import annotations

import numpy as np

_INT64_SAFE = 2**62


def _max_abs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(np.max(np.abs(a)))


def as_exact_ints(a) -> np.ndarray:
    """int64 array when every entry is small enough, object array otherwise."""
    obj = np.asarray(a, dtype=object)
    if obj.size == 0 or _max_abs(obj) < _INT64_SAFE:
        return obj.astype(np.int64)
    return obj


def is_integer_array(a: np.ndarray) -> bool:
    return a.dtype == object or np.issubdtype(a.dtype, np.integer)


def sparse_mul(dense: np.ndarray, terms, limit: int) -> np.ndarray:
    """Multiply by ``sum(c * z**e for e, c in terms)`` and drop degrees > limit.

    ``dense`` has shape (rows, degree + 1); each coefficient ``c`` is either a
    scalar or a length-``rows`` vector so every row is its own polynomial.
    """
    rows = dense.shape[0]
    terms = [(e, c) for e, c in terms if e <= limit]
    integer = is_integer_array(dense) and all(
        is_integer_array(np.asarray(c)) for _, c in terms
    )
    if integer:
        dtype = np.int64
        if dense.dtype == object or any(np.asarray(c).dtype == object for _, c in terms):
            dtype = object
        else:
            bound = _max_abs(dense) * sum(_max_abs(np.asarray(c)) for _, c in terms)
            if bound >= _INT64_SAFE:
                dtype = object
        dense = dense.astype(dtype)
        if dtype == object:
            terms = [(e, np.asarray(c).astype(object)) for e, c in terms]
        else:
            terms = [(e, np.asarray(c).astype(np.int64)) for e, c in terms]
        out = np.zeros((rows, limit + 1), dtype=dtype)
    else:
        dtype = np.result_type(dense.dtype, *[np.asarray(c).dtype for _, c in terms])
        out = np.zeros((rows, limit + 1), dtype=dtype)

    width = dense.shape[1]
    for e, c in terms:
        c = np.asarray(c)
        if c.ndim == 0:
            if c == 0:
                continue
            col = c
        else:
            if not np.any(c):
                continue
            col = c.reshape(rows, 1)
        span = min(width, limit + 1 - e)
        if span <= 0:
            continue
        out[:, e:e + span] += col * dense[:, :span]
    return out
