"""Hot loops: sliding-window rule application and table composition.

Two implementations live here. The numba one is used by default; setting
OMEGALIB_NO_NUMBA=1 (or a missing numba) selects the pure-numpy one. Both
return identical arrays.
"""

import os

import numpy as np

_disabled = os.environ.get("OMEGALIB_NO_NUMBA", "").strip() not in ("", "0")

try:
    if _disabled:
        raise ImportError
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def _window_codes_np(word, d, q):
    n = word.shape[0] - d + 1
    codes = np.zeros(n, dtype=np.int64)
    for j in range(d):
        codes = codes * q + word[j:j + n]
    return codes


def _apply_rule_np(table, word, d, q):
    word = np.asarray(word, dtype=np.int64)
    if word.shape[0] < d:
        return np.zeros(0, dtype=np.int64)
    return table[_window_codes_np(word, d, q)].astype(np.int64)


def _compose_table_np(outer, d1, inner, d2, q):
    D = d1 + d2 - 1
    # every window of length D, one row each, lexicographic
    idx = np.arange(q ** D, dtype=np.int64)
    digits = np.empty((q ** D, D), dtype=np.int64)
    for j in range(D - 1, -1, -1):
        digits[:, j] = idx % q
        idx //= q
    mid = np.zeros((digits.shape[0], d1), dtype=np.int64)
    for s in range(d1):
        code = np.zeros(digits.shape[0], dtype=np.int64)
        for j in range(d2):
            code = code * q + digits[:, s + j]
        mid[:, s] = inner[code]
    code = np.zeros(digits.shape[0], dtype=np.int64)
    for s in range(d1):
        code = code * q + mid[:, s]
    return outer[code].astype(np.int64)


if HAVE_NUMBA:

    @njit(cache=True)
    def _apply_rule_nb(table, word, d, q):
        n = word.shape[0] - d + 1
        if n <= 0:
            return np.zeros(0, dtype=np.int64)
        out = np.empty(n, dtype=np.int64)
        top = 1
        for _ in range(d - 1):
            top *= q
        code = 0
        for j in range(d - 1):
            code = code * q + word[j]
        for i in range(n):
            code = code * q + word[i + d - 1]
            out[i] = table[code]
            code -= word[i] * top
        return out

    @njit(cache=True)
    def _compose_table_nb(outer, d1, inner, d2, q):
        D = d1 + d2 - 1
        size = 1
        for _ in range(D):
            size *= q
        out = np.empty(size, dtype=np.int64)
        digits = np.zeros(D, dtype=np.int64)
        mid = np.zeros(d1, dtype=np.int64)
        for idx in range(size):
            r = idx
            for j in range(D - 1, -1, -1):
                digits[j] = r % q
                r //= q
            for s in range(d1):
                c = 0
                for j in range(d2):
                    c = c * q + digits[s + j]
                mid[s] = inner[c]
            c = 0
            for s in range(d1):
                c = c * q + mid[s]
            out[idx] = outer[c]
        return out

    def apply_rule(table, word, d, q):
        return _apply_rule_nb(np.asarray(table, dtype=np.int64), np.asarray(word, dtype=np.int64), d, q)

    def compose_table(outer, d1, inner, d2, q):
        return _compose_table_nb(np.asarray(outer, dtype=np.int64), d1,
                                 np.asarray(inner, dtype=np.int64), d2, q)

    BACKEND = "numba"
else:
    apply_rule = _apply_rule_np
    compose_table = _compose_table_np
    BACKEND = "numpy"


def window_codes(word, d, q):
    return _window_codes_np(np.asarray(word, dtype=np.int64), d, q)
