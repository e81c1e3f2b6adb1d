# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled single-site heat-bath kernel for the complete-graph color chain.

Semantics are identical to the pure-Python twin in `_heatbath_py`: both
consume the same pre-drawn uniforms in the same order and perform the same
double-precision arithmetic, so the two backends produce bit-identical
chains.
"""

import numpy as np

cimport numpy as cnp


def run_sweeps(cnp.int64_t[::1] colors, cnp.int64_t[::1] counts,
               double[::1] wtable, double[::1] uniforms,
               cnp.int64_t[:, ::1] out):
    """Advance `out.shape[0]` full sweeps, recording the color counts after each.

    colors and counts are updated in place.  wtable[m] is the (unnormalized)
    heat-bath weight of moving a site onto a color currently held by m other
    sites; uniforms supplies one variate per single-site update.
    """
    cdef Py_ssize_t n_sites = colors.shape[0]
    cdef Py_ssize_t q = counts.shape[0]
    cdef Py_ssize_t sweeps = out.shape[0]
    cdef Py_ssize_t s, i, b, pick, idx
    cdef double tot, x, acc

    if uniforms.shape[0] < sweeps * n_sites:
        raise ValueError("not enough uniforms for the requested sweeps")

    idx = 0
    for s in range(sweeps):
        for i in range(n_sites):
            counts[colors[i]] -= 1
            tot = 0.0
            for b in range(q):
                tot += wtable[counts[b]]
            x = uniforms[idx] * tot
            idx += 1
            acc = 0.0
            pick = q - 1
            for b in range(q):
                acc += wtable[counts[b]]
                if x < acc:
                    pick = b
                    break
            counts[pick] += 1
            colors[i] = pick
        for b in range(q):
            out[s, b] = counts[b]
