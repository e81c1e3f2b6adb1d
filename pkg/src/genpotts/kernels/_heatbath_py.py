"""Pure-Python twin of the compiled heat-bath kernel.

Consumes the same uniforms in the same order and performs the same
double-precision arithmetic as `_heatbath.pyx`, so chains are bit-identical
across backends (only slower).  Hot state lives in plain lists.
"""

from __future__ import annotations


def run_sweeps(colors, counts, wtable, uniforms, out):
    n_sites = colors.shape[0]
    q = counts.shape[0]
    sweeps = out.shape[0]
    if uniforms.shape[0] < sweeps * n_sites:
        raise ValueError("not enough uniforms for the requested sweeps")

    col = colors.tolist()
    cnt = counts.tolist()
    tbl = wtable.tolist()
    uni = uniforms.tolist()
    n_colors = range(q)

    idx = 0
    for s in range(sweeps):
        for i in range(n_sites):
            a = col[i]
            cnt[a] -= 1
            tot = 0.0
            for b in n_colors:
                tot += tbl[cnt[b]]
            x = uni[idx] * tot
            idx += 1
            acc = 0.0
            pick = q - 1
            for b in n_colors:
                acc += tbl[cnt[b]]
                if x < acc:
                    pick = b
                    break
            cnt[pick] += 1
            col[i] = pick
        out[s] = cnt

    colors[:] = col
    counts[:] = cnt
