"""Pure-Python reference kernels; the Cython module mirrors these exactly.

Words are given as parallel integer lists: vertex indices ``vids`` and
element payloads ``vals`` for cyclic vertex groups. ``moduli[v]`` is the
group order at vertex ``v`` (0 for Z) and ``adj[v]`` the neighbor bitmask.
"""


def reduce_cyclic(adj, moduli, vids, vals):
    """Geodesic, shortlex-canonical form of a word over cyclic vertex groups."""
    out_v = []
    out_x = []
    for v, x in zip(vids, vals):
        m = moduli[v]
        if m:
            x %= m
        if x == 0:
            continue
        nbrs = adj[v]
        k = len(out_v) - 1
        merged = False
        while k >= 0:
            u = out_v[k]
            if u == v:
                y = out_x[k] + x
                if m:
                    y %= m
                if y == 0:
                    del out_v[k]
                    del out_x[k]
                else:
                    out_x[k] = y
                merged = True
                break
            if not (nbrs >> u) & 1:
                break
            k -= 1
        if not merged:
            out_v.append(v)
            out_x.append(x)
    _shortlex(adj, out_v, out_x)
    return out_v, out_x


def _shortlex(adj, vs, xs):
    n = len(vs)
    for pos in range(n):
        best = -1
        seen = 0
        for j in range(pos, n):
            u = vs[j]
            if seen & ~adj[u] == 0 and (best < 0 or u < vs[best]):
                best = j
            seen |= 1 << u
        if best != pos:
            v = vs.pop(best)
            x = xs.pop(best)
            vs.insert(pos, v)
            xs.insert(pos, x)
