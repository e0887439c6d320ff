"""Time word reduction with the compiled kernel against the pure-Python one.

    python benchmarks/bench_reduce.py --words 2000 --length 60
"""
import argparse
import random
import timeit

from graphprod import _pykernels
from graphprod.graph import DefiningGraph

try:
    from graphprod import _ckernels
except ImportError:
    _ckernels = None


def corpus(n_vertices: int, n_words: int, length: int, seed: int):
    rng = random.Random(seed)
    names = [f"v{i}" for i in range(n_vertices)]
    edges = [(u, v) for i, u in enumerate(names) for v in names[i + 1:] if rng.random() < 0.4]
    graph = DefiningGraph(names, edges, {v: "Z" for v in names})
    adj = list(graph._adj_mask)
    moduli = [0] * n_vertices
    words = []
    for _ in range(n_words):
        vids = [rng.randrange(n_vertices) for _ in range(length)]
        vals = [rng.choice((-2, -1, 1, 2)) for _ in range(length)]
        words.append((vids, vals))
    return adj, moduli, words


def run(kernel, adj, moduli, words):
    for vids, vals in words:
        kernel.reduce_cyclic(adj, moduli, vids, vals)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--vertices", type=int, default=8)
    parser.add_argument("--words", type=int, default=2000)
    parser.add_argument("--length", type=int, default=60)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    adj, moduli, words = corpus(args.vertices, args.words, args.length, args.seed)
    backends = [("python", _pykernels)]
    if _ckernels is not None:
        backends.append(("cython", _ckernels))
        for vids, vals in words[:200]:
            assert _ckernels.reduce_cyclic(adj, moduli, vids, vals) == _pykernels.reduce_cyclic(
                adj, moduli, vids, vals
            ), "kernels disagree"
    else:
        print("compiled kernel not built; timing the fallback only")
    timings = {}
    for name, kernel in backends:
        best = min(timeit.repeat(lambda: run(kernel, adj, moduli, words), number=1, repeat=args.repeat))
        timings[name] = best
        print(f"{name:>7}: {best * 1e3:8.1f} ms for {args.words} words of length {args.length}")
    if len(timings) == 2:
        print(f"speedup: {timings['python'] / timings['cython']:.1f}x")


if __name__ == "__main__":
    main()
