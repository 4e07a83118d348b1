"""Gram-block throughput: JIT two-pointer merge vs pure-numpy intersection.

Builds a seeded random corpus, encodes the n-gram profiles once, then
times the symmetric Gram computation with each backend. The numpy path
is the same code selected by SATKIT_DISABLE_NUMBA=1.

    python3 benchmarks/bench_gram.py --docs 400 --chars 1200 --n 5
"""

import argparse
import time

import numpy as np

from satkit import _kernels
from satkit.ngram import KernelKind, encode_profiles, extract_profile, gram_from_encoded

ALPHABET = "abcdefghij éàçèâ.,'"


def build_corpus(docs, chars, seed):
    rng = np.random.default_rng(seed)
    return [
        "".join(ALPHABET[i] for i in rng.integers(0, len(ALPHABET), chars))
        for _ in range(docs)
    ]


def time_backend(encoded, kind, backend, repeats):
    gram_from_encoded(encoded, None, kind, backend=backend)  # warm-up / JIT
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        values = gram_from_encoded(encoded, None, kind, backend=backend).values
        best = min(best, time.perf_counter() - start)
    return best, values


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--docs", type=int, default=400)
    parser.add_argument("--chars", type=int, default=1200)
    parser.add_argument("--n", type=int, default=5)
    parser.add_argument("--kind", choices=("pbsk", "hisk"), default="hisk")
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    kind = KernelKind.PBSK if args.kind == "pbsk" else KernelKind.HISK
    texts = build_corpus(args.docs, args.chars, args.seed)
    profiles = [extract_profile(t, args.n) for t in texts]
    encoded = encode_profiles(profiles, {})
    cells = args.docs * args.docs
    print(
        f"{args.docs} docs x {args.chars} chars, n={args.n}, kind={kind.name}, "
        f"vocab={len(encoded.vocab)}"
    )

    t_numpy, v_numpy = time_backend(encoded, kind, "numpy", args.repeats)
    print(f"numpy   {t_numpy:8.3f}s   {cells / t_numpy / 1e6:7.2f} Mcell/s")
    if not _kernels.NUMBA_AVAILABLE:
        print("numba   unavailable (install numba to compare)")
        return
    t_numba, v_numba = time_backend(encoded, kind, "numba", args.repeats)
    print(f"numba   {t_numba:8.3f}s   {cells / t_numba / 1e6:7.2f} Mcell/s")
    same = np.array_equal(v_numpy, v_numba)
    print(f"speedup {t_numpy / t_numba:7.1f}x   results identical: {same}")
    if not same:
        raise SystemExit("backend results diverged")


if __name__ == "__main__":
    main()
