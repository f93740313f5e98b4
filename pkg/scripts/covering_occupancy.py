"""Occupancy scores of map powers on every finite covering.

For each covering factor pair in {1,2}² and each power f, f², …, f^P this
prints the orbit occupancy score and its classification. The sweep is the
empirical side of the "totally transitive" question: a map can fill the
base torus while a lift to some 2-fold cover stays trapped in a proper
invariant region, and taking powers can only reveal more such trapping.
The default power bound 8 is where every built-in case studied here has
visibly committed to one of the two classifications; raise --powers to
push further.

Usage: python3 scripts/covering_occupancy.py [--map lm] [--iters 200000]
       [--powers 8] [--resolution 32]
"""
import argparse

from rotaset import (
    BASE_TORUS,
    FOUR_FOLD,
    HORIZONTAL_DOUBLE,
    VERTICAL_DOUBLE,
    Iterate,
    builtin_map,
    transitivity_score,
)

COVERS = (BASE_TORUS, HORIZONTAL_DOUBLE, VERTICAL_DOUBLE, FOUR_FOLD)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--map", default="lm")
    ap.add_argument("--alpha", type=float)
    ap.add_argument("--beta", type=float)
    ap.add_argument("--iters", type=int, default=200_000)
    ap.add_argument("--powers", type=int, default=8)
    ap.add_argument("--resolution", type=int, default=32)
    args = ap.parse_args()

    params = {}
    if args.alpha is not None:
        params["alpha"] = args.alpha
    if args.beta is not None:
        params["beta"] = args.beta
    base = builtin_map(args.map, **params)

    print(f"map={args.map} iters={args.iters} resolution={args.resolution}")
    print(f"{'cover':>6} " + " ".join(f"{'f^%d' % k:>10}" for k in range(1, args.powers + 1)))
    for cover in COVERS:
        row = []
        for k in range(1, args.powers + 1):
            lift = base if k == 1 else Iterate(base, k)
            rep = transitivity_score(
                lift, cover, iterations=args.iters, cell_resolution=args.resolution
            )
            row.append(f"{rep.occupancy:>10.4f}")
        print(f"{cover.label:>6} " + " ".join(row))


if __name__ == "__main__":
    main()
