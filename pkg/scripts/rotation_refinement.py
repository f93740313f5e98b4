"""Refinement study for the LM-map rotation-set estimate.

Sweeps start-grid density, horizon ladder, and grid offset, and reports the
Hausdorff distance of the estimated hull to the unit square together with
the stabilization diagnostic and wall time. Two facts this table documents:

* with offset 0 the start grid contains the four distinguished dyadic
  points and the hull snaps to [0,1]² exactly at every density;
* with offset 0.5 (cell centers) those points are excluded and the hull
  undershoots erratically instead of refining: at power-of-two densities
  the cell centers are exactly dyadic, the tent arithmetic stays exact on
  that lattice, and every orbit drops into a short exact cycle whose few
  rational rotation vectors hull to a density-dependent inset (measured
  areas 0.11 / 0.25 / 0.44 / 0.04 at 32² / 64² / 128² / 256²; at 256²
  every start cycles before the first horizon and the stability
  diagnostic reads exactly 0; non-dyadic densities are no better, e.g.
  area 0.002 at 100²). Cell-centered sampling is therefore not the
  default.

Usage: python3 scripts/rotation_refinement.py [--full]
"""
import argparse
import time

from rotaset import (
    ConvexPolygon,
    estimate_rotation_set,
    hausdorff_distance,
    lm_map,
    polygon_area,
)

UNIT_SQUARE = ConvexPolygon(((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--full", action="store_true", help="include the 256² rows (slow)")
    args = ap.parse_args()

    lm = lm_map()
    grids = [32, 64, 128] + ([256] if args.full else [])
    ladders = [(100, 500), (100, 500, 2000)]
    offsets = [0.0, 0.5]

    print(f"{'grid':>5} {'horizons':>16} {'offset':>6} {'dH(unit sq)':>12} "
          f"{'area':>8} {'stability':>10} {'seconds':>8}")
    for grid in grids:
        for horizons in ladders:
            for offset in offsets:
                t0 = time.perf_counter()
                est = estimate_rotation_set(lm, (grid, grid), horizons, offset=offset)
                dt = time.perf_counter() - t0
                dh = hausdorff_distance(est.hull, UNIT_SQUARE)
                print(
                    f"{grid:>5d} {','.join(map(str, horizons)):>16} {offset:>6.2f} "
                    f"{dh:>12.6f} {polygon_area(est.hull):>8.5f} "
                    f"{est.stability:>10.3g} {dt:>8.2f}"
                )


if __name__ == "__main__":
    main()
