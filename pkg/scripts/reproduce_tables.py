"""Print the normalized D-optimal parameter sets for 100 < v < 200 and both borderline series."""

import argparse

from dopt.params import enumerate_ps, series_lambda_eq_s, series_r_eq_s, xy_from_ps


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--v-min", type=int, default=100)
    ap.add_argument("--v-max", type=int, default=200)
    ap.add_argument("--x-max", type=int, default=15)
    args = ap.parse_args()

    rows = enumerate_ps(args.v_min, args.v_max)
    print(f"{len(rows)} normalized parameter sets with {args.v_min} <= v < {args.v_max}")
    for ps in rows:
        xy = xy_from_ps(ps)
        print(f"  {str(ps):22s} x={xy.x:2d} y={xy.y:2d}")

    print("\nlambda = s (y = 0)")
    for x in range(1, args.x_max + 1):
        print(f"  {x:2d}  {series_lambda_eq_s(x)}")
    print("\nr = s (y = x)")
    for x in range(1, args.x_max + 1):
        print(f"  {x:2d}  {series_r_eq_s(x)}")


if __name__ == "__main__":
    main()
