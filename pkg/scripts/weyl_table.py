"""Print z_x z_y and D(x^i) in the Weyl tower for a few (q, d).

    python3 scripts/weyl_table.py --q 2 --d 1 --N 8
"""

import argparse

from skewps import series as ser
from skewps.tower import LaurentRing, _d_of_x_powers, _identity, weyl_tower


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", default="1")
    ap.add_argument("--d", default="1")
    ap.add_argument("--N", type=int, default=8)
    ap.add_argument("--powers", type=int, default=6)
    args = ap.parse_args()

    tower = weyl_tower(args.q, args.d, args.N)
    zx, zy = tower.var("zx"), tower.var("zy")
    print(f"q = {args.q}, d = {args.d}, N = {args.N}")
    print("z_x * z_y =", tower.ring.format(ser.mul(zx, zy)))

    k = tower.base.field
    q, d = k.scalar(args.q), k.scalar(args.d)
    xl = LaurentRing(_identity(tower.base), args.N + 2 * args.powers + 2, var="zx", min_exponent=-args.powers - 2)
    x, dx = _d_of_x_powers(xl, q, d, args.powers)
    for i, v in enumerate(dx, start=1):
        terms = v.terms()
        if len(terms) == 1 and terms[0][0] == -(i - 1):
            print(f"D(x^{i}) = {terms[0][1]} x^{i - 1}")
        else:
            print(f"D(x^{i}) =", v.format(with_order=False), "(in powers of zx = x^-1)")


if __name__ == "__main__":
    main()
