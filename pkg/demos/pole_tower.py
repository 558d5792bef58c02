"""Climb the tower of degree-p steps below an order-one pole.

Each level k satisfies theta_k^p - theta_k - t^(-1) = -t^(-1/p^k) exactly:
the error exponent shrinks geometrically while the value group picks up
another factor of p in its denominators.

Run:  python3 demos/pole_tower.py
"""

from valuedfields.fields import GF
from valuedfields.groups import p_power_hull
from valuedfields.series import (
    frobenius_series,
    make_series,
    render_series,
    stream_expand,
    sub_series,
    t_pow,
    theta_defect,
    valuation,
)


def main():
    p = 2
    field, hull = GF(p), p_power_hull(p)
    theta = stream_expand(theta_defect(p), 0, max_terms=7)
    print("theta =", render_series(theta))
    print()
    pole = t_pow(field, hull, -1)
    for k in (1, 2, 3):
        tk = make_series(field, hull, theta.terms[:k])
        # frobenius_series computes the p-th power termwise in characteristic p
        err = sub_series(sub_series(frobenius_series(tk), tk), pole)
        print(f"level {k}: theta_{k}^{p} - theta_{k} - t^(-1) =", render_series(err))
        tail = valuation(sub_series(theta, tk))
        print(f"         v(theta - theta_{k}) = {tail}")
    print()
    print("each level multiplies the value-group index by", p)


if __name__ == "__main__":
    main()
