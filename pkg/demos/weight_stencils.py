#!/usr/bin/env python3
"""Tour of the weight stencils behind every approximation in the library.

Builds each scheme's weight vector on a small grid and shows the structure
the rest of the package relies on: the zero sum (constants are
annihilated), the sign chain (one positive head, negative interior), the
normalisation constant, and the nominal convergence order.  Then prints
the exact three-point vectors on the smallest grid, where every entry has
a closed form.

Deterministic, stdout only.  Run:

    python3 demos/weight_stencils.py
"""

from __future__ import annotations

import math

from caputofd import SchemeId, build_weights, nominal_order, validate_weights


def survey(alpha: float, n: int) -> None:
    print(f"alpha = {alpha}, n = {n}")
    print(f"{'scheme':>14} {'order':>6} {'norm':>10} {'sum(w)':>10} {'w[0]':>9} "
          f"{'w[n]':>10} {'checks':>7}")
    for scheme in SchemeId:
        wv = build_weights(scheme, alpha, n)
        report = validate_weights(wv)
        total = math.fsum(wv.weights)
        status = "ok" if report.all_passed else "FAIL"
        print(f"{scheme.name:>14} {nominal_order(scheme, alpha):>6.2f} "
              f"{wv.norm:>10.5f} {total:>10.2e} {wv.weights[0]:>9.5f} "
              f"{wv.weights[-1]:>10.5f} {status:>7}")
    print()


def smallest_grids(alpha: float) -> None:
    print(f"three-point stencils at alpha = {alpha} (n = 2)")
    for scheme in (SchemeId.MidLow, SchemeId.Mid2mAlpha, SchemeId.Mid2,
                   SchemeId.Right2mAlpha, SchemeId.Right3mAlpha):
        wv = build_weights(scheme, alpha, 2)
        entries = ", ".join(f"{w:+.12f}" for w in wv.weights)
        print(f"  {scheme.name:>14}: [{entries}]")
    print()


def main() -> None:
    print(__doc__.splitlines()[0])
    print()
    for alpha in (0.25, 0.5, 0.75):
        survey(alpha, 8)
    smallest_grids(0.5)
    print("Every vector sums to zero and keeps its proven sign pattern; the")
    print("normalisation constant times h^alpha turns the weighted sum of")
    print("samples into the fractional derivative approximation.")


if __name__ == "__main__":
    main()
