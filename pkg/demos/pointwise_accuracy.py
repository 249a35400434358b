#!/usr/bin/env python3
"""Pointwise accuracy of the stencils and the fourth-order formula.

Evaluates the fractional derivative of two smooth benchmarks at a fixed
point on a sequence of halving grids and prints the observed error and
convergence order for (a) a plain (2-alpha)-order stencil, (b) the
second-order corrected stencil, and (c) the fourth-order formula that
combines the stencil with endpoint series corrections.

Deterministic, stdout only.  Run:

    python3 demos/pointwise_accuracy.py
"""

from __future__ import annotations

from caputofd import SchemeId, approximation_ladder, function_catalog


def show_ladder(title: str, rows) -> None:
    print(title)
    print(f"{'h':>12} {'error':>14} {'order':>8}")
    for row in rows:
        order = f"{row.order:.4f}" if row.order is not None else "-"
        print(f"{row.h:>12.6f} {row.error:>14.6e} {order:>8}")
    print()


def main() -> None:
    print(__doc__.splitlines()[0])
    print()
    catalog = function_catalog()
    alpha = 0.4

    arctan = catalog["arctan"]
    show_ladder(
        f"arctan benchmark, alpha = {alpha}, stencil order 2 - alpha",
        approximation_ladder(arctan, alpha, 1.0, 0.05, 5, scheme=SchemeId.L1),
    )
    show_ladder(
        f"arctan benchmark, alpha = {alpha}, corrected stencil order 2",
        approximation_ladder(arctan, alpha, 1.0, 0.05, 5, scheme=SchemeId.Mid2),
    )
    show_ladder(
        f"arctan benchmark, alpha = {alpha}, fourth-order formula",
        approximation_ladder(arctan, alpha, 1.0, 0.05, 5),
    )
    log1p = catalog["log1p"]
    show_ladder(
        f"log1p benchmark at x = 2, alpha = {alpha}, fourth-order formula",
        approximation_ladder(log1p, alpha, 2.0, 0.05, 5),
    )
    print("The stencil ladders converge at their nominal orders; the")
    print("fourth-order ladder reaches machine-level errors on grids where")
    print("the plain stencil still carries 1e-5 of error.")


if __name__ == "__main__":
    main()
