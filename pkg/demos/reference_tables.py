#!/usr/bin/env python3
"""Recompute every bundled reference column and compare cell by cell.

Runs the full golden-comparison harness: thirty error/order columns
spanning the solver benchmarks (including the divergent strong-damping
runs) and the pointwise fourth-order ladders.  Prints one summary line
per column plus the cells that came closest to their tolerance budget.

Deterministic, stdout only.  Run:

    python3 demos/reference_tables.py
"""

from __future__ import annotations

from caputofd import golden_catalog, run_golden


def main() -> None:
    print(__doc__.splitlines()[0])
    print()
    worst: list[tuple[float, str, object]] = []
    failures = 0
    for table_id, table in golden_catalog().items():
        rows, report = run_golden(table)
        print(report.summary())
        if not report.all_passed:
            failures += 1
            for check in report.failures():
                print(f"    h={check.h} {check.kind}: expected {check.expected}, "
                      f"got {check.computed}")
        for check in report.checks:
            if check.passed and check.allowance_used is not None:
                worst.append((check.allowance_used, table_id, check))
    print()
    worst.sort(reverse=True, key=lambda item: item[0])
    print("five cells closest to their tolerance budget (1.0 = at the limit):")
    for used, table_id, check in worst[:5]:
        print(f"  {table_id:>13} h={check.h:<12g} {check.kind:<9} "
              f"budget used {used:.3f}")
    print()
    if failures:
        print(f"{failures} column(s) FAILED comparison.")
        raise SystemExit(3)
    print("All thirty columns reproduce the bundled reference set.")


if __name__ == "__main__":
    main()
