#!/usr/bin/env python3
"""End-to-end demo of the dimension-trend and growth-shape pipeline.

Part 1 fits the long-term logistic model to a dimension series sampled at
eight historical observation years, converts the growth rate to the
difference-equation coefficient b = r + 1, classifies its stability band,
and simulates the orbit to show convergence to the fixed point 1 - 1/b.

Part 2 builds two piecewise population models from published per-period
fit equations (five segments each: four exponential eras and one linear
decline), computes each period's average curvature and the alpha ratios
between consecutive curvature-bearing periods, and reports which ratios
the two regions share within the default tolerance.

Usage:
    python3 scripts/growth_comparison.py [--tolerance X]
"""

from __future__ import annotations

import argparse

import numpy as np

from fracdyn import (
    DimensionSeries,
    LogisticParams,
    PiecewiseModel,
    Segment,
    alpha_ratios,
    average_curvatures,
    classify_stability,
    compare_similarity,
    fit_logistic,
    logistic_to_difference,
    logistic_value,
    simulate_difference,
)

REGION_A = PiecewiseModel((
    Segment("exponential", 1640.0, 1742.0, 7e-15, 1.0247),
    Segment("exponential", 1780.0, 1870.0, 3e-21, 1.0324),
    Segment("exponential", 1880.0, 1920.0, 3e-10, 1.0187),
    Segment("linear", 1930.0, 1980.0, 1e7, -4527.0),
    Segment("exponential", 1990.0, 2020.0, 2.5486, 1.0062),
))
REGION_B = PiecewiseModel((
    Segment("exponential", 1698.0, 1756.0, 7e-12, 1.0203),
    Segment("exponential", 1771.0, 1840.0, 5e-27, 1.0405),
    Segment("exponential", 1850.0, 1910.0, 7e-14, 1.0239),
    Segment("linear", 1920.0, 1970.0, 2e7, -11889.0),
    Segment("exponential", 1980.0, 2019.0, 1941.1, 1.0033),
))


def trend_demo() -> None:
    print("== long-term dimension trend ==")
    true = LogisticParams(K=0.699952, A=2.07022e40, r=0.049432, offset=1.0)
    years = np.array([1900.0, 1915.0, 1924.0, 1935.0, 1956.0, 1986.0,
                      2006.0, 2013.0])
    series = DimensionSeries(years, logistic_value(true, years))
    result = fit_logistic(series, offset=1.0)
    p = result.params
    print(f"fitted: K={p.K:.6f} r={p.r:.6f} A={p.A:.5e} rmse={result.rmse:.2e}")
    print(f"dimension ceiling: offset + K = {p.offset + p.K:.6f}")

    form = logistic_to_difference(p)
    cls = classify_stability(form.b)
    print(f"difference form: b = r + 1 = {form.b:.6f} -> {cls.value}")

    orbit = simulate_difference(form.b, 0.01, 20000)
    fixed = 1.0 - 1.0 / form.b
    print(f"orbit from x0=0.01: x[20000]={orbit[-1]:.9f} "
          f"fixed point 1-1/b={fixed:.9f} "
          f"gap={abs(orbit[-1] - fixed):.2e}")
    print()


def region_table(label: str, model: PiecewiseModel) -> None:
    avgs = average_curvatures(model)
    alphas = alpha_ratios(model)
    print(f"-- region {label} --")
    print(f"{'period':>6} {'years':>12} {'kind':>12} {'avg curvature':>14} "
          f"{'alpha':>12}")
    for i, seg in enumerate(model.segments, start=1):
        alpha_txt = f"{alphas[i]:12.6f}" if i in alphas else f"{'-':>12}"
        print(f"{i:>6} {f'{seg.t_start:.0f}-{seg.t_end:.0f}':>12} "
              f"{seg.kind:>12} {avgs[i]:14.6e} {alpha_txt}")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tolerance", type=float, default=1.0,
                    help="similarity tolerance: ratios within a factor of "
                         "(1+tolerance) count as similar (default 1.0)")
    args = ap.parse_args(argv)

    trend_demo()

    print("== two-region growth-shape comparison ==")
    region_table("A", REGION_A)
    region_table("B", REGION_B)

    report = compare_similarity(REGION_A, REGION_B, args.tolerance)
    print(f"-- similarity at tolerance {args.tolerance} --")
    for idx in sorted(report.verdicts):
        ratio = report.alphas_a[idx] / report.alphas_b[idx]
        verdict = "similar" if report.verdicts[idx] else "DISSIMILAR"
        print(f"alpha_{idx}: A={report.alphas_a[idx]:10.4f} "
              f"B={report.alphas_b[idx]:10.4f} A/B={ratio:8.4f} -> {verdict}")
    print(f"overall: {'similar' if report.overall else 'not similar'}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
