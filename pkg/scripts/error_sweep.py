#!/usr/bin/env python3
"""Sweep the independence-assumption error across families and metrics.

For each dependence family with interaction terms, draw a few random
models, evaluate the relative error of every metric over a log grid, and
print a compact summary table (min/max error per family and metric).

Usage:
    python3 scripts/error_sweep.py [--models N] [--seed S] [--n-components K]
"""

import argparse

import numpy as np

from deperr import MetricKind, ZeroDenominatorError, relative_error

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from conftest import random_model  # noqa: E402

FAMILIES = ("MOME", "MG1", "MOMW", "Crowder", "LeeII", "LeeML", "LuBI")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--models", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--n-components", type=int, default=3)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    grid = np.geomspace(0.05, 5.0, 25)

    print(f"{'family':<10} {'metric':<5} {'min err':>12} {'max err':>12}")
    for family in FAMILIES:
        models = [
            random_model(family, args.n_components, rng)
            for _ in range(args.models)
        ]
        for metric in MetricKind:
            values = []
            for m in models:
                for t in grid:
                    try:
                        values.append(relative_error(m, metric, float(t)))
                    except ZeroDenominatorError:
                        continue
            print(
                f"{family:<10} {metric.value:<5} "
                f"{min(values):>12.4e} {max(values):>12.4e}"
            )


if __name__ == "__main__":
    main()
