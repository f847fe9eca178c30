#!/usr/bin/env python3
"""Regenerate data/demo_lh_100x10.csv, a plain stratified Latin hypercube.

Demo input for the `order` subcommand: 100 points in [0,1]^10, one stratum
per axis per point. This is NOT a maximin-optimized design; it only provides
a reproducible file to reorder.
"""

from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parent.parent / "data" / "demo_lh_100x10.csv"

rng = np.random.default_rng(20240101)
n, d = 100, 10
cols = [(rng.permutation(n) + 0.5) / n for _ in range(d)]
pts = np.column_stack(cols)

OUT.parent.mkdir(exist_ok=True)
OUT.write_text("\n".join(",".join(repr(float(v)) for v in row) for row in pts) + "\n")
print(f"wrote {OUT} ({n} x {d})")
