#!/usr/bin/env python3
"""Regenerate src/spacefill/data/sobol_joe_kuo_d50.txt from scipy's tables.

scipy packages the Joe & Kuo (new-joe-kuo-6) primitive polynomials and
initial direction integers for 21201 dimensions; this script freezes the
first 50 dimensions into the text format documented in the data file header.
Run only when bumping the shipped table; the file is committed.
"""

from pathlib import Path

import numpy as np
from scipy.stats._sobol import get_poly_vinit

OUT = Path(__file__).resolve().parent.parent / "src" / "spacefill" / "data" / "sobol_joe_kuo_d50.txt"
MAX_DIM = 50

poly = get_poly_vinit("poly", np.uint32)
vinit = get_poly_vinit("vinit", np.uint32)

lines = [
    "# Sobol' direction numbers (Joe & Kuo new-joe-kuo-6 table), dimensions 2..50.",
    "# Format: one line per dimension:  d s a m_1 ... m_s",
    "#   d : dimension index (dimension 1 is built in: van der Corput in base 2)",
    "#   s : degree of the primitive polynomial over GF(2)",
    "#   a : interior polynomial coefficients packed as an integer",
    "#       (polynomial = x^s + a_1 x^(s-1) + ... + a_(s-1) x + 1)",
    "#   m : odd initial direction integers, m_k < 2^k",
    "# Regenerate with scripts/refresh_direction_numbers.py",
]
for d in range(2, MAX_DIM + 1):
    p = int(poly[d - 1])
    s = p.bit_length() - 1
    m = [int(x) for x in vinit[d - 1][:s]]
    assert all(x % 2 == 1 and x < 2 ** (i + 1) for i, x in enumerate(m)), (d, m)
    a = (p - (1 << s) - 1) >> 1
    lines.append(f"{d} {s} {a} " + " ".join(str(x) for x in m))

OUT.write_text("\n".join(lines) + "\n")
print(f"wrote {OUT} ({MAX_DIM - 1} dimensions)")
