"""Candidate / evaluation / reference point sets.

Halton and Sobol' prefixes, regular grids, hypercube vertices, CSV-loaded
designs, and the rescale-and-clip embedding of raw unit-cube points into an
arbitrary domain. Generation is deterministic: the k-th point of a generator
is a pure function of (generator, parameters, k), and prefixes are stable.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .domain import Domain

__all__ = [
    "PointSet",
    "halton",
    "sobol",
    "sobol_t",
    "grid",
    "vertices",
    "clip_rescale",
    "union",
    "load_design",
    "first_primes",
    "next_prime",
]

SOBOL_BITS = 30
SOBOL_MAX_DIM = 50
_GRID_CAP = 1 << 26
_VERTEX_CAP_DEFAULT = 20


@dataclass(frozen=True)
class PointSet:
    """Ordered, immutable list of points in R^d with a provenance tag."""

    points: np.ndarray
    provenance: str

    def __post_init__(self):
        pts = np.ascontiguousarray(np.asarray(self.points, dtype=float))
        if pts.ndim != 2:
            raise ValueError(f"points must be a 2-d array, got shape {pts.shape}")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.points.shape[0]

    def prefix(self, n: int) -> "PointSet":
        if n > len(self):
            raise ValueError(f"prefix of {n} requested from a set of {len(self)}")
        return PointSet(self.points[:n], self.provenance)


# ---------------------------------------------------------------------------
# primes (Halton bases, Faure base lookup)
# ---------------------------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def first_primes(k: int) -> list[int]:
    """The first k prime numbers."""
    out, n = [], 2
    while len(out) < k:
        if _is_prime(n):
            out.append(n)
        n += 1
    return out


def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    m = max(2, int(n))
    while not _is_prime(m):
        m += 1
    return m


# ---------------------------------------------------------------------------
# Halton
# ---------------------------------------------------------------------------

def _radical_inverse(indices: np.ndarray, base: int) -> np.ndarray:
    i = indices.astype(np.int64).copy()
    out = np.zeros(len(i), dtype=float)
    f = 1.0 / base
    while np.any(i > 0):
        out += (i % base) * f
        i //= base
        f /= base
    return out


def halton(n: int, d: int) -> PointSet:
    """First n Halton points in dimension d.

    Bases are the first d primes; indexing starts at 1, so the first point is
    (1/2, 1/3, 1/5, ...).
    """
    if n < 1 or d < 1:
        raise ValueError("halton requires n >= 1 and d >= 1")
    idx = np.arange(1, n + 1)
    cols = [_radical_inverse(idx, p) for p in first_primes(d)]
    return PointSet(np.column_stack(cols), "halton")


# ---------------------------------------------------------------------------
# Sobol'
# ---------------------------------------------------------------------------

def _load_direction_table() -> dict[int, tuple[int, int, list[int]]]:
    """Parse the shipped direction-number file: {d: (s, a, [m_1..m_s])}."""
    text = (
        importlib.resources.files("spacefill")
        .joinpath("data/sobol_joe_kuo_d50.txt")
        .read_text()
    )
    table = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = [int(tok) for tok in line.split()]
        d, s, a, m = parts[0], parts[1], parts[2], parts[3:]
        if len(m) != s:
            raise ValueError(f"malformed direction-number line for d={d}")
        table[d] = (s, a, m)
    return table


_DIRECTION_TABLE: dict[int, tuple[int, int, list[int]]] | None = None


def _direction_integers(d: int) -> np.ndarray:
    """(d, SOBOL_BITS) array of direction integers v_k scaled to SOBOL_BITS."""
    global _DIRECTION_TABLE
    if _DIRECTION_TABLE is None:
        _DIRECTION_TABLE = _load_direction_table()
    if d > SOBOL_MAX_DIM:
        raise ValueError(
            f"sobol supports d <= {SOBOL_MAX_DIM} (shipped direction-number table)"
        )
    vs = np.zeros((d, SOBOL_BITS), dtype=np.int64)
    vs[0] = [1 << (SOBOL_BITS - k) for k in range(1, SOBOL_BITS + 1)]
    for dim in range(2, d + 1):
        s, a, m = _DIRECTION_TABLE[dim]
        v = [0] * (SOBOL_BITS + 1)
        for k in range(1, min(s, SOBOL_BITS) + 1):
            v[k] = m[k - 1] << (SOBOL_BITS - k)
        for k in range(s + 1, SOBOL_BITS + 1):
            v[k] = v[k - s] ^ (v[k - s] >> s)
            for i in range(1, s):
                if (a >> (s - 1 - i)) & 1:
                    v[k] ^= v[k - i]
        vs[dim - 1] = v[1:]
    return vs


def _sobol_integers(n: int, d: int) -> np.ndarray:
    """(n, d) int64 array for indices 1..n in Gray-code order.

    Point i is the XOR of the direction integers selected by the set bits of
    gray(i) = i ^ (i >> 1); index 0 (the origin) is skipped.
    """
    if n >= 1 << SOBOL_BITS:
        raise ValueError(f"sobol supports at most 2^{SOBOL_BITS} - 1 points")
    vs = _direction_integers(d)
    gray = np.arange(1, n + 1, dtype=np.int64)
    gray ^= gray >> 1
    out = np.zeros((n, d), dtype=np.int64)
    for bit in range(SOBOL_BITS):
        mask = (gray >> bit) & 1
        sel = mask.astype(bool)
        if not sel.any():
            continue
        out[sel] ^= vs[:, bit]
    return out


def sobol(n: int, d: int, scramble: int | None = None) -> PointSet:
    """First n Sobol' points in dimension d, origin skipped.

    The first point is the cube center (1/2, ..., 1/2). `scramble` applies a
    digital XOR shift with one seed-derived mask per dimension; the seed fully
    determines the output.
    """
    if n < 1 or d < 1:
        raise ValueError("sobol requires n >= 1 and d >= 1")
    ints = _sobol_integers(n, d)
    tag = "sobol"
    if scramble is not None:
        rng = np.random.default_rng(int(scramble))
        masks = rng.integers(0, 1 << SOBOL_BITS, size=d, dtype=np.int64)
        ints = ints ^ masks
        tag = f"sobol-scrambled({int(scramble)})"
    return PointSet(ints.astype(float) / float(1 << SOBOL_BITS), tag)


_SOBOL_T = {2: 0, 3: 1, 4: 3, 5: 5, 6: 8, 7: 11, 8: 15, 9: 19, 10: 23, 11: 27, 12: 31, 13: 35}


def sobol_t(d: int) -> int:
    """Quality parameter t of the Sobol' (t, d)-sequence in base 2, d = 2..13."""
    if d not in _SOBOL_T:
        raise ValueError("sobol_t is tabulated for 2 <= d <= 13 only")
    return _SOBOL_T[d]


# ---------------------------------------------------------------------------
# grids, vertices, file designs
# ---------------------------------------------------------------------------

def grid(m: int, d: int, cap: int = _GRID_CAP) -> PointSet:
    """The m^d points {0, 1/(m-1), ..., 1}^d in lexicographic order."""
    if m < 2:
        raise ValueError("grid requires m >= 2 points per axis")
    if m**d > cap:
        raise ValueError(f"grid size {m}^{d} exceeds the cap of {cap} points")
    axis = np.arange(m) / (m - 1)
    mesh = np.meshgrid(*([axis] * d), indexing="ij")
    pts = np.stack(mesh, axis=-1).reshape(-1, d)
    return PointSet(pts, f"grid({m})")


def vertices(d: int, cap: int = _VERTEX_CAP_DEFAULT) -> PointSet:
    """The 2^d points {0, 1}^d in binary-counting order."""
    if d > cap:
        raise ValueError(f"vertices requires d <= {cap} (2^d points)")
    ps = grid(2, d)
    return PointSet(ps.points, "vertices")


def clip_rescale(raw: PointSet, domain: Domain, count: int) -> PointSet:
    """Map unit-cube points onto the domain's bounding box and keep members.

    The affine map sends [0,1]^d onto the bounding box; points are kept in
    their original order and the result is truncated to `count`. Raises when
    the raw stream is exhausted before `count` points fall inside.
    """
    if raw.d != domain.d:
        raise ValueError(f"raw points have d={raw.d}, domain has d={domain.d}")
    lo, hi = domain.bounding_box()
    mapped = lo + raw.points * (hi - lo)
    keep = domain.contains_many(mapped)
    kept = mapped[keep]
    if len(kept) < count:
        raise ValueError(
            f"only {len(kept)} of {len(raw)} raw points fall inside the domain; "
            f"{count} requested"
        )
    return PointSet(kept[:count], f"clipped({raw.provenance})")


def union(a: PointSet, b: PointSet) -> PointSet:
    """Concatenate a then b, dropping bitwise-exact duplicate points."""
    if a.d != b.d:
        raise ValueError(f"dimension mismatch: {a.d} vs {b.d}")
    stacked = np.vstack([a.points, b.points])
    if len(stacked) == 0:
        return PointSet(stacked, f"union({a.provenance}|{b.provenance})")
    # bitwise row identity via a void view; keep first occurrences in order
    rows = np.ascontiguousarray(stacked).view(
        np.dtype((np.void, stacked.dtype.itemsize * stacked.shape[1]))
    ).ravel()
    _, first = np.unique(rows, return_index=True)
    keep = np.zeros(len(stacked), dtype=bool)
    keep[first] = True
    return PointSet(stacked[keep], f"union({a.provenance}|{b.provenance})")


def load_design(path: str | Path, skip_header: bool = False) -> PointSet:
    """Load an ordered design from CSV: one point per row, d numeric columns."""
    path = Path(path)
    rows: list[list[float]] = []
    with open(path, "r") as fh:
        for lineno, line in enumerate(fh, start=1):
            if skip_header and lineno == 1:
                continue
            line = line.strip()
            if not line:
                continue
            try:
                row = [float(tok) for tok in line.split(",")]
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: unparsable field ({exc})") from None
            rows.append(row)
    if not rows:
        raise ValueError(f"{path}: no data rows")
    width = len(rows[0])
    for i, row in enumerate(rows, start=1):
        if len(row) != width:
            raise ValueError(
                f"{path}: ragged row {i + int(skip_header)} has {len(row)} fields, expected {width}"
            )
    return PointSet(np.asarray(rows, dtype=float), f"file({path})")
