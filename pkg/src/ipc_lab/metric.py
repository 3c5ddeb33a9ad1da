"""Exact four-point hyperbolicity and Gromov products.

Graph distances are integers, so both quantities are exact half-integers;
everything here works on doubled values and never touches floating point.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import total_ordering

import numpy as np

from .graph import (
    DistanceMatrix,
    Disconnected,
    TooLarge,
    UNREACHABLE,
    Unreachable,
)

#: O(n^4) guard; override with force=True.
DEFAULT_VERTEX_CAP = 150


@total_ordering
@dataclass(frozen=True)
class HalfInteger:
    """Exact multiple of 1/2, stored doubled."""

    doubled: int

    @classmethod
    def from_int(cls, k: int) -> "HalfInteger":
        return cls(doubled=2 * k)

    @property
    def value(self) -> float:
        return self.doubled / 2

    def _key(self, other: object) -> int:
        if isinstance(other, HalfInteger):
            return other.doubled
        if isinstance(other, int):
            return 2 * other
        return NotImplemented  # type: ignore[return-value]

    def __eq__(self, other: object) -> bool:
        key = self._key(other)
        return NotImplemented if key is NotImplemented else self.doubled == key

    def __lt__(self, other: object) -> bool:
        key = self._key(other)
        return NotImplemented if key is NotImplemented else self.doubled < key

    def __hash__(self) -> int:
        return hash(("HalfInteger", self.doubled))

    def __str__(self) -> str:
        return str(self.doubled // 2) if self.doubled % 2 == 0 else f"{self.doubled / 2:.1f}"


def gromov_product(dm: DistanceMatrix, x: int, y: int, r: int) -> HalfInteger:
    """(d(x,r) + d(y,r) - d(x,y)) / 2, exact."""
    dxr, dyr, dxy = dm.d(x, r), dm.d(y, r), dm.d(x, y)
    if UNREACHABLE in (dxr, dyr, dxy):
        raise Unreachable("Gromov product needs all three vertices in one component")
    return HalfInteger(doubled=dxr + dyr - dxy)


def hyperbolicity(
    dm: DistanceMatrix, force: bool = False, threads: int | None = None
) -> HalfInteger:
    """Exact hyperbolicity: half the maximum, over vertex quadruples, of
    (largest distance-sum pairing minus the second largest).

    Vectorized over the two free vertices for each of the O(n^2) fixed
    pairs; integer arithmetic throughout.  Graphs with fewer than 4 vertices
    have hyperbolicity 0.
    """
    n = dm.n
    if n and UNREACHABLE in dm.rows[0].dist:
        raise Disconnected("hyperbolicity requires a connected graph")
    if n > DEFAULT_VERTEX_CAP and not force:
        raise TooLarge(
            f"n={n} exceeds the O(n^4) cap {DEFAULT_VERTEX_CAP}; pass force=True"
        )
    if n < 4:
        return HalfInteger(0)

    d = dm.as_array.astype(np.int64)

    def scan(rows: list[int]) -> int:
        # Quadruple (i, j, k, l): the three pairings' distance sums are
        #   s1 = d(i,j) + d(k,l), s2 = d(i,k) + d(j,l), s3 = d(i,l) + d(j,k).
        # Degenerate quadruples contribute 0, so no masking is needed.
        best = 0
        for i in rows:
            di = d[i]
            for j in range(i + 1, n):
                s1 = d[i, j] + d
                s2 = di[:, None] + d[j][None, :]
                s3 = di[None, :] + d[j][:, None]
                mx = np.maximum(np.maximum(s1, s2), s3)
                mn = np.minimum(np.minimum(s1, s2), s3)
                defect = int((2 * mx + mn - (s1 + s2 + s3)).max())
                if defect > best:
                    best = defect
        return best

    workers = 1 if threads is None else max(1, threads)
    if workers == 1:
        return HalfInteger(scan(list(range(n))))
    chunks = [list(range(n))[w::workers] for w in range(workers)]
    chunks = [c for c in chunks if c]
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        return HalfInteger(max(pool.map(scan, chunks)))  # max-merge, deterministic


def hyperbolicity_product_form(dm: DistanceMatrix, cap: int = 20) -> HalfInteger:
    """Independent computation via the Gromov-product inequality: the least
    delta with (x|y)_r >= min((x|z)_r, (y|z)_r) - delta over all quadruples.
    Plain quadruple loop; used as an oracle at small sizes."""
    n = dm.n
    if n and UNREACHABLE in dm.rows[0].dist:
        raise Disconnected("hyperbolicity requires a connected graph")
    if n > cap:
        raise TooLarge(f"product-form oracle capped at n={cap}")
    rows = [r.dist for r in dm.rows]
    worst = 0
    for r in range(n):
        dr = rows[r]
        for x in range(n):
            dx = rows[x]
            for y in range(x + 1, n):
                dy = rows[y]
                pxy = dr[x] + dr[y] - dx[y]
                for z in range(n):
                    pxz = dr[x] + dr[z] - dx[z]
                    pyz = dr[y] + dr[z] - dy[z]
                    gap = min(pxz, pyz) - pxy
                    if gap > worst:
                        worst = gap
    return HalfInteger(worst)


def cycle_hyperbolicity_lower_bound(n: int) -> HalfInteger:
    """Guaranteed hyperbolicity of any graph containing an isometric cycle
    of order n: floor(n/4), minus 1/2 when n = 1 (mod 4)."""
    doubled = 2 * (n // 4) - 1 if n % 4 == 1 else 2 * (n // 4)
    return HalfInteger(max(0, doubled))
