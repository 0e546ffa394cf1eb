"""Sparse exact linear algebra over the coefficient field.

Vectors are dicts from hashable coordinates to nonzero field elements.
Used for minimal-generator extraction in graded modules and as the
brute-force degree-wise rank oracle in the test suite.
"""

from __future__ import annotations


class SpanBuilder:
    """Incremental row echelon form over a field."""

    def __init__(self, field):
        self.field = field
        self.pivots: dict = {}  # pivot coordinate -> vector with that pivot scaled to 1

    def _reduce(self, vec: dict) -> dict:
        # pivot rows have their pivot as max coordinate, so eliminating in
        # decreasing coordinate order terminates.
        field = self.field
        zero = field.zero
        work = dict(vec)
        while work:
            coord = None
            for c in work:
                if c in self.pivots and (coord is None or c > coord):
                    coord = c
            if coord is None:
                break
            c = work[coord]
            for k, v in self.pivots[coord].items():
                s = field.sub(work.get(k, zero), field.mul(c, v))
                if s == zero:
                    work.pop(k, None)
                else:
                    work[k] = s
        return work

    def add(self, vec: dict) -> bool:
        """Insert a vector; True if it enlarged the span."""
        residue = self._reduce(vec)
        if not residue:
            return False
        pivot = max(residue)
        inv = self.field.inv(residue[pivot])
        row = {k: self.field.mul(v, inv) for k, v in residue.items()}
        self.pivots[pivot] = row
        return True

    def contains(self, vec: dict) -> bool:
        return not self._reduce(vec)

    @property
    def rank(self) -> int:
        return len(self.pivots)
