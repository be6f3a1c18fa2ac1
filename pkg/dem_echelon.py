"""Exact Sparse Row Echelon

Keeps a set of linearly independent sparse vectors over Q in fully reduced
form: every row owns a pivot coordinate that no other row contains. Vectors
are plain dicts mapping hashable, orderable coordinates to Fractions.
"""

from collections import defaultdict
from fractions import Fraction


SparseVector = dict


def _clean(vec) -> dict:
    return {k: Fraction(v) for k, v in vec.items() if v != 0}


class EchelonBasis:
    """Fully reduced sparse row echelon form of a growing span."""

    def __init__(self):
        self.rows = {}                  # pivot -> row (pivot coefficient 1)
        self.cols = defaultdict(set)    # coordinate -> pivots of rows containing it

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec) -> dict:
        """Remainder of vec after eliminating every pivot coordinate."""
        out = _clean(vec)
        for pivot in [k for k in out if k in self.rows]:
            coef = out.get(pivot)
            if not coef:
                continue
            for k, v in self.rows[pivot].items():
                value = out.get(k, 0) - coef * v
                if value:
                    out[k] = value
                else:
                    out.pop(k, None)
        return out

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    def add(self, vec) -> bool:
        """Add vec to the span; True iff the rank grew."""
        new_row = self.reduce(vec)
        if not new_row:
            return False
        pivot = min(new_row)
        scale = new_row[pivot]
        if scale != 1:
            new_row = {k: v / scale for k, v in new_row.items()}

        # clear the new pivot from every existing row
        for other in list(self.cols.get(pivot, ())):
            row = self.rows[other]
            coef = row[pivot]
            for k, v in new_row.items():
                value = row.get(k, 0) - coef * v
                if value:
                    if k not in row:
                        self.cols[k].add(other)
                    row[k] = value
                else:
                    if k in row:
                        del row[k]
                        self.cols[k].discard(other)

        self.rows[pivot] = new_row
        for k in new_row:
            self.cols[k].add(pivot)
        return True

    def extend(self, vectors) -> list:
        """Add each vector; return those that enlarged the span."""
        return [vec for vec in vectors if self.add(vec)]

    def basis(self) -> list[dict]:
        return [dict(row) for _, row in sorted(self.rows.items())]
