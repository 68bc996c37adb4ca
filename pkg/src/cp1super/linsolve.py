"""Small exact linear solver over Q(i) for sparse systems.

The coboundary systems are extremely sparse (at most a couple of nonzero
entries per column), so rows are kept as dicts and the elimination is
recorded once per matrix; repeated right-hand sides replay the recorded
row operations, which keeps randomized conformance sweeps cheap.
"""
from __future__ import annotations

from .scalars import Scalar

_ZERO = Scalar(0)


class LinearSolver:
    """RREF-based solver for A x = b with columns given as sparse dicts.

    columns: list of {row_key: Scalar}.  Row keys may be any hashable.
    """

    def __init__(self, columns):
        self.ncols = len(columns)
        row_keys = {}
        for col in columns:
            for rk in col:
                if rk not in row_keys:
                    row_keys[rk] = len(row_keys)
        self.row_index = row_keys
        self.nrows = len(row_keys)
        rows = [dict() for _ in range(self.nrows)]
        for j, col in enumerate(columns):
            for rk, v in col.items():
                if v:
                    rows[row_keys[rk]][j] = v
        self._ops = []  # ('scale', r, f) and ('axpy', dst, src, f)
        self._pivots = []  # (row, col)
        self._eliminate(rows)
        self.rank = len(self._pivots)

    def _eliminate(self, rows):
        col_rows = {}
        for r, row in enumerate(rows):
            for j in row:
                col_rows.setdefault(j, set()).add(r)
        pivot_rows = set()
        for j in range(self.ncols):
            cand = [r for r in col_rows.get(j, ()) if r not in pivot_rows]
            if not cand:
                continue
            piv = min(cand)
            f = rows[piv][j]
            if f != Scalar(1):
                inv = Scalar(1) / f
                self._ops.append(("scale", piv, inv))
                for c in list(rows[piv]):
                    v = rows[piv][c] * inv
                    rows[piv][c] = v
            for r in list(col_rows.get(j, ())):
                if r == piv:
                    continue
                f = rows[r].get(j)
                if not f:
                    continue
                self._ops.append(("axpy", r, piv, -f))
                for c, v in rows[piv].items():
                    nv = rows[r].get(c, _ZERO) - f * v
                    if nv:
                        rows[r][c] = nv
                        col_rows.setdefault(c, set()).add(r)
                    elif c in rows[r]:
                        del rows[r][c]
                        col_rows[c].discard(r)
            pivot_rows.add(piv)
            self._pivots.append((piv, j))
        self._final_rows = rows

    def solve(self, rhs):
        """Solve for one right-hand side {row_key: Scalar}.

        Returns a dense list of Scalars (free variables set to 0) or None
        when the system is inconsistent.
        """
        b = [_ZERO] * self.nrows
        for rk, v in rhs.items():
            if v:
                if rk not in self.row_index:
                    return None  # support outside every column's support
                b[self.row_index[rk]] = v
        for op in self._ops:
            if op[0] == "scale":
                _, r, f = op
                if b[r]:
                    b[r] = b[r] * f
            else:
                _, dst, src, f = op
                if b[src]:
                    b[dst] = b[dst] + f * b[src]
        pivot_row_set = {r for r, _ in self._pivots}
        for r in range(self.nrows):
            if r not in pivot_row_set and b[r]:
                return None
        x = [_ZERO] * self.ncols
        for r, j in self._pivots:
            # pivot rows may still carry free columns; frees are set to 0
            x[j] = b[r]
        return x


def matrix_rank(columns) -> int:
    return LinearSolver(columns).rank
