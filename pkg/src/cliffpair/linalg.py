"""Sparse exact linear algebra over Q(i).

Vectors are dicts ``key -> Scalar`` with no stored zeros.  Keys only need a
total order (ints, tuples); pivots are always chosen as the smallest key so
results never depend on insertion order.
"""

from __future__ import annotations

from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .exact import ONE, ZERO, Scalar, to_scalar

Vec = Dict[Hashable, Scalar]


def axpy(y: Vec, c: Scalar, x: Vec) -> None:
    """In place ``y += c*x``."""
    for k, v in x.items():
        w = y.get(k)
        if w is None:
            y[k] = c * v
        else:
            w = w + c * v
            if w:
                y[k] = w
            else:
                del y[k]


def scale(x: Vec, c: Scalar) -> Vec:
    if not c:
        return {}
    return {k: c * v for k, v in x.items()}


class EchelonBasis:
    """Incrementally maintained reduced echelon basis of a span.

    Each stored row remembers which combination of inserted vectors produced
    it, so membership queries can also return coordinates.
    """

    def __init__(self, track: bool = True):
        self.rows: Dict[Hashable, Vec] = {}
        self._combo: Dict[Hashable, Vec] = {}
        self.track = track
        self.count = 0

    def __len__(self):
        return len(self.rows)

    def _reduce(self, v: Vec, combo: Optional[Vec]):
        v = dict(v)
        # eliminate stored pivots; pivots of stored rows are their min keys
        changed = True
        while changed:
            changed = False
            for k in sorted(k for k in v if k in self.rows):
                c = v.get(k)
                if c is None:
                    continue
                axpy(v, -c, self.rows[k])
                if combo is not None:
                    axpy(combo, -c, self._combo[k])
                changed = True
        return v

    def reduce(self, v: Vec) -> Vec:
        return self._reduce(v, None)

    def add(self, v: Vec) -> bool:
        """Insert ``v``; return True if it enlarged the span."""
        idx = self.count
        self.count += 1
        combo = {idx: ONE} if self.track else None
        r = self._reduce(v, combo)
        if not r:
            return False
        p = min(r)
        inv = r[p].inverse()
        r = scale(r, inv)
        if combo is not None:
            combo = scale(combo, inv)
        # keep the basis fully reduced so _reduce terminates in one sweep
        for q, row in self.rows.items():
            c = row.get(p)
            if c is not None:
                axpy(row, -c, r)
                if combo is not None:
                    axpy(self._combo[q], -c, combo)
        self.rows[p] = r
        if combo is not None:
            self._combo[p] = combo
        return True

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def decompose(self, v: Vec) -> Tuple[Vec, Vec]:
        """(coefficients by insertion index, residual) with v = span part + residual."""
        if not self.track:
            raise ValueError("coordinates need track=True")
        combo: Vec = {}
        r = self._reduce(v, combo)
        return {k: -c for k, c in combo.items()}, r

    def coordinates(self, v: Vec) -> Optional[Vec]:
        """Coefficients (by insertion index) expressing ``v``, or None."""
        coords, r = self.decompose(v)
        return None if r else coords


def rank(vectors: Iterable[Vec]) -> int:
    eb = EchelonBasis(track=False)
    for v in vectors:
        eb.add(v)
    return len(eb)


def rref(rows: Iterable[Vec]) -> Dict[Hashable, Vec]:
    eb = EchelonBasis(track=False)
    for r in rows:
        eb.add(r)
    return eb.rows


def nullspace(rows: Iterable[Vec], columns: Sequence[Hashable]) -> List[Vec]:
    """Basis of ``{x : r.x = 0 for all rows}`` with unknowns indexed by ``columns``.

    Free columns are the non-pivot columns; each kernel vector has a single 1
    on its free column, so the output is canonical.
    """
    piv = rref(rows)
    basis = []
    for c in columns:
        if c in piv:
            continue
        v = {c: ONE}
        for p, row in piv.items():
            w = row.get(c)
            if w is not None:
                v[p] = -w
        basis.append(v)
    return basis


def solve_dense(a: List[List[Scalar]], b: List[Scalar]) -> Optional[List[Scalar]]:
    """Solve a square or overdetermined dense system; None if inconsistent.

    Returns one solution with free variables set to zero.
    """
    n = len(a[0]) if a else 0
    eb = EchelonBasis(track=False)
    for i, row in enumerate(a):
        r = {j: to_scalar(x) for j, x in enumerate(row) if x}
        if b[i]:
            r[n] = to_scalar(b[i])
        eb.add(r)
    if n in eb.rows:
        return None
    x = [ZERO] * n
    for p, row in eb.rows.items():
        x[p] = row.get(n, ZERO)
    return x


def determinant(a: List[List[Scalar]]) -> Scalar:
    m = [[to_scalar(x) for x in row] for row in a]
    n = len(m)
    det = ONE
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det = det * m[c][c]
        inv = m[c][c].inverse()
        for r in range(c + 1, n):
            f = m[r][c] * inv
            if f:
                for k in range(c, n):
                    m[r][k] = m[r][k] - f * m[c][k]
    return det


def inverse(a: List[List[Scalar]]) -> List[List[Scalar]]:
    n = len(a)
    m = [[to_scalar(x) for x in row] + [ONE if i == j else ZERO for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[p] = m[p], m[c]
        inv = m[c][c].inverse()
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def matmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), ZERO)
             for j in range(len(b[0]))] for i in range(len(a))]


def transpose(a):
    return [list(r) for r in zip(*a)]


def identity(n: int):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
