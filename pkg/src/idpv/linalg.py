"""Exact linear algebra over the coefficient field.

Two tools cover every kernel and span computation in the package:

* a dense nullspace routine using fraction-free (single-step Bareiss)
  forward elimination with deterministic pivoting -- first nonzero column,
  smallest row index -- so results are reproducible bit for bit;
* an incremental reduced row-echelon span (`SpanBasis`) over sparse rows
  keyed by arbitrary ordered column labels.
"""

from __future__ import annotations

from .scalars import FieldSpec, Scalar


def _eliminate(rows, ncols):
    """Fraction-free forward elimination in place; returns pivot (row, col) pairs."""
    pivots = []
    prev = None  # previous pivot value (Bareiss divisor)
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, len(rows)):
            head = rows[i][c]
            for j in range(c, ncols):
                v = piv * rows[i][j] - head * rows[r][j]
                if prev is not None:
                    v = v / prev
                rows[i][j] = v
        pivots.append((r, c))
        prev = piv
        r += 1
        if r == len(rows):
            break
    return pivots


def kernel_basis(rows, ncols: int, field: FieldSpec):
    """Basis of the right nullspace of the matrix given as a list of rows.

    Rows are lists of Scalars of length ``ncols``. The basis vectors are
    returned in ascending order of their free column and are normalized so
    the free coordinate equals one.
    """
    work = [list(row) for row in rows if any(not v.is_zero() for v in row)]
    if not work:
        return [
            [field.one if j == i else field.zero for j in range(ncols)]
            for i in range(ncols)
        ]
    pivots = _eliminate(work, ncols)
    pivot_cols = [c for _, c in pivots]
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        vec = [field.zero] * ncols
        vec[fc] = field.one
        # back-substitute pivot variables, bottom pivot first
        for r, c in reversed(pivots):
            s = field.zero
            for j in range(c + 1, ncols):
                if not vec[j].is_zero():
                    s = s + work[r][j] * vec[j]
            vec[c] = -s / work[r][c]
        basis.append(vec)
    return basis


def matrix_rank(rows, ncols: int) -> int:
    work = [list(row) for row in rows if any(not v.is_zero() for v in row)]
    if not work:
        return 0
    return len(_eliminate(work, ncols))


def primitive_normalize(vec):
    """Scale a scalar vector canonically.

    Over QQ: clear denominators and divide by the content, first nonzero
    entry positive.  Over GF(p): make the first nonzero entry one.
    """
    lead = next((v for v in vec if not v.is_zero()), None)
    if lead is None:
        return list(vec)
    field = lead.field
    if field.characteristic:
        inv = lead.inverse()
        return [v * inv for v in vec]
    from math import gcd

    denom = 1
    for v in vec:
        denom = denom * v.value.denominator // gcd(denom, v.value.denominator)
    nums = [v.value.numerator * (denom // v.value.denominator) for v in vec]
    g = 0
    for n in nums:
        g = gcd(g, n)
    if g == 0:
        g = 1
    if lead.value < 0:
        g = -g
    return [field.scalar(n // g) for n in nums]


def sparse_kernel(rows, columns, field: FieldSpec, sortkey=None):
    """Right nullspace from sparse constraint rows over an ordered column list.

    Builds the reduced echelon span of the rows and reads one kernel vector
    off per non-pivot column (free coordinate normalized to one), in column
    order.
    """
    position = {c: i for i, c in enumerate(columns)}
    key = sortkey or (lambda c: position[c])
    span = SpanBasis(key)
    for row in rows:
        span.insert(row)
    kernel = []
    for col in columns:
        if col in span.rows:
            continue
        vec = {col: field.one}
        for lead, row in span.rows.items():
            c = row.get(col)
            if c is not None and not c.is_zero():
                vec[lead] = -c
        kernel.append(vec)
    return kernel


class SpanBasis:
    """A row space in reduced echelon form over ordered column keys.

    Rows are sparse dicts ``key -> Scalar``.  ``sortkey`` fixes the total
    column order (smallest key is the leading position), which makes
    reduction and the stored basis canonical regardless of insertion order.
    """

    def __init__(self, sortkey=None):
        self.sortkey = sortkey or (lambda k: k)
        self.rows = {}  # lead key -> reduced row with lead coefficient 1

    def _lead(self, vec):
        return min(vec, key=self.sortkey)

    def reduce(self, vec):
        """Fully reduce a sparse vector against the basis; returns the residue."""
        vec = {k: v for k, v in vec.items() if not v.is_zero()}
        while vec:
            hit = None
            for k in sorted(vec, key=self.sortkey):
                if k in self.rows:
                    hit = k
                    break
            if hit is None:
                break
            coeff = vec[hit]
            for k, v in self.rows[hit].items():
                w = vec.get(k)
                w = -coeff * v if w is None else w - coeff * v
                if w.is_zero():
                    vec.pop(k, None)
                else:
                    vec[k] = w
        return vec

    def insert(self, vec) -> bool:
        """Add a vector to the span; returns True if the dimension grew."""
        res = self.reduce(vec)
        if not res:
            return False
        lead = self._lead(res)
        inv = res[lead].inverse()
        row = {k: v * inv for k, v in res.items()}
        # keep existing rows reduced against the new pivot
        for lk, other in self.rows.items():
            c = other.get(lead)
            if c is None or c.is_zero():
                continue
            for k, v in row.items():
                w = other.get(k)
                w = -c * v if w is None else w - c * v
                if w.is_zero():
                    other.pop(k, None)
                else:
                    other[k] = w
        self.rows[lead] = row
        return True

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def sorted_rows(self):
        return [self.rows[k] for k in sorted(self.rows, key=self.sortkey)]
