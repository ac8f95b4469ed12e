"""Exact linear algebra over the scalar tower.

Sparse matrices are kept as ``{row: {col: value}}`` with zero entries
dropped.  Everything works for any field element type that supports
``+ - * /`` and ``is_zero`` (QScalar, QSurd), and ring operations for
ParamPoly where no division is needed.
"""

from __future__ import annotations

from .qscalar import ONE, ZERO
from .qscalar.ops import is_zero


class SparseMatrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, entries: dict | None = None):
        self.nrows, self.ncols = nrows, ncols
        self.rows: dict[int, dict[int, object]] = {}
        for (i, j), v in (entries or {}).items():
            if not is_zero(v):
                self.rows.setdefault(i, {})[j] = v

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): ONE for i in range(n)})

    @classmethod
    def from_columns(cls, nrows: int, columns: list[dict]) -> "SparseMatrix":
        return cls(nrows, len(columns), {(i, j): v for j, col in enumerate(columns) for i, v in col.items()})

    def get(self, i: int, j: int):
        return self.rows.get(i, {}).get(j, ZERO)

    def entries(self) -> dict:
        return {(i, j): v for i, r in self.rows.items() for j, v in r.items()}

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def is_zero(self) -> bool:
        return not self.rows

    def _binary(self, other, sign):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        out = {i: dict(r) for i, r in self.rows.items()}
        for i, r in other.rows.items():
            row = out.setdefault(i, {})
            for j, v in r.items():
                v = v if sign > 0 else -v
                row[j] = row[j] + v if j in row else v
        return SparseMatrix(self.nrows, self.ncols, {(i, j): v for i, r in out.items() for j, v in r.items()})

    def __add__(self, other):
        return self._binary(other, 1)

    def __sub__(self, other):
        return self._binary(other, -1)

    def __neg__(self):
        return self.scale(-ONE)

    def scale(self, c):
        return SparseMatrix(self.nrows, self.ncols, {(i, j): c * v for i, r in self.rows.items() for j, v in r.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, other):
        if isinstance(other, dict):
            return self.apply(other)
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out: dict = {}
        for i, r in self.rows.items():
            acc: dict = {}
            for k, a in r.items():
                for j, b in other.rows.get(k, {}).items():
                    p = a * b
                    acc[j] = acc[j] + p if j in acc else p
            for j, v in acc.items():
                out[(i, j)] = v
        return SparseMatrix(self.nrows, other.ncols, out)

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for i, r in self.rows.items():
            acc = None
            for j, a in r.items():
                if j in vec:
                    p = a * vec[j]
                    acc = p if acc is None else acc + p
            if acc is not None and not is_zero(acc):
                out[i] = acc
        return out

    def column(self, j: int) -> dict:
        return {i: r[j] for i, r in self.rows.items() if j in r}

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.ncols, self.nrows, {(j, i): v for (i, j), v in self.entries().items()})

    def kron(self, other: "SparseMatrix") -> "SparseMatrix":
        ent = {}
        for (i, j), a in self.entries().items():
            for (k, l), b in other.entries().items():
                ent[(i * other.nrows + k, j * other.ncols + l)] = a * b
        return SparseMatrix(self.nrows * other.nrows, self.ncols * other.ncols, ent)

    def map(self, f) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, {k: f(v) for k, v in self.entries().items()})

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and (self - other).is_zero()

    __hash__ = None

    def to_dense(self) -> list[list]:
        return [[self.get(i, j) for j in range(self.ncols)] for i in range(self.nrows)]

    def rank(self) -> int:
        return len(_rref([dict(r) for r in self.rows.values()])[1])

    def nullspace(self) -> list[dict]:
        """Basis of {v : M v = 0} as sparse column vectors."""
        reduced, pivots = _rref([dict(r) for r in self.rows.values()])
        free = [j for j in range(self.ncols) if j not in pivots]
        basis = []
        for f in free:
            v = {f: ONE}
            for row, p in zip(reduced, pivots):
                if f in row:
                    v[p] = -row[f]
            basis.append(v)
        return basis


def _rref(rows: list[dict]) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form of sparse rows; returns (rows, pivot columns)."""
    rows = [{j: v for j, v in r.items() if not is_zero(v)} for r in rows]
    rows = [r for r in rows if r]
    done: list[dict] = []
    pivots: list[int] = []
    while rows:
        # pick the row whose leading column is smallest, preferring sparse rows
        rows.sort(key=lambda r: (min(r), len(r)))
        r = rows.pop(0)
        p = min(r)
        inv = ONE / r[p]
        r = {j: v * inv for j, v in r.items()}
        new_rows = []
        for other in rows:
            if p in other:
                f = other[p]
                other = _axpy(other, r, -f)
            if other:
                new_rows.append(other)
        rows = new_rows
        done = [_axpy(d, r, -d[p]) if p in d else d for d in done]
        done.append(r)
        pivots.append(p)
    order = sorted(range(len(pivots)), key=lambda k: pivots[k])
    return [done[k] for k in order], [pivots[k] for k in order]


def _axpy(y: dict, x: dict, a) -> dict:
    out = dict(y)
    for j, v in x.items():
        t = a * v
        out[j] = out[j] + t if j in out else t
    return {j: v for j, v in out.items() if not is_zero(v)}


def solve_in_span(vectors: list[dict], target: dict):
    """Coefficients c with sum c_i vectors[i] = target, or None if impossible.

    The vectors must be linearly independent.
    """
    n = len(vectors)
    keys = sorted(set().union(target.keys(), *[v.keys() for v in vectors]))
    aug = []
    for k in keys:
        row = {i: v[k] for i, v in enumerate(vectors) if k in v}
        if k in target:
            row[n] = target[k]
        if row:
            aug.append(row)
    reduced, pivots = _rref(aug)
    if n in pivots:
        return None
    if len(pivots) < n:
        raise ValueError("spanning vectors are linearly dependent")
    coeffs = [ZERO] * n
    for row, p in zip(reduced, pivots):
        coeffs[p] = row.get(n, ZERO)
    return coeffs


# dense helpers ----------------------------------------------------------


def dense_mul(a: list[list], b: list[list]) -> list[list]:
    n, m, k = len(a), len(b[0]), len(b)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ZERO
            for t in range(k):
                if not (is_zero(a[i][t]) or is_zero(b[t][j])):
                    acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def det(m: list[list]):
    """Determinant by Gaussian elimination over the field."""
    a = [list(r) for r in m]
    n = len(a)
    result = ONE
    for c in range(n):
        piv = next((r for r in range(c, n) if not is_zero(a[r][c])), None)
        if piv is None:
            return ZERO
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            result = -result
        result = result * a[c][c]
        inv = ONE / a[c][c]
        for r in range(c + 1, n):
            if not is_zero(a[r][c]):
                f = a[r][c] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return result


def charpoly(m: list[list]) -> list:
    """Coefficients [c_0, ..., c_n] of det(x I - M), by Faddeev-LeVerrier."""
    n = len(m)
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    mk = [[ZERO] * n for _ in range(n)]
    for k in range(1, n + 1):
        prev = coeffs[n - k + 1]
        mk = [[mk_ij + (prev if i == j else ZERO) for j, mk_ij in enumerate(row)] for i, row in enumerate(mk)]
        mk = dense_mul(m, mk)
        tr = ZERO
        for i in range(n):
            tr = tr + mk[i][i]
        coeffs[n - k] = -tr / k
    return coeffs


def dense_sub_scalar(m: list[list], lam) -> list[list]:
    return [[v - lam if i == j else v for j, v in enumerate(row)] for i, row in enumerate(m)]
