"""Dense exact square matrices and the bits of linear algebra the package needs.

Entries are stored "raw": Fractions over Q, ints in ``[0, p)`` over GF(p).
Indexing returns proper field elements.  Elimination always pivots on the
first nonzero entry of a column, lowest row index first, so every routine
here is deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from operator import mul

from .scalars import FieldMismatch, ParseError, Q, FieldConfig


class DimensionMismatch(ValueError):
    pass


class Singular(ArithmeticError):
    pass


class NotMultiplicityFree(ValueError):
    """Eigenvalue data does not describe a multiplicity-free matrix."""

    def __init__(self, msg, index=None):
        super().__init__(msg)
        self.index = index


class Matrix:
    __slots__ = ("field", "_r")

    def __init__(self, rows, field: FieldConfig = Q):
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DimensionMismatch("matrix must be square and nonempty")
        self.field = field
        self._r = tuple(tuple(field.raw(x) for x in r) for r in rows)

    @classmethod
    def _raw(cls, raw, field):
        m = object.__new__(cls)
        m.field = field
        m._r = tuple(tuple(r) for r in raw)
        return m

    # constructors

    @classmethod
    def identity(cls, n, field=Q):
        one, zero = field.raw(1), field.raw(0)
        return cls._raw([[one if i == j else zero for j in range(n)] for i in range(n)], field)

    @classmethod
    def zero(cls, n, field=Q):
        z = field.raw(0)
        return cls._raw([[z] * n for _ in range(n)], field)

    @classmethod
    def diag(cls, values, field=Q):
        vals = [field.raw(v) for v in values]
        z = field.raw(0)
        n = len(vals)
        return cls._raw([[vals[i] if i == j else z for j in range(n)] for i in range(n)], field)

    @classmethod
    def from_function(cls, n, f, field=Q):
        """Matrix with entry ``f(i, j)``; ``f`` may return field elements or ints."""
        return cls([[f(i, j) for j in range(n)] for i in range(n)], field)

    # access

    @property
    def dim(self) -> int:
        return len(self._r)

    def __getitem__(self, ij):
        i, j = ij
        return self.field.wrap(self._r[i][j])

    def rows(self):
        w = self.field.wrap
        return [[w(x) for x in r] for r in self._r]

    def diagonal(self):
        return [self[i, i] for i in range(self.dim)]

    def subdiagonal(self):
        return [self[i, i - 1] for i in range(1, self.dim)]

    def superdiagonal(self):
        return [self[i - 1, i] for i in range(1, self.dim)]

    def is_zero(self) -> bool:
        return not any(x for r in self._r for x in r)

    def nonzero_entries(self):
        return [(i, j) for i, r in enumerate(self._r) for j, x in enumerate(r) if x]

    def first_difference(self, other: "Matrix"):
        """First (i, j) in row-major order where the two matrices differ, or None."""
        self._check(other)
        for i, (r, s) in enumerate(zip(self._r, other._r)):
            for j, (x, y) in enumerate(zip(r, s)):
                if x != y:
                    return (i, j)
        return None

    # arithmetic

    def _check(self, other):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if other.dim != self.dim:
            raise DimensionMismatch(f"{self.dim} vs {other.dim}")

    def _scalar(self, s):
        return self.field.raw(s)

    def __add__(self, other):
        self._check(other)
        p = self.field.modulus
        if p:
            return Matrix._raw([[(x + y) % p for x, y in zip(r, s)] for r, s in zip(self._r, other._r)], self.field)
        return Matrix._raw([[x + y for x, y in zip(r, s)] for r, s in zip(self._r, other._r)], self.field)

    def __sub__(self, other):
        self._check(other)
        p = self.field.modulus
        if p:
            return Matrix._raw([[(x - y) % p for x, y in zip(r, s)] for r, s in zip(self._r, other._r)], self.field)
        return Matrix._raw([[x - y for x, y in zip(r, s)] for r, s in zip(self._r, other._r)], self.field)

    def __neg__(self):
        return self.scale(-1)

    def __matmul__(self, other):
        self._check(other)
        p = self.field.modulus
        cols = list(zip(*other._r))
        if p:
            return Matrix._raw([[sum(map(mul, r, c)) % p for c in cols] for r in self._r], self.field)
        return Matrix._raw([[sum(map(mul, r, c), Fraction(0)) for c in cols] for r in self._r], self.field)

    def scale(self, s):
        s = self._scalar(s)
        p = self.field.modulus
        if p:
            return Matrix._raw([[x * s % p for x in r] for r in self._r], self.field)
        return Matrix._raw([[x * s for x in r] for r in self._r], self.field)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self @ other
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def shift(self, s):
        """``self + s*I``."""
        s = self._scalar(s)
        p = self.field.modulus
        rows = [list(r) for r in self._r]
        for i in range(self.dim):
            rows[i][i] = (rows[i][i] + s) % p if p else rows[i][i] + s
        return Matrix._raw(rows, self.field)

    def transpose(self):
        return Matrix._raw(list(zip(*self._r)), self.field)

    @property
    def T(self):
        return self.transpose()

    def trace(self):
        t = sum((self._r[i][i] for i in range(self.dim)), self.field.raw(0))
        return self.field.wrap(t % self.field.modulus if self.field.modulus else t)

    def __pow__(self, n: int):
        if n < 0:
            return mat_inverse(self) ** (-n)
        out = Matrix.identity(self.dim, self.field)
        base = self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self._r == other._r

    def __hash__(self):
        return hash((self.field, self._r))

    def vec(self):
        """Row-major flattening, as field elements."""
        w = self.field.wrap
        return [w(x) for r in self._r for x in r]

    # text

    def to_json(self):
        f = self.field
        return {"dim": self.dim, "rows": [[f.format(f.wrap(x)) for x in r] for r in self._r]}

    @classmethod
    def from_json(cls, obj, field: FieldConfig):
        try:
            n = obj["dim"]
            rows = obj["rows"]
        except (KeyError, TypeError):
            raise ParseError("matrix object needs 'dim' and 'rows'") from None
        if not isinstance(n, int) or len(rows) != n or any(len(r) != n for r in rows):
            raise ParseError(f"matrix rows do not match dim={n}")
        return cls([[field.parse(s) for s in r] for r in rows], field)

    def __repr__(self):
        return f"Matrix({self.rows()!r}, {self.field})"

    def __str__(self):
        f = self.field
        cells = [[f.format(f.wrap(x)) for x in r] for r in self._r]
        w = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)


# elimination on raw row lists


def _rref(rows, p):
    """Reduced row echelon form of a list of raw rows; returns (R, pivot columns)."""
    A = [list(r) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        if p:
            s = pow(A[r][c], -1, p)
            A[r] = [x * s % p for x in A[r]]
        else:
            s = A[r][c]
            A[r] = [x / s for x in A[r]]
        pr = A[r]
        for i in range(m):
            f = A[i][c]
            if i != r and f:
                if p:
                    A[i] = [(x - f * y) % p for x, y in zip(A[i], pr)]
                else:
                    A[i] = [x - f * y for x, y in zip(A[i], pr)]
        pivots.append(c)
        r += 1
    return A, pivots


def _raw_rows(rows, field):
    return [[field.raw(x) for x in r] for r in rows]


def rank_of_rows(rows, field: FieldConfig = Q) -> int:
    if not rows:
        return 0
    return len(_rref(_raw_rows(rows, field), field.modulus)[1])


def nullspace(rows, field: FieldConfig = Q):
    """Basis of {x : rows @ x = 0}, one vector per free column (unit there)."""
    raw = _raw_rows(rows, field)
    n = len(raw[0])
    R, pivots = _rref(raw, field.modulus)
    p = field.modulus
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [field.raw(0)] * n
        v[f] = field.raw(1)
        for k, pc in enumerate(pivots):
            v[pc] = (-R[k][f]) % p if p else -R[k][f]
        basis.append([field.wrap(x) for x in v])
    return basis


def solve(rows, rhs, field: FieldConfig = Q):
    """Solve ``rows @ x = rhs`` exactly.

    Returns ``(x, unique)`` with ``x`` one solution (free variables zero), or
    None when the system is inconsistent.
    """
    raw = _raw_rows(rows, field)
    n = len(raw[0])
    aug = [r + [field.raw(b)] for r, b in zip(raw, rhs)]
    R, pivots = _rref(aug, field.modulus)
    if n in pivots:
        return None
    x = [field.raw(0)] * n
    for k, pc in enumerate(pivots):
        x[pc] = R[k][n]
    return [field.wrap(v) for v in x], len(pivots) == n


# operations on Matrix


def mat_arith(op: str, X: Matrix, Y):
    """Ring operation by name: add, sub, mul, or scale (Y a scalar)."""
    if op == "add":
        return X + Y
    if op == "sub":
        return X - Y
    if op == "mul":
        return X @ Y
    if op == "scale":
        return X.scale(Y)
    raise ValueError(f"unknown op {op!r}")


def mat_inverse(X: Matrix) -> Matrix:
    n = X.dim
    f = X.field
    one, zero = f.raw(1), f.raw(0)
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(X._r)]
    R, pivots = _rref(aug, f.modulus)
    if pivots[:n] != list(range(n)):
        raise Singular("matrix is singular")
    return Matrix._raw([r[n:] for r in R], f)


def rank(X: Matrix) -> int:
    return len(_rref(X._r, X.field.modulus)[1])


def det(X: Matrix):
    """Determinant by elimination (used only for diagnostics)."""
    f = X.field
    p = f.modulus
    A = [list(r) for r in X._r]
    n = X.dim
    d = f.raw(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return f.zero
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = -d
        d = d * A[c][c]
        inv = pow(A[c][c], -1, p) if p else 1 / A[c][c]
        for i in range(c + 1, n):
            g = A[i][c] * inv
            if g:
                A[i] = [(x - g * y) % p if p else x - g * y for x, y in zip(A[i], A[c])]
    return f.wrap(d % p if p else d)


def shape_classify(X: Matrix) -> str:
    """Most specific of: diagonal, lower-bidiagonal, upper-bidiagonal,
    irreducible-tridiagonal, tridiagonal, general."""
    n = X.dim
    r = X._r
    far = any(r[i][j] for i in range(n) for j in range(n) if abs(i - j) > 1)
    if far:
        return "general"
    sub = [r[i][i - 1] for i in range(1, n)]
    sup = [r[i - 1][i] for i in range(1, n)]
    if not any(sub) and not any(sup):
        return "diagonal"
    if not any(sup):
        return "lower-bidiagonal"
    if not any(sub):
        return "upper-bidiagonal"
    if all(sub) and all(sup):
        return "irreducible-tridiagonal"
    return "tridiagonal"


def primitive_idempotents(A: Matrix, eigs) -> list[Matrix]:
    """``E_i = prod_{j != i} (A - th_j I) / (th_i - th_j)`` for each listed eigenvalue.

    Raises NotMultiplicityFree when two eigenvalues coincide or some
    ``A - th_i I`` does not have rank ``dim - 1``.
    """
    f = A.field
    th = [f(x) for x in eigs]
    n = A.dim
    if len(th) != n:
        raise DimensionMismatch(f"{len(th)} eigenvalues for a {n}x{n} matrix")
    seen = {}
    for i, t in enumerate(th):
        if t in seen:
            raise NotMultiplicityFree(f"eigenvalues {seen[t]} and {i} coincide", index=i)
        seen[t] = i
    shifted = [A.shift(-t) for t in th]
    for i, S in enumerate(shifted):
        if rank(S) != n - 1:
            raise NotMultiplicityFree(f"rank(A - theta_{i} I) != {n - 1}", index=i)
    # the factors commute, so prefix/suffix products give every numerator
    I = Matrix.identity(n, f)
    prefix = [I]
    for S in shifted[:-1]:
        prefix.append(prefix[-1] @ S)
    suffix = [I]
    for S in reversed(shifted[1:]):
        suffix.append(S @ suffix[-1])
    suffix.reverse()
    out = []
    for i in range(n):
        denom = f.one
        for j in range(n):
            if j != i:
                denom = denom * (th[i] - th[j])
        out.append((prefix[i] @ suffix[i]).scale(1 / denom))
    return out


def conjugate(X: Matrix, M: Matrix) -> Matrix:
    """``M^-1 X M``."""
    return mat_inverse(M) @ X @ M
