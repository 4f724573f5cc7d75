"""Matrix realizations: the split-form pair, the third matrix A^eps, the
transition matrix M and the maps built from it."""

from __future__ import annotations

from dataclasses import dataclass

from .matrices import (
    Matrix,
    NotMultiplicityFree,
    Singular,
    conjugate,
    mat_inverse,
    nullspace,
    primitive_idempotents,
    rank,
    rank_of_rows,
    solve,
)
from .params import (
    InadmissibleTuple,
    InvalidArray,
    ParameterArray,
    QRacahTuple,
    TripleEigenData,
    eigen_sequence,
    parameter_array,
    require_pair_admissible,
    require_triple_admissible,
    triple_eigen_data,
    varphi_sequence,
    z3_constants,
)
from .scalars import field_of, q_pochhammer


class NotInSpan(ArithmeticError):
    pass


class DependentBasis(ArithmeticError):
    pass


class NoSymmetrizer(ArithmeticError):
    pass


class NonUnique(ArithmeticError):
    pass


class DegenerateBasis(ArithmeticError):
    pass


@dataclass(frozen=True)
class NTCoefficients:
    e: object
    f: object
    f_star: object
    g: object
    g_star: object

    def astuple(self):
        return (self.e, self.f, self.f_star, self.g, self.g_star)


@dataclass(frozen=True)
class LeonardRealization:
    tuple: QRacahTuple
    A: Matrix
    A_star: Matrix
    A_eps: Matrix
    E: tuple
    E_star: tuple
    E_eps: tuple | None  # None when A^eps is not multiplicity-free
    eig: TripleEigenData
    params: ParameterArray
    M: Matrix | None = None


def split_pair(p: ParameterArray, fld=None):
    """A lower bidiagonal (diagonal theta, subdiagonal 1), A* upper bidiagonal
    (diagonal theta*, superdiagonal varphi)."""
    d = p.d
    if len(p.theta_star) != d + 1 or len(p.varphi) != d:
        raise InvalidArray("sequence lengths do not match")
    if fld is None:
        fld = field_of(p.theta[0])
    n = d + 1
    A = [[0] * n for _ in range(n)]
    As = [[0] * n for _ in range(n)]
    for i in range(n):
        A[i][i] = p.theta[i]
        As[i][i] = p.theta_star[i]
        if i:
            A[i][i - 1] = 1
            As[i - 1][i] = p.varphi[i - 1]
    return Matrix(A, fld), Matrix(As, fld)


def _check_q(q):
    if q**4 == 1:
        raise InadmissibleTuple("q^4 = 1")


def build_a_epsilon(A: Matrix, A_star: Matrix, t: QRacahTuple) -> Matrix:
    """``(q^-1 A* A - q A A*)/(q^2 - q^-2) + alpha_eps/(q + q^-1) I``."""
    require_pair_admissible(t)
    q = t.q
    _check_q(q)
    z = z3_constants(t)
    X = ((A_star @ A).scale(1 / q) - (A @ A_star).scale(q)).scale(1 / (q**2 - q**-2))
    return X.shift(z.alpha_eps / (q + 1 / q))


def a_epsilon_closed_form(t: QRacahTuple) -> Matrix:
    """Entrywise formula for A^eps in the split basis (tridiagonal)."""
    a, b, c, q, d = t.a, t.b, t.c, t.q, t.d
    C = c + 1 / c
    Qd = q ** (d + 1) + q ** (-d - 1)

    def entry(i, j):
        if i == j + 1:
            return -(q ** (d - 2 * i + 1)) / b
        if j == i + 1:
            k = j
            return (
                (q**k - q**-k)
                * (q ** (d - k + 1) - q ** (k - d - 1))
                * (a * b * c - q ** (d - 2 * k + 1))
                * (a * b / c - q ** (d - 2 * k + 1))
                / (a * a * b)
            )
        if i == j:
            return q ** (d - 2 * i) / (a * b) * (Qd - q ** (d - 2 * i) * (q + 1 / q)) + C * q ** (d - 2 * i)
        return 0

    return Matrix.from_function(d + 1, entry, t.field)


def a_epsilon_from_array(p: ParameterArray, t: QRacahTuple) -> Matrix:
    """A^eps entries written through theta, theta* and varphi."""
    q, d = t.q, t.d
    th, ts, vp = p.theta, p.theta_star, p.varphi
    ae = z3_constants(t).alpha_eps
    den = q**2 - q**-2

    def ph(i):
        return vp[i - 1] if 1 <= i <= d else 0

    def entry(i, j):
        if i == j + 1:
            return (ts[i] / q - q * ts[i - 1]) / den
        if j == i + 1:
            return vp[i] * (th[j] / q - q * th[i]) / den
        if i == j:
            return ae / (q + 1 / q) - th[i] * ts[i] / (q + 1 / q) - (q * ph(i) - ph(i + 1) / q) / den
        return 0

    return Matrix.from_function(d + 1, entry, t.field)


def _M_entry(t, i, j):
    a, b, c, q, d = t.a, t.b, t.c, t.q, t.d
    if not (0 <= i <= d and 0 <= j <= d) or i > j:
        return t.field.zero
    n = j - i
    q2 = q * q
    num = (
        q_pochhammer(q ** (2 * i + 2), q2, n)
        * q_pochhammer(q ** (2 * i - 2 * d), q2, n)
        * q_pochhammer(q ** (d - 2 * j + 1) / (a * b * c), q2, n)
    )
    return (-1) ** i * b**-i * c**n * q ** (i * i + (d - 2 * i) * j) * num / q_pochhammer(q2, q2, n)


def M_entry(t: QRacahTuple, i: int, j: int):
    """Entry (i, j) of the transition matrix; zero outside the upper triangle and outside 0..d."""
    return _M_entry(t, i, j)


def _require_M(t):
    require_pair_admissible(t)
    _check_q(t.q)


def transition_matrix(t: QRacahTuple) -> Matrix:
    """Upper triangular M, by the closed entry formula.

    Only pair-admissibility is required: M stays invertible when c^2 hits a
    power of q, which is exactly the case where the conjugation shows the
    eigenvalue collision of A^eps.
    """
    _require_M(t)
    return Matrix.from_function(t.d + 1, lambda i, j: _M_entry(t, i, j), t.field)


def M_diagonal(t, i):
    return (-1) ** i * t.b**-i * t.q ** (i * (t.d - i))


def M_up_ratio(t, i, j):
    """M_{i-1,j} / M_{i,j}."""
    a, b, c, q, d = t.a, t.b, t.c, t.q, t.d
    return (
        q ** (i + j - d - 1)
        * (q**i - q**-i)
        * (q ** (d - i + 1) - q ** (i - d - 1))
        * (a * b * c - q ** (d - 2 * i + 1))
        / (a * (q ** (i - j - 1) - q ** (j - i + 1)))
    )


def M_right_ratio(t, i, j):
    """M_{i,j+1} / M_{i,j}."""
    a, b, c, q, d = t.a, t.b, t.c, t.q, t.d
    return (
        q ** (j - i)
        * (q ** (j + 1) - q ** (-j - 1))
        * (q ** (d - j) - q ** (j - d))
        * (a * b * c - q ** (d - 2 * j - 1))
        / (a * b * (q ** (j - i + 1) - q ** (i - j - 1)))
    )


def M_down_ratio(t, i, j):
    """M_{i+1,j} / M_{i,j} for i < j."""
    a, b, c, q, d = t.a, t.b, t.c, t.q, t.d
    return (
        a
        * q ** (d - i - j)
        * (q ** (i - j) - q ** (j - i))
        / ((q ** (i + 1) - q ** (-i - 1)) * (q ** (d - i) - q ** (i - d)) * (a * b * c - q ** (d - 2 * i - 1)))
    )


def M_left_ratio(t, i, j):
    """M_{i,j-1} / M_{i,j} for i < j."""
    a, b, c, q, d = t.a, t.b, t.c, t.q, t.d
    return (
        a
        * b
        * q ** (i - j + 1)
        * (q ** (j - i) - q ** (i - j))
        / ((q**j - q**-j) * (q ** (d - j + 1) - q ** (j - d - 1)) * (a * b * c - q ** (d - 2 * j + 1)))
    )


def transition_matrix_by_recurrence(t: QRacahTuple, direction: str = "up") -> Matrix:
    """M grown from its diagonal: each column upward ("up") or each row rightward ("right")."""
    _require_M(t)
    d = t.d
    n = d + 1
    rows = [[t.field.zero] * n for _ in range(n)]
    for k in range(n):
        rows[k][k] = M_diagonal(t, k)
    if direction == "up":
        for j in range(n):
            for i in range(j, 0, -1):
                rows[i - 1][j] = M_up_ratio(t, i, j) * rows[i][j]
    elif direction == "right":
        for i in range(n):
            for j in range(i, d):
                rows[i][j + 1] = M_right_ratio(t, i, j) * rows[i][j]
    else:
        raise ValueError(f"unknown direction {direction!r}")
    return Matrix(rows, t.field)


def rho(X: Matrix, M: Matrix) -> Matrix:
    return conjugate(X, M)


def varphi_eps(t: QRacahTuple) -> list:
    """Superdiagonal of M^-1 A* M: the first split sequence of (b, c, a; q)."""
    return varphi_sequence(t.b, t.c, t.a, t.q, t.d)


def rho_targets(t: QRacahTuple):
    """Expected (M^-1 A^eps M, M^-1 A* M)."""
    d = t.d
    th_e = eigen_sequence(t.c, t.q, d)
    ts = eigen_sequence(t.b, t.q, d)
    pe = varphi_eps(t)
    lo = Matrix.from_function(d + 1, lambda i, j: th_e[i] if i == j else (1 if i == j + 1 else 0), t.field)
    up = Matrix.from_function(d + 1, lambda i, j: ts[i] if i == j else (pe[i] if j == i + 1 else 0), t.field)
    return lo, up


def nt_basis(A: Matrix, A_star: Matrix):
    I = Matrix.identity(A.dim, A.field)
    return [I, A, A_star, A @ A_star, A_star @ A]


def nt_decompose(X: Matrix, A: Matrix, A_star: Matrix) -> NTCoefficients:
    """Coordinates of X in the span of I, A, A*, AA*, A*A."""
    if A.dim < 3:
        raise DependentBasis("need d >= 2")
    basis = nt_basis(A, A_star)
    cols = [B.vec() for B in basis]
    design = [list(r) for r in zip(*cols)]
    if rank_of_rows(design, A.field) != 5:
        raise DependentBasis("I, A, A*, AA*, A*A are linearly dependent")
    res = solve(design, X.vec(), A.field)
    if res is None:
        raise NotInSpan("matrix is not in the span of I, A, A*, AA*, A*A")
    return NTCoefficients(*res[0])


def nt_expected(t: QRacahTuple) -> NTCoefficients:
    q = t.q
    zero = q * 0
    den = q**2 - q**-2
    return NTCoefficients(z3_constants(t).alpha_eps / (q + 1 / q), zero, zero, -q / den, 1 / (q * den))


def symmetrizer(A: Matrix, A_star: Matrix) -> Matrix:
    """The invertible D, unique up to scale, with ``D^-1 X^T D = X`` for X = A, A*.

    Normalized so its first nonzero entry (row-major) is 1.
    """
    n = A.dim
    fld = A.field
    eqs = []
    for X in (A, A_star):
        for r in range(n):
            for s in range(n):
                # (X^T D - D X)[r][s]
                row = [fld.zero] * (n * n)
                for k in range(n):
                    row[k * n + s] = row[k * n + s] + X[k, r]
                    row[r * n + k] = row[r * n + k] - X[k, s]
                eqs.append(row)
    basis = nullspace(eqs, fld)
    if not basis:
        raise NoSymmetrizer("no nonzero solution")
    if len(basis) > 1:
        raise NonUnique(f"solution space has dimension {len(basis)}")
    v = basis[0]
    lead = next(x for x in v if x)
    D = Matrix([[v[r * n + s] / lead for s in range(n)] for r in range(n)], fld)
    if rank(D) != n:
        raise NoSymmetrizer("solution is singular")
    return D


def symmetrizer_nullity(A: Matrix, A_star: Matrix) -> int:
    try:
        symmetrizer(A, A_star)
        return 1
    except NonUnique as exc:
        return int(str(exc).rsplit(" ", 1)[-1])
    except NoSymmetrizer:
        return 0


def idempotent(A: Matrix, eigs, i: int) -> Matrix:
    """The single primitive idempotent for eigs[i]."""
    fld = A.field
    P = Matrix.identity(A.dim, fld)
    den = fld.one
    for j, t in enumerate(eigs):
        if j != i:
            P = P @ A.shift(-t)
            den = den * (eigs[i] - t)
    return P.scale(1 / den)


def build_triple(t: QRacahTuple, strict: bool = True) -> LeonardRealization:
    """Split-form A, A*, the matching A^eps, their idempotents and M.

    With ``strict=False`` only pair-admissibility is required; when A^eps then
    fails to be multiplicity-free, ``E_eps`` is left as None.
    """
    if strict:
        require_triple_admissible(t)
    else:
        require_pair_admissible(t)
    p = parameter_array(t)
    A, As = split_pair(p, t.field)
    Ae = build_a_epsilon(A, As, t)
    eig = triple_eigen_data(t)
    E = tuple(primitive_idempotents(A, eig.theta))
    Es = tuple(primitive_idempotents(As, eig.theta_star))
    try:
        Ee = tuple(primitive_idempotents(Ae, eig.theta_eps))
    except NotMultiplicityFree:
        if strict:
            raise
        Ee = None
    return LeonardRealization(t, A, As, Ae, E, Es, Ee, eig, p, transition_matrix(t))


def split_basis_from_pair(A: Matrix, A_star: Matrix, theta, theta_star) -> Matrix:
    """S whose columns v, (A - th_0)v, ..., (A - th_{d-1})...(A - th_0)v form a split basis,
    v the first nonzero column of the idempotent of A* for theta*_0."""
    fld = A.field
    n = A.dim
    theta = [fld(x) for x in theta]
    theta_star = [fld(x) for x in theta_star]
    E0 = idempotent(A_star, theta_star, 0)
    col = next((j for j in range(n) if any(E0[i, j] for i in range(n))), None)
    if col is None:
        raise DegenerateBasis("theta*_0 is not an eigenvalue of A*")
    v = [E0[i, col] for i in range(n)]
    cols = [v]
    for k in range(n - 1):
        w = cols[-1]
        cols.append([sum((A[i, j] * w[j] for j in range(n)), fld.zero) - theta[k] * w[i] for i in range(n)])
    S = Matrix([[cols[j][i] for j in range(n)] for i in range(n)], fld)
    try:
        mat_inverse(S)
    except Singular:
        raise DegenerateBasis("split-basis vectors are dependent") from None
    return S


def split_form(A: Matrix, A_star: Matrix, theta, theta_star):
    """Conjugate a pair into split form; returns (A', A*', recovered varphi)."""
    S = split_basis_from_pair(A, A_star, theta, theta_star)
    As = conjugate(A_star, S)
    return conjugate(A, S), As, As.superdiagonal()
