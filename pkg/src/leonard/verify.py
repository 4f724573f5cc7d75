"""Exact checkers for Leonard pairs, triples and the identities they satisfy.

Every check compares by exact equality; a failing check carries the first
offending index or matrix entry (row-major) as its witness.
"""

from __future__ import annotations

from .matrices import Matrix, NotMultiplicityFree, mat_inverse, primitive_idempotents, rank, shape_classify
from .params import (
    AWCoefficients,
    InconsistentCoefficients,
    ParameterArray,
    QRacahTuple,
    Z3Constants,
    aw_coefficients,
    aw_coefficients_from_array,
    check_pair_admissible,
    check_triple_admissible,
    derived_scalars,
    validate_parameter_array,
    z3_constants,
)
from .realize import (
    LeonardRealization,
    M_diagonal,
    M_down_ratio,
    M_left_ratio,
    NoSymmetrizer,
    NonUnique,
    a_epsilon_closed_form,
    a_epsilon_from_array,
    build_triple,
    nt_decompose,
    nt_expected,
    rho,
    rho_targets,
    symmetrizer,
    transition_matrix,
    transition_matrix_by_recurrence,
)
from .report import Check, Report


def _zero(name, X: Matrix, label="") -> Check:
    hit = next(iter(X.nonzero_entries()), None)
    if hit is None:
        return Check(name, True)
    return Check(name, False, f"{label}entry {hit}".strip())


def _equal(name, X: Matrix, Y: Matrix, label="") -> Check:
    hit = X.first_difference(Y)
    if hit is None:
        return Check(name, True)
    return Check(name, False, f"{label}entry {hit}".strip())


def check_multiplicity_free(A: Matrix, eigs, name="multiplicity-free") -> Check:
    eigs = [A.field(x) for x in eigs]
    if len(eigs) != A.dim:
        return Check(name, False, f"{len(eigs)} eigenvalues for dimension {A.dim}")
    seen = {}
    for i, x in enumerate(eigs):
        if x in seen:
            return Check(name, False, f"eigenvalue {seen[x]} = eigenvalue {i}")
        seen[x] = i
    for i, x in enumerate(eigs):
        if rank(A.shift(-x)) != A.dim - 1:
            return Check(name, False, f"rank(A - theta_{i} I) != {A.dim - 1}")
    return Check(name, True)


def _idempotent_witness(A: Matrix, E):
    """None if E is a valid ordered family of primitive idempotents for A, else a reason."""
    n = A.dim
    if len(E) != n:
        return f"{len(E)} idempotents for dimension {n}"
    total = Matrix.zero(n, A.field)
    lams = []
    for i, Ei in enumerate(E):
        if Ei.trace() != 1:
            return f"tr E_{i} != 1"
        AE = A @ Ei
        lam = AE.trace()
        if AE != Ei.scale(lam) or Ei @ A != AE:
            return f"A E_{i} != theta E_{i}"
        lams.append(lam)
        total = total + Ei
    if total != Matrix.identity(n, A.field):
        return "idempotents do not sum to I"
    if len(set(lams)) != n:
        return "eigenvalues of idempotents repeat"
    return None


def check_leonard_system(A, E_list, A_star, E_star_list, name="Leonard system") -> Check:
    """Both idempotent families valid, and E_i B E_j zero iff |i - j| > 1 (B the other matrix)."""
    for label, X, E in (("E", A, E_list), ("E*", A_star, E_star_list)):
        w = _idempotent_witness(X, E)
        if w:
            return Check(name, False, f"{label}: {w}")
    n = A.dim
    for label, B, E in (("E_i A* E_j", A_star, E_list), ("E*_i A E*_j", A, E_star_list)):
        EB = [Ei @ B for Ei in E]
        for i in range(n):
            for j in range(n):
                X = EB[i] @ E[j]
                if abs(i - j) > 1 and not X.is_zero():
                    return Check(name, False, f"{label} nonzero at (i,j)=({i},{j}), entry {X.nonzero_entries()[0]}")
                if abs(i - j) == 1 and X.is_zero():
                    return Check(name, False, f"{label} zero at (i,j)=({i},{j})")
    return Check(name, True)


def check_leonard_triple_system(r: LeonardRealization) -> Report:
    rep = Report()
    mats = {"A": (r.A, r.eig.theta, r.E), "A*": (r.A_star, r.eig.theta_star, r.E_star),
            "A^eps": (r.A_eps, r.eig.theta_eps, r.E_eps)}
    for k, (X, eigs, _) in mats.items():
        rep.add(check_multiplicity_free(X, eigs, f"multiplicity-free {k}"))
    if not rep.overall or r.E_eps is None:
        if r.E_eps is None and rep.overall:
            rep.add(Check("multiplicity-free A^eps", False, "no idempotents for A^eps"))
        for pair in (("A", "A*"), ("A*", "A^eps"), ("A^eps", "A")):
            rep.add(Check(f"Leonard system ({pair[0]},{pair[1]})", False, "not evaluated: not multiplicity-free"))
        return rep
    for x, y in (("A", "A*"), ("A*", "A^eps"), ("A^eps", "A")):
        X, _, EX = mats[x]
        Y, _, EY = mats[y]
        rep.add(check_leonard_system(X, EX, Y, EY, f"Leonard system ({x},{y})"))
    return rep


def aw_residuals(A: Matrix, As: Matrix, c: AWCoefficients):
    A2, As2 = A @ A, As @ As
    AAs, AsA = A @ As, As @ A
    I = Matrix.identity(A.dim, A.field)
    r1 = (A2 @ As - (A @ As @ A).scale(c.beta) + As @ A2 - (AAs + AsA).scale(c.gamma) - As.scale(c.varrho)
          - A2.scale(c.gamma_star) - A.scale(c.omega) - I.scale(c.eta))
    r2 = (As2 @ A - (As @ A @ As).scale(c.beta) + A @ As2 - (AsA + AAs).scale(c.gamma_star) - A.scale(c.varrho_star)
          - As2.scale(c.gamma) - As.scale(c.omega) - I.scale(c.eta_star))
    return r1, r2


def check_askey_wilson(A: Matrix, A_star: Matrix, c: AWCoefficients, name="Askey-Wilson relations") -> Check:
    r1, r2 = aw_residuals(A, A_star, c)
    for k, R in enumerate((r1, r2), 1):
        ch = _zero(name, R, f"relation {k} ")
        if not ch.passed:
            return ch
    return Check(name, True)


def z3_residuals(A, As, Ae, z: Z3Constants, q):
    I = Matrix.identity(A.dim, A.field)
    X = (A, As, Ae)
    al = (z.alpha, z.alpha_star, z.alpha_eps)
    out = []
    for k in range(3):
        Y, Z = X[(k + 1) % 3], X[(k + 2) % 3]
        lhs = ((Y @ Z).scale(q) - (Z @ Y).scale(1 / q)).scale(1 / (q**2 - q**-2)) + X[k]
        out.append(lhs - I.scale(al[k] / (q + 1 / q)))
    return out


def check_z3_symmetric(A, A_star, A_eps, z: Z3Constants, q, name="Z3-symmetric relations") -> Check:
    if q**4 == 1:
        return Check(name, False, "q^4 = 1")
    for k, R in enumerate(z3_residuals(A, A_star, A_eps, z, q), 1):
        ch = _zero(name, R, f"relation {k} ")
        if not ch.passed:
            return ch
    return Check(name, True)


def psi_expressions(A, As, Ae, z: Z3Constants, q):
    """The six cubic expressions that each equal psi I."""
    al, als, ale = z.alpha, z.alpha_star, z.alpha_eps
    A2, As2, Ae2 = A @ A, As @ As, Ae @ Ae
    qi = 1 / q
    q2, qm2 = q * q, qi * qi

    def lin(x, X, y, Y, w, W):
        return X.scale(x) + Y.scale(y) + W.scale(w)

    return [
        (A @ As @ Ae).scale(q) + lin(q2, A2, qm2, As2, q2, Ae2) - lin(q * al, A, qi * als, As, q * ale, Ae),
        (Ae @ A @ As).scale(q) + lin(q2, Ae2, qm2, A2, q2, As2) - lin(q * ale, Ae, qi * al, A, q * als, As),
        (As @ Ae @ A).scale(q) + lin(q2, As2, qm2, Ae2, q2, A2) - lin(q * als, As, qi * ale, Ae, q * al, A),
        (As @ A @ Ae).scale(qi) + lin(qm2, As2, q2, A2, qm2, Ae2) - lin(qi * als, As, q * al, A, qi * ale, Ae),
        (Ae @ As @ A).scale(qi) + lin(qm2, Ae2, q2, As2, qm2, A2) - lin(qi * ale, Ae, q * als, As, qi * al, A),
        (A @ Ae @ As).scale(qi) + lin(qm2, A2, q2, Ae2, qm2, As2) - lin(qi * al, A, q * ale, Ae, qi * als, As),
    ]


def check_psi_identities(A, A_star, A_eps, z: Z3Constants, q, name="psi identities") -> Check:
    target = Matrix.identity(A.dim, A.field).scale(z.psi)
    for k, X in enumerate(psi_expressions(A, A_star, A_eps, z, q), 1):
        ch = _equal(name, X, target, f"expression {k} ")
        if not ch.passed:
            return ch
    return Check(name, True)


def trace_scalars(X: Matrix, E_other):
    """``tr(X F_i)`` for each idempotent F_i of the other matrix."""
    return [(X @ F).trace() for F in E_other]


def check_trace_scalars(r: LeonardRealization, p: ParameterArray, name="trace scalars") -> Check:
    ds = derived_scalars(p)
    for label, X, F, closed in (("a", r.A, r.E_star, ds.a_seq), ("a*", r.A_star, r.E, ds.a_star_seq)):
        tr = trace_scalars(X, F)
        for i, Fi in enumerate(F):
            if tr[i] != closed[i]:
                return Check(name, False, f"{label}_{i}: trace != closed form")
            if Fi @ X @ Fi != Fi.scale(tr[i]):
                return Check(name, False, f"{label}_{i}: sandwich identity fails")
    return Check(name, True)


def check_omega_consistency(t: QRacahTuple, p: ParameterArray, name="AW coefficients dual path") -> Check:
    try:
        alt = aw_coefficients_from_array(p)
    except InconsistentCoefficients as exc:
        return Check(name, False, str(exc))
    ref = aw_coefficients(t)
    names = ("beta", "gamma", "gamma_star", "varrho", "varrho_star", "omega", "eta", "eta_star")
    for n, x, y in zip(names, ref.astuple(), alt.astuple()):
        if x != y:
            return Check(name, False, n)
    return Check(name, True)


def _c_squared_hit(t: QRacahTuple):
    return any(t.c * t.c == t.q ** (2 * t.d - 2 - 2 * k) for k in range(2 * t.d - 1))


def check_conjugation(r: LeonardRealization, M: Matrix) -> Report:
    t = r.tuple
    rep = Report()
    lo, up = rho_targets(t)
    rep.add(_equal("M^-1 A^eps M lower bidiagonal", rho(r.A_eps, M), lo))
    rep.add(_equal("M^-1 A* M upper bidiagonal", rho(r.A_star, M), up))
    mf = check_multiplicity_free(r.A_eps, r.eig.theta_eps).passed
    hit = _c_squared_hit(t)
    rep.add(Check("multiplicity-free criterion", mf != hit,
                  None if mf != hit else f"multiplicity-free={mf}, c² in power set={hit}"))
    return rep


def check_transition_matrix(t: QRacahTuple, M: Matrix, name="transition matrix") -> Report:
    rep = Report()
    d = t.d
    rep.add(_equal(f"{name} upward recurrence", M, transition_matrix_by_recurrence(t, "up")))
    rep.add(_equal(f"{name} rightward recurrence", M, transition_matrix_by_recurrence(t, "right")))
    bad = None
    for i in range(d + 1):
        if M[i, i] != M_diagonal(t, i):
            bad = f"diagonal {i}"
            break
        for j in range(i + 1, d + 1):
            if M[i + 1, j] != M_down_ratio(t, i, j) * M[i, j]:
                bad = f"downward recurrence at ({i},{j})"
                break
            if M[i, j - 1] != M_left_ratio(t, i, j) * M[i, j]:
                bad = f"leftward recurrence at ({i},{j})"
                break
        if bad:
            break
    rep.add(Check(f"{name} diagonal and inverse recurrences", bad is None, bad))
    rep.add(Check(f"{name} upper triangular", all(i <= j for i, j in M.nonzero_entries())))
    return rep


def check_nt_pattern(r: LeonardRealization, name="NT decomposition") -> Check:
    try:
        got = nt_decompose(r.A_eps, r.A, r.A_star)
    except ArithmeticError as exc:
        return Check(name, False, str(exc))
    exp = nt_expected(r.tuple)
    for n, x, y in zip(("e", "f", "f*", "g", "g*"), got.astuple(), exp.astuple()):
        if x != y:
            return Check(name, False, n)
    if got.g != -(r.tuple.q ** 2) * got.g_star:
        return Check(name, False, "g/g* != -q²")
    return Check(name, True)


def check_symmetrizer(A: Matrix, A_star: Matrix, name="symmetrizer") -> Check:
    try:
        D = symmetrizer(A, A_star)
    except (NoSymmetrizer, NonUnique) as exc:
        return Check(name, False, str(exc))
    Di = mat_inverse(D)
    for label, X in (("A", A), ("A*", A_star)):
        ch = _equal(name, Di @ X.T @ D, X, f"{label} ")
        if not ch.passed:
            return ch
    return Check(name, True)


def check_shapes(r: LeonardRealization) -> Report:
    rep = Report()
    for label, X, want in (("A", r.A, "lower-bidiagonal"), ("A*", r.A_star, "upper-bidiagonal"),
                           ("A^eps", r.A_eps, "irreducible-tridiagonal")):
        got = shape_classify(X)
        rep.add(Check(f"shape {label}", got == want, None if got == want else got))
    return rep


def verify_realization(r: LeonardRealization, M: Matrix | None = None) -> Report:
    """Every identity check on an assembled realization (matrices taken as given)."""
    t = r.tuple
    M = r.M if M is None else M
    rep = Report()
    p = r.params
    pa = validate_parameter_array(p, t.q)
    for c in pa.checks:
        rep.add(Check(f"parameter array {c.name}", c.passed, c.witness))
    rep.extend(check_shapes(r))
    trip = check_leonard_triple_system(r)
    rep.extend(trip)
    rep.add(check_askey_wilson(r.A, r.A_star, aw_coefficients(t)))
    rep.add(check_omega_consistency(t, p))
    z = z3_constants(t)
    rep.add(check_z3_symmetric(r.A, r.A_star, r.A_eps, z, t.q))
    rep.add(check_psi_identities(r.A, r.A_star, r.A_eps, z, t.q))
    rep.add(_equal("A^eps closed form", r.A_eps, a_epsilon_closed_form(t)))
    rep.add(_equal("A^eps entries via array", r.A_eps, a_epsilon_from_array(p, t)))
    if r.E_eps is not None and trip.overall:
        rep.add(check_trace_scalars(r, p))
    else:
        rep.add(Check("trace scalars", False, "not evaluated: idempotents unavailable"))
    rep.extend(check_transition_matrix(t, M))
    rep.extend(check_conjugation(r, M))
    rep.add(check_nt_pattern(r))
    rep.add(check_symmetrizer(r.A, r.A_star))
    return rep


def full_verification(t: QRacahTuple) -> Report:
    """Admissibility, construction, then every checker; stops at the first admissibility failure."""
    rep = Report()
    pair = check_pair_admissible(t)
    rep.extend(pair)
    if not pair.overall:
        return rep
    trip = check_triple_admissible(t)
    rep.extend(trip)
    if not trip.overall:
        return rep
    try:
        r = build_triple(t)
    except (NotMultiplicityFree, ArithmeticError, ValueError) as exc:
        rep.add(Check("build", False, str(exc)))
        return rep
    rep.add(Check("build", True))
    return rep.extend(verify_realization(r))


def realization_from_matrices(t: QRacahTuple, p: ParameterArray, A, A_star, A_eps, M=None) -> LeonardRealization:
    """Assemble a realization from supplied matrices, recomputing all idempotents."""
    from .params import triple_eigen_data

    eig = triple_eigen_data(t)

    def idem(X, eigs):
        try:
            return tuple(primitive_idempotents(X, eigs))
        except NotMultiplicityFree:
            return None

    E = idem(A, eig.theta)
    Es = idem(A_star, eig.theta_star)
    Ee = idem(A_eps, eig.theta_eps)
    n = t.d + 1
    blank = tuple(Matrix.zero(n, t.field) for _ in range(n))
    return LeonardRealization(t, A, A_star, A_eps, E or blank, Es or blank, Ee, eig, p,
                              M if M is not None else transition_matrix(t))
