import dataclasses
from fractions import Fraction as Fr

from hypothesis import given, settings

from _strategies import tuples
from leonard.actions import triple_orbit, twins
from leonard.matrices import Matrix, primitive_idempotents
from leonard.params import QRacahTuple, aw_coefficients, parameter_array, z3_constants
from leonard.realize import build_triple, split_pair
from leonard.verify import (
    check_askey_wilson,
    check_conjugation,
    check_leonard_system,
    check_leonard_triple_system,
    check_multiplicity_free,
    check_psi_identities,
    check_trace_scalars,
    check_z3_symmetric,
    full_verification,
    psi_expressions,
    z3_residuals,
)


def test_multiplicity_free_examples(r357):
    assert check_multiplicity_free(Matrix.diag([1, 2, 3, 4]), [1, 2, 3, 4]).passed
    assert check_multiplicity_free(r357.A, r357.eig.theta).passed
    r = build_triple(QRacahTuple(3, 5, 2, 2, 3), strict=False)
    ch = check_multiplicity_free(r.A_eps, r.eig.theta_eps)
    assert not ch.passed and ch.witness == "eigenvalue 0 = eigenvalue 2"


def test_leonard_system_examples(r357):
    assert check_leonard_system(r357.A, r357.E, r357.A_star, r357.E_star).passed
    assert check_leonard_system(r357.A, r357.E, r357.A_star, r357.E_star[::-1]).passed
    # a diagonal A* in the same basis as lower-bidiagonal A is not a partner
    D = Matrix.diag(r357.eig.theta_star)
    ch = check_leonard_system(r357.A, r357.E, D, primitive_idempotents(D, r357.eig.theta_star))
    assert not ch.passed and ch.witness


def test_triple_system_and_reorderings(r357):
    assert check_leonard_triple_system(r357).overall
    for flips in range(8):
        lists = [r357.E, r357.E_star, r357.E_eps]
        lists = [L[::-1] if flips >> k & 1 else L for k, L in enumerate(lists)]
        eig = [r357.eig.theta, r357.eig.theta_star, r357.eig.theta_eps]
        eig = [e[::-1] if flips >> k & 1 else e for k, e in enumerate(eig)]
        r = dataclasses.replace(r357, E=lists[0], E_star=lists[1], E_eps=lists[2],
                                eig=type(r357.eig)(*eig))
        assert check_leonard_triple_system(r).overall


def test_triple_system_fails_on_collision():
    r = build_triple(QRacahTuple(3, 5, 2, 2, 3), strict=False)
    rep = check_leonard_triple_system(r)
    assert rep.first_failure().name == "multiplicity-free A^eps"


def test_askey_wilson_and_perturbation(r357, t357):
    c = aw_coefficients(t357)
    assert check_askey_wilson(r357.A, r357.A_star, c).passed
    bad = dataclasses.replace(c, omega=c.omega + 1)
    assert not check_askey_wilson(r357.A, r357.A_star, bad).passed


def test_z3_cyclic_shift_and_failure(r357, t357):
    z = z3_constants(t357)
    q = t357.q
    assert check_z3_symmetric(r357.A, r357.A_star, r357.A_eps, z, q).passed
    shifted = dataclasses.replace(z, alpha=z.alpha_star, alpha_star=z.alpha_eps, alpha_eps=z.alpha)
    assert check_z3_symmetric(r357.A_star, r357.A_eps, r357.A, shifted, q).passed
    assert not check_z3_symmetric(r357.A, r357.A_star, r357.A_eps.shift(1), z, q).passed
    assert not z3_residuals(r357.A, r357.A_star, r357.A_eps.shift(1), z, q)[2].is_zero()


def test_psi_identities(r357, t357):
    z = z3_constants(t357)
    assert check_psi_identities(r357.A, r357.A_star, r357.A_eps, z, t357.q).passed
    exprs = psi_expressions(r357.A, r357.A_star, r357.A_eps, z, t357.q)
    assert exprs[0] == exprs[3]


def test_trace_scalars(r357):
    assert check_trace_scalars(r357, r357.params).passed


def test_conjugation_on_boundary_tuple():
    r = build_triple(QRacahTuple(3, 5, 2, 2, 3), strict=False)
    rep = check_conjugation(r, r.M)
    assert rep.overall


def test_full_verification_examples(t357):
    assert full_verification(t357).overall
    rep = full_verification(QRacahTuple(3, 5, 2, 2, 3))
    assert rep.first_failure().witness == "c²=q²"
    assert full_verification(QRacahTuple(3, 5, 7, 1, 3)).first_failure().name == "RQRAC2"


def test_each_relation_checker_fails_alone(r357, t357):
    A, As, Ae, q = r357.A, r357.A_star, r357.A_eps, t357.q
    c = aw_coefficients(t357)
    z = z3_constants(t357)

    def verdicts(c, z):
        return (check_askey_wilson(A, As, c).passed, check_z3_symmetric(A, As, Ae, z, q).passed,
                check_psi_identities(A, As, Ae, z, q).passed)

    assert verdicts(c, z) == (True, True, True)
    assert verdicts(dataclasses.replace(c, eta=c.eta + 1), z) == (False, True, True)
    assert verdicts(c, dataclasses.replace(z, psi=z.psi + 1)) == (True, True, False)
    # alpha_eps also enters the cubic expressions, so only the Z3 verdict is pinned here
    zz = dataclasses.replace(z, alpha_eps=z.alpha_eps + 1)
    assert verdicts(c, zz)[1] is False


def test_z3_constants_shared_across_orbit_only(r357, t357):
    A, As, Ae, q = r357.A, r357.A_star, r357.A_eps, t357.q
    for u in triple_orbit(t357):
        assert check_z3_symmetric(A, As, Ae, z3_constants(u), q).passed
    for u in twins(t357):
        if u.q != q:
            assert not check_z3_symmetric(A, As, Ae, z3_constants(u), u.q).passed


@settings(max_examples=15)
@given(tuples(dmax=5))
def test_full_verification_passes_on_admissible_tuples(t):
    rep = full_verification(t)
    assert rep.overall, rep.first_failure()


def test_split_pair_as_leonard_system(t357):
    p = parameter_array(t357)
    A, As = split_pair(p)
    E = primitive_idempotents(A, p.theta)
    Es = primitive_idempotents(As, p.theta_star)
    assert check_leonard_system(A, E, As, Es).passed
    assert As.superdiagonal() == list(p.varphi)
    assert A.diagonal() == list(p.theta) and As.diagonal()[0] == p.theta_star[0]
    assert p.theta[0] == Fr(73, 24)
