"""End-to-end acceptance criteria, one test per criterion.

A summary line ``ACCEPTANCE n <name>: PASS|FAIL`` is printed for each at the
end of the pytest run.
"""

import itertools
import json
import random
import time
from fractions import Fraction as Fr
from functools import lru_cache

import pytest

from leonard.actions import (
    GENERATORS,
    apply_word,
    hat_invariant,
    pair_equivalents,
    triple_orbit,
    twins,
)
from leonard.cli import main
from leonard.matrices import Matrix, mat_inverse, rank
from leonard.params import (
    ARRAY_ACTIONS,
    QRacahTuple,
    aw_coefficients,
    aw_coefficients_from_array,
    check_pair_admissible,
    check_triple_admissible,
    derived_scalars,
    eigen_sequence,
    parameter_array,
    partial_sum_closed,
    partial_sum_direct,
)
from leonard.realize import (
    build_triple,
    nt_decompose,
    split_form,
    symmetrizer,
    symmetrizer_nullity,
    transition_matrix,
    transition_matrix_by_recurrence,
)
from leonard.sampling import admissible_batch
from leonard.scalars import GF
from leonard.verify import (
    check_conjugation,
    check_leonard_triple_system,
    check_multiplicity_free,
    full_verification,
    trace_scalars,
)

F1009 = GF(1009)


@lru_cache(maxsize=None)
def corpus():
    """50 seeded GF(1009) tuples with d in 3..8, then (3,5,7;2) for d = 3..6."""
    gf = admissible_batch(20240, F1009, range(3, 9), 50)
    rat = [QRacahTuple(3, 5, 7, 2, d) for d in range(3, 7)]
    return tuple(gf + rat)


@lru_cache(maxsize=None)
def realizations():
    return tuple(build_triple(t) for t in corpus())


def sample(n, seed, ds=(3, 4, 5)):
    return admissible_batch(seed, F1009, ds, n)


def test_acceptance_01_construction_soundness():
    ts = corpus()
    assert len(ts) == 54
    assert sorted({t.d for t in ts if t.field == F1009}) == [3, 4, 5, 6, 7, 8]
    start = time.perf_counter()
    failures = []
    for t in ts:
        rep = full_verification(t)
        if not rep.overall:
            failures.append((t.text(), t.d, str(rep.first_failure())))
    elapsed = time.perf_counter() - start
    assert not failures, failures
    names = set(full_verification(ts[0]).names())
    for required in ("Leonard system (A,A*)", "Leonard system (A*,A^eps)", "Leonard system (A^eps,A)",
                     "Askey-Wilson relations", "Z3-symmetric relations", "psi identities",
                     "M^-1 A^eps M lower bidiagonal", "M^-1 A* M upper bidiagonal", "trace scalars"):
        assert required in names
    assert elapsed < 60, f"{elapsed:.1f}s"


def test_acceptance_02_dual_path_oracles():
    discrepancies = []
    for t, r in zip(corpus(), realizations()):
        M = transition_matrix(t)
        if M != transition_matrix_by_recurrence(t, "up") or M != transition_matrix_by_recurrence(t, "right"):
            discrepancies.append((t.text(), "M"))
        p = r.params
        if aw_coefficients(t) != aw_coefficients_from_array(p):
            discrepancies.append((t.text(), "AW"))
        ds = derived_scalars(p)
        for label, X, F, closed in (("a", r.A, r.E_star, ds.a_seq), ("a*", r.A_star, r.E, ds.a_star_seq)):
            tr = trace_scalars(X, F)
            for i, Fi in enumerate(F):
                if tr[i] != closed[i] or Fi @ X @ Fi != Fi.scale(closed[i]):
                    discrepancies.append((t.text(), label, i))
        for i in range(1, t.d + 1):
            if partial_sum_direct(p.theta, i) != partial_sum_closed(t.q, t.d, i):
                discrepancies.append((t.text(), "sum", i))
    assert discrepancies == []


def _collision_pairs(seq):
    return {(i, j) for i, j in itertools.combinations(range(len(seq)), 2) if seq[i] == seq[j]}


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_acceptance_03_multiplicity_free_criterion(d):
    q = Fr(2)
    for k in range(1, d):
        for c in (q**k, q**-k):
            t = QRacahTuple(3, 5, c, q, d)
            assert check_pair_admissible(t).overall
            assert not check_triple_admissible(t).overall
            r = build_triple(t, strict=False)
            s = d - k if c == q**k else d + k
            expected = {(i, s - i) for i in range(d + 1) if i < s - i <= d}
            assert _collision_pairs(r.eig.theta_eps) == expected
            assert not check_multiplicity_free(r.A_eps, r.eig.theta_eps).passed
            assert not check_leonard_triple_system(r).overall
            assert check_conjugation(r, r.M).overall
        good = build_triple(QRacahTuple(3, 5, 7, q, d))
        assert check_leonard_triple_system(good).overall


def test_acceptance_04_nt_decomposition_pattern():
    for t, r in zip(corpus(), realizations()):
        nt = nt_decompose(r.A_eps, r.A, r.A_star)
        q = t.q
        assert nt.f == 0 and nt.f_star == 0
        assert nt.g == -(q**2) * nt.g_star
        alpha_eps = (t.a + 1 / t.a) * (t.b + 1 / t.b) + (t.c + 1 / t.c) * (q ** (t.d + 1) + q ** (-t.d - 1))
        assert nt.e == alpha_eps / (q + 1 / q)


RELATIONS = [
    (["star", "eps", "star"], ["eps", "star", "eps"]),
    (["down", "harpoon"], ["harpoon", "down"]),
    (["Down", "harpoon"], ["harpoon", "Down"]),
    (["Down", "down"], ["down", "Down"]),
    (["harpoon", "star"], ["star", "harpoon"]),
    (["Down", "star"], ["star", "down"]),
    (["down", "star"], ["star", "Down"]),
    (["down", "eps"], ["eps", "down"]),
    (["Down", "eps"], ["eps", "harpoon"]),
    (["harpoon", "eps"], ["eps", "Down"]),
]


def test_acceptance_05_group_action_relations():
    ts = sample(20, 55)
    violations = []
    for t in ts:
        for g in GENERATORS:
            if apply_word([g, g], t) != t:
                violations.append((t.text(), g))
        for lhs, rhs in RELATIONS:
            if apply_word(lhs, t) != apply_word(rhs, t):
                violations.append((t.text(), lhs, rhs))
        p = parameter_array(t)
        for g, act in ARRAY_ACTIONS.items():
            if parameter_array(apply_word([g], t)) != act(p):
                violations.append((t.text(), "diagram", g))
    assert violations == []


def test_acceptance_06_classification():
    ts = sample(20, 66)
    pool = {u.key(): u for t in ts for u in triple_orbit(t)}
    orbit_of = {k: frozenset(v.key() for v in triple_orbit(u)) for k, u in pool.items()}
    by_hat = {}
    for k, u in pool.items():
        by_hat.setdefault((u.d, hat_invariant(u)), set()).add(k)
    for group in by_hat.values():
        for k in group:
            assert orbit_of[k] == frozenset(group)
    assert len(by_hat) == len(set(orbit_of.values()))
    for t in ts:
        tw = twins(t)
        for u in tw:
            for x, y in ((t.a, u.a), (t.b, u.b), (t.c, u.c)):
                assert eigen_sequence(x, t.q, t.d) == eigen_sequence(y, u.q, u.d)
        hats = [hat_invariant(u) for u in tw]
        assert len(set(hats)) == len(tw)


def test_acceptance_07_equivalence_table():
    rng = random.Random(77)
    for t in sample(5, 70):
        eq = pair_equivalents(t)
        arrays = [parameter_array(u) for u in eq]
        assert all(a == arrays[0] for a in arrays)
        listed = {u.key() for u in eq}
        a, b, c, q = t.scalars
        extra = 0
        for _ in range(200):
            if rng.random() < 0.5:
                # a random sign/inversion pattern near t
                s = [rng.choice((1, -1)) for _ in range(4)]
                e = [rng.choice((1, -1)) for _ in range(4)]
                u = t.replace(s[0] * a ** e[0], s[1] * b ** e[1], s[2] * c ** e[2], s[3] * q ** e[3])
            else:
                u = QRacahTuple(*(rng.randrange(1, 1009) for _ in range(4)), t.d, F1009)
            if not check_pair_admissible(u).overall:
                continue
            if parameter_array(u) == arrays[0] and u.key() not in listed:
                extra += 1
        assert extra == 0


def test_acceptance_08_split_basis_round_trip():
    rng = random.Random(88)
    ts = sample(10, 80) + [QRacahTuple(3, 5, 7, 2, d) for d in (3, 4, 3, 4, 5, 3, 4, 5, 3, 4)]
    ok = 0
    for t in ts:
        r = build_triple(t)
        n = t.d + 1
        while True:
            if t.field == F1009:
                G = Matrix([[rng.randrange(1009) for _ in range(n)] for _ in range(n)], t.field)
            else:
                G = Matrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)], t.field)
            if rank(G) == n:
                break
        Gi = mat_inverse(G)
        A2, As2, ph = split_form(Gi @ r.A @ G, Gi @ r.A_star @ G, r.eig.theta, r.eig.theta_star)
        if A2.diagonal() == list(r.params.theta) and As2.diagonal() == list(r.params.theta_star) \
                and tuple(ph) == r.params.varphi:
            ok += 1
    assert ok == 20


def test_acceptance_09_symmetrizer():
    for r in realizations():
        assert symmetrizer_nullity(r.A, r.A_star) == 1
        D = symmetrizer(r.A, r.A_star)
        Di = mat_inverse(D)
        assert Di @ r.A.T @ D == r.A
        assert Di @ r.A_star.T @ D == r.A_star


def test_acceptance_10_cli_contract(tmp_path, capsys):
    T357 = ["--a", "3", "--b", "5", "--c", "7", "--q", "2", "--d", "3"]
    T352 = ["--a", "3", "--b", "5", "--c", "2", "--q", "2", "--d", "3"]
    bundle = tmp_path / "bundle.json"
    cases = [
        (["validate", *T357], 0),
        (["validate", *T352], 1),
        (["validate", *T352, "--pair-only"], 0),
        (["validate", "--a", "3/0", *T357[2:]], 2),
        (["build", *T357, "--out", str(bundle)], 0),
        (["verify", "--from", str(bundle)], 0),
        (["verify", *T352], 1),
        (["verify", "--from", str(tmp_path / "absent.json")], 3),
        (["orbit", *T357, "--group", "z2cubed"], 0),
        (["twins", *T357], 0),
        (["build", *T352], 1),
    ]
    for argv, want in cases:
        assert main(argv) == want, argv
    capsys.readouterr()

    obj = json.loads(bundle.read_text())
    obj["A"]["rows"][2][2] = "0"
    bundle.write_text(json.dumps(obj))
    assert main(["verify", "--from", str(bundle)]) == 1
    assert "witness:" in capsys.readouterr().out

    runs = []
    for k in range(2):
        out = tmp_path / f"catalog{k}.jsonl"
        assert main(["enumerate", "--field", "GF:1009", "--d", "4", "--count", "10", "--seed", "42",
                     "--out", str(out)]) == 0
        runs.append(out.read_bytes())
    assert runs[0] == runs[1] and runs[0].count(b"\n") == 10
