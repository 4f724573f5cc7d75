"""Seeded random tuples over GF(p) or a small rational grid."""

from __future__ import annotations

import random
from fractions import Fraction

from .params import QRacahTuple, check_triple_admissible
from .scalars import FieldConfig

RATIONAL_GRID = tuple(s * k for k in range(2, 10) for s in (1, -1))
Q_CHOICES = (2, 3, 5)


class NoAdmissibleFound(RuntimeError):
    pass


def random_tuple(rng: random.Random, fld: FieldConfig, d: int) -> QRacahTuple:
    """One draw, not screened for admissibility."""
    if fld.is_prime_field:
        p = fld.modulus
        a, b, c, q = (rng.randrange(1, p) for _ in range(4))
        return QRacahTuple(a, b, c, q, d, fld)

    def slot():
        k = rng.choice(RATIONAL_GRID)
        return Fraction(k) if rng.random() < 0.5 else Fraction(1, k)

    a, b, c = slot(), slot(), slot()
    return QRacahTuple(a, b, c, rng.choice(Q_CHOICES), d, fld)


def random_admissible(rng: random.Random, fld: FieldConfig, d: int, max_attempts: int = 1000):
    """First triple-admissible draw; returns (tuple, attempts used)."""
    for k in range(1, max_attempts + 1):
        t = random_tuple(rng, fld, d)
        if check_triple_admissible(t).overall:
            return t, k
    raise NoAdmissibleFound(f"no triple-admissible tuple in {max_attempts} draws")


def admissible_batch(seed: int, fld: FieldConfig, ds, count: int, max_attempts: int = 1000):
    """``count`` admissible tuples, diameters cycling through ``ds``."""
    rng = random.Random(seed)
    ds = list(ds)
    return [random_admissible(rng, fld, ds[k % len(ds)], max_attempts)[0] for k in range(count)]
