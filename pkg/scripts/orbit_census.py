"""Count triple orbits, twin classes and twin cases over a small prime field.

Every triple-admissible tuple over GF(p) for a fixed d is enumerated, grouped
by hat invariant, and the groups are compared against the computed orbits.
"""

import argparse
import dataclasses
import itertools
from collections import Counter

from leonard.actions import hat_invariant, triple_orbit, twin_case
from leonard.params import QRacahTuple, check_triple_admissible
from leonard.scalars import GF


@dataclasses.dataclass
class CensusConfig:
    p: int = 17
    d: int = 3


def admissible_tuples(cfg):
    fld = GF(cfg.p)
    for a, b, c, q in itertools.product(range(1, cfg.p), repeat=4):
        t = QRacahTuple(a, b, c, q, cfg.d, fld)
        if check_triple_admissible(t).overall:
            yield t


def run(cfg):
    by_hat = {}
    for t in admissible_tuples(cfg):
        by_hat.setdefault(hat_invariant(t), []).append(t)
    mismatched = 0
    cases = Counter()
    for members in by_hat.values():
        orb = {u.key() for u in triple_orbit(members[0])}
        if orb != {u.key() for u in members}:
            mismatched += 1
        cases[twin_case(members[0])] += 1
    return len(by_hat), sum(map(len, by_hat.values())), mismatched, cases


def main():
    ap = argparse.ArgumentParser()
    for f in dataclasses.fields(CensusConfig):
        ap.add_argument("--" + f.name, type=type(f.default), default=f.default)
    cfg = CensusConfig(**vars(ap.parse_args()))
    classes, total, mismatched, cases = run(cfg)
    print(f"GF({cfg.p}) d={cfg.d}: {total} admissible tuples in {classes} hat classes")
    print(f"classes differing from their orbit: {mismatched}")
    for k, v in sorted(cases.items()):
        print(f"twin case ({k}): {v} classes")


if __name__ == "__main__":
    main()
