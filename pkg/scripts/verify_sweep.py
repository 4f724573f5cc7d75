"""Run full_verification over seeded random tuples and report timing per d."""

import argparse
import dataclasses
import time
from collections import defaultdict

from leonard.sampling import admissible_batch
from leonard.scalars import FieldConfig
from leonard.verify import full_verification


@dataclasses.dataclass
class SweepConfig:
    field: str = "GF:1009"
    dmin: int = 3
    dmax: int = 8
    count: int = 50
    seed: int = 0


def run(cfg):
    fld = FieldConfig.from_string(cfg.field)
    tuples = admissible_batch(cfg.seed, fld, range(cfg.dmin, cfg.dmax + 1), cfg.count)
    times = defaultdict(list)
    failures = []
    for t in tuples:
        t0 = time.perf_counter()
        rep = full_verification(t)
        times[t.d].append(time.perf_counter() - t0)
        if not rep.overall:
            failures.append((t.text(), t.d, rep.first_failure()))
    return times, failures


def main():
    ap = argparse.ArgumentParser()
    for f in dataclasses.fields(SweepConfig):
        ap.add_argument("--" + f.name, type=type(f.default), default=f.default)
    cfg = SweepConfig(**vars(ap.parse_args()))
    times, failures = run(cfg)
    print(f"{'d':>3} {'n':>4} {'mean s':>8} {'max s':>8}")
    for d in sorted(times):
        ts = times[d]
        print(f"{d:>3} {len(ts):>4} {sum(ts) / len(ts):8.3f} {max(ts):8.3f}")
    print(f"total {sum(map(sum, times.values())):.2f}s, failures {len(failures)}")
    for f in failures:
        print("  ", *f)


if __name__ == "__main__":
    main()
