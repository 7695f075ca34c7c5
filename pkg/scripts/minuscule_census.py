"""For each type, list dominant weights with dim V(lambda) = |W lambda|.

    python3 scripts/minuscule_census.py --max-coord 2 A3 B3 D4 E6
"""
import argparse
import itertools
from dataclasses import dataclass, field

from splitkit.repchar import minuscule_rank_criterion
from splitkit.rootdata import build_root_system, is_minuscule, parse_type


@dataclass
class Config:
    types: list = field(default_factory=lambda: ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2"])
    max_coord: int = 2


def run(cfg):
    for label in cfg.types:
        rs = build_root_system(*parse_type(label))
        hits, mismatches = [], []
        for lam in itertools.product(range(cfg.max_coord + 1), repeat=rs.rank):
            if not any(lam):
                continue
            crit = minuscule_rank_criterion(rs, lam)
            if crit.equal:
                hits.append(lam)
            if crit.equal != is_minuscule(rs, lam):
                mismatches.append(lam)
        print(f"{label:4s} |W| = {rs.weyl_order:<10d} dim = orbit at {hits or 'none'}"
              + (f"  MISMATCH {mismatches}" if mismatches else ""))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("types", nargs="*")
    ap.add_argument("--max-coord", type=int, default=Config.max_coord)
    args = ap.parse_args()
    cfg = Config(max_coord=args.max_coord)
    if args.types:
        cfg.types = args.types
    run(cfg)


if __name__ == "__main__":
    main()
