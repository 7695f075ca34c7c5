"""Table of section dimensions on the alterations, with the Euler-characteristic count.

    python3 scripts/section_dimensions.py --max-degree 3
"""
import argparse
from dataclasses import dataclass, fields

from splitkit.flagsections import MODELS, surjectivity_check


@dataclass
class Config:
    max_lambda: int = 6
    max_degree: int = 3
    seed: int = 0
    sl3: bool = True


def run(cfg):
    print(f"{'model':12s} {'lambda':>7s} {'d':>3s} {'product':>8s} {'alteration':>11s} "
          f"{'expected':>9s}  status")
    rows = [("SL2", m) for m in range(cfg.max_lambda + 1)]
    if cfg.sl3:
        rows += [(m, None) for m in MODELS[1:]]
    for model, lam in rows:
        for d in range(cfg.max_degree + 1):
            r = surjectivity_check(model, lam, d, seed=cfg.seed)
            print(f"{model:12s} {str(r.lam):>7s} {d:3d} {r.product_dim:8d} "
                  f"{str(r.image_rank):>11s} {r.expected_dim:9d}  {r.status}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in fields(Config):
        flag = "--" + f.name.replace("_", "-")
        if f.type is bool or f.type == "bool":
            ap.add_argument("--no-" + f.name, dest=f.name, action="store_false")
        else:
            ap.add_argument(flag, dest=f.name, type=int, default=f.default)
    run(Config(**vars(ap.parse_args())))


if __name__ == "__main__":
    main()
