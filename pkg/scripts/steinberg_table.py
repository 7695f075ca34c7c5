"""Big-cell coefficients of the rank-one Steinberg pairing and the induced splitting.

    python3 scripts/steinberg_table.py
"""
from dataclasses import dataclass

from splitkit.frobsplit import (SplittingCandidate, gamma0_splitting_sl2, is_splitting,
                                steinberg_coefficients_sl2)


@dataclass
class Config:
    primes: tuple = (3, 5, 7, 11, 13)


def run(cfg):
    for p in cfg.primes:
        st = steinberg_coefficients_sl2(p)
        split = gamma0_splitting_sl2(p)
        print(f"p = {p:2d}  f1 = {st.f1}  f2 = {st.f2}  t-weights ({st.t_exponent_f1}, "
              f"{st.t_exponent_f2})  gamma_0 = {split}  splitting: {is_splitting(SplittingCandidate.of(split))}")


if __name__ == "__main__":
    run(Config())
