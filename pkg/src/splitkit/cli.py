"""``verify``: run named verification suites and emit deterministic reports."""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .flagsections import (MODELS, fixed_point_localization, kostant_fiber_rank,
                           restriction_kernel_dims, springer_restriction,
                           surjectivity_check)
from .frobsplit import (EpsilonContext, SplittingCandidate, cartier_evaluate,
                        epsilon, frame_for, frobenius_power, gamma0_splitting_sl2,
                        is_splitting, j_membership, primed, satisfies_splitting_support,
                        splitting_by_coefficients, steinberg_coefficients_sl2)
from .liealg import (INVARIANT_DIM_CAP, ChevalleyPoint, cartesian_check_sl2,
                     centralizer_fiber_basis, chevalley_chi, companion_section,
                     invariant_dims, random_chevalley_point, same_span,
                     traceless_powers, w_invariant_dims)
from .polyalg import GF, QQ, Polynomial, monomials_of_degree, monomials_up_to_degree
from .repchar import minuscule_rank_criterion, weyl_dimension
from .rootdata import (WEYL_ENUMERATION_CAP, build_root_system, form_invertible_away_from_S,
                       is_minuscule, parse_type, s_primes, stabilizer_order, weyl_orbit)

REPORT_VERSION = 1

SUITES = {
    "rootdata": "Weyl group order, orbit-stabilizer, S-integrality of the invariant form",
    "minuscule": "dim V(lambda) = |W lambda| iff lambda is minuscule",
    "frobenius": "splitting criterion phi(1) = 1 and p^-1-linearity of the trace map",
    "j-module": "J = J1 + J2 against the Hom description; epsilon is g-invariant",
    "steinberg": "Steinberg pairing coefficients f1 = x^(p-1), gamma_0 splits SL2",
    "chevalley": "k[g]^G = k[t]^W degree by degree",
    "centralizer": "chi o kappa = id and centralizer = span of traceless powers",
    "sl2-sections": "surjectivity of sections onto the SL2 alteration",
    "sl3-sections": "surjectivity of sections onto the SL3 alterations",
    "springer": "restriction to the principal Springer fiber has rank |W/W_lambda|",
    "localization": "restriction to torus fixed points kills non-extreme weight spaces",
    "kostant-rank": "constant rank 2 along the Kostant slice",
}
DEFAULT_TYPES = ("A1", "A2", "A3", "B2", "C3", "D4", "G2")


class UsageError(Exception):
    pass


def _jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    if isinstance(v, float):
        return v
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, set, frozenset)):
        items = sorted(v) if isinstance(v, (set, frozenset)) else v
        return [_jsonable(x) for x in items]
    return str(v)


@dataclass
class SuiteReport:
    suite: str
    seed: int
    cases: list = field(default_factory=list)
    toolkit_version: str = __version__

    def add(self, case_id, params, expected, actual, status=None):
        if status is None:
            status = "pass" if expected == actual else "fail"
        self.cases.append({"case_id": case_id, "params": _jsonable(params),
                           "status": status, "expected": _jsonable(expected),
                           "actual": _jsonable(actual)})

    def counts(self):
        out = {"pass": 0, "fail": 0, "inconclusive": 0}
        for c in self.cases:
            out[c["status"]] += 1
        return out

    def to_dict(self):
        return {"suite": self.suite, "seed": self.seed, "toolkit_version": self.toolkit_version,
                "cases": sorted(self.cases, key=lambda c: c["case_id"])}


# -- parameters --------------------------------------------------------------------------------

def _types(params):
    t, r = params.get("type"), params.get("rank")
    if t is None:
        return [parse_type(x) for x in DEFAULT_TYPES]
    if r is None:
        try:
            return [parse_type(t)]
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    return [(t.upper(), int(r))]


def _root_system(t, r):
    try:
        return build_root_system(t, r)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _dominant_weights(rank, max_coord):
    def rec(prefix):
        if len(prefix) == rank:
            yield tuple(prefix)
            return
        for c in range(max_coord + 1):
            yield from rec(prefix + [c])
    return [w for w in rec([]) if any(w)]


def _weight_param(params, rank):
    lam = params.get("lambda")
    if lam is None:
        return None
    w = tuple(int(x) for x in str(lam).split(","))
    if len(w) != rank:
        raise UsageError(f"--lambda has {len(w)} coordinates, rank is {rank}")
    return w


def _primes(params, default):
    p = params.get("p")
    return [int(p)] if p is not None else list(default)


# -- suites -------------------------------------------------------------------------------------

def suite_rootdata(rep, params):
    max_coord = params.get("max_coord", 2)
    for t, r in _types(params):
        rs = _root_system(t, r)
        tag = rs.name
        if rs.weyl_order <= WEYL_ENUMERATION_CAP:
            rep.add(f"{tag}/weyl-order", {"type": tag}, rs.weyl_order, len(rs.weyl_group))
        for lam in _dominant_weights(r, max_coord):
            rep.add(f"{tag}/orbit-stabilizer/{lam}", {"type": tag, "lambda": lam}, rs.weyl_order,
                    len(weyl_orbit(rs, lam)) * stabilizer_order(rs, lam))
        rep.add(f"{tag}/form-S-integral", {"type": tag, "S": sorted(s_primes(rs))}, True,
                form_invertible_away_from_S(rs))


def suite_minuscule(rep, params):
    max_coord = params.get("max_coord", 3)
    for t, r in _types(params):
        rs = _root_system(t, r)
        weights = [_weight_param(params, r)] if params.get("lambda") else \
            _dominant_weights(r, max_coord)
        for lam in weights:
            if weyl_dimension(rs, lam) > 10 ** 6:
                continue
            crit = minuscule_rank_criterion(rs, lam)
            rep.add(f"{rs.name}/{lam}", {"type": rs.name, "lambda": lam,
                                         "dim": crit.dim, "orbit": crit.orbit},
                    is_minuscule(rs, lam), crit.equal)


def _random_poly(ring, n, degree, rng, terms=4):
    out = {}
    for _ in range(terms):
        e = rng.choice(monomials_up_to_degree(n, degree))
        out[e] = rng.randrange(ring.p)
    return Polynomial(ring, n, out)


def suite_frobenius(rep, params):
    rng = random.Random(params["seed"])
    n = params.get("vars", 3)
    for p in _primes(params, (2, 3, 5)):
        ring = GF(p)
        coord = Polynomial(ring, n, {(p - 1,) * n: 1})
        c = SplittingCandidate(p, n, coord)
        rep.add(f"p{p}/coordinate-splitting", {"p": p, "n": n}, True, is_splitting(c))
        for k in range(25):
            f = _random_poly(ring, n, 2 * p, rng)
            cand = SplittingCandidate(p, n, f)
            g = _random_poly(ring, n, 2, rng, terms=2)
            h = _random_poly(ring, n, 2 * p, rng)
            lhs = cartier_evaluate(cand, frobenius_power(g) * h)
            rhs = primed(g) * cartier_evaluate(cand, h)
            rep.add(f"p{p}/semilinear/{k:02d}", {"p": p, "n": n}, str(rhs), str(lhs))
            rep.add(f"p{p}/criterion/{k:02d}", {"p": p, "n": n},
                    splitting_by_coefficients(cand), is_splitting(cand))


def suite_j_module(rep, params):
    rng = random.Random(params["seed"])
    for p in _primes(params, (3,)):
        frame = frame_for("sl2", p)
        d = 2 * (p - 1)
        for e in monomials_of_degree(3, d):
            f = frame.polynomial({e: 1})
            rep.add(f"p{p}/J/{e}", {"p": p, "monomial": str(f)},
                    j_membership(f, "generators", frame), j_membership(f, "hom", frame))
        ctx = EpsilonContext(p, 3)
        mons = monomials_of_degree(3, ctx.d)
        for k in range(20):
            f = frame.polynomial({rng.choice(mons): rng.randrange(1, p) for _ in range(5)})
            worst = [epsilon(ctx, frame.act(z, f)) for z in frame.basis()]
            rep.add(f"p{p}/epsilon-invariant/{k:02d}", {"p": p}, [0, 0, 0], worst)


def suite_steinberg(rep, params):
    for p in _primes(params, (3, 5, 7, 11, 13)):
        st = steinberg_coefficients_sl2(p)
        x = Polynomial.variable(st.f1.ring, st.f1.nvars, 0, st.f1.names)
        rep.add(f"p{p:02d}/f1", {"p": p}, str(x ** (p - 1)), str(st.f1))
        rep.add(f"p{p:02d}/support", {"p": p}, True, satisfies_splitting_support(st.f1, p))
        cand = SplittingCandidate.of(gamma0_splitting_sl2(p))
        rep.add(f"p{p:02d}/gamma0-splits", {"p": p}, True, is_splitting(cand))


def suite_chevalley(rep, params):
    for n in (2, 3):
        top = min(params.get("max_degree", 6), INVARIANT_DIM_CAP[n])
        for d in range(top + 1):
            rep.add(f"sl{n}/d{d}", {"n": n, "d": d}, w_invariant_dims(n, d), invariant_dims(n, d))


def suite_centralizer(rep, params):
    rng = random.Random(params["seed"])
    for ring in (QQ, GF(7)):
        for n in (2, 3, 4):
            for k in range(10):
                c = random_chevalley_point(n, ring, rng)
                x = companion_section(c, ring)
                tag = f"{ring.kind}{ring.p or ''}/n{n}/{k:02d}"
                rep.add(f"{tag}/chi-kappa", {"n": n, "c": c.invariants},
                        c.invariants, chevalley_chi(x, ring).invariants)
                rep.add(f"{tag}/span", {"n": n}, True,
                        same_span(centralizer_fiber_basis(x, ring), traceless_powers(x, ring), ring))
                if n == 2:
                    chk = cartesian_check_sl2(x, ring)
                    rep.add(f"{tag}/cartesian", {"n": 2}, chk.base_disc, chk.fiber_disc)


def _surjectivity_case(rep, model, lam, d, seed):
    r = surjectivity_check(model, lam, d, seed=seed)
    status = "inconclusive" if r.status == "inconclusive" else None
    rep.add(f"{model}/lambda{r.lam}/d{d}", {"model": model, "lambda": r.lam, "d": d,
                                              "product_dim": r.product_dim},
            r.expected_dim, r.image_rank, status)


def suite_sl2_sections(rep, params):
    lams = [int(params["lambda"])] if params.get("lambda") else range(1, 7)
    for m in lams:
        for d in range(params.get("max_degree", 6) + 1):
            _surjectivity_case(rep, "SL2", m, d, params["seed"])
    # minuscule bridge: the restriction is injective only for lambda = 1
    for m in (1, 2, 3):
        kernels = restriction_kernel_dims("SL2", m, 2)
        rep.add(f"SL2/bridge/lambda{m}", {"lambda": m}, m == 1, not any(kernels))


def suite_sl3_sections(rep, params):
    top = min(params.get("max_degree", 3), 3)
    for model in MODELS[1:]:
        for d in range(top + 1):
            _surjectivity_case(rep, model, None, d, params["seed"])


def _springer_expected(model, lam):
    r = springer_restriction(model, lam)
    k = lam if model == "SL2" else None
    total = {"SL2": (k or 0) + 1, "SL3_omega1": 3, "SL3_omega2": 3, "SL3_2omega1": 6}[model]
    orbit = r.orbit_size
    return [total, orbit, total - orbit], [r.total_dim, r.image_rank, r.kernel_dim]


def suite_springer(rep, params):
    lams = [int(params["lambda"])] if params.get("lambda") else range(1, 7)
    for m in lams:
        exp, act = _springer_expected("SL2", m)
        rep.add(f"SL2/lambda{m}", {"model": "SL2", "lambda": m}, exp, act)
    for model in MODELS[1:]:
        exp, act = _springer_expected(model, None)
        rep.add(f"{model}", {"model": model}, exp, act)


def suite_localization(rep, params):
    for m in range(1, 7):
        loc = fixed_point_localization("SL2", m)
        rep.add(f"SL2/lambda{m}", {"model": "SL2", "lambda": m}, loc.expected, loc.kernel_dim)
    for model in MODELS[1:]:
        loc = fixed_point_localization(model)
        rep.add(model, {"model": model}, loc.expected, loc.kernel_dim)


def suite_kostant_rank(rep, params):
    p = int(params.get("p") or 11)
    ring = GF(p)
    for m in range(1, 6):
        for c2 in range(p):
            rep.add(f"p{p}/lambda{m}/c{c2:02d}", {"lambda": m, "c2": c2, "p": p}, 2,
                    kostant_fiber_rank("SL2", m, ChevalleyPoint((c2,)), ring))


RUNNERS = {
    "rootdata": suite_rootdata, "minuscule": suite_minuscule, "frobenius": suite_frobenius,
    "j-module": suite_j_module, "steinberg": suite_steinberg, "chevalley": suite_chevalley,
    "centralizer": suite_centralizer, "sl2-sections": suite_sl2_sections,
    "sl3-sections": suite_sl3_sections, "springer": suite_springer,
    "localization": suite_localization, "kostant-rank": suite_kostant_rank,
}


def run_suite(name, params):
    if name not in RUNNERS:
        raise UsageError(f"unknown suite {name!r}")
    params = dict(params)
    params.setdefault("seed", 0)
    rep = SuiteReport(name, params["seed"])
    try:
        RUNNERS[name](rep, params)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"{name}: {exc}") from exc
    return rep


def build_report(names, params):
    reports = [run_suite(n, params) for n in sorted(names)]
    return {"version": REPORT_VERSION, "seed": params.get("seed", 0),
            "suites": [r.to_dict() for r in reports]}, reports


def exit_code(reports):
    counts = {"fail": 0, "inconclusive": 0}
    for r in reports:
        c = r.counts()
        counts["fail"] += c["fail"]
        counts["inconclusive"] += c["inconclusive"]
    if counts["fail"]:
        return 1
    if counts["inconclusive"]:
        return 3
    return 0


def _parser():
    ap = argparse.ArgumentParser(prog="verify", description=__doc__)
    ap.add_argument("suite", nargs="?", help="suite name or 'all'")
    ap.add_argument("--list", action="store_true", help="list suites and exit")
    ap.add_argument("--type")
    ap.add_argument("--rank", type=int)
    ap.add_argument("--prime", "--p", dest="p", type=int)
    ap.add_argument("--vars", type=int)
    ap.add_argument("--lambda", dest="lam")
    ap.add_argument("--max-degree", type=int)
    ap.add_argument("--max-coord", type=int)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", metavar="PATH")
    return ap


def main(argv=None):
    ap = _parser()
    args = ap.parse_args(argv)
    if args.list:
        for name, anchor in SUITES.items():
            print(f"{name:14s} {anchor}")
        return 0
    if not args.suite:
        ap.print_usage(sys.stderr)
        return 2
    names = list(RUNNERS) if args.suite == "all" else [args.suite]
    params = {"seed": args.seed}
    for key, val in (("type", args.type), ("rank", args.rank), ("p", args.p),
                     ("vars", args.vars), ("lambda", args.lam),
                     ("max_degree", args.max_degree), ("max_coord", args.max_coord)):
        if val is not None:
            params[key] = val
    try:
        report, reports = build_report(names, params)
    except UsageError as exc:
        print(f"verify: {exc}", file=sys.stderr)
        return 2
    for r in reports:
        c = r.counts()
        print(f"{r.suite:14s} pass={c['pass']} fail={c['fail']} inconclusive={c['inconclusive']}")
        for case in r.cases:
            if case["status"] != "pass":
                print(f"  {case['status'].upper()} {case['case_id']}: "
                      f"expected {case['expected']}, got {case['actual']}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return exit_code(reports)


if __name__ == "__main__":
    sys.exit(main())
