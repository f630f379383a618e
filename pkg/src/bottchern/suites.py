"""Seeded verification suites that drive every exact check in the package."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Callable, Dict, List, Tuple

from .combinatorics import (
    curly_h,
    enumerate_compositions,
    enumerate_partitions,
    harmonic,
)
from .curvature import CurvatureData, random_curvature
from .grassmann import GeneratorUniverse, bidegree_filter, conjugate, random_element
from .jets import MetricJet, jet_suite, normal_frame_check, round_trip_check
from .pushforward import (
    R_direct,
    S_direct,
    S_formula,
    reality_check,
    s_bc_generating_check,
    segre_direct,
    segre_inversion_check,
)
from .report import CheckResult, compare
from .series import (
    SplitBundleSpec,
    analytic_height,
    complete_homogeneous,
    third_schur_coefficient,
    segre_series,
    split_segre_values,
    universal_R,
    universal_S,
)
from .transgression import (
    generating_core_check,
    signed_cycle_products,
    omega_ps,
    omega_ps_partition,
    phi,
    phi_by_partitions,
    full_degree_check,
    phi_by_compositions,
    special_cases_check,
    bott_chern_form,
    tilde_c_oracle,
)

__all__ = ["SuiteConfig", "Report", "SUITES", "ConfigError", "run_suite"]

MAX_RANK = 6
MAX_BASE_DIM = 4
MAX_DEGREE = 5
MAX_TRIALS = 1000


class ConfigError(ValueError):
    """An invalid suite configuration (usage error)."""


@dataclass(frozen=True)
class SuiteConfig:
    suite: str = "bott-chern"
    ranks: Tuple[int, int] = (2, 3)
    base_dims: Tuple[int, int] = (1, 2)
    degree_max: int = 3
    trials: int = 2
    seed: int = 0
    hermitian: bool = False
    coeff_bound: int = 3
    non_normal_frame: bool = False

    def validate(self) -> "SuiteConfig":
        if self.suite not in SUITES and self.suite != "all":
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {', '.join(sorted(SUITES))}, all")
        for label, (lo, hi), floor, cap in (
            ("rank", self.ranks, 1, MAX_RANK),
            ("base-dim", self.base_dims, 0, MAX_BASE_DIM),
        ):
            if not floor <= lo <= hi <= cap:
                raise ConfigError(f"{label} range {lo}-{hi} must lie within {floor}-{cap}")
        if not 0 <= self.degree_max <= MAX_DEGREE:
            raise ConfigError(f"degree-max {self.degree_max} must lie within 0-{MAX_DEGREE}")
        if not 1 <= self.trials <= MAX_TRIALS:
            raise ConfigError(f"trials {self.trials} must lie within 1-{MAX_TRIALS}")
        if self.coeff_bound < 0:
            raise ConfigError(f"coeff-bound must be >= 0, got {self.coeff_bound}")
        return self

    def as_dict(self):
        return {
            "suite": self.suite,
            "rank": f"{self.ranks[0]}-{self.ranks[1]}",
            "base-dim": f"{self.base_dims[0]}-{self.base_dims[1]}",
            "degree-max": self.degree_max,
            "trials": self.trials,
            "seed": self.seed,
            "hermitian": self.hermitian,
            "coeff-bound": self.coeff_bound,
            "non-normal-frame": self.non_normal_frame,
        }


@dataclass
class Report:
    config: SuiteConfig
    results: List[CheckResult] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def summary(self) -> List[Tuple[str, int, int]]:
        """``(check name, passed, failed)`` rows sorted by name."""
        counts: Dict[str, List[int]] = {}
        for r in self.results:
            row = counts.setdefault(r.name, [0, 0])
            row[0 if r.passed else 1] += 1
        return [(name, p, f) for name, (p, f) in sorted(counts.items())]


# -- random data ----------------------------------------------------------------


def trial_data(cfg: SuiteConfig, suite: str, r: int, n: int, trial: int) -> CurvatureData:
    """Curvature data for one trial; depends only on the seed and the labels."""
    if cfg.coeff_bound == 0:
        return CurvatureData(r, n, {}, hermitian=cfg.hermitian)
    rng = random.Random(f"{cfg.seed}:{suite}:{r}:{n}:{trial}")
    return random_curvature(r, n, rng, hermitian=cfg.hermitian, bound=cfg.coeff_bound)


def _grid(cfg: SuiteConfig, r_min: int = 1):
    for r in range(max(cfg.ranks[0], r_min), cfg.ranks[1] + 1):
        for n in range(cfg.base_dims[0], cfg.base_dims[1] + 1):
            for t in range(cfg.trials):
                yield r, n, t


def _tag(results: List[CheckResult], trial: int) -> List[CheckResult]:
    for res in results:
        res.params.setdefault("trial", trial)
    return results


# -- suites -----------------------------------------------------------------------


def _algebra(cfg: SuiteConfig) -> List[CheckResult]:
    out = []
    for n in range(cfg.base_dims[0], cfg.base_dims[1] + 1):
        for t in range(cfg.trials):
            rng = random.Random(f"{cfg.seed}:algebra:{n}:{t}")
            u = GeneratorUniverse(n, 2)
            da, db = rng.randint(0, 3), rng.randint(0, 3)
            a, b = random_element(u, rng, degree=da), random_element(u, rng, degree=db)
            c = random_element(u, rng)
            p = {"n": n, "trial": t}
            out.append(compare("associativity", p, (a * b) * c, a * (b * c)))
            out.append(compare("graded commutativity", p, a * b, b * a * (-1) ** (da * db)))
            out.append(compare("conjugation is an involution", p, conjugate(conjugate(a)), a))
            out.append(compare("conjugation is multiplicative", p, conjugate(a * b), conjugate(a) * conjugate(b)))
            pieces = sum((bidegree_filter(c, i, j) for i, j in c.bidegrees()), u.zero())
            out.append(compare("base/fiber bidegree parts sum to the element", p, pieces, c))
    return out


def _combinatorics(cfg: SuiteConfig) -> List[CheckResult]:
    out = []
    for s in range(1, 9):
        p = {"s": s}
        total = sum((Fraction(1, factorial(B.length) * prod(B.parts)) for B in enumerate_compositions(s)),
                    Fraction(0))
        out.append(compare("composition scalar identity", p, total, Fraction(1)))
        signed = sum((Fraction((-1) ** B.length, B.length) for B in enumerate_compositions(s)), Fraction(0))
        out.append(compare("signed composition sum", p, signed, Fraction(-1, s)))
        out.append(compare("composition count", p, len(enumerate_compositions(s)), 2 ** (s - 1)))
        out.append(compare("curly_h(s, s) is a sum of harmonic numbers", p, curly_h(s, s),
                           sum((harmonic(i) for i in range(1, s + 1)), Fraction(0))))
        parts = enumerate_partitions(s)
        out.append(compare("partitions have weight s", p, sum(P.weight != s for P in parts), 0))
    return out


def _bott_chern(cfg: SuiteConfig) -> List[CheckResult]:
    out = []
    for r, n, t in _grid(cfg, 2):
        C = trial_data(cfg, "bott-chern", r, n, t).matrix
        res: List[CheckResult] = []
        for d in range(0, cfg.degree_max + 1):
            p = {"r": r, "n": n, "d": d}
            res.append(compare("Bott-Chern form vs deformed determinant", p, bott_chern_form(d, C), tilde_c_oracle(d, C)))
            direct = phi(d, C)
            res.append(compare("Phi via partitions vs direct determinant", p, phi_by_compositions(d, C), direct))
            res.append(compare("Phi via compositions vs direct determinant", p, phi_by_partitions(d, C), direct))
            if 1 <= d <= 4:
                res.append(compare("signed cycle-form products sum to Omega^d", p, signed_cycle_products(d, C),
                                   C.universe.omega() ** d))
            if cfg.hermitian:
                x = bott_chern_form(d, C)
                res.append(compare("Bott-Chern form is real", p, conjugate(x), x))
            if d >= 1:
                res += special_cases_check(d, C)
        for q in range(1, min(5, cfg.degree_max + 1) + 1):
            for s in range(1, q + 1):
                res.append(compare("cycle form partition decomposition", {"r": r, "n": n, "p": q, "s": s},
                                   omega_ps_partition(q, s, C), omega_ps(q, s, C)))
        res += generating_core_check(cfg.degree_max, C)
        out += _tag(res, t)
    return out


def _full_degree(cfg: SuiteConfig) -> List[CheckResult]:
    out = []
    for r, n, t in _grid(cfg, 2):
        C = trial_data(cfg, "full-degree", r, n, t).matrix
        res = [full_degree_check(d, f, C) for d in range(1, cfg.degree_max + 1) for f in range(1, min(d, r - 1) + 1)]
        out += _tag(res, t)
    return out


def _segre_inversion(cfg: SuiteConfig) -> List[CheckResult]:
    out = []
    for r, n, t in _grid(cfg, 1):
        C = trial_data(cfg, "segre-inversion", r, n, t).matrix
        res = segre_inversion_check(C)
        res += [s_bc_generating_check(b, C) for b in range(n + 1)]
        if cfg.hermitian:
            res += reality_check(C)
        out += _tag(res, t)
    return out


def _secondary(cfg: SuiteConfig) -> List[CheckResult]:
    out = []
    for r, n, t in _grid(cfg, 2):
        C = trial_data(cfg, "secondary", r, n, t).matrix
        u = C.universe
        values = [segre_direct(m, C) for m in range(1, n + 1)]
        S_univ, R_univ = universal_S(r, n), universal_R(r, n)
        res = []
        for m in range(n + 1):
            p = {"r": r, "n": n, "m": m}
            S = S_formula(m, C)
            res.append(compare("secondary S: formula vs fiber integral", p, S, S_direct(m, C)))
            res.append(compare("secondary S: universal polynomial", p, S_univ.part(m).evaluate(values, u.one()), S))
            res.append(compare("secondary R: universal polynomial", p, R_univ.part(m).evaluate(values, u.one()),
                               R_direct(m, C)))
        out += _tag(res, t)
    return out


def _jets(cfg: SuiteConfig) -> List[CheckResult]:
    out = []
    for r, n, t in _grid(cfg, 2):
        if n < 1:
            continue
        data = trial_data(cfg, "jets", r, n, t)
        if cfg.non_normal_frame:
            # a linear term in x breaks the normal-frame condition at the center
            metric = MetricJet.from_curvature(data, linear={(1, 2, 1): 1})
            res = round_trip_check(metric) + normal_frame_check(metric)
        else:
            res = jet_suite(data, degree_max=min(cfg.degree_max, 2))
        out += _tag(res, t)
    return out


def _series(cfg: SuiteConfig) -> List[CheckResult]:
    out = []
    N = max(cfg.degree_max, 1)
    s = segre_series(N)
    for r in range(max(cfg.ranks[0], 2), cfg.ranks[1] + 1):
        H = sum((harmonic(i) for i in range(1, r)), Fraction(0))
        S, R = universal_S(r, N), universal_R(r, N)
        p = {"r": r}
        out.append(compare("S_1 = -sum of harmonic numbers", p, S.part(0), s.const(-H)))
        out.append(compare("R_1 = S_1", p, R.part(0), s.const(-H)))
        out.append(compare("R_2 coefficient of s'_1", p, R.part(1),
                           s.part(1) * (-(1 + Fraction(1, r)) * H)))
        if r == 2:
            for m in range(N + 1):
                out.append(compare("rank 2: S_(m+1) = -s'_m/(m+1)", dict(p, m=m), S.part(m),
                                   s.part(m) * Fraction(-1, m + 1)))
        if r == 3:
            c1 = -s.part(1)
            for m in range(N + 1):
                prev = s.part(m - 1) if m >= 1 else s.const(0)
                closed = -c1 * prev * Fraction(1, m + 1) - s.part(m) * Fraction(3 * m + 5, (m + 1) * (m + 2))
                out.append(compare("rank 3 closed form for S", dict(p, m=m), S.part(m), closed))
    coeff, _ = third_schur_coefficient()
    out.append(compare("third Schur coordinate of -R_4/2 in rank 3", {}, coeff, Fraction(-1, 6)))
    for n in range(cfg.base_dims[0], cfg.base_dims[1] + 1):
        for twists in ((1, 1), (0, 0), (2,), (1, 2, 3)):
            spec = SplitBundleSpec(twists, n)
            p = {"n": n, "twists": ",".join(map(str, twists))}
            out.append(compare("height vs complete homogeneous polynomial", p, analytic_height(spec),
                               Fraction(complete_homogeneous(n, twists))))
            for m, v in enumerate(split_segre_values(spec)):
                out.append(compare("split Segre value vs complete homogeneous polynomial", dict(p, m=m), v,
                                   Fraction(complete_homogeneous(m, twists))))
    return out


SUITES: Dict[str, Callable[[SuiteConfig], List[CheckResult]]] = {
    "algebra": _algebra,
    "combinatorics": _combinatorics,
    "bott-chern": _bott_chern,
    "full-degree": _full_degree,
    "segre-inversion": _segre_inversion,
    "secondary": _secondary,
    "jets": _jets,
    "series": _series,
}


def run_suite(cfg: SuiteConfig) -> Report:
    """Run one suite (or ``all``) and return results sorted by check name then parameters."""
    cfg.validate()
    names = sorted(SUITES) if cfg.suite == "all" else [cfg.suite]
    start = time.perf_counter()
    results: List[CheckResult] = []
    for name in names:
        t0 = time.perf_counter()
        batch = SUITES[name](cfg)
        elapsed = time.perf_counter() - t0
        for res in batch:
            res.params.setdefault("suite", name)
            res.seconds = elapsed / max(len(batch), 1)
        results += batch
    results.sort(key=CheckResult.sort_key)
    return Report(cfg, results, time.perf_counter() - start)
