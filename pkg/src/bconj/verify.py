"""Verification suites run by ``bconj verify``.

Every suite returns a :class:`SuiteResult`. Only theorem-level verdicts count
towards ``passed``; conjecture-level findings are reported alongside.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from .algebra import ALPHA, ONE
from .cumulants import (
    IndexedFamily,
    all_cumulants,
    equivalence_check,
    hook_family,
    hook_function,
    ie_stat,
    jack_family,
    jack_cumulant,
    moments_from_cumulants,
    random_affine_instance,
    random_o1_rational,
    subsets,
    t_error,
    triple_jack,
    verify_A1_A2,
    verify_affine_lemma,
    verify_hook_factorization,
    verify_log_cumulant_identity,
    verify_strong_factorization,
    verify_triple_jack,
)
from .gjseries import check_log_exp, check_suite, extract_c, extract_h
from .jack import (
    check_alpha0,
    check_alpha1_integral,
    check_eigen,
    check_norm,
    check_positive,
    check_triangular,
    jack_m,
    solve_jack_m,
)
from .partitions import Partition, partitions_up_to
from .report import Verdict
from .setpartitions import check_mobius, check_rank_join
from .symfunc import SymFunc

SUITES = ("jack", "factorization", "lattice", "lemmas", "bconj")


@dataclass
class SuiteResult:
    name: str
    verdicts: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    conjecture_findings: int = 0

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def lines(self) -> list[str]:
        out = [v.line() for v in self.verdicts]
        out.extend(self.notes)
        status = "PASS" if self.passed else "FAIL"
        out.append(f"suite {self.name}: {status} ({sum(v.passed for v in self.verdicts)}/{len(self.verdicts)} checks)")
        return out


def _aggregate(name: str, items, check) -> Verdict:
    """One verdict for a batch: ``check(item)`` is truthy on success."""
    items = list(items)
    failures = [it for it in items if not check(it)]
    return Verdict(name, not failures, f"{len(items)} cases",
                   witness=[str(f) for f in failures[:10]] or None)


def _nonempty_up_to(w: int) -> list[Partition]:
    return [p for p in partitions_up_to(w) if p.size > 0]


# --- jack ---------------------------------------------------------------------------------


def suite_jack(max_weight: int = 6, norm_weight: int | None = None) -> SuiteResult:
    lams = _nonempty_up_to(max_weight)
    res = SuiteResult("jack")
    res.verdicts.append(_aggregate("eigen N=|lam|", lams, lambda l: check_eigen(l, l.size)))
    res.verdicts.append(_aggregate("eigen N=|lam|+1", lams, lambda l: check_eigen(l, l.size + 1)))
    res.verdicts.append(_aggregate("triangularity", lams, check_triangular))
    res.verdicts.append(_aggregate("N[alpha] coefficients", lams, check_positive))
    res.verdicts.append(_aggregate("alpha=0 specialization", lams, check_alpha0))
    res.verdicts.append(_aggregate("alpha=1 integrality", lams, check_alpha1_integral))
    res.verdicts.append(_aggregate("solver order independence", lams,
                                   lambda l: solve_jack_m(l, "binomial") == jack_m(l).function))
    nw = max_weight if norm_weight is None else norm_weight
    res.verdicts.append(_aggregate("norm", [l for l in lams if l.size <= nw], check_norm))
    return res


# --- factorization --------------------------------------------------------------------------


def tuples_bounded(r: int, max_part: int, max_total: int | None = None) -> list[tuple]:
    """Multisets of ``r`` non-empty partitions with ``|lam^i| <= max_part`` (and total bound)."""
    parts = _nonempty_up_to(max_part)
    out = []
    for combo in combinations_with_replacement(parts, r):
        if max_total is None or sum(p.size for p in combo) <= max_total:
            out.append(combo)
    return out


def suite_factorization(max_weight: int = 2, r_max: int = 3, max_total: int | None = None,
                        hook_weight: int | None = None, seed: int = 0, samples: int = 100) -> SuiteResult:
    res = SuiteResult("factorization")
    for r in range(2, min(r_max, 3) + 1):
        tuples = tuples_bounded(r, max_weight, max_total)
        res.verdicts.append(_aggregate(f"jack cumulants r={r}", tuples,
                                       lambda t: verify_strong_factorization(t).passed))
    if r_max >= 4:
        res.verdicts.append(verify_strong_factorization([(1,)] * 4))
    for v in (jack_cumulant_witness((1,), (1,)), jack_cumulant_witness((1,), (1,), (1,))):
        res.verdicts.append(v)
    hw = max_weight if hook_weight is None else hook_weight
    for variant in ("hook", "hook2"):
        for r in range(2, min(r_max, 3) + 1):
            res.verdicts.append(_aggregate(f"{variant} factorization r={r}", tuples_bounded(r, hw),
                                           lambda t: verify_hook_factorization(t, variant).passed))
    res.verdicts.append(_aggregate("triple-jack factorization r=2", tuples_bounded(2, 2),
                                   lambda t: verify_triple_jack(t).passed))
    rng = random.Random(seed)
    instances = [random_affine_instance(rng) for _ in range(samples)]
    res.verdicts.append(_aggregate(f"affine lemma seed={seed}", instances,
                                   lambda inst: verify_affine_lemma(*inst).passed))
    return res


def jack_cumulant_witness(*lams) -> Verdict:
    expected = {
        2: SymFunc.single("p", (2,), ALPHA),
        3: SymFunc.single("p", (3,), ALPHA * ALPHA * 2),
    }[len(lams)]
    got = jack_cumulant(*lams)
    return Verdict("cumulant witness", got == expected, tuple(lams), witness=None if got == expected else got)


# --- lattice --------------------------------------------------------------------------------


def random_family(rng: random.Random, r: int, unit_empty: bool = True) -> IndexedFamily:
    values = {s: random_o1_rational(rng, unit=True) for s in subsets(range(1, r + 1))}
    if unit_empty:
        values[frozenset()] = ONE
    return IndexedFamily(r, values, unit_empty)


def random_factorized_family(rng: random.Random, r: int) -> IndexedFamily:
    """``u_I = prod u_i * prod_{H <= I, |H| >= 2} (1 + alpha^e_H c_H)`` with random exponents.

    The exponent ``e_H`` is drawn around ``|H| - 1`` so that both verdicts occur.
    """
    singles = {i: random_o1_rational(rng, unit=True) for i in range(1, r + 1)}
    errors = {}
    for H in subsets(range(1, r + 1), 2):
        e = max(0, len(H) - 1 + rng.choice([-1, 0, 0, 1]))
        factor = ONE + ALPHA ** e * random_o1_rational(rng, unit=True)
        while factor.is_zero() or factor.valuation() != 0:
            factor = ONE + ALPHA ** e * random_o1_rational(rng, unit=True)
        errors[H] = factor
    values = {}
    for I in subsets(range(1, r + 1)):
        v = ONE
        for i in I:
            v = v * singles[i]
        for H, t in errors.items():
            if H <= I:
                v = v * t
        values[I] = v
    return IndexedFamily(r, values)


def suite_lattice(r_max: int = 5, seed: int = 0, samples: int = 20) -> SuiteResult:
    res = SuiteResult("lattice")
    rs = list(range(1, r_max + 1))
    res.verdicts.append(_aggregate("moebius defining property", rs, check_mobius))
    res.verdicts.append(_aggregate("rank of join", rs, check_rank_join))
    rng = random.Random(seed)
    small = [r for r in rs if r <= 4]

    def roundtrip(r):
        fam = random_family(rng, r)
        kappas = all_cumulants(fam)
        return all(moments_from_cumulants(kappas, H) == fam[H] for H in kappas)

    def t_forms(r):
        if r < 2:
            return True
        fam = random_family(rng, r)
        return all(t_error(fam, H, "direct") == t_error(fam, H, "inductive") for H in subsets(fam.ground, 2))

    res.verdicts.append(_aggregate(f"cumulant-moment round trip seed={seed}",
                                   [r for r in small for _ in range(samples // 4 or 1)], roundtrip))
    res.verdicts.append(_aggregate(f"T inductive = direct seed={seed}",
                                   [r for r in small for _ in range(samples // 4 or 1)], t_forms))
    families = [random_factorized_family(rng, r) for r in (2, 3) for _ in range(samples)]
    families += [hook_family(t, v) for t in tuples_bounded(3, 2) for v in ("hook", "hook2")]
    families += [jack_family(t) for t in tuples_bounded(3, 1) + tuples_bounded(2, 2)]
    res.verdicts.append(_aggregate(f"equivalence of criteria seed={seed}", families,
                                   lambda f: equivalence_check(f).passed))
    outcomes = [equivalence_check(f).details["strong_factorization"] for f in families]
    res.notes.append(f"equivalence families: {sum(outcomes)} with small errors, "
                     f"{len(outcomes) - sum(outcomes)} without")
    return res


# --- lemmas ---------------------------------------------------------------------------------


def suite_lemmas(seed: int = 0, samples: int = 50, ie_weight: int = 3, a_total: int = 4,
                 log_degree: int = 4) -> SuiteResult:
    res = SuiteResult("lemmas")
    parts = partitions_up_to(ie_weight)
    triples = list(combinations_with_replacement(parts, 3))
    res.verdicts.append(_aggregate("IE vanishes r=3", triples, lambda t: ie_stat(*t) == 0))
    rng = random.Random(seed)
    pool = partitions_up_to(5)
    quads = [tuple(rng.choice(pool) for _ in range(4)) for _ in range(samples)]
    res.verdicts.append(_aggregate(f"IE vanishes r=4 seed={seed}", quads, lambda t: ie_stat(*t) == 0))
    a_cases = [t for r in (2, 3) for t in tuples_bounded(r, a_total, a_total)]
    res.verdicts.append(_aggregate("A1/A2 closed forms", a_cases, lambda t: verify_A1_A2(t).passed))
    res.verdicts.append(verify_log_cumulant_identity(hook_function, log_degree, "log-cumulant hook"))
    res.verdicts.append(verify_log_cumulant_identity(triple_jack, log_degree, "log-cumulant triple-jack"))
    return res


# --- b-conjecture ---------------------------------------------------------------------------


def suite_bconj(n: int = 4) -> SuiteResult:
    res = SuiteResult("bconj")
    report = check_suite(extract_h(n))
    summary = report.summary()
    res.verdicts.append(Verdict("h polynomial in beta with degree bound", report.theorem_ok, f"n<={n}",
                                witness=[e.to_json() for e in report.theorem_failures[:5]] or None,
                                details=summary))
    res.verdicts.append(Verdict("log/exp consistency", check_log_exp(min(n, 4)), f"n<={min(n, 4)}"))
    c_entries = extract_c(n)
    res.notes.append(f"c entries polynomial in beta: {sum(e.polynomial for e in c_entries)}/{len(c_entries)}")
    res.notes.extend(report.lines()[1:])
    res.conjecture_findings = summary["conjecture_findings"]
    return res


def run_suite(name: str, **kw) -> SuiteResult:
    fn = {
        "jack": suite_jack,
        "factorization": suite_factorization,
        "lattice": suite_lattice,
        "lemmas": suite_lemmas,
        "bconj": suite_bconj,
    }[name]
    return fn(**kw)
