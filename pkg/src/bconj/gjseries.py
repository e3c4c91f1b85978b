"""The Goulden-Jackson triple series and the coefficients h and c.

``phi = sum_n t^n sum_{lam |- n} J_lam(x) J_lam(y) J_lam(z) / (hook(lam) hook'(lam))``
and ``psi = alpha t d/dt log(phi)``, both stored degree by degree as
TripleSym values over ``p(x) p(y) p(z)``. The x-alphabet carries ``tau``, y
carries ``mu`` and z carries ``nu``; by the symmetry of phi the choice does not
affect the extracted values.
"""
from __future__ import annotations

import csv
import io
import json
import weakref
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .algebra import ALPHA, ONE, AlphaPolynomial, AlphaRational, NotPolynomialError, alpha_power
from .jack import JackEngine, default_engine
from .partitions import Partition, hook, hook_prime, partitions_of, z_stat
from .symfunc import TripleSym

DEFAULT_N_MAX = 6
HARD_N_MAX = 8
CONVENTION = "x~tau, y~mu, z~nu"


class SeriesError(ValueError):
    pass


def _check_n(n_max: int, cap: int = HARD_N_MAX):
    if not 0 <= n_max <= cap:
        raise SeriesError(f"n_max={n_max} outside 0..{cap}")


@dataclass
class TripleCoeffTable:
    """``slices[n]`` holds the t^n coefficient as a TripleSym."""

    n_max: int
    slices: list

    def entry(self, tau, mu, nu) -> AlphaRational:
        n = Partition(tau).size
        if n > self.n_max:
            raise SeriesError(f"degree {n} beyond the truncation {self.n_max}")
        return self.slices[n][(tau, mu, nu)]

    def is_symmetric(self) -> bool:
        """Invariance under every permutation of the three alphabets."""
        for piece in self.slices:
            for key, c in piece.terms.items():
                for perm in set(permutations(key)):
                    if piece.terms.get(perm) != c:
                        return False
        return True

    def __eq__(self, other):
        if not isinstance(other, TripleCoeffTable) or self.n_max != other.n_max:
            return NotImplemented
        return all(a == b for a, b in zip(self.slices, other.slices))


# slices memoized per engine, so a fresh engine (or cache directory) recomputes from its own Jacks
_phi_cache: "weakref.WeakKeyDictionary[JackEngine, dict]" = weakref.WeakKeyDictionary()


def _phi_slice(n: int) -> TripleSym:
    engine = default_engine()
    memo = _phi_cache.setdefault(engine, {})
    if n not in memo:
        total = TripleSym._raw({})
        for lam in partitions_of(n):
            f = engine.jack(lam, "p").function
            weight = ONE / (hook(lam) * hook_prime(lam))
            total = total + TripleSym.from_product(f, f, f).scale(weight)
        memo[n] = total
    return memo[n]


def phi_table(n_max: int = DEFAULT_N_MAX) -> TripleCoeffTable:
    _check_n(n_max)
    return TripleCoeffTable(n_max, [TripleSym.one()] + [_phi_slice(n) for n in range(1, n_max + 1)])


def log_slices(phi: TripleCoeffTable) -> list:
    """``L_n`` with ``log(phi) = sum_n L_n t^n``, from ``n L_n = n phi_n - sum_k k L_k phi_{n-k}``."""
    logs = [TripleSym._raw({})]
    for n in range(1, phi.n_max + 1):
        acc = phi.slices[n].scale(n)
        for k in range(1, n):
            acc = acc - (logs[k] * phi.slices[n - k]).scale(k)
        logs.append(acc.scale(Fraction(1, n)))
    return logs


def psi_table(n_max: int = DEFAULT_N_MAX, phi: TripleCoeffTable | None = None) -> TripleCoeffTable:
    phi = phi or phi_table(n_max)
    logs = log_slices(phi)
    slices = [TripleSym._raw({})] + [logs[n].scale(ALPHA * n) for n in range(1, phi.n_max + 1)]
    return TripleCoeffTable(phi.n_max, slices)


def exp_slices(logs: list) -> list:
    """Truncated ``exp(sum_n L_n t^n)`` as ``sum_k (sum L)^k / k!``, degree by degree."""
    n_max = len(logs) - 1
    out = [TripleSym.one()] + [TripleSym._raw({}) for _ in range(n_max)]
    power = [TripleSym._raw({})] + logs[1:]
    fact = 1
    for k in range(1, n_max + 1):
        fact *= k
        for n in range(1, n_max + 1):
            if power[n]:
                out[n] = out[n] + power[n].scale(Fraction(1, fact))
        nxt = [TripleSym._raw({}) for _ in range(n_max + 1)]
        for a in range(1, n_max + 1):
            if not power[a]:
                continue
            for b in range(1, n_max + 1 - a):
                if logs[b]:
                    nxt[a + b] = nxt[a + b] + power[a] * logs[b]
        power = nxt
    return out


def check_log_exp(n_max: int = 4) -> bool:
    """Re-exponentiating the log slices must give phi back exactly."""
    phi = phi_table(n_max)
    return exp_slices(log_slices(phi)) == phi.slices


# --- coefficient entries ------------------------------------------------------------------


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


@dataclass
class HEntry:
    kind: str
    n: int
    tau: Partition
    mu: Partition
    nu: Partition
    raw: AlphaRational
    degree_bound: int | None
    beta_poly: AlphaPolynomial | None = field(init=False)

    def __post_init__(self):
        try:
            self.beta_poly = self.raw.to_beta_polynomial()
        except NotPolynomialError:
            self.beta_poly = None

    @property
    def polynomial(self) -> bool:
        return self.beta_poly is not None

    @property
    def degree(self) -> int | None:
        """Degree in beta; ``None`` when not polynomial or identically zero."""
        if self.beta_poly is None or self.beta_poly.is_zero():
            return None
        return self.beta_poly.degree

    @property
    def degree_ok(self) -> bool | None:
        if self.degree_bound is None:
            return None
        if self.degree_bound < 0:
            return self.raw.is_zero()
        return self.polynomial and (self.degree is None or self.degree <= self.degree_bound)

    @property
    def theorem_ok(self) -> bool:
        return self.polynomial and self.degree_ok is not False

    @property
    def integer_coeffs(self) -> bool:
        return self.polynomial and all(c.denominator == 1 for c in self.beta_poly.coeffs)

    @property
    def nonneg_coeffs(self) -> bool:
        return self.polynomial and all(c >= 0 for c in self.beta_poly.coeffs)

    @property
    def conjecture_ok(self) -> bool:
        return self.integer_coeffs and self.nonneg_coeffs

    @property
    def pole_only_at_zero(self) -> bool:
        den = self.raw.den
        return all(c == 0 for c in den.coeffs[:-1])

    @property
    def consistent(self) -> bool:
        """beta_poly(alpha - 1) reproduces raw at alpha = 1 and alpha = 2."""
        if self.beta_poly is None:
            return True
        return all(self.beta_poly(a - 1) == self.raw(a) for a in (1, 2))

    @property
    def attains_bound(self) -> bool:
        return self.degree is not None and self.degree == self.degree_bound

    def beta_coeffs(self) -> str:
        if self.beta_poly is None:
            return ""
        if self.beta_poly.is_zero():
            return "0"
        return ";".join(_fmt(c) for c in self.beta_poly.coeffs)

    def key(self) -> tuple:
        return (self.tau, self.mu, self.nu)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "tau": list(self.tau),
            "mu": list(self.mu),
            "nu": list(self.nu),
            "raw": self.raw.to_json(),
            "beta_coeffs": [_fmt(c) for c in self.beta_poly.coeffs] if self.beta_poly is not None else None,
            "degree": self.degree,
            "degree_bound": self.degree_bound,
            "verdicts": {
                "polynomial": self.polynomial,
                "degree_ok": self.degree_ok,
                "pole_only_at_zero": self.pole_only_at_zero,
                "integer_coeffs": self.integer_coeffs,
                "nonneg_coeffs": self.nonneg_coeffs,
            },
        }


def degree_bound(n: int, tau, mu, nu) -> int:
    return 2 + n - len(tau) - len(mu) - len(nu)


def _triples(n: int):
    parts = partitions_of(n)
    for tau in parts:
        for mu in parts:
            for nu in parts:
                yield tau, mu, nu


def extract_h(n_max: int = DEFAULT_N_MAX, psi: TripleCoeffTable | None = None, n_min: int = 1) -> list[HEntry]:
    psi = psi or psi_table(n_max)
    out = []
    for n in range(n_min, n_max + 1):
        piece = psi.slices[n]
        for tau, mu, nu in _triples(n):
            out.append(HEntry("h", n, tau, mu, nu, piece[(tau, mu, nu)], degree_bound(n, tau, mu, nu)))
    return out


def extract_c(n_max: int = DEFAULT_N_MAX, phi: TripleCoeffTable | None = None, n_min: int = 1) -> list[HEntry]:
    phi = phi or phi_table(n_max)
    out = []
    for n in range(n_min, n_max + 1):
        piece = phi.slices[n]
        for tau, mu, nu in _triples(n):
            raw = piece[(tau, mu, nu)] * alpha_power(len(tau)) * z_stat(tau)
            out.append(HEntry("c", n, tau, mu, nu, raw, None))
    return out


@dataclass
class SuiteReport:
    entries: list
    theorem_failures: list
    conjecture_findings: list
    symmetric: bool
    inconsistent: list

    @property
    def theorem_ok(self) -> bool:
        return not self.theorem_failures and self.symmetric and not self.inconsistent

    def summary(self) -> dict:
        bounded = [e for e in self.entries if e.degree_bound is not None and e.degree_bound >= 0]
        return {
            "convention": CONVENTION,
            "entries": len(self.entries),
            "theorem_ok": self.theorem_ok,
            "theorem_failures": len(self.theorem_failures),
            "symmetric": self.symmetric,
            "pole_only_at_zero": all(e.pole_only_at_zero for e in self.entries),
            "negative_bound_entries": sum(1 for e in self.entries if e.degree_bound is not None and e.degree_bound < 0),
            "bound_attained": sum(1 for e in bounded if e.attains_bound),
            "bound_not_attained": sum(1 for e in bounded if not e.attains_bound),
            "conjecture_findings": len(self.conjecture_findings),
        }

    def lines(self) -> list[str]:
        s = self.summary()
        out = [
            f"[{'PASS' if self.theorem_ok else 'FAIL'}] polynomial-degree {s['entries']} entries, "
            f"{s['theorem_failures']} failures, symmetric={s['symmetric']}",
            f"degree bound attained on {s['bound_attained']} of "
            f"{s['bound_attained'] + s['bound_not_attained']} entries with nonnegative bound",
        ]
        for e in self.theorem_failures:
            out.append(f"  theorem-level failure: {_entry_label(e)} raw={e.raw}")
        out.append(f"conjecture findings: {s['conjecture_findings']}")
        for e in self.conjecture_findings:
            out.append(f"  !! CONJECTURE COUNTEREXAMPLE {_entry_label(e)} beta coefficients {e.beta_coeffs()}")
        return out

    def to_json(self) -> dict:
        return {"summary": self.summary(), "entries": [e.to_json() for e in self.entries]}


def _entry_label(e: HEntry) -> str:
    lab = lambda p: "(" + ",".join(map(str, p)) + ")"
    return f"{e.kind}[n={e.n} tau={lab(e.tau)} mu={lab(e.mu)} nu={lab(e.nu)}]"


def check_suite(entries: list) -> SuiteReport:
    lookup = {(e.kind, e.key()): e.raw for e in entries}
    symmetric = all(
        lookup.get((e.kind, perm), e.raw) == e.raw for e in entries for perm in permutations(e.key())
    )
    return SuiteReport(
        entries=entries,
        theorem_failures=[e for e in entries if not e.theorem_ok],
        conjecture_findings=[e for e in entries if e.polynomial and not e.conjecture_ok],
        symmetric=symmetric,
        inconsistent=[e for e in entries if not e.consistent],
    )


# --- output formats -----------------------------------------------------------------------


CSV_COLUMNS = ["n", "tau", "mu", "nu", "h_beta_coeffs", "degree", "degree_bound", "poly_ok", "nonneg_int_ok"]


def _bool(x) -> str:
    return "true" if x else "false"


def to_csv(entries: list) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for e in entries:
        writer.writerow([
            e.n,
            ",".join(map(str, e.tau)),
            ",".join(map(str, e.mu)),
            ",".join(map(str, e.nu)),
            e.beta_coeffs(),
            "" if e.degree is None else e.degree,
            e.degree_bound,
            _bool(e.theorem_ok),
            _bool(e.conjecture_ok),
        ])
    return buf.getvalue()


def to_json(report: SuiteReport) -> str:
    return json.dumps(report.to_json(), sort_keys=True, indent=1) + "\n"
