import json
import threading
from functools import lru_cache

import pytest
import sympy
from sympy.utilities.iterables import partitions as sympy_partitions

from bconj.algebra import ALPHA, AlphaPolynomial
from bconj.jack import (
    CACHE_ENV,
    JackEngine,
    check_alpha0,
    check_alpha1_integral,
    check_eigen,
    check_norm,
    check_positive,
    check_triangular,
    default_engine,
    eigenvalue,
    linear_extension,
    set_default_engine,
    solve_jack_m,
)
from bconj.partitions import Partition, partitions_of, partitions_up_to
from bconj.symfunc import SymFunc

a = sympy.Symbol("a")


def sp(c):
    return sympy.cancel(sum(sympy.Rational(x.numerator, x.denominator) * a**k for k, x in enumerate(c.num.coeffs))
                        / sum(sympy.Rational(x.numerator, x.denominator) * a**k for k, x in enumerate(c.den.coeffs)))


@lru_cache(maxsize=None)
def gram_schmidt_jacks(n):
    """Jack P functions of degree n by Gram-Schmidt on monomials, all in sympy.

    Partitions come from sympy in increasing dominance-compatible order; power
    sums are expanded in n explicit variables to get the m-to-p transition.
    """
    parts = sorted(tuple(sorted(sum(([k] * m for k, m in p.items()), []), reverse=True))
                   for p in sympy_partitions(n))
    xs = sympy.symbols(f"y1:{n + 1}")

    def p_poly(lam):
        return sympy.Mul(*(sum(x**k for x in xs) for k in lam))

    k = len(parts)
    # p_lam = sum_mu A[lam, mu] m_mu, read off at the sorted exponent
    A = sympy.zeros(k, k)
    for i, lam in enumerate(parts):
        poly = sympy.Poly(sympy.expand(p_poly(lam)), *xs)
        for j, mu in enumerate(parts):
            A[i, j] = poly.coeff_monomial(tuple(list(mu) + [0] * (n - len(mu))))
    Ainv = A.inv()

    def z(lam):
        out = 1
        for part in set(lam):
            m = lam.count(part)
            out *= part**m * sympy.factorial(m)
        return out

    weights = [a ** len(lam) * z(lam) for lam in parts]

    # Gram matrix of the monomial basis, then Gram-Schmidt over the field Q(a)
    field = sympy.QQ.frac_field(a)
    gram = (Ainv * sympy.diag(*weights) * Ainv.T).applyfunc(sympy.expand)
    G = [[field.from_sympy(gram[i, j]) for j in range(k)] for i in range(k)]

    def inner(u, v):
        return sum((u[i] * G[i][j] * v[j] for i in range(k) for j in range(k) if u[i] and v[j]), field.zero)

    basis = []
    for idx in range(k):
        v = [field.one if j == idx else field.zero for j in range(k)]
        for prev in basis:
            c = inner(v, prev) / inner(prev, prev)
            v = [x - c * y for x, y in zip(v, prev)]
        basis.append(v)
    return {parts[i]: {parts[j]: field.to_sympy(basis[i][j]) for j in range(k) if basis[i][j]} for i in range(k)}


def sympy_hook(lam):
    conj = [sum(1 for p in lam if p > i) for i in range(lam[0])] if lam else []
    out = sympy.Integer(1)
    for j, part in enumerate(lam):
        for i in range(part):
            out *= a * (part - i - 1) + conj[i] - j
    return out


@pytest.mark.parametrize("lam", [p for p in partitions_up_to(6) if p])
def test_against_gram_schmidt_oracle(lam):
    expected = gram_schmidt_jacks(lam.size)[tuple(lam)]
    got = solve_jack_m(lam)
    assert set(map(tuple, got.terms)) == set(expected)
    scale = sympy_hook(tuple(lam))
    for nu, c in got.terms.items():
        assert sympy.cancel(sp(c) - scale * expected[tuple(nu)]) == 0


def test_frozen_small_values():
    eng = JackEngine()
    assert eng.jack((2,), "m").function == SymFunc("m", {(1, 1): 2, (2,): ALPHA + 1})
    assert eng.jack((2,), "p").function == SymFunc("p", {(1, 1): 1, (2,): ALPHA})
    assert eng.jack((1, 1), "p").function == SymFunc("p", {(1, 1): 1, (2,): -1})
    assert eng.jack((3,), "p").function == SymFunc("p", {(1, 1, 1): 1, (2, 1): ALPHA * 3, (3,): ALPHA * ALPHA * 2})
    assert eng.jack((), "p").function == SymFunc.one("p")
    assert eng.jack((2,), "p").function.format() == "p[1,1] + a*p[2]"


def test_eigenvalue():
    assert eigenvalue((2,), 2) == AlphaPolynomial((2, 1))
    with pytest.raises(ValueError):
        eigenvalue((1,), 0)


@pytest.mark.parametrize("n", range(1, 9))
def test_linear_extensions_agree(n):
    assert sorted(linear_extension(n, "binomial")) == sorted(linear_extension(n, "revlex"))
    with pytest.raises(ValueError):
        linear_extension(n, "lex")
    for lam in partitions_of(n):
        assert solve_jack_m(lam, "binomial") == solve_jack_m(lam)


@pytest.mark.parametrize("lam", [p for p in partitions_up_to(7) if p])
def test_structural_checks(lam):
    for check in (check_triangular, check_positive, check_alpha0, check_alpha1_integral):
        assert check(lam).passed
    assert check_eigen(lam, lam.size).passed
    assert check_eigen(lam, lam.size + 1).passed


@pytest.mark.parametrize("lam", [p for p in partitions_up_to(6) if p])
def test_norm(lam):
    assert check_norm(lam).passed


def test_max_size_guard():
    with pytest.raises(ValueError):
        JackEngine(max_size=13)
    with pytest.raises(ValueError):
        JackEngine(max_size=3).jack((2, 2))


def test_alpha_one_is_schur_multiple():
    # J at alpha=1 equals hook-length product times the Schur function; s_{2,1} = m21 + 2 m111
    j = JackEngine().jack((2, 1), "m").function.evaluate_alpha(1)
    assert j == SymFunc("m", {(2, 1): 3, (1, 1, 1): 6})


def test_cache_files_are_deterministic(tmp_path):
    first, second = tmp_path / "one", tmp_path / "two"
    for d in (first, second):
        eng = JackEngine(d)
        for lam in partitions_up_to(4):
            eng.jack(lam, "m")
            eng.jack(lam, "p")
    names = sorted(p.name for p in first.iterdir())
    assert names == sorted(p.name for p in second.iterdir())
    assert "J_m_empty.json" in names and "J_p_2_1_1.json" in names
    for name in names:
        assert (first / name).read_bytes() == (second / name).read_bytes()
    data = json.loads((first / "J_p_2.json").read_text())
    assert data["lambda"] == [2] and data["basis"] == "p"


def test_warm_cache_is_reused(tmp_path):
    JackEngine(tmp_path).jack((3, 1), "p")
    exp = JackEngine(tmp_path).jack((3, 1), "p")
    assert exp.provenance["source"] == "cache"
    assert exp.function == JackEngine().jack((3, 1), "p").function


def test_stale_cache_version_ignored(tmp_path):
    eng = JackEngine(tmp_path)
    eng.jack((2,), "m")
    path = tmp_path / "J_m_2.json"
    data = json.loads(path.read_text())
    data["engine_version"] = "0"
    data["terms"] = []
    path.write_text(json.dumps(data))
    assert JackEngine(tmp_path).jack((2,), "m").function == SymFunc("m", {(1, 1): 2, (2,): ALPHA + 1})


def test_concurrent_requests(tmp_path):
    eng = JackEngine(tmp_path)
    results, errors = [], []

    def work():
        try:
            results.append(eng.jack((3, 2, 1), "p").function)
        except Exception as exc:  # pragma: no cover - surfaced below
            errors.append(exc)

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors
    assert all(r == results[0] for r in results)
    assert not list(tmp_path.glob("*.tmp*"))


def test_default_engine_reads_environment(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    set_default_engine(None)
    try:
        assert default_engine().cache_dir == tmp_path
    finally:
        set_default_engine(None)


def test_provenance_not_compared():
    eng = JackEngine()
    x = eng.jack((2,), "p")
    assert x == type(x)(x.lam, x.function, {"other": 1})
    assert Partition((2,)) == x.lam
