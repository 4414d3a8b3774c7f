r"""Desk-scale consistency suites behind the ``selfcheck`` command.

Each suite re-derives a family of identities that pin the engine's
conventions: the string/dilaton structure of psi correlators, the
vanishing forced by the multiplicative inverse relation between the
Chern classes of the Hodge bundle and its dual, equality of pseudostable
and stable integrals in the lambda-linear range, agreement of the
transposition-factorization counts with their Hodge-integral evaluation,
and the ring axioms of the strata algebra.  All checks are exact; the
random instances are drawn from a fixed seed so that reports are
reproducible and independent of any warm cache.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .hodge import HodgeMonomial, bell_polynomial, hodge_integral
from .hurwitz import HurwitzInstance, elsv_value, hurwitz_brute, riemann_hurwitz_m
from .multiset import compositions
from .strata import (TautClass, class_integrate, class_multiply, hat_lambda,
                     is_pseudostable, t_pullback_ch, _make_term)
from .wk import default_table, wk_integral

__all__ = ["SuiteResult", "run_all", "mumford_relation_terms",
           "random_taut_class"]

DEFAULT_SEED = 20240701


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str = ""
    failures: list = field(default_factory=list)

    def record(self, condition, what):
        if not condition:
            self.passed = False
            self.failures.append(what)
            if not self.detail:
                self.detail = str(what)


def mumford_relation_terms(g, d):
    """Degree-d part of ``c(E) c(E^dual) - 1`` as ``(coeff, lambda_exp)`` pairs.

    The relation forces the integral of each part (times any complementary
    psi monomial) to vanish on Mbar_{g,n}.
    """
    out = []
    for i in range(0, d + 1):
        j = d - i
        if i > g or j > g:
            continue
        lam = {}
        for idx in (i, j):
            if idx:
                lam[idx] = lam.get(idx, 0) + 1
        out.append(((-1) ** j, tuple(sorted(lam.items()))))
    return out


def random_taut_class(rng, g, n, max_terms=3, max_tails=2):
    """A small random strata class on Mbar_{g,n} (for the algebra suites)."""
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        i = rng.randint(0, max_tails)
        tails = tuple(sorted((rng.randint(0, 2), rng.randint(0, 1))
                             for _ in range(i)))
        lam = {}
        for _ in range(rng.randint(0, 2)):
            j = rng.randint(1, max(1, g - i))
            lam[j] = lam.get(j, 0) + 1
        psi = tuple(rng.randint(0, 2) for _ in range(n))
        coeff = Fraction(rng.randint(-3, 3), rng.randint(1, 4))
        terms.append(_make_term(g, n, coeff, tails,
                                tuple(sorted(lam.items())), psi))
    return TautClass.from_terms(g, n, terms)


def suite_wk_properties():
    """String/dilaton/symmetry and the genus-zero closed form."""
    result = SuiteResult("wk-properties", True)
    table = default_table()
    # string and dilaton over a small exhaustive grid
    for g in range(0, 3):
        for n in range(1, 6):
            dim = 3 * g - 3 + n
            if dim < 0 or 2 * g - 2 + n <= 0:
                continue
            for d in compositions(dim, n):
                base = table.integral(g, d)
                # string: bump one exponent, append a tau_0 insertion
                for k in range(n):
                    bumped = d[:k] + (d[k] + 1,) + d[k + 1:]
                    lhs = table.integral(g, bumped + (0,))
                    rhs = sum((table.integral(
                        g, bumped[:t] + (bumped[t] - 1,) + bumped[t + 1:])
                        for t in range(n) if bumped[t] >= 1), Fraction(0))
                    result.record(lhs == rhs, ("string", g, bumped))
                # dilaton: append a tau_1 insertion
                dil = table.integral(g, tuple(d) + (1,))
                result.record(dil == (2 * g - 2 + n) * base, ("dilaton", g, d))
    # genus-zero closed form
    for n in range(3, 8):
        for d in compositions(n - 3, n):
            closed = Fraction(factorial(n - 3))
            for x in d:
                closed /= factorial(x)
            result.record(table.integral(0, d) == closed, ("genus0", d))
    return result


def suite_kappa_order(seed=DEFAULT_SEED, trials=25):
    """kappa elimination is independent of the elimination order."""
    result = SuiteResult("kappa-order-independence", True)
    table = default_table()
    rng = random.Random(seed)
    result.record(table.kappa_integral(1, 1, (0,), (1,)) == Fraction(1, 24),
                  "kappa_1 on Mbar_{1,1}")
    result.record(table.kappa_integral(0, 4, (0, 0, 0, 0), (1,)) == 1,
                  "kappa_1 on Mbar_{0,4}")
    done = 0
    while done < trials:
        g = rng.randint(0, 2)
        n = rng.randint(1, 3)
        if 2 * g - 2 + n <= 0:
            continue
        dim = 3 * g - 3 + n
        if not 0 <= dim <= 8:
            continue
        kap = []
        left = dim
        for _ in range(rng.randint(1, 3)):
            if left <= 0:
                break
            a = rng.randint(1, left)
            kap.append(a)
            left -= a
        psi = [0] * n
        for _ in range(left):
            psi[rng.randrange(n)] += 1
        want = table.kappa_integral(g, n, tuple(psi), tuple(kap))
        again = table._kappa_eval_random_order(
            g, tuple(sorted(psi)), tuple(sorted(kap)), rng)
        result.record(want == again, ("order", g, n, tuple(psi), tuple(kap)))
        done += 1
    return result


def suite_mumford(gmax=3, nmax=1):
    """Every homogeneous part of c(E)c(E^dual) - 1 integrates to zero."""
    result = SuiteResult("mumford-relations", True)
    for g in range(1, gmax + 1):
        for n in range(0, nmax + 1):
            if 2 * g - 2 + n <= 0:
                continue
            dim = 3 * g - 3 + n
            for deg in range(1, min(2 * g, dim) + 1):
                terms = mumford_relation_terms(g, deg)
                if not terms:
                    continue
                for exps in compositions(dim - deg, n):
                    total = sum(
                        (coeff * hodge_integral(HodgeMonomial.of(g, n, lam, exps))
                         for coeff, lam in terms), Fraction(0))
                    result.record(total == 0, ("mumford", g, n, deg, exps))
    return result


def suite_linear_hodge(gmax=3, nmax=2):
    """Pseudostable equals stable for lambda-linear integrands."""
    result = SuiteResult("linear-hodge-equality", True)
    for g in range(1, gmax + 1):
        for n in range(1, nmax + 1):
            if not is_pseudostable(g, n):
                continue
            dim = 3 * g - 3 + n
            for j in range(1, g + 1):
                corrected = hat_lambda(g, n, j)
                for exps in compositions(dim - j, n):
                    ps = class_integrate(class_multiply(
                        corrected, TautClass.psi_monomial(g, n, exps)))
                    stable = hodge_integral(HodgeMonomial.of(g, n, {j: 1}, exps))
                    result.record(ps == stable, ("linear", g, n, j, exps))
    return result


def suite_elsv(dmax=3, mmax=6):
    """Transposition counts match their Hodge-integral evaluation."""
    result = SuiteResult("elsv-agreement", True)

    def partitions(d, mx=None):
        mx = mx or d
        if d == 0:
            yield ()
            return
        for first in range(min(d, mx), 0, -1):
            for rest in partitions(d - first, first):
                yield (first,) + rest

    for d in range(1, dmax + 1):
        for mu in partitions(d):
            for g in range(0, 4):
                if 2 * g - 2 + len(mu) <= 0:
                    continue
                m = riemann_hurwitz_m(g, mu)
                if m > mmax:
                    continue
                brute = hurwitz_brute(HurwitzInstance.of(mu, m))
                formula = elsv_value(g, mu)
                result.record(formula == brute, ("elsv", g, mu, m))
    return result


def suite_algebra(seed=DEFAULT_SEED, triples=25):
    """Commutativity and associativity of the strata product."""
    result = SuiteResult("algebra-properties", True)
    rng = random.Random(seed)
    ambients = [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2)]
    for _ in range(triples):
        g, n = rng.choice(ambients)
        a = random_taut_class(rng, g, n)
        b = random_taut_class(rng, g, n)
        c = random_taut_class(rng, g, n)
        ab = class_multiply(a, b)
        result.record(ab == class_multiply(b, a), ("commutativity", g, n))
        result.record(class_multiply(ab, c) ==
                      class_multiply(a, class_multiply(b, c)),
                      ("associativity", g, n))
    return result


def suite_hat_lambda_square():
    """The product hat_lambda_1 * hat_lambda_1 has its pinned expansion."""
    result = SuiteResult("hat-lambda-square", True)
    for g, n in [(3, 1), (4, 2)]:
        square = class_multiply(hat_lambda(g, n, 1), hat_lambda(g, n, 1))
        expected = TautClass.from_terms(g, n, [
            _make_term(g, n, 1, (), ((1, 2),), (0,) * n),
            _make_term(g, n, 2, ((0, 0),), ((1, 1),), (0,) * n),
            _make_term(g, n, 1, ((0, 1),), (), (0,) * n),
            _make_term(g, n, -1, ((1, 0),), (), (0,) * n),
            _make_term(g, n, 1, ((0, 0), (0, 0)), (), (0,) * n),
        ])
        result.record(square == expected, ("hat-lambda-square", g, n))
    return result


def suite_bell_consistency(seed=DEFAULT_SEED, kmax=2, monomials=6):
    """hat_lambda_j agrees with the Bell assembly of the corrected Chern
    characters, and the degree-(k+1) recursion identity holds."""
    result = SuiteResult("bell-consistency", True)
    rng = random.Random(seed)
    g, n = 4, 2
    dim = 3 * g - 3 + n

    def z_class(l):
        return (Fraction((-1) ** (l - 1) * factorial(l - 1) * factorial(l))
                * t_pullback_ch(g, n, l))

    for j in range(1, kmax + 2):
        zs = [z_class(l) for l in range(1, j + 1)]
        assembled = Fraction(1, factorial(j)) * bell_polynomial(
            j, zs, one=TautClass.one(g, n))
        direct = hat_lambda(g, n, j)
        pool = list(compositions(dim - j, n))
        for exps in rng.sample(pool, min(monomials, len(pool))):
            mono = TautClass.psi_monomial(g, n, exps)
            result.record(
                class_integrate(class_multiply(assembled, mono)) ==
                class_integrate(class_multiply(direct, mono)),
                ("bell", j, exps))
    for k in range(0, kmax + 1):
        lhs = (k + 1) * hat_lambda(g, n, k + 1)
        rhs = TautClass.zero(g, n)
        for j in range(0, k + 1):
            rhs = rhs + Fraction(1, factorial(j)) * class_multiply(
                z_class(j + 1), hat_lambda(g, n, k - j))
        pool = list(compositions(dim - (k + 1), n))
        for exps in rng.sample(pool, min(monomials, len(pool))):
            mono = TautClass.psi_monomial(g, n, exps)
            result.record(
                class_integrate(class_multiply(lhs, mono)) ==
                class_integrate(class_multiply(rhs, mono)),
                ("recursion", k, exps))
    return result


def suite_psi_triviality(seed=DEFAULT_SEED, trials=12):
    """Lambda-free integrands give the same value on both moduli spaces."""
    result = SuiteResult("psi-pullback-triviality", True)
    rng = random.Random(seed)
    done = 0
    while done < trials:
        g = rng.randint(0, 3)
        n = rng.randint(1, 3)
        if not is_pseudostable(g, n):
            continue
        dim = 3 * g - 3 + n
        exps = [0] * n
        for _ in range(dim):
            exps[rng.randrange(n)] += 1
        ps = class_integrate(class_multiply(
            TautClass.one(g, n), TautClass.psi_monomial(g, n, exps)))
        result.record(ps == wk_integral(g, exps), ("psi-trivial", g, n, exps))
        done += 1
    return result


def run_all(seed=DEFAULT_SEED):
    """Run every suite; returns the list of :class:`SuiteResult`."""
    return [
        suite_wk_properties(),
        suite_kappa_order(seed),
        suite_mumford(),
        suite_linear_hodge(),
        suite_elsv(),
        suite_algebra(seed),
        suite_hat_lambda_square(),
        suite_bell_consistency(seed),
        suite_psi_triviality(seed),
    ]
