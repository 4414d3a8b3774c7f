r"""Hurwitz numbers by exhaustive transposition enumeration, and their
evaluation through linear Hodge integrals (the ELSV formula).

The single Hurwitz number ``h^m_mu`` counts tuples of m transpositions
in the symmetric group S_d (d = |mu|) whose ordered product is a fixed
permutation of cycle type mu and whose generated subgroup acts
transitively on the d points.  The count is invariant under conjugation
of the target and under reversing the composition convention, so the
canonical target with cycles ``(1..mu_1)(mu_1+1..mu_1+mu_2)...`` is used.

Enumeration is a depth-first search over transposition tuples with two
safe prunes: a partial product is abandoned when the remaining factors
cannot reach the target (a permutation with c cycles needs at least
d - c transpositions) or when the leftover parity is wrong.  Cost is
bounded by ``(d(d-1)/2)^m``; inputs beyond ``d <= 6, m <= 8`` are
refused outright.

For ``2g - 2 + len(mu) > 0`` and ``m = 2g - 2 + len(mu) + |mu|`` the same
number is computed by the ELSV formula

    h^m_mu = m! prod_i (mu_i^{mu_i + 1} / mu_i!)
             int_{Mbar_{g,l}} (1 - lambda_1 + lambda_2 - ...)
                              / prod_i (1 - mu_i psi_i),

which makes the brute-force count an end-to-end independent check of
linear Hodge integrals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .hodge import HodgeMonomial, hodge_integral
from .multiset import compositions

__all__ = [
    "ENUMERATION_D_MAX",
    "ENUMERATION_M_MAX",
    "EnumerationBoundError",
    "HurwitzInstance",
    "canonical_permutation",
    "count_factorizations",
    "hurwitz_brute",
    "riemann_hurwitz_m",
    "elsv_value",
]

ENUMERATION_D_MAX = 6
ENUMERATION_M_MAX = 8


class EnumerationBoundError(ValueError):
    """Refusal to enumerate beyond the desk-scale resource guard."""


@dataclass(frozen=True)
class HurwitzInstance:
    """A factorization-counting instance: partition ``mu`` and length ``m``."""

    mu: tuple
    m: int

    @staticmethod
    def of(mu, m):
        mu = tuple(sorted((int(x) for x in mu), reverse=True))
        if not mu or mu[-1] < 1:
            raise ValueError("mu must be a partition with positive parts")
        if m < 0:
            raise ValueError("m must be non-negative")
        return HurwitzInstance(mu, int(m))

    @property
    def d(self):
        return sum(self.mu)

    def genus(self):
        """The genus for which m matches Riemann--Hurwitz, if integral."""
        num = self.m - len(self.mu) - self.d + 2
        return num // 2 if num % 2 == 0 and num >= 0 else None

    def sign_consistent(self):
        """Whether a product of m transpositions can have cycle type mu."""
        return (self.m - (self.d - len(self.mu))) % 2 == 0


def canonical_permutation(mu):
    """The permutation of {0..d-1} with cycles ``(0..mu_1-1)(mu_1..)...``.

    >>> canonical_permutation((2, 1))
    (1, 0, 2)
    """
    d = sum(mu)
    perm = list(range(d))
    start = 0
    for part in mu:
        for k in range(part):
            perm[start + k] = start + (k + 1) % part
        start += part
    return tuple(perm)


def _compose(p, q):
    # apply p first, then q
    return tuple(q[p[x]] for x in range(len(p)))


def _inverse(p):
    out = [0] * len(p)
    for x, y in enumerate(p):
        out[y] = x
    return tuple(out)


def _cycle_count(p):
    seen = [False] * len(p)
    c = 0
    for x in range(len(p)):
        if not seen[x]:
            c += 1
            while not seen[x]:
                seen[x] = True
                x = p[x]
    return c


def _transitive(pairs, d):
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in pairs:
        parent[find(i)] = find(j)
    return len({find(x) for x in range(d)}) == 1


def count_factorizations(target, m):
    """Number of m-tuples of transpositions of {0..d-1} whose left-to-right
    product equals ``target`` and which generate a transitive subgroup.

    Exhaustive depth-first enumeration; the minimum-transposition and
    parity prunes discard only prefixes that cannot complete.
    """
    d = len(target)
    if d == 1:
        # no transpositions exist; only the empty product of the identity
        return 1 if m == 0 and target == (0,) else 0
    transpositions = []
    for i in range(d):
        for j in range(i + 1, d):
            perm = list(range(d))
            perm[i], perm[j] = j, i
            transpositions.append((tuple(perm), (i, j)))

    count = 0
    chosen = []

    def rec(partial, depth):
        nonlocal count
        remaining = m - depth
        residue = _compose(_inverse(partial), target)
        need = d - _cycle_count(residue)
        if need > remaining or (remaining - need) % 2:
            return
        if depth == m:
            if _transitive(chosen, d):
                count += 1
            return
        for perm, pair in transpositions:
            chosen.append(pair)
            rec(_compose(partial, perm), depth + 1)
            chosen.pop()

    rec(tuple(range(d)), 0)
    return count


def hurwitz_brute(instance):
    """Exact single Hurwitz number ``h^m_mu`` by exhaustive enumeration.

    >>> hurwitz_brute(HurwitzInstance.of((2,), 1))
    1
    >>> hurwitz_brute(HurwitzInstance.of((1, 1, 1), 4))
    24
    """
    if instance.d > ENUMERATION_D_MAX or instance.m > ENUMERATION_M_MAX:
        raise EnumerationBoundError(
            f"refusing d={instance.d}, m={instance.m}: enumeration bound is "
            f"d <= {ENUMERATION_D_MAX}, m <= {ENUMERATION_M_MAX}")
    if not instance.sign_consistent():
        return 0
    return count_factorizations(canonical_permutation(instance.mu), instance.m)


def riemann_hurwitz_m(g, mu):
    """The number of transposition factors for genus g: ``2g - 2 + l + |mu|``.

    >>> riemann_hurwitz_m(0, (1, 1, 1))
    4
    >>> riemann_hurwitz_m(1, (2,))
    3
    """
    if g < 0:
        raise ValueError("genus must be non-negative")
    return 2 * g - 2 + len(mu) + sum(mu)


def elsv_value(g, mu):
    """The ELSV evaluation of ``h^m_mu`` through linear Hodge integrals.

    Expands ``(1 - lambda_1 + lambda_2 - ...) / prod(1 - mu_i psi_i)`` to
    top degree on Mbar_{g,l} and sums the Hodge integrals with the
    combinatorial prefactor.  Requires ``(g, l)`` stable.

    >>> elsv_value(1, (2,))
    Fraction(1, 1)
    """
    mu = tuple(sorted((int(x) for x in mu), reverse=True))
    ell = len(mu)
    if 2 * g - 2 + ell <= 0:
        raise ValueError(f"({g}, {ell}) is unstable: the formula is out of range")
    dim = 3 * g - 3 + ell
    total = Fraction(0)
    for j in range(0, g + 1):
        if j > dim:
            break
        sign = -1 if j % 2 else 1
        for exps in compositions(dim - j, ell):
            weight = 1
            for mu_i, e_i in zip(mu, exps):
                weight *= mu_i ** e_i
            value = hodge_integral(
                HodgeMonomial.of(g, ell, {j: 1} if j else None, exps))
            if value:
                total += sign * weight * value
    pref = Fraction(factorial(riemann_hurwitz_m(g, mu)))
    for mu_i in mu:
        pref *= Fraction(mu_i ** (mu_i + 1), factorial(mu_i))
    return pref * total
