r"""Exact Hodge integrals: monomials in lambda and psi classes on Mbar_{g,n}.

``lambda_j`` is the j-th Chern class of the rank-g Hodge bundle E.
Integrals of monomials in lambda and psi classes are evaluated in three
steps:

1. every lambda factor is rewritten as a universal polynomial in the
   Chern characters ``ch_1, ch_2, ...`` of E.  Chern classes are
   elementary symmetric functions of the Chern roots and Chern
   characters are rescaled power sums, so Newton's identities apply;
   they are packaged through Bell polynomials.  Even Chern characters of
   the Hodge bundle vanish and are dropped;
2. one Chern character factor at a time is eliminated with Mumford's
   Grothendieck--Riemann--Roch evaluation of ch(E): the replacement is a
   kappa class, psi corrections at the markings, and pushforwards from
   the one-edge boundary gluings, which lower the genus or split the
   surface (with a Bernoulli-number prefactor);
3. what remains are kappa/psi integrals, finished by :mod:`pshodge.wk`.

Every operation is pure, exact, and memoised.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from threading import Lock

from .multiset import counts, replace_one, sub_multisets
from .wk import default_table

__all__ = [
    "SparsePoly",
    "HodgeMonomial",
    "bell_polynomial",
    "bernoulli",
    "lambda_to_ch",
    "ch_in_lambda",
    "ch_to_lambda",
    "ch_monomial_integral",
    "hodge_integral",
    "clear_caches",
]

_ZERO = Fraction(0)


class SparsePoly:
    """Rational-coefficient polynomial in commuting symbols ``s_1, s_2, ...``.

    A monomial is keyed by the sorted tuple of its symbol indices with
    multiplicity, e.g. ``(1, 1, 3)`` stands for ``s_1^2 s_3``.  The same
    class serves for polynomials in Chern characters (symbol l = ch_l)
    and in lambda classes (symbol j = lambda_j).

    >>> p = SparsePoly.symbol(1) + 2 * SparsePoly.symbol(2)
    >>> sorted((p * p).terms.items())
    [((1, 1), Fraction(1, 1)), ((1, 2), Fraction(4, 1)), ((2, 2), Fraction(4, 1))]
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        data = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for mono, c in items:
                c = Fraction(c)
                if not c:
                    continue
                mono = tuple(sorted(mono))
                data[mono] = data.get(mono, _ZERO) + c
        self.terms = {m: c for m, c in data.items() if c}

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({(): 1})

    @classmethod
    def constant(cls, c):
        return cls({(): c})

    @classmethod
    def symbol(cls, i):
        return cls({(int(i),): 1})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == SparsePoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SparsePoly.constant(other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, _ZERO) + c
        return SparsePoly(out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, SparsePoly)
                       else SparsePoly.constant(-Fraction(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SparsePoly({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, SparsePoly):
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = tuple(sorted(m1 + m2))
                out[key] = out.get(key, _ZERO) + c1 * c2
        return SparsePoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative exponent")
        out = SparsePoly.one()
        for _ in range(k):
            out = out * self
        return out

    def substitute(self, images):
        """Replace every symbol by ``images(i)`` and expand."""
        out = SparsePoly.zero()
        for mono, c in self.terms.items():
            term = SparsePoly.constant(c)
            for i in mono:
                term = term * images(i)
            out = out + term
        return out

    def drop_symbols(self, predicate):
        """Zero out monomials containing a symbol with ``predicate(i)`` true."""
        return SparsePoly({m: c for m, c in self.terms.items()
                           if not any(predicate(i) for i in m)})

    def __repr__(self):
        if not self.terms:
            return "SparsePoly(0)"
        bits = [f"{c}*{m}" for m, c in sorted(self.terms.items())]
        return "SparsePoly(" + " + ".join(bits) + ")"


def bell_polynomial(k, xs, one=1):
    """Complete Bell polynomial ``B_k(x_1, ..., x_k)``.

    Defined by ``B_0 = 1`` and the recursion
    ``B_{k+1} = sum_{j=0}^{k} C(k, j) x_{j+1} B_{k-j}``, equivalently by
    ``sum_k B_k t^k / k! = exp(sum_j x_j t^j / j!)``.  ``xs`` lists
    ``x_1, x_2, ...`` and needs at least ``k`` entries; the entries may
    live in any commutative ring whose identity is passed as ``one``.

    >>> x = [SparsePoly.symbol(i) for i in (1, 2, 3)]
    >>> bell_polynomial(2, x, one=SparsePoly.one()) == x[0] * x[0] + x[1]
    True
    """
    if k < 0:
        raise ValueError("Bell polynomial index must be non-negative")
    table = [one]
    for m in range(k):
        acc = None
        for j in range(m + 1):
            term = comb(m, j) * xs[j] * table[m - j]
            acc = term if acc is None else acc + term
        table.append(acc)
    return table[k]


@lru_cache(maxsize=None)
def bernoulli(m):
    """Bernoulli number ``B_m`` (convention ``B_1 = -1/2``).

    >>> [bernoulli(m) for m in (0, 2, 4)]
    [Fraction(1, 1), Fraction(1, 6), Fraction(-1, 30)]
    """
    if m == 0:
        return Fraction(1)
    acc = sum(comb(m + 1, j) * bernoulli(j) for j in range(m))
    return Fraction(-acc, m + 1)


@lru_cache(maxsize=None)
def lambda_to_ch(j, g):
    """``lambda_j`` as a universal polynomial in ``ch_1 .. ch_j`` (rank g).

    With ``x_l = (-1)^(l-1) (l-1)! l! ch_l`` one has
    ``lambda_j = B_j(x) / j!``; this is Newton's conversion of elementary
    symmetric functions into power sums.  The identity holds for any
    rank-g bundle; ``j > g`` gives the zero polynomial (rank bound) and
    no parity substitution is applied here.

    >>> lambda_to_ch(1, 3) == SparsePoly.symbol(1)
    True
    """
    if j < 0 or j > g:
        return SparsePoly.zero()
    if j == 0:
        return SparsePoly.one()
    xs = [Fraction((-1) ** (l - 1) * factorial(l - 1) * factorial(l))
          * SparsePoly.symbol(l) for l in range(1, j + 1)]
    return Fraction(1, factorial(j)) * bell_polynomial(j, xs, one=SparsePoly.one())


@lru_cache(maxsize=None)
def _power_sum_in_elementary(k):
    # Newton: p_k = (-1)^(k-1) k e_k + sum_{i=1}^{k-1} (-1)^(i-1) e_i p_{k-i}
    if k == 0:
        return SparsePoly.constant(0)
    acc = Fraction((-1) ** (k - 1) * k) * SparsePoly.symbol(k)
    for i in range(1, k):
        acc = acc + Fraction((-1) ** (i - 1)) * SparsePoly.symbol(i) \
            * _power_sum_in_elementary(k - i)
    return acc


@lru_cache(maxsize=None)
def ch_in_lambda(l):
    """``ch_l`` as a universal polynomial in lambda classes (any rank).

    >>> ch_in_lambda(2) == Fraction(1, 2) * (
    ...     SparsePoly.symbol(1) ** 2 - 2 * SparsePoly.symbol(2))
    True
    """
    if l == 0:
        raise ValueError("ch_0 is the rank, not a polynomial in lambda classes")
    return Fraction(1, factorial(l)) * _power_sum_in_elementary(l)


def ch_to_lambda(poly):
    """Rewrite a Chern-character polynomial as a lambda-class polynomial."""
    return poly.substitute(ch_in_lambda)


@dataclass(frozen=True)
class HodgeMonomial:
    """A monomial in lambda and psi classes on Mbar_{g,n}, in canonical form."""

    g: int
    n: int
    lambda_exp: tuple
    psi_exp: tuple

    @staticmethod
    def of(g, n, lambdas=None, psis=None):
        """Build a monomial; ``lambdas`` maps index j to its exponent and
        ``psis`` is a marking->exponent map or a length-n list."""
        lam = {}
        if lambdas:
            items = lambdas.items() if isinstance(lambdas, dict) else lambdas
            for j, e in items:
                j, e = int(j), int(e)
                if j < 1:
                    raise ValueError("lambda indices start at 1")
                if e < 0:
                    raise ValueError("exponents must be non-negative")
                if e:
                    lam[j] = lam.get(j, 0) + e
        if psis is None:
            exps = [0] * n
        elif isinstance(psis, dict):
            exps = [0] * n
            for i, e in psis.items():
                if not 1 <= i <= n:
                    raise ValueError(f"psi marking {i} out of range 1..{n}")
                exps[i - 1] = int(e)
        else:
            exps = [int(e) for e in psis]
            if len(exps) != n:
                raise ValueError("psi exponent list must have length n")
        if any(e < 0 for e in exps):
            raise ValueError("exponents must be non-negative")
        return HodgeMonomial(int(g), int(n), tuple(sorted(lam.items())),
                             tuple(exps))

    def degree(self):
        return sum(j * e for j, e in self.lambda_exp) + sum(self.psi_exp)


_CH_MEMO = {}
_HODGE_MEMO = {}
_MEMO_LOCK = Lock()


def clear_caches():
    """Drop the reduction memos (the WK table is managed separately)."""
    with _MEMO_LOCK:
        _CH_MEMO.clear()
        _HODGE_MEMO.clear()


def ch_monomial_integral(g, psi, kappa=(), ch=()):
    """Integral over Mbar_{g,n} of ``prod ch_l(E) prod kappa_a prod psi_i^{e_i}``.

    ``psi`` lists one exponent per marking.  Any even entry in ``ch``
    gives 0: the even Chern characters of the Hodge bundle vanish.
    """
    psi = tuple(sorted(int(e) for e in psi))
    kappa = tuple(sorted(int(a) for a in kappa))
    ch = tuple(sorted(int(l) for l in ch))
    if any(l < 1 for l in ch):
        raise ValueError("ch indices must be positive")
    if any(l % 2 == 0 for l in ch):
        return _ZERO
    return _reduce(g, psi, kappa, ch)


def _reduce(g, psi, kappa, ch):
    n = len(psi)
    if 2 * g - 2 + n <= 0:
        return _ZERO
    if g == 0 and ch:
        return _ZERO  # rank-zero Hodge bundle
    if sum(psi) + sum(kappa) + sum(ch) != 3 * g - 3 + n:
        return _ZERO
    if not ch:
        return default_table()._kappa_eval(g, psi, kappa)
    key = (g, psi, kappa, ch)
    hit = _CH_MEMO.get(key)
    if hit is not None:
        return hit

    l = ch[-1]
    rest = ch[:-1]
    # l = 2L - 1; prefactor Bern_{2L} / (2L)!
    pref = bernoulli(l + 1) / factorial(l + 1)

    acc = _reduce(g, psi, tuple(sorted(kappa + (l,))), rest)
    for v, c in counts(psi).items():
        acc -= c * _reduce(g, replace_one(psi, v, v + l), kappa, rest)

    boundary = _ZERO
    for a in range(l):
        b = l - 1 - a
        sign = -1 if a % 2 else 1
        if g >= 1:
            boundary += sign * _reduce(g - 1, tuple(sorted(psi + (a, b))),
                                       kappa, rest)
        for psi1, psi2, mpsi in sub_multisets(psi):
            n1 = len(psi1) + 1
            for kap1, kap2, mkap in sub_multisets(kappa):
                for ch1, ch2, mch in sub_multisets(rest):
                    # the genus of the separating side is forced by its degree
                    s1 = sum(psi1) + a + sum(kap1) + sum(ch1) + 3 - n1
                    if s1 % 3 or not 0 <= s1 // 3 <= g:
                        continue
                    h = s1 // 3
                    if 2 * h - 2 + n1 <= 0:
                        continue
                    if 2 * (g - h) - 2 + len(psi2) + 1 <= 0:
                        continue
                    left = _reduce(h, tuple(sorted(psi1 + (a,))), kap1, ch1)
                    if not left:
                        continue
                    right = _reduce(g - h, tuple(sorted(psi2 + (b,))),
                                    kap2, ch2)
                    boundary += sign * mpsi * mkap * mch * left * right
    acc += boundary / 2

    value = pref * acc
    with _MEMO_LOCK:
        _CH_MEMO[key] = value
    return value


def hodge_integral(monomial):
    """Exact integral of a :class:`HodgeMonomial` over Mbar_{g,n}.

    Returns 0 on unstable ``(g, n)``, on a total-degree mismatch, and for
    any ``lambda_j`` with ``j > g``.  Pure psi monomials delegate to the
    Witten--Kontsevich evaluator directly.

    >>> hodge_integral(HodgeMonomial.of(1, 1, lambdas={1: 1}))
    Fraction(1, 24)
    """
    g, n = monomial.g, monomial.n
    if 2 * g - 2 + n <= 0:
        return _ZERO
    if monomial.degree() != 3 * g - 3 + n:
        return _ZERO
    if any(j > g for j, _ in monomial.lambda_exp):
        return _ZERO
    psi = tuple(sorted(monomial.psi_exp))
    if not monomial.lambda_exp:
        return default_table().integral(g, psi)
    key = (g, psi, monomial.lambda_exp)
    hit = _HODGE_MEMO.get(key)
    if hit is not None:
        return hit
    poly = SparsePoly.one()
    for j, e in monomial.lambda_exp:
        poly = poly * lambda_to_ch(j, g) ** e
    poly = poly.drop_symbols(lambda l: l % 2 == 0)
    value = _ZERO
    for mono, coeff in poly.terms.items():
        value += coeff * _reduce(g, psi, (), mono)
    with _MEMO_LOCK:
        _HODGE_MEMO[key] = value
    return value
