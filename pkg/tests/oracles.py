"""Independent reference computations used only by the tests.

Nothing here imports the engine's combinatorics: characters come from the
Murnaghan-Nakayama rule on beta-sets, tableaux from brute-force fillings.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import factorial

import sympy


def partitions_of(n, cap=None):
    cap = n if cap is None else cap
    if n == 0:
        yield ()
        return
    for p in range(min(n, cap), 0, -1):
        for tail in partitions_of(n - p, p):
            yield (p,) + tail


@lru_cache(maxsize=None)
def mn_character(shape: tuple, rho: tuple) -> int:
    """chi^shape at cycle type rho, by removing rim hooks via beta numbers."""
    if not rho:
        return 1 if sum(shape) == 0 else 0
    k, rest = rho[0], rho[1:]
    h = len(shape)
    beta = [shape[i] + (h - 1 - i) for i in range(h)]
    total = 0
    bs = set(beta)
    for b in beta:
        nb = b - k
        if nb < 0 or nb in bs:
            continue
        # sign: number of beta numbers strictly between nb and b
        sign = (-1) ** sum(1 for x in beta if nb < x < b)
        new = sorted((x if x != b else nb) for x in beta)[::-1]
        hh = len(new)
        parts = tuple(p for p in (new[i] - (hh - 1 - i) for i in range(hh)) if p > 0)
        total += sign * mn_character(parts, rest)
    return total


def centralizer(rho) -> int:
    z = 1
    for k in set(rho):
        c = rho.count(k)
        z *= k**c * factorial(c)
    return z


def lr_by_characters(lam, lam1, lam2) -> int:
    """Restriction multiplicity <chi^lam | chi^lam1 x chi^lam2> over S_n1 x S_n2."""
    n1, n2 = sum(lam1), sum(lam2)
    if sum(lam) != n1 + n2:
        return 0
    acc = Fraction(0)
    for r1 in partitions_of(n1):
        for r2 in partitions_of(n2):
            rho = tuple(sorted(r1 + r2, reverse=True))
            acc += Fraction(mn_character(tuple(lam), rho) * mn_character(tuple(lam1), r1) * mn_character(tuple(lam2), r2), centralizer(r1) * centralizer(r2))
    assert acc.denominator == 1
    return int(acc)


def brute_tableaux(shape, inner=()):
    """Standard fillings of shape/inner by trying every permutation; returns position maps."""
    boxes = [(r, c) for r, row in enumerate(shape) for c in range(inner[r] if r < len(inner) else 0, row)]
    out = []
    for perm in itertools.permutations(range(1, len(boxes) + 1)):
        val = dict(zip(boxes, perm))
        ok = all(val[(r, c)] < val[(r, c + 1)] for (r, c) in boxes if (r, c + 1) in val) and all(val[(r, c)] < val[(r + 1, c)] for (r, c) in boxes if (r + 1, c) in val)
        if ok:
            out.append(val)
    return out


def sympy_nullity(dense) -> int:
    M = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in dense])
    return len(M.nullspace())


def sympy_nullspace(dense):
    M = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in dense])
    return [[Fraction(int(v.p), int(v.q)) for v in vec] for vec in M.nullspace()]


def permutation_from_word(word, n):
    """Product of adjacent transpositions g_{i1} g_{i2} ... as a tuple image, 1-based letters."""
    perm = list(range(n))
    for i in word:
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return perm


def cycle_type(perm) -> tuple:
    seen = [False] * len(perm)
    lens = []
    for s in range(len(perm)):
        if seen[s]:
            continue
        k, j = 0, s
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            k += 1
        lens.append(k)
    return tuple(sorted(lens, reverse=True))
