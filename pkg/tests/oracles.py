"""Brute-force references shared by the unit and acceptance tests."""
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, permutations

from dqtransfer.flagcohom import elementary_symmetric


def monomials(n, d):
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def mul_terms(a, b):
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = out.get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


@lru_cache(maxsize=None)
def ideal_basis(n, d):
    """Echelon basis (keyed by leading monomial) of the degree-d part of (e_1, ..., e_n)."""
    basis = {}
    for k in range(1, n + 1):
        if k > d:
            break
        ek = elementary_symmetric(n, k).terms
        for m in monomials(n, d - k):
            v = {mon: Fraction(c) for mon, c in mul_terms(ek, {m: 1}).items()}
            v = reduce_against(basis, v)
            if v:
                lead = max(v)
                basis[lead] = {mon: c / v[lead] for mon, c in v.items()}
    return basis


def reduce_against(basis, v):
    v = dict(v)
    while v:
        lead = max(v)
        if lead not in basis:
            return v
        c = v[lead]
        for mon, x in basis[lead].items():
            v[mon] = v.get(mon, 0) - c * x
            if not v[mon]:
                del v[mon]
    return v


def in_ideal(n, terms):
    by_degree = {}
    for m, c in terms.items():
        by_degree.setdefault(sum(m), {})[m] = Fraction(c)
    if 0 in by_degree:
        return False
    return all(not reduce_against(ideal_basis(n, d), v) for d, v in by_degree.items())


def antisym_pairing(n, terms):
    """Coefficient of the staircase in sum_w sign(w) w(p): the divided difference d_{w0} p."""
    stair = tuple(n - 1 - i for i in range(n))
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        for m, c in terms.items():
            # w acts by t_i -> t_perm(i)
            image = [0] * n
            for i, e in enumerate(m):
                image[perm[i]] = e
            if tuple(image) == stair:
                total += sign * c
    return total
