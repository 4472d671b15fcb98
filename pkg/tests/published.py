"""Integer criterion polynomials P_1..P_6 as published, plus the values
of P_5 and P_6 produced by the recurrence (they differ; see the README)."""

from nottingham.multipoly import Domain, MultiPoly

PUBLISHED = {
    1: {(2, 0): 2, (0, 1): -2},
    2: {(3, 0, 0): 3, (0, 2, 0): 2, (1, 0, 1): -2},
    3: {(4, 0, 0, 0): 4, (0, 3, 0, 0): -2, (1, 1, 1, 0): 4, (2, 0, 0, 1): -2},
    4: {(5, 0, 0, 0, 0): 5, (0, 4, 0, 0, 0): 2, (1, 2, 1, 0, 0): -6, (2, 0, 2, 0, 0): 2,
        (2, 1, 0, 1, 0): 4, (3, 0, 0, 0, 1): -2},
    5: {(6, 0, 0, 0, 0, 0): 6, (0, 5, 0, 0, 0, 0): -2, (1, 3, 1, 0, 0, 0): 8,
        (2, 1, 2, 0, 0, 0): -6, (2, 2, 0, 1, 0, 0): -6, (3, 1, 0, 0, 1, 0): 4,
        (4, 0, 0, 0, 0, 1): -2},
    6: {(7, 0, 0, 0, 0, 0, 0): 7, (0, 6, 0, 0, 0, 0, 0): 2, (1, 4, 1, 0, 0, 0, 0): -10,
        (2, 2, 2, 0, 0, 0, 0): -11, (3, 0, 3, 0, 0, 0, 0): -2, (2, 3, 0, 1, 0, 0, 0): 8,
        (3, 1, 1, 1, 0, 0, 0): 11, (4, 0, 0, 2, 0, 0, 0): 2, (3, 2, 0, 0, 1, 0, 0): -6,
        (4, 0, 1, 0, 1, 0, 0): 4, (4, 1, 0, 0, 0, 1, 0): 4, (5, 0, 0, 0, 0, 0, 1): -2},
}

RECURRENCE = dict(PUBLISHED)
RECURRENCE[5] = dict(PUBLISHED[5])
RECURRENCE[5][(3, 0, 1, 1, 0, 0)] = 4
RECURRENCE[6] = dict(PUBLISHED[6])
RECURRENCE[6][(2, 2, 2, 0, 0, 0, 0)] = 12
RECURRENCE[6][(3, 1, 1, 1, 0, 0, 0)] = -12


def poly(table, b, p=None):
    domain = Domain.zz() if p is None else Domain.fp(p)
    return MultiPoly(table[b], b + 1, domain)


def first_primes_over_3(b, count):
    out, q = [], 5
    while len(out) < count:
        if all(q % d for d in range(2, int(q**0.5) + 1)) and b % q:
            out.append(q)
        q += 2
    return out
