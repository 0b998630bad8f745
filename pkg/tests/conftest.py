import random
from itertools import combinations

import pytest

from suppvar.monomial import Monomial, MonomialSeq, bits, mask_of


def cycle_seq(n: int) -> MonomialSeq:
    """Edge ideal of an n-cycle: x1x2, x2x3, ..., xn x1."""
    return MonomialSeq([Monomial({i: 1, (i % n) + 1: 1}) for i in range(1, n + 1)])


def path_seq(edges: int) -> MonomialSeq:
    """Edge ideal of a path with the given number of edges."""
    return MonomialSeq([Monomial({i: 1, i + 1: 1}) for i in range(1, edges + 1)])


def seq(*gens) -> MonomialSeq:
    """Build a sequence from exponent dicts."""
    return MonomialSeq([Monomial(g) for g in gens])


BADDIAG = seq({1: 1, 2: 1}, {3: 1, 4: 1}, {5: 1, 6: 1}, {1: 1, 3: 1, 5: 1}, {2: 1, 4: 1, 6: 1})


def small_corpus() -> list[MonomialSeq]:
    """Mixed bag of small sequences used by the property suites."""
    return [
        seq({1: 2}),
        seq({1: 2}, {2: 2}),
        seq({1: 1, 2: 1}, {2: 1, 3: 1}),
        cycle_seq(3),
        cycle_seq(4),
        path_seq(3),
        path_seq(4),
        cycle_seq(5),
        cycle_seq(6),
        seq({1: 2}, {1: 1, 2: 1}, {2: 2}),
        seq({1: 1, 2: 1}, {3: 1, 4: 1}, {1: 1, 3: 1}),
        seq({1: 2, 2: 1}, {2: 2, 3: 1}, {3: 2}),
    ]


def random_monomial(rng: random.Random, d: int, max_deg: int = 4) -> Monomial:
    while True:
        exps = {}
        for v in range(1, d + 1):
            e = rng.choice((0, 0, 0, 1, 1, 2))
            if e:
                exps[v] = e
        m = Monomial(exps)
        if 2 <= m.degree <= max_deg:
            return m


def random_minimal_seq(rng: random.Random, n: int, d: int) -> MonomialSeq:
    """A random minimal sequence of n monomials of degree >= 2 in d variables."""
    while True:
        gens: list[Monomial] = []
        tries = 0
        while len(gens) < n and tries < 200:
            tries += 1
            m = random_monomial(rng, d)
            if any(g.divides(m) or m.divides(g) for g in gens):
                continue
            gens.append(m)
        if len(gens) == n:
            return MonomialSeq(gens)


def brute_m_closure(s: MonomialSeq, J: int) -> int:
    fj = Monomial()
    for j in bits(J):
        fj = fj.lcm(s.gens[j - 1])
    return mask_of(j for j in range(1, s.n + 1) if s.gens[j - 1].divides(fj))


def brute_s_class(s: MonomialSeq, J: int) -> list[int]:
    fj = s.lcm_subset(J)
    out = []
    for r in range(s.n + 1):
        for K in combinations(range(1, s.n + 1), r):
            mask = mask_of(K)
            if s.lcm_subset(mask) == fj:
                out.append(mask)
    return sorted(out)


def inversion_sign(items) -> int:
    items = list(items)
    inv = sum(
        1
        for i in range(len(items))
        for j in range(i + 1, len(items))
        if items[i] > items[j]
    )
    return -1 if inv % 2 else 1


@pytest.fixture(scope="session")
def corpus():
    return small_corpus()
