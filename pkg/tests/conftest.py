"""Shared pinned values and seeded random chain generators."""

import random

from sclkit.chainexpr import parse_chain
from sclkit.freegroup import (add_chains, canonicalize, chain_of, concat,
                              invert, make_word, single_chain)
from sclkit.rational import qq

# chains with exactly known scl, reused across the suite
SCL_CORPUS = (
    ("[a,b]", qq(1, 2)),
    ("2*[a,b] + ab - a - b", qq(1)),
    ("2*[a,b] - ab + a + b", qq(1)),
    ("a + b + BA", qq(1, 2)),
    ("abABAbaB", qq(1, 2)),
    ("c + CBAba", qq(1)),
    ("[a,b] + [c,d]", qq(1)),
    ("abABcabABC", qq(3, 2)),
    ("a + A", qq(0)),
)

# the rank-2 entries (immersion and rotation apply only to these)
RANK2_CORPUS = tuple((expr, value) for expr, value in SCL_CORPUS
                     if parse_chain(expr).chain.rank <= 2)

# explicit commutator-subgroup words of length <= 12 (rank 2, freely
# reduced, zero exponent sums)
COMMUTATOR_WORDS = (
    "abAB", "baBA", "abABabAB", "aabbAABB", "abABAbaB", "abABABab",
    "babABB", "aabABA", "aabAAB", "abbABB", "abABabABabAB", "aabbAABBabAB",
)


def chain(expr, min_rank=1):
    return parse_chain(expr, min_rank=min_rank).chain


def random_word(rng, rank, max_len):
    alphabet = [x for x in range(-rank, rank + 1) if x != 0]
    n = rng.randint(1, max_len)
    return make_word(tuple(rng.choice(alphabet) for _ in range(n)), rank)


def random_trivial_chain(rng, rank=2, max_letters=12):
    """Random homologically trivial chain with a bounded canonical size."""
    while True:
        kind = rng.randrange(3)
        if kind == 0:
            u, v = random_word(rng, rank, 3), random_word(rng, rank, 3)
            ch = single_chain(concat(u, v, invert(u), invert(v)))
        elif kind == 1:
            u, v = random_word(rng, rank, 3), random_word(rng, rank, 3)
            ch = chain_of([(1, u), (1, v), (-1, concat(u, v))], rank)
        else:
            u, v = random_word(rng, rank, 2), random_word(rng, rank, 2)
            t = random_word(rng, rank, 2)
            ch = add_chains(
                chain_of([(1, u), (1, v), (-1, concat(u, v))], rank),
                chain_of([(1, concat(t, u, invert(t))), (-1, u)], rank))
        canon = canonicalize(ch)
        total = sum(len(t.word) for t in canon.terms)
        if 0 < total <= max_letters:
            return canon


def seeded(seed):
    return random.Random(seed)
