"""Words, conjugacy classes, and rational chains in free groups.

Letters are nonzero integers: k stands for the k-th generator (1-based)
and -k for its inverse.  In text form generators are a..z and inverses
A..Z.  Words are always stored freely reduced.  A chain is a finite
formal sum of words with exact rational coefficients; canonicalize puts
it into the normal form used by every downstream computation (primitive
cyclically reduced class representatives, merged and cancelled against
inverse classes).
"""

from dataclasses import dataclass

from .errors import NotBoundaryError, RankMismatchError
from .rational import QQ, qq


# ---------------------------------------------------------------------------
# letters

def letter_from_char(ch):
    o = ord(ch)
    if ord("a") <= o <= ord("z"):
        return o - ord("a") + 1
    if ord("A") <= o <= ord("Z"):
        return -(o - ord("A") + 1)
    raise ValueError("invalid letter %r" % ch)


def letter_to_char(letter):
    if letter > 0:
        return chr(ord("a") + letter - 1)
    return chr(ord("A") - letter - 1)


def letter_key(letter):
    """Sort key ordering letters a < A < b < B < c < ..."""
    return (abs(letter), 0 if letter > 0 else 1)


def reduce_letters(letters):
    """Freely reduce a letter sequence."""
    out = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


# ---------------------------------------------------------------------------
# words

@dataclass(frozen=True)
class Word:
    """A freely reduced word; letters are nonzero ints with |letter| <= rank."""

    letters: tuple
    rank: int

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        for x in self.letters:
            if not isinstance(x, int) or x == 0 or abs(x) > self.rank:
                raise ValueError("letter %r out of range for rank %d" % (x, self.rank))
        for i in range(len(self.letters) - 1):
            if self.letters[i] == -self.letters[i + 1]:
                raise ValueError("word is not freely reduced: %r" % (self.letters,))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return "".join(letter_to_char(x) for x in self.letters)

    def __repr__(self):
        return "Word(%r, rank=%d)" % (str(self), self.rank)


def make_word(letters, rank):
    """Build a Word, freely reducing the letter sequence first."""
    return Word(reduce_letters(letters), rank)


def word(text, rank=None):
    """Parse a word from a letter string such as "abAB".

    Rank defaults to the largest generator index used (at least 1).
    """
    letters = tuple(letter_from_char(ch) for ch in text)
    if rank is None:
        rank = max((abs(x) for x in letters), default=1)
    return make_word(letters, rank)


def invert(w):
    """Inverse word; the inverse of a reduced word is already reduced."""
    return Word(tuple(-x for x in reversed(w.letters)), w.rank)


def concat(*words):
    """Product of words (freely reduced); all ranks must agree."""
    if not words:
        raise ValueError("empty product")
    rank = words[0].rank
    letters = []
    for w in words:
        if w.rank != rank:
            raise RankMismatchError("cannot multiply rank %d and rank %d words"
                                    % (rank, w.rank))
        letters.extend(w.letters)
    return make_word(letters, rank)


def word_power(w, n):
    """w**n for any integer n (freely reduced)."""
    base = w if n >= 0 else invert(w)
    return make_word(base.letters * abs(n), w.rank)


def with_rank(w, rank):
    """The same word viewed in a larger ambient free group."""
    if rank < w.rank:
        raise RankMismatchError("cannot shrink rank %d to %d" % (w.rank, rank))
    return Word(w.letters, rank)


def is_cyclically_reduced(w):
    L = w.letters
    return len(L) < 2 or L[0] != -L[-1]


def cyclic_reduce(w):
    """Split w = conjugator * core * conjugator**-1 with core cyclically
    reduced; returns (core, conjugator)."""
    L = w.letters
    i, j = 0, len(L)
    while j - i >= 2 and L[i] == -L[j - 1]:
        i += 1
        j -= 1
    return Word(L[i:j], w.rank), Word(L[:i], w.rank)


def primitive_root(w):
    """Smallest u with w = u**k (k >= 1); returns (u, k).

    For cyclically reduced input the root is the periodic block of the
    letter string; in general the word is conjugated to its cyclic core
    first.  The empty word returns (w, 1).
    """
    core, conj = cyclic_reduce(w)
    n = len(core)
    if n == 0:
        return w, 1
    L = core.letters
    for d in range(1, n + 1):
        if n % d == 0 and L[:d] * (n // d) == L:
            root_core = Word(L[:d], w.rank)
            if len(conj) == 0:
                return root_core, n // d
            return concat(conj, root_core, invert(conj)), n // d
    raise AssertionError("unreachable")  # pragma: no cover


def word_key(w):
    """Total order on words: by the letter order a < A < b < B < ..."""
    return tuple(letter_key(x) for x in w.letters)


def class_rep(w):
    """Canonical conjugacy-class representative of a cyclically reduced word.

    Returns (rep, sign): rep is the lexicographically least rotation among
    the rotations of w and of its inverse, and sign is +1 if rep is a
    rotation of w itself, -1 if it comes from the inverse.  The two
    rotation sets never meet (no free-group element is conjugate to its
    own inverse), so the sign is well defined.
    """
    if not is_cyclically_reduced(w):
        raise ValueError("class_rep requires a cyclically reduced word")
    best = None
    best_key = None
    best_sign = 1
    for cand, sign in ((w, 1), (invert(w), -1)):
        L = cand.letters
        for i in range(len(L)):
            rot = L[i:] + L[:i]
            key = tuple(letter_key(x) for x in rot)
            if best_key is None or key < best_key:
                best, best_key, best_sign = rot, key, sign
    if best is None:
        return w, 1
    return Word(best, w.rank), best_sign


# ---------------------------------------------------------------------------
# chains

@dataclass(frozen=True)
class ChainTerm:
    coefficient: object  # exact rational
    word: Word


def chain_term(coefficient, w):
    return ChainTerm(qq(coefficient), w)


@dataclass(frozen=True)
class Chain:
    """A formal rational sum of words, all of the same rank."""

    terms: tuple
    rank: int

    def __post_init__(self):
        for t in self.terms:
            if t.word.rank != self.rank:
                raise RankMismatchError(
                    "term %r has rank %d, chain has rank %d"
                    % (str(t.word), t.word.rank, self.rank))

    def is_empty(self):
        return not self.terms


def chain_of(pairs, rank):
    """Chain from (coefficient, word) pairs."""
    return Chain(tuple(chain_term(c, w) for c, w in pairs), rank)


def single_chain(w, coefficient=1):
    return chain_of([(coefficient, w)], w.rank)


def add_chains(a, b):
    if a.rank != b.rank:
        raise RankMismatchError("cannot add rank %d and rank %d chains"
                                % (a.rank, b.rank))
    return Chain(a.terms + b.terms, a.rank)


def scale_chain(chain, k):
    k = qq(k)
    if k == 0:
        return Chain((), chain.rank)
    return Chain(tuple(ChainTerm(t.coefficient * k, t.word) for t in chain.terms),
                 chain.rank)


def invert_chain(chain):
    """Orientation reversal: every word replaced by its inverse."""
    return Chain(tuple(ChainTerm(t.coefficient, invert(t.word)) for t in chain.terms),
                 chain.rank)


def word_exponents(w):
    """Signed letter-count vector of length rank."""
    out = [0] * w.rank
    for x in w.letters:
        out[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(out)


def abelianize(chain):
    """Coefficient-weighted exponent-sum vector (length = rank)."""
    out = [qq(0)] * chain.rank
    for t in chain.terms:
        for g, e in enumerate(word_exponents(t.word)):
            out[g] += t.coefficient * e
    return tuple(out)


def is_homologically_trivial(chain):
    return all(v == 0 for v in abelianize(chain))


def term_sort_key(term):
    return (len(term.word), word_key(term.word))


def canonicalize(chain):
    """Normal form of a chain as a sum of conjugacy classes.

    Each term is cyclically reduced, powers are split off (u**k counts as
    k copies of u), every class is replaced by its canonical representative
    with the coefficient sign adjusted when the representative comes from
    the inverse class, equal representatives are merged, and zero terms are
    dropped.  Terms are sorted by (length, letter order).  scl, rot, and
    homology class are all invariant under this rewriting.
    """
    buckets = {}
    for t in chain.terms:
        core, _ = cyclic_reduce(t.word)
        if len(core) == 0:
            continue
        root, k = primitive_root(core)
        rep, sign = class_rep(root)
        buckets[rep] = buckets.get(rep, qq(0)) + t.coefficient * k * sign
    terms = [ChainTerm(c, w) for w, c in buckets.items() if c != 0]
    terms.sort(key=term_sort_key)
    return Chain(tuple(terms), chain.rank)


def chains_equal(a, b):
    """Equality in the normal form (same rank, same canonical terms)."""
    return a.rank == b.rank and canonicalize(a).terms == canonicalize(b).terms


def require_boundary(chain):
    if not is_homologically_trivial(chain):
        raise NotBoundaryError(
            "chain is not homologically trivial: exponent vector (%s)"
            % ", ".join(str(v) for v in abelianize(chain)))


# ---------------------------------------------------------------------------
# combining several words into one with controlled scl

def sum_as_single_word(words):
    """Join words g_1..g_m into g_1 x_1 g_2 x_1^-1 ... x_{m-1} g_m x_{m-1}^-1
    using m-1 fresh generators, in rank (rank + m - 1).

    The output is a single word whose scl exceeds scl of the summed chain
    by exactly (m-1)/2; it is cyclically reduced whenever the inputs are.
    """
    if not words:
        raise ValueError("need at least one word")
    rank = words[0].rank
    for g in words:
        if g.rank != rank:
            raise RankMismatchError("all words must share one rank")
        if len(g) == 0:
            raise ValueError("words must be nonempty")
        if not is_cyclically_reduced(g):
            raise ValueError("words must be cyclically reduced")
    m = len(words)
    letters = list(words[0].letters)
    for i, g in enumerate(words[1:], start=1):
        x = rank + i
        letters.append(x)
        letters.extend(g.letters)
        letters.append(-x)
    return Word(tuple(letters), rank + m - 1)
