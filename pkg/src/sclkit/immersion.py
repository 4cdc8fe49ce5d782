"""Immersion criterion on the once-punctured torus: scl(C) = rot(C)/2.

A homologically trivial rank-2 chain rationally bounds a positive immersed
subsurface of the once-punctured torus exactly when its stable commutator
length equals half its rotation number.  Both sides are exact rationals,
so the test is exact equality, never a tolerance.  Besides the pointwise
test this module provides the stabilization search (add R copies of the
boundary class abAB until equality holds), a scanner for the one-parameter
family w (abAB)^n, and the rank-3 insertion check comparing
scl((abAB)^n c w c^-1) with (|n + rot(w)| + 1)/2.
"""

from dataclasses import dataclass

from . import rotation, sclenc
from .errors import InvariantViolationError, NotBoundaryError, RankMismatchError
from .freegroup import (Chain, ChainTerm, add_chains, canonicalize, concat,
                        invert, invert_chain, make_word, require_boundary,
                        scale_chain, single_chain, with_rank, word,
                        word_exponents, word_power)
from .rational import QQ, qq

# boundary class of the once-punctured torus; all stabilization is by
# integer multiples of this chain
BOUNDARY_CLASS = word("abAB")


@dataclass(frozen=True)
class CriterionReport:
    """Exact scl and rot of one chain plus the equality verdict."""

    chain: Chain
    scl: QQ
    rot: QQ
    bounds_immersed: bool

    @property
    def on_face(self):
        # same predicate, projective reading: the chain's class lies on the
        # face of the scl unit ball dual to the rotation quasimorphism
        return self.bounds_immersed


@dataclass(frozen=True)
class StabilizationReport:
    """Criterion table for C + R * abAB over R = 0..rmax."""

    base: Chain
    boundary: Chain
    table: tuple  # table[R] is the CriterionReport at that R
    minimal_r: object  # least R with equality, or None if none in range


@dataclass(frozen=True)
class ScanReport:
    """Criterion table for the family w (abAB)^n over a range of n."""

    w: object
    entries: tuple  # pairs (n, CriterionReport)
    first_equality: object  # least scanned n with equality, or None
    persistent: bool  # equality held at every scanned n past the first


def _as_rank2(chain):
    if chain.rank > 2:
        raise RankMismatchError(
            "the immersion criterion lives on the once-punctured torus: "
            "rank must be at most 2, got %d" % chain.rank)
    if chain.rank == 2:
        return chain
    terms = tuple(ChainTerm(t.coefficient, with_rank(t.word, 2))
                  for t in chain.terms)
    return Chain(terms, 2)


def _commutator_word(w):
    if w.rank > 2:
        raise RankMismatchError("w must be a rank-2 word, got rank %d" % w.rank)
    w = with_rank(w, 2)
    if len(w) == 0:
        raise ValueError("w must be a nontrivial element")
    if any(e != 0 for e in word_exponents(w)):
        raise NotBoundaryError("w must lie in the commutator subgroup")
    return w


def bounds_immersed(chain, max_letters=24, max_pivots=10 ** 6):
    """Exact test of scl(C) = rot(C)/2 for a homologically trivial chain.

    Signed equality: a chain with rot < 0 fails here and its orientation
    reversal is the one to test (see orientation_pair).
    """
    canon = canonicalize(_as_rank2(chain))
    require_boundary(canon)
    s = sclenc.scl(canon, max_letters=max_letters, max_pivots=max_pivots)
    r = qq(rotation.rot(canon))
    if 2 * s < abs(r):
        raise InvariantViolationError(
            "scl = %s below the rotation bound %s/2" % (s, r))
    return CriterionReport(canon, s, r, 2 * s == r)


def orientation_pair(chain, max_letters=24, max_pivots=10 ** 6):
    """Criterion reports for the chain and its orientation reversal.

    Inverting every word negates rot and preserves scl, so exactly one
    orientation can satisfy the signed equality when rot is nonzero.
    """
    plus = bounds_immersed(chain, max_letters, max_pivots)
    minus = bounds_immersed(invert_chain(chain), max_letters, max_pivots)
    return plus, minus


def minimal_stabilization(chain, rmax, max_letters=24, max_pivots=10 ** 6):
    """Criterion table for C + R * abAB, R = 0..rmax, and the least good R.

    Once the equality holds at some R it must hold at every larger R
    (adding abAB adds 1/2 to scl and 1/2 to rot/2 of an equality chain),
    so a true row followed by a false row is a hard failure.
    """
    if rmax < 0:
        raise ValueError("rmax must be nonnegative, got %d" % rmax)
    base = canonicalize(_as_rank2(chain))
    require_boundary(base)
    boundary = single_chain(BOUNDARY_CLASS)
    table = []
    minimal = None
    for r in range(rmax + 1):
        stabilized = add_chains(base, scale_chain(boundary, r))
        report = bounds_immersed(stabilized, max_letters, max_pivots)
        table.append(report)
        if report.bounds_immersed:
            if minimal is None:
                minimal = r
        elif minimal is not None:
            raise InvariantViolationError(
                "equality at R = %d did not persist at R = %d" % (minimal, r))
    return StabilizationReport(base, boundary, tuple(table), minimal)


def scan_conjecture(w, n_values, max_letters=24, max_pivots=10 ** 6):
    """Criterion table for the single-word family w (abAB)^n.

    w must be a nontrivial rank-2 word in the commutator subgroup.  The
    scan records where the equality starts and whether it persists; no
    outcome is asserted (unlike stabilization, persistence here is only
    conjectured).
    """
    w = _commutator_word(w)
    entries = []
    first = None
    persistent = True
    for n in n_values:
        wn = concat(w, word_power(BOUNDARY_CLASS, n))
        report = bounds_immersed(single_chain(wn), max_letters, max_pivots)
        entries.append((n, report))
        if report.bounds_immersed:
            if first is None:
                first = n
        elif first is not None:
            persistent = False
    return ScanReport(w, tuple(entries), first,
                      persistent if first is not None else False)


def corollary_check(w, n, max_letters=24, max_pivots=10 ** 6):
    """Compare scl((abAB)^n c w c^-1) in rank 3 with (|n + rot(w)| + 1)/2.

    Returns (lhs, rhs, equal).  The identity is proved only for |n| large
    relative to w, so equality is informational, not an invariant.
    """
    w = _commutator_word(w)
    c = make_word((3,), 3)
    inserted = concat(with_rank(word_power(BOUNDARY_CLASS, n), 3),
                      c, with_rank(w, 3), invert(c))
    lhs = sclenc.scl(single_chain(inserted),
                     max_letters=max_letters, max_pivots=max_pivots)
    r = rotation.rot(single_chain(w))
    rhs = qq(abs(n + r) + 1, 2)
    return lhs, rhs, lhs == rhs
