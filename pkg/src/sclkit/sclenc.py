"""Encoding of scl as an exact linear program over surface pieces.

A homologically trivial chain with positive integer coefficients is cut
into letter slots (one per letter of each cyclic word) and corner slots
(the gap after each letter).  Admissible surfaces decompose into
rectangles, which pair a letter slot with an inverse-letter slot, and
polygonal pieces at the wedge point whose sides are either rectangle
sides or dummy diagonals (ordered corner pairs).  Weighting rectangles
and pieces nonnegatively and matching sides exactly yields a finite LP
whose optimum equals 2*scl(chain); optimal vertices decode to explicit
surface certificates.
"""

from dataclasses import dataclass

from .errors import InvariantViolationError, ResourceLimitError
from .freegroup import (Chain, ChainTerm, Word, canonicalize, chains_equal,
                        invert, is_cyclically_reduced, require_boundary,
                        scale_chain)
from .rational import QQ, ZERO, denominator_lcm, qq
from .ratlp import LinearProgram, solve_min, verify


@dataclass(frozen=True, order=True)
class LetterSlot:
    term: int
    pos: int


@dataclass(frozen=True, order=True)
class CornerSlot:
    term: int
    gap: int  # the gap following letter position `gap` (cyclic)


@dataclass(frozen=True, order=True)
class RealSide:
    """One of the two wedge-point sides of a rectangle (which is 1 or 2)."""

    rect: int
    which: int


@dataclass(frozen=True, order=True)
class DummySide:
    """A gluing diagonal between two corner slots (ordered)."""

    start: CornerSlot
    end: CornerSlot


@dataclass(frozen=True)
class RectangleVar:
    """Pairs slots p, q carrying exactly inverse letters.

    Side 1 runs from the corner after p to the corner before q; side 2
    from the corner after q to the corner before p.
    """

    p: LetterSlot
    q: LetterSlot
    s1: tuple  # (start CornerSlot, end CornerSlot)
    s2: tuple


@dataclass(frozen=True)
class PieceVar:
    kind: str  # "bigon" or "triangle"
    sides: tuple  # cyclic, canonical rotation; RealSide or DummySide entries

    def real_count(self):
        return sum(1 for s in self.sides if isinstance(s, RealSide))

    def dummy_count(self):
        return sum(1 for s in self.sides if isinstance(s, DummySide))


@dataclass(frozen=True)
class Encoding:
    chain: Chain  # prepared: cyclic words, positive integer coefficients
    scale: object  # rational multiplier that made the input integral
    slots: tuple
    rectangles: tuple
    pieces: tuple
    dummy_types: tuple  # ordered corner pairs appearing in pieces
    lp: LinearProgram
    row_meta: tuple  # ("cover", slot) / ("side", rect, which) / ("dummy", d)


def prepare(chain):
    """Integerize and orient a chain for encoding; returns (chain, scale).

    Clears denominators (scale = lcm of them), drops terms that die in
    the normal form (identity words), replaces negative-coefficient terms
    by their inverse words, and cyclically reduces every word.  Raises
    NotBoundaryError if the chain is not homologically trivial.
    """
    require_boundary(chain)
    scale = denominator_lcm(t.coefficient for t in chain.terms)
    terms = []
    for t in chain.terms:
        c = t.coefficient * scale
        if c == 0:
            continue
        from .freegroup import cyclic_reduce
        w, _ = cyclic_reduce(t.word)
        if len(w) == 0:
            continue
        if c < 0:
            c, w = -c, invert(w)
        terms.append(ChainTerm(c, w))
    return Chain(tuple(terms), chain.rank), qq(scale)


def _letter(chain, slot):
    return chain.terms[slot.term].word.letters[slot.pos]


def _slots(chain):
    out = []
    for i, t in enumerate(chain.terms):
        for j in range(len(t.word)):
            out.append(LetterSlot(i, j))
    return out


def _corner_after(chain, slot):
    return CornerSlot(slot.term, slot.pos)


def _corner_before(chain, slot):
    n = len(chain.terms[slot.term].word)
    return CornerSlot(slot.term, (slot.pos - 1) % n)


def _check_cyclic_words(chain):
    for t in chain.terms:
        if len(t.word) == 0 or not is_cyclically_reduced(t.word):
            raise ValueError(
                "encoding requires nonempty cyclically reduced words; got %r"
                % str(t.word))


def enumerate_rectangles(chain):
    """All unordered slot pairs with exactly inverse letters."""
    _check_cyclic_words(chain)
    slots = _slots(chain)
    rects = []
    for a in range(len(slots)):
        for b in range(a + 1, len(slots)):
            p, q = slots[a], slots[b]
            if _letter(chain, p) == -_letter(chain, q):
                s1 = (_corner_after(chain, p), _corner_before(chain, q))
                s2 = (_corner_after(chain, q), _corner_before(chain, p))
                rects.append(RectangleVar(p, q, s1, s2))
    return tuple(rects)


def _side_key(side):
    if isinstance(side, RealSide):
        return (0, side.rect, side.which)
    return (1, side.start, side.end)


def _piece_key(piece):
    return (len(piece.sides), tuple(_side_key(s) for s in piece.sides))


def _rotate_min_first(sides):
    best = None
    for i in range(len(sides)):
        rot = sides[i:] + sides[:i]
        key = tuple(_side_key(s) for s in rot)
        if best is None or key < best[0]:
            best = (key, rot)
    return best[1]


def enumerate_pieces(chain, rectangles=None):
    """All corner-compatible bigons (two rectangle sides) and triangles
    (at least one rectangle side, dummy diagonals for the rest)."""
    _check_cyclic_words(chain)
    if rectangles is None:
        rectangles = enumerate_rectangles(chain)
    # real side table: (RealSide, start, end)
    sides = []
    for ri, rect in enumerate(rectangles):
        sides.append((RealSide(ri, 1), rect.s1[0], rect.s1[1]))
        sides.append((RealSide(ri, 2), rect.s2[0], rect.s2[1]))
    corners = sorted({_corner_after(chain, s) for s in _slots(chain)})
    starts = {}
    for entry in sides:
        starts.setdefault(entry[1], []).append(entry)
    pieces = []
    for s1, a1, b1 in sides:
        # bigons and 2-real triangles: second side continues from b1
        for s2, a2, b2 in starts.get(b1, ()):
            if s2 == s1:
                continue  # needs b1 == a1, impossible for cyclic words
            if b2 == a1 and _side_key(s1) < _side_key(s2):
                pieces.append(PieceVar("bigon", _rotate_min_first((s1, s2))))
            pieces.append(PieceVar(
                "triangle", _rotate_min_first((s1, s2, DummySide(b2, a1)))))
            # 3-real triangles, s1 strictly minimal to dedupe rotations
            if _side_key(s2) > _side_key(s1):
                for s3, a3, b3 in starts.get(b2, ()):
                    if b3 == a1 and _side_key(s3) > _side_key(s1):
                        pieces.append(PieceVar(
                            "triangle", _rotate_min_first((s1, s2, s3))))
        # 1-real triangles: both other sides are dummies through corner x
        for x in corners:
            pieces.append(PieceVar(
                "triangle",
                _rotate_min_first((s1, DummySide(b1, x), DummySide(x, a1)))))
    pieces.sort(key=_piece_key)
    return tuple(pieces)


def _dummy_reverse(d):
    return DummySide(d.end, d.start)


def build_lp(chain, max_letters=24):
    """Assemble the full encoding of a homologically trivial chain.

    The chain is prepared first (integer positive coefficients); the LP
    minimizes  sum(r) + sum(dummy_count/2 - 1, weighted)  which equals
    -chi of the assembled surface at degree one.
    """
    prepared, scale = prepare(chain)
    total_letters = sum(len(t.word) for t in prepared.terms)
    if total_letters > max_letters:
        raise ResourceLimitError(
            "chain has %d letters, cap is %d" % (total_letters, max_letters))
    rectangles = enumerate_rectangles(prepared)
    pieces = enumerate_pieces(prepared, rectangles)
    slots = _slots(prepared)
    ncols = len(rectangles) + len(pieces)

    dummy_types = sorted(
        {s for p in pieces for s in p.sides if isinstance(s, DummySide)},
        key=_side_key)
    dummy_set = set(dummy_types)
    for d in dummy_types:
        if _dummy_reverse(d) not in dummy_set:
            raise InvariantViolationError(
                "dummy type %r lacks its reverse" % (d,))

    rows = []
    rhs = []
    meta = []
    # coverage: per letter slot, incident rectangle weights sum to the
    # term coefficient
    for slot in slots:
        entries = {}
        for ri, rect in enumerate(rectangles):
            if rect.p == slot or rect.q == slot:
                entries[ri] = qq(1)
        rows.append(entries)
        rhs.append(qq(prepared.terms[slot.term].coefficient))
        meta.append(("cover", slot))
    # side matching: rectangle weight equals total piece usage of the side
    usage = []  # per piece: dict side -> multiplicity
    for p in pieces:
        u = {}
        for s in p.sides:
            u[s] = u.get(s, 0) + 1
        usage.append(u)
    for ri in range(len(rectangles)):
        for which in (1, 2):
            side = RealSide(ri, which)
            entries = {ri: qq(1)}
            for pi, u in enumerate(usage):
                if side in u:
                    entries[len(rectangles) + pi] = qq(-u[side])
            rows.append(entries)
            rhs.append(ZERO)
            meta.append(("side", ri, which))
    # dummy matching: usage of each ordered pair equals usage of its
    # reverse (loops are self-paired and give no constraint)
    for d in dummy_types:
        r = _dummy_reverse(d)
        if not _side_key(d) < _side_key(r):
            continue
        entries = {}
        for pi, u in enumerate(usage):
            net = u.get(d, 0) - u.get(r, 0)
            if net != 0:
                entries[len(rectangles) + pi] = qq(net)
        rows.append(entries)
        rhs.append(ZERO)
        meta.append(("dummy", d))

    objective = [qq(1)] * len(rectangles)
    for p in pieces:
        objective.append(qq(p.dummy_count() - 2, 2))

    lp = LinearProgram(
        ncols,
        tuple(tuple(sorted(e.items())) for e in rows),
        tuple(rhs),
        tuple(objective))
    return Encoding(prepared, scale, tuple(slots), rectangles, pieces,
                    tuple(dummy_types), lp, tuple(meta))


_scl_cache = {}


def solve_chain(chain, max_letters=24, max_pivots=10 ** 6):
    """Canonicalize, encode, solve, and verify; returns (encoding, result).

    The LP optimum is result.value; scl is result.value / (2 * scale).
    Returns (None, None) for chains that canonicalize to zero.
    """
    cchain = canonicalize(chain)
    require_boundary(cchain)
    if cchain.is_empty():
        return None, None
    enc = build_lp(cchain, max_letters=max_letters)
    result = solve_min(enc.lp, max_pivots=max_pivots)
    if result.status != "optimal":
        raise InvariantViolationError(
            "scl encoding must be feasible and bounded, got %s" % result.status)
    if not verify(enc.lp, result):
        raise InvariantViolationError("LP duality certificate failed")
    if result.value < 0:
        raise InvariantViolationError("scl encoding produced a negative optimum")
    return enc, result


def scl(chain, max_letters=24, max_pivots=10 ** 6):
    """Exact stable commutator length of a homologically trivial chain."""
    key = canonicalize(chain)
    require_boundary(key)
    cached = _scl_cache.get(key)
    if cached is not None:
        return cached
    enc, result = solve_chain(key, max_letters=max_letters,
                              max_pivots=max_pivots)
    if enc is None:
        value = ZERO
    else:
        value = result.value / (2 * enc.scale)
    _scl_cache[key] = value
    return value


# ---------------------------------------------------------------------------
# decoding optimal vertices into surface certificates

def decode_certificate(encoding, result):
    """Assemble an optimal LP vertex into an explicit surface.

    The vertex is scaled by the lcm N of its denominators (doubled if a
    self-reverse dummy type has odd integer usage) to integer piece and
    rectangle counts, dummy sides are paired off deterministically, and
    pieces merge along them into polygons.  The certificate's Euler
    characteristic is recomputed by independent cell counting and its
    boundary is traced and compared against N times the encoded chain;
    any disagreement raises InvariantViolationError.
    """
    rect_w = result.primal[:len(encoding.rectangles)]
    piece_w = result.primal[len(encoding.rectangles):]
    n = denominator_lcm(list(rect_w) + list(piece_w))
    # parity fix: a self-reverse dummy type needs even total usage
    for d in encoding.dummy_types:
        if d.start == d.end:
            total = sum(p.sides.count(d) * piece_w[pi] * n
                        for pi, p in enumerate(encoding.pieces))
            if total % 2 != 0:
                n *= 2
                break
    rect_counts = [int(w * n) for w in rect_w]
    piece_counts = [int(w * n) for w in piece_w]
    if any(w * n != c for w, c in zip(rect_w, rect_counts)):
        raise InvariantViolationError("vertex scaling failed")

    # positions: (piece index, copy, side position)
    dummy_positions = {}
    for pi, piece in enumerate(encoding.pieces):
        if piece_counts[pi] == 0:
            continue
        for copy in range(piece_counts[pi]):
            for j, s in enumerate(piece.sides):
                if isinstance(s, DummySide):
                    dummy_positions.setdefault(s, []).append((pi, copy, j))
    partner = {}
    for d, positions in sorted(dummy_positions.items(), key=lambda kv: _side_key(kv[0])):
        r = _dummy_reverse(d)
        if d.start == d.end:
            if len(positions) % 2 != 0:
                raise InvariantViolationError("odd self-reverse dummy usage")
            for k in range(0, len(positions), 2):
                partner[positions[k]] = positions[k + 1]
                partner[positions[k + 1]] = positions[k]
        elif _side_key(d) < _side_key(r):
            other = dummy_positions.get(r, [])
            if len(other) != len(positions):
                raise InvariantViolationError("unbalanced dummy usage")
            for mine, theirs in zip(positions, other):
                partner[mine] = theirs
                partner[theirs] = mine

    # merge piece instances into polygons: cycles of real side instances
    polygons = []  # list of lists of (pi, copy, j)
    position_polygon = {}  # real position -> (polygon index, index in cycle)
    seen = set()
    for pi, piece in enumerate(encoding.pieces):
        for copy in range(piece_counts[pi]):
            for j, s in enumerate(piece.sides):
                if isinstance(s, DummySide) or (pi, copy, j) in seen:
                    continue
                cycle = []
                cur = (pi, copy, j)
                guard = 0
                while True:
                    guard += 1
                    if guard > 10 ** 7:
                        raise InvariantViolationError("polygon walk diverged")
                    cpi, ccopy, cj = cur
                    side = encoding.pieces[cpi].sides[cj]
                    if isinstance(side, RealSide):
                        if cur in seen:
                            break
                        seen.add(cur)
                        cycle.append(cur)
                        cur = (cpi, ccopy, (cj + 1) % len(encoding.pieces[cpi].sides))
                    else:
                        ppi, pcopy, pj = partner[cur]
                        cur = (ppi, pcopy,
                               (pj + 1) % len(encoding.pieces[ppi].sides))
                if cycle:
                    idx = len(polygons)
                    polygons.append(cycle)
                    for k, pos in enumerate(cycle):
                        position_polygon[pos] = (idx, k)

    # glue real side instances to rectangle side instances: the k-th
    # instance of side (rect, which) in canonical position order is the
    # k-th copy of that rectangle
    side_instances = {}
    for idx, cycle in enumerate(polygons):
        for k, pos in enumerate(cycle):
            side = encoding.pieces[pos[0]].sides[pos[2]]
            side_instances.setdefault(side, []).append(pos)
    for side, positions in side_instances.items():
        positions.sort()
        if len(positions) != rect_counts[side.rect]:
            raise InvariantViolationError(
                "side usage does not match rectangle count")
    rect_side_positions = {}  # (rect, which, copy) -> position
    position_rect = {}  # position -> (rect, which, copy)
    for side, positions in side_instances.items():
        for copy, pos in enumerate(positions):
            rect_side_positions[(side.rect, side.which, copy)] = pos
            position_rect[pos] = (side.rect, side.which, copy)

    # trace the boundary: after the letter arc of rectangle copy (ri, c)
    # in role p (side 1 starts at the corner after p), the next letter
    # arc is found on the polygon-predecessor of the glued side instance
    def successor(ri, role, copy):
        which = 1 if role == "p" else 2
        pos = rect_side_positions[(ri, which, copy)]
        poly, k = position_polygon[pos]
        prev = polygons[poly][(k - 1) % len(polygons[poly])]
        ri2, which2, copy2 = position_rect[prev]
        return (ri2, "q" if which2 == 1 else "p", copy2)

    arcs = set()
    for ri in range(len(encoding.rectangles)):
        for copy in range(rect_counts[ri]):
            arcs.add((ri, "p", copy))
            arcs.add((ri, "q", copy))
    boundary_words = []
    remaining = set(arcs)
    while remaining:
        start = min(remaining)
        letters = []
        terms = []
        cur = start
        while True:
            ri, role, copy = cur
            rect = encoding.rectangles[ri]
            slot = rect.p if role == "p" else rect.q
            letters.append(_letter(encoding.chain, slot))
            terms.append(slot.term)
            remaining.discard(cur)
            cur = successor(*cur)
            if cur == start:
                break
        if len(set(terms)) != 1:
            raise InvariantViolationError("boundary circle mixes chain terms")
        word_len = len(encoding.chain.terms[terms[0]].word)
        if len(letters) % word_len != 0:
            raise InvariantViolationError("boundary circle length mismatch")
        boundary_words.append(Word(tuple(letters), encoding.chain.rank))

    boundary = Chain(tuple(ChainTerm(qq(1), w) for w in boundary_words),
                     encoding.chain.rank)
    target = scale_chain(encoding.chain, n)
    if not chains_equal(boundary, target):
        raise InvariantViolationError(
            "decoded boundary does not match %d times the encoded chain" % n)

    # independent Euler characteristic by cell counting:
    # chi = V - E + F with F = rects + pieces, E = 4*rects + dummy pairs
    # (two letter arcs and two glued vertical sides per rectangle), and
    # V counted by union-find over all corner instances
    uf = {}

    def find(x):
        root = x
        while uf.get(root, root) != root:
            root = uf[root]
        while uf.get(x, x) != x:
            uf[x], x = root, uf[x]
        return root

    def union(x, y):
        uf.setdefault(x, x)
        uf.setdefault(y, y)
        uf[find(x)] = find(y)

    # vertices: rectangle copy corners ("r", ri, copy, 1..4) where
    # 1 = after-p, 2 = before-q, 3 = after-q, 4 = before-p; piece corner
    # instances ("c", pi, copy, j) = corner at the END of side j
    total_rects = 0
    for ri in range(len(encoding.rectangles)):
        for copy in range(rect_counts[ri]):
            total_rects += 1
            for corner in (1, 2, 3, 4):
                uf.setdefault(("r", ri, copy, corner), ("r", ri, copy, corner))
    total_pieces = 0
    for pi, piece in enumerate(encoding.pieces):
        for copy in range(piece_counts[pi]):
            total_pieces += 1
            for j in range(len(piece.sides)):
                uf.setdefault(("c", pi, copy, j), ("c", pi, copy, j))
    # real gluings: side start corner ~ piece corner before j, side end
    # corner ~ piece corner at j
    for (ri, which, copy), (pi, pcopy, j) in rect_side_positions.items():
        nsides = len(encoding.pieces[pi].sides)
        start_corner = ("c", pi, pcopy, (j - 1) % nsides)
        end_corner = ("c", pi, pcopy, j)
        if which == 1:
            union(("r", ri, copy, 1), start_corner)
            union(("r", ri, copy, 2), end_corner)
        else:
            union(("r", ri, copy, 3), start_corner)
            union(("r", ri, copy, 4), end_corner)
    # dummy gluings are orientation reversing: start ~ partner end
    dummy_pairs = 0
    for pos, other in partner.items():
        if pos < other:
            dummy_pairs += 1
        pi, copy, j = pos
        qi, qcopy, qj = other
        ns_p = len(encoding.pieces[pi].sides)
        ns_q = len(encoding.pieces[qi].sides)
        union(("c", pi, copy, (j - 1) % ns_p), ("c", qi, qcopy, qj))
        union(("c", pi, copy, j), ("c", qi, qcopy, (qj - 1) % ns_q))
    vertices = len({find(x) for x in list(uf)})
    chi_cells = vertices - (4 * total_rects + dummy_pairs) + (total_rects + total_pieces)
    chi_formula = -(total_rects + dummy_pairs - total_pieces)
    if chi_cells != chi_formula:
        raise InvariantViolationError(
            "cell count chi %d disagrees with formula chi %d"
            % (chi_cells, chi_formula))
    if -qq(chi_formula) != qq(n) * result.value:
        raise InvariantViolationError("chi does not match the LP optimum")
    from . import surfcert
    return surfcert.SurfaceCertificate(
        chi=chi_formula, degree=n, boundary=canonicalize(boundary),
        provenance="lp-decode")
