"""Genus-g surface maps into finite groups.

A homomorphism from the group <x_1..x_g, y_1..y_g | prod [x_i, y_i] = 1> to a
finite group is just the 2g images, provided the single relation holds; this
module evaluates words in the generators, selects repeated image pairs, and
rewrites the generating tuple by the conjugation moves used when pulling a
pair to the front of the relation.

Conventions: [a, b] = a^-1 b^-1 a b, products evaluated left to right, and
generator positions are 1-based throughout the public API.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    GenusTooSmall,
    IndexOutOfRange,
    NoRepeatedPair,
    PositionOutOfRange,
    RelationViolated,
)
from .groups import FiniteGroup, GroupHom, SubgroupHandle, subgroup_closure


# --- words in the generators --------------------------------------------------

Factor = tuple[str, int, int]  # (kind 'x' or 'y', 1-based index, nonzero exponent)

_FACTOR_RE = re.compile(r"^([xy])(\d+)(?:\^(-?\d+))?$")


def _normalize(factors: Iterable[Factor]) -> tuple[Factor, ...]:
    # merge adjacent factors on the same symbol, drop zero exponents;
    # no free reduction beyond that
    out: list[Factor] = []
    for kind, idx, exp in factors:
        if exp == 0:
            continue
        if out and out[-1][0] == kind and out[-1][1] == idx:
            merged = out[-1][2] + exp
            out.pop()
            if merged != 0:
                out.append((kind, idx, merged))
        else:
            out.append((kind, idx, exp))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A word in the surface generators, as (symbol, exponent) factors."""

    factors: tuple[Factor, ...] = ()

    def __mul__(self, other: "Word") -> "Word":
        return Word(_normalize(self.factors + other.factors))

    def inverse(self) -> "Word":
        return Word(tuple((k, i, -e) for k, i, e in reversed(self.factors)))

    def conjugated_by(self, c: "Word") -> "Word":
        return c.inverse() * self * c

    def max_index(self) -> int:
        return max((i for _, i, _ in self.factors), default=0)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        parts = []
        for kind, idx, exp in self.factors:
            parts.append(f"{kind}{idx}" if exp == 1 else f"{kind}{idx}^{exp}")
        return " ".join(parts)


def word_x(i: int, exp: int = 1) -> Word:
    return Word(_normalize([("x", i, exp)]))


def word_y(i: int, exp: int = 1) -> Word:
    return Word(_normalize([("y", i, exp)]))


def commutator_word(a: Word, b: Word) -> Word:
    return a.inverse() * b.inverse() * a * b


def parse_word(text: str) -> Word:
    """Parse "x1^-1 x14 y2^3" (whitespace-separated factors; "1" is empty)."""
    text = text.strip()
    if text in ("", "1"):
        return Word()
    factors = []
    for token in text.split():
        m = _FACTOR_RE.match(token)
        if not m:
            raise ValueError(f"bad word factor {token!r}")
        kind, idx, exp = m.group(1), int(m.group(2)), m.group(3)
        if idx < 1:
            raise ValueError(f"generator index must be >= 1 in {token!r}")
        factors.append((kind, idx, 1 if exp is None else int(exp)))
    return Word(_normalize(factors))


def expand_word(
    word: Word, x_words: Sequence[Word], y_words: Sequence[Word]
) -> Word:
    """Substitute each generator by its defining word (both lists 1-based
    via position: x_words[i-1] stands for x_i)."""
    out = Word()
    for kind, idx, exp in word.factors:
        base = x_words[idx - 1] if kind == "x" else y_words[idx - 1]
        piece = base if exp > 0 else base.inverse()
        for _ in range(abs(exp)):
            out = out * piece
    return out


def identity_basis_words(genus: int) -> tuple[tuple[Word, ...], tuple[Word, ...]]:
    return (
        tuple(word_x(i) for i in range(1, genus + 1)),
        tuple(word_y(i) for i in range(1, genus + 1)),
    )


# --- surface tuples ------------------------------------------------------------

@dataclass(frozen=True)
class SurfaceTuple:
    """Images of a genus-g surface basis in a finite group.

    Built through make_surface_tuple, which checks the defining relation.
    """

    target: FiniteGroup
    genus: int
    ximg: tuple[int, ...]
    yimg: tuple[int, ...]

    def x(self, i: int) -> int:
        if not 1 <= i <= self.genus:
            raise IndexOutOfRange(i, self.genus)
        return self.ximg[i - 1]

    def y(self, i: int) -> int:
        if not 1 <= i <= self.genus:
            raise IndexOutOfRange(i, self.genus)
        return self.yimg[i - 1]


def relation_value(
    target: FiniteGroup, ximg: Sequence[int], yimg: Sequence[int]
) -> int:
    acc = target.identity
    for a, b in zip(ximg, yimg):
        acc = target.mul[acc][target.commutator(a, b)]
    return acc


def make_surface_tuple(
    target: FiniteGroup, ximg: Sequence[int], yimg: Sequence[int]
) -> SurfaceTuple:
    g = len(ximg)
    if g < 1 or len(yimg) != g:
        raise ValueError("need equal-length nonempty image lists")
    for a in (*ximg, *yimg):
        if not 0 <= a < target.order:
            raise ValueError(f"image {a} out of range for order {target.order}")
    value = relation_value(target, ximg, yimg)
    if value != target.identity:
        raise RelationViolated(value)
    return SurfaceTuple(target, g, tuple(ximg), tuple(yimg))


def evaluate_word(t: SurfaceTuple, word: Word) -> int:
    acc = t.target.identity
    for kind, idx, exp in word.factors:
        if not 1 <= idx <= t.genus:
            raise IndexOutOfRange(idx, t.genus)
        base = t.ximg[idx - 1] if kind == "x" else t.yimg[idx - 1]
        acc = t.target.mul[acc][t.target.power(base, exp)]
    return acc


def tuple_image(t: SurfaceTuple) -> SubgroupHandle:
    return subgroup_closure(t.target, [*t.ximg, *t.yimg])


def map_tuple(hom: GroupHom, t: SurfaceTuple) -> SurfaceTuple:
    """Push a surface tuple through a homomorphism."""
    if hom.domain != t.target:
        raise ValueError("homomorphism domain does not match tuple target")
    return make_surface_tuple(
        hom.codomain,
        [hom.map[a] for a in t.ximg],
        [hom.map[a] for a in t.yimg],
    )


def pigeonhole_select(
    pairs: Sequence[tuple[int, int]], multiplicity: int
) -> list[int]:
    """First positions (1-based) of the lexicographically smallest value pair
    attaining the requested multiplicity."""
    if multiplicity < 1:
        raise ValueError("multiplicity must be positive")
    counts: dict[tuple[int, int], list[int]] = {}
    for pos, pair in enumerate(pairs, start=1):
        counts.setdefault(tuple(pair), []).append(pos)
    winners = sorted(p for p, ps in counts.items() if len(ps) >= multiplicity)
    if not winners:
        raise NoRepeatedPair(multiplicity)
    return counts[winners[0]][:multiplicity]


def open_subgroup_genus(g: int, index: int) -> int:
    """Genus of an index-`index` open subgroup of a genus-g surface group."""
    if g < 2:
        raise GenusTooSmall(2, g)
    if index < 1:
        raise ValueError("index must be positive")
    return index * (g - 1) + 1


# --- basis rewriting ------------------------------------------------------------

@dataclass(frozen=True)
class BasisSlot:
    xword: Word
    yword: Word
    # per tracked channel: (image of x, image of y)
    images: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class BasisState:
    """A surface basis tracked through conjugation moves.

    Each slot stores its defining words in the original basis together with
    its current images under every tracked channel; the originals are kept
    so the words can be re-evaluated at any point.
    """

    genus: int
    originals: tuple[SurfaceTuple, ...]
    slots: tuple[BasisSlot, ...]

    def channel_tuple(self, channel: int) -> SurfaceTuple:
        target = self.originals[channel].target
        return make_surface_tuple(
            target,
            [slot.images[channel][0] for slot in self.slots],
            [slot.images[channel][1] for slot in self.slots],
        )

    def x_words(self) -> tuple[Word, ...]:
        return tuple(slot.xword for slot in self.slots)

    def y_words(self) -> tuple[Word, ...]:
        return tuple(slot.yword for slot in self.slots)


def initial_basis_state(channels: Sequence[SurfaceTuple]) -> BasisState:
    if not channels:
        raise ValueError("need at least one channel")
    g = channels[0].genus
    if any(c.genus != g for c in channels):
        raise ValueError("all channels must share the same genus")
    slots = tuple(
        BasisSlot(
            word_x(i),
            word_y(i),
            tuple((c.ximg[i - 1], c.yimg[i - 1]) for c in channels),
        )
        for i in range(1, g + 1)
    )
    return BasisState(g, tuple(channels), slots)


def move_pair_to_front(state: BasisState, src: int, dst: int) -> BasisState:
    """Move the basis pair at position src to position dst <= src.

    Positions strictly between dst and src shift one step back and get
    conjugated by c = [x_src, y_src] (per channel by the channel's value of
    c, and symbolically on the defining words); everything else is
    untouched.  The rotation identity P*Q = Q*P^Q keeps every channel's
    surface relation intact, and conjugation preserves image closures.
    """
    if not 1 <= dst <= src <= state.genus:
        raise PositionOutOfRange(src, dst, state.genus)
    if src == dst:
        return state
    slots = list(state.slots)
    moved = slots[src - 1]
    cword = commutator_word(moved.xword, moved.yword)
    cvals = tuple(
        state.originals[ch].target.commutator(*moved.images[ch])
        for ch in range(len(state.originals))
    )
    shifted = []
    for slot in slots[dst - 1 : src - 1]:
        images = tuple(
            (
                state.originals[ch].target.conjugate(slot.images[ch][0], cvals[ch]),
                state.originals[ch].target.conjugate(slot.images[ch][1], cvals[ch]),
            )
            for ch in range(len(state.originals))
        )
        shifted.append(
            BasisSlot(
                slot.xword.conjugated_by(cword),
                slot.yword.conjugated_by(cword),
                images,
            )
        )
    new_slots = slots[: dst - 1] + [moved] + shifted + slots[src:]
    return BasisState(state.genus, state.originals, tuple(new_slots))


def normalize_to_front(state: BasisState, positions: Sequence[int]) -> BasisState:
    """Move the given (strictly increasing) positions to the leading slots.

    Equivalent to move_pair_to_front(state, j_t, t) for t = 1..m in ascending
    order, where every later source is still at its starting position and
    already-placed slots are never conjugated again.  Computed in one pass:
    the slot at a non-selected position p picks up exactly the conjugators
    c_t of the moves whose source lies beyond p, in ascending order, so its
    total conjugator is the suffix product c_{a+1} c_{a+2} ... c_m with a the
    number of selected positions below p.
    """
    pos_list = list(positions)
    if pos_list != sorted(set(pos_list)):
        raise ValueError("positions must be strictly increasing")
    if not pos_list:
        return state
    if pos_list[-1] > state.genus or pos_list[0] < 1:
        raise PositionOutOfRange(pos_list[-1], pos_list[0], state.genus)
    m = len(pos_list)
    nch = len(state.originals)
    targets = [t.target for t in state.originals]
    slots = state.slots

    cwords = []
    cvals = []
    for j in pos_list:
        slot = slots[j - 1]
        cwords.append(commutator_word(slot.xword, slot.yword))
        cvals.append(
            tuple(targets[ch].commutator(*slot.images[ch]) for ch in range(nch))
        )

    # suffix products: suffix[t] = c_{t+1} * ... * c_m (words and, per
    # channel, group values); suffix[m] is empty
    suffix_words = [Word()] * (m + 1)
    suffix_vals = [tuple(g.identity for g in targets)] * (m + 1)
    for t in range(m - 1, -1, -1):
        suffix_words[t] = cwords[t] * suffix_words[t + 1]
        suffix_vals[t] = tuple(
            targets[ch].mul[cvals[t][ch]][suffix_vals[t + 1][ch]]
            for ch in range(nch)
        )

    selected = set(pos_list)
    front = [slots[j - 1] for j in pos_list]
    back = []
    a = 0  # selected positions seen so far
    for p in range(1, state.genus + 1):
        if p in selected:
            a += 1
            continue
        slot = slots[p - 1]
        if a == m:
            back.append(slot)
            continue
        w = suffix_words[a]
        vals = suffix_vals[a]
        images = tuple(
            (
                targets[ch].conjugate(slot.images[ch][0], vals[ch]),
                targets[ch].conjugate(slot.images[ch][1], vals[ch]),
            )
            for ch in range(nch)
        )
        back.append(
            BasisSlot(
                slot.xword.conjugated_by(w), slot.yword.conjugated_by(w), images
            )
        )
    return BasisState(state.genus, state.originals, tuple(front + back))


def check_state_invariants(state: BasisState) -> None:
    """Assert relations, word round-trips, and closure invariance; test hook."""
    for ch, original in enumerate(state.originals):
        current = state.channel_tuple(ch)  # raises RelationViolated if broken
        for slot in state.slots:
            assert evaluate_word(original, slot.xword) == slot.images[ch][0]
            assert evaluate_word(original, slot.yword) == slot.images[ch][1]
        assert tuple_image(current).members == tuple_image(original).members
