"""Tuples of group elements and the braid moves acting on them.

A tuple is a plain ``tuple[int, ...]`` of element ids, read against a
FiniteGroup.  The elementary move at index i (1-based, 1 <= i <= n-1) sends
positions (i, i+1) = (a, b) to (a b a^-1, a); its inverse sends them to
(b, b^-1 a b).  Derived moves (rotation, conjugation of the whole tuple or
of a product-one block) return the transformed tuple together with a braid
word that realizes it; replaying the word is an exact certificate, so none
of the constructions here rely on unverified lemmas.

Braid words are sequences of (index, sign) pairs with sign +1 for the
forward move and -1 for the inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .groups import FiniteGroup, Subgroup, subgroup_closure
from .setups import ClassSetup, _split_top_level

__all__ = [
    "BraidWord",
    "apply_braid",
    "apply_word",
    "invert_word",
    "shift_word",
    "tuple_product",
    "generated_subgroup",
    "multidiscriminant",
    "abelianized_product",
    "concatenate",
    "rotate",
    "conjugate_tuple",
    "conjugate_block",
    "conjugate_entries",
    "parse_tuple",
    "format_tuple",
    "encode_tuple",
    "decode_tuple",
    "entry_bits",
]

BraidWord = tuple[tuple[int, int], ...]


def apply_braid(
    group: FiniteGroup, t: Sequence[int], i: int, inverse: bool = False
) -> tuple[int, ...]:
    """One elementary move at 1-based index i."""
    n = len(t)
    if not 1 <= i <= n - 1:
        raise IndexError(f"braid index {i} out of range for a tuple of size {n}")
    a, b = t[i - 1], t[i]
    out = list(t)
    if not inverse:
        out[i - 1] = group.conj(a, b)
        out[i] = a
    else:
        out[i - 1] = b
        out[i] = group.conj(group.inv(b), a)
    return tuple(out)


def apply_word(
    group: FiniteGroup, t: Sequence[int], word: Iterable[tuple[int, int]]
) -> tuple[int, ...]:
    out = tuple(t)
    for i, sign in word:
        out = apply_braid(group, out, i, inverse=(sign < 0))
    return out


def invert_word(word: Sequence[tuple[int, int]]) -> BraidWord:
    return tuple((i, -s) for i, s in reversed(word))


def shift_word(word: Sequence[tuple[int, int]], offset: int) -> BraidWord:
    return tuple((i + offset, s) for i, s in word)


def tuple_product(group: FiniteGroup, t: Sequence[int]) -> int:
    """Left-to-right product; the empty tuple gives the identity."""
    return group.product(t)


def generated_subgroup(group: FiniteGroup, t: Sequence[int]) -> Subgroup:
    return subgroup_closure(group, sorted(set(t)))


def multidiscriminant(setup: ClassSetup, t: Sequence[int]) -> tuple[int, ...]:
    """Occurrences of each D* class among the entries."""
    class_of = setup.classes.class_of
    position = {k: j for j, k in enumerate(setup.dstar)}
    counts = [0] * len(setup.dstar)
    for x in t:
        if not setup.in_c(x):
            raise ValueError(
                f"entry {setup.group.label(x)} lies outside the setup support"
            )
        counts[position[class_of[x]]] += 1
    return tuple(counts)


def abelianized_product(setup: ClassSetup, psi: Sequence[int]) -> tuple[int, ...]:
    """The product over D* of class images raised to psi, in abelianization
    coordinates.  Negative exponents are allowed."""
    if len(psi) != len(setup.dstar):
        raise ValueError("psi must be indexed by D*")
    from .groups import abelianization

    ab = abelianization(setup.group)
    acc = ab.identity_coords()
    table = setup.classes
    for j, k in enumerate(setup.dstar):
        rep = table.classes[k][0]
        acc = ab.add(acc, ab.scale(ab.project[rep], psi[j]))
    return acc


def concatenate(t1: Sequence[int], t2: Sequence[int]) -> tuple[int, ...]:
    return tuple(t1) + tuple(t2)


# -- derived moves with witnesses --------------------------------------------

_ROT_LEFT = "rotl"


def _rot_left_word(n: int) -> BraidWord:
    # product-one tuples: (g1,...,gn) -> (g2,...,gn,g1)
    return tuple((i, -1) for i in range(1, n))


def _rot_right_word(n: int) -> BraidWord:
    return tuple((i, 1) for i in range(n - 1, 0, -1))


def rotate(group: FiniteGroup, t: Sequence[int]) -> tuple[tuple[int, ...], BraidWord]:
    """Cyclic left rotation of a product-one tuple, with witness."""
    t = tuple(t)
    if group.product(t) != 0:
        raise ValueError("rotation requires a tuple of product one")
    if len(t) <= 1:
        return t, ()
    word = _rot_left_word(len(t))
    return apply_word(group, t, word), word


def _conj_by_entry_word(n: int, i: int, sign: int) -> BraidWord:
    """Word conjugating a product-one n-tuple by (entry at position i)^sign.

    For sign +1: rotate position i to the front, sweep it through the tuple
    (sigma_1..sigma_{n-1}), rotate back.  For sign -1: the inverse word.
    """
    word: list[tuple[int, int]] = []
    word.extend(_rot_left_word(n) * (i - 1))
    word.extend((j, 1) for j in range(1, n))
    word.extend(_rot_right_word(n))
    word.extend(_rot_right_word(n) * (i - 1))
    if sign < 0:
        return invert_word(word)
    return tuple(word)


def _factor_over_generators(
    group: FiniteGroup, target: int, generators: Sequence[tuple[int, object]]
) -> list[object]:
    """Write ``target`` as a left-to-right product of generator values.

    ``generators`` is a list of (value, tag) pairs; returns the list of tags
    along a shortest factorization, found by breadth-first search.  Raises if
    the target is not in the generated subgroup.
    """
    if target == 0:
        return []
    mul = group._mul
    parent: dict[int, tuple[int, object]] = {0: (-1, None)}
    frontier = [0]
    while frontier:
        new = []
        for x in frontier:
            for value, tag in generators:
                y = mul[x][value]
                if y not in parent:
                    parent[y] = (x, tag)
                    if y == target:
                        path = []
                        cur = y
                        while cur != 0:
                            px, ptag = parent[cur]
                            path.append(ptag)
                            cur = px
                        path.reverse()
                        return path
                    new.append(y)
        frontier = new
    raise ValueError("element is not in the subgroup generated by the entries")


def conjugate_tuple(
    group: FiniteGroup, t: Sequence[int], a: int
) -> tuple[tuple[int, ...], BraidWord]:
    """Entrywise conjugate (a x a^-1) of a product-one tuple by a member of
    its generated subgroup, with witness.

    Conjugating by the current entry at a position appends that entry's
    original value on the right of the accumulated conjugator, so a
    factorization of ``a`` over the original entries replays in order.
    """
    t = tuple(t)
    n = len(t)
    if group.product(t) != 0:
        raise ValueError("tuple conjugation requires product one")
    gens = []
    for pos in range(1, n + 1):
        gens.append((t[pos - 1], (pos, 1)))
        gens.append((group.inv(t[pos - 1]), (pos, -1)))
    steps = _factor_over_generators(group, a, gens)
    word: list[tuple[int, int]] = []
    cur = t
    for pos, sign in steps:
        w = _conj_by_entry_word(n, pos, sign)
        cur = apply_word(group, cur, w)
        word.extend(w)
    expected = tuple(group.conj(a, x) for x in t)
    assert cur == expected, "conjugation witness replay mismatch"
    return cur, tuple(word)


def _pass_left_roundtrip_word(p: int, lo: int, hi: int) -> BraidWord:
    """Round trip of the entry at position p < lo through the block
    [lo, hi]: conjugates the block, restores everything else."""
    word: list[tuple[int, int]] = []
    word.extend((j, -1) for j in range(p, lo - 1))          # slide right to lo-1
    word.extend((j, 1) for j in range(lo - 1, hi))          # push through block
    word.extend((j, 1) for j in range(hi - 1, lo - 2, -1))  # come back over block
    word.extend((j, 1) for j in range(lo - 2, p - 1, -1))   # restore position
    return tuple(word)


def _pass_right_roundtrip_word(q: int, lo: int, hi: int) -> BraidWord:
    """Round trip of the entry at position q > hi through the block."""
    word: list[tuple[int, int]] = []
    word.extend((j, 1) for j in range(q - 1, hi, -1))       # slide left to hi+1
    word.extend((j, -1) for j in range(hi, lo - 1, -1))     # push through block
    word.extend((j, -1) for j in range(lo, hi + 1))         # come back over block
    word.extend((j, -1) for j in range(hi + 1, q))          # restore position
    return tuple(word)


def conjugate_block(
    group: FiniteGroup, t: Sequence[int], lo: int, hi: int, a: int
) -> tuple[tuple[int, ...], BraidWord]:
    """Conjugate the block at 1-based positions [lo, hi] (product one) by an
    element of the subgroup generated by the entries outside it, with
    witness; all entries outside the block are restored exactly.

    A single round trip of an outside entry through the block conjugates the
    block by a shifted copy of that entry (the entry conjugated by the
    outside entries standing between it and the block); those shifted values
    generate the same outside subgroup, so a factorization of ``a`` over them
    always exists.
    """
    t = tuple(t)
    n = len(t)
    if not (1 <= lo <= hi <= n):
        raise IndexError("block out of range")
    if group.product(t[lo - 1 : hi]) != 0:
        raise ValueError("block conjugation requires a product-one block")
    mul, inv = group._mul, group._inv

    gens: list[tuple[int, object]] = []
    u = 0
    for p in range(lo - 1, 0, -1):
        # between p and the block: t[p+1..lo-1]
        if p == lo - 1:
            u = 0
        else:
            u = group.product(t[p : lo - 1])
        val = mul[mul[inv[u]][t[p - 1]]][u]
        gens.append((val, ("L", p, 1)))
        gens.append((inv[val], ("L", p, -1)))
    for q in range(hi + 1, n + 1):
        u = group.product(t[hi : q - 1])
        shifted = mul[mul[u][t[q - 1]]][inv[u]]
        val = inv[shifted]  # the right-side round trip conjugates by the inverse
        gens.append((val, ("R", q, 1)))
        gens.append((inv[val], ("R", q, -1)))
    if not gens and a != 0:
        raise ValueError("no entries outside the block to conjugate with")
    steps = _factor_over_generators(group, a, gens)
    # applying primitives right-to-left makes the conjugators compose as written
    word: list[tuple[int, int]] = []
    cur = t
    for side, pos, sign in reversed(steps):
        if side == "L":
            w = _pass_left_roundtrip_word(pos, lo, hi)
        else:
            w = _pass_right_roundtrip_word(pos, lo, hi)
        if sign < 0:
            w = invert_word(w)
        cur = apply_word(group, cur, w)
        word.extend(w)
    expected = list(t)
    for j in range(lo - 1, hi):
        expected[j] = group.conj(a, t[j])
    assert cur == tuple(expected), "block conjugation witness replay mismatch"
    return cur, tuple(word)


def conjugate_entries(group: FiniteGroup, t: Sequence[int], a: int) -> tuple[int, ...]:
    """Entrywise a x a^-1, with no witness (not a braid move in general)."""
    return tuple(group.conj(a, x) for x in t)


# -- literal format -----------------------------------------------------------


def parse_tuple(group: FiniteGroup, text: str) -> tuple[int, ...]:
    """Parse the comma-separated label format, e.g. ``(1 2),(1 3),(2 3)``."""
    text = text.strip()
    if not text:
        return ()
    return tuple(group.element_by_label(part) for part in _split_top_level(text))


def format_tuple(group: FiniteGroup, t: Sequence[int]) -> str:
    return ",".join(group.label(x) for x in t)


# -- packed encoding ----------------------------------------------------------


def entry_bits(group: FiniteGroup) -> int:
    return max(1, (group.order - 1).bit_length())


def encode_tuple(group: FiniteGroup, t: Sequence[int]) -> int:
    """Pack entries into one integer, first entry in the most significant
    bits, so integer order on equal sizes is lexicographic order."""
    w = entry_bits(group)
    code = 0
    for x in t:
        code = (code << w) | x
    return code


def decode_tuple(group: FiniteGroup, code: int, size: int) -> tuple[int, ...]:
    w = entry_bits(group)
    mask = (1 << w) - 1
    out = [0] * size
    for j in range(size - 1, -1, -1):
        out[j] = code & mask
        code >>= w
    return tuple(out)
