"""Monodromy-class setups: a group together with disjoint blocks of
conjugacy classes and multiplicities.

A setup fixes a group G, a list D of disjoint nonempty blocks (each a union
of nontrivial conjugacy classes of G, collectively generating G) and a
positive multiplicity xi per block.  Derived from these: the support c
(union of the blocks), the list D* of single conjugacy classes inside c, the
map tau sending each class to its block, and the splitting number
Omega = |D*| - |D|.

Setups restrict to subgroups: a subgroup H is admissible when every block
meets H and the intersections generate H; restriction re-tables H as a group
of its own and intersects the blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .groups import (
    ConjugacyClassTable,
    FiniteGroup,
    GroupSource,
    Subgroup,
    all_subgroups,
    conjugacy_classes,
    subgroup_closure,
)

__all__ = [
    "ClassSetup",
    "SetupError",
    "make_setup",
    "setup_from_labels",
    "d_generated_subgroups",
    "is_d_generated",
    "restrict_setup",
]


class SetupError(ValueError):
    """Raised for ill-formed (D, xi) data."""


@dataclass(frozen=True)
class ClassSetup:
    """The triple (G, D, xi) plus derived data.

    ``blocks`` holds, per block, the sorted tuple of class indices it is made
    of; ``dstar`` lists the class indices of D* in class-table order; ``tau``
    maps a D*-position to its block index.
    """

    group: FiniteGroup
    blocks: tuple[tuple[int, ...], ...]
    xi: tuple[int, ...]
    dstar: tuple[int, ...]
    tau: tuple[int, ...]
    c_mask: int
    xi_total: int
    omega: int

    @property
    def classes(self) -> ConjugacyClassTable:
        return conjugacy_classes(self.group)

    def num_blocks(self) -> int:
        return len(self.blocks)

    def num_classes(self) -> int:
        return len(self.dstar)

    def c_elements(self) -> list[int]:
        out = []
        m, i = self.c_mask, 0
        while m:
            if m & 1:
                out.append(i)
            m >>= 1
            i += 1
        return out

    def in_c(self, x: int) -> bool:
        return (self.c_mask >> x) & 1 == 1

    def block_of_class(self, class_index: int) -> int:
        """Block index containing a conjugacy class, by class-table index."""
        for b, cls_ids in enumerate(self.blocks):
            if class_index in cls_ids:
                return b
        raise KeyError(f"class {class_index} is not part of the setup")

    def dstar_index_of_class(self, class_index: int) -> int:
        return self.dstar.index(class_index)

    def class_sizes(self) -> tuple[int, ...]:
        table = self.classes
        return tuple(len(table.classes[k]) for k in self.dstar)

    def class_orders(self) -> tuple[int, ...]:
        table = self.classes
        return tuple(table.class_order[k] for k in self.dstar)

    def block_label(self, b: int) -> str:
        table = self.classes
        reps = [table.classes[k][0] for k in self.blocks[b]]
        return "{" + ",".join(self.group.label(r) for r in reps) + "}"

    def describe(self) -> dict:
        return {
            "group": self.group.name,
            "blocks": [self.block_label(b) for b in range(len(self.blocks))],
            "xi": list(self.xi),
            "omega": self.omega,
            "num_classes": len(self.dstar),
        }


def make_setup(
    group: FiniteGroup,
    block_classes: Sequence[Iterable[int]],
    xi: Optional[Sequence[int]] = None,
) -> ClassSetup:
    """Build a setup from blocks given as collections of class indices."""
    table = conjugacy_classes(group)
    ident_class = table.class_of[0]
    blocks: list[tuple[int, ...]] = []
    seen: set[int] = set()
    for raw in block_classes:
        ids = tuple(sorted(set(int(k) for k in raw)))
        if not ids:
            raise SetupError("blocks must be nonempty")
        for k in ids:
            if not 0 <= k < len(table.classes):
                raise SetupError(f"class index {k} out of range")
            if k == ident_class:
                raise SetupError("the identity class cannot belong to a block")
            if k in seen:
                raise SetupError("blocks expand to overlapping conjugacy classes")
            seen.add(k)
        blocks.append(ids)
    if not blocks:
        raise SetupError("a setup needs at least one block")
    if xi is None:
        xi_t = tuple(1 for _ in blocks)
    else:
        xi_t = tuple(int(v) for v in xi)
        if len(xi_t) != len(blocks):
            raise SetupError("xi must assign one multiplicity per block")
        if any(v <= 0 for v in xi_t):
            raise SetupError("multiplicities must be positive")

    c_mask = 0
    for ids in blocks:
        for k in ids:
            for x in table.classes[k]:
                c_mask |= 1 << x
    gen = subgroup_closure(group, _mask_elements(c_mask))
    if gen.order != group.order:
        raise SetupError("the chosen classes do not generate the group")

    dstar = tuple(sorted(seen))
    tau = tuple(
        next(b for b, ids in enumerate(blocks) if k in ids) for k in dstar
    )
    omega = len(dstar) - len(blocks)
    return ClassSetup(
        group=group,
        blocks=tuple(blocks),
        xi=xi_t,
        dstar=dstar,
        tau=tau,
        c_mask=c_mask,
        xi_total=sum(xi_t),
        omega=omega,
    )


def setup_from_labels(
    group: FiniteGroup,
    block_labels: Sequence[str],
    xi: Optional[Sequence[int]] = None,
) -> ClassSetup:
    """Build a setup from blocks given as comma-separated representative
    labels; each representative is expanded to its whole conjugacy class."""
    table = conjugacy_classes(group)
    block_classes = []
    for text in block_labels:
        ids = set()
        for part in _split_top_level(text):
            x = group.element_by_label(part)
            ids.add(table.class_of[x])
        block_classes.append(sorted(ids))
    return make_setup(group, block_classes, xi)


def _split_top_level(text: str) -> list[str]:
    """Split on commas that are not nested inside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail:
        parts.append(tail)
    return [p for p in parts if p]


def _mask_elements(mask: int) -> list[int]:
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


# -- subgroup admissibility and restriction ----------------------------------


def is_d_generated(setup: ClassSetup, h: Subgroup) -> bool:
    """Every block meets h, and the intersections generate h."""
    table = setup.classes
    inter_mask = 0
    for ids in setup.blocks:
        block_mask = 0
        for k in ids:
            for x in table.classes[k]:
                if h.contains(x):
                    block_mask |= 1 << x
        if block_mask == 0:
            return False
        inter_mask |= block_mask
    gen = subgroup_closure(setup.group, _mask_elements(inter_mask))
    return gen.mask == h.mask


def d_generated_subgroups(
    setup: ClassSetup, max_order: int = 200
) -> tuple[Subgroup, ...]:
    """The trivial subgroup plus every admissible subgroup, sorted by
    (order, bit set)."""
    subs = all_subgroups(setup.group, max_order=max_order)
    out = [s for s in subs if s.order == 1 or is_d_generated(setup, s)]
    return tuple(out)


def restrict_setup(setup: ClassSetup, h: Subgroup) -> ClassSetup:
    """Restrict the setup to an admissible subgroup.

    The subgroup is re-tabled as a group of its own (ascending parent ids, so
    the identity stays at 0, and the embedding is recorded in the source);
    blocks become their intersections with h and keep their multiplicities.
    """
    if h.order == 1:
        raise SetupError("cannot restrict a setup to the trivial subgroup")
    if not is_d_generated(setup, h):
        raise SetupError("subgroup is not admissible for this setup")
    parent = setup.group
    elems = h.elements()
    index = {x: i for i, x in enumerate(elems)}
    mul = [[index[parent.mul(a, b)] for b in elems] for a in elems]
    labels = [parent.label(x) for x in elems]
    sub = FiniteGroup(
        mul,
        labels,
        f"{parent.name}|{labels[1] if len(labels) > 1 else 'e'}..",
        GroupSource("subgroup", (parent.name, tuple(elems))),
        validate=False,
    )
    sub_table = conjugacy_classes(sub)
    block_classes = []
    for ids in setup.blocks:
        sub_ids = set()
        for k in ids:
            for x in setup.classes.classes[k]:
                if x in index:
                    sub_ids.add(sub_table.class_of[index[x]])
        block_classes.append(sorted(sub_ids))
    return make_setup(sub, block_classes, setup.xi)
