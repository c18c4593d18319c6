"""Finite groups as dense multiplication tables, with element ids 0..N-1.

Element 0 is always the identity.  Groups are built either from a builtin
family (symmetric, cyclic, dihedral, quaternion, direct products), from a
list of permutations in cycle notation (the group is the breadth-first
closure of the generators, which fixes the element ordering), or from a raw
Cayley table.  All derived data (conjugacy classes, subgroup lattice,
abelianization) is computed by exhaustive table arithmetic; everything is
exact and deterministic.

Conventions:
  * ``mul(a, b)`` is "a then b"; for permutations, ``(a*b)(x) = b(a(x))``.
  * ``conj(a, b) = a * b * a^-1``.
  * Conjugacy classes are sorted by (element order, class size, least id).
  * Subgroups are stored as bit sets over element ids.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

__all__ = [
    "FiniteGroup",
    "ConjugacyClassTable",
    "Subgroup",
    "Abelianization",
    "GroupSource",
    "GroupSpecError",
    "build_group",
    "symmetric_group",
    "cyclic_group",
    "dihedral_group",
    "quaternion_group",
    "direct_product",
    "group_from_permutations",
    "group_from_table",
    "conjugacy_classes",
    "subgroup_closure",
    "all_subgroups",
    "abelianization",
    "parse_permutation",
    "cycle_label",
]

MAX_GROUP_ORDER = 10_000
MAX_LATTICE_ORDER = 200

_ASSOC_SAMPLE = 100_000
_ASSOC_EXHAUSTIVE_LIMIT = 64


class GroupSpecError(ValueError):
    """Raised for ill-formed group specifications or Cayley tables."""


@dataclass(frozen=True)
class GroupSource:
    """Provenance of a group: builtin name, permutation generators, raw table,
    product factors, or subgroup embedding."""

    kind: str
    data: tuple = ()


class FiniteGroup:
    """A finite group given by its full multiplication table.

    Immutable after construction; derived tables are cached lazily and are
    themselves immutable, so instances are safe to share between workers.
    """

    __slots__ = (
        "order",
        "name",
        "labels",
        "source",
        "_mul",
        "_inv",
        "_label_index",
        "_classes",
        "_orders",
        "_conj",
        "_abelianization",
        "_subgroups",
        "_move_tables",
        "_is_abelian",
    )

    def __init__(
        self,
        mul: Sequence[Sequence[int]],
        labels: Sequence[str],
        name: str,
        source: GroupSource,
        validate: bool = True,
    ) -> None:
        self.order = len(mul)
        if self.order == 0:
            raise GroupSpecError("group must contain at least the identity")
        if self.order > MAX_GROUP_ORDER:
            raise GroupSpecError(
                f"group order {self.order} exceeds the configured maximum {MAX_GROUP_ORDER}"
            )
        self._mul = [list(row) for row in mul]
        if len(labels) != self.order:
            raise GroupSpecError("label count does not match group order")
        self.labels = tuple(str(x) for x in labels)
        self.name = name
        self.source = source
        self._inv = self._compute_inverses()
        self._label_index = None
        self._classes = None
        self._orders = None
        self._conj = None
        self._abelianization = None
        self._subgroups = {}
        self._move_tables = {}
        self._is_abelian = None
        if validate:
            self._validate()

    # -- basic arithmetic ---------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def conj(self, a: int, b: int) -> int:
        """a * b * a^-1."""
        m = self._mul
        return m[m[a][b]][self._inv[a]]

    @property
    def identity(self) -> int:
        return 0

    def elements(self) -> range:
        return range(self.order)

    def product(self, items: Iterable[int]) -> int:
        m = self._mul
        acc = 0
        for x in items:
            acc = m[acc][x]
        return acc

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self._inv[a], -k)
        acc = 0
        for _ in range(k):
            acc = self._mul[acc][a]
        return acc

    def element_order(self, a: int) -> int:
        return self.element_orders()[a]

    def element_orders(self) -> tuple[int, ...]:
        if self._orders is None:
            orders = []
            for a in range(self.order):
                k, x = 1, a
                while x != 0:
                    x = self._mul[x][a]
                    k += 1
                orders.append(k)
            self._orders = tuple(orders)
        return self._orders

    def exponent(self) -> int:
        exp = 1
        for k in set(self.element_orders()):
            exp = _lcm(exp, k)
        return exp

    def is_abelian(self) -> bool:
        if self._is_abelian is None:
            m = self._mul
            self._is_abelian = all(
                m[a][b] == m[b][a]
                for a in range(self.order)
                for b in range(a + 1, self.order)
            )
        return self._is_abelian

    def conj_table(self) -> list[list[int]]:
        """Dense table conj[a][b] = a*b*a^-1, built on first use."""
        if self._conj is None:
            m, inv = self._mul, self._inv
            self._conj = [
                [m[m[a][b]][inv[a]] for b in range(self.order)]
                for a in range(self.order)
            ]
        return self._conj

    # -- labels -------------------------------------------------------------

    def label(self, a: int) -> str:
        return self.labels[a]

    def element_by_label(self, text: str) -> int:
        """Resolve an element label; permutation-sourced groups also accept any
        cycle string denoting one of their elements."""
        if self._label_index is None:
            self._label_index = {lab: i for i, lab in enumerate(self.labels)}
        text = text.strip()
        hit = self._label_index.get(text)
        if hit is not None:
            return hit
        if text in ("e", "()", "id", "1") and "1" not in self._label_index:
            return 0
        if self.source.kind in ("permutations", "builtin:symmetric"):
            perm = parse_permutation(text, self._perm_degree())
            canonical = cycle_label(perm)
            hit = self._label_index.get(canonical)
            if hit is not None:
                return hit
        raise GroupSpecError(f"unknown element label {text!r} in group {self.name}")

    def _perm_degree(self) -> int:
        pts = [int(t) for lab in self.labels for t in re.findall(r"\d+", lab)]
        return max(pts) if pts else 1

    # -- validation ---------------------------------------------------------

    def _compute_inverses(self) -> list[int]:
        inv = [-1] * self.order
        for a in range(self.order):
            row = self._mul[a]
            if len(row) != self.order:
                raise GroupSpecError("multiplication table is not square")
            for b in range(self.order):
                x = row[b]
                if not (0 <= x < self.order):
                    raise GroupSpecError(f"table entry {x} out of range")
                if x == 0:
                    if inv[a] not in (-1, b):
                        raise GroupSpecError(f"element {a} has two inverses")
                    inv[a] = b
        if any(x < 0 for x in inv):
            raise GroupSpecError("some element has no inverse")
        return inv

    def _validate(self) -> None:
        n = self.order
        m = self._mul
        for x in range(n):
            if m[0][x] != x or m[x][0] != x:
                raise GroupSpecError("element 0 is not a two-sided identity")
        for x in range(n):
            if m[x][self._inv[x]] != 0 or m[self._inv[x]][x] != 0:
                raise GroupSpecError(f"inverse of element {x} is wrong")
        if n <= _ASSOC_EXHAUSTIVE_LIMIT:
            triples = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(0xA550C)
            triples = (
                (rng.randrange(n), rng.randrange(n), rng.randrange(n))
                for _ in range(_ASSOC_SAMPLE)
            )
        for a, b, c in triples:
            if m[m[a][b]][c] != m[a][m[b][c]]:
                raise GroupSpecError(f"associativity fails on ({a},{b},{c})")

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)


# -- conjugacy classes ------------------------------------------------------


@dataclass(frozen=True)
class ConjugacyClassTable:
    """Conjugacy classes with a deterministic indexing.

    ``classes[k]`` is the sorted tuple of element ids of class k, ``class_of``
    maps an element to its class index and ``class_order`` records the common
    order of the elements of each class.
    """

    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    class_order: tuple[int, ...]

    def size(self, k: int) -> int:
        return len(self.classes[k])

    def __len__(self) -> int:
        return len(self.classes)


def conjugacy_classes(group: FiniteGroup) -> ConjugacyClassTable:
    if group._classes is not None:
        return group._classes
    n = group.order
    conj = group.conj_table()
    orders = group.element_orders()
    seen = [False] * n
    raw = []
    for x in range(n):
        if seen[x]:
            continue
        orbit = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for a in range(n):
                z = conj[a][y]
                if z not in orbit:
                    orbit.add(z)
                    stack.append(z)
        for y in orbit:
            seen[y] = True
        raw.append(tuple(sorted(orbit)))
    raw.sort(key=lambda cls: (orders[cls[0]], len(cls), cls[0]))
    class_of = [0] * n
    for k, cls in enumerate(raw):
        for y in cls:
            class_of[y] = k
    table = ConjugacyClassTable(
        classes=tuple(raw),
        class_of=tuple(class_of),
        class_order=tuple(orders[cls[0]] for cls in raw),
    )
    group._classes = table
    return table


# -- subgroups --------------------------------------------------------------


@dataclass(frozen=True)
class Subgroup:
    """A subgroup stored as a bit set of element ids plus the generators it
    was built from."""

    mask: int
    gens: tuple[int, ...]
    order: int

    def contains(self, x: int) -> bool:
        return (self.mask >> x) & 1 == 1

    def elements(self) -> list[int]:
        out = []
        m, i = self.mask, 0
        while m:
            if m & 1:
                out.append(i)
            m >>= 1
            i += 1
        return out

    def __contains__(self, x: int) -> bool:
        return self.contains(x)


def subgroup_closure(group: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``gens``."""
    gens = tuple(dict.fromkeys(int(g) for g in gens))
    for g in gens:
        if not 0 <= g < group.order:
            raise ValueError(f"element id {g} out of range")
    mul = group._mul
    elems = [0]
    mask = 1
    frontier = []
    for g in gens:
        if not (mask >> g) & 1:
            mask |= 1 << g
            elems.append(g)
            frontier.append(g)
    while frontier:
        new = []
        for x in frontier:
            for y in elems:
                for z in (mul[x][y], mul[y][x]):
                    if not (mask >> z) & 1:
                        mask |= 1 << z
                        new.append(z)
        elems.extend(new)
        frontier = new
    return Subgroup(mask=mask, gens=gens, order=len(elems))


def all_subgroups(
    group: FiniteGroup, max_order: int = MAX_LATTICE_ORDER
) -> tuple[Subgroup, ...]:
    """Every subgroup of the group, sorted by (order, element bit set).

    Exhaustive: repeatedly extends known subgroups by one generator until a
    fixed point.  Guarded by ``max_order`` since the lattice is enumerated
    in full.
    """
    if group.order > max_order:
        raise ValueError(
            f"lattice too large: group order {group.order} exceeds bound {max_order}"
        )
    if max_order in group._subgroups:
        return group._subgroups[max_order]
    trivial = subgroup_closure(group, ())
    found = {trivial.mask: trivial}
    worklist = [trivial]
    while worklist:
        h = worklist.pop()
        for g in range(1, group.order):
            if h.contains(g):
                continue
            k = subgroup_closure(group, h.gens + (g,))
            if k.mask not in found:
                found[k.mask] = k
                worklist.append(k)
    result = tuple(sorted(found.values(), key=lambda s: (s.order, s.mask)))
    group._subgroups[max_order] = result
    return result


# -- abelianization ---------------------------------------------------------


@dataclass(frozen=True)
class Abelianization:
    """The quotient G -> G/[G,G] in invariant-factor coordinates.

    ``project[x]`` is the coordinate tuple of the image of x; factor i runs
    modulo ``invariant_factors[i]`` and consecutive factors divide each other
    (largest first).  The identity projects to the all-zero tuple.
    """

    commutator_subgroup: Subgroup
    invariant_factors: tuple[int, ...]
    project: tuple[tuple[int, ...], ...]
    ab_order: int
    exponent_ab: int

    def identity_coords(self) -> tuple[int, ...]:
        return (0,) * len(self.invariant_factors)

    def add(self, u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(
            (a + b) % m for a, b, m in zip(u, v, self.invariant_factors)
        )

    def scale(self, u: tuple[int, ...], k: int) -> tuple[int, ...]:
        return tuple((a * k) % m for a, m in zip(u, self.invariant_factors))

    def coords_order(self, u: tuple[int, ...]) -> int:
        order = 1
        for a, m in zip(u, self.invariant_factors):
            from math import gcd

            order = _lcm(order, m // gcd(a, m))
        return order


def abelianization(group: FiniteGroup) -> Abelianization:
    if group._abelianization is not None:
        return group._abelianization
    mul, inv = group._mul, group._inv
    n = group.order
    commutators = {
        mul[mul[a][b]][mul[inv[a]][inv[b]]] for a in range(n) for b in range(n)
    }
    comm = subgroup_closure(group, sorted(commutators))

    # Quotient table on cosets, each named by its least element.
    coset_of = [-1] * n
    reps = []
    for x in range(n):
        if coset_of[x] >= 0:
            continue
        members = sorted(mul[x][k] for k in comm.elements())
        rep = len(reps)
        for y in members:
            coset_of[y] = rep
        reps.append(members[0])
    qn = len(reps)
    qmul = [[coset_of[mul[reps[i]][reps[j]]] for j in range(qn)] for i in range(qn)]

    factors, basis_coords = _peel_cyclic_factors(qmul)
    project = tuple(basis_coords[coset_of[x]] for x in range(n))
    result = Abelianization(
        commutator_subgroup=comm,
        invariant_factors=factors,
        project=project,
        ab_order=qn,
        exponent_ab=factors[0] if factors else 1,
    )
    group._abelianization = result
    return result


def _peel_cyclic_factors(
    qmul: list[list[int]],
) -> tuple[tuple[int, ...], list[tuple[int, ...]]]:
    """Decompose an abelian group (given by its table) into cyclic factors by
    repeatedly splitting off a maximal-order element, and tabulate the
    coordinates of every element.

    Returns (invariant factors, coordinate tuple per element id).
    """
    qn = len(qmul)
    if qn == 1:
        return (), [()]

    orders = []
    for a in range(qn):
        k, x = 1, a
        while x != 0:
            x = qmul[x][a]
            k += 1
        orders.append(k)
    m = max(orders)
    a = orders.index(m)

    # Powers of a and the discrete log within <a>.
    powers = [0]
    x = a
    while x != 0:
        powers.append(x)
        x = qmul[x][a]
    powers.pop()  # closes back to identity; keep exponents 0..m-1
    log_a = {x: e for e, x in enumerate(powers)}

    # Quotient by <a>.
    inv_q = [0] * qn
    for x in range(qn):
        for y in range(qn):
            if qmul[x][y] == 0:
                inv_q[x] = y
    coset_of = [-1] * qn
    reps = []
    for x in range(qn):
        if coset_of[x] >= 0:
            continue
        members = sorted(qmul[x][p] for p in powers)
        rep = len(reps)
        for y in members:
            coset_of[y] = rep
        reps.append(members[0])
    q2n = len(reps)
    q2mul = [
        [coset_of[qmul[reps[i]][reps[j]]] for j in range(q2n)] for i in range(q2n)
    ]
    sub_factors, sub_coords = _peel_cyclic_factors(q2mul)

    # Lift a basis of the quotient: a preimage x of b with x^{ord(b)} = a^t
    # can be corrected to x * a^{-t/ord(b)}, which has order exactly ord(b).
    basis = [a]
    factors = [m]
    for i, f in enumerate(sub_factors):
        b_rep = None
        for x in range(qn):
            if sub_coords[coset_of[x]] == tuple(
                f if j == i else 0 for j in range(len(sub_factors))
            ):
                # x projects onto the chosen generator? We need an element whose
                # quotient coordinates are the i-th unit vector.
                pass
        # find any x whose quotient coords are the i-th unit vector
        unit = tuple(1 if j == i else 0 for j in range(len(sub_factors)))
        for x in range(qn):
            if sub_coords[coset_of[x]] == unit:
                b_rep = x
                break
        assert b_rep is not None
        xp = 0
        for _ in range(f):
            xp = qmul[xp][b_rep]
        t = log_a[xp]
        assert t % f == 0, "maximal-order peeling invariant violated"
        corr = t // f
        adjust = 0
        for _ in range(corr):
            adjust = qmul[adjust][a]
        b = qmul[b_rep][inv_q[adjust]]
        basis.append(b)
        factors.append(f)

    # Coordinates: quotient coordinates give the non-<a> part; dividing it out
    # leaves a power of a.
    coords = []
    for g in range(qn):
        beta = sub_coords[coset_of[g]]
        rem = g
        for b, e, f in zip(basis[1:], beta, factors[1:]):
            be = 0
            for _ in range(e):
                be = qmul[be][b]
            rem = qmul[rem][inv_q[be]]
        alpha = log_a[rem]
        coords.append((alpha,) + tuple(beta))
    return tuple(factors), coords


# -- permutation parsing ----------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int = 0) -> tuple[int, ...]:
    """Parse cycle notation like ``(1 2)(3 4)`` into a 0-based image tuple.

    Points are 1-based in the notation.  ``degree`` pads the permutation; the
    parsed points may push it higher.
    """
    text = text.strip()
    if text in ("e", "()", "id", ""):
        return tuple(range(max(degree, 1)))
    cycles = []
    consumed = _CYCLE_RE.sub("", text).strip()
    if consumed:
        raise GroupSpecError(f"cannot parse permutation {text!r}")
    maxpt = degree
    for body in _CYCLE_RE.findall(text):
        pts = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
        if len(pts) < 2:
            if not pts:
                continue
            raise GroupSpecError(f"cycle with a single point in {text!r}")
        if len(set(pts)) != len(pts):
            raise GroupSpecError(f"repeated point inside a cycle in {text!r}")
        cycles.append(pts)
        maxpt = max(maxpt, max(pts))
    image = list(range(maxpt))
    seen = set()
    for pts in cycles:
        if seen & set(pts):
            raise GroupSpecError(f"cycles are not disjoint in {text!r}")
        seen |= set(pts)
        for i, p in enumerate(pts):
            image[p - 1] = pts[(i + 1) % len(pts)] - 1
    return tuple(image)


def cycle_label(perm: Sequence[int]) -> str:
    """Canonical cycle notation: cycles sorted by least point, fixed points
    omitted, identity rendered as ``e``."""
    n = len(perm)
    seen = [False] * n
    cycles = []
    for start in range(n):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        x = perm[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = perm[x]
        cycles.append(cyc)
    if not cycles:
        return "e"
    return "".join("(" + " ".join(str(p + 1) for p in cyc) + ")" for cyc in cycles)


def _perm_mul(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    # "a then b"
    return tuple(b[x] for x in a)


def _pad(perm: Sequence[int], degree: int) -> tuple[int, ...]:
    return tuple(perm) + tuple(range(len(perm), degree))


# -- builders ---------------------------------------------------------------


def group_from_permutations(
    cycle_strings: Sequence[str], name: Optional[str] = None
) -> FiniteGroup:
    """Breadth-first closure of permutation generators, in the given order.

    The element ordering (hence all ids) is fixed by the BFS; the identity
    comes first.
    """
    if not cycle_strings:
        raise GroupSpecError("at least one permutation generator is required")
    parsed = [parse_permutation(s) for s in cycle_strings]
    degree = max(len(p) for p in parsed)
    gens = [_pad(p, degree) for p in parsed]
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    queue = [ident]
    while queue:
        x = queue.pop(0)
        for g in gens:
            y = _perm_mul(x, g)
            if y not in index:
                if len(elems) >= MAX_GROUP_ORDER:
                    raise GroupSpecError(
                        f"permutation closure exceeds maximum order {MAX_GROUP_ORDER}"
                    )
                index[y] = len(elems)
                elems.append(y)
                queue.append(y)
    mul = [[index[_perm_mul(a, b)] for b in elems] for a in elems]
    labels = [cycle_label(p) for p in elems]
    src = GroupSource("permutations", tuple(cycle_strings))
    return FiniteGroup(mul, labels, name or f"Perm<{','.join(cycle_strings)}>", src)


def symmetric_group(d: int) -> FiniteGroup:
    if d < 1:
        raise GroupSpecError("symmetric group needs d >= 1")
    if d == 1:
        return FiniteGroup([[0]], ["e"], "S1", GroupSource("builtin:symmetric", (1,)))
    gens = ["(1 2)"]
    if d > 2:
        gens.append("(" + " ".join(str(i) for i in range(1, d + 1)) + ")")
    g = group_from_permutations(gens, name=f"S{d}")
    return FiniteGroup(
        g._mul, g.labels, f"S{d}", GroupSource("builtin:symmetric", (d,)), validate=False
    )


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupSpecError("cyclic group needs n >= 1")
    mul = [[(i + j) % n for j in range(n)] for i in range(n)]
    labels = ["e"] + ["g" if k == 1 else f"g^{k}" for k in range(1, n)]
    return FiniteGroup(mul, labels, f"C{n}", GroupSource("builtin:cyclic", (n,)))


def dihedral_group(n: int) -> FiniteGroup:
    """Dihedral group of order 2n: ids 0..n-1 are r^k, ids n..2n-1 are s*r^k."""
    if n < 1:
        raise GroupSpecError("dihedral group needs n >= 1")

    def enc(a: int, i: int) -> int:
        return a * n + i % n

    mul = [[0] * (2 * n) for _ in range(2 * n)]
    for a in (0, 1):
        for i in range(n):
            for b in (0, 1):
                for j in range(n):
                    # (s^a r^i)(s^b r^j) = s^(a+b) r^(j + (-1)^b i)
                    k = (j + (i if b == 0 else -i)) % n
                    mul[enc(a, i)][enc(b, j)] = enc((a + b) % 2, k)
    labels = ["e"] + ["r" if k == 1 else f"r^{k}" for k in range(1, n)]
    labels += ["s"] + ["sr" if k == 1 else f"sr^{k}" for k in range(1, n)]
    return FiniteGroup(mul, labels, f"D{n}", GroupSource("builtin:dihedral", (n,)))


def quaternion_group(n: int = 8) -> FiniteGroup:
    if n != 8:
        raise GroupSpecError("only the quaternion group of order 8 is built in")
    # (sign, axis) with axes 1,i,j,k; ids: 1,-1,i,-i,j,-j,k,-k
    table = {
        (1, 1): (1, 1), (1, 2): (1, 2), (1, 3): (1, 3),
        (2, 1): (-1, 1), (2, 2): (1, 3), (2, 3): (-1, 2),
        (3, 1): (1, 2), (3, 2): (-1, 3), (3, 3): (-1, 1),
    }

    def q_mul(x, y):
        sx, ax = x
        sy, ay = y
        if ax == 0:
            return (sx * sy, ay)
        if ay == 0:
            return (sx * sy, ax)
        if ax == ay:
            return (-sx * sy, 0)
        s, a = table[(ax, ay)]
        return (sx * sy * s, a)

    elems = [(1, 0), (-1, 0), (1, 1), (-1, 1), (1, 2), (-1, 2), (1, 3), (-1, 3)]
    index = {x: i for i, x in enumerate(elems)}
    mul = [[index[q_mul(a, b)] for b in elems] for a in elems]
    labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return FiniteGroup(mul, labels, "Q8", GroupSource("builtin:quaternion", (8,)))


def direct_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    n1, n2 = g1.order, g2.order
    if n1 * n2 > MAX_GROUP_ORDER:
        raise GroupSpecError("direct product exceeds the maximum group order")
    mul = [
        [
            g1._mul[a1][b1] * n2 + g2._mul[a2][b2]
            for b1 in range(n1)
            for b2 in range(n2)
        ]
        for a1 in range(n1)
        for a2 in range(n2)
    ]
    labels = [
        f"({la},{lb})" for la in g1.labels for lb in g2.labels
    ]
    name = f"{g1.name}x{g2.name}"
    return FiniteGroup(
        mul, labels, name, GroupSource("product", (g1.source, g2.source)), validate=False
    )


def group_from_table(
    table: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None
) -> FiniteGroup:
    n = len(table)
    labels = list(labels) if labels else [f"x{i}" for i in range(n)]
    return FiniteGroup(table, labels, f"Table{n}", GroupSource("table", ()))


_SHORTHAND_RE = re.compile(r"^([A-Za-z]+)(\d+)$")

_FAMILIES = {
    "s": "symmetric",
    "c": "cyclic",
    "z": "cyclic",
    "d": "dihedral",
    "q": "quaternion",
}

_BUILTIN_BUILDERS = {
    "symmetric": symmetric_group,
    "cyclic": cyclic_group,
    "dihedral": dihedral_group,
    "quaternion": quaternion_group,
}


def build_group(spec) -> FiniteGroup:
    """Build a group from a specification.

    Accepts a shorthand string ("S4", "C3", "D4", "Q8", "S3xC2"), or a dict as
    found in group specification documents: ``{"builtin": name, "n": k}``,
    ``{"permutations": [...]}``, ``{"cayley": [[...]], "labels": [...]}``, or
    ``{"product": [spec, spec]}``.
    """
    if isinstance(spec, FiniteGroup):
        return spec
    if isinstance(spec, str):
        return _build_from_shorthand(spec)
    if isinstance(spec, Mapping):
        if "builtin" in spec:
            fam = str(spec["builtin"]).lower()
            if fam not in _BUILTIN_BUILDERS:
                raise GroupSpecError(f"unknown builtin family {fam!r}")
            return _BUILTIN_BUILDERS[fam](int(spec.get("n", 8)))
        if "permutations" in spec:
            return group_from_permutations(list(spec["permutations"]))
        if "cayley" in spec:
            return group_from_table(spec["cayley"], spec.get("labels"))
        if "product" in spec:
            parts = [build_group(p) for p in spec["product"]]
            if not parts:
                raise GroupSpecError("empty product specification")
            out = parts[0]
            for p in parts[1:]:
                out = direct_product(out, p)
            return out
        raise GroupSpecError(f"unrecognized group specification keys {sorted(spec)}")
    raise GroupSpecError(f"unrecognized group specification {spec!r}")


def _build_from_shorthand(text: str) -> FiniteGroup:
    text = text.strip()
    if "x" in text or "X" in text:
        parts = re.split(r"[xX]", text)
        out = _build_from_shorthand(parts[0])
        for p in parts[1:]:
            out = direct_product(out, _build_from_shorthand(p))
        return out
    m = _SHORTHAND_RE.match(text)
    if not m:
        raise GroupSpecError(f"cannot parse group shorthand {text!r}")
    fam, n = m.group(1).lower(), int(m.group(2))
    if fam not in _FAMILIES:
        raise GroupSpecError(f"unknown group family {m.group(1)!r}")
    return _BUILTIN_BUILDERS[_FAMILIES[fam]](n)
