"""Exact finite group arithmetic over dense multiplication tables.

Elements of a group of order n are the indices 0..n-1; all structure
(products, inverses, subgroups, homomorphisms) is stored as index tables.
Tables up to FULL_CHECK_THRESHOLD are validated exhaustively, larger ones by
seeded random sampling, so construction cost stays quadratic.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import (
    InvalidAction,
    NoIdentity,
    NoInverse,
    NotAHomomorphism,
    NotASubgroup,
    NotAssociative,
    NotSplit,
    NotSurjective,
)

# Orders at or below this get exhaustive associativity / multiplicativity
# checks; above it we fall back to 10 * order**2 seeded random probes.
FULL_CHECK_THRESHOLD = 512


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its full multiplication table."""

    order: int
    identity: int
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    labels: Optional[tuple[str, ...]] = None

    def product(self, *elems: int) -> int:
        acc = self.identity
        for e in elems:
            acc = self.mul[acc][e]
        return acc

    def power(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv[a], -e
        acc = self.identity
        base = a
        while e:
            if e & 1:
                acc = self.mul[acc][base]
            base = self.mul[base][base]
            e >>= 1
        return acc

    def commutator(self, a: int, b: int) -> int:
        # convention: [a, b] = a^-1 b^-1 a b
        return self.product(self.inv[a], self.inv[b], a, b)

    def conjugate(self, a: int, c: int) -> int:
        # a^c = c^-1 a c
        return self.product(self.inv[c], a, c)

    def element_order(self, a: int) -> int:
        acc, k = a, 1
        while acc != self.identity:
            acc = self.mul[acc][a]
            k += 1
        return k

    def elements(self) -> range:
        return range(self.order)

    def label_of(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)


def _check_associativity(table: np.ndarray, threshold: int, seed: int) -> None:
    n = table.shape[0]
    if n <= threshold:
        for a in range(n):
            left = table[table[a]]          # [b,c] -> (a*b)*c
            right = table[a][table]         # [b,c] -> a*(b*c)
            if not np.array_equal(left, right):
                b, c = map(int, np.argwhere(left != right)[0])
                raise NotAssociative((a, b, c))
    else:
        rng = random.Random(seed)
        for _ in range(10 * n * n):
            a, b, c = (rng.randrange(n) for _ in range(3))
            if table[table[a, b], c] != table[a, table[b, c]]:
                raise NotAssociative((a, b, c))


def make_group(
    mul_table: Sequence[Sequence[int]],
    identity_hint: Optional[int] = None,
    labels: Optional[Sequence[str]] = None,
    full_check_threshold: int = FULL_CHECK_THRESHOLD,
    seed: int = 0,
) -> FiniteGroup:
    """Validate a square index table and return the group it defines."""
    n = len(mul_table)
    table = np.asarray(mul_table, dtype=np.int64)
    if table.shape != (n, n) or n == 0:
        raise ValueError(f"need a nonempty square table, got shape {table.shape}")
    if table.min() < 0 or table.max() >= n:
        raise ValueError("table entries must be indices 0..n-1")

    if identity_hint is not None:
        candidates = [identity_hint]
    else:
        candidates = list(range(n))
    identity = None
    idx = np.arange(n)
    for e in candidates:
        if np.array_equal(table[e], idx) and np.array_equal(table[:, e], idx):
            identity = e
            break
    if identity is None:
        raise NoIdentity()

    inv = []
    for a in range(n):
        hits = np.nonzero(table[a] == identity)[0]
        b = next((int(h) for h in hits if table[h, a] == identity), None)
        if b is None:
            raise NoInverse(a)
        inv.append(b)

    _check_associativity(table, full_check_threshold, seed)

    return FiniteGroup(
        order=n,
        identity=identity,
        mul=tuple(tuple(int(x) for x in row) for row in table),
        inv=tuple(inv),
        labels=tuple(labels) if labels is not None else None,
    )


# --- subgroups ---------------------------------------------------------------

@dataclass(frozen=True)
class SubgroupHandle:
    """A validated subgroup of a parent group, as a sorted member list."""

    parent: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        mem = self.members
        if list(mem) != sorted(set(mem)):
            raise NotASubgroup("members must be sorted and unique")
        mset = set(mem)
        if self.parent.identity not in mset:
            raise NotASubgroup("identity missing")
        mul = self.parent.mul
        inv = self.parent.inv
        for a in mem:
            if inv[a] not in mset:
                raise NotASubgroup(f"inverse of {a} missing")
            for b in mem:
                if mul[a][b] not in mset:
                    raise NotASubgroup(f"product {a}*{b} escapes the member set")

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, a: int) -> bool:
        return a in set(self.members)

    @property
    def is_trivial(self) -> bool:
        return len(self.members) == 1

    def is_normal(self) -> bool:
        g = self.parent
        mset = set(self.members)
        return all(
            g.conjugate(a, c) in mset for a in self.members for c in g.elements()
        )

    def as_group(self) -> tuple[FiniteGroup, "GroupHom"]:
        """Reindex the members 0..|S|-1 and return (group, inclusion hom)."""
        pos = {a: i for i, a in enumerate(self.members)}
        table = [
            [pos[self.parent.mul[a][b]] for b in self.members] for a in self.members
        ]
        grp = make_group(table, identity_hint=pos[self.parent.identity])
        incl = make_hom(grp, self.parent, self.members)
        return grp, incl


def subgroup_closure(group: FiniteGroup, seeds: Sequence[int]) -> SubgroupHandle:
    """Smallest subgroup containing the seeds, by worklist closure."""
    for s in seeds:
        if not 0 <= s < group.order:
            raise ValueError(f"seed {s} out of range for order {group.order}")
    members = {group.identity}
    queue = [group.identity]
    for s in seeds:
        if s not in members:
            members.add(s)
            queue.append(s)
    mul = group.mul
    inv = group.inv
    i = 0
    while i < len(queue):
        a = queue[i]
        i += 1
        for b in (inv[a], *[mul[a][q] for q in list(queue)]):
            if b not in members:
                members.add(b)
                queue.append(b)
        # products with a on the right, in case closure is one-sided so far
        for q in list(queue):
            c = mul[q][a]
            if c not in members:
                members.add(c)
                queue.append(c)
    return SubgroupHandle(group, tuple(sorted(members)))


# --- homomorphisms -----------------------------------------------------------

@dataclass(frozen=True)
class GroupHom:
    """A total multiplicative map between finite groups."""

    domain: FiniteGroup
    codomain: FiniteGroup
    map: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.map[a]

    @property
    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.codomain.order


def make_hom(
    domain: FiniteGroup,
    codomain: FiniteGroup,
    mapping: Sequence[int],
    full_check_threshold: int = FULL_CHECK_THRESHOLD,
    seed: int = 0,
) -> GroupHom:
    """Validate multiplicativity (exhaustive up to the threshold) and wrap."""
    n = domain.order
    if len(mapping) != n:
        raise ValueError("mapping length must equal domain order")
    m = np.asarray(mapping, dtype=np.int64)
    if m.min() < 0 or m.max() >= codomain.order:
        raise ValueError("mapping values out of codomain range")
    dt = np.asarray(domain.mul, dtype=np.int64)
    ct = np.asarray(codomain.mul, dtype=np.int64)
    if n <= full_check_threshold:
        lhs = m[dt]
        rhs = ct[np.ix_(m, m)]
        if not np.array_equal(lhs, rhs):
            a, b = map(int, np.argwhere(lhs != rhs)[0])
            raise NotAHomomorphism((a, b))
    else:
        rng = random.Random(seed)
        for _ in range(10 * n * n):
            a, b = rng.randrange(n), rng.randrange(n)
            if m[dt[a, b]] != ct[m[a], m[b]]:
                raise NotAHomomorphism((a, b))
    hom = GroupHom(domain, codomain, tuple(int(x) for x in m))
    assert hom.map[domain.identity] == codomain.identity
    return hom


def identity_hom(group: FiniteGroup) -> GroupHom:
    return GroupHom(group, group, tuple(range(group.order)))


def compose(outer: GroupHom, inner: GroupHom) -> GroupHom:
    """outer after inner."""
    if inner.codomain is not outer.domain and inner.codomain != outer.domain:
        raise ValueError("composition domains do not match")
    return GroupHom(
        inner.domain, outer.codomain, tuple(outer.map[v] for v in inner.map)
    )


def kernel(hom: GroupHom) -> SubgroupHandle:
    e = hom.codomain.identity
    members = tuple(a for a in hom.domain.elements() if hom.map[a] == e)
    return SubgroupHandle(hom.domain, members)


def image(hom: GroupHom) -> SubgroupHandle:
    # image of a hom is already closed; no closure pass needed
    return SubgroupHandle(hom.codomain, tuple(sorted(set(hom.map))))


def find_section(alpha: GroupHom) -> GroupHom:
    """Lexicographically first multiplicative right inverse of a surjection.

    Backtracks over one transversal representative per codomain element in
    ascending index order, pruning as soon as a partial assignment breaks
    multiplicativity.
    """
    b_group = alpha.codomain
    a_group = alpha.domain
    n = b_group.order
    fibers: list[list[int]] = [[] for _ in range(n)]
    for a in a_group.elements():
        fibers[alpha.map[a]].append(a)
    for b in range(n):
        if not fibers[b]:
            raise NotSurjective(b)

    assign: list[Optional[int]] = [None] * n
    bmul = b_group.mul
    amul = a_group.mul

    def consistent(b: int) -> bool:
        gb = assign[b]
        for b2 in range(b + 1):
            g2 = assign[b2]
            p = bmul[b][b2]
            if p <= b and amul[gb][g2] != assign[p]:
                return False
            p = bmul[b2][b]
            if p <= b and amul[g2][gb] != assign[p]:
                return False
        return True

    def backtrack(b: int) -> bool:
        if b == n:
            return True
        for a in fibers[b]:
            assign[b] = a
            if consistent(b) and backtrack(b + 1):
                return True
        assign[b] = None
        return False

    if not backtrack(0):
        raise NotSplit()
    gamma = make_hom(b_group, a_group, [assign[b] for b in range(n)])
    assert all(alpha.map[gamma.map[b]] == b for b in range(n))
    return gamma


class MinimalGenerators(NamedTuple):
    count: int
    witness: tuple[int, ...]


def minimal_generator_count(subgroup: SubgroupHandle) -> MinimalGenerators:
    """Smallest r with an r-tuple of members generating the subgroup.

    Searches tuple sizes 0, 1, 2, ... in ascending member order, pruning
    extensions by elements already inside the closure of the prefix (such an
    element never enlarges the generated subgroup).  Returns the first hit,
    so the witness is reproducible.
    """
    target = set(subgroup.members)
    parent = subgroup.parent
    if len(target) == 1:
        return MinimalGenerators(0, ())

    members = subgroup.members

    def search(prefix: tuple[int, ...], closed: set[int], start: int, r: int):
        if len(prefix) == r:
            return prefix if closed == target else None
        for i in range(start, len(members)):
            a = members[i]
            if a in closed:
                continue
            ext = subgroup_closure(parent, prefix + (a,))
            found = search(prefix + (a,), set(ext.members), i + 1, r)
            if found is not None:
                return found
        return None

    for r in range(1, len(members) + 1):
        found = search((), {parent.identity}, 0, r)
        if found is not None:
            return MinimalGenerators(r, found)
    raise AssertionError("members of a subgroup always generate it")


# --- products ----------------------------------------------------------------

@dataclass(frozen=True)
class DirectProduct:
    group: FiniteGroup
    proj1: GroupHom
    proj2: GroupHom

    def encode(self, a: int, b: int) -> int:
        return a * self.proj2.codomain.order + b

    def decode(self, x: int) -> tuple[int, int]:
        return divmod(x, self.proj2.codomain.order)


def direct_product(g1: FiniteGroup, g2: FiniteGroup) -> DirectProduct:
    """Componentwise product with index encoding (a, b) -> a*|G2| + b."""
    n1, n2 = g1.order, g2.order
    table = [[0] * (n1 * n2) for _ in range(n1 * n2)]
    for a1, b1 in itertools.product(range(n1), range(n2)):
        row = table[a1 * n2 + b1]
        for a2, b2 in itertools.product(range(n1), range(n2)):
            row[a2 * n2 + b2] = g1.mul[a1][a2] * n2 + g2.mul[b1][b2]
    grp = make_group(table, identity_hint=g1.identity * n2 + g2.identity)
    proj1 = make_hom(grp, g1, [x // n2 for x in range(n1 * n2)])
    proj2 = make_hom(grp, g2, [x % n2 for x in range(n1 * n2)])
    return DirectProduct(grp, proj1, proj2)


@dataclass(frozen=True)
class ActionSpec:
    """An action of `acting` on `acted` by automorphisms, one permutation
    of acted's indices per acting element."""

    acting: FiniteGroup
    acted: FiniteGroup
    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        h, k = self.acting, self.acted
        if len(self.perms) != h.order:
            raise InvalidAction("need one permutation per acting element")
        for idx, p in enumerate(self.perms):
            if sorted(p) != list(range(k.order)):
                raise InvalidAction(f"entry {idx} is not a permutation")
            for a in k.elements():
                for b in k.elements():
                    if p[k.mul[a][b]] != k.mul[p[a]][p[b]]:
                        raise InvalidAction(
                            f"entry {idx} is not an automorphism (pair {(a, b)})"
                        )
        if tuple(self.perms[h.identity]) != tuple(range(k.order)):
            raise InvalidAction("identity must act trivially")
        for h1 in h.elements():
            for h2 in h.elements():
                composed = tuple(self.perms[h1][self.perms[h2][x]] for x in range(k.order))
                if composed != tuple(self.perms[h.mul[h1][h2]]):
                    raise InvalidAction(f"not a homomorphism at pair {(h1, h2)}")


def trivial_action(acting: FiniteGroup, acted: FiniteGroup) -> ActionSpec:
    identity_perm = tuple(range(acted.order))
    return ActionSpec(acting, acted, tuple(identity_perm for _ in acting.elements()))


def inversion_action(acting: FiniteGroup, acted: FiniteGroup) -> ActionSpec:
    """Order-2 acting group inverting an abelian acted group."""
    if acting.order != 2:
        raise InvalidAction("inversion action needs an acting group of order 2")
    other = next(h for h in acting.elements() if h != acting.identity)
    perms = [None, None]
    perms[acting.identity] = tuple(range(acted.order))
    perms[other] = tuple(acted.inv)
    return ActionSpec(acting, acted, tuple(perms))


@dataclass(frozen=True)
class SemidirectProduct:
    """K x| H with elements (k, h) encoded as k*|H| + h."""

    group: FiniteGroup
    alpha: GroupHom      # projection onto H
    gamma: GroupHom      # section h -> (1, h)
    embed_k: GroupHom    # k -> (k, 1)

    def encode(self, k: int, h: int) -> int:
        return k * self.alpha.codomain.order + h

    def decode(self, x: int) -> tuple[int, int]:
        return divmod(x, self.alpha.codomain.order)


def semidirect_product(
    k_group: FiniteGroup, h_group: FiniteGroup, action: ActionSpec
) -> SemidirectProduct:
    """(k, h)(k', h') = (k * h.k', hh') with the given action of H on K."""
    if action.acting != h_group or action.acted != k_group:
        raise InvalidAction("action does not match the given factor groups")
    nk, nh = k_group.order, h_group.order
    table = [[0] * (nk * nh) for _ in range(nk * nh)]
    for k1, h1 in itertools.product(range(nk), range(nh)):
        row = table[k1 * nh + h1]
        act = action.perms[h1]
        for k2, h2 in itertools.product(range(nk), range(nh)):
            row[k2 * nh + h2] = (
                k_group.mul[k1][act[k2]] * nh + h_group.mul[h1][h2]
            )
    grp = make_group(table, identity_hint=k_group.identity * nh + h_group.identity)
    alpha = make_hom(grp, h_group, [x % nh for x in range(nk * nh)])
    gamma = make_hom(h_group, grp, [k_group.identity * nh + h for h in range(nh)])
    embed = make_hom(k_group, grp, [k * nh + h_group.identity for k in range(nk)])
    assert set(kernel(alpha).members) == set(embed.map)
    return SemidirectProduct(grp, alpha, gamma, embed)


# --- permutation realization and catalog -------------------------------------

def group_from_permutations(
    generators: Sequence[Sequence[int]],
) -> tuple[FiniteGroup, list[tuple[int, ...]]]:
    """Close a set of one-line permutations into a group.

    Elements are ordered by first discovery: start from the identity and
    repeatedly right-multiply known elements by the generators in order.
    Returns the group and the permutation realizing each element index.
    """
    if not generators:
        raise ValueError("need at least one generator permutation")
    deg = len(generators[0])
    gens = []
    for p in generators:
        if sorted(p) != list(range(deg)):
            raise ValueError(f"{p} is not a permutation of 0..{deg - 1}")
        gens.append(tuple(p))

    def mul(p, q):
        # (p * q)(i) = p(q(i))
        return tuple(p[q[i]] for i in range(deg))

    ident = tuple(range(deg))
    elems: list[tuple[int, ...]] = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elems):
        for gen in gens:
            p = mul(elems[i], gen)
            if p not in index:
                index[p] = len(elems)
                elems.append(p)
        i += 1
    table = [[index[mul(p, q)] for q in elems] for p in elems]
    labels = ["(" + " ".join(map(str, p)) + ")" for p in elems]
    return make_group(table, identity_hint=0, labels=labels), elems


def trivial_group() -> FiniteGroup:
    return make_group([[0]])


def cyclic_group(n: int) -> FiniteGroup:
    return make_group([[(a + b) % n for b in range(n)] for a in range(n)])


def klein_four_group() -> FiniteGroup:
    # xor table on {0, 1, 2, 3}
    return make_group([[a ^ b for b in range(4)] for a in range(4)])


def symmetric_group_3() -> FiniteGroup:
    grp, _ = group_from_permutations([(1, 0, 2), (1, 2, 0)])
    return grp


def dihedral_group_4() -> FiniteGroup:
    # symmetries of the square: rotation and a reflection on 4 vertices
    grp, _ = group_from_permutations([(1, 2, 3, 0), (3, 2, 1, 0)])
    return grp


def quaternion_group() -> FiniteGroup:
    # units {1, -1, i, -i, j, -j, k, -k} indexed 0..7: index 2q + s is the
    # unit u_q with sign (-1)^s, u_0..u_3 = 1, i, j, k
    unit_mul = {
        (0, 0): (0, 0), (0, 1): (1, 0), (0, 2): (2, 0), (0, 3): (3, 0),
        (1, 0): (1, 0), (1, 1): (0, 1), (1, 2): (3, 0), (1, 3): (2, 1),
        (2, 0): (2, 0), (2, 1): (3, 1), (2, 2): (0, 1), (2, 3): (1, 0),
        (3, 0): (3, 0), (3, 1): (2, 0), (3, 2): (1, 1), (3, 3): (0, 1),
    }
    table = []
    for a in range(8):
        qa, sa = divmod(a, 2)
        row = []
        for b in range(8):
            qb, sb = divmod(b, 2)
            qc, sc = unit_mul[(qa, qb)]
            row.append(2 * qc + ((sa + sb + sc) % 2))
        table.append(row)
    labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return make_group(table, identity_hint=0, labels=labels)


def catalog() -> dict[str, FiniteGroup]:
    """The small groups used throughout the tests and the CLI."""
    return {
        "trivial": trivial_group(),
        "C2": cyclic_group(2),
        "C3": cyclic_group(3),
        "C4": cyclic_group(4),
        "V4": klein_four_group(),
        "C6": cyclic_group(6),
        "S3": symmetric_group_3(),
        "D4": dihedral_group_4(),
        "Q8": quaternion_group(),
    }


def automorphism_list(group: FiniteGroup) -> list[tuple[int, ...]]:
    """All automorphisms of a small group, as permutations of its indices.

    Brute force over permutations fixing the identity; only sensible for
    order <= 8.
    """
    n = group.order
    if n > 8:
        raise ValueError("automorphism_list is brute force, order must be <= 8")
    e = group.identity
    rest = [a for a in range(n) if a != e]
    auts = []
    for imgs in itertools.permutations(rest):
        perm = [0] * n
        perm[e] = e
        for a, b in zip(rest, imgs):
            perm[a] = b
        if all(
            perm[group.mul[a][b]] == group.mul[perm[a]][perm[b]]
            for a in range(n)
            for b in range(n)
        ):
            auts.append(tuple(perm))
    return auts
