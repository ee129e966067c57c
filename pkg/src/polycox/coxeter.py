"""Finite Coxeter groups realized as Cayley graphs.

Elements are dense integer ids produced by Todd-Coxeter coset enumeration
over the trivial subgroup with relators s^2 and (st)^m_st; all queries
(length, descent, divisibility, lcm, complements, local sliding) read the
Cayley graph, so no algebraic-number arithmetic is needed even for type
H3.  The declaration order of the Coxeter matrix is the total order on
the generating set.

Canonical words are shortlex-minimal reduced expressions; their first
letter is the smallest left-divisor of the element, which is exactly the
recursion the reduction to Artin's presentation uses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import InfiniteOrUnknown, InputError, PreconditionError
from .words import DEFAULT_COSET_CAP


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric Coxeter matrix; 0 encodes an infinite entry."""

    names: tuple[str, ...]
    m: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.names)
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "m", tuple(tuple(row) for row in self.m))
        if len(set(self.names)) != n:
            raise InputError("generator names must be unique")
        if len(self.m) != n or any(len(row) != n for row in self.m):
            raise InputError("Coxeter matrix must be square")
        for i in range(n):
            if self.m[i][i] != 1:
                raise InputError("diagonal entries must be 1")
            for j in range(n):
                if self.m[i][j] != self.m[j][i]:
                    raise InputError("Coxeter matrix must be symmetric")
                if i != j and self.m[i][j] == 1:
                    raise InputError("off-diagonal entries must be >= 2 (or 0)")
                if self.m[i][j] < 0:
                    raise InputError("entries must be non-negative")

    @property
    def rank(self) -> int:
        return len(self.names)

    def submatrix(self, indices: Sequence[int]) -> "CoxeterMatrix":
        return CoxeterMatrix(
            tuple(self.names[i] for i in indices),
            tuple(tuple(self.m[i][j] for j in indices) for i in indices),
        )


def rank3_finite(m_rs: int, m_rt: int, m_st: int) -> bool:
    """Whether the rank-3 Coxeter group with these orders is finite.

    0 encodes infinity.  Finiteness is 1/m_rs + 1/m_rt + 1/m_st > 1, which
    singles out the types A3, B3, H3, A1^3 and I2(p) x A1.
    """
    if m_rs == 0 or m_rt == 0 or m_st == 0:
        return False
    a, b, c = m_rs, m_rt, m_st
    return b * c + a * c + a * b > a * b * c


def _todd_coxeter(mat: CoxeterMatrix, cap: int) -> list[list[int]]:
    """Coset table of the trivial subgroup; generators are involutions.

    HLT-style scanning with immediate coincidence handling; raises
    InfiniteOrUnknown if more than ``cap`` cosets get defined.
    """
    n = mat.rank
    relators: list[tuple[int, ...]] = [(i, i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if mat.m[i][j]:
                relators.append((i, j) * mat.m[i][j])

    table: list[list[Optional[int]]] = [[None] * n]
    parent = [0]

    def find(c: int) -> int:
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    def define(a: int, g: int) -> int:
        if len(table) >= cap:
            raise InfiniteOrUnknown(
                f"coset enumeration did not close within {cap} cosets"
            )
        b = len(table)
        table.append([None] * n)
        parent.append(b)
        table[a][g] = b
        table[b][g] = a
        return b

    def merge(a: int, b: int) -> None:
        queue = [(a, b)]
        while queue:
            x, y = queue.pop()
            x, y = find(x), find(y)
            if x == y:
                continue
            if x > y:
                x, y = y, x
            parent[y] = x
            for g in range(n):
                z = table[y][g]
                if z is None:
                    continue
                z = find(z)
                cur = table[x][g]
                if cur is None:
                    table[x][g] = z
                    if table[z][g] is None:
                        table[z][g] = x
                    else:
                        queue.append((table[z][g], x))
                else:
                    queue.append((find(cur), z))

    def scan(a: int, rel: tuple[int, ...]) -> None:
        # forward as far as defined, then fill the remaining gap
        f, i = a, 0
        while i < len(rel):
            nxt = table[f][rel[i]]
            if nxt is None:
                break
            f, i = find(nxt), i + 1
        if i == len(rel):
            if f != a:
                merge(f, a)
            return
        b, j = a, len(rel)
        while j > i:
            prv = table[b][rel[j - 1]]
            if prv is None:
                break
            b, j = find(prv), j - 1
        if j == i:
            merge(f, b)
            return
        if j == i + 1:
            g0 = rel[i]
            c = table[b][g0]
            if c is not None:
                merge(find(c), f)
            else:
                table[f][g0] = b
                table[b][g0] = f
            return
        define(f, rel[i])
        scan(a, rel)

    changed = True
    while changed:
        changed = False
        snapshot = len(table)
        a = 0
        while a < len(table):
            if find(a) == a:
                for rel in relators:
                    scan(a, rel)
                    if find(a) != a:
                        break
            a += 1
        live = [c for c in range(len(table)) if find(c) == c]
        complete = all(table[c][g] is not None for c in live for g in range(n))
        if len(table) != snapshot or not complete:
            changed = True
        if complete:
            # verify every relator closes everywhere; rescan otherwise
            ok = True
            for c in live:
                for rel in relators:
                    f = c
                    for g in rel:
                        f = find(table[f][g])
                    if f != c:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                break
            changed = True

    live = [c for c in range(len(table)) if find(c) == c]
    renum = {c: i for i, c in enumerate(live)}
    return [[renum[find(table[c][g])] for g in range(n)] for c in live]


class CoxeterGroup:
    """A finite Coxeter group with its Cayley graph and length/word data."""

    __slots__ = (
        "matrix",
        "right",
        "length",
        "word",
        "left",
        "inv",
        "_div",
        "_parabolic",
    )

    def __init__(self, matrix: CoxeterMatrix, right: list[list[int]]):
        self.matrix = matrix
        self.right = right  # right[e][s] = e * s
        size = len(right)
        n = matrix.rank
        self.length = [-1] * size
        self.word: list[tuple[int, ...]] = [()] * size
        self.length[0] = 0
        order = [0]
        for e in order:
            for s in range(n):
                f = right[e][s]
                if self.length[f] < 0:
                    self.length[f] = self.length[e] + 1
                    self.word[f] = self.word[e] + (s,)
                    order.append(f)
        if any(l < 0 for l in self.length):
            raise PreconditionError("Cayley graph is not connected")
        self.left = [[self.mult_word(right[0][s], self.word[e]) for s in range(n)] for e in range(size)]
        self.inv = [self.mult_word(0, tuple(reversed(self.word[e]))) for e in range(size)]
        self._div: Optional[list[int]] = None
        self._parabolic: dict[tuple[int, ...], tuple[int, ...]] = {}

    # -- basic arithmetic ---------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.right)

    @property
    def rank(self) -> int:
        return self.matrix.rank

    @property
    def identity(self) -> int:
        return 0

    def mult_word(self, e: int, w: Iterable[int]) -> int:
        for s in w:
            e = self.right[e][s]
        return e

    def mult(self, a: int, b: int) -> int:
        return self.mult_word(a, self.word[b])

    def generator(self, s: int) -> int:
        return self.right[0][s]

    def is_reduced_product(self, u: int, v: int) -> bool:
        """Whether l(uv) = l(u) + l(v)."""
        return self.length[self.mult(u, v)] == self.length[u] + self.length[v]

    def divides(self, u: int, v: int) -> bool:
        """Left divisibility: u <= v in the weak order."""
        w = self.mult(self.inv[u], v)
        return self.length[u] + self.length[w] == self.length[v]

    def complement(self, u: int, v: int) -> int:
        """The unique u' with u u' = v and lengths adding."""
        w = self.mult(self.inv[u], v)
        if self.length[u] + self.length[w] != self.length[v]:
            raise PreconditionError(
                f"element {self.word[u]} does not divide {self.word[v]}"
            )
        return w

    def smallest_divisor(self, u: int) -> int:
        """The least generator (in matrix order) dividing u != 1."""
        if u == self.identity:
            raise PreconditionError("the identity has no smallest divisor")
        for s in range(self.rank):
            if self.length[self.left[u][s]] < self.length[u]:
                return s
        raise PreconditionError("unreachable: non-identity with no descent")

    def divisor_mask(self, v: int) -> int:
        if self._div is None:
            self._div = [0] * self.size
            for w in range(self.size):
                mask = 0
                for u in range(self.size):
                    if self.divides(u, w):
                        mask |= 1 << u
                self._div[w] = mask
        return self._div[v]

    def gcd(self, a: int, b: int) -> int:
        """Greatest common left divisor (the weak-order meet)."""
        common = self.divisor_mask(a) & self.divisor_mask(b)
        best, best_len = 0, 0
        count_at_best = 1
        u = 0
        mask = common
        while mask:
            low = mask & -mask
            u = low.bit_length() - 1
            if self.length[u] > best_len:
                best, best_len, count_at_best = u, self.length[u], 1
            elif self.length[u] == best_len and u != best:
                count_at_best += 1
            mask ^= low
        if best_len and count_at_best != 1:
            raise PreconditionError("gcd is not unique; weak order not a lattice?")
        return best

    def lcm(self, a: int, b: int) -> int:
        """Least common right multiple, when a common multiple exists."""
        best = None
        for w in range(self.size):
            if self.divides(a, w) and self.divides(b, w):
                if best is None or self.length[w] < self.length[best]:
                    best = w
        if best is None:
            raise PreconditionError("no common multiple")
        if not (self.divides(a, best) and self.divides(b, best)):
            raise PreconditionError("lcm failure")
        return best

    # -- parabolic structure --------------------------------------------------

    def parabolic(self, gens: Iterable[int]) -> tuple[int, ...]:
        """Element ids of the standard parabolic subgroup W_I."""
        key = tuple(sorted(set(gens)))
        if key not in self._parabolic:
            seen = {0}
            queue = [0]
            for e in queue:
                for s in key:
                    f = self.right[e][s]
                    if f not in seen:
                        seen.add(f)
                        queue.append(f)
            self._parabolic[key] = tuple(sorted(seen))
        return self._parabolic[key]

    def longest_element(self, gens: Iterable[int]) -> int:
        """The longest element of the parabolic W_I (its lcm)."""
        members = self.parabolic(gens)
        best = max(members, key=lambda e: self.length[e])
        ties = [e for e in members if self.length[e] == self.length[best]]
        if len(ties) != 1:
            raise PreconditionError("longest element is not unique")
        return best

    # -- Garside normal form ---------------------------------------------------

    def delta_complement(self, u: int) -> int:
        """The complement of u in the longest element w0."""
        return self.complement(u, self.longest_element(range(self.rank)))

    def left_weighted(self, u: int, v: int) -> tuple[int, int]:
        """One local sliding: move the head of v that divides the complement
        of u across; returns an unchanged pair iff it is left-weighted."""
        g = self.gcd(self.delta_complement(u), v)
        if g == self.identity:
            return u, v
        return self.mult(u, g), self.complement(g, v)

    def is_left_weighted(self, u: int, v: int) -> bool:
        return self.gcd(self.delta_complement(u), v) == self.identity


def enumerate_group(mat: CoxeterMatrix, coset_cap: int = DEFAULT_COSET_CAP) -> CoxeterGroup:
    """Realize the Coxeter group of ``mat`` by Todd-Coxeter enumeration.

    Raises InfiniteOrUnknown when the enumeration does not close within
    the cap.
    """
    return CoxeterGroup(mat, _todd_coxeter(mat, coset_cap))


def sliding_normal_form(g: CoxeterGroup, word: Iterable[int]) -> tuple[int, ...]:
    """Normal form of a word of W-elements under local sliding.

    Identity letters are dropped; adjacent pairs are slid until every pair
    is left-weighted.
    """
    w = [e for e in word if e != g.identity]
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 2, -1, -1):
            u2, v2 = g.left_weighted(w[i], w[i + 1])
            if (u2, v2) != (w[i], w[i + 1]):
                w[i], w[i + 1] = u2, v2
                changed = True
        if g.identity in w:
            w = [e for e in w if e != g.identity]
            changed = True
    return tuple(w)


@dataclass(frozen=True)
class WElement:
    """A group element handle; arithmetic delegates to the Cayley graph."""

    group: CoxeterGroup
    id: int

    def __post_init__(self) -> None:
        if not (0 <= self.id < self.group.size):
            raise InputError(f"element id {self.id} out of range")

    @property
    def length(self) -> int:
        return self.group.length[self.id]

    def __mul__(self, other: "WElement") -> "WElement":
        _same_group(self, other)
        return WElement(self.group, self.group.mult(self.id, other.id))

    def inverse(self) -> "WElement":
        return WElement(self.group, self.group.inv[self.id])


def _same_group(u: WElement, v: WElement) -> None:
    if u.group is not v.group:
        raise InputError("elements of different groups")


def is_reduced_product(u: WElement, v: WElement) -> bool:
    _same_group(u, v)
    return u.group.is_reduced_product(u.id, v.id)


def smallest_divisor(u: WElement) -> WElement:
    s = u.group.smallest_divisor(u.id)
    return WElement(u.group, u.group.generator(s))


def complement(u: WElement, v: WElement) -> WElement:
    _same_group(u, v)
    return WElement(u.group, u.group.complement(u.id, v.id))


def longest_element(g: CoxeterGroup, gens: Iterable[int]) -> WElement:
    return WElement(g, g.longest_element(gens))


def left_weighted(g: CoxeterGroup, u: WElement, v: WElement) -> tuple[WElement, WElement]:
    a, b = g.left_weighted(u.id, v.id)
    return WElement(g, a), WElement(g, b)
