"""Composite 2-cells of the free (2,1)-category over a 2-polygraph.

A path is a source word plus a sequence of signed, positioned rule
applications.  Equality of 2-cells modulo the exchange relations and
inverse cancellation is decided through a canonical form: adjacent
mutually-inverse steps cancel, and adjacent steps acting on disjoint
factors are reordered so the leftmost-acting step comes first (with
offsets re-derived when the earlier step changes the word length).
Two steps commute exactly when their redex intervals against the common
ambient word are disjoint.

Intermediate words are not stored; they are recomputed on demand and
memoized per path.
"""

from __future__ import annotations

from typing import Callable, NamedTuple, Optional, Union

from .errors import CompositionError, NonterminationError, StepError
from .words import (
    DEFAULT_STEP_BUDGET,
    Polygraph2,
    Word,
    apply_step,
    find_redexes,
)


class Step2(NamedTuple):
    """One whiskered rule application: rule id, direction, letter offset."""

    rule: int
    dir: int  # +1 forward, -1 reverse
    pos: int


class Path2:
    """A composite 2-cell: a source word and a chain of steps.

    Instances are immutable by convention; ``words()`` caches the chain of
    intermediate words and validates every step against it.
    """

    __slots__ = ("pg", "source", "steps", "_chain")

    def __init__(self, pg: Polygraph2, source, steps=()):
        self.pg = pg
        self.source: Word = tuple(source)
        self.steps: tuple[Step2, ...] = tuple(Step2(*s) for s in steps)
        self._chain: Optional[tuple[Word, ...]] = None

    def words(self) -> tuple[Word, ...]:
        """All intermediate words, source first, target last."""
        if self._chain is None:
            chain = [self.source]
            w = self.source
            for s in self.steps:
                w = apply_step(w, self.pg, s.rule, s.pos, s.dir)
                chain.append(w)
            self._chain = tuple(chain)
        return self._chain

    @property
    def target(self) -> Word:
        return self.words()[-1]

    def io_lengths(self, s: Step2) -> tuple[int, int]:
        """(consumed, produced) letter counts of a step."""
        rule = self.pg.rules[s.rule]
        return (
            (len(rule.lhs), len(rule.rhs))
            if s.dir > 0
            else (len(rule.rhs), len(rule.lhs))
        )

    def __len__(self) -> int:
        return len(self.steps)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Path2)
            and self.source == other.source
            and self.steps == other.steps
        )

    def __hash__(self) -> int:
        return hash((self.source, self.steps))

    def __repr__(self) -> str:
        return f"Path2({self.pg.word_str(self.source)!r}, {list(self.steps)!r})"


def identity_path(pg: Polygraph2, w) -> Path2:
    return Path2(pg, w, ())


def compose(f: Path2, g: Path2) -> Path2:
    """The 1-composite f then g; requires target(f) = source(g)."""
    if f.pg is not g.pg:
        raise CompositionError("paths over different polygraphs")
    if f.target != g.source:
        raise CompositionError(
            f"cannot compose: target {f.target} != source {g.source}"
        )
    return Path2(f.pg, f.source, f.steps + g.steps)


def inverse(f: Path2) -> Path2:
    """Steps reversed with directions negated; source = target(f).

    The rewritten factor starts at the same offset on both sides of a
    step, so positions carry over unchanged.
    """
    steps = tuple(Step2(s.rule, -s.dir, s.pos) for s in reversed(f.steps))
    return Path2(f.pg, f.target, steps)


def whisker(u, f: Path2, v) -> Path2:
    """The 0-composite u.f.v: every step shifts right by len(u)."""
    u, v = tuple(u), tuple(v)
    shift = len(u)
    steps = tuple(Step2(s.rule, s.dir, s.pos + shift) for s in f.steps)
    return Path2(f.pg, u + f.source + v, steps)


def _interval(path_like: Path2, s: Step2) -> tuple[int, int]:
    a, _ = path_like.io_lengths(s)
    return (s.pos, s.pos + a)


def normalize_path(f: Path2) -> Path2:
    """Canonical representative of f's 2-cell in the free (2,1)-category.

    Repeats to a fixed point: (a) adjacent mutually-inverse steps cancel;
    (b) when of two adjacent steps the later one acts entirely to the left
    of the earlier one's redex, they are swapped, re-deriving the offset of
    the step that crosses over.
    """
    steps = list(f.steps)
    changed = True
    while changed:
        changed = False
        i = 0
        while i + 1 <= len(steps) - 1:
            s1, s2 = steps[i], steps[i + 1]
            a1, b1 = f.io_lengths(s1)
            a2, b2 = f.io_lengths(s2)
            # cancellation: s2 exactly undoes s1
            if s2.rule == s1.rule and s2.dir == -s1.dir and s2.pos == s1.pos:
                del steps[i : i + 2]
                changed = True
                i = max(i - 1, 0)
                continue
            # s2 acts right of s1's output: canonical already
            if s2.pos >= s1.pos + b1:
                i += 1
                continue
            # s2 acts entirely left of s1's redex: swap
            if s2.pos + a2 <= s1.pos:
                steps[i] = Step2(s2.rule, s2.dir, s2.pos)
                steps[i + 1] = Step2(s1.rule, s1.dir, s1.pos + (b2 - a2))
                changed = True
                i = max(i - 1, 0)
                continue
            i += 1
    return Path2(f.pg, f.source, steps)


def paths_equal(f: Path2, g: Path2) -> bool:
    """Equality of 2-cells modulo exchange and inverse cancellation."""
    if f.source != g.source or f.target != g.target:
        return False
    return normalize_path(f).steps == normalize_path(g).steps


Strategy = Union[str, Callable[[Word, list[tuple[int, int]]], tuple[int, int]]]


def _choose(strategy: Strategy, w: Word, redexes: list[tuple[int, int]]) -> tuple[int, int]:
    if strategy == "leftmost":
        return min(redexes, key=lambda ri: (ri[1], ri[0]))
    if strategy == "rightmost":
        return max(redexes, key=lambda ri: (ri[1], -ri[0]))
    if callable(strategy):
        return strategy(w, redexes)
    raise ValueError(f"unknown strategy {strategy!r}")


def normalize(
    w,
    p: Polygraph2,
    strategy: Strategy = "leftmost",
    budget: Optional[int] = None,
    memo: Optional[dict] = None,
) -> tuple[Word, Path2]:
    """Reduce ``w`` to a normal form, returning (normal form, path).

    The default strategy picks the leftmost redex, lowest rule id on ties.
    The step budget turns nontermination into a diagnosable error; the
    caller remains responsible for supplying a terminating polygraph.
    ``memo`` maps already-normalized words to their paths and must be
    discarded whenever the rule set changes.
    """
    w = p.check_word(w)
    if memo is not None and w in memo:
        path = memo[w]
        return path.target, path
    limit = DEFAULT_STEP_BUDGET if budget is None else budget
    steps: list[Step2] = []
    seen: list[Word] = [w]
    cur = w
    while True:
        if memo is not None and cur in memo and cur is not w:
            tail = memo[cur]
            steps.extend(tail.steps)
            cur = tail.target
            break
        redexes = find_redexes(cur, p)
        if not redexes:
            break
        if len(steps) >= limit:
            raise NonterminationError(
                f"no normal form for {p.word_str(w)} within {limit} steps"
            )
        r, i = _choose(strategy, cur, redexes)
        steps.append(Step2(r, 1, i))
        cur = apply_step(cur, p, r, i, 1)
        seen.append(cur)
    path = Path2(p, w, steps)
    if memo is not None:
        memo[w] = path
        # every suffix of the reduction is itself a reduction
        for k in range(1, len(seen) - 1):
            word_k = seen[k]
            if word_k not in memo:
                memo[word_k] = Path2(p, word_k, steps[k:])
    return cur, path
