"""Preference orders with ties, weighted profiles, and their text format.

An order is either *ranked* (an ordered partition of the candidates into
indifference groups, i.e. a weak order) or an arbitrary pairwise relation
(possibly cyclic, possibly with ties) for "irrational" voters. The pairwise
relation is the universal carrier; the ranked group view exists exactly when
the relation is transitive with transitive indifference.

Candidates are opaque strings. Lexicographic order over identifiers is the
canonical tiebreak throughout the package.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from enum import Enum


class ParseError(ValueError):
    """Malformed order or profile text."""


class MalformedOrderError(ParseError):
    pass


class UnknownCandidateError(ParseError):
    pass


class DuplicateCandidateError(ParseError):
    pass


class EmptyGroupError(ParseError):
    pass


class MissingCandidateError(ParseError):
    pass


class IrrationalOrderError(ValueError):
    """A ranked (weak order) view was required but the order is irrational."""


class CapExceededError(RuntimeError):
    """An enumeration or search exceeded its configured size cap."""


class OrderKind(Enum):
    TOTAL = "total"
    TOP = "top"
    BOTTOM = "bottom"
    WEAK = "weak"
    IRRATIONAL = "irrational"


_NAME_RE = re.compile(r"^[^\s>{},:~\[\]]+$")


def _require_name(name: str) -> str:
    if not _NAME_RE.match(name):
        raise MalformedOrderError(f"invalid candidate name: {name!r}")
    return name


class Order:
    """A single voter's preferences over a fixed candidate set.

    Construct with :meth:`ranked` (groups of tied candidates, best first),
    :meth:`pairwise` (one entry per unordered candidate pair), or
    :func:`parse_order`. Instances are immutable and hashable.
    """

    __slots__ = ("candidates", "groups", "_rel", "_levels", "_hash")

    def __init__(self, candidates, rel, groups):
        self.candidates = candidates  # sorted tuple of names
        self._rel = rel  # {(x, y): -1|0|1} with x < y; 1 means x preferred
        self.groups = groups  # tuple of frozensets, or None when irrational
        self._levels = None
        self._hash = hash((candidates, tuple(sorted(rel.items()))))

    @classmethod
    def ranked(cls, groups) -> "Order":
        """Build a weak order from indifference groups, most preferred first."""
        gs = []
        seen: set = set()
        for g in groups:
            g = frozenset(g)
            if not g:
                raise EmptyGroupError("empty indifference group")
            dup = seen & g
            if dup:
                raise DuplicateCandidateError(f"candidate ranked twice: {sorted(dup)[0]}")
            seen |= g
            gs.append(g)
        if not gs:
            raise EmptyGroupError("an order needs at least one group")
        candidates = tuple(sorted(seen))
        level = {c: i for i, g in enumerate(gs) for c in g}
        rel = {}
        for x, y in itertools.combinations(candidates, 2):
            lx, ly = level[x], level[y]
            rel[(x, y)] = 0 if lx == ly else (1 if lx < ly else -1)
        return cls(candidates, rel, tuple(gs))

    @classmethod
    def pairwise(cls, candidates, relation) -> "Order":
        """Build an order from a pairwise relation.

        ``relation`` maps ordered pairs ``(x, y)`` to ``1`` (x over y), ``-1``
        (y over x) or ``0`` (tie); every unordered pair of distinct candidates
        must appear exactly once. Transitive relations come out ranked,
        anything else is irrational.
        """
        cands = tuple(sorted(set(candidates)))
        rel: dict = {}
        for (x, y), v in relation.items():
            if x == y:
                raise ValueError(f"self-pair {x!r}")
            if x not in cands or y not in cands:
                raise ValueError(f"pair ({x!r}, {y!r}) outside the candidate set")
            if v not in (-1, 0, 1):
                raise ValueError(f"pair value must be -1, 0 or 1, got {v!r}")
            key, vv = ((x, y), v) if x < y else ((y, x), -v)
            if key in rel:
                raise ValueError(f"pair {key} specified twice")
            rel[key] = vv
        if len(rel) != len(cands) * (len(cands) - 1) // 2:
            raise ValueError("every unordered candidate pair needs exactly one entry")
        return cls(cands, rel, _groups_from_rel(cands, rel))

    def prefers(self, x: str, y: str) -> int:
        """+1 if x is strictly preferred to y, -1 if y to x, 0 if tied."""
        if x == y:
            return 0
        return self._rel[(x, y)] if x < y else -self._rel[(y, x)]

    @property
    def is_ranked(self) -> bool:
        return self.groups is not None

    def levels(self) -> dict:
        """Candidate -> indifference-group index (0 = most preferred)."""
        if self.groups is None:
            raise IrrationalOrderError(f"order {self} has no ranked view")
        if self._levels is None:
            self._levels = {c: i for i, g in enumerate(self.groups) for c in g}
        return self._levels

    def is_total(self) -> bool:
        return self.groups is not None and all(len(g) == 1 for g in self.groups)

    def is_top(self) -> bool:
        """All tied candidates ranked last: every group but the last is a singleton."""
        return self.groups is not None and all(len(g) == 1 for g in self.groups[:-1])

    def is_bottom(self) -> bool:
        """All tied candidates ranked first: every group but the first is a singleton."""
        return self.groups is not None and all(len(g) == 1 for g in self.groups[1:])

    def is_weak(self) -> bool:
        return self.groups is not None

    def __eq__(self, other):
        return (
            isinstance(other, Order)
            and self.candidates == other.candidates
            and self._rel == other._rel
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Order({format_order(self)!r})"

    def __str__(self):
        return format_order(self)


def _groups_from_rel(cands, rel):
    """Recover the group view of a pairwise relation, or None if irrational."""
    wins = {c: 0 for c in cands}
    for (x, y), v in rel.items():
        if v > 0:
            wins[x] += 1
        elif v < 0:
            wins[y] += 1
    by_wins: dict = {}
    for c in cands:
        by_wins.setdefault(wins[c], set()).add(c)
    groups = tuple(frozenset(by_wins[w]) for w in sorted(by_wins, reverse=True))
    level = {c: i for i, g in enumerate(groups) for c in g}
    for (x, y), v in rel.items():
        lx, ly = level[x], level[y]
        if v != (0 if lx == ly else (1 if lx < ly else -1)):
            return None
    return groups


def classify(order: Order) -> OrderKind:
    """Most specific kind of an order.

    The fully tied order is both a top and a bottom order; it classifies as
    Top. Use the ``is_top``/``is_bottom`` predicates when the overlap matters.
    """
    if not order.is_ranked:
        return OrderKind.IRRATIONAL
    if order.is_total():
        return OrderKind.TOTAL
    if order.is_top():
        return OrderKind.TOP
    if order.is_bottom():
        return OrderKind.BOTTOM
    return OrderKind.WEAK


def satisfies_kind(order: Order, kind: OrderKind) -> bool:
    """Kind membership respecting the hierarchy (a total order is also top, bottom and weak)."""
    if kind is OrderKind.TOTAL:
        return order.is_total()
    if kind is OrderKind.TOP:
        return order.is_top()
    if kind is OrderKind.BOTTOM:
        return order.is_bottom()
    if kind is OrderKind.WEAK:
        return order.is_weak()
    if kind is OrderKind.IRRATIONAL:
        return True
    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# Order text grammar
#
#   ranked:    GROUP (">" GROUP)*        GROUP := NAME | "{" NAME ("," NAME)* "}"
#   pairwise:  "[" ENTRY ("," ENTRY)* "]"  ENTRY := NAME ">" NAME | NAME "~" NAME
#
# Whitespace is insignificant. Serialization is canonical: tied groups list
# their members sorted, pairwise entries are sorted by pair.
# ---------------------------------------------------------------------------


def parse_order(text: str, candidates) -> Order:
    """Parse an order over the given candidate set."""
    cands = frozenset(candidates)
    stripped = text.strip()
    if not stripped:
        raise MalformedOrderError("empty order text")
    if stripped.startswith("["):
        return _parse_pairwise(stripped, cands)
    groups = []
    seen: set = set()
    for part in stripped.split(">"):
        part = part.strip()
        if not part:
            raise EmptyGroupError(f"empty group in order: {text!r}")
        if part.startswith("{"):
            if not part.endswith("}"):
                raise MalformedOrderError(f"unterminated group: {part!r}")
            names = [s.strip() for s in part[1:-1].split(",")]
            if names == [""]:
                raise EmptyGroupError(f"empty group in order: {text!r}")
        else:
            names = [part]
        group = []
        for name in names:
            if not name:
                raise MalformedOrderError(f"missing name in group: {part!r}")
            _require_name(name)
            if name not in cands:
                raise UnknownCandidateError(f"unknown candidate: {name!r}")
            if name in seen:
                raise DuplicateCandidateError(f"candidate ranked twice: {name!r}")
            seen.add(name)
            group.append(name)
        groups.append(group)
    missing = cands - seen
    if missing:
        raise MissingCandidateError(f"order does not rank: {sorted(missing)}")
    return Order.ranked(groups)


_PAIR_RE = re.compile(r"^([^\s>~]+)\s*(>|~)\s*([^\s>~]+)$")


def _parse_pairwise(text: str, cands: frozenset) -> Order:
    if not text.endswith("]"):
        raise MalformedOrderError(f"unterminated pairwise order: {text!r}")
    relation: dict = {}
    body = text[1:-1].strip()
    entries = [e.strip() for e in body.split(",")] if body else []
    for entry in entries:
        m = _PAIR_RE.match(entry)
        if not m:
            raise MalformedOrderError(f"bad pairwise entry: {entry!r}")
        x, op, y = m.group(1), m.group(2), m.group(3)
        for name in (x, y):
            _require_name(name)
            if name not in cands:
                raise UnknownCandidateError(f"unknown candidate: {name!r}")
        if x == y:
            raise MalformedOrderError(f"self-comparison: {entry!r}")
        key = (x, y) if x < y else (y, x)
        if key in relation:
            raise DuplicateCandidateError(f"pair {key} listed twice")
        relation[key] = 0 if op == "~" else (1 if (x, y) == key else -1)
    expected = len(cands) * (len(cands) - 1) // 2
    if len(relation) != expected:
        raise MissingCandidateError("pairwise order must cover every candidate pair")
    return Order.pairwise(cands, relation)


def format_order(order: Order) -> str:
    """Canonical text for an order; round-trips through parse_order."""
    if order.is_ranked:
        parts = []
        for g in order.groups:
            names = sorted(g)
            parts.append(names[0] if len(names) == 1 else "{" + ",".join(names) + "}")
        return " > ".join(parts)
    entries = []
    for x, y in itertools.combinations(order.candidates, 2):
        v = order.prefers(x, y)
        entries.append(f"{x}>{y}" if v > 0 else (f"{y}>{x}" if v < 0 else f"{x}~{y}"))
    return "[" + ", ".join(entries) + "]"


# ---------------------------------------------------------------------------
# Profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeightedProfile:
    """A candidate set plus (order, positive integer weight) voters."""

    candidates: tuple
    voters: tuple

    def __post_init__(self):
        cands = tuple(sorted(set(self.candidates)))
        if not cands:
            raise ValueError("a profile needs at least one candidate")
        voters = []
        for order, weight in self.voters:
            if not isinstance(weight, int) or isinstance(weight, bool) or weight < 1:
                raise ValueError(f"voter weight must be a positive integer, got {weight!r}")
            if order.candidates != cands:
                raise ValueError(
                    f"voter order over {order.candidates} does not match profile candidates {cands}"
                )
            voters.append((order, weight))
        object.__setattr__(self, "candidates", cands)
        object.__setattr__(self, "voters", tuple(voters))

    @property
    def total_weight(self) -> int:
        return sum(w for _, w in self.voters)

    def all_ranked(self) -> bool:
        return all(order.is_ranked for order, _ in self.voters)


# An axis is a total order over the candidate set, as a tuple of names.
Axis = tuple


def check_axis(axis, candidates) -> tuple:
    """Validate that axis is a permutation of the candidate set."""
    axis = tuple(axis)
    if len(axis) != len(set(axis)) or set(axis) != set(candidates):
        raise ValueError(f"axis {axis} is not a permutation of {tuple(sorted(candidates))}")
    return axis


def _lackner_ok(order: Order, axis) -> bool:
    lev = order.levels()
    seq = [lev[c] for c in axis]
    fell = False
    for prev, cur in zip(seq, seq[1:]):
        if cur > prev:
            fell = True  # preference strictly decreased
        elif cur < prev and fell:
            return False  # ...and later strictly increased
    return True


def order_single_peaked(order: Order, axis) -> bool:
    """Single-vote form of the Lackner test; the order must be ranked."""
    if not order.is_ranked:
        raise IrrationalOrderError("single-peakedness is undefined for irrational votes")
    return _lackner_ok(order, axis)


def is_single_peaked_lackner(profile: WeightedProfile, axis) -> bool:
    """No voter's preference strictly falls and later strictly rises along the axis."""
    axis = check_axis(axis, profile.candidates)
    return all(order_single_peaked(order, axis) for order, _ in profile.voters)


def is_single_peaked_black(profile: WeightedProfile, axis) -> bool:
    """Every voter strictly rises to a peak and then strictly falls along the axis."""
    axis = check_axis(axis, profile.candidates)
    for order, _ in profile.voters:
        if not order.is_total():
            raise ValueError("Black single-peakedness is defined for total orders only")
        lev = order.levels()
        seq = [lev[c] for c in axis]
        peak = seq.index(min(seq))
        for i in range(peak):
            if not seq[i] > seq[i + 1]:
                return False
        for i in range(peak, len(seq) - 1):
            if not seq[i] < seq[i + 1]:
                return False
    return True


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def _order_sort_key(order: Order):
    return tuple(tuple(sorted(g)) for g in order.groups)


def enumerate_weak_orders(candidates, max_candidates: int = 6) -> list:
    """All weak orders (ordered set partitions) over the candidates, sorted.

    The count is the ordered Bell number: 1, 3, 13, 75, 541, 4683 for one
    through six candidates.
    """
    cands = tuple(sorted(set(candidates)))
    if len(cands) > max_candidates:
        raise CapExceededError(
            f"{len(cands)} candidates exceeds the enumeration cap {max_candidates}"
        )
    partitions: list = []

    def rec(remaining: frozenset, prefix: list):
        if not remaining:
            partitions.append(list(prefix))
            return
        items = tuple(sorted(remaining))
        for size in range(1, len(items) + 1):
            for grp in itertools.combinations(items, size):
                prefix.append(grp)
                rec(remaining - frozenset(grp), prefix)
                prefix.pop()

    rec(frozenset(cands), [])
    orders = [Order.ranked(gs) for gs in partitions]
    orders.sort(key=_order_sort_key)
    return orders


def enumerate_orders(candidates, kind: OrderKind, max_candidates: int = 6) -> list:
    """All orders of the given (hierarchy-respecting) kind, sorted."""
    if kind is OrderKind.IRRATIONAL:
        return enumerate_pairwise_relations(candidates, max_candidates=max_candidates)
    return [o for o in enumerate_weak_orders(candidates, max_candidates) if satisfies_kind(o, kind)]


def enumerate_pairwise_relations(candidates, max_candidates: int = 4) -> list:
    """All pairwise relations (3 states per pair), ranked and irrational alike."""
    cands = tuple(sorted(set(candidates)))
    if len(cands) > max_candidates:
        raise CapExceededError(
            f"{len(cands)} candidates exceeds the pairwise enumeration cap {max_candidates}"
        )
    pairs = list(itertools.combinations(cands, 2))
    out = []
    for values in itertools.product((1, 0, -1), repeat=len(pairs)):
        out.append(Order.pairwise(cands, dict(zip(pairs, values))))
    return out


def enumerate_single_peaked_votes(axis, kind: OrderKind, max_candidates: int = 6) -> list:
    """All orders of the given kind that are single-peaked along the axis."""
    if kind not in (OrderKind.TOTAL, OrderKind.TOP, OrderKind.WEAK):
        raise ValueError(f"single-peaked enumeration is not defined for kind {kind.value!r}")
    axis = check_axis(axis, set(axis))
    return [o for o in enumerate_orders(axis, kind, max_candidates) if _lackner_ok(o, axis)]


# ---------------------------------------------------------------------------
# Profile text format
#
#   # comment lines start with '#'
#   candidates: a,b,c
#   2: a > {b,c}          one voter per line, "WEIGHT:" optional (default 1)
#   b > a > c
# ---------------------------------------------------------------------------

_WEIGHT_LINE_RE = re.compile(r"^(\d+)\s*:\s*(.+)$")


def parse_profile(text: str) -> WeightedProfile:
    """Parse the profile file format; raises ParseError with line locations."""
    candidates = None
    voters = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if candidates is None:
            if not line.startswith("candidates:"):
                raise ParseError(f"line {lineno}: expected a 'candidates:' header")
            names = [s.strip() for s in line[len("candidates:") :].split(",")]
            if names == [""]:
                raise ParseError(f"line {lineno}: empty candidate list")
            for name in names:
                _require_name(name)
            if len(names) != len(set(names)):
                raise DuplicateCandidateError(f"line {lineno}: duplicate candidate name")
            candidates = tuple(sorted(names))
            continue
        m = _WEIGHT_LINE_RE.match(line)
        weight, order_text = (int(m.group(1)), m.group(2)) if m else (1, line)
        if weight < 1:
            raise ParseError(f"line {lineno}: voter weight must be positive")
        try:
            voters.append((parse_order(order_text, candidates), weight))
        except ParseError as exc:
            raise type(exc)(f"line {lineno}: {exc}") from None
    if candidates is None:
        raise ParseError("missing 'candidates:' header")
    return WeightedProfile(candidates, voters)


def format_profile(profile: WeightedProfile) -> str:
    """Canonical profile text; parse_profile(format_profile(p)) == p."""
    lines = ["candidates: " + ",".join(profile.candidates)]
    lines.extend(f"{w}: {format_order(order)}" for order, w in profile.voters)
    return "\n".join(lines) + "\n"
