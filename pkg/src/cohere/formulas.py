"""Objects of the free categories: formulae over letters, the unit I,
the binary tensor and a family of endofunctor applications E^i.

Generator occurrences (letters and E-applications) are numbered 0-based,
left to right, as they appear in the fully parenthesised written form;
that numbering is what the graph semantics uses for strand positions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadOccurrence

FUNCTORS_ONLY = "functors"
ALL_GENERATORS = "generators"

DIVERSIFIED_OBJECTS = "objects"
DIVERSIFIED_FUNCTORS = "functors"
DIVERSIFIED_BOTH = "both"


class Formula:
    __slots__ = ()

    def __mul__(self, other: "Formula") -> "Formula":
        return Tensor(self, other)


@dataclass(frozen=True)
class Letter(Formula):
    name: str

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class Unit(Formula):
    def __repr__(self):
        return "I"


@dataclass(frozen=True)
class Tensor(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return "(%r * %r)" % (self.left, self.right)


@dataclass(frozen=True)
class App(Formula):
    index: int
    body: Formula

    def __repr__(self):
        return "E%d %r" % (self.index, self.body)


@dataclass(frozen=True)
class MVar(Formula):
    """Formula metavariable; legal only inside equation schemes."""

    name: str

    def __repr__(self):
        return "?" + self.name


I = Unit()


def letters(names: str):
    """Convenience: ``letters("p q r")`` returns a tuple of Letter objects."""
    return tuple(Letter(n) for n in names.split())


def subformulas(a: Formula):
    yield a
    if isinstance(a, Tensor):
        yield from subformulas(a.left)
        yield from subformulas(a.right)
    elif isinstance(a, App):
        yield from subformulas(a.body)


def contains_unit(a: Formula) -> bool:
    return any(isinstance(s, Unit) for s in subformulas(a))


def contains_mvar(a: Formula) -> bool:
    return any(isinstance(s, MVar) for s in subformulas(a))


def count_occurrences(a: Formula, mode: str = FUNCTORS_ONLY) -> int:
    """Number of generator occurrences of ``a`` under the given counting mode.

    FUNCTORS_ONLY counts E-applications; ALL_GENERATORS counts letters too.
    The unit contributes nothing in either mode.
    """
    if isinstance(a, Letter):
        return 1 if mode == ALL_GENERATORS else 0
    if isinstance(a, Unit):
        return 0
    if isinstance(a, Tensor):
        return count_occurrences(a.left, mode) + count_occurrences(a.right, mode)
    if isinstance(a, App):
        return 1 + count_occurrences(a.body, mode)
    raise TypeError("not a concrete formula: %r" % (a,))


def generator_occurrences(a: Formula):
    """All generator occurrences of ``a`` in written order.

    Returns a list of (path, node) pairs where node is a Letter or App and
    path addresses it from the root (0 = left/body, 1 = right).  The list
    index is the occurrence number used by scope_of and the graph strands.
    """
    out = []

    def walk(node, path):
        if isinstance(node, Letter):
            out.append((path, node))
        elif isinstance(node, App):
            out.append((path, node))
            walk(node.body, path + (0,))
        elif isinstance(node, Tensor):
            walk(node.left, path + (0,))
            walk(node.right, path + (1,))

    walk(a, ())
    return out


def scope_of(b: Formula, occ: int):
    """Generator occurrences lying inside the body of the App at occurrence ``occ``.

    Returns a set of occurrence indices into generator_occurrences(b).
    """
    occs = generator_occurrences(b)
    if occ < 0 or occ >= len(occs):
        raise BadOccurrence("occurrence %d out of range" % occ)
    path, node = occs[occ]
    if not isinstance(node, App):
        raise BadOccurrence("occurrence %d is %r, not a functor application" % (occ, node))
    inside = set()
    for j, (p, _n) in enumerate(occs):
        if j != occ and p[: len(path)] == path:
            inside.add(j)
    return inside


def is_diversified(a: Formula, mode: str = DIVERSIFIED_BOTH) -> bool:
    """True iff each generating object / functor index occurs at most once."""
    seen_letters = set()
    seen_indices = set()
    for _path, node in generator_occurrences(a):
        if isinstance(node, Letter) and mode in (DIVERSIFIED_OBJECTS, DIVERSIFIED_BOTH):
            if node.name in seen_letters:
                return False
            seen_letters.add(node.name)
        elif isinstance(node, App) and mode in (DIVERSIFIED_FUNCTORS, DIVERSIFIED_BOTH):
            if node.index in seen_indices:
                return False
            seen_indices.add(node.index)
    return True


def letter_sequence(a: Formula):
    """Letter names in written order."""
    return tuple(n.name for _p, n in generator_occurrences(a) if isinstance(n, Letter))


def functor_index_sequence(a: Formula):
    """Functor indices in written order."""
    return tuple(n.index for _p, n in generator_occurrences(a) if isinstance(n, App))


def fresh_functor_index(*formulas: Formula) -> int:
    """An index not used by any E occurrence of the given formulae."""
    used = set()
    for a in formulas:
        used.update(functor_index_sequence(a))
    i = 1
    while i in used:
        i += 1
    return i
