"""Developed arrow terms over strict formulae, as sequences of events.

A factor (single-head strict term) is represented by what it does to the
running strict formula:

  MergeEvent(i, path, pos, middles)
      the contraction step: in the body addressed by ``path`` the atoms
      at ``pos`` and ``pos + middles + 1`` are E^i applications that merge
      into one, hopping over ``middles`` intervening atoms (middles = 0 is
      the plain preservation arrow, middles > 0 the symmetry-assisted one).
  InsertEvent(i, path, gap)
      the unit preservation step: a fresh E^i [] atom appears at ``gap``.
  SwapEvent(path, pos)
      an atomized symmetry: the atoms at ``pos`` and ``pos + 1`` exchange.

Addresses are tuples of atom indices; ``path`` addresses a (possibly
nested) body, ``path + (k,)`` addresses the atom at index k inside it.
Because every event touches whole atoms, coordinates of independent
events transport through one another mechanically; that transport is
what lets the normaliser permute factors without symbolic matching.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IllTyped, NotPsiFactor
from .formulas import FUNCTORS_ONLY
from .strict import (
    SApp,
    SComp,
    SId,
    SLetter,
    SPsi,
    SPsi0,
    SSym,
    STen,
    SUnder,
    StrictTerm,
    s_comp,
    s_ten,
    s_under,
    strict_count,
    strict_graph,
    strict_source_target,
)
from .graphs import Graph, compose_graphs, identity_graph


class Event:
    __slots__ = ()


@dataclass(frozen=True)
class MergeEvent(Event):
    index: int
    path: tuple
    pos: int
    middles: int = 0

    def second(self) -> int:
        return self.pos + self.middles + 1


@dataclass(frozen=True)
class InsertEvent(Event):
    index: int
    path: tuple
    gap: int


@dataclass(frozen=True)
class SwapEvent(Event):
    path: tuple
    pos: int


# ---------------------------------------------------------------------------
# formula surgery


def body_at(formula: tuple, path: tuple) -> tuple:
    body = formula
    for idx in path:
        atom = body[idx]
        if not isinstance(atom, SApp):
            raise IllTyped("path %r descends into a letter" % (path,))
        body = atom.body
    return body


def replace_body(formula: tuple, path: tuple, new_body: tuple) -> tuple:
    if not path:
        return new_body
    idx = path[0]
    atom = formula[idx]
    inner = replace_body(atom.body, path[1:], new_body)
    return formula[:idx] + (SApp(atom.index, inner),) + formula[idx + 1:]


def apply_event(ev: Event, formula: tuple) -> tuple:
    body = body_at(formula, ev.path)
    if isinstance(ev, MergeEvent):
        second = ev.second()
        if second >= len(body):
            raise IllTyped("merge span %d..%d exceeds body of %d atoms" % (ev.pos, second, len(body)))
        first_atom, second_atom = body[ev.pos], body[second]
        if (
            not isinstance(first_atom, SApp)
            or not isinstance(second_atom, SApp)
            or first_atom.index != ev.index
            or second_atom.index != ev.index
        ):
            raise IllTyped("merge at %r:%d does not face two E%d atoms" % (ev.path, ev.pos, ev.index))
        merged = SApp(ev.index, first_atom.body + second_atom.body)
        new = body[: ev.pos] + (merged,) + body[ev.pos + 1: second] + body[second + 1:]
    elif isinstance(ev, InsertEvent):
        if not (0 <= ev.gap <= len(body)):
            raise IllTyped("insertion gap %d outside body of %d atoms" % (ev.gap, len(body)))
        new = body[: ev.gap] + (SApp(ev.index, ()),) + body[ev.gap:]
    elif isinstance(ev, SwapEvent):
        if ev.pos + 1 >= len(body):
            raise IllTyped("swap at %d exceeds body of %d atoms" % (ev.pos, len(body)))
        new = body[: ev.pos] + (body[ev.pos + 1], body[ev.pos]) + body[ev.pos + 2:]
    else:
        raise TypeError("unknown event %r" % (ev,))
    return replace_body(formula, ev.path, new)


def apply_events(events, formula: tuple) -> tuple:
    for ev in events:
        formula = apply_event(ev, formula)
    return formula


def event_term(ev: Event, formula: tuple) -> StrictTerm:
    """The factor as a strict term acting on ``formula``."""
    body = body_at(formula, ev.path)
    if isinstance(ev, MergeEvent):
        second = ev.second()
        first_atom, second_atom = body[ev.pos], body[second]
        core = SPsi(ev.index, first_atom.body, second_atom.body)
        if ev.middles:
            mids = body[ev.pos + 1: second]
            core = SComp(
                STen(core, SId(mids)),
                STen(SId((first_atom,)), SSym(mids, (second_atom,))),
            )
        span = ev.middles + 2
        pos = ev.pos
    elif isinstance(ev, InsertEvent):
        core = SPsi0(ev.index)
        span = 0
        pos = ev.gap
    else:
        core = SSym((body[ev.pos],), (body[ev.pos + 1],))
        span = 2
        pos = ev.pos
    term = core
    if pos > 0:
        term = s_ten(SId(body[:pos]), term)
    if pos + span < len(body):
        term = s_ten(term, SId(body[pos + span:]))
    for depth in range(len(ev.path) - 1, -1, -1):
        parent = body_at(formula, ev.path[:depth])
        idx = ev.path[depth]
        term = s_under(parent[idx].index, term)
        if idx > 0:
            term = s_ten(SId(parent[:idx]), term)
        if idx + 1 < len(parent):
            term = s_ten(term, SId(parent[idx + 1:]))
    return term


def event_graph(ev: Event, formula: tuple, mode: str) -> Graph:
    return strict_graph(event_term(ev, formula), mode)


def strand_position(formula: tuple, path: tuple, pos: int, mode: str) -> int:
    """Strand index of the atom at path+(pos,): generators written before it."""
    n = 0
    body = formula
    for idx in path:
        n += sum(_atom_count(a, mode) for a in body[:idx])
        n += 1
        body = body[idx].body
    n += sum(_atom_count(a, mode) for a in body[:pos])
    return n


def _atom_count(atom, mode):
    if isinstance(atom, SLetter):
        return 1 if mode != FUNCTORS_ONLY else 0
    return 1 + strict_count(atom.body, mode)


# ---------------------------------------------------------------------------
# coordinate transport


def map_atom(ev: Event, formula: tuple, addr: tuple, forward: bool = True) -> tuple:
    """Transport an atom address through an event (on ``formula``)."""
    path = ev.path
    k = len(path)
    if len(addr) <= k or addr[:k] != path:
        return addr
    j = addr[k]
    rest = addr[k + 1:]
    if isinstance(ev, MergeEvent):
        second = ev.second()
        s1 = len(body_at(formula, path)[ev.pos].body)
        if forward:
            if j < ev.pos or (ev.pos < j < second and True):
                return addr
            if j == ev.pos:
                return addr
            if j == second:
                if not rest:
                    return path + (ev.pos,)
                return path + (ev.pos, rest[0] + s1) + rest[1:]
            return path + (j - 1,) + rest
        else:
            if j < ev.pos or (ev.pos < j <= ev.pos + ev.middles):
                return addr
            if j == ev.pos:
                if not rest or rest[0] < s1:
                    return addr
                return path + (second, rest[0] - s1) + rest[1:]
            return path + (j + 1,) + rest
    if isinstance(ev, InsertEvent):
        if forward:
            if j >= ev.gap:
                return path + (j + 1,) + rest
            return addr
        else:
            if j == ev.gap and not rest:
                raise ValueError("address of the freshly created atom has no preimage")
            if j > ev.gap:
                return path + (j - 1,) + rest
            if j == ev.gap:
                raise ValueError("address inside the freshly created atom has no preimage")
            return addr
    if isinstance(ev, SwapEvent):
        if j == ev.pos:
            return path + (ev.pos + 1,) + rest
        if j == ev.pos + 1:
            return path + (ev.pos,) + rest
        return addr
    raise TypeError("unknown event %r" % (ev,))


def map_gap(ev: Event, formula: tuple, body: tuple, gap: int, forward: bool = True):
    """Transport a (body address, gap index) pair through an event."""
    path = ev.path
    if body == path:
        if isinstance(ev, MergeEvent):
            second = ev.second()
            if forward:
                return (body, gap if gap <= second else gap - 1)
            return (body, gap if gap <= second else gap + 1)
        if isinstance(ev, InsertEvent):
            if forward:
                return (body, gap + 1 if gap >= ev.gap else gap)
            if gap > ev.gap:
                return (body, gap - 1)
            return (body, gap)
        if isinstance(ev, SwapEvent):
            return (body, gap)
    # the gap lives in some deeper or unrelated body: transport its address
    if isinstance(ev, MergeEvent):
        second_addr = ev.path + (ev.second(),)
        if body[: len(second_addr)] == second_addr:
            s1 = len(body_at(formula, ev.path)[ev.pos].body)
            if forward:
                if len(body) == len(second_addr):
                    return (ev.path + (ev.pos,), gap + s1)
                new_body = map_atom(ev, formula, body, forward=True)
                return (new_body, gap)
            raise ValueError("backward gap transport out of a merged body is context dependent")
        merged_addr = ev.path + (ev.pos,)
        if not forward and body == merged_addr:
            # a gap inside the merged body splits between the two halves
            s1 = len(body_at(formula, ev.path)[ev.pos].body)
            if gap <= s1:
                return (body, gap)
            return (ev.path + (ev.second(),), gap - s1)
    new_body = map_atom(ev, formula, body, forward=forward)
    return (new_body, gap)


def transport_event(moved: Event, through: Event, formula: tuple, forward: bool) -> Event:
    """Recoordinate ``moved`` across ``through`` (which acts on ``formula``).

    Only sound when the two events do not consume each other's atoms; the
    interaction rules in the normaliser screen those cases out first.
    """
    if isinstance(moved, MergeEvent):
        first = map_atom(through, formula, moved.path + (moved.pos,), forward)
        second = map_atom(through, formula, moved.path + (moved.second(),), forward)
        if first[:-1] != second[:-1] or not second[-1] > first[-1]:
            raise ValueError("merge coordinates torn apart by transport")
        return MergeEvent(moved.index, first[:-1], first[-1], second[-1] - first[-1] - 1)
    if isinstance(moved, SwapEvent):
        a = map_atom(through, formula, moved.path + (moved.pos,), forward)
        b = map_atom(through, formula, moved.path + (moved.pos + 1,), forward)
        if a[:-1] != b[:-1] or b[-1] != a[-1] + 1:
            raise ValueError("swap coordinates torn apart by transport")
        return SwapEvent(a[:-1], a[-1])
    if isinstance(moved, InsertEvent):
        body, gap = map_gap(through, formula, moved.path, moved.gap, forward)
        return InsertEvent(moved.index, body, gap)
    raise TypeError("unknown event %r" % (moved,))


def block_swap_events(path: tuple, offset: int, left: int, right: int):
    """Adjacent transpositions realising the block exchange
    [L1..Lleft, R1..Rright] -> [R.., L..] at ``offset`` inside ``path``."""
    events = []
    for t in range(right):
        for s in range(left):
            events.append(SwapEvent(path, offset + left - 1 - s + t))
    return events


# ---------------------------------------------------------------------------
# developed terms and factors


@dataclass(frozen=True)
class Factor:
    """A single-head factor: the strict formula it acts on plus its event."""

    source: tuple
    event: Event

    @property
    def term(self) -> StrictTerm:
        return event_term(self.event, self.source)

    @property
    def target(self) -> tuple:
        return apply_event(self.event, self.source)

    @property
    def head_kind(self) -> str:
        if isinstance(self.event, MergeEvent):
            return "Psi" if self.event.middles else "psi"
        if isinstance(self.event, InsertEvent):
            return "psi0"
        return "c"

    def graph(self, mode: str) -> Graph:
        return event_graph(self.event, self.source, mode)

    def __repr__(self):
        return "Factor(%r on %r)" % (self.event, list(self.source))


@dataclass(frozen=True)
class Developed:
    source: tuple
    target: tuple
    factors: tuple

    def events(self):
        return tuple(f.event for f in self.factors)


def _develop_events(t: StrictTerm):
    """(source, local event list) for a strict term; identities vanish and
    tensors split by the interchange law, left factors first."""
    if isinstance(t, SId):
        return t.at, []
    if isinstance(t, SComp):
        fsrc, fev = _develop_events(t.first)
        gsrc, gev = _develop_events(t.after)
        return fsrc, fev + gev
    if isinstance(t, STen):
        lsrc, lev = _develop_events(t.left)
        rsrc, rev = _develop_events(t.right)
        _, ltgt = strict_source_target(t.left)
        # left factors run first; the right ones then see the finished left
        # part, whose length is that of the left target
        out = list(lev) + [_shift_event(ev, (), len(ltgt)) for ev in rev]
        return lsrc + rsrc, out
    if isinstance(t, SUnder):
        isrc, iev = _develop_events(t.inner)
        return (SApp(t.index, isrc),), [_shift_event(ev, (0,), 0) for ev in iev]
    if isinstance(t, SPsi):
        return strict_source_target(t)[0], [MergeEvent(t.index, (), 0, 0)]
    if isinstance(t, SPsi0):
        return (), [InsertEvent(t.index, (), 0)]
    if isinstance(t, SSym):
        src = t.a + t.b
        return src, block_swap_events((), 0, len(t.a), len(t.b))
    raise NotPsiFactor("head %r has no developed form here" % (t,))


def _shift_event(ev: Event, prefix: tuple, offset: int) -> Event:
    if ev.path:
        new_path = prefix + (ev.path[0] + offset,) + ev.path[1:]
        if isinstance(ev, MergeEvent):
            return MergeEvent(ev.index, new_path, ev.pos, ev.middles)
        if isinstance(ev, InsertEvent):
            return InsertEvent(ev.index, new_path, ev.gap)
        return SwapEvent(new_path, ev.pos)
    if isinstance(ev, MergeEvent):
        return MergeEvent(ev.index, prefix, ev.pos + offset, ev.middles)
    if isinstance(ev, InsertEvent):
        return InsertEvent(ev.index, prefix, ev.gap + offset)
    return SwapEvent(prefix, ev.pos + offset)


def develop(t: StrictTerm) -> Developed:
    """Flatten composition and split parallel heads into single-head factors."""
    src, tgt = strict_source_target(t)
    src2, events = _develop_events(t)
    if src2 != src:
        raise IllTyped("develop changed the source: %r vs %r" % (src2, src))
    factors = []
    formula = src
    for ev in events:
        factors.append(Factor(formula, ev))
        formula = apply_event(ev, formula)
    if formula != tgt:
        raise IllTyped("developed factors end at %r, expected %r" % (formula, tgt))
    return Developed(src, tgt, tuple(factors))


def factors_to_term(source: tuple, events) -> StrictTerm:
    """Compose the factor terms back; the empty sequence is the identity."""
    term = SId(source)
    formula = source
    for ev in events:
        term = s_comp(event_term(ev, formula), term)
        formula = apply_event(ev, formula)
    return term


def kappa(f: Factor, mode: str = FUNCTORS_ONLY) -> int:
    """Strand where a contraction factor's merged functor occurrence sits:
    the count of generators written strictly left of its head."""
    if not isinstance(f.event, MergeEvent):
        raise NotPsiFactor("kappa of a %s-factor" % f.head_kind)
    return strand_position(f.source, f.event.path, f.event.pos, mode)


def tau(d: Developed, j: int, mode: str = FUNCTORS_ONLY) -> int:
    """Final strand of factor j's merged occurrence: kappa pushed through
    the graphs of the remaining factors."""
    f = d.factors[j]
    k = kappa(f, mode)
    suffix = identity_graph(strict_count(f.target, mode))
    for g in d.factors[j + 1:]:
        suffix = compose_graphs(suffix, g.graph(mode))
    image = suffix.image(k)
    if len(image) != 1:
        raise NotPsiFactor("suffix graph is not functional at strand %d" % k)
    return next(iter(image))


def big_psi(index: int, a1: tuple, a2: tuple, b: tuple) -> StrictTerm:
    """The symmetry-assisted contraction E^iA1 ⊗ B ⊗ E^iA2 → E^i(A1 A2) ⊗ B;
    with B empty it is the plain contraction arrow."""
    if not b:
        return SPsi(index, a1, a2)
    ea1 = SApp(index, a1)
    ea2 = SApp(index, a2)
    return SComp(
        STen(SPsi(index, a1, a2), SId(b)),
        STen(SId((ea1,)), SSym(b, (ea2,))),
    )
