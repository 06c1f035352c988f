"""Graphs: finite relations between ordinals, and the functor sending
arrow terms to graphs.

A graph records, strand by strand, which generator occurrences of the
source feed each generator occurrence of the target.  Strand positions
follow the left-to-right occurrence numbering of the formula module.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import terms as tm
from . import theories as th
from .errors import SizeMismatch
from .formulas import count_occurrences


@dataclass(frozen=True)
class Graph:
    source_size: int
    target_size: int
    pairs: frozenset
    kind: str

    def sorted_pairs(self):
        return sorted(self.pairs)

    def image(self, i):
        return {j for (s, j) in self.pairs if s == i}

    def preimage(self, j):
        return {s for (s, t) in self.pairs if t == j}

    def converse(self) -> "Graph":
        return make_graph(self.target_size, self.source_size, {(j, i) for (i, j) in self.pairs})

    def to_json(self):
        return {
            "source": self.source_size,
            "target": self.target_size,
            "pairs": [list(p) for p in self.sorted_pairs()],
            "kind": self.kind,
        }

    def __repr__(self):
        body = ", ".join("%d->%s" % (i, j) for i, j in self.sorted_pairs())
        return "Graph(%d->%d, {%s}, %s)" % (self.source_size, self.target_size, body, self.kind)


def classify(source_size: int, target_size: int, pairs) -> str:
    """Strongest applicable kind tag for the given pair set."""
    by_source = {}
    for i, j in pairs:
        by_source.setdefault(i, set()).add(j)
    total = all(i in by_source for i in range(source_size))
    single = all(len(v) == 1 for v in by_source.values())
    if not (total and single):
        return th.RELATION
    targets = [next(iter(by_source[i])) for i in range(source_size)]
    injective = len(set(targets)) == len(targets)
    surjective = set(targets) == set(range(target_size))
    if injective and surjective:
        if all(targets[i] == i for i in range(source_size)):
            return th.IDENTITY
        return th.BIJECTION
    return th.FUNCTION


def make_graph(source_size: int, target_size: int, pairs) -> Graph:
    pairs = frozenset(pairs)
    for i, j in pairs:
        if not (0 <= i < source_size and 0 <= j < target_size):
            raise ValueError("pair (%d,%d) outside %d -> %d" % (i, j, source_size, target_size))
    return Graph(source_size, target_size, pairs, classify(source_size, target_size, pairs))


def identity_graph(n: int) -> Graph:
    return make_graph(n, n, {(i, i) for i in range(n)})


def empty_graph(source_size: int, target_size: int) -> Graph:
    return make_graph(source_size, target_size, ())


def block_swap(n_left: int, n_right: int) -> Graph:
    pairs = {(k, n_right + k) for k in range(n_left)}
    pairs |= {(n_left + k, k) for k in range(n_right)}
    return make_graph(n_left + n_right, n_left + n_right, pairs)


def compose_graphs(f: Graph, g: Graph) -> Graph:
    """Relational composition, f applied first."""
    if f.target_size != g.source_size:
        raise SizeMismatch(
            "cannot compose %d->%d with %d->%d"
            % (f.source_size, f.target_size, g.source_size, g.target_size)
        )
    mid = {}
    for i, j in f.pairs:
        mid.setdefault(j, set()).add(i)
    pairs = set()
    for j, k in g.pairs:
        for i in mid.get(j, ()):
            pairs.add((i, k))
    return make_graph(f.source_size, g.target_size, pairs)


def tensor_graphs(f: Graph, g: Graph) -> Graph:
    pairs = set(f.pairs)
    pairs |= {(f.source_size + i, f.target_size + j) for (i, j) in g.pairs}
    return make_graph(f.source_size + g.source_size, f.target_size + g.target_size, pairs)


def under_functor(f: Graph) -> Graph:
    """One new strand fixed at position 0; the inner graph shifts by one."""
    pairs = {(0, 0)} | {(i + 1, j + 1) for (i, j) in f.pairs}
    return make_graph(f.source_size + 1, f.target_size + 1, pairs)


def _psi_graph(na: int, nb: int) -> Graph:
    """E A ⊗ E B → E(A ⊗ B): both outer strands land on the merged one."""
    pairs = {(0, 0), (1 + na, 0)}
    pairs |= {(1 + k, 1 + k) for k in range(na)}
    pairs |= {(2 + na + k, 1 + na + k) for k in range(nb)}
    return make_graph(2 + na + nb, 1 + na + nb, pairs)


def _psi_r_graph(na: int, nb: int) -> Graph:
    """A ⊗ E B → E(A ⊗ B): the outer strand crosses leftward over A."""
    pairs = {(na, 0)}
    pairs |= {(k, k + 1) for k in range(na)}
    pairs |= {(na + 1 + k, na + 1 + k) for k in range(nb)}
    return make_graph(1 + na + nb, 1 + na + nb, pairs)


def _diag_graph(n: int) -> Graph:
    pairs = {(k, k) for k in range(n)} | {(k, n + k) for k in range(n)}
    return make_graph(n, 2 * n, pairs)


def _codiag_graph(n: int) -> Graph:
    pairs = {(k, k) for k in range(n)} | {(n + k, k) for k in range(n)}
    return make_graph(2 * n, n, pairs)


@lru_cache(maxsize=None)
def _graph_of_checked(t: tm.ArrowTerm, theory: th.Theory) -> Graph:
    mode = theory.counting_mode
    cnt = lambda a: count_occurrences(a, mode)
    if isinstance(t, tm.Comp):
        return compose_graphs(_graph_of_checked(t.first, theory), _graph_of_checked(t.after, theory))
    if isinstance(t, tm.Ten):
        return tensor_graphs(_graph_of_checked(t.left, theory), _graph_of_checked(t.right, theory))
    if isinstance(t, tm.Under):
        return under_functor(_graph_of_checked(t.inner, theory))
    if isinstance(t, tm.Id):
        return identity_graph(cnt(t.at))
    if isinstance(t, (tm.Assoc, tm.AssocInv)):
        return identity_graph(cnt(t.a) + cnt(t.b) + cnt(t.c))
    if isinstance(t, (tm.LUnit, tm.LUnitInv, tm.RUnit, tm.RUnitInv)):
        return identity_graph(cnt(t.at))
    if isinstance(t, tm.Sym):
        return block_swap(cnt(t.a), cnt(t.b))
    if isinstance(t, tm.Psi):
        return _psi_graph(cnt(t.a), cnt(t.b))
    if isinstance(t, tm.Psi0):
        return empty_graph(0, 1)
    if isinstance(t, tm.PsiL):
        return identity_graph(1 + cnt(t.a) + cnt(t.b))
    if isinstance(t, tm.PsiR):
        return _psi_r_graph(cnt(t.a), cnt(t.b))
    if isinstance(t, tm.Diag):
        return _diag_graph(cnt(t.at))
    if isinstance(t, tm.Codiag):
        return _codiag_graph(cnt(t.at))
    if isinstance(t, tm.ToTerminal):
        return empty_graph(cnt(t.at), 0)
    if isinstance(t, tm.FromInitial):
        return empty_graph(0, cnt(t.at))
    raise TypeError("no graph clause for %r" % (t,))


def graph_of(t: tm.ArrowTerm, theory: th.Theory) -> Graph:
    """The graph of a well-typed term; typing errors propagate."""
    tm.source_target(t, theory)
    return _graph_of_checked(t, theory)


def detect_short_circuits(h: Graph, f: Graph):
    """Strand pairs with a common origin through ``h`` that ``f`` re-merges.

    ``h`` and ``f`` are the two halves of a composite f ∘ h; the result lists
    the pairs (i, j), i < j, of interface strands with a shared h-preimage
    whose f-images meet.
    """
    if h.target_size != f.source_size:
        raise SizeMismatch(
            "halves do not meet: %d->%d then %d->%d"
            % (h.source_size, h.target_size, f.source_size, f.target_size)
        )
    out = []
    for i in range(f.source_size):
        pre_i = h.preimage(i)
        if not pre_i:
            continue
        for j in range(i + 1, f.source_size):
            if pre_i & h.preimage(j):
                if f.image(i) & f.image(j):
                    out.append((i, j))
    return out


def detect_useless_crossings(h: Graph, f: Graph):
    """Like short circuits, but the downstream images cross back downward:
    every f-image of j lies strictly below every f-image of i."""
    if h.target_size != f.source_size:
        raise SizeMismatch(
            "halves do not meet: %d->%d then %d->%d"
            % (h.source_size, h.target_size, f.source_size, f.target_size)
        )
    out = []
    for i in range(f.source_size):
        pre_i = h.preimage(i)
        if not pre_i:
            continue
        img_i = f.image(i)
        if not img_i:
            continue
        for j in range(i + 1, f.source_size):
            if not (pre_i & h.preimage(j)):
                continue
            img_j = f.image(j)
            if img_j and max(img_j) < min(img_i):
                out.append((i, j))
    return out


def to_dot(g: Graph, name: str = "graph") -> str:
    """Strand diagram as DOT, source row above target row."""
    lines = ["digraph %s {" % name, "  rankdir=TB;", "  node [shape=point];"]
    lines.append("  { rank=source; %s }" % " ".join("s%d;" % i for i in range(g.source_size)))
    lines.append("  { rank=sink; %s }" % " ".join("t%d;" % j for j in range(g.target_size)))
    for i in range(g.source_size):
        lines.append('  s%d [xlabel="%d"];' % (i, i))
    for j in range(g.target_size):
        lines.append('  t%d [xlabel="%d"];' % (j, j))
    for i, j in g.sorted_pairs():
        lines.append("  s%d -> t%d [arrowhead=none];" % (i, j))
    lines.append("}")
    return "\n".join(lines)
