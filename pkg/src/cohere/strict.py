"""Strict objects and strict arrow terms.

A strict formula is a flat sequence of atoms (letters and functor
applications over strict formulae); the empty sequence plays the unit.
Associativity and the unit laws hold on the nose, so the monoidal
isomorphisms disappear and tensor is concatenation.  The canonical-arrow
builder below turns equality of strictifications into an explicit
isomorphism witness, which is the whole content of deciding the
endofunctor-free preorder theory.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import terms as tm
from . import theories as th
from .errors import IllTyped, NoArrow
from .formulas import ALL_GENERATORS, App, Formula, I, Letter, Tensor, Unit
from .graphs import (
    Graph,
    _codiag_graph,
    _diag_graph,
    _psi_graph,
    block_swap,
    compose_graphs,
    empty_graph,
    identity_graph,
    make_graph,
    tensor_graphs,
    under_functor,
)


class StrictAtom:
    __slots__ = ()


@dataclass(frozen=True)
class SLetter(StrictAtom):
    name: str

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class SApp(StrictAtom):
    index: int
    body: tuple

    def __repr__(self):
        return "E%d%r" % (self.index, list(self.body))


StrictFormula = tuple  # of StrictAtom


def strictify_formula(a: Formula) -> StrictFormula:
    """Flatten tensors, erase units, recurse under functor applications."""
    if isinstance(a, Letter):
        return (SLetter(a.name),)
    if isinstance(a, Unit):
        return ()
    if isinstance(a, Tensor):
        return strictify_formula(a.left) + strictify_formula(a.right)
    if isinstance(a, App):
        return (SApp(a.index, strictify_formula(a.body)),)
    raise TypeError("not a concrete formula: %r" % (a,))


def embed_atom(atom: StrictAtom) -> Formula:
    if isinstance(atom, SLetter):
        return Letter(atom.name)
    return App(atom.index, embed_formula(atom.body))


def embed_formula(s: StrictFormula) -> Formula:
    """Right-associated embedding; the empty sequence becomes I."""
    if not s:
        return I
    if len(s) == 1:
        return embed_atom(s[0])
    return Tensor(embed_atom(s[0]), embed_formula(s[1:]))


def strict_count(s: StrictFormula, mode: str) -> int:
    n = 0
    for atom in s:
        if isinstance(atom, SLetter):
            n += 1 if mode == ALL_GENERATORS else 0
        else:
            n += 1 + strict_count(atom.body, mode)
    return n


# ---------------------------------------------------------------------------
# strict arrow terms


class StrictTerm:
    __slots__ = ()

    head: str


@dataclass(frozen=True)
class SId(StrictTerm):
    at: tuple
    head = th.H_ID


@dataclass(frozen=True)
class SPsi(StrictTerm):
    index: int
    a: tuple
    b: tuple
    head = th.H_PSI


@dataclass(frozen=True)
class SPsi0(StrictTerm):
    index: int
    head = th.H_PSI0


@dataclass(frozen=True)
class SPsiL(StrictTerm):
    index: int
    a: tuple
    b: tuple
    head = th.H_PSI_L


@dataclass(frozen=True)
class SPsiR(StrictTerm):
    index: int
    a: tuple
    b: tuple
    head = th.H_PSI_R


@dataclass(frozen=True)
class SSym(StrictTerm):
    a: tuple
    b: tuple
    head = th.H_SYM


@dataclass(frozen=True)
class SDiag(StrictTerm):
    at: tuple
    head = th.H_DIAG


@dataclass(frozen=True)
class SCodiag(StrictTerm):
    at: tuple
    head = th.H_CODIAG


@dataclass(frozen=True)
class SToTerminal(StrictTerm):
    at: tuple
    head = th.H_TO_TERMINAL


@dataclass(frozen=True)
class SFromInitial(StrictTerm):
    at: tuple
    head = th.H_FROM_INITIAL


@dataclass(frozen=True)
class SComp(StrictTerm):
    after: StrictTerm
    first: StrictTerm
    head = "comp"


@dataclass(frozen=True)
class STen(StrictTerm):
    left: StrictTerm
    right: StrictTerm
    head = "ten"


@dataclass(frozen=True)
class SUnder(StrictTerm):
    index: int
    inner: StrictTerm
    head = "under"


def s_ten(f: StrictTerm, g: StrictTerm) -> StrictTerm:
    if isinstance(f, SId) and isinstance(g, SId):
        return SId(f.at + g.at)
    return STen(f, g)


def s_under(index: int, f: StrictTerm) -> StrictTerm:
    if isinstance(f, SId):
        return SId((SApp(index, f.at),))
    return SUnder(index, f)


def s_comp(g: StrictTerm, f: StrictTerm) -> StrictTerm:
    if isinstance(f, SId):
        return g
    if isinstance(g, SId):
        return f
    return SComp(g, f)


def strict_source_target(t: StrictTerm):
    """(source, target) of a strict term; tensor is concatenation."""
    if isinstance(t, SId):
        return t.at, t.at
    if isinstance(t, SPsi):
        return (SApp(t.index, t.a), SApp(t.index, t.b)), (SApp(t.index, t.a + t.b),)
    if isinstance(t, SPsi0):
        return (), (SApp(t.index, ()),)
    if isinstance(t, SPsiL):
        return (SApp(t.index, t.a),) + t.b, (SApp(t.index, t.a + t.b),)
    if isinstance(t, SPsiR):
        return t.a + (SApp(t.index, t.b),), (SApp(t.index, t.a + t.b),)
    if isinstance(t, SSym):
        return t.a + t.b, t.b + t.a
    if isinstance(t, SDiag):
        return t.at, t.at + t.at
    if isinstance(t, SCodiag):
        return t.at + t.at, t.at
    if isinstance(t, SToTerminal):
        return t.at, ()
    if isinstance(t, SFromInitial):
        return (), t.at
    if isinstance(t, SComp):
        gsrc, gtgt = strict_source_target(t.after)
        fsrc, ftgt = strict_source_target(t.first)
        if ftgt != gsrc:
            raise IllTyped("strict composition interface mismatch: %r vs %r" % (ftgt, gsrc))
        return fsrc, gtgt
    if isinstance(t, STen):
        lsrc, ltgt = strict_source_target(t.left)
        rsrc, rtgt = strict_source_target(t.right)
        return lsrc + rsrc, ltgt + rtgt
    if isinstance(t, SUnder):
        src, tgt = strict_source_target(t.inner)
        return (SApp(t.index, src),), (SApp(t.index, tgt),)
    raise TypeError("not a strict term: %r" % (t,))


def strict_graph(t: StrictTerm, mode: str) -> Graph:
    cnt = lambda s: strict_count(s, mode)
    if isinstance(t, SId):
        return identity_graph(cnt(t.at))
    if isinstance(t, SPsi):
        return _psi_graph(cnt(t.a), cnt(t.b))
    if isinstance(t, SPsi0):
        return empty_graph(0, 1)
    if isinstance(t, SPsiL):
        return identity_graph(1 + cnt(t.a) + cnt(t.b))
    if isinstance(t, SPsiR):
        na, nb = cnt(t.a), cnt(t.b)
        pairs = {(na, 0)} | {(k, k + 1) for k in range(na)}
        pairs |= {(na + 1 + k, na + 1 + k) for k in range(nb)}
        return make_graph(1 + na + nb, 1 + na + nb, pairs)
    if isinstance(t, SSym):
        return block_swap(cnt(t.a), cnt(t.b))
    if isinstance(t, SDiag):
        return _diag_graph(cnt(t.at))
    if isinstance(t, SCodiag):
        return _codiag_graph(cnt(t.at))
    if isinstance(t, SToTerminal):
        return empty_graph(cnt(t.at), 0)
    if isinstance(t, SFromInitial):
        return empty_graph(0, cnt(t.at))
    if isinstance(t, SComp):
        strict_source_target(t)
        return compose_graphs(strict_graph(t.first, mode), strict_graph(t.after, mode))
    if isinstance(t, STen):
        return tensor_graphs(strict_graph(t.left, mode), strict_graph(t.right, mode))
    if isinstance(t, SUnder):
        return under_functor(strict_graph(t.inner, mode))
    raise TypeError("not a strict term: %r" % (t,))


def strict_heads(t: StrictTerm):
    if isinstance(t, SComp):
        yield from strict_heads(t.after)
        yield from strict_heads(t.first)
    elif isinstance(t, STen):
        yield from strict_heads(t.left)
        yield from strict_heads(t.right)
    elif isinstance(t, SUnder):
        yield from strict_heads(t.inner)
    elif not isinstance(t, SId):
        yield t


def strictify_term(t: tm.ArrowTerm) -> StrictTerm:
    """Strictify: the monoidal isomorphisms become identities, everything
    else maps structurally with strictified indices."""
    if isinstance(t, tm.Id):
        return SId(strictify_formula(t.at))
    if isinstance(t, (tm.Assoc, tm.AssocInv)):
        return SId(strictify_formula(t.a) + strictify_formula(t.b) + strictify_formula(t.c))
    if isinstance(t, (tm.LUnit, tm.LUnitInv, tm.RUnit, tm.RUnitInv)):
        return SId(strictify_formula(t.at))
    if isinstance(t, tm.Sym):
        return SSym(strictify_formula(t.a), strictify_formula(t.b))
    if isinstance(t, tm.Psi):
        return SPsi(t.index, strictify_formula(t.a), strictify_formula(t.b))
    if isinstance(t, tm.Psi0):
        return SPsi0(t.index)
    if isinstance(t, tm.PsiL):
        return SPsiL(t.index, strictify_formula(t.a), strictify_formula(t.b))
    if isinstance(t, tm.PsiR):
        return SPsiR(t.index, strictify_formula(t.a), strictify_formula(t.b))
    if isinstance(t, tm.Diag):
        return SDiag(strictify_formula(t.at))
    if isinstance(t, tm.Codiag):
        return SCodiag(strictify_formula(t.at))
    if isinstance(t, tm.ToTerminal):
        return SToTerminal(strictify_formula(t.at))
    if isinstance(t, tm.FromInitial):
        return SFromInitial(strictify_formula(t.at))
    if isinstance(t, tm.Comp):
        return s_comp(strictify_term(t.after), strictify_term(t.first))
    if isinstance(t, tm.Ten):
        return s_ten(strictify_term(t.left), strictify_term(t.right))
    if isinstance(t, tm.Under):
        return s_under(t.index, strictify_term(t.inner))
    raise TypeError("cannot strictify %r" % (t,))


# ---------------------------------------------------------------------------
# the canonical isomorphism of the preorder theory


def _merge_arrow(sl: StrictFormula, sr: StrictFormula) -> tm.ArrowTerm:
    """embed(sl) ⊗ embed(sr) → embed(sl ++ sr), from a, l, r only."""
    if not sl:
        return tm.LUnit(embed_formula(sr))
    if not sr:
        return tm.RUnit(embed_formula(sl))
    if len(sl) == 1:
        return tm.Id(Tensor(embed_formula(sl), embed_formula(sr)))
    head, rest = sl[0], sl[1:]
    return tm.Comp(
        tm.Ten(tm.Id(embed_atom(head)), _merge_arrow(rest, sr)),
        tm.Assoc(embed_atom(head), embed_formula(rest), embed_formula(sr)),
    )


def to_canonical(a: Formula) -> tm.ArrowTerm:
    """An arrow a → embed(strictify(a)) built from 1, a, l, r, ⊗, E."""
    if isinstance(a, (Letter, Unit)):
        return tm.Id(a)
    if isinstance(a, App):
        return tm.Under(a.index, to_canonical(a.body))
    if isinstance(a, Tensor):
        f = to_canonical(a.left)
        g = to_canonical(a.right)
        merge = _merge_arrow(strictify_formula(a.left), strictify_formula(a.right))
        return tm.Comp(merge, tm.Ten(f, g))
    raise TypeError("not a concrete formula: %r" % (a,))


def canonical_iso(a: Formula, b: Formula) -> tm.ArrowTerm:
    """The canonical arrow a → b of the preorder theory, when one exists.

    Raises NoArrow when the strictifications differ.
    """
    if strictify_formula(a) != strictify_formula(b):
        raise NoArrow("%r and %r have different strictifications" % (a, b))
    down = to_canonical(a)
    up = tm.invert(to_canonical(b))
    return tm.Comp(up, down)
