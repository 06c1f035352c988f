"""Arrow terms of the free categories and their typing.

A term is a tree over the primitive heads (identity, the monoidal
isomorphisms and their inverses, symmetry, the endofunctor preservation
arrows, diagonal/codiagonal, the terminal/initial arrows) closed under
composition, tensor and functor application.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import theories as th
from .errors import HeadNotInTheory, IllTyped, UnitForbidden
from .formulas import App, Formula, I, MVar, Tensor, contains_unit


class ArrowTerm:
    __slots__ = ()

    head: str

    def __mul__(self, other: "ArrowTerm") -> "ArrowTerm":
        return Ten(self, other)


@dataclass(frozen=True)
class Id(ArrowTerm):
    at: Formula
    head = th.H_ID


@dataclass(frozen=True)
class Assoc(ArrowTerm):
    a: Formula
    b: Formula
    c: Formula
    head = th.H_ASSOC


@dataclass(frozen=True)
class AssocInv(ArrowTerm):
    a: Formula
    b: Formula
    c: Formula
    head = th.H_ASSOC_INV


@dataclass(frozen=True)
class LUnit(ArrowTerm):
    at: Formula
    head = th.H_LUNIT


@dataclass(frozen=True)
class LUnitInv(ArrowTerm):
    at: Formula
    head = th.H_LUNIT_INV


@dataclass(frozen=True)
class RUnit(ArrowTerm):
    at: Formula
    head = th.H_RUNIT


@dataclass(frozen=True)
class RUnitInv(ArrowTerm):
    at: Formula
    head = th.H_RUNIT_INV


@dataclass(frozen=True)
class Sym(ArrowTerm):
    a: Formula
    b: Formula
    head = th.H_SYM


@dataclass(frozen=True)
class Psi(ArrowTerm):
    index: int
    a: Formula
    b: Formula
    head = th.H_PSI


@dataclass(frozen=True)
class Psi0(ArrowTerm):
    index: int
    head = th.H_PSI0


@dataclass(frozen=True)
class PsiL(ArrowTerm):
    index: int
    a: Formula
    b: Formula
    head = th.H_PSI_L


@dataclass(frozen=True)
class PsiR(ArrowTerm):
    index: int
    a: Formula
    b: Formula
    head = th.H_PSI_R


@dataclass(frozen=True)
class Diag(ArrowTerm):
    at: Formula
    head = th.H_DIAG


@dataclass(frozen=True)
class Codiag(ArrowTerm):
    at: Formula
    head = th.H_CODIAG


@dataclass(frozen=True)
class ToTerminal(ArrowTerm):
    at: Formula
    head = th.H_TO_TERMINAL


@dataclass(frozen=True)
class FromInitial(ArrowTerm):
    at: Formula
    head = th.H_FROM_INITIAL


@dataclass(frozen=True)
class Comp(ArrowTerm):
    after: ArrowTerm
    first: ArrowTerm
    head = "comp"


@dataclass(frozen=True)
class Ten(ArrowTerm):
    left: ArrowTerm
    right: ArrowTerm
    head = "ten"


@dataclass(frozen=True)
class Under(ArrowTerm):
    index: int
    inner: ArrowTerm
    head = "under"


@dataclass(frozen=True)
class AVar(ArrowTerm):
    """Arrow metavariable with formula-template endpoints; schemes only."""

    name: str
    src: Formula
    tgt: Formula
    head = "avar"


@dataclass(frozen=True)
class TypePair:
    source: Formula
    target: Formula


PRIMITIVE_HEAD_CLASSES = (
    Id, Assoc, AssocInv, LUnit, LUnitInv, RUnit, RUnitInv, Sym,
    Psi, Psi0, PsiL, PsiR, Diag, Codiag, ToTerminal, FromInitial,
)


def head_boundary(t: ArrowTerm) -> TypePair:
    """Source and target of a primitive head, with no theory checks."""
    if isinstance(t, Id):
        return TypePair(t.at, t.at)
    if isinstance(t, Assoc):
        return TypePair(Tensor(Tensor(t.a, t.b), t.c), Tensor(t.a, Tensor(t.b, t.c)))
    if isinstance(t, AssocInv):
        return TypePair(Tensor(t.a, Tensor(t.b, t.c)), Tensor(Tensor(t.a, t.b), t.c))
    if isinstance(t, LUnit):
        return TypePair(Tensor(I, t.at), t.at)
    if isinstance(t, LUnitInv):
        return TypePair(t.at, Tensor(I, t.at))
    if isinstance(t, RUnit):
        return TypePair(Tensor(t.at, I), t.at)
    if isinstance(t, RUnitInv):
        return TypePair(t.at, Tensor(t.at, I))
    if isinstance(t, Sym):
        return TypePair(Tensor(t.a, t.b), Tensor(t.b, t.a))
    if isinstance(t, Psi):
        ea, eb = App(t.index, t.a), App(t.index, t.b)
        return TypePair(Tensor(ea, eb), App(t.index, Tensor(t.a, t.b)))
    if isinstance(t, Psi0):
        return TypePair(I, App(t.index, I))
    if isinstance(t, PsiL):
        return TypePair(Tensor(App(t.index, t.a), t.b), App(t.index, Tensor(t.a, t.b)))
    if isinstance(t, PsiR):
        return TypePair(Tensor(t.a, App(t.index, t.b)), App(t.index, Tensor(t.a, t.b)))
    if isinstance(t, Diag):
        return TypePair(t.at, Tensor(t.at, t.at))
    if isinstance(t, Codiag):
        return TypePair(Tensor(t.at, t.at), t.at)
    if isinstance(t, ToTerminal):
        return TypePair(t.at, I)
    if isinstance(t, FromInitial):
        return TypePair(I, t.at)
    raise TypeError("not a primitive head: %r" % (t,))


def subterms(t: ArrowTerm):
    yield t
    if isinstance(t, Comp):
        yield from subterms(t.after)
        yield from subterms(t.first)
    elif isinstance(t, Ten):
        yield from subterms(t.left)
        yield from subterms(t.right)
    elif isinstance(t, Under):
        yield from subterms(t.inner)


def index_formulas(t: ArrowTerm):
    """The formulae occurring as indices of heads in ``t``."""
    for s in subterms(t):
        if isinstance(s, PRIMITIVE_HEAD_CLASSES):
            for name in ("at", "a", "b", "c"):
                f = getattr(s, name, None)
                if f is not None:
                    yield f
        elif isinstance(s, AVar):
            yield s.src
            yield s.tgt


def source_target(t: ArrowTerm, theory: th.Theory) -> TypePair:
    """The (source, target) pair of ``t`` under ``theory``.

    Raises IllTyped when a composition interface mismatches, HeadNotInTheory
    when a head falls outside the theory, and UnitForbidden when I occurs
    in a unit-free theory.
    """

    def walk(node, path):
        if isinstance(node, Comp):
            g = walk(node.after, path + (0,))
            f = walk(node.first, path + (1,))
            if f.target != g.source:
                raise IllTyped(
                    "composition interface mismatch: %r vs %r" % (f.target, g.source),
                    position=path,
                )
            return TypePair(f.source, g.target)
        if isinstance(node, Ten):
            f = walk(node.left, path + (0,))
            g = walk(node.right, path + (1,))
            return TypePair(Tensor(f.source, g.source), Tensor(f.target, g.target))
        if isinstance(node, Under):
            f = walk(node.inner, path + (0,))
            return TypePair(App(node.index, f.source), App(node.index, f.target))
        if isinstance(node, AVar):
            return TypePair(node.src, node.tgt)
        if not theory.allows(node.head):
            raise HeadNotInTheory(node.head, theory.name, position=path)
        return head_boundary(node)

    pair = walk(t, ())
    if not theory.unit_allowed:
        if contains_unit(pair.source) or contains_unit(pair.target) or any(
            contains_unit(f) for f in index_formulas(t)
        ):
            raise UnitForbidden("the unit object is rejected by theory %s" % theory.name)
    return pair


def is_well_typed(t: ArrowTerm, theory: th.Theory) -> bool:
    try:
        source_target(t, theory)
        return True
    except (IllTyped, HeadNotInTheory, UnitForbidden):
        return False


def compose(*factors: ArrowTerm) -> ArrowTerm:
    """g ∘ f written compose(g, f); compose(h, g, f) applies f first."""
    out = factors[0]
    for f in factors[1:]:
        out = Comp(out, f)
    return out


def invert(t: ArrowTerm) -> ArrowTerm:
    """Inverse of a term built from the invertible heads only."""
    if isinstance(t, Id):
        return t
    if isinstance(t, Assoc):
        return AssocInv(t.a, t.b, t.c)
    if isinstance(t, AssocInv):
        return Assoc(t.a, t.b, t.c)
    if isinstance(t, LUnit):
        return LUnitInv(t.at)
    if isinstance(t, LUnitInv):
        return LUnit(t.at)
    if isinstance(t, RUnit):
        return RUnitInv(t.at)
    if isinstance(t, RUnitInv):
        return RUnit(t.at)
    if isinstance(t, Sym):
        return Sym(t.b, t.a)
    if isinstance(t, Comp):
        return Comp(invert(t.first), invert(t.after))
    if isinstance(t, Ten):
        return Ten(invert(t.left), invert(t.right))
    if isinstance(t, Under):
        return Under(t.index, invert(t.inner))
    raise ValueError("term has a non-invertible head: %r" % (t,))


def medial(a: Formula, b: Formula, c: Formula, d: Formula) -> ArrowTerm:
    """The canonical (A⊗B)⊗(C⊗D) → (A⊗C)⊗(B⊗D) built from a, a', c."""
    inner = compose(
        Assoc(c, b, d),
        Ten(Sym(b, c), Id(d)),
        AssocInv(b, c, d),
    )
    return compose(
        AssocInv(a, c, Tensor(b, d)),
        Ten(Id(a), inner),
        Assoc(a, b, Tensor(c, d)),
    )


def cocartesian_psi(index: int, a: Formula, b: Formula) -> ArrowTerm:
    """Derived preservation arrow E^iA ⊗ E^iB → E^i(A⊗B) in the cocartesian
    theory, where it is definable from the codiagonal and the initial arrows."""
    left = Under(index, compose(Ten(Id(a), FromInitial(b)), RUnitInv(a)))
    right = Under(index, compose(Ten(FromInitial(a), Id(b)), LUnitInv(b)))
    return compose(Codiag(App(index, Tensor(a, b))), Ten(left, right))


def cocartesian_psi0(index: int) -> ArrowTerm:
    """Derived unit preservation arrow I → E^iI in the cocartesian theory."""
    return FromInitial(App(index, I))


def substitute_mvars(t: ArrowTerm, env) -> ArrowTerm:
    """Instantiate formula metavariables throughout a term template."""

    def subst_formula(f):
        if isinstance(f, MVar):
            return env[f.name]
        if isinstance(f, Tensor):
            return Tensor(subst_formula(f.left), subst_formula(f.right))
        if isinstance(f, App):
            return App(f.index, subst_formula(f.body))
        return f

    def subst(node):
        if isinstance(node, Comp):
            return Comp(subst(node.after), subst(node.first))
        if isinstance(node, Ten):
            return Ten(subst(node.left), subst(node.right))
        if isinstance(node, Under):
            return Under(node.index, subst(node.inner))
        if isinstance(node, AVar):
            if node.name in env:
                return env[node.name]
            return AVar(node.name, subst_formula(node.src), subst_formula(node.tgt))
        if isinstance(node, Id):
            return Id(subst_formula(node.at))
        if isinstance(node, (Assoc, AssocInv)):
            return type(node)(subst_formula(node.a), subst_formula(node.b), subst_formula(node.c))
        if isinstance(node, (LUnit, LUnitInv, RUnit, RUnitInv, Diag, Codiag, ToTerminal, FromInitial)):
            return type(node)(subst_formula(node.at))
        if isinstance(node, Sym):
            return Sym(subst_formula(node.a), subst_formula(node.b))
        if isinstance(node, (Psi, PsiL, PsiR)):
            return type(node)(node.index, subst_formula(node.a), subst_formula(node.b))
        if isinstance(node, Psi0):
            return node
        raise TypeError("cannot substitute in %r" % (node,))

    return subst(t)


def substitute_letter(t: ArrowTerm, name: str, replacement: Formula) -> ArrowTerm:
    """Replace a generating object by a formula in every head index."""
    from .formulas import Letter

    def subst_formula(f):
        if isinstance(f, Letter) and f.name == name:
            return replacement
        if isinstance(f, Tensor):
            return Tensor(subst_formula(f.left), subst_formula(f.right))
        if isinstance(f, App):
            return App(f.index, subst_formula(f.body))
        return f

    def subst(node):
        if isinstance(node, Comp):
            return Comp(subst(node.after), subst(node.first))
        if isinstance(node, Ten):
            return Ten(subst(node.left), subst(node.right))
        if isinstance(node, Under):
            return Under(node.index, subst(node.inner))
        if isinstance(node, Id):
            return Id(subst_formula(node.at))
        if isinstance(node, (Assoc, AssocInv)):
            return type(node)(subst_formula(node.a), subst_formula(node.b), subst_formula(node.c))
        if isinstance(node, (LUnit, LUnitInv, RUnit, RUnitInv, Diag, Codiag, ToTerminal, FromInitial)):
            return type(node)(subst_formula(node.at))
        if isinstance(node, Sym):
            return Sym(subst_formula(node.a), subst_formula(node.b))
        if isinstance(node, (Psi, PsiL, PsiR)):
            return type(node)(node.index, subst_formula(node.a), subst_formula(node.b))
        if isinstance(node, Psi0):
            return node
        raise TypeError("cannot substitute in %r" % (node,))

    return subst(t)
