"""Equation tables for every theory, as matchable term schemes.

A scheme pairs two term templates over formula metavariables (MVar),
optional arrow metavariables (AVar) for the naturality families, and a
single functor-index variable (negative index fields stand for it).
Non-strict schemes double as rewrite rules for the closure oracle; the
block-level equations of the strict symmetric calculi are shipped as
strict-term builders since that is the world they live in.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import terms as tm
from . import theories as th
from .formulas import App, Formula, I, Letter, MVar, Tensor
from .strict import (
    SApp,
    SComp,
    SId,
    SPsi,
    SPsiL,
    SPsiR,
    SSym,
    STen,
    SUnder,
)

LR = "LR"
RL = "RL"

_A, _B, _C, _D = MVar("A"), MVar("B"), MVar("C"), MVar("D")
_A1, _A2, _A3 = MVar("A1"), MVar("A2"), MVar("A3")
_B1, _B2 = MVar("B1"), MVar("B2")
_IDX = -1  # the functor-index variable


@dataclass(frozen=True)
class EquationScheme:
    tag: str
    lhs: object
    rhs: object
    variables: tuple = ()
    avars: tuple = ()  # (name, source_var, target_var)
    strict: bool = False
    strict_vars: tuple = ()
    administrative: bool = False

    def instantiate(self, env):
        if self.strict:
            return self.lhs(env), self.rhs(env)
        return tm.substitute_mvars(self.lhs, env), tm.substitute_mvars(self.rhs, env)

    def suite_env(self, letters=("p", "q", "r", "s"), index=1):
        """A default instantiation: distinct letters for the formula
        metavariables, identities for the arrow metavariables."""
        if self.strict:
            from .strict import SLetter

            env = {}
            for name, letter in zip(self.strict_vars, letters):
                env[name] = (SLetter(letter),)
            for name in self.strict_vars[len(letters):]:
                env[name] = ()
            env["#i1"] = index
            return env
        env = {"#i1": index}
        pool = list(letters)
        for name in self.variables:
            env[name] = Letter(pool.pop(0)) if pool else Letter("z")
        for name, src, tgt in self.avars:
            env[tgt] = env[src]
            env[name] = tm.Id(env[src])
        return env


def _scheme(tag, lhs, rhs, variables, avars=(), administrative=False):
    return EquationScheme(
        tag, canon(lhs), canon(rhs), tuple(variables), tuple(avars),
        administrative=administrative,
    )


# ---------------------------------------------------------------------------
# canonical term representation (shared with the oracle)


def canon(t: tm.ArrowTerm) -> tm.ArrowTerm:
    """Flatten compositions, drop identities, collapse tensors/functor
    images of identities; the categorical and functorial laws this uses
    hold in every theory."""
    if isinstance(t, tm.Comp):
        flat = []
        for x in comp_list(t):
            cx = canon(x)
            if isinstance(cx, tm.Id):
                continue
            flat.extend(comp_list(cx))
        if not flat:
            return tm.Id(_shallow_source(comp_list(t)[0]))
        return rebuild_comp(flat)
    if isinstance(t, tm.Ten):
        l, r = canon(t.left), canon(t.right)
        if isinstance(l, tm.Id) and isinstance(r, tm.Id):
            return tm.Id(Tensor(l.at, r.at))
        return tm.Ten(l, r)
    if isinstance(t, tm.Under):
        inner = canon(t.inner)
        if isinstance(inner, tm.Id):
            return tm.Id(App(t.index, inner.at))
        return tm.Under(t.index, inner)
    return t


def _shallow_source(t):
    if isinstance(t, tm.Id):
        return t.at
    if isinstance(t, tm.Comp):
        return _shallow_source(comp_list(t)[0])
    if isinstance(t, tm.Ten):
        return Tensor(_shallow_source(t.left), _shallow_source(t.right))
    if isinstance(t, tm.Under):
        return App(t.index, _shallow_source(t.inner))
    if isinstance(t, tm.AVar):
        return t.src
    return tm.head_boundary(t).source


def comp_list(t: tm.ArrowTerm):
    """Factors in application order (first applied first)."""
    if isinstance(t, tm.Comp):
        return comp_list(t.first) + comp_list(t.after)
    return [t]


def rebuild_comp(factors):
    """Inverse of comp_list on nonempty lists: nested with the last factor
    outermost."""
    t = factors[0]
    for f in factors[1:]:
        t = tm.Comp(f, t)
    return t


# ---------------------------------------------------------------------------
# matching


def match_formula(template, concrete, env):
    if isinstance(template, MVar):
        bound = env.get(template.name)
        if bound is None:
            env[template.name] = concrete
            return True
        return bound == concrete
    if isinstance(template, Letter):
        return template == concrete
    if template is I or isinstance(template, type(I)):
        return concrete == I
    if isinstance(template, Tensor):
        return (
            isinstance(concrete, Tensor)
            and match_formula(template.left, concrete.left, env)
            and match_formula(template.right, concrete.right, env)
        )
    if isinstance(template, App):
        if not isinstance(concrete, App):
            return False
        if not _match_index(template.index, concrete.index, env):
            return False
        return match_formula(template.body, concrete.body, env)
    raise TypeError("bad formula template %r" % (template,))


def _match_index(tpl_index, concrete_index, env):
    if tpl_index >= 0:
        return tpl_index == concrete_index
    key = "#i%d" % (-tpl_index)
    bound = env.get(key)
    if bound is None:
        env[key] = concrete_index
        return True
    return bound == concrete_index


def match_term(template, term, env, theory):
    if isinstance(template, tm.AVar):
        bound = env.get(template.name)
        if bound is not None:
            if bound != term:
                return False
        try:
            pair = tm.source_target(term, theory)
        except Exception:
            return False
        if not match_formula(template.src, pair.source, env):
            return False
        if not match_formula(template.tgt, pair.target, env):
            return False
        env[template.name] = term
        return True
    if type(template) is not type(term):
        return False
    if isinstance(template, tm.Id):
        return match_formula(template.at, term.at, env)
    if isinstance(template, (tm.Assoc, tm.AssocInv)):
        return (
            match_formula(template.a, term.a, env)
            and match_formula(template.b, term.b, env)
            and match_formula(template.c, term.c, env)
        )
    if isinstance(template, (tm.LUnit, tm.LUnitInv, tm.RUnit, tm.RUnitInv,
                             tm.Diag, tm.Codiag, tm.ToTerminal, tm.FromInitial)):
        return match_formula(template.at, term.at, env)
    if isinstance(template, tm.Sym):
        return match_formula(template.a, term.a, env) and match_formula(template.b, term.b, env)
    if isinstance(template, (tm.Psi, tm.PsiL, tm.PsiR)):
        return (
            _match_index(template.index, term.index, env)
            and match_formula(template.a, term.a, env)
            and match_formula(template.b, term.b, env)
        )
    if isinstance(template, tm.Psi0):
        return _match_index(template.index, term.index, env)
    if isinstance(template, tm.Comp):
        return (
            match_term(template.after, term.after, env, theory)
            and match_term(template.first, term.first, env, theory)
        )
    if isinstance(template, tm.Ten):
        return (
            match_term(template.left, term.left, env, theory)
            and match_term(template.right, term.right, env, theory)
        )
    if isinstance(template, tm.Under):
        return _match_index(template.index, term.index, env) and match_term(
            template.inner, term.inner, env, theory
        )
    raise TypeError("bad term template %r" % (template,))


def instantiate_side(side, env):
    return canon(tm.substitute_mvars(side, env))


# ---------------------------------------------------------------------------
# template helpers


def _ten(*parts):
    out = parts[0]
    for p in parts[1:]:
        out = tm.Ten(out, p)
    return out


def _e(body):
    return App(_IDX, body)


def _psi(a, b):
    return tm.Psi(_IDX, a, b)


def _psi_l(a, b):
    return tm.PsiL(_IDX, a, b)


def _psi_r(a, b):
    return tm.PsiR(_IDX, a, b)


def _under(f):
    return tm.Under(_IDX, f)


def _avar(name, src, tgt):
    return tm.AVar(name, src, tgt)


# ---------------------------------------------------------------------------
# the tables


def _monoidal_schemes(with_units=True):
    out = []
    out.append(_scheme(
        "(a pentagon)",
        tm.compose(tm.Assoc(_A, _B, Tensor(_C, _D)), tm.Assoc(Tensor(_A, _B), _C, _D)),
        tm.compose(
            tm.Ten(tm.Id(_A), tm.Assoc(_B, _C, _D)),
            tm.Assoc(_A, Tensor(_B, _C), _D),
            tm.Ten(tm.Assoc(_A, _B, _C), tm.Id(_D)),
        ),
        ("A", "B", "C", "D"),
    ))
    out.append(_scheme(
        "(a nat)",
        tm.compose(
            tm.Assoc(MVar("A'"), MVar("B'"), MVar("C'")),
            _ten(tm.Ten(_avar("f", _A, MVar("A'")), _avar("g", _B, MVar("B'"))),
                 _avar("h", _C, MVar("C'"))),
        ),
        tm.compose(
            _ten(_avar("f", _A, MVar("A'")),
                 tm.Ten(_avar("g", _B, MVar("B'")), _avar("h", _C, MVar("C'")))),
            tm.Assoc(_A, _B, _C),
        ),
        ("A", "B", "C", "A'", "B'", "C'"),
        avars=(("f", "A", "A'"), ("g", "B", "B'"), ("h", "C", "C'")),
        administrative=True,
    ))
    out.append(_scheme("(a a')", tm.compose(tm.Assoc(_A, _B, _C), tm.AssocInv(_A, _B, _C)),
                       tm.Id(Tensor(_A, Tensor(_B, _C))), ("A", "B", "C"), administrative=True))
    out.append(_scheme("(a' a)", tm.compose(tm.AssocInv(_A, _B, _C), tm.Assoc(_A, _B, _C)),
                       tm.Id(Tensor(Tensor(_A, _B), _C)), ("A", "B", "C"), administrative=True))
    if with_units:
        out.append(_scheme(
            "(a triangle)",
            tm.compose(tm.Ten(tm.Id(_A), tm.LUnit(_B)), tm.Assoc(_A, I, _B)),
            tm.Ten(tm.RUnit(_A), tm.Id(_B)),
            ("A", "B"),
        ))
        out.append(_scheme(
            "(l nat)",
            tm.compose(tm.LUnit(MVar("A'")), tm.Ten(tm.Id(I), _avar("f", _A, MVar("A'")))),
            tm.compose(_avar("f", _A, MVar("A'")), tm.LUnit(_A)),
            ("A", "A'"), avars=(("f", "A", "A'"),), administrative=True,
        ))
        out.append(_scheme(
            "(r nat)",
            tm.compose(tm.RUnit(MVar("A'")), tm.Ten(_avar("f", _A, MVar("A'")), tm.Id(I))),
            tm.compose(_avar("f", _A, MVar("A'")), tm.RUnit(_A)),
            ("A", "A'"), avars=(("f", "A", "A'"),), administrative=True,
        ))
        out.append(_scheme("(l l')", tm.compose(tm.LUnit(_A), tm.LUnitInv(_A)), tm.Id(_A),
                           ("A",), administrative=True))
        out.append(_scheme("(l' l)", tm.compose(tm.LUnitInv(_A), tm.LUnit(_A)),
                           tm.Id(Tensor(I, _A)), ("A",), administrative=True))
        out.append(_scheme("(r r')", tm.compose(tm.RUnit(_A), tm.RUnitInv(_A)), tm.Id(_A),
                           ("A",), administrative=True))
        out.append(_scheme("(r' r)", tm.compose(tm.RUnitInv(_A), tm.RUnit(_A)),
                           tm.Id(Tensor(_A, I)), ("A",), administrative=True))
        out.append(_scheme("(l I r I)", tm.LUnit(I), tm.RUnit(I), (), administrative=True))
    return out


def _interchange_schemes():
    f = _avar("f", _A, MVar("A'"))
    g = _avar("g", MVar("A'"), MVar("A''"))
    k = _avar("k", _B, MVar("B'"))
    out = [
        _scheme(
            "(interchange l)",
            tm.Ten(tm.Comp(g, f), k),
            tm.compose(tm.Ten(g, k), tm.Ten(f, tm.Id(_B))),
            ("A", "A'", "A''", "B", "B'"),
            avars=(("f", "A", "A'"), ("g", "A'", "A''"), ("k", "B", "B'")),
            administrative=True,
        ),
        _scheme(
            "(interchange r)",
            tm.Ten(k, tm.Comp(g, f)),
            tm.compose(tm.Ten(k, g), tm.Ten(tm.Id(_B), f)),
            ("A", "A'", "A''", "B", "B'"),
            avars=(("f", "A", "A'"), ("g", "A'", "A''"), ("k", "B", "B'")),
            administrative=True,
        ),
        _scheme(
            "(split lr)",
            tm.Ten(f, k),
            tm.compose(tm.Ten(f, tm.Id(MVar("B'"))), tm.Ten(tm.Id(_A), k)),
            ("A", "A'", "B", "B'"),
            avars=(("f", "A", "A'"), ("k", "B", "B'")),
            administrative=True,
        ),
        _scheme(
            "(split rl)",
            tm.Ten(f, k),
            tm.compose(tm.Ten(tm.Id(MVar("A'")), k), tm.Ten(f, tm.Id(_B))),
            ("A", "A'", "B", "B'"),
            avars=(("f", "A", "A'"), ("k", "B", "B'")),
            administrative=True,
        ),
        _scheme(
            "(E funct)",
            _under(tm.Comp(g, f)),
            tm.Comp(_under(g), _under(f)),
            ("A", "A'", "A''"),
            avars=(("f", "A", "A'"), ("g", "A'", "A''")),
            administrative=True,
        ),
    ]
    return out


def _symmetry_schemes(with_units=True):
    out = [
        _scheme(
            "(c hexagon)",
            tm.compose(tm.Assoc(_B, _C, _A), tm.Sym(_A, Tensor(_B, _C)), tm.Assoc(_A, _B, _C)),
            tm.compose(tm.Ten(tm.Id(_B), tm.Sym(_A, _C)), tm.Assoc(_B, _A, _C),
                       tm.Ten(tm.Sym(_A, _B), tm.Id(_C))),
            ("A", "B", "C"),
        ),
        _scheme("(c c)", tm.compose(tm.Sym(_B, _A), tm.Sym(_A, _B)), tm.Id(Tensor(_A, _B)),
                ("A", "B")),
        _scheme(
            "(c nat)",
            tm.compose(tm.Sym(MVar("A'"), MVar("B'")),
                       tm.Ten(_avar("f", _A, MVar("A'")), _avar("g", _B, MVar("B'")))),
            tm.compose(tm.Ten(_avar("g", _B, MVar("B'")), _avar("f", _A, MVar("A'"))),
                       tm.Sym(_A, _B)),
            ("A", "B", "A'", "B'"),
            avars=(("f", "A", "A'"), ("g", "B", "B'")),
            administrative=True,
        ),
    ]
    if with_units:
        out.append(_scheme("(c l r)", tm.compose(tm.LUnit(_A), tm.Sym(_A, I)), tm.RUnit(_A),
                           ("A",), administrative=True))
    return out


def _psi_schemes():
    ea, eb, ec = _e(_A), _e(_B), _e(_C)
    return [
        _scheme(
            "(ψ a)",
            tm.compose(_under(tm.Assoc(_A, _B, _C)), _psi(Tensor(_A, _B), _C),
                       tm.Ten(_psi(_A, _B), tm.Id(ec))),
            tm.compose(_psi(_A, Tensor(_B, _C)), tm.Ten(tm.Id(ea), _psi(_B, _C)),
                       tm.Assoc(ea, eb, ec)),
            ("A", "B", "C"),
        ),
        _scheme(
            "(ψ l)",
            tm.compose(_under(tm.LUnit(_A)), _psi(I, _A), tm.Ten(tm.Psi0(_IDX), tm.Id(ea))),
            tm.LUnit(ea),
            ("A",),
        ),
        _scheme(
            "(ψ r)",
            tm.compose(_under(tm.RUnit(_A)), _psi(_A, I), tm.Ten(tm.Id(ea), tm.Psi0(_IDX))),
            tm.RUnit(ea),
            ("A",),
        ),
        _scheme(
            "(ψ nat)",
            tm.compose(_psi(MVar("A'"), MVar("B'")),
                       tm.Ten(_under(_avar("f", _A, MVar("A'"))), _under(_avar("g", _B, MVar("B'"))))),
            tm.compose(_under(tm.Ten(_avar("f", _A, MVar("A'")), _avar("g", _B, MVar("B'")))),
                       _psi(_A, _B)),
            ("A", "B", "A'", "B'"),
            avars=(("f", "A", "A'"), ("g", "B", "B'")),
            administrative=True,
        ),
    ]


def _psi_l_schemes():
    ea = _e(_A)
    return [
        _scheme(
            "(ψᴸ a)",
            tm.compose(_under(tm.Assoc(_A, _B, _C)), _psi_l(Tensor(_A, _B), _C),
                       tm.Ten(_psi_l(_A, _B), tm.Id(_C))),
            tm.compose(_psi_l(_A, Tensor(_B, _C)), tm.Assoc(ea, _B, _C)),
            ("A", "B", "C"),
        ),
        _scheme(
            "(ψᴸ r)",
            tm.compose(_under(tm.RUnit(_A)), _psi_l(_A, I)),
            tm.RUnit(ea),
            ("A",),
        ),
        _scheme(
            "(ψᴸ nat)",
            tm.compose(_psi_l(MVar("A'"), MVar("B'")),
                       tm.Ten(_under(_avar("f", _A, MVar("A'"))), _avar("g", _B, MVar("B'")))),
            tm.compose(_under(tm.Ten(_avar("f", _A, MVar("A'")), _avar("g", _B, MVar("B'")))),
                       _psi_l(_A, _B)),
            ("A", "B", "A'", "B'"),
            avars=(("f", "A", "A'"), ("g", "B", "B'")),
            administrative=True,
        ),
    ]


def _psi_r_schemes():
    ec = _e(_C)
    ea = _e(_A)
    return [
        _scheme(
            "(ψᴿ a)",
            tm.compose(_under(tm.Assoc(_A, _B, _C)), _psi_r(Tensor(_A, _B), _C)),
            tm.compose(_psi_r(_A, Tensor(_B, _C)), tm.Ten(tm.Id(_A), _psi_r(_B, _C)),
                       tm.Assoc(_A, _B, ec)),
            ("A", "B", "C"),
        ),
        _scheme(
            "(ψᴿ l)",
            tm.compose(_under(tm.LUnit(_A)), _psi_r(I, _A)),
            tm.LUnit(ea),
            ("A",),
        ),
        _scheme(
            "(ψᴿ nat)",
            tm.compose(_psi_r(MVar("A'"), MVar("B'")),
                       tm.Ten(_avar("f", _A, MVar("A'")), _under(_avar("g", _B, MVar("B'"))))),
            tm.compose(_under(tm.Ten(_avar("f", _A, MVar("A'")), _avar("g", _B, MVar("B'")))),
                       _psi_r(_A, _B)),
            ("A", "B", "A'", "B'"),
            avars=(("f", "A", "A'"), ("g", "B", "B'")),
            administrative=True,
        ),
    ]


def _psi_lr_schemes():
    return [
        _scheme(
            "(ψᴸψᴿ a)",
            tm.compose(_under(tm.Assoc(_A, _B, _C)), _psi_l(Tensor(_A, _B), _C),
                       tm.Ten(_psi_r(_A, _B), tm.Id(_C))),
            tm.compose(_psi_r(_A, Tensor(_B, _C)), tm.Ten(tm.Id(_A), _psi_l(_B, _C)),
                       tm.Assoc(_A, _e(_B), _C)),
            ("A", "B", "C"),
        ),
    ]


def _linear_schemes():
    return [
        _scheme(
            "(ψ c)",
            tm.compose(_under(tm.Sym(_A, _B)), _psi(_A, _B)),
            tm.compose(_psi(_B, _A), tm.Sym(_e(_A), _e(_B))),
            ("A", "B"),
        ),
    ]


def _locally_linear_schemes():
    return [
        _scheme(
            "(ψᴸψᴿ c)",
            tm.compose(_under(tm.Sym(_A, _B)), _psi_l(_A, _B)),
            tm.compose(_psi_r(_B, _A), tm.Sym(_e(_A), _B)),
            ("A", "B"),
        ),
    ]


def _diag_schemes(with_units=True, with_psi=True):
    out = [
        _scheme(
            "(Δ a)",
            tm.compose(tm.Assoc(_A, _A, _A), tm.Ten(tm.Diag(_A), tm.Id(_A)), tm.Diag(_A)),
            tm.compose(tm.Ten(tm.Id(_A), tm.Diag(_A)), tm.Diag(_A)),
            ("A",),
        ),
        _scheme("(Δ c)", tm.compose(tm.Sym(_A, _A), tm.Diag(_A)), tm.Diag(_A), ("A",)),
        _scheme(
            "(Δ ac)",
            tm.Diag(Tensor(_A, _B)),
            tm.compose(tm.medial(_A, _A, _B, _B), tm.Ten(tm.Diag(_A), tm.Diag(_B))),
            ("A", "B"),
        ),
        _scheme(
            "(Δ nat)",
            tm.compose(tm.Diag(MVar("A'")), _avar("f", _A, MVar("A'"))),
            tm.compose(tm.Ten(_avar("f", _A, MVar("A'")), _avar("f", _A, MVar("A'"))),
                       tm.Diag(_A)),
            ("A", "A'"), avars=(("f", "A", "A'"),), administrative=True,
        ),
    ]
    if with_units:
        out.append(_scheme("(Δ l)", tm.compose(tm.LUnit(I), tm.Diag(I)), tm.Id(I), ()))
    if with_psi:
        out.append(_scheme(
            "(ψ Δ)",
            _under(tm.Diag(_A)),
            tm.compose(_psi(_A, _A), tm.Diag(_e(_A))),
            ("A",),
        ))
    return out


def _terminal_schemes():
    out = [
        _scheme(
            "(¡ nat)",
            tm.compose(tm.ToTerminal(MVar("A'")), _avar("f", _A, MVar("A'"))),
            tm.ToTerminal(_A),
            ("A", "A'"), avars=(("f", "A", "A'"),), administrative=True,
        ),
    ]
    for n in range(3):
        out.append(_scheme("(ext %d)" % n, _extensionality_lhs(n), tm.Id(_ext_object(n)),
                           ("A", "B")))
    return out


def _ext_object(n):
    body = Tensor(_A, _B)
    for _ in range(n):
        body = _e(body)
    return body


def _extensionality_lhs(n):
    """The diagonal/projection round trip on E^n(A⊗B), contracted back with
    the preservation arrows; equal to the identity in the cartesian theory."""
    stacked = _ext_object(n)
    proj_left = tm.compose(tm.RUnit(_A), tm.Ten(tm.Id(_A), tm.ToTerminal(_B)))
    proj_right = tm.compose(tm.LUnit(_B), tm.Ten(tm.ToTerminal(_A), tm.Id(_B)))
    for _ in range(n):
        proj_left = _under(proj_left)
        proj_right = _under(proj_right)
    term = tm.compose(tm.Ten(proj_left, proj_right), tm.Diag(stacked))
    sa, sb = _A, _B
    for k in range(n):
        # contract E^{n-k}A ⊗ E^{n-k}B one level down, under k functors
        inner_a, inner_b = _A, _B
        for _ in range(n - 1 - k):
            inner_a = _e(inner_a)
            inner_b = _e(inner_b)
        step = _psi(inner_a, inner_b)
        for _ in range(k):
            step = _under(step)
        term = tm.Comp(step, term)
    del sa, sb
    return term


def _codiag_schemes():
    dpsi = tm.cocartesian_psi(_IDX, _A, _A)
    dpsi0 = tm.cocartesian_psi0(_IDX)
    return [
        _scheme(
            "(∇ a)",
            tm.compose(tm.Codiag(_A), tm.Ten(tm.Id(_A), tm.Codiag(_A)), tm.Assoc(_A, _A, _A)),
            tm.compose(tm.Codiag(_A), tm.Ten(tm.Codiag(_A), tm.Id(_A))),
            ("A",),
        ),
        _scheme("(∇ l)", tm.compose(tm.Codiag(I), tm.LUnitInv(I)), tm.Id(I), ()),
        _scheme("(∇ c)", tm.compose(tm.Codiag(_A), tm.Sym(_A, _A)), tm.Codiag(_A), ("A",)),
        _scheme(
            "(∇ ac)",
            tm.Codiag(Tensor(_A, _B)),
            tm.compose(tm.Ten(tm.Codiag(_A), tm.Codiag(_B)), tm.medial(_A, _B, _A, _B)),
            ("A", "B"),
        ),
        _scheme(
            "(∇ nat)",
            tm.compose(_avar("f", _A, MVar("A'")), tm.Codiag(_A)),
            tm.compose(tm.Codiag(MVar("A'")),
                       tm.Ten(_avar("f", _A, MVar("A'")), _avar("f", _A, MVar("A'")))),
            ("A", "A'"), avars=(("f", "A", "A'"),), administrative=True,
        ),
        _scheme(
            "(ψ ∇)",
            tm.compose(_under(tm.Codiag(_A)), dpsi),
            tm.Codiag(_e(_A)),
            ("A",),
        ),
        _scheme(
            "(ψ !)",
            tm.compose(_under(tm.FromInitial(_A)), dpsi0),
            tm.FromInitial(_e(_A)),
            ("A",),
        ),
        _scheme(
            "(! nat)",
            tm.compose(_avar("f", _A, MVar("A'")), tm.FromInitial(_A)),
            tm.FromInitial(MVar("A'")),
            ("A", "A'"), avars=(("f", "A", "A'"),), administrative=True,
        ),
    ]


# ---------------------------------------------------------------------------
# strict block-level schemes


def _s_ten(*parts):
    out = parts[0]
    for p in parts[1:]:
        out = STen(out, p)
    return out


def _sid(*seqs):
    flat = ()
    for s in seqs:
        flat = flat + tuple(s)
    return SId(flat)


def _sbig_psi(env, a1, a2, b):
    i = env["#i1"]
    a1v, a2v = env[a1], env[a2]
    bv = ()
    for name in b:
        bv = bv + tuple(env[name])
    from .factors import big_psi
    return big_psi(i, a1v, a2v, bv), bv


def _strict_scheme(tag, builder_lhs, builder_rhs, names):
    return EquationScheme(tag, builder_lhs, builder_rhs, strict=True, strict_vars=tuple(names))


def _e_atom(env, name):
    return (SApp(env["#i1"], env[name]),)


def _psi_psi_1():
    def lhs(env):
        i = env["#i1"]
        a1, a2, a3 = env["A1"], env["A2"], env["A3"]
        b1, b2 = env["B1"], env["B2"]
        from .factors import big_psi
        inner = big_psi(i, a1, a3, b1 + (SApp(i, a2),) + b2)
        outer = big_psi(i, a1 + a3, a2, b1)
        return SComp(_s_ten(outer, _sid(b2)), inner)

    def rhs(env):
        i = env["#i1"]
        a1, a2, a3 = env["A1"], env["A2"], env["A3"]
        b1, b2 = env["B1"], env["B2"]
        from .factors import big_psi
        first = _s_ten(big_psi(i, a1, a2, b1), _sid(b2, (SApp(i, a3),)))
        second = big_psi(i, a1 + a2, a3, b1 + b2)
        fix = _s_ten(SUnder(i, _s_ten(_sid(a1), SSym(a2, a3))), _sid(b1, b2))
        return SComp(fix, SComp(second, first))

    return _strict_scheme("(ΨΨ1)", lhs, rhs, ("A1", "A2", "A3", "B1", "B2"))


def _psi_psi_2():
    def lhs(env):
        i = env["#i1"]
        a1, a2, a3 = env["A1"], env["A2"], env["A3"]
        b1, b2 = env["B1"], env["B2"]
        from .factors import big_psi
        inner = _s_ten(_sid((SApp(i, a1),), b1), big_psi(i, a2, a3, b2))
        outer = _s_ten(big_psi(i, a1, a2 + a3, b1), _sid(b2))
        return SComp(outer, inner)

    def rhs(env):
        i = env["#i1"]
        a1, a2, a3 = env["A1"], env["A2"], env["A3"]
        b1, b2 = env["B1"], env["B2"]
        from .factors import big_psi
        first = _s_ten(big_psi(i, a1, a2, b1), _sid(b2, (SApp(i, a3),)))
        second = big_psi(i, a1 + a2, a3, b1 + b2)
        return SComp(second, first)

    return _strict_scheme("(ΨΨ2)", lhs, rhs, ("A1", "A2", "A3", "B1", "B2"))


def _psi_c_schemes():
    from .factors import big_psi

    def c1_lhs(env):
        i = env["#i1"]
        a1, a2, b1, b2 = env["A1"], env["A2"], env["B1"], env["B2"]
        first = _s_ten(SSym(b1, (SApp(i, a1),)), _sid(b2, (SApp(i, a2),)))
        return SComp(big_psi(i, a1, a2, b1 + b2), first)

    def c1_rhs(env):
        i = env["#i1"]
        a1, a2, b1, b2 = env["A1"], env["A2"], env["B1"], env["B2"]
        first = _s_ten(_sid(b1), big_psi(i, a1, a2, b2))
        second = _s_ten(SSym(b1, (SApp(i, a1 + a2),)), _sid(b2))
        return SComp(second, first)

    def c2_lhs(env):
        i = env["#i1"]
        a1, a2, b1, b2 = env["A1"], env["A2"], env["B1"], env["B2"]
        first = _s_ten(SSym((SApp(i, a1),), b1), _sid(b2, (SApp(i, a2),)))
        return SComp(_s_ten(_sid(b1), big_psi(i, a1, a2, b2)), first)

    def c2_rhs(env):
        i = env["#i1"]
        a1, a2, b1, b2 = env["A1"], env["A2"], env["B1"], env["B2"]
        return SComp(_s_ten(SSym((SApp(i, a1 + a2),), b1), _sid(b2)),
                     big_psi(i, a1, a2, b1 + b2))

    def c3_lhs(env):
        i = env["#i1"]
        a1, a2, b1, b2 = env["A1"], env["A2"], env["B1"], env["B2"]
        first = _s_ten(_sid((SApp(i, a1),), b1), SSym(b2, (SApp(i, a2),)))
        return SComp(_s_ten(big_psi(i, a1, a2, b1), _sid(b2)), first)

    def c3_rhs(env):
        i = env["#i1"]
        a1, a2, b1, b2 = env["A1"], env["A2"], env["B1"], env["B2"]
        return big_psi(i, a1, a2, b1 + b2)

    def c4_lhs(env):
        i = env["#i1"]
        a1, a2, b1, b2 = env["A1"], env["A2"], env["B1"], env["B2"]
        first = _s_ten(_sid((SApp(i, a1),), b1), SSym((SApp(i, a2),), b2))
        return SComp(big_psi(i, a1, a2, b1 + b2), first)

    def c4_rhs(env):
        i = env["#i1"]
        a1, a2, b1, b2 = env["A1"], env["A2"], env["B1"], env["B2"]
        return _s_ten(big_psi(i, a1, a2, b1), _sid(b2))

    names = ("A1", "A2", "B1", "B2")
    return [
        _strict_scheme("(Ψc1)", c1_lhs, c1_rhs, names),
        _strict_scheme("(Ψc2)", c2_lhs, c2_rhs, names),
        _strict_scheme("(Ψc3)", c3_lhs, c3_rhs, names),
        _strict_scheme("(Ψc4)", c4_lhs, c4_rhs, names),
    ]


def big_psi_one_sided(index, a1, a2, b, side):
    """The one-sided symmetry-assisted contractions; ``side`` is "L" or "R"."""
    if side == "L":
        if not b:
            return SPsiL(index, a1, a2)
        return SComp(
            STen(SPsiL(index, a1, a2), SId(b)),
            STen(SId((SApp(index, a1),)), SSym(b, a2)),
        )
    if not b:
        return SPsiR(index, a1, a2)
    return SComp(
        STen(SPsiR(index, a1, a2), SId(b)),
        STen(SId(a1), SSym(b, (SApp(index, a2),))),
    )


def _one_sided_schemes():
    def redex(env, side, name):
        # the strands standing for the argument on the given side
        if side == "L":
            return (SApp(env["#i1"], env[name]),)
        return tuple(env[name])

    def lpsi(env, a1, a2, b_names):
        bv = ()
        for n in b_names:
            bv = bv + tuple(env[n])
        return big_psi_one_sided(env["#i1"], env[a1], env[a2], bv, "L")

    def rpsi(env, a1, a2, b_names):
        bv = ()
        for n in b_names:
            bv = bv + tuple(env[n])
        return big_psi_one_sided(env["#i1"], env[a1], env[a2], bv, "R")

    names5 = ("A1", "A2", "A3", "B1", "B2")

    def ll_lhs(env):
        i = env["#i1"]
        inner = big_psi_one_sided(i, env["A1"], env["A3"],
                                  env["B1"] + env["A2"] + env["B2"], "L")
        outer = big_psi_one_sided(i, env["A1"] + env["A3"], env["A2"], env["B1"], "L")
        return SComp(_s_ten(outer, _sid(env["B2"])), inner)

    def ll_rhs(env):
        i = env["#i1"]
        first = _s_ten(big_psi_one_sided(i, env["A1"], env["A2"], env["B1"], "L"),
                       _sid(env["B2"], env["A3"]))
        second = big_psi_one_sided(i, env["A1"] + env["A2"], env["A3"],
                                   env["B1"] + env["B2"], "L")
        fix = _s_ten(SUnder(i, _s_ten(SId(env["A1"]), SSym(env["A2"], env["A3"]))),
                     _sid(env["B1"], env["B2"]))
        return SComp(fix, SComp(second, first))

    def lr1_lhs(env):
        i = env["#i1"]
        first = _s_ten(big_psi_one_sided(i, env["A1"], env["A2"], env["B1"], "R"),
                       _sid(env["B2"], env["A3"]))
        second = big_psi_one_sided(i, env["A1"] + env["A2"], env["A3"],
                                   env["B1"] + env["B2"], "L")
        return SComp(second, first)

    def lr1_rhs(env):
        i = env["#i1"]
        inner = _s_ten(_sid(env["A1"], env["B1"]),
                       big_psi_one_sided(i, env["A2"], env["A3"], env["B2"], "L"))
        outer = _s_ten(big_psi_one_sided(i, env["A1"], env["A2"] + env["A3"], env["B1"], "R"),
                       _sid(env["B2"]))
        return SComp(outer, inner)

    def lr2_lhs(env):
        i = env["#i1"]
        inner = big_psi_one_sided(i, env["A1"], env["A3"],
                                  env["B1"] + env["A2"] + env["B2"], "R")
        outer = big_psi_one_sided(i, env["A1"] + env["A3"], env["A2"], env["B1"], "L")
        return SComp(_s_ten(outer, _sid(env["B2"])), inner)

    def lr2_rhs(env):
        i = env["#i1"]
        inner = _s_ten(_sid(env["A1"], env["B1"]),
                       big_psi_one_sided(i, env["A2"], env["A3"], env["B2"], "R"))
        outer = _s_ten(big_psi_one_sided(i, env["A1"], env["A2"] + env["A3"], env["B1"], "R"),
                       _sid(env["B2"]))
        fix = _s_ten(SUnder(i, _s_ten(SId(env["A1"]), SSym(env["A2"], env["A3"]))),
                     _sid(env["B1"], env["B2"]))
        return SComp(fix, SComp(outer, inner))

    out = [
        _strict_scheme("(ΨᴸΨᴸ)", ll_lhs, ll_rhs, names5),
        _strict_scheme("(ΨᴸΨᴿ1)", lr1_lhs, lr1_rhs, names5),
        _strict_scheme("(ΨᴸΨᴿ2)", lr2_lhs, lr2_rhs, names5),
    ]

    # the eight one-sided variants of the symmetry absorption equations
    for side in ("L", "R"):
        def mk(side):
            def bigp(env, a1, a2, b_names):
                bv = ()
                for n in b_names:
                    bv = bv + tuple(env[n])
                return big_psi_one_sided(env["#i1"], env[a1], env[a2], bv, side)

            def first_strands(env):
                if side == "L":
                    return (SApp(env["#i1"], env["A1"]),)
                return tuple(env["A1"])

            def second_strands(env):
                if side == "L":
                    return tuple(env["A2"])
                return (SApp(env["#i1"], env["A2"]),)

            def c1_lhs(env):
                first = _s_ten(SSym(env["B1"], first_strands(env)),
                               _sid(env["B2"], second_strands(env)))
                return SComp(bigp(env, "A1", "A2", ("B1", "B2")), first)

            def c1_rhs(env):
                i = env["#i1"]
                first = _s_ten(_sid(env["B1"]), bigp(env, "A1", "A2", ("B2",)))
                second = _s_ten(SSym(env["B1"], (SApp(i, env["A1"] + env["A2"]),)),
                                _sid(env["B2"]))
                return SComp(second, first)

            def c2_lhs(env):
                first = _s_ten(SSym(first_strands(env), env["B1"]),
                               _sid(env["B2"], second_strands(env)))
                return SComp(_s_ten(_sid(env["B1"]), bigp(env, "A1", "A2", ("B2",))), first)

            def c2_rhs(env):
                i = env["#i1"]
                return SComp(
                    _s_ten(SSym((SApp(i, env["A1"] + env["A2"]),), env["B1"]),
                           _sid(env["B2"])),
                    bigp(env, "A1", "A2", ("B1", "B2")),
                )

            def c3_lhs(env):
                first = _s_ten(_sid(first_strands(env), env["B1"]),
                               SSym(env["B2"], second_strands(env)))
                return SComp(_s_ten(bigp(env, "A1", "A2", ("B1",)), _sid(env["B2"])), first)

            def c3_rhs(env):
                return bigp(env, "A1", "A2", ("B1", "B2"))

            def c4_lhs(env):
                first = _s_ten(_sid(first_strands(env), env["B1"]),
                               SSym(second_strands(env), env["B2"]))
                return SComp(bigp(env, "A1", "A2", ("B1", "B2")), first)

            def c4_rhs(env):
                return _s_ten(bigp(env, "A1", "A2", ("B1",)), _sid(env["B2"]))

            return [c1_lhs, c1_rhs, c2_lhs, c2_rhs, c3_lhs, c3_rhs, c4_lhs, c4_rhs]

        fns = mk(side)
        names4 = ("A1", "A2", "B1", "B2")
        for k in range(4):
            out.append(_strict_scheme(
                "(Ψ%sc%d)" % ("ᴸ" if side == "L" else "ᴿ", k + 1),
                fns[2 * k], fns[2 * k + 1], names4,
            ))
    return out


# ---------------------------------------------------------------------------
# public table


def equations_for(theory: th.Theory):
    """The full equation table of a theory, each scheme carrying its tag.

    The one rejected preservation equation for the terminal arrow is never
    included in any theory.
    """
    name = theory.name
    out = []
    if name == "E":
        out += _monoidal_schemes() + _interchange_schemes()
    elif name == "M":
        out += _monoidal_schemes() + _interchange_schemes() + _psi_schemes()
    elif name == "Mminus":
        out += _monoidal_schemes(with_units=False) + _interchange_schemes() + [
            s for s in _psi_schemes() if s.tag in ("(ψ a)", "(ψ nat)")
        ]
    elif name == "LL":
        out += _monoidal_schemes() + _interchange_schemes() + _psi_l_schemes()
    elif name == "LR":
        out += _monoidal_schemes() + _interchange_schemes() + _psi_r_schemes()
    elif name == "L":
        out += (_monoidal_schemes() + _interchange_schemes()
                + _psi_l_schemes() + _psi_r_schemes() + _psi_lr_schemes())
    elif name == "Mc":
        out += (_monoidal_schemes() + _interchange_schemes() + _symmetry_schemes()
                + _psi_schemes() + _linear_schemes()
                + [_psi_psi_1(), _psi_psi_2()] + _psi_c_schemes())
    elif name == "Lc":
        out += (_monoidal_schemes() + _interchange_schemes() + _symmetry_schemes()
                + _psi_l_schemes() + _psi_r_schemes() + _psi_lr_schemes()
                + _locally_linear_schemes() + _one_sided_schemes())
    elif name == "R":
        out += (_monoidal_schemes() + _interchange_schemes() + _symmetry_schemes()
                + _psi_schemes() + _linear_schemes() + _diag_schemes()
                + [_psi_psi_1(), _psi_psi_2()] + _psi_c_schemes())
    elif name == "Rminus":
        out += (_monoidal_schemes(with_units=False) + _interchange_schemes()
                + [s for s in _symmetry_schemes(with_units=False)]
                + _diag_schemes(with_units=False, with_psi=False))
    elif name == "C":
        out += (_monoidal_schemes() + _interchange_schemes() + _symmetry_schemes()
                + _psi_schemes() + _linear_schemes() + _diag_schemes()
                + [_psi_psi_1(), _psi_psi_2()] + _psi_c_schemes()
                + _terminal_schemes())
    elif name == "D":
        out += (_monoidal_schemes() + _interchange_schemes() + _symmetry_schemes()
                + _codiag_schemes())
    else:
        raise KeyError("no equation table for theory %r" % name)
    tags = [s.tag for s in out]
    assert len(tags) == len(set(tags)), "duplicate equation tags"
    return tuple(out)
