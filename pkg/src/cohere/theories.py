"""The twelve theories the engine decides, as feature-flag records.

Each theory fixes: which primitive heads may appear, how graph strands are
counted, what shape its graphs take, and how equality of arrows is decided
(by type alone for the preorders, by graph comparison otherwise).
"""

from __future__ import annotations

from dataclasses import dataclass

from .formulas import ALL_GENERATORS, FUNCTORS_ONLY

# graph kinds, ordered from strongest to weakest
IDENTITY = "identity"
BIJECTION = "bijection"
FUNCTION = "function"
RELATION = "relation"

KIND_RANK = {IDENTITY: 0, BIJECTION: 1, FUNCTION: 2, RELATION: 3}

PREORDER = "preorder"
GRAPH_FAITHFUL = "graph"

# head kind tags (structural operations comp/ten/under are always available)
H_ID = "id"
H_ASSOC = "a"
H_ASSOC_INV = "a'"
H_LUNIT = "l"
H_LUNIT_INV = "l'"
H_RUNIT = "r"
H_RUNIT_INV = "r'"
H_SYM = "c"
H_PSI = "psi"
H_PSI0 = "psi0"
H_PSI_L = "psiL"
H_PSI_R = "psiR"
H_DIAG = "delta"
H_CODIAG = "nabla"
H_TO_TERMINAL = "cobang"
H_FROM_INITIAL = "bang"

_MONOIDAL = frozenset({H_ID, H_ASSOC, H_ASSOC_INV, H_LUNIT, H_LUNIT_INV, H_RUNIT, H_RUNIT_INV})


@dataclass(frozen=True)
class Theory:
    name: str
    allowed_heads: frozenset
    counting_mode: str
    graph_kind: str
    decision_mode: str
    unit_allowed: bool = True

    def allows(self, head: str) -> bool:
        return head in self.allowed_heads

    def __repr__(self):
        return "Theory(%s)" % self.name


E = Theory("E", _MONOIDAL, FUNCTORS_ONLY, IDENTITY, PREORDER)
M = Theory("M", _MONOIDAL | {H_PSI, H_PSI0}, FUNCTORS_ONLY, FUNCTION, GRAPH_FAITHFUL)
MMINUS = Theory(
    "Mminus",
    frozenset({H_ID, H_ASSOC, H_ASSOC_INV, H_PSI}),
    FUNCTORS_ONLY,
    FUNCTION,
    PREORDER,
    unit_allowed=False,
)
LL = Theory("LL", _MONOIDAL | {H_PSI_L}, FUNCTORS_ONLY, IDENTITY, PREORDER)
LR = Theory("LR", _MONOIDAL | {H_PSI_R}, FUNCTORS_ONLY, BIJECTION, PREORDER)
L = Theory("L", _MONOIDAL | {H_PSI_L, H_PSI_R}, FUNCTORS_ONLY, BIJECTION, GRAPH_FAITHFUL)
MC = Theory("Mc", M.allowed_heads | {H_SYM}, ALL_GENERATORS, FUNCTION, GRAPH_FAITHFUL)
LC = Theory("Lc", L.allowed_heads | {H_SYM}, ALL_GENERATORS, BIJECTION, GRAPH_FAITHFUL)
R = Theory("R", MC.allowed_heads | {H_DIAG}, ALL_GENERATORS, RELATION, GRAPH_FAITHFUL)
RMINUS = Theory(
    "Rminus",
    frozenset({H_ID, H_ASSOC, H_ASSOC_INV, H_SYM, H_DIAG}),
    ALL_GENERATORS,
    RELATION,
    GRAPH_FAITHFUL,
    unit_allowed=False,
)
C = Theory("C", R.allowed_heads | {H_TO_TERMINAL}, ALL_GENERATORS, RELATION, GRAPH_FAITHFUL)
D = Theory(
    "D",
    _MONOIDAL | {H_SYM, H_CODIAG, H_FROM_INITIAL},
    ALL_GENERATORS,
    FUNCTION,
    GRAPH_FAITHFUL,
)

THEORIES = {t.name: t for t in (E, M, MMINUS, LL, LR, L, MC, LC, R, RMINUS, C, D)}


def theory(name: str) -> Theory:
    try:
        return THEORIES[name]
    except KeyError:
        raise KeyError("unknown theory %r (choose from %s)" % (name, ", ".join(sorted(THEORIES))))
