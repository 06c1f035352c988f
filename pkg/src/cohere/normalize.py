"""Normal forms for the two strict theories with graph-faithful contraction.

The procedure follows the shape: develop into single-head factors, move
every unit-preservation factor to the end (cancelling against contractions
where the strictified unit equations apply), move every symmetry factor
behind the contraction factors (absorbing or commuting via the
symmetry/contraction equations), sort the contraction prefix by the final
strand tau of each contracted occurrence, and canonicalise within each
equal-tau block.  The result is

    h ∘ g ∘ block_n ∘ … ∘ block_1

with strictly increasing block tau values, g made of atomized symmetry
factors only, and h a unit-preservation part whose compositions are
confined to towers over the empty body.

Every splice is justified by a named equation; pass a ``log`` list to
collect the tags.  With CHECK_SPLICES set, each splice re-checks boundary
and graph preservation, which turns any rule bug into an immediate error.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExhausted, HeadNotInTheory, IllTyped
from .formulas import ALL_GENERATORS, FUNCTORS_ONLY
from .graphs import Graph, compose_graphs, identity_graph
from .factors import (
    Developed,
    Factor,
    InsertEvent,
    MergeEvent,
    SwapEvent,
    apply_event,
    block_swap_events,
    body_at,
    develop,
    event_graph,
    event_term,
    factors_to_term,
    strand_position,
    transport_event,
)
from .strict import (
    SApp,
    SComp,
    SId,
    SPsi0,
    SUnder,
    StrictTerm,
    s_comp,
    s_ten,
    strict_count,
    strict_graph,
    strict_heads,
    strict_source_target,
)

CHECK_SPLICES = False

TAG_PSI_L_STRICT = "(ψ l) strict"
TAG_PSI_R_STRICT = "(ψ r) strict"
TAG_PSI_A = "(ψ a)"
TAG_PSI_C = "(ψ c)"
TAG_NATURALITY = "naturality"
TAG_PSIPSI1 = "(ΨΨ1)"
TAG_PSIPSI2 = "(ΨΨ2)"
TAG_PSIC1 = "(Ψc1)"
TAG_PSIC2 = "(Ψc2)"
TAG_PSIC3 = "(Ψc3)"
TAG_PSIC4 = "(Ψc4)"
TAG_SYMMETRIC = "symmetric coherence"


@dataclass(frozen=True)
class Block:
    factors: tuple
    tau_value: int


@dataclass(frozen=True)
class NormalFormM:
    source: tuple
    target: tuple
    blocks: tuple
    h_part: StrictTerm
    h_factors: tuple

    @property
    def block_factors(self):
        return tuple(f for b in self.blocks for f in b.factors)


@dataclass(frozen=True)
class NormalFormMc:
    source: tuple
    target: tuple
    blocks: tuple
    g_part: StrictTerm
    g_factors: tuple
    h_part: StrictTerm
    h_factors: tuple

    @property
    def block_factors(self):
        return tuple(f for b in self.blocks for f in b.factors)


def readback(nf) -> StrictTerm:
    """Compose a normal form back into one strict term."""
    term = SId(nf.source)
    formula = nf.source
    for f in nf.block_factors:
        term = s_comp(event_term(f.event, formula), term)
        formula = apply_event(f.event, formula)
    if isinstance(nf, NormalFormMc):
        for f in nf.g_factors:
            term = s_comp(event_term(f.event, formula), term)
            formula = apply_event(f.event, formula)
    term = s_comp(nf.h_part, term)
    return term


# ---------------------------------------------------------------------------
# the rewrite engine


class _Engine:
    def __init__(self, source, events, symmetric, mode, budget, log):
        self.symmetric = symmetric
        self.mode = mode
        self.log = log if log is not None else []
        self.events = list(events)
        self.formulas = [source]
        self._extend_formulas()
        self.budget = budget if budget is not None else 2000 + 60 * (len(self.events) + 2) ** 3
        if CHECK_SPLICES:
            self._graph = self._total_graph()

    # -- bookkeeping

    def _extend_formulas(self):
        while len(self.formulas) <= len(self.events):
            i = len(self.formulas) - 1
            self.formulas.append(apply_event(self.events[i], self.formulas[i]))

    def _total_graph(self) -> Graph:
        g = identity_graph(strict_count(self.formulas[0], self.mode))
        for ev, f in zip(self.events, self.formulas):
            g = compose_graphs(g, event_graph(ev, f, self.mode))
        return g

    def _splice(self, idx, count, replacement, tag):
        self.budget -= 1
        if self.budget < 0:
            raise BudgetExhausted("normalisation step budget exhausted (internal bug)")
        self.events[idx: idx + count] = replacement
        del self.formulas[idx + 1:]
        self._extend_formulas()
        self.log.append(tag)
        if CHECK_SPLICES:
            if self.formulas[-1] != strict_source_target(SId(self.formulas[-1]))[0]:
                raise AssertionError("unreachable")
            g = self._total_graph()
            if g.pairs != self._graph.pairs:
                raise AssertionError("splice %r changed the graph" % tag)

    # -- stage A: inserts to the back, swaps behind merges

    def _interact_insert(self, idx):
        u = self.events[idx]
        v = self.events[idx + 1]
        base = self.formulas[idx]
        created = u.path + (u.gap,)
        if isinstance(v, SwapEvent):
            if v.path == u.path and v.pos == u.gap:
                self._splice(idx, 2, [InsertEvent(u.index, u.path, u.gap + 1)], TAG_NATURALITY)
                return
            if v.path == u.path and v.pos + 1 == u.gap:
                self._splice(idx, 2, [InsertEvent(u.index, u.path, u.gap - 1)], TAG_NATURALITY)
                return
        elif isinstance(v, MergeEvent):
            first = v.path + (v.pos,)
            second = v.path + (v.second(),)
            if first == created:
                if v.middles == 0:
                    self._splice(idx, 2, [], TAG_PSI_L_STRICT)
                else:
                    cs = block_swap_events(u.path, u.gap, v.middles, 1)
                    self._splice(idx, 2, cs, TAG_PSI_L_STRICT)
                return
            if second == created:
                self._splice(idx, 2, [], TAG_PSI_R_STRICT)
                return
        elif isinstance(v, InsertEvent):
            raise AssertionError("insert/insert pairs are not reordered")
        v2 = transport_event(v, u, base, forward=False)
        u2 = transport_event(u, v2, base, forward=True)
        self._splice(idx, 2, [v2, u2], TAG_NATURALITY)

    def _interact_swap_merge(self, idx):
        u = self.events[idx]
        v = self.events[idx + 1]
        base = self.formulas[idx]
        if v.path == u.path:
            k, pos, b = u.pos, v.pos, v.middles
            second = pos + b + 1
            if k + 1 == pos:
                self._splice(
                    idx, 2,
                    [MergeEvent(v.index, v.path, pos - 1, b + 1), SwapEvent(u.path, pos - 1)],
                    TAG_PSIC1,
                )
                return
            if k == pos and b == 0:
                body = body_at(base, v.path)
                s1 = len(body[pos].body)
                s2 = len(body[pos + 1].body)
                cs = block_swap_events(v.path + (pos,), 0, s1, s2)
                self._splice(idx, 2, [MergeEvent(v.index, v.path, pos, 0)] + cs, TAG_PSI_C)
                return
            if k == pos:
                self._splice(
                    idx, 2,
                    [MergeEvent(v.index, v.path, pos + 1, b - 1), SwapEvent(u.path, pos)],
                    TAG_PSIC2,
                )
                return
            if k == second:
                self._splice(idx, 2, [MergeEvent(v.index, v.path, pos, b + 1)], TAG_PSIC3)
                return
            if k + 1 == second:
                self._splice(idx, 2, [MergeEvent(v.index, v.path, pos, b - 1)], TAG_PSIC4)
                return
        v2 = transport_event(v, u, base, forward=False)
        u2 = transport_event(u, v2, base, forward=True)
        self._splice(idx, 2, [v2, u2], TAG_NATURALITY)

    def _stage_a(self):
        fired = True
        while fired:
            fired = False
            for idx in range(len(self.events) - 1):
                u, v = self.events[idx], self.events[idx + 1]
                if isinstance(u, InsertEvent) and not isinstance(v, InsertEvent):
                    self._interact_insert(idx)
                    fired = True
                    break
                if isinstance(u, SwapEvent) and isinstance(v, MergeEvent):
                    self._interact_swap_merge(idx)
                    fired = True
                    break

    # -- stage B: tau-sort and block canonicalisation of the merge prefix

    def _merge_prefix(self):
        k = 0
        while k < len(self.events) and isinstance(self.events[k], MergeEvent):
            k += 1
        for ev in self.events[k:]:
            if isinstance(ev, MergeEvent):
                raise AssertionError("merge behind the merge prefix after stage A")
        return k

    def _taus(self, k):
        out = [0] * k
        suffix = identity_graph(strict_count(self.formulas[k], self.mode))
        for j in range(k - 1, -1, -1):
            ev = self.events[j]
            kap = strand_position(self.formulas[j], ev.path, ev.pos, self.mode)
            image = suffix.image(kap)
            if len(image) != 1:
                raise AssertionError("non-functional suffix in tau computation")
            out[j] = next(iter(image))
            suffix = compose_graphs(event_graph(ev, self.formulas[j], self.mode), suffix)
        return out

    def _consuming_rewrite(self, idx):
        """Reassociate or unskip an adjacent contraction pair; None if the
        pair does not interact through a shared atom."""
        u, v = self.events[idx], self.events[idx + 1]
        base = self.formulas[idx]
        u_merged = u.path + (u.pos,)
        v_first = v.path + (v.pos,)
        v_second = v.path + (v.second(),)
        if v_second == u_merged:
            pu, bu = u.pos, u.middles
            pv, bv = v.pos, v.middles
            if not (v.path == u.path and pv < pu and bv == pu - pv - 1 and v.index == u.index):
                raise AssertionError("inconsistent right-leaning pair")
            tag = TAG_PSIPSI2 if self.symmetric else TAG_PSI_A
            self._splice(
                idx, 2,
                [
                    MergeEvent(u.index, u.path, pv, pu - pv - 1),
                    MergeEvent(u.index, u.path, pv, pu + bu - pv - 1),
                ],
                tag,
            )
            return True
        if v_first == u_merged and v.path == u.path:
            m = v.second()
            if u.pos < m <= u.pos + u.middles:
                body = body_at(base, u.path)
                s1 = len(body[u.pos].body)
                s2 = len(body[m].body)
                s3 = len(body[u.second()].body)
                cs = block_swap_events(u.path + (u.pos,), s1, s2, s3)
                self._splice(
                    idx, 2,
                    [
                        MergeEvent(u.index, u.path, u.pos, m - u.pos - 1),
                        MergeEvent(u.index, u.path, u.pos, u.middles - 1),
                    ] + cs,
                    TAG_PSIPSI1,
                )
                return True
        return False

    def _stage_b(self):
        k = self._merge_prefix()
        if k < 2:
            return False
        taus = self._taus(k)
        for idx in range(k - 1):
            u, v = self.events[idx], self.events[idx + 1]
            base = self.formulas[idx]
            u_merged = u.path + (u.pos,)
            forced = (v.path + (v.pos,) == u_merged) or (v.path + (v.second(),) == u_merged)
            if taus[idx + 1] < taus[idx]:
                if self._consuming_rewrite(idx):
                    return True
                v2 = transport_event(v, u, base, forward=False)
                u2 = transport_event(u, v2, base, forward=True)
                self._splice(idx, 2, [v2, u2], TAG_NATURALITY)
                return True
            if taus[idx + 1] == taus[idx]:
                if self._consuming_rewrite(idx):
                    return True
                if forced:
                    continue
                v2 = transport_event(v, u, base, forward=False)
                ku = strand_position(base, u.path, u.pos, self.mode)
                kv = strand_position(base, v2.path, v2.pos, self.mode)
                if kv < ku:
                    u2 = transport_event(u, v2, base, forward=True)
                    self._splice(idx, 2, [v2, u2], TAG_PSI_A if not self.symmetric else TAG_PSIPSI2)
                    return True
        return False

    # -- stage C: canonical symmetry suffix and insert suffix

    def _canonicalise_swaps(self, start, end):
        """Replace events[start:end] (all swaps) by the canonical
        transposition sequence realising the same sibling permutations."""
        if start == end:
            return
        base = self.formulas[start]
        # track each atom of `base` to its final address
        swaps = self.events[start:end]
        current = {}

        def seed(body, path):
            for i2, atom in enumerate(body):
                current[path + (i2,)] = path + (i2,)
                if isinstance(atom, SApp):
                    seed(atom.body, path + (i2,))

        seed(base, ())
        f = base
        for ev in swaps:
            a1 = ev.path + (ev.pos,)
            a2 = ev.path + (ev.pos + 1,)
            moved = {}
            for cur, srcaddr in current.items():
                if cur[: len(a1)] == a1:
                    moved[a2 + cur[len(a1):]] = srcaddr
                elif cur[: len(a2)] == a2:
                    moved[a1 + cur[len(a2):]] = srcaddr
                else:
                    moved[cur] = srcaddr
            current = moved
            f = apply_event(ev, f)
        final_of = {src: cur for cur, src in current.items()}
        # emit per body, outermost first, sorting siblings by target position
        out = []

        def emit(body, path, addr_of):
            # addr_of maps source sibling index -> source address; realise the
            # sibling permutation by selection with adjacent transpositions
            n = len(body)
            perm = [final_of[addr_of[i2]][-1] for i2 in range(n)]
            labels = perm[:]
            for slot in range(n):
                c = labels.index(slot)
                while c > slot:
                    out.append(SwapEvent(path, c - 1))
                    labels[c - 1], labels[c] = labels[c], labels[c - 1]
                    c -= 1
            # recurse into children in final order
            sorted_atoms = [None] * n
            child_addr = {}
            for i2, atom in enumerate(body):
                sorted_atoms[perm[i2]] = atom
                child_addr[perm[i2]] = addr_of[i2]
            for i2, atom in enumerate(sorted_atoms):
                if isinstance(atom, SApp):
                    inner_addr = {
                        j2: child_addr[i2] + (j2,) for j2 in range(len(atom.body))
                    }
                    emit(atom.body, path + (i2,), inner_addr)

        emit(base, (), {i2: (i2,) for i2 in range(len(base))})
        if CHECK_SPLICES:
            check = base
            for ev in out:
                check = apply_event(ev, check)
            if check != f:
                raise AssertionError("canonical swap suffix diverged")
        self.events[start:end] = out
        del self.formulas[start + 1:]
        self._extend_formulas()
        if out or swaps:
            self.log.append(TAG_SYMMETRIC)

    def _canonicalise_inserts(self, start):
        """Reorder the trailing insert events into tree preorder of the
        atoms they create."""
        inserts = self.events[start:]
        if not inserts:
            return
        base = self.formulas[start]
        created = []
        for ev in inserts:
            for item in created:
                addr = item[1]
                # shift earlier created atoms sitting at or after the new gap
                if addr[: len(ev.path)] == ev.path and len(addr) > len(ev.path):
                    j2 = addr[len(ev.path)]
                    if j2 >= ev.gap:
                        item[1] = ev.path + (j2 + 1,) + addr[len(ev.path) + 1:]
            created.append([ev.index, ev.path + (ev.gap,)])
        created.sort(key=lambda item: item[1])
        out = [InsertEvent(index, addr[:-1], addr[-1]) for index, addr in created]
        if CHECK_SPLICES:
            f0 = base
            for ev in out:
                f0 = apply_event(ev, f0)
            if f0 != self.formulas[-1]:
                raise AssertionError("canonical insert suffix diverged")
        self.events[start:] = out
        del self.formulas[start + 1:]
        self._extend_formulas()

    def run(self):
        while True:
            self._stage_a()
            if not self._stage_b():
                break
        k = self._merge_prefix()
        c_end = k
        while c_end < len(self.events) and isinstance(self.events[c_end], SwapEvent):
            c_end += 1
        for ev in self.events[c_end:]:
            if not isinstance(ev, InsertEvent):
                raise AssertionError("stage A left a stray factor behind the swaps")
        self._canonicalise_swaps(k, c_end)
        c_end = k
        while c_end < len(self.events) and isinstance(self.events[c_end], SwapEvent):
            c_end += 1
        self._canonicalise_inserts(c_end)
        return k, c_end


# ---------------------------------------------------------------------------
# public entry points


def _check_heads(t: StrictTerm, allowed, theory_name):
    for head in strict_heads(t):
        if head.head not in allowed:
            raise HeadNotInTheory(head.head, theory_name)


def _factors(events, formula):
    out = []
    for ev in events:
        out.append(Factor(formula, ev))
        formula = apply_event(ev, formula)
    return tuple(out), formula


def _blocks(engine, k):
    if k == 0:
        return ()
    taus = engine._taus(k)
    factors, _ = _factors(engine.events[:k], engine.formulas[0])
    blocks = []
    i = 0
    while i < k:
        j = i
        while j + 1 < k and taus[j + 1] == taus[i]:
            j += 1
        blocks.append(Block(tuple(factors[i: j + 1]), taus[i]))
        i = j + 1
    values = [b.tau_value for b in blocks]
    if values != sorted(set(values)):
        raise AssertionError("block tau values fail to increase strictly")
    return tuple(blocks)


def _h_part(engine, start):
    """Fuse the trailing inserts into tower chains and compose them."""
    events = engine.events[start:]
    factors, _ = _factors(events, engine.formulas[start])
    formula = engine.formulas[start]
    term = SId(formula)
    i = 0
    while i < len(events):
        chain = [events[i]]
        while (
            i + len(chain) < len(events)
            and events[i + len(chain)].path == chain[-1].path + (chain[-1].gap,)
            and events[i + len(chain)].gap == 0
        ):
            chain.append(events[i + len(chain)])
        # tower composition: the outermost unit step first, each further
        # step wrapped in the functors already built
        core = SPsi0(chain[0].index)
        indices = [chain[0].index]
        for ev in chain[1:]:
            step = SPsi0(ev.index)
            for j in reversed(indices):
                step = SUnder(j, step)
            core = SComp(step, core)
            indices.append(ev.index)
        base = chain[0]
        body = body_at(formula, base.path)
        factor_term = core
        if base.gap > 0:
            factor_term = s_ten(SId(body[: base.gap]), factor_term)
        if base.gap < len(body):
            factor_term = s_ten(factor_term, SId(body[base.gap:]))
        for depth in range(len(base.path) - 1, -1, -1):
            parent = body_at(formula, base.path[:depth])
            idx = base.path[depth]
            factor_term = SUnder(parent[idx].index, factor_term)
            if idx > 0:
                factor_term = s_ten(SId(parent[:idx]), factor_term)
            if idx + 1 < len(parent):
                factor_term = s_ten(factor_term, SId(parent[idx + 1:]))
        term = s_comp(factor_term, term)
        for ev in chain:
            formula = apply_event(ev, formula)
        i += len(chain)
    return term, factors


def normalize_M(t: StrictTerm, budget=None, log=None) -> NormalFormM:
    """Normal form in the strict theory with contraction and unit
    preservation but no symmetry."""
    _check_heads(t, {"psi", "psi0"}, "M strict")
    d = develop(t)
    engine = _Engine(d.source, d.events(), symmetric=False, mode=FUNCTORS_ONLY,
                     budget=budget, log=log)
    k, c_end = engine.run()
    if c_end != k:
        raise AssertionError("symmetry factors in a symmetry-free theory")
    blocks = _blocks(engine, k)
    h_term, h_factors = _h_part(engine, k)
    return NormalFormM(d.source, d.target, blocks, h_term, h_factors)


def normalize_Mc(t: StrictTerm, budget=None, log=None) -> NormalFormMc:
    """Normal form in the strict symmetric theory with contraction."""
    _check_heads(t, {"psi", "psi0", "c"}, "Mc strict")
    d = develop(t)
    engine = _Engine(d.source, d.events(), symmetric=True, mode=ALL_GENERATORS,
                     budget=budget, log=log)
    k, c_end = engine.run()
    blocks = _blocks(engine, k)
    g_factors, _ = _factors(engine.events[k:c_end], engine.formulas[k])
    g_term = factors_to_term(engine.formulas[k], engine.events[k:c_end])
    h_term, h_factors = _h_part(engine, c_end)
    return NormalFormMc(d.source, d.target, blocks, g_term, g_factors, h_term, h_factors)


def strict_boundary(t: StrictTerm):
    return strict_source_target(t)


def normal_form_graph(nf, mode):
    return strict_graph(readback(nf), mode)
