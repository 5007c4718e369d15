"""Shift-level and map-level predicates.

Images, kernel sets, equalizer sets, constituents, transitivity and
mixing, period sets, SFT-ness (absolute and relative), the injectivity
family, preinjectivity, and resolvingness.  Everything here is exact
except where a verdict explicitly says otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import automata as au
from . import verdicts as v
from .automata import Word
from .core import (
    BlockMap,
    EventuallyPeriodicPoint,
    Nfa,
    PeriodicPoint,
    Presentation,
    apply_map,
    center_of,
    diagonal_relation,
    full_shift,
    image_presentation,
    pair_symbol,
    presentation_from_nfa,
    product_alphabet,
    sft_approximation,
    split_pair,
    window_graph,
)
from .errors import BudgetExceeded, DomainMismatch, ValidationError, check_budget

image = image_presentation


# ---------------------------------------------------------------------------
# Subshift relations


@dataclass(frozen=True)
class SubshiftRelation:
    """A subshift of the product of two shifts, over the pair alphabet."""

    presentation: Presentation
    left: Presentation
    right: Presentation

    def alphabet_pairs(self) -> dict[str, tuple[str, str]]:
        return {t: split_pair(t) for t in self.presentation.alphabet}


def kernel_set(f: BlockMap) -> SubshiftRelation:
    """Pairs of source points with equal image."""
    x = f.source
    alphabet = product_alphabet(x.alphabet, x.alphabet)
    if x.is_empty():
        return SubshiftRelation(
            presentation_from_nfa(alphabet, Nfa(alphabet, 1, [], [0], [0])), x, x
        )
    nodes, trans = window_graph(x, f.width())
    n = len(nodes)
    check_budget(n * n, "kernel presentation")
    edges = []
    for k1 in range(n):
        for w1, t1 in trans[k1].items():
            out1 = f.local(w1)
            for k2 in range(n):
                for w2, t2 in trans[k2].items():
                    if f.local(w2) == out1:
                        edges.append(
                            (k1 * n + k2, pair_symbol(center_of(w1), center_of(w2)), t1 * n + t2)
                        )
    nfa = Nfa(alphabet, n * n, edges, range(n * n), range(n * n))
    return SubshiftRelation(presentation_from_nfa(alphabet, nfa), x, x)


def graph_relation(f: BlockMap) -> SubshiftRelation:
    """The relation {(x, f(x))} inside source x target."""
    x = f.source
    alphabet = product_alphabet(x.alphabet, f.target.alphabet)
    nodes, trans = window_graph(x, f.width())
    edges = []
    for k in range(len(nodes)):
        for w, t in trans[k].items():
            edges.append((k, pair_symbol(center_of(w), f.local(w)), t))
    nfa = Nfa(alphabet, max(1, len(nodes)), edges, range(len(nodes)), range(len(nodes)))
    return SubshiftRelation(presentation_from_nfa(alphabet, nfa), x, f.target)


def swap_relation(r: SubshiftRelation) -> SubshiftRelation:
    pres = r.presentation
    n = pres.n_live()
    alphabet = product_alphabet(r.right.alphabet, r.left.alphabet)
    edges = []
    for i in range(n):
        for t, j in pres.live_trans[i].items():
            a, b = split_pair(t)
            edges.append((i, pair_symbol(b, a), j))
    nfa = Nfa(alphabet, max(1, n), edges, range(n), range(n))
    return SubshiftRelation(presentation_from_nfa(alphabet, nfa), r.right, r.left)


def relation_projections(r: SubshiftRelation):
    """The two coordinate block maps out of the relation."""
    from .core import make_block_map

    pres = r.presentation
    pairs = r.alphabet_pairs()
    rule1 = {(t,): pairs[t][0] for t in pres.alphabet if pres.contains_word((t,))}
    rule2 = {(t,): pairs[t][1] for t in pres.alphabet if pres.contains_word((t,))}
    p1 = make_block_map(pres, r.left, 0, rule1)
    p2 = make_block_map(pres, r.right, 0, rule2)
    return p1, p2


def equalizer_set(f: BlockMap, g: BlockMap) -> Presentation:
    """The subshift {x : f(x) = g(x)} of the common source."""
    if not f.source.language_equal(g.source) or not f.target.language_equal(g.target):
        raise DomainMismatch("equalizer of maps with different domains")
    x = f.source
    if x.is_empty():
        return x
    r = max(f.radius, g.radius)
    fr = f.padded_rule(r)
    gr = g.padded_rule(r)
    nodes, trans = window_graph(x, 2 * r + 1)
    edges = []
    for k in range(len(nodes)):
        for w, t in trans[k].items():
            if fr[w] == gr[w]:
                edges.append((k, center_of(w), t))
    nfa = Nfa(x.alphabet, max(1, len(nodes)), edges, range(len(nodes)), range(len(nodes)))
    return presentation_from_nfa(x.alphabet, nfa)


def fiber_product(f: BlockMap, g: BlockMap) -> SubshiftRelation:
    """{(x, y) : f(x) = g(y)} for maps with a common target."""
    if not f.target.language_equal(g.target):
        raise DomainMismatch("fiber product needs a common target")
    x, y = f.source, g.source
    alphabet = product_alphabet(x.alphabet, y.alphabet)
    r = max(f.radius, g.radius)
    fr = f.padded_rule(r)
    gr = g.padded_rule(r)
    nx_nodes, nx_trans = window_graph(x, 2 * r + 1)
    ny_nodes, ny_trans = window_graph(y, 2 * r + 1)
    n1, n2 = len(nx_nodes), len(ny_nodes)
    check_budget(max(1, n1) * max(1, n2), "fiber product")
    edges = []
    for k1 in range(n1):
        for w1, t1 in nx_trans[k1].items():
            o1 = fr[w1]
            for k2 in range(n2):
                for w2, t2 in ny_trans[k2].items():
                    if gr[w2] == o1:
                        edges.append(
                            (k1 * n2 + k2, pair_symbol(center_of(w1), center_of(w2)), t1 * n2 + t2)
                        )
    nfa = Nfa(alphabet, max(1, n1 * n2), edges, range(n1 * n2), range(n1 * n2))
    return SubshiftRelation(presentation_from_nfa(alphabet, nfa), x, y)


def intersection_presentation(x: Presentation, y: Presentation) -> Presentation:
    """The subshift intersection (synchronized product on a shared alphabet)."""
    if set(x.alphabet) != set(y.alphabet):
        raise ValidationError("intersection needs a common alphabet")
    nx, ny = x.n_live(), y.n_live()
    edges = []
    for i in range(nx):
        for a, i2 in x.live_trans[i].items():
            for j in range(ny):
                j2 = y.live_trans[j].get(a)
                if j2 is not None:
                    edges.append((i * ny + j, a, i2 * ny + j2))
    nfa = Nfa(x.alphabet, max(1, nx * ny), edges, range(nx * ny), range(nx * ny))
    return presentation_from_nfa(x.alphabet, nfa)


def union_presentation(x: Presentation, y: Presentation) -> Presentation:
    """The union subshift (language union of factor languages)."""
    if set(x.alphabet) != set(y.alphabet):
        raise ValidationError("union needs a common alphabet")
    nx = x.n_live()
    edges = [(i, a, j) for i in range(nx) for a, j in x.live_trans[i].items()]
    for i in range(y.n_live()):
        for a, j in y.live_trans[i].items():
            edges.append((nx + i, a, nx + j))
    n = nx + y.n_live()
    nfa = Nfa(x.alphabet, max(1, n), edges, range(n), range(n))
    return presentation_from_nfa(x.alphabet, nfa)


# ---------------------------------------------------------------------------
# Constituents, transitivity, mixing


def _live_sccs(x: Presentation) -> list[list[int]]:
    n = x.n_live()

    def succ(i):
        return x.live_trans[i].values()

    comps = au.strongly_connected_components(range(n), succ)
    out = []
    for comp in comps:
        cs = set(comp)
        has_edge = any(j in cs for i in comp for j in x.live_trans[i].values())
        if has_edge:
            out.append(sorted(comp))
    return out


def scc_subshift(x: Presentation, comp: list[int]) -> Presentation:
    cs = set(comp)
    idx = {q: i for i, q in enumerate(comp)}
    edges = []
    for q in comp:
        for a, p in x.live_trans[q].items():
            if p in cs:
                edges.append((idx[q], a, idx[p]))
    nfa = Nfa(x.alphabet, len(comp), edges, range(len(comp)), range(len(comp)))
    return presentation_from_nfa(x.alphabet, nfa)


def constituents(x: Presentation) -> list[Presentation]:
    """Maximal transitive subshifts, from the SCCs of the canonical
    presentation (inclusion-maximal, deduplicated)."""
    subs = [scc_subshift(x, comp) for comp in _live_sccs(x)]
    out: list[Presentation] = []
    for s in subs:
        if any(s.included_in(t) for t in out):
            continue
        out = [t for t in out if not t.included_in(s)]
        out.append(s)
    return out


def is_transitive(x: Presentation) -> bool:
    if x.is_empty():
        return True
    return any(c.language_equal(x) for c in constituents(x))


def _follower_reduce_scc(x: Presentation, comp: list[int]):
    """Merge follower-equivalent states inside one SCC; returns the quotient
    graph as (state count, successor dict list)."""
    cs = set(comp)
    idx = {q: i for i, q in enumerate(comp)}
    trans = [{a: idx[p] for a, p in x.live_trans[q].items() if p in cs} for q in comp]
    syms = sorted(x.alphabet)
    cls = [1] * len(comp)
    while True:
        sigs: dict = {}
        new = [0] * len(comp)
        for i in range(len(comp)):
            sig = (cls[i], tuple(cls[trans[i][a]] if a in trans[i] else -1 for a in syms))
            if sig not in sigs:
                sigs[sig] = len(sigs) + 1
            new[i] = sigs[sig]
        if len(set(new)) == len(set(cls)):
            cls = new
            break
        cls = new
    classes = sorted(set(cls))
    pos = {c: i for i, c in enumerate(classes)}
    out: list[dict[str, int]] = [{} for _ in classes]
    for i in range(len(comp)):
        for a, j in trans[i].items():
            out[pos[cls[i]]][a] = pos[cls[j]]
    return len(classes), out


def shift_period(x: Presentation) -> int:
    """gcd of return times on the minimal synchronizing presentation of a
    transitive shift (0 for the empty shift)."""
    if x.is_empty():
        return 0
    for comp in _live_sccs(x):
        if scc_subshift(x, comp).language_equal(x):
            n, trans = _follower_reduce_scc(x, comp)
            return au.graph_period(range(n), lambda i: trans[i].values())
    raise ValidationError("shift_period requires a transitive presentation")


def is_mixing(x: Presentation) -> bool:
    if x.is_empty():
        return True
    if not is_transitive(x):
        return False
    return shift_period(x) == 1


# ---------------------------------------------------------------------------
# Period sets


@dataclass(frozen=True)
class PeriodSet:
    """The set {n >= 1 : some point is fixed by the n-th shift power},
    stored as an explicit part below ``threshold`` and a periodic pattern
    (period ``modulus``) beyond it."""

    threshold: int
    modulus: int
    explicit: frozenset[int]
    eventual: tuple[bool, ...]

    def contains(self, n: int) -> bool:
        if n < 1:
            return False
        if n < self.threshold:
            return n in self.explicit
        return self.eventual[(n - self.threshold) % self.modulus]

    def upto(self, n: int) -> list[int]:
        return [k for k in range(1, n + 1) if self.contains(k)]

    def is_empty_set(self) -> bool:
        return not self.explicit and not any(self.eventual)

    def is_cofinite(self) -> bool:
        return all(self.eventual)

    def residues(self) -> list[int]:
        return sorted({(self.threshold + i) % self.modulus for i, f in enumerate(self.eventual) if f})

    def subset_of(self, other: "PeriodSet") -> bool:
        bound = max(self.threshold, other.threshold) + math.lcm(self.modulus, other.modulus)
        return all(other.contains(n) for n in range(1, bound + 1) if self.contains(n))

    def first_not_in(self, other: "PeriodSet") -> int | None:
        bound = max(self.threshold, other.threshold) + math.lcm(self.modulus, other.modulus)
        for n in range(1, bound + 1):
            if self.contains(n) and not other.contains(n):
                return n
        return None


def periods(x: Presentation) -> PeriodSet:
    """Exact sigma^n fixed-point period set, via the word-action recurrence."""
    n_live = x.n_live()
    if n_live == 0:
        return PeriodSet(1, 1, frozenset(), (False,))
    sym_fns = {}
    for a in x.alphabet:
        sym_fns[a] = tuple(
            x.live_trans[i][a] if a in x.live_trans[i] else au.UNDEF
            for i in range(n_live)
        )
    sets: list[frozenset] = []
    seen: dict[frozenset, int] = {}
    current = frozenset(sym_fns.values())
    flags: list[bool] = []
    step_index = 1
    while current not in seen:
        seen[current] = step_index
        sets.append(current)
        flags.append(any(au.pfn_has_cycle(f) for f in current))
        check_budget(len(sets), "period recurrence")
        nxt = set()
        for f in current:
            for g in sym_fns.values():
                nxt.add(au.compose_pfn(f, g))
        current = frozenset(nxt)
        step_index += 1
    start = seen[current]
    threshold = start
    modulus = step_index - start
    explicit = frozenset(n for n in range(1, threshold) if flags[n - 1])
    eventual = tuple(flags[threshold - 1 + i] for i in range(modulus))
    return PeriodSet(threshold, modulus, explicit, eventual)


def is_peric(f: BlockMap) -> v.Verdict:
    """Whether every shift-power fixed point of the source is matched in the
    target: Per(source) included in Per(target)."""
    ps, pt = periods(f.source), periods(f.target)
    bad = ps.first_not_in(pt)
    if bad is None:
        return v.yes(certificate={"source_periods_upto": ps.upto(12)})
    return v.no(witness={"period": bad})


def retraction_peric(source: Presentation, target: Presentation) -> v.Verdict:
    """Period condition for a map target -> source to exist: Per(target)
    included in Per(source)."""
    ps, pt = periods(source), periods(target)
    bad = pt.first_not_in(ps)
    if bad is None:
        return v.yes()
    return v.no(witness={"period": bad})


# ---------------------------------------------------------------------------
# SFT-ness


def is_subsft_of(inner: Presentation, outer: Presentation, window_bound=None) -> v.Verdict:
    """Whether ``inner`` equals ``outer`` intersected with an SFT.

    YES carries the minimal window; NO carries a pumpable witness family
    (u, w, v) such that the points repeating w around u w^n v stay in the
    window approximations but leave ``inner`` for arbitrarily large n.
    """
    if not inner.included_in(outer):
        raise ValidationError("is_subsft_of: inner must be contained in outer")
    if inner.is_empty():
        return v.yes(certificate={"window": 1})
    bound = window_bound if window_bound is not None else 2 * inner.dfa.n**2 + 2
    outer_is_full = outer.language_equal(full_shift(outer.alphabet))
    exhausted = False

    def try_window(m):
        approx = sft_approximation(inner, m)
        cand = approx if outer_is_full else intersection_presentation(outer, approx)
        return cand.included_in(inner)

    # small windows first, then a witness search, then the remaining windows
    for m in range(1, min(4, bound) + 1):
        try:
            if try_window(m):
                return v.yes(certificate={"window": m})
        except BudgetExceeded:
            exhausted = True
            break
    wit = _non_subsft_witness(inner, outer)
    if wit is not None:
        return v.no(witness=wit, bound_used=bound)
    if not exhausted:
        for m in range(5, bound + 1):
            try:
                if try_window(m):
                    return v.yes(certificate={"window": m})
            except BudgetExceeded:
                exhausted = True
                break
    note = "window search exhausted without a pumpable witness"
    if exhausted:
        note += " (budget)"
    return v.undecided(bound_used=bound, note=note)


def _non_subsft_witness(inner: Presentation, outer: Presentation):
    """Search for (u, w, v) with: the w-tailed points around u and around v
    lie in ``inner``, and the w-tailed point around u w^n v lies in
    ``outer`` but outside ``inner`` for arbitrarily large n."""
    n_live = inner.n_live()
    max_w = max(2, n_live)
    max_uv = n_live + 2
    for w in _short_cyclic_words(inner, max_w):
        fw = inner.word_action(w)
        ei = {q for q in au.eventual_image(fw) if q != au.UNDEF}
        fd = au.forever_defined(fw)
        if not ei:
            continue
        us = _ep_mid_words(inner, ei, fd, max_uv)
        if not us:
            continue
        for u in us:
            for vv in us:
                wit = _check_uv_witness(inner, outer, u, w, vv)
                if wit is not None:
                    return wit
    return None


def _short_cyclic_words(x: Presentation, max_len: int):
    out = []
    seen = set()
    for n in range(1, max_len + 1):
        try:
            check_budget(len(x.alphabet) ** n, "witness word pool")
        except BudgetExceeded:
            break
        for w in x.words(n):
            if w in seen:
                continue
            if au.pfn_has_cycle(x.word_action(w)):
                seen.add(w)
                out.append(w)
    return out


def _ep_mid_words(x: Presentation, ei: set, fd: frozenset, max_len: int, cap: int = 4000):
    """Words u with the w-periodic tails around u giving a point of x."""
    out = []
    frontier = [((), frozenset(ei))]
    for _ in range(max_len + 1):
        new = []
        for word, states in frontier:
            if states & fd:
                out.append(word)
            if len(out) >= cap:
                return out
            if len(word) == max_len:
                continue
            for a in x.alphabet:
                nxt = frozenset(
                    s for s in (x.estep(q, a) for q in states) if s is not None
                )
                if nxt:
                    new.append((word + (a,), nxt))
        frontier = new
        if not frontier:
            break
    return out


def _ep_membership_pattern(x: Presentation, u: Word, w: Word, vv: Word):
    """Membership of the point ...w w . u w^n vv w w... in x, for n = 0..;
    returns (preperiod, period, flags)."""
    fw = x.word_action(w)
    ei = frozenset(q for q in au.eventual_image(fw) if q != au.UNDEF)
    fd = au.forever_defined(fw)

    def read(states, word):
        cur = set(states)
        for a in word:
            cur = {x.estep(q, a) for q in cur} - {None}
            if not cur:
                return frozenset()
        return frozenset(cur)

    def accept(states):
        return bool(read(states, vv) & fd)

    states = read(ei, u)
    seen = {states: 0}
    flags = [accept(states)]
    n = 0
    while True:
        n += 1
        check_budget(n, "membership pattern")
        states = read(states, w)
        if states in seen:
            return seen[states], n - seen[states], flags
        seen[states] = n
        flags.append(accept(states))


def _check_uv_witness(inner: Presentation, outer: Presentation, u: Word, w: Word, vv: Word):
    pre_i, per_i, flags_i = _ep_membership_pattern(inner, u, w, vv)
    pre_o, per_o, flags_o = _ep_membership_pattern(outer, u, w, vv)

    def mem(flags, pre, per, n):
        if n < len(flags):
            return flags[n]
        return flags[pre + (n - pre) % per]

    lim = max(pre_i + per_i, pre_o + per_o) + per_i * per_o
    for n in range(max(pre_i, pre_o), lim + 1):
        if mem(flags_o, pre_o, per_o, n) and not mem(flags_i, pre_i, per_i, n):
            # recurs along the eventual period
            n2 = n + math.lcm(per_i, per_o)
            if mem(flags_o, pre_o, per_o, n2) and not mem(flags_i, pre_i, per_i, n2):
                return {"u": u, "w": w, "v": vv, "n": n, "step": math.lcm(per_i, per_o)}
    return None


def is_sft(x: Presentation, window_bound=None) -> v.Verdict:
    return is_subsft_of(x, full_shift(x.alphabet), window_bound)


# ---------------------------------------------------------------------------
# Injectivity family, preinjectivity, resolvingness


def _off_diagonal(token: str) -> bool:
    a, b = split_pair(token)
    return a != b


@dataclass(frozen=True)
class InjectivityFamily:
    injective: bool
    injective_on_periodic: bool
    injective_on_uniform: bool


def injectivity_family(f: BlockMap) -> InjectivityFamily:
    ker = kernel_set(f).presentation
    n = ker.n_live()
    inj = True
    for i in range(n):
        for t in ker.live_trans[i]:
            if _off_diagonal(t):
                inj = False
                break
        if not inj:
            break
    ipp = True
    for comp in _live_sccs(ker):
        cs = set(comp)
        for i in comp:
            for t, j in ker.live_trans[i].items():
                if j in cs and _off_diagonal(t):
                    ipp = False
    uni = True
    ups = f.source.uniform_points()
    images = {}
    for a in ups:
        img = apply_map(f, PeriodicPoint((a,))).word
        if img in images:
            uni = False
        images[img] = a
    return InjectivityFamily(inj, ipp, uni)


def _diag_tail_states(rel: Presentation):
    """(backward, forward): states with an infinite purely-diagonal history /
    future inside the relation presentation."""
    n = rel.n_live()
    diag_succ = [
        {j for t, j in rel.live_trans[i].items() if not _off_diagonal(t)}
        for i in range(n)
    ]
    diag_pred = [set() for _ in range(n)]
    for i in range(n):
        for j in diag_succ[i]:
            diag_pred[j].add(i)

    def closure_on_cycles(succ):
        comps = au.strongly_connected_components(range(n), lambda i: succ[i])
        seeds = set()
        for comp in comps:
            cs = set(comp)
            if any(j in cs for i in comp for j in succ[i]):
                seeds |= cs
        out = set(seeds)
        queue = list(seeds)
        while queue:
            q = queue.pop()
            for p in succ[q]:
                if p not in out:
                    out.add(p)
                    queue.append(p)
        return out

    backward = closure_on_cycles(diag_succ)  # reachable from a diagonal cycle
    forward = closure_on_cycles(diag_pred)  # reaches a diagonal cycle
    return backward, forward


def is_preinjective(f: BlockMap) -> v.Verdict:
    """No two distinct finitely-differing points share an image.

    Decided on the kernel presentation: a violation is a path from an
    infinite diagonal history through an off-diagonal edge to an infinite
    diagonal future.
    """
    rel = kernel_set(f).presentation
    n = rel.n_live()
    backward, forward = _diag_tail_states(rel)
    reach = set(backward)
    queue = list(backward)
    while queue:
        q = queue.pop()
        for t, p in rel.live_trans[q].items():
            if p not in reach:
                reach.add(p)
                queue.append(p)
    coreach = set(forward)
    pred = [set() for _ in range(n)]
    for i in range(n):
        for t, j in rel.live_trans[i].items():
            pred[j].add(i)
    queue = list(forward)
    while queue:
        q = queue.pop()
        for p in pred[q]:
            if p not in coreach:
                coreach.add(p)
                queue.append(p)
    for i in range(n):
        if i in reach:
            for t, j in rel.live_trans[i].items():
                if j in coreach and _off_diagonal(t):
                    witness = _diamond_witness(rel, backward, forward, i, t, j)
                    report = {"pair": witness} if witness else None
                    out = v.no(witness=report)
                    return out
    note = None
    if is_transitive(f.source):
        sft = is_sft(f.source)
        if sft.yes:
            diag = diagonal_relation(f.source)
            consts = constituents(rel)
            ok = any(c.language_equal(diag) for c in consts)
            note = f"diagonal is a constituent: {ok}"
    return v.yes(note=note)


def _diagonal_cycle_seeds(rel: Presentation):
    """States on a purely diagonal cycle, with a first-return cycle word."""
    n = rel.n_live()
    diag_succ = [
        [(p, t) for t, p in rel.live_trans[i].items() if not _off_diagonal(t)]
        for i in range(n)
    ]
    seeds = {}
    comps = au.strongly_connected_components(range(n), lambda q: [p for p, _ in diag_succ[q]])
    for comp in comps:
        cs = set(comp)
        if not any(p in cs for q in comp for p, _ in diag_succ[q]):
            continue
        s = comp[0]
        prev: dict = {s: None}
        queue = [s]
        word = None
        while queue and word is None:
            q = queue.pop(0)
            for p, t in diag_succ[q]:
                if p == s:
                    parts = [t]
                    back = q
                    while back != s:
                        back, t2 = prev[back]
                        parts.append(t2)
                    word = tuple(reversed(parts))
                    break
                if p not in prev and p in cs:
                    prev[p] = (q, t)
                    queue.append(p)
        if word:
            for q in comp:
                seeds.setdefault(q, None)
            seeds[s] = word
    return {q: w for q, w in seeds.items() if w is not None}


def _path_word(rel: Presentation, sources, target):
    """Shortest path word from any source to the target, with its origin."""
    sources = sorted(sources)
    prev: dict = {s: None for s in sources}
    queue = list(sources)
    while queue:
        q = queue.pop(0)
        if q == target:
            parts = []
            back = q
            while prev[back] is not None:
                back, t = prev[back]
                parts.append(t)
            return tuple(reversed(parts)), back
        for t, p in sorted(rel.live_trans[q].items()):
            if p not in prev:
                prev[p] = (q, t)
                queue.append(p)
    return None


def _diamond_witness(rel: Presentation, backward, forward, i, tok, j):
    """Eventually periodic pair witnessing a diamond through the
    off-diagonal edge (i, tok, j): diagonal tails, finite difference."""
    seeds = _diagonal_cycle_seeds(rel)
    if not seeds:
        return None
    hit = _path_word(rel, set(seeds), i)
    if hit is None:
        return None
    mid1, origin = hit
    lword = seeds[origin]
    best = None
    for s2, rword in seeds.items():
        found = _path_word(rel, {j}, s2)
        if found is not None and (best is None or len(found[0]) < len(best[0])):
            best = (found[0], rword)
    if best is None:
        return None
    mid2, rword = best
    mid = mid1 + (tok,) + mid2
    lpair = [split_pair(t) for t in lword]
    mpair = [split_pair(t) for t in mid]
    rpair = [split_pair(t) for t in rword]
    p1 = EventuallyPeriodicPoint(
        tuple(a for a, _ in lpair), tuple(a for a, _ in mpair), tuple(a for a, _ in rpair)
    )
    p2 = EventuallyPeriodicPoint(
        tuple(b for _, b in lpair), tuple(b for _, b in mpair), tuple(b for _, b in rpair)
    )
    return (p1, p2)


@dataclass(frozen=True)
class Resolvingness:
    right_resolving: bool
    left_resolving: bool


def resolvingness(f: BlockMap) -> Resolvingness:
    rel = kernel_set(f).presentation
    backward, forward = _diag_tail_states(rel)
    right = True
    left = True
    for i in range(rel.n_live()):
        for t, j in rel.live_trans[i].items():
            if _off_diagonal(t):
                if i in backward:
                    right = False
                if j in forward:
                    left = False
    return Resolvingness(right, left)


# ---------------------------------------------------------------------------
# Finiteness and countability


def _simple_cycle_sccs(x: Presentation):
    """SCC list together with whether each is a simple cycle."""
    out = []
    for comp in _live_sccs(x):
        cs = set(comp)
        simple = True
        for i in comp:
            internal = [j for j in x.live_trans[i].values() if j in cs]
            if len(internal) != 1:
                simple = False
        out.append((comp, simple))
    return out


def is_countable(x: Presentation) -> bool:
    return all(simple for _, simple in _simple_cycle_sccs(x))


def is_finite(x: Presentation) -> bool:
    """Finitely many points: all SCCs are simple cycles and the shift equals
    the union of their cycle orbits."""
    sccs = _simple_cycle_sccs(x)
    if not all(simple for _, simple in sccs):
        return False
    if x.is_empty():
        return True
    orbit_union = None
    for comp, _ in sccs:
        orb = scc_subshift(x, comp)
        orbit_union = orb if orbit_union is None else union_presentation(orbit_union, orb)
    return orbit_union is not None and x.included_in(orbit_union)
