"""The morphism classifier: epic, monic, split epic, split monic,
regular epic, regular monic, per category.

Split epicness follows the two-sided strategy: the strong periodic point
condition is checked for p = 1..p_cap (a NO at any p is final), and a
bounded search looks for an actual section (a YES always carries one).
Blank cells of the classification table surface as UNDECIDED.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import analysis as an
from . import automata as au
from . import limits as li
from . import verdicts as v
from .automata import Nfa, Word
from .core import (
    BlockMap,
    PeriodicPoint,
    Presentation,
    apply_map,
    block_symbol,
    compose,
    identity_map,
    make_block_map,
    maps_equal,
    recode_to_symbol_map,
    reduce_radius,
)
from .errors import BudgetExceeded, ValidationError, check_budget
from .limits import CategoryTag

DEFAULT_P_CAP = 6
DEFAULT_RADIUS_CAP = 3
SEARCH_LIMIT = 4000


# ---------------------------------------------------------------------------
# Epicness


def is_epic(f: BlockMap, cat: CategoryTag) -> v.Verdict:
    """Epic = surjective, in all twelve categories."""
    li.check_morphism(cat, f)
    img = an.image(f)
    missing = au.separating_word(f.target.dfa, img.dfa)
    if missing is None:
        return v.yes()
    return v.no(witness={"word": missing})


# ---------------------------------------------------------------------------
# Monicness


def is_monic(f: BlockMap, cat: CategoryTag) -> v.Verdict:
    li.check_morphism(cat, f)
    fam = an.injectivity_family(f)
    r, lvl = cat.restriction, cat.level
    if (r, lvl) in (("K", 2), ("K", 3), ("T", 2)):
        return v.yes() if fam.injective else v.no(note="not injective")
    if (r, lvl) == ("T", 3):
        return v.yes() if fam.injective_on_periodic else v.no(note="not injective on periodic points")
    if r == "P":
        pre = an.is_preinjective(f)
        if pre.yes:
            return v.yes(note="preinjective")
        if lvl in (1, 2):
            return v.no(witness=pre.witness, note="not preinjective")
        return v.undecided(note="not preinjective; no exact P3 criterion")
    if r == "M" and lvl == 2:
        return _monic_m2(f)
    if r == "M" and lvl == 3:
        return _monic_m3(f, fam)
    # level-1 unpointed categories: only the known implications
    if fam.injective:
        return v.yes(note="injective")
    pre = an.is_preinjective(f)
    if pre.no:
        return v.no(witness=pre.witness, note="not preinjective")
    if r == "M" and not fam.injective_on_uniform:
        return v.no(note="not injective on uniform points")
    return v.undecided(note="open in the classification table")


def _off_diag_parts(kernel: Presentation, x: Presentation):
    """(scc subshifts, diagonal) for kernel analyses."""
    from .core import diagonal_relation

    diag = diagonal_relation(x)
    subs = [an.scc_subshift(kernel, comp) for comp in an._live_sccs(kernel)]
    return subs, diag


def _monic_m2(f: BlockMap) -> v.Verdict:
    ker = an.kernel_set(f).presentation
    from .core import diagonal_relation

    diag = diagonal_relation(f.source)
    consts = an.constituents(ker)
    mixing_off = [c for c in consts if an.is_mixing(c) and not c.language_equal(diag)]
    if mixing_off:
        return v.no(note="kernel has a mixing constituent besides the diagonal",
                    witness={"constituents": len(consts)})
    return v.yes(certificate={"constituents": len(consts)})


def _monic_m3(f: BlockMap, fam) -> v.Verdict:
    if fam.injective:
        return v.yes(note="injective")
    if fam.injective_on_periodic:
        return v.yes(note="injective on periodic points")
    ker = an.kernel_set(f).presentation
    subs, diag = _off_diag_parts(ker, f.source)
    for s in subs:
        if not s.included_in(diag) and an.is_mixing(s) and not s.is_empty():
            return v.no(note="kernel contains a mixing sofic subshift off the diagonal")
    consts = an.constituents(ker)
    safe = True
    for c in consts:
        if c.included_in(diag):
            continue
        if diag.included_in(c) and not c.language_equal(diag):
            safe = False
            break
        if an.is_mixing(c):
            safe = False  # handled above unless inside diag; be conservative
            break
        if an.periods(c).is_cofinite():
            safe = False
            break
    if safe:
        return v.yes(note="all off-diagonal constituents have sparse period sets")
    return v.undecided(note="no witness among the implemented classes")


# ---------------------------------------------------------------------------
# The strong periodic point condition


@dataclass(frozen=True)
class StrongConditionReport:
    p: int
    holds: bool
    assignment: tuple[tuple[Word, Word], ...] = ()
    failures: tuple[dict, ...] = ()
    pointwise: dict | None = None

    def failing_tuple(self):
        if self.pointwise is not None:
            return self.pointwise
        return self.failures[0] if self.failures else None


def _periodic_words_upto(y: Presentation, p: int) -> list[Word]:
    out = []
    for n in range(1, p + 1):
        for w in y.words(n):
            if y.contains_periodic(w):
                out.append(w)
    return out


def _aligned_periodic_preimages(f: BlockMap, u: Word) -> list[Word]:
    """Words a with the a-periodic point mapping onto the u-periodic point,
    phase aligned."""
    out = []
    for a in f.source.words(len(u)):
        if not f.source.contains_periodic(a):
            continue
        if apply_map(f, PeriodicPoint(a)).word == u:
            out.append(a)
    return out


class _StrongConditionEngine:
    """Automaton plumbing shared across the (u, v) pair checks."""

    def __init__(self, f: BlockMap):
        self.f = f
        self.y = f.target
        f0, to_blocks, _ = recode_to_symbol_map(f)
        self.f0 = f0
        self.xb = f0.source
        self.pre_syms: dict[str, list[str]] = {}
        for t in self.xb.alphabet:
            if self.xb.contains_word((t,)):
                self.pre_syms.setdefault(f0.local((t,)), []).append(t)

    def block_word(self, a: Word) -> Word:
        """The higher-block reading of the a-periodic point at phase 0."""
        r = self.f.radius
        p = PeriodicPoint(a)
        if r == 0:
            return a
        return tuple(block_symbol(p.segment(j - r, j + r + 1)) for j in range(len(a)))

    def _step_pre(self, states: frozenset, sym: str) -> frozenset:
        nxt = set()
        for q in states:
            for t in self.pre_syms.get(sym, ()):
                q2 = self.xb.estep(q, t)
                if q2 is not None:
                    nxt.add(q2)
        return frozenset(nxt)

    def _block_closure(self, seed: frozenset, word: Word) -> frozenset:
        """Closure of ``seed`` under whole-word preimage steps."""
        cur = frozenset(seed)
        while True:
            step = cur
            for sym in word:
                step = self._step_pre(step, sym)
            new = cur | step
            if new == cur:
                return cur
            cur = new

    def good_nfa(self, u: Word, a: Word, vv: Word, b: Word) -> Nfa:
        ab = self.block_word(a)
        bb = self.block_word(b)
        ei = frozenset(
            q for q in au.eventual_image(self.xb.word_action(ab)) if q != au.UNDEF
        )
        s0 = self._block_closure(ei, u)
        fwd = au.forever_defined(self.xb.word_action(bb))
        acc = set(fwd)
        while True:
            grew = False
            for q in range(self.xb.n_live()):
                if q in acc:
                    continue
                step = frozenset([q])
                for sym in vv:
                    step = self._step_pre(step, sym)
                if step & acc:
                    acc.add(q)
                    grew = True
            if not grew:
                break
        n = self.xb.n_live()
        edges = []
        for q in range(n):
            for t, q2 in self.xb.live_trans[q].items():
                edges.append((q, self.f0.local((t,)), q2))
        return Nfa(self.y.alphabet, max(1, n), edges, s0, acc)

    def allw_nfa(self, u: Word, vv: Word) -> Nfa:
        y = self.y
        ei = frozenset(q for q in au.eventual_image(y.word_action(u)) if q != au.UNDEF)
        fwd = au.forever_defined(y.word_action(vv))
        n = y.n_live()
        edges = []
        for q in range(n):
            for sym, q2 in y.live_trans[q].items():
                edges.append((q, sym, q2))
        return Nfa(y.alphabet, max(1, n), edges, ei, fwd)


def strong_condition(f: BlockMap, p: int) -> StrongConditionReport:
    """Decide the strong p-periodic point condition exactly.

    A failing report carries tuples (u, v, w, a, b): with preimage tails a
    for u and b for v, the point repeating u, reading w, then repeating v
    has no conforming preimage.
    """
    y = f.target
    words = _periodic_words_upto(y, p)
    if not words:
        return StrongConditionReport(p, True)
    engine = _StrongConditionEngine(f)
    cands: dict[Word, list[Word]] = {}
    failures: list[dict] = []
    for u in words:
        cands[u] = _aligned_periodic_preimages(f, u)
        if not cands[u]:
            failures.append({"u": u, "reason": "no aligned periodic preimage of the same length"})
    if failures:
        return StrongConditionReport(p, False, failures=tuple(failures))

    detL: dict = {}
    detG: dict = {}

    def l_dfa(u, vv):
        if (u, vv) not in detL:
            detL[(u, vv)] = au.determinize(engine.allw_nfa(u, vv))
        return detL[(u, vv)]

    def g_dfa(u, a, vv, b):
        key = (u, a, vv, b)
        if key not in detG:
            detG[key] = au.determinize(engine.good_nfa(u, a, vv, b))
        return detG[key]

    ok_cache: dict = {}

    def pair_ok(u, a, vv, b) -> bool:
        key = (u, a, vv, b)
        if key not in ok_cache:
            ok_cache[key] = au.included(l_dfa(u, vv), g_dfa(u, a, vv, b))
        return ok_cache[key]

    # unary pruning on the diagonal
    for u in words:
        kept = []
        for a in cands[u]:
            if pair_ok(u, a, u, a):
                kept.append(a)
            else:
                w = au.separating_word(l_dfa(u, u), g_dfa(u, a, u, a))
                failures.append({"u": u, "v": u, "w": w, "a": a, "b": a})
        cands[u] = kept
        if not kept:
            return StrongConditionReport(p, False, failures=tuple(failures))

    # pointwise failing tuple: some (u, v, w) bad for every candidate pair
    for u in words:
        for vv in words:
            pairs = (
                [(a, a) for a in cands[u]]
                if u == vv
                else [(a, b) for a in cands[u] for b in cands[vv]]
            )
            bad = l_dfa(u, vv)
            for a, b in pairs:
                bad = au.product_dfa(bad, g_dfa(u, a, vv, b), lambda x, yy: x and not yy)
            w = au.shortest_accepted(bad)
            if w is not None:
                tuples = tuple(
                    {"u": u, "v": vv, "w": w, "a": a, "b": b} for a, b in pairs
                )
                return StrongConditionReport(
                    p, False, failures=tuples, pointwise={"u": u, "v": vv, "w": w}
                )

    # backtracking over consistent assignments
    order = sorted(words, key=lambda u: (len(cands[u]), u))
    assign: dict[Word, Word] = {}

    def consistent(u, a) -> bool:
        if not pair_ok(u, a, u, a):
            return False
        for vv, b in assign.items():
            if not pair_ok(u, a, vv, b) or not pair_ok(vv, b, u, a):
                return False
        return True

    def solve(i: int) -> bool:
        if i == len(order):
            return True
        u = order[i]
        for a in cands[u]:
            if consistent(u, a):
                assign[u] = a
                if solve(i + 1):
                    return True
                del assign[u]
        return False

    if solve(0):
        return StrongConditionReport(
            p, True, assignment=tuple(sorted(assign.items()))
        )
    return StrongConditionReport(
        p,
        False,
        failures=tuple(failures)
        + ({"reason": "no globally consistent preimage assignment"},),
    )


# ---------------------------------------------------------------------------
# Section and retraction searches


def _csp_solutions(variables, domains, pair_ok, limit):
    """DFS over assignments; ``pair_ok(i, vi, j, vj)`` constrains assigned
    pairs.  Yields complete assignments as dicts."""
    order = sorted(range(len(variables)), key=lambda i: len(domains[i]))
    assign: dict[int, object] = {}
    produced = 0

    def rec(k: int):
        nonlocal produced
        if produced >= limit:
            return
        if k == len(order):
            produced += 1
            yield dict(assign)
            return
        i = order[k]
        for val in domains[i]:
            if all(pair_ok(i, val, j, w) and pair_ok(j, w, i, val) for j, w in assign.items()):
                assign[i] = val
                yield from rec(k + 1)
                del assign[i]
                if produced >= limit:
                    return

    yield from rec(0)


def find_section(f: BlockMap, radius_cap: int = DEFAULT_RADIUS_CAP, pointed: bool = False):
    """Search for g with f . g = identity on the target, at block-level
    radii 0..radius_cap.  Returns g or None."""
    y = f.target
    if y.is_empty():
        return make_block_map(y, f.source, 0, {}, validate_image=False)
    f0, to_blocks, from_blocks = recode_to_symbol_map(f)
    xb = f0.source
    pre: dict[str, list[str]] = {}
    for t in xb.alphabet:
        if xb.contains_word((t,)):
            pre.setdefault(f0.local((t,)), []).append(t)
    if any(y.contains_word((c,)) and c not in pre for c in y.alphabet):
        return None
    b2 = set(map(tuple, xb.words(2)))
    idy = identity_map(y)
    for rho in range(0, radius_cap + 1):
        windows = y.words(2 * rho + 1)
        check_budget(len(windows), "section search")
        domains = [tuple(pre.get(w[rho], ())) for w in windows]
        if any(not d for d in domains):
            continue
        wpos = {w: i for i, w in enumerate(windows)}
        follows = []
        for w in y.words(2 * rho + 2):
            a, b = w[:-1], w[1:]
            if a in wpos and b in wpos:
                follows.append((wpos[a], wpos[b]))
        follow_set = set(follows)

        def pair_ok(i, vi, j, vj):
            ok = True
            if (i, j) in follow_set and (vi, vj) not in b2:
                ok = False
            if (j, i) in follow_set and (vj, vi) not in b2:
                ok = False
            return ok

        for sol in _csp_solutions(windows, domains, pair_ok, SEARCH_LIMIT):
            rule = {windows[i]: t for i, t in sol.items()}
            try:
                gb = make_block_map(y, xb, rho, rule)
            except ValidationError:
                continue
            g = reduce_radius(compose(from_blocks, gb))
            if not maps_equal(compose(f, g), idy):
                continue
            if pointed and y.point is not None and f.source.point is not None:
                img = apply_map(g, PeriodicPoint((y.point,)))
                if not img.same_point(PeriodicPoint((f.source.point,))):
                    continue
            return g
    return None


def find_retraction(f: BlockMap, radius_cap: int = DEFAULT_RADIUS_CAP, pointed: bool = False):
    """Search for h with h . f = identity on the source.

    Values on image windows are forced; the rest is a small constraint
    search with adjacency pruning."""
    x, y = f.source, f.target
    if x.is_empty():
        if y.is_empty():
            return make_block_map(y, x, 0, {}, validate_image=False)
        return None
    idx = identity_map(x)
    b2x = set(map(tuple, x.words(2)))
    xsyms = tuple(a for a in x.alphabet if x.contains_word((a,)))
    for rho in range(0, radius_cap + 1):
        forced: dict[Word, str] = {}
        ok = True
        big = rho + f.radius
        for xi in x.words(2 * big + 1):
            imgw = tuple(f.local(xi[i : i + f.width()]) for i in range(2 * rho + 1))
            c = xi[big]
            if forced.get(imgw, c) != c:
                ok = False
                break
            forced[imgw] = c
        if not ok:
            continue
        windows = y.words(2 * rho + 1)
        check_budget(len(windows), "retraction search")
        free = [w for w in windows if w not in forced]
        follows = [(w[:-1], w[1:]) for w in y.words(2 * rho + 2)]
        nexts: dict[Word, list[Word]] = {}
        prevs: dict[Word, list[Word]] = {}
        for a, b in follows:
            nexts.setdefault(a, []).append(b)
            prevs.setdefault(b, []).append(a)
        domains = []
        for w in free:
            dom = [
                t
                for t in xsyms
                if all((t, forced[n]) in b2x for n in nexts.get(w, ()) if n in forced)
                and all((forced[pr], t) in b2x for pr in prevs.get(w, ()) if pr in forced)
            ]
            domains.append(tuple(dom))
        wpos = {w: i for i, w in enumerate(free)}
        adj = set()
        for a, b in follows:
            if a in wpos and b in wpos:
                adj.add((wpos[a], wpos[b]))

        def pair_ok(i, vi, j, vj):
            if (i, j) in adj and (vi, vj) not in b2x:
                return False
            if (j, i) in adj and (vj, vi) not in b2x:
                return False
            return True

        for sol in _csp_solutions(free, domains, pair_ok, SEARCH_LIMIT):
            rule = dict(forced)
            for i, t in sol.items():
                rule[free[i]] = t
            try:
                h = make_block_map(y, x, rho, rule)
            except ValidationError:
                continue
            if not maps_equal(compose(h, f), idx):
                continue
            if pointed and y.point is not None and x.point is not None:
                img = apply_map(h, PeriodicPoint((y.point,)))
                if not img.same_point(PeriodicPoint((x.point,))):
                    continue
            return reduce_radius(h)
    return None


# ---------------------------------------------------------------------------
# Split epic / split monic


def _is_bijective(f: BlockMap) -> bool:
    return an.injectivity_family(f).injective and an.image(f).language_equal(f.target)


def is_split_epic(
    f: BlockMap,
    cat: CategoryTag,
    p_cap: int = DEFAULT_P_CAP,
    radius_cap: int = DEFAULT_RADIUS_CAP,
) -> v.Verdict:
    li.check_morphism(cat, f)
    if cat.level == 1 and cat.restriction in ("T", "M", "P"):
        if _is_bijective(f):
            g = li.connecting_map(f, identity_map(f.source))
            return v.yes(certificate=g, note="bijective; inverse is the section")
        return v.no(note="split epis of this category are the isomorphisms")
    img = an.image(f)
    missing = au.separating_word(f.target.dfa, img.dfa)
    if missing is not None:
        return v.no(witness={"word": missing}, note="not surjective")
    pointed = cat.pointed
    phases = [
        ("sc", 1), ("sec", 0), ("sec", 1), ("sc", 2), ("sc", 3),
        ("sec", 2), ("sec", 3),
    ]
    phases += [("sc", p) for p in range(4, p_cap + 1)]
    phases += [("sec", r) for r in range(4, radius_cap + 1)]
    sc_pass = 0
    for kind, k in phases:
        if kind == "sc" and k <= p_cap:
            rep = strong_condition(f, k)
            if not rep.holds:
                return v.no(
                    witness={"p": k, "failures": list(rep.failures)},
                    note="strong periodic point condition fails",
                )
            sc_pass = max(sc_pass, k)
        elif kind == "sec" and k <= radius_cap:
            g = find_section(f, radius_cap=k, pointed=pointed)
            if g is not None:
                return v.yes(certificate=g, bound_used={"radius": g.radius})
    note = "no section found"
    if an.is_sft(f.source).yes and sc_pass >= p_cap:
        note = (
            f"strong periodic point condition holds up to p = {p_cap} on an SFT domain"
            " (YES at bound); no explicit section within the radius cap"
        )
    return v.undecided(bound_used={"p_cap": p_cap, "radius_cap": radius_cap}, note=note)


def is_split_monic(
    f: BlockMap,
    cat: CategoryTag,
    radius_cap: int = DEFAULT_RADIUS_CAP,
) -> v.Verdict:
    li.check_morphism(cat, f)
    fam = an.injectivity_family(f)
    if cat.level == 1 and cat.restriction in ("T", "M", "P"):
        if _is_bijective(f):
            h = li.connecting_map(f, identity_map(f.source))
            return v.yes(certificate=h, note="bijective; inverse is the retraction")
        return v.no(note="split monos of this category are the isomorphisms")
    if not fam.injective:
        return v.no(note="not injective")
    if cat.level == 2 and cat.restriction in ("M", "P"):
        peric = an.retraction_peric(f.source, f.target)
        if peric.no:
            return v.no(witness=peric.witness,
                        note="a target period has no matching source period")
        h = find_retraction(f, radius_cap=radius_cap, pointed=cat.pointed)
        return v.yes(
            certificate=h,
            note="injective and peric" + ("" if h else "; retraction exists but exceeds the search radius"),
        )
    h = find_retraction(f, radius_cap=radius_cap, pointed=cat.pointed)
    if h is not None:
        return v.yes(certificate=h, bound_used={"radius": h.radius})
    return v.undecided(bound_used={"radius_cap": radius_cap}, note="no retraction found")


# ---------------------------------------------------------------------------
# Regular epic / regular monic


def is_regular_epic(f: BlockMap, cat: CategoryTag, witness_endo: BlockMap | None = None) -> v.Verdict:
    li.check_morphism(cat, f)
    if cat.restriction == "K" and cat.level in (2, 3):
        ep = is_epic(f, cat)
        if ep.yes:
            return v.yes(note="epic, and every epi of this category is regular")
        return v.no(witness=ep.witness, note="not surjective")
    if (cat.restriction, cat.level) == ("P", 1):
        if _is_bijective(f):
            return v.yes(note="bijective")
        return v.no(note="regular epis of P1 are the isomorphisms")
    img = an.image(f)
    if not img.language_equal(f.target):
        return v.no(note="not surjective, hence not epic")
    if witness_endo is not None:
        from . import colimits as co

        res = co.coequalizer_id(witness_endo, CategoryTag("K", 3))
        if res.status == "exists":
            q = res.legs[0]
            kq = an.kernel_set(q).presentation
            kf = an.kernel_set(f).presentation
            if kq.language_equal(kf):
                return v.yes(note="isomorphic to a verified coequalizer")
    return v.undecided(note="open in the classification table")


def is_regular_monic(
    f: BlockMap, cat: CategoryTag, window_cap: int = 8
) -> v.Verdict:
    li.check_morphism(cat, f)
    fam = an.injectivity_family(f)
    if cat.level == 1 and cat.restriction in ("T", "M", "P"):
        if _is_bijective(f):
            return v.yes(note="bijective")
        return v.no(note="regular monos of this category are the isomorphisms")
    if not fam.injective:
        return v.no(note="not injective")
    img = an.image(f)
    if cat.level == 2 or (cat.restriction, cat.level) == ("K", 3):
        sub = an.is_subsft_of(img, f.target)
        if sub.yes:
            return v.yes(certificate=sub.certificate)
        if sub.no:
            return v.no(witness=sub.witness, note="image is not a subSFT of the target")
        return v.undecided(bound_used=sub.bound_used, note=sub.note)
    # (T/M/P)3: search for an enclosing subSFT whose maximal transitive or
    # mixing part is exactly the image
    for m in range(1, window_cap + 1):
        try:
            z = an.intersection_presentation(f.target, an.sft_approximation(img, m))
        except BudgetExceeded:
            break
        if cat.restriction == "T":
            consts = an.constituents(z)
            if len(consts) == 1 and consts[0].language_equal(img):
                return v.yes(certificate={"window": m})
        else:
            cands, exhaustive = li._maximal_mixing_candidates(z)
            if len(cands) == 1 and exhaustive and cands[0].language_equal(img):
                return v.yes(certificate={"window": m})
    target_sft = an.is_sft(f.target)
    image_sft = an.is_sft(img)
    if target_sft.yes and image_sft.no:
        return v.no(
            note="target is an SFT but the image is properly sofic; no subSFT has it as its"
            " maximal transitive or mixing part",
            witness=image_sft.witness,
        )
    return v.undecided(bound_used={"window_cap": window_cap},
                       note="no enclosing subSFT found within the window cap")


# ---------------------------------------------------------------------------
# Assembled classification


IMPLICATIONS = [
    ("split_epic", "epic"),
    ("regular_epic", "epic"),
    ("split_monic", "monic"),
    ("regular_monic", "monic"),
]


def classify(
    f: BlockMap,
    cat: CategoryTag,
    p_cap: int = DEFAULT_P_CAP,
    radius_cap: int = DEFAULT_RADIUS_CAP,
) -> dict:
    li.check_morphism(cat, f)
    fam = an.injectivity_family(f)
    row = {
        "epic": is_epic(f, cat),
        "monic": is_monic(f, cat),
        "split_epic": is_split_epic(f, cat, p_cap=p_cap, radius_cap=radius_cap),
        "split_monic": is_split_monic(f, cat, radius_cap=radius_cap),
        "regular_epic": is_regular_epic(f, cat),
        "regular_monic": is_regular_monic(f, cat),
        "injective": v.yes() if fam.injective else v.no(),
        "injective_on_periodic": v.yes() if fam.injective_on_periodic else v.no(),
        "injective_on_uniform": v.yes() if fam.injective_on_uniform else v.no(),
        "preinjective": an.is_preinjective(f),
        "peric": an.is_peric(f),
    }
    violations = implication_violations(row)
    if violations:
        raise AssertionError(f"classification violates the implication lattice: {violations}")
    return row


def implication_violations(row: dict) -> list[tuple[str, str]]:
    out = []
    for strong, weak in IMPLICATIONS:
        if strong in row and weak in row and row[strong].yes and row[weak].no:
            out.append((strong, weak))
    return out


def exists_morphism(z: Presentation, y: Presentation) -> v.Verdict:
    """Existence of a block map z -> y (existence only, no construction)."""
    if z.is_empty():
        return v.yes(note="empty source; the empty map works")
    pz, py = an.periods(z), an.periods(y)
    bad = pz.first_not_in(py)
    mixing_sft = an.is_mixing(y) and an.is_sft(y).yes
    if bad is not None:
        return v.no(witness={"period": bad})
    if mixing_sft:
        return v.yes(note="period condition holds and target is a mixing SFT")
    return v.undecided(note="period condition holds; target is not a mixing SFT,"
                       " so only the necessary direction applies")
