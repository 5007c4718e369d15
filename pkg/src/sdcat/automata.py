"""Finite-automaton machinery and syntactic monoids.

Languages of presentations are factorial, so the canonical form used
throughout is a *partial* DFA in which every state is accepting and a
missing transition plays the role of the sink.  The general classes below
also carry explicit accepting sets, because several decision procedures
(split epicness, SFT witnesses) build auxiliary automata whose languages
are not factorial.

States are consecutive integers.  Symbols are opaque string tokens; words
are tuples of tokens.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import ValidationError, check_budget

Word = tuple[str, ...]


@dataclass(frozen=True)
class Dfa:
    """Partial DFA.  ``trans[q]`` maps a symbol to the successor of ``q``.

    The language is ``{w : delta(init, w) defined and accepting}``; the
    empty word is accepted iff ``init`` is accepting.  ``trans`` is stored
    as a tuple of tuples so instances are hashable.
    """

    alphabet: tuple[str, ...]
    n: int
    trans: tuple[tuple[tuple[str, int], ...], ...]
    init: int
    accepting: frozenset[int]

    def edges(self, q: int) -> dict[str, int]:
        return dict(self.trans[q])

    def step(self, q: int | None, sym: str) -> int | None:
        if q is None:
            return None
        for a, p in self.trans[q]:
            if a == sym:
                return p
        return None

    def run(self, word) -> int | None:
        q: int | None = self.init
        for a in word:
            q = self.step(q, a)
            if q is None:
                return None
        return q

    def accepts(self, word) -> bool:
        q = self.run(word)
        return q is not None and q in self.accepting

    def all_accepting(self) -> bool:
        return len(self.accepting) == self.n


def make_dfa(alphabet, trans_dicts, init, accepting) -> Dfa:
    trans = tuple(tuple(sorted(d.items())) for d in trans_dicts)
    return Dfa(tuple(alphabet), len(trans_dicts), trans, init, frozenset(accepting))


class Nfa:
    """Nondeterministic automaton with initial and accepting state sets."""

    def __init__(self, alphabet, n, edges, initial, accepting):
        self.alphabet = tuple(alphabet)
        self.n = n
        self.trans: list[dict[str, set[int]]] = [{} for _ in range(n)]
        for src, sym, dst in edges:
            self.trans[src].setdefault(sym, set()).add(dst)
        self.initial = set(initial)
        self.accepting = set(accepting)

    def edges(self):
        for q, d in enumerate(self.trans):
            for sym, dsts in d.items():
                for p in dsts:
                    yield q, sym, p


def determinize(nfa: Nfa) -> Dfa:
    """Subset construction; drops the empty subset (partial-DFA convention)."""
    start = frozenset(nfa.initial)
    index = {start: 0}
    trans_dicts: list[dict[str, int]] = [{}]
    acc = set()
    if start & nfa.accepting:
        acc.add(0)
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        qi = index[subset]
        succs: dict[str, set[int]] = {}
        for q in subset:
            for sym, dsts in nfa.trans[q].items():
                succs.setdefault(sym, set()).update(dsts)
        for sym, dsts in succs.items():
            tgt = frozenset(dsts)
            if not tgt:
                continue
            if tgt not in index:
                index[tgt] = len(trans_dicts)
                trans_dicts.append({})
                check_budget(len(trans_dicts), "determinization")
                if tgt & nfa.accepting:
                    acc.add(index[tgt])
                queue.append(tgt)
            trans_dicts[qi][sym] = index[tgt]
    return make_dfa(nfa.alphabet, trans_dicts, 0, acc)


def _reachable(dfa: Dfa) -> list[int]:
    seen = [False] * dfa.n
    seen[dfa.init] = True
    order = [dfa.init]
    queue = deque([dfa.init])
    while queue:
        q = queue.popleft()
        for _, p in dfa.trans[q]:
            if not seen[p]:
                seen[p] = True
                order.append(p)
                queue.append(p)
    return order


def _live(dfa: Dfa) -> set[int]:
    """States from which some accepting state is reachable."""
    rev: list[list[int]] = [[] for _ in range(dfa.n)]
    for q in range(dfa.n):
        for _, p in dfa.trans[q]:
            rev[p].append(q)
    live = set(dfa.accepting)
    queue = deque(live)
    while queue:
        q = queue.popleft()
        for p in rev[q]:
            if p not in live:
                live.add(p)
                queue.append(p)
    return live


EMPTY_LANGUAGE = object()


def minimize(dfa: Dfa) -> Dfa:
    """Canonical minimal partial DFA (Moore refinement with a virtual sink).

    States are renumbered in BFS order with symbols sorted, so two
    language-equal inputs minimize to structurally identical automata.
    Returns a one-state non-accepting DFA if the language is empty.
    """
    reach = _reachable(dfa)
    live = _live(dfa)
    keep = [q for q in reach if q in live]
    if not keep:
        return make_dfa(dfa.alphabet, [{}], 0, [])
    remap = {q: i for i, q in enumerate(keep)}
    trans = []
    for q in keep:
        trans.append({a: remap[p] for a, p in dfa.trans[q] if p in live})
    acc = {remap[q] for q in keep if q in dfa.accepting}
    n = len(keep)

    # class 0 is reserved for the sink
    cls = [1 if q in acc else 2 for q in range(n)]
    syms = sorted(set(dfa.alphabet))
    while True:
        sigs = {}
        new_cls = [0] * n
        for q in range(n):
            sig = (cls[q], tuple(cls[trans[q][a]] if a in trans[q] else 0 for a in syms))
            if sig not in sigs:
                sigs[sig] = len(sigs) + 1
            new_cls[q] = sigs[sig]
        if len(set(new_cls)) == len(set(cls)):
            cls = new_cls
            break
        cls = new_cls

    reps: dict[int, int] = {}
    for q in range(n):
        reps.setdefault(cls[q], q)
    # BFS renumbering from the initial state's class
    init_c = cls[remap[dfa.init]] if dfa.init in remap else cls[0]
    order = [init_c]
    seen = {init_c}
    queue = deque([init_c])
    while queue:
        c = queue.popleft()
        q = reps[c]
        for a in syms:
            if a in trans[q]:
                c2 = cls[trans[q][a]]
                if c2 not in seen:
                    seen.add(c2)
                    order.append(c2)
                    queue.append(c2)
    pos = {c: i for i, c in enumerate(order)}
    out = [{} for _ in order]
    out_acc = set()
    for c in order:
        q = reps[c]
        if q in acc:
            out_acc.add(pos[c])
        for a, p in trans[q].items():
            out[pos[c]][a] = pos[cls[p]]
    return make_dfa(dfa.alphabet, out, pos[init_c], out_acc)


def determinize_minimize(nfa: Nfa) -> Dfa:
    return minimize(determinize(nfa))


def is_empty_language(dfa: Dfa) -> bool:
    return not dfa.accepting or not (_live(dfa) & set(_reachable(dfa)))


def complement(dfa: Dfa) -> Dfa:
    """Complement within the full word set over the alphabet (adds a sink)."""
    trans = [dict(t) for t in (dfa.edges(q) for q in range(dfa.n))]
    sink = dfa.n
    trans.append({})
    for q in range(dfa.n + 1):
        for a in dfa.alphabet:
            if a not in trans[q]:
                trans[q][a] = sink
    acc = {q for q in range(dfa.n + 1) if q not in dfa.accepting}
    return make_dfa(dfa.alphabet, trans, dfa.init, acc)


def product_dfa(a: Dfa, b: Dfa, accept) -> Dfa:
    """Product automaton over pairs (including virtual sinks).

    ``accept(x, y)`` takes booleans "in accepting set of a/b" where a dead
    component counts as non-accepting; pairs with both components dead are
    not explored.
    """
    if set(a.alphabet) != set(b.alphabet):
        raise ValidationError("alphabet mismatch in product")
    DEAD = -1
    start = (a.init, b.init)
    index = {start: 0}
    trans_dicts: list[dict[str, int]] = [{}]
    acc = set()

    def is_acc(pair):
        x, y = pair
        return accept(x != DEAD and x in a.accepting, y != DEAD and y in b.accepting)

    if is_acc(start):
        acc.add(0)
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        qi = index[pair]
        x, y = pair
        for sym in a.alphabet:
            nx = a.step(x, sym) if x != DEAD else None
            ny = b.step(y, sym) if y != DEAD else None
            tgt = (DEAD if nx is None else nx, DEAD if ny is None else ny)
            if tgt == (DEAD, DEAD):
                continue
            if tgt not in index:
                index[tgt] = len(trans_dicts)
                trans_dicts.append({})
                check_budget(len(trans_dicts), "product automaton")
                if is_acc(tgt):
                    acc.add(index[tgt])
                queue.append(tgt)
            trans_dicts[qi][sym] = index[tgt]
    return make_dfa(a.alphabet, trans_dicts, 0, acc)


def included(a: Dfa, b: Dfa) -> bool:
    """L(a) subseteq L(b)."""
    diff = product_dfa(a, b, lambda x, y: x and not y)
    return is_empty_language(diff)


def language_equal(a: Dfa, b: Dfa) -> bool:
    return included(a, b) and included(b, a)


def separating_word(a: Dfa, b: Dfa) -> Word | None:
    """Shortest word in L(a) \\ L(b), or None."""
    diff = product_dfa(a, b, lambda x, y: x and not y)
    return shortest_accepted(diff)


def intersect(a: Dfa, b: Dfa) -> Dfa:
    return minimize(product_dfa(a, b, lambda x, y: x and y))


def union_dfa(a: Dfa, b: Dfa) -> Dfa:
    return minimize(product_dfa(a, b, lambda x, y: x or y))


def shortest_accepted(dfa: Dfa) -> Word | None:
    dist: dict[int, Word] = {dfa.init: ()}
    if dfa.init in dfa.accepting:
        return ()
    queue = deque([dfa.init])
    while queue:
        q = queue.popleft()
        for a, p in sorted(dfa.trans[q]):
            if p not in dist:
                dist[p] = dist[q] + (a,)
                if p in dfa.accepting:
                    return dist[p]
                queue.append(p)
    return None


def words_of_length(dfa: Dfa, n: int):
    """All accepted words of length exactly n, lexicographic in symbol order."""
    if count_words(dfa, n) > 0:
        check_budget(count_words(dfa, n), "word enumeration")
    out: list[Word] = []

    def rec(q: int, word: Word):
        if len(word) == n:
            if q in dfa.accepting:
                out.append(word)
            return
        for a, p in sorted(dfa.trans[q]):
            rec(p, word + (a,))

    rec(dfa.init, ())
    return out


def count_words(dfa: Dfa, n: int) -> int:
    vec = {dfa.init: 1}
    for _ in range(n):
        nxt: dict[int, int] = {}
        for q, c in vec.items():
            for _, p in dfa.trans[q]:
                nxt[p] = nxt.get(p, 0) + c
        vec = nxt
    return sum(c for q, c in vec.items() if q in dfa.accepting)


# ---------------------------------------------------------------------------
# Strongly connected components (iterative Tarjan)


def strongly_connected_components(nodes, succ) -> list[list]:
    """SCCs of the graph given by ``succ`` in reverse topological order."""
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    result: list[list] = []
    counter = [0]

    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter[0]
                    counter[0] += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(succ(nxt))))
                    advanced = True
                    break
                elif nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                result.append(comp)
    return result


def graph_period(nodes, succ) -> int:
    """gcd of cycle lengths of a strongly connected graph (0 if acyclic)."""
    from math import gcd

    nodes = list(nodes)
    if not nodes:
        return 0
    level = {nodes[0]: 0}
    queue = deque([nodes[0]])
    g = 0
    edges = []
    while queue:
        q = queue.popleft()
        for p in succ(q):
            edges.append((q, p))
            if p not in level:
                level[p] = level[q] + 1
                queue.append(p)
    for q, p in edges:
        g = gcd(g, level[q] + 1 - level[p])
    return abs(g)


# ---------------------------------------------------------------------------
# Finite monoids


@dataclass(frozen=True)
class FiniteMonoid:
    """A finite monoid given by its multiplication table.

    ``gens`` maps each alphabet symbol to an element, and ``class_of``
    extends this to words (the class of the empty word is the identity).
    ``zero`` is the absorbing element if one exists.
    """

    size: int
    table: tuple[tuple[int, ...], ...]
    identity: int
    gens: tuple[tuple[str, int], ...]
    zero: int | None

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def class_of(self, word) -> int:
        g = dict(self.gens)
        e = self.identity
        for a in word:
            e = self.mul(e, g[a])
        return e

    def is_idempotent(self, x: int) -> bool:
        return self.mul(x, x) == x

    def power(self, x: int, k: int) -> int:
        e = self.identity
        for _ in range(k):
            e = self.mul(e, x)
        return e


def monoid_from_functions(alphabet, n_states, sym_functions) -> FiniteMonoid:
    """Transition monoid generated by total functions on ``range(n_states)``.

    Functions are tuples ``f`` with ``f[q]`` the image of ``q``; composition
    of the actions of words proceeds left to right.
    """
    ident = tuple(range(n_states))
    elems: dict[tuple, int] = {ident: 0}
    order = [ident]
    gens = []
    queue = deque()
    for a in alphabet:
        f = sym_functions[a]
        if f not in elems:
            elems[f] = len(order)
            order.append(f)
            queue.append(f)
        gens.append((a, elems[f]))
    while queue:
        f = queue.popleft()
        for a in alphabet:
            g = sym_functions[a]
            h = tuple(g[f[q]] for q in range(n_states))
            if h not in elems:
                check_budget(len(order) + 1, "transition monoid")
                elems[h] = len(order)
                order.append(h)
                queue.append(h)
    size = len(order)
    table = []
    for f in order:
        row = []
        for g in order:
            h = tuple(g[f[q]] for q in range(n_states))
            row.append(elems[h])
        table.append(tuple(row))
    zero = None
    for i in range(size):
        if all(table[i][j] == i and table[j][i] == i for j in range(size)):
            zero = i
            break
    return FiniteMonoid(size, tuple(table), 0, tuple(gens), zero)


def syntactic_monoid_of_dfa(dfa: Dfa) -> FiniteMonoid:
    """Syntactic monoid of L(dfa), via the completed minimal DFA.

    The input must already be minimal (canonical); a sink state is adjoined
    only when some transition is missing.
    """
    partial = any(len(dfa.trans[q]) < len(set(dfa.alphabet)) for q in range(dfa.n))
    n = dfa.n + 1 if partial else dfa.n
    sink = dfa.n
    fns = {}
    for a in set(dfa.alphabet):
        f = []
        for q in range(dfa.n):
            p = dfa.step(q, a)
            f.append(sink if p is None else p)
        if partial:
            f.append(sink)
        fns[a] = tuple(f)
    return monoid_from_functions(sorted(set(dfa.alphabet)), n, fns)


def find_idempotent_factor(monoid: FiniteMonoid, seq) -> tuple[int, int] | None:
    """Indices (i1, i2), i1 < i2, such that the product of seq[i1:i2] is
    idempotent; scans intervals by length, then start position."""
    seq = list(seq)
    n = len(seq)
    for length in range(1, n + 1):
        for i in range(0, n - length + 1):
            e = monoid.identity
            for j in range(i, i + length):
                e = monoid.mul(e, seq[j])
            if monoid.is_idempotent(e):
                return (i, i + length)
    return None


def is_pumpable(syn: FiniteMonoid, aux: FiniteMonoid | None, word, aux_class=None) -> bool:
    """True iff the pair (class in syn, class in aux) is idempotent.

    Idempotence of the pair is equivalent to stability of all powers, which
    is the pumpability condition.
    """
    x = syn.class_of(word)
    ok = syn.mul(x, x) == x
    if aux is not None:
        y = aux.class_of(word) if aux_class is None else aux_class
        ok = ok and aux.mul(y, y) == y
    return ok


# ---------------------------------------------------------------------------
# Partial transition functions (period machinery)

UNDEF = -1


def word_action(step, states: int, word) -> tuple[int, ...]:
    """Partial function of a word on ``range(states)``; ``step(q, a)`` may
    return None."""
    fn = list(range(states))
    for a in word:
        fn = [UNDEF if q == UNDEF else (UNDEF if step(q, a) is None else step(q, a)) for q in fn]
    return tuple(fn)


def compose_pfn(f, g):
    """Apply f, then g."""
    return tuple(UNDEF if x == UNDEF else g[x] for x in f)


def pfn_has_cycle(f) -> bool:
    n = len(f)
    for q in range(n):
        x = q
        for _ in range(n):
            x = f[x]
            if x == UNDEF:
                break
            if x == q:
                return True
    return False


def eventual_image(f) -> frozenset[int]:
    """States with arbitrarily long backward chains under the partial fn."""
    n = len(f)
    current = frozenset(range(n))
    for _ in range(n + 1):
        nxt = frozenset(f[q] for q in current if f[q] != UNDEF)
        if nxt == current:
            break
        current = nxt
    return current


def forever_defined(f) -> frozenset[int]:
    """States q with f^k(q) defined for all k."""
    n = len(f)
    out = set()
    for q in range(n):
        x = q
        ok = True
        for _ in range(n + 1):
            x = f[x]
            if x == UNDEF:
                ok = False
                break
        if ok:
            out.add(q)
    return frozenset(out)
