"""Stallings foldings: subgroup membership in free groups."""
from __future__ import annotations

from collections import deque
from typing import Sequence

from .words import Word, check_word, free_reduce, letter_key


class SubgroupGraph:
    """A folded core graph with base state 0.

    ``edges[s]`` maps a letter to the target state; both orientations are
    stored, so ``edges[t][-x] == s`` whenever ``edges[s][x] == t``.
    """

    def __init__(self, n_gens: int, edges: list):
        self.n_gens = n_gens
        self.edges = edges

    @property
    def n_states(self) -> int:
        return len(self.edges)

    @property
    def n_edges(self) -> int:
        return sum(1 for out in self.edges for x in out if x > 0)

    @property
    def rank(self) -> int:
        return self.n_edges - self.n_states + 1

    def is_whole_group(self) -> bool:
        return self.n_states == 1 and len(self.edges[0]) == 2 * self.n_gens

    def read(self, w: Sequence[int]):
        """State reached from the base by reading ``w``, or None."""
        s = 0
        for x in w:
            s = self.edges[s].get(x)
            if s is None:
                return None
        return s

    def canonical(self) -> tuple:
        return tuple(sorted((s, x, t) for s, out in enumerate(self.edges) for x, t in out.items()))

    def __eq__(self, other):
        return (
            isinstance(other, SubgroupGraph)
            and self.n_gens == other.n_gens
            and self.canonical() == other.canonical()
        )

    def __hash__(self):
        return hash((self.n_gens, self.canonical()))

    def __repr__(self):
        return f"SubgroupGraph(states={self.n_states}, rank={self.rank})"


def fold_subgroup(gens: Sequence[Sequence[int]], n_gens: int) -> SubgroupGraph:
    """Folded core graph of the subgroup of F(n_gens) generated by ``gens``."""
    parent = [0]
    adj = [{}]

    def find(s):
        while parent[s] != s:
            parent[s] = parent[parent[s]]
            s = parent[s]
        return s

    def new_state():
        parent.append(len(parent))
        adj.append({})
        return len(parent) - 1

    pending = deque()
    for g in gens:
        check_word(g, n_gens)
        w = free_reduce(g)
        if not w:
            continue
        s = 0
        for k, x in enumerate(w):
            t = 0 if k == len(w) - 1 else new_state()
            pending.append((s, x, t))
            s = t

    while pending:
        s, x, t = pending.popleft()
        s, t = find(s), find(t)
        for a, letter, b in ((s, x, t), (t, -x, s)):
            a, b = find(a), find(b)
            old = adj[a].get(letter)
            if old is None:
                adj[a][letter] = b
                continue
            old = find(old)
            if old == b:
                continue
            # merge b into old, keeping the smaller id as representative
            keep, lose = min(old, b), max(old, b)
            parent[lose] = keep
            moved, adj[lose] = adj[lose], {}
            for y, c in moved.items():
                pending.append((keep, y, c))

    # normalize targets to representatives, drop dead states
    live = {}
    for s in range(len(parent)):
        if find(s) == s:
            live[s] = {y: find(c) for y, c in adj[s].items()}

    # prune non-base leaves to get the core
    changed = True
    while changed:
        changed = False
        for s in list(live):
            if s != 0 and len(live[s]) <= 1:
                for y, c in live[s].items():
                    live[c].pop(-y, None)
                del live[s]
                changed = True

    # renumber by breadth-first search from the base in letter order
    order = {0: 0}
    queue = deque([0])
    while queue:
        s = queue.popleft()
        for y in sorted(live[s], key=letter_key):
            c = live[s][y]
            if c not in order:
                order[c] = len(order)
                queue.append(c)
    edges = [None] * len(order)
    for s, k in order.items():
        edges[k] = {y: order[c] for y, c in live[s].items()}
    return SubgroupGraph(n_gens, edges)


def subgroup_member(g: SubgroupGraph, w: Sequence[int]) -> bool:
    check_word(w, g.n_gens)
    return g.read(free_reduce(w)) == 0


def subgroup_basis_words(g: SubgroupGraph) -> list:
    """A free basis of the subgroup read off a spanning tree of the graph."""
    tree = {0: ()}
    queue = deque([0])
    while queue:
        s = queue.popleft()
        for y in sorted(g.edges[s], key=letter_key):
            c = g.edges[s][y]
            if c not in tree:
                tree[c] = tree[s] + (y,)
                queue.append(c)
    basis = []
    for s, out in enumerate(g.edges):
        for y, c in sorted(out.items(), key=lambda kv: letter_key(kv[0])):
            if y < 0:
                continue
            w = free_reduce(tree[s] + (y,) + tuple(-z for z in reversed(tree[c])))
            if w:
                basis.append(w)
    return basis
