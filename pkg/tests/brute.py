"""Independent reference implementations used as test oracles."""
from combable.words import free_reduce, inverse


def subgroup_elements(gens, max_products, cap=200_000):
    """Reduced words of all products of at most ``max_products`` generators or inverses."""
    letters = [tuple(g) for g in gens] + [inverse(g) for g in gens]
    seen = {()}
    frontier = [()]
    for _ in range(max_products):
        nxt = []
        for w in frontier:
            for g in letters:
                v = free_reduce(w + g)
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
        if len(seen) > cap:
            break
    return seen


def brute_member(gens, w, max_products):
    return free_reduce(w) in subgroup_elements(gens, max_products)


class RoseSaturation:
    """Exact membership in <gens> without folding: a word w lies in the subgroup
    iff some loop at the base of the unfolded rose of petals has a label that
    freely reduces to w.  ``null`` holds the pairs of states joined by a path
    whose label reduces to the empty word."""

    def __init__(self, gens):
        self.edges = {}  # state -> list of (letter, state)
        n = 1
        for g in gens:
            g = free_reduce(g)
            if not g:
                continue
            path = [0] + list(range(n, n + len(g) - 1)) + [0]
            n += len(g) - 1
            for x, p, q in zip(g, path, path[1:]):
                self.edges.setdefault(p, []).append((x, q))
                self.edges.setdefault(q, []).append((-x, p))
        self.n = n
        null = {(p, p) for p in range(n)}
        changed = True
        while changed:
            changed = False
            new = set()
            for p, q in null:
                for x, p2 in self.edges.get(p, ()):
                    for p3, q2 in null:
                        if p3 != p2:
                            continue
                        for y, r in self.edges.get(q2, ()):
                            if y == -x:
                                new.add((p, r))
            for p, q in list(null):
                for q2, r in null:
                    if q2 == q:
                        new.add((p, r))
            new -= null
            if new:
                null |= new
                changed = True
        self.null = {p: {q for (a, q) in null if a == p} for p in range(n)}

    def _close(self, states):
        return {q for p in states for q in self.null[p]}

    def member(self, w) -> bool:
        states = self._close({0})
        for x in free_reduce(w):
            states = self._close({q for p in states for y, q in self.edges.get(p, ()) if y == x})
            if not states:
                return False
        return 0 in states
