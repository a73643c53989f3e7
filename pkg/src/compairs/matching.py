"""Maximum bipartite matching (Hopcroft-Karp) and Hall-violator extraction."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable


@dataclass
class BipartiteGraph:
    left: list
    right: list
    adj: dict = field(default_factory=dict)

    def __post_init__(self):
        lefts = set(self.left)
        rights = set(self.right)
        for u in self.left:
            self.adj.setdefault(u, [])
        for u, vs in self.adj.items():
            if u not in lefts:
                raise ValueError(f"edge from undeclared left vertex {u!r}")
            for v in vs:
                if v not in rights:
                    raise ValueError(f"edge to undeclared right vertex {v!r}")

    @classmethod
    def from_edges(cls, left: Iterable, right: Iterable, edges: Iterable[tuple]) -> "BipartiteGraph":
        adj: dict = {}
        for u, v in edges:
            adj.setdefault(u, []).append(v)
        return cls(list(left), list(right), adj)

    def reversed(self) -> "BipartiteGraph":
        radj: dict = {v: [] for v in self.right}
        for u in self.left:
            for v in self.adj[u]:
                radj[v].append(u)
        return BipartiteGraph(list(self.right), list(self.left), radj)

    def neighbors(self, us: Iterable) -> set:
        out = set()
        for u in us:
            out.update(self.adj[u])
        return out

    def induced(self, left: Iterable, right: Iterable) -> "BipartiteGraph":
        left = list(left)
        keep = set(right)
        return BipartiteGraph(left, [v for v in self.right if v in keep],
                              {u: [v for v in self.adj[u] if v in keep] for u in left})


def max_matching(g: BipartiteGraph) -> dict:
    """Maximum matching as a dict left -> right."""
    INF = float("inf")
    match_l: dict = {u: None for u in g.left}
    match_r: dict = {v: None for v in g.right}
    dist: dict = {}

    def bfs() -> bool:
        q = deque()
        for u in g.left:
            if match_l[u] is None:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = INF
        found = False
        while q:
            u = q.popleft()
            for v in g.adj[u]:
                w = match_r[v]
                if w is None:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return found

    def dfs(u) -> bool:
        # iterative to stay clear of the recursion limit on long paths
        stack = [(u, iter(g.adj[u]))]
        path = []
        while stack:
            x, it = stack[-1]
            advanced = False
            for v in it:
                w = match_r[v]
                if w is None:
                    path.append((x, v))
                    for a, b in path:
                        match_l[a] = b
                        match_r[b] = a
                    return True
                if dist[w] == dist[x] + 1:
                    path.append((x, v))
                    stack.append((w, iter(g.adj[w])))
                    advanced = True
                    break
            if not advanced:
                dist[x] = INF
                stack.pop()
                if path:
                    path.pop()
        return False

    while bfs():
        for u in g.left:
            if match_l[u] is None:
                dfs(u)
    return {u: v for u, v in match_l.items() if v is not None}


def hall_violator(g: BipartiteGraph, side: str = "left", maximal: bool = True,
                  matching: dict | None = None) -> set | None:
    """A set X0 on ``side`` with |N(X0)| < |X0|, or None if ``side`` can be covered.

    With ``maximal`` the result is the largest set of maximum deficiency;
    every vertex outside it is then matched (by the returned-to matching)
    into the complement of N(X0).  Otherwise the smallest such set is returned
    (vertices reachable from unmatched ones by alternating paths).
    """
    if side == "right":
        g = g.reversed()
        if matching is not None:
            matching = {v: u for u, v in matching.items()}
    elif side != "left":
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    m = max_matching(g) if matching is None else matching
    if len(m) == len(g.left):
        return None
    match_r = {v: u for u, v in m.items()}
    if not maximal:
        seen = {u for u in g.left if u not in m}
        q = deque(seen)
        while q:
            u = q.popleft()
            for v in g.adj[u]:
                w = match_r.get(v)
                if w is not None and w not in seen:
                    seen.add(w)
                    q.append(w)
        return seen
    # left vertices reachable from unmatched right vertices; the rest is X0
    radj: dict = {v: [] for v in g.right}
    for u in g.left:
        for v in g.adj[u]:
            radj[v].append(u)
    reached_l: set = set()
    seen_r = {v for v in g.right if v not in match_r}
    q = deque(seen_r)
    while q:
        v = q.popleft()
        for u in radj[v]:
            if m.get(u) == v or u in reached_l:
                continue
            reached_l.add(u)
            w = m[u]
            if w not in seen_r:
                seen_r.add(w)
                q.append(w)
    return {u for u in g.left if u not in reached_l}


def is_matching(g: BipartiteGraph, m: dict) -> bool:
    rights = list(m.values())
    return len(set(rights)) == len(rights) and all(v in g.adj[u] for u, v in m.items())

