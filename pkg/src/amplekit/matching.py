"""Bipartite maximum matching (Hopcroft-Karp) and matching-uniqueness test."""
from __future__ import annotations

from collections import deque
from typing import Hashable, Optional

INF = float("inf")


def hopcroft_karp(adj: dict) -> dict:
    """Maximum matching of a bipartite graph given as left-vertex -> iterable
    of right vertices; returns {left: right} for the matched pairs."""
    match_l: dict = {}
    match_r: dict = {}
    dist: dict = {}

    def bfs() -> bool:
        q = deque()
        for u in adj:
            if u not in match_l:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = INF
        found = False
        while q:
            u = q.popleft()
            for v in adj[u]:
                w = match_r.get(v)
                if w is None:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return found

    def dfs(u: Hashable) -> bool:
        for v in adj[u]:
            w = match_r.get(v)
            if w is None or (dist[w] == dist[u] + 1 and dfs(w)):
                match_l[u] = v
                match_r[v] = u
                return True
        dist[u] = INF
        return False

    while bfs():
        for u in adj:
            if u not in match_l:
                dfs(u)
    return match_l


def find_alternating_cycle(adj: dict, matching: dict) -> Optional[list]:
    """An alternating cycle with respect to a perfect matching, or None.

    A perfect matching is unique iff no alternating cycle exists: following
    an unmatched edge from a left vertex and the matched edge back yields a
    directed graph on left vertices whose cycles are exactly the exchanges.
    """
    succ: dict = {u: set() for u in adj}
    match_r = {v: u for u, v in matching.items()}
    for u in adj:
        for v in adj[u]:
            if matching.get(u) != v and v in match_r:
                succ[u].add(match_r[v])
    color: dict = {}

    def walk(u):
        stack = [(u, iter(succ[u]))]
        color[u] = 1
        path = [u]
        while stack:
            node, it = stack[-1]
            advanced = False
            for w in it:
                if color.get(w) == 1:
                    return path[path.index(w):]
                if w not in color:
                    color[w] = 1
                    path.append(w)
                    stack.append((w, iter(succ[w])))
                    advanced = True
                    break
            if not advanced:
                color[node] = 2
                path.pop()
                stack.pop()
        return None

    for u in adj:
        if u not in color:
            cyc = walk(u)
            if cyc is not None:
                return cyc
    return None


def is_unique_perfect_matching(adj: dict, matching: dict) -> bool:
    return find_alternating_cycle(adj, matching) is None
