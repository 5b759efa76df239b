#!/usr/bin/env python3
"""Independent brute-force oracle for based-loop homotopy classes.

Enumerates all based loops of a fixed length in a reflexive graph and
partitions them with union-find under single-position moves (replace one
interior value by any vertex adjacent-or-equal to its three neighbors).
Used to freeze golden class counts for the C++ tests.
"""
import itertools
import sys


def cycle(n):
    return {i: {i, (i + 1) % n, (i - 1) % n} for i in range(n)}


def k1():
    return {0: {0}}


def loops(adj, base, length):
    out = []
    def rec(path):
        if len(path) == length + 1:
            if path[-1] == base:
                out.append(tuple(path))
            return
        rem = length + 1 - len(path)
        for v in sorted(adj[path[-1]]):
            if dist[v] <= rem - 1:
                rec(path + [v])
    # BFS distances in the reflexive graph
    global dist
    dist = {v: float("inf") for v in adj}
    dist[base] = 0
    frontier = [base]
    while frontier:
        nxt = []
        for v in frontier:
            for u in adj[v]:
                if dist[u] == float("inf"):
                    dist[u] = dist[v] + 1
                    nxt.append(u)
        frontier = nxt
    rec([base])
    return out


def classes(adj, base, length):
    ls = loops(adj, base, length)
    idx = {l: i for i, l in enumerate(ls)}
    parent = list(range(len(ls)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for l in ls:
        i0 = idx[l]
        for i in range(1, length):
            cands = adj[l[i - 1]] & adj[l[i]] & adj[l[i + 1]]
            for v in cands:
                if v != l[i]:
                    m = l[:i] + (v,) + l[i + 1:]
                    union(i0, idx[m])
    roots = {find(i) for i in range(len(ls))}
    return len(ls), len(roots)


def main():
    spaces = {"K1": k1(), "C3": cycle(3), "C4": cycle(4), "C5": cycle(5)}
    jobs = [("K1", 8), ("C3", 8), ("C4", 4), ("C4", 8), ("C4", 10), ("C4", 12),
            ("C5", 8), ("C5", 10), ("C5", 12)]
    for name, cap in jobs:
        n, c = classes(spaces[name], 0, cap)
        print(f"{name} cap={cap}: loops={n} classes={c}")
        sys.stdout.flush()


if __name__ == "__main__":
    main()
