#!/usr/bin/env python3
"""Exact optimum of a small symmetric EUC_2D/ATT/CEIL_2D TSPLIB instance.

Solves the DFJ formulation with scipy's HiGHS MILP backend, adding subtour
elimination constraints lazily until the solution is a single cycle. Used to
produce registry entries for generated fixtures; independent of the C++ code.
"""
import itertools
import math
import sys

import numpy as np
from scipy.optimize import LinearConstraint, milp
from scipy.sparse import lil_matrix


def read_tsplib(path):
    meta, coords, in_coords = {}, [], False
    for line in open(path):
        line = line.strip()
        if not line or line == "EOF":
            continue
        if line.startswith("NODE_COORD_SECTION"):
            in_coords = True
            continue
        if in_coords:
            _, x, y = line.split()
            coords.append((float(x), float(y)))
        else:
            k, v = line.split(":", 1)
            meta[k.strip()] = v.strip()
    return meta, coords


def dist(metric, a, b):
    dx, dy = a[0] - b[0], a[1] - b[1]
    if metric == "EUC_2D":
        return int(math.sqrt(dx * dx + dy * dy) + 0.5)
    if metric == "CEIL_2D":
        return math.ceil(math.sqrt(dx * dx + dy * dy))
    if metric == "ATT":
        r = math.sqrt((dx * dx + dy * dy) / 10.0)
        t = int(r + 0.5)
        return t + 1 if t < r else t
    raise ValueError(metric)


def components(n, edges):
    adj = {i: [] for i in range(n)}
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    seen, comps = set(), []
    for s in range(n):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        comps.append(comp)
    return comps


def solve(path):
    meta, coords = read_tsplib(path)
    n = len(coords)
    metric = meta["EDGE_WEIGHT_TYPE"]
    pairs = list(itertools.combinations(range(n), 2))
    index = {p: k for k, p in enumerate(pairs)}
    cost = np.array([dist(metric, coords[i], coords[j]) for i, j in pairs], float)
    rows = []
    degree = lil_matrix((n, len(pairs)))
    for (i, j), k in index.items():
        degree[i, k] = 1
        degree[j, k] = 1
    cuts = []
    while True:
        cons = [LinearConstraint(degree.tocsr(), 2, 2)]
        if cuts:
            a = lil_matrix((len(cuts), len(pairs)))
            for r, comp in enumerate(cuts):
                for i, j in itertools.combinations(sorted(comp), 2):
                    a[r, index[(i, j)]] = 1
            cons.append(LinearConstraint(a.tocsr(), -np.inf, [len(c) - 1 for c in cuts]))
        res = milp(cost, constraints=cons, integrality=np.ones(len(pairs)),
                   bounds=(0, 1))
        if not res.success:
            raise RuntimeError(res.message)
        chosen = [pairs[k] for k in np.flatnonzero(res.x > 0.5)]
        comps = components(n, chosen)
        if len(comps) == 1:
            return int(round(res.fun))
        cuts.extend(comps)


if __name__ == "__main__":
    for p in sys.argv[1:]:
        print(p, solve(p))
