#!/usr/bin/env python3
"""Write a ring-plus-interior EUC_2D TSPLIB instance.

40 cities sit on a jittered circle and 10 are scattered inside it. Deciding
where the interior cities join the ring gives MMAS with 2-opt competing
near-optimal tours, so single runs can stall away from the optimum for a
long time. data/instances/ring50.tsp is `--name ring50 --seed 7`.
"""
import argparse
import math
import random

ap = argparse.ArgumentParser()
ap.add_argument("--name", required=True)
ap.add_argument("--seed", type=int, default=7)
args = ap.parse_args()

rng = random.Random(args.seed)
pts = []
for i in range(40):
    a = 2 * math.pi * i / 40
    pts.append((500 + 450 * math.cos(a) + rng.uniform(-15, 15),
                500 + 450 * math.sin(a) + rng.uniform(-15, 15)))
pts += [(rng.uniform(200, 800), rng.uniform(200, 800)) for _ in range(10)]

print(f"NAME : {args.name}")
print("TYPE : TSP")
print(f"DIMENSION : {len(pts)}")
print("EDGE_WEIGHT_TYPE : EUC_2D")
print("NODE_COORD_SECTION")
for i, (x, y) in enumerate(pts):
    print(i + 1, round(x), round(y))
print("EOF")
