#!/usr/bin/env python3
"""Write a clustered EUC_2D TSPLIB instance with a fixed RNG seed."""
import argparse
import random

ap = argparse.ArgumentParser()
ap.add_argument("--name", required=True)
ap.add_argument("--cities", type=int, default=50)
ap.add_argument("--clusters", type=int, default=6)
ap.add_argument("--seed", type=int, default=1)
ap.add_argument("--spread", type=float, default=60.0)
args = ap.parse_args()

rng = random.Random(args.seed)
centers = [(rng.uniform(0, 1000), rng.uniform(0, 1000)) for _ in range(args.clusters)]
print(f"NAME : {args.name}")
print(f"COMMENT : clustered instance, generator seed {args.seed}")
print("TYPE : TSP")
print(f"DIMENSION : {args.cities}")
print("EDGE_WEIGHT_TYPE : EUC_2D")
print("NODE_COORD_SECTION")
for i in range(args.cities):
    cx, cy = centers[i % args.clusters]
    print(f"{i + 1} {round(cx + rng.gauss(0, args.spread))} {round(cy + rng.gauss(0, args.spread))}")
print("EOF")
