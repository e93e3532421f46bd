#!/usr/bin/env python3
"""Generate data/tube_proxy.tsv: a 307-node metro-style test graph.

The real London tube network (307 stations, ~353 links) is not
redistributable from its wiki source, so the test suite ships this proxy
with a similar degree profile: long degree-2 line segments, a handful of
interchange stations of degree 3-6, and a closed circular line. The output
is deterministic (fixed seed) and committed to the repository; this script
documents how it was produced.
"""

import random

SEED = 42
TARGET_NODES = 307
OUT = "data/tube_proxy.tsv"


def main() -> None:
    rng = random.Random(SEED)
    next_station = 0
    lines = []

    def new_station():
        nonlocal next_station
        s = next_station
        next_station += 1
        return s

    # First line: a plain path.
    first_len = 28
    lines.append([new_station() for _ in range(first_len)])

    # Circle line: a loop sharing a few stations with the first line.
    existing = [s for line in lines for s in line]
    circle_len = 24
    interchanges = rng.sample(existing, 3)
    circle = [new_station() for _ in range(circle_len - 3)]
    for pos, st in zip(sorted(rng.sample(range(circle_len), 3)), interchanges):
        circle.insert(pos, st)
    lines.append(circle + [circle[0]])  # close the loop

    # Radial lines until the station budget is used up. Interchange choices
    # prefer lightly-used stations so no single hub grows out of scale.
    usage = {}
    for line in lines:
        for s in line:
            usage[s] = usage.get(s, 0) + 1

    while next_station < TARGET_NODES:
        existing = sorted({s for line in lines for s in line})
        candidates = [s for s in existing if usage.get(s, 0) < 3]
        n_inter = rng.randint(3, 5)
        length = rng.randint(16, 28)
        remaining = TARGET_NODES - next_station
        if length - n_inter > remaining:
            length = n_inter + remaining
        stations = [new_station() for _ in range(length - n_inter)]
        inter = rng.sample(candidates, min(n_inter, len(candidates)))
        positions = sorted(rng.sample(range(length), len(inter)))
        for pos, st in zip(positions, inter):
            stations.insert(pos, st)
        lines.append(stations)
        for s in stations:
            usage[s] = usage.get(s, 0) + 1

    edges = set()
    for line in lines:
        for a, b in zip(line, line[1:]):
            if a == b:
                continue
            edges.add((min(a, b), max(a, b)))

    # Sparse external ids (gaps) to exercise dense re-indexing in loaders.
    def ext(s):
        return 100 + 3 * s

    with open(OUT, "w") as fh:
        fh.write("# tube_proxy: 307-node metro-style test graph\n")
        fh.write("# generated by scripts/make_tube_proxy.py (seed %d)\n" % SEED)
        fh.write("# FromNodeId\tToNodeId\n")
        for a, b in sorted(edges):
            fh.write("%d\t%d\n" % (ext(a), ext(b)))

    # quick report
    nodes = {s for e in edges for s in e}
    deg = {}
    for a, b in edges:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    hist = {}
    for d in deg.values():
        hist[d] = hist.get(d, 0) + 1
    print("nodes:", len(nodes), "edges:", len(edges))
    print("mean degree: %.2f" % (2 * len(edges) / len(nodes)))
    print("degree histogram:", dict(sorted(hist.items())))

    # connectivity check
    adj = {s: [] for s in nodes}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {min(nodes)}
    stack = [min(nodes)]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    print("connected:", len(seen) == len(nodes))


if __name__ == "__main__":
    main()
