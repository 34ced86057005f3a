#!/usr/bin/env python3
"""Convert a SocioPatterns contact list into the nverts/simplices/times format.

Each input line is `t i j [extra columns...]`. For every timestamp the contact
graph is built and each maximal clique becomes one simplex, in the same way
the contact-* datasets were assembled from the raw sensor data.
"""
import argparse
import collections
import pathlib

import networkx as nx


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("contacts", type=pathlib.Path)
    ap.add_argument("prefix", type=pathlib.Path,
                    help="output prefix, e.g. data/contact-high-school")
    args = ap.parse_args()

    by_time = collections.defaultdict(list)
    with args.contacts.open() as f:
        for line in f:
            tok = line.split()
            if len(tok) < 3:
                continue
            by_time[int(tok[0])].append((int(tok[1]), int(tok[2])))

    nverts, simplices, times = [], [], []
    for t in sorted(by_time):
        g = nx.Graph()
        g.add_edges_from(by_time[t])
        for clique in sorted(sorted(c) for c in nx.find_cliques(g)):
            nverts.append(len(clique))
            simplices.extend(clique)
            times.append(t)

    name = args.prefix.name
    out = args.prefix.parent
    out.mkdir(parents=True, exist_ok=True)
    for suffix, values in (("nverts", nverts), ("simplices", simplices), ("times", times)):
        (out / f"{name}-{suffix}.txt").write_text("".join(f"{v}\n" for v in values))


if __name__ == "__main__":
    main()
