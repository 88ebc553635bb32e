#!/usr/bin/env python3
"""Convert a UCINET DL full-matrix file (e.g. Sampson's monastery data) to an
undirected edge list readable by `curveflat`.

Relations are symmetrized: i-j is kept when either direction is positive.
Multi-relation files are handled by choosing matrices with --relations.

    python3 scripts/sampson_to_edgelist.py sampson.dat --relations 0 > data/sampson.txt
"""

import argparse
import re
import sys


def read_dl(path):
    text = open(path, encoding="utf-8", errors="replace").read()
    parts = re.split(r"(?im)^\s*data\s*:\s*$", text, maxsplit=1)
    if len(parts) != 2:
        sys.exit("no DATA: section found")
    header, body = parts
    n = int(re.search(r"(?i)\bn\s*=\s*(\d+)", header).group(1))
    nm = re.search(r"(?i)\bnm\s*=\s*(\d+)", header)
    layers = int(nm.group(1)) if nm else 1
    values = [float(x) for x in body.split()]
    if len(values) < layers * n * n:
        sys.exit(f"expected {layers * n * n} values, found {len(values)}")
    return n, [values[k * n * n:(k + 1) * n * n] for k in range(layers)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("dl_file")
    ap.add_argument("--relations", type=int, nargs="+", default=[0], help="matrix indices to merge (default: 0)")
    args = ap.parse_args()
    n, layers = read_dl(args.dl_file)
    edges = set()
    for k in args.relations:
        m = layers[k]
        for i in range(n):
            for j in range(n):
                if i != j and m[i * n + j] > 0:
                    edges.add((min(i, j), max(i, j)))
    print(f"# nodes {n} edges {len(edges)}")
    for u, v in sorted(edges):
        print(u, v)
    print(f"{n} nodes, {len(edges)} edges", file=sys.stderr)


if __name__ == "__main__":
    main()
