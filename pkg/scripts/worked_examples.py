"""Reproduce the two worked tree examples: the profile of the four-vertex
tree and the composite of T with T1, T2, T3."""

import argparse
import time

from operad_forge.sc_operad import compose
from operad_forge.trees import parse_tree, profile_of, serialize_tree

PROFILE_TREE = "v1:c(v2:a(l2:b,l1:b),v4:b(l4:c,v3:a(),l3:a))"
T = "v1:c(v2:a(l1:c,l2:b),v3:b(l5:a,l3:a,l4:a))"
ARGS = ["v2:c(v1:c(l1:a,l2:b))", "v1:a(v2:b(l1:c),l2:b)", "v2:b(l3:a,v1:c(l2:a,l1:a))"]
EXPECTED = "v2:c(v1:c(v3:a(v4:b(l1:c),l2:b),v6:b(l4:a,v5:c(l3:a,l5:a))))"


def main():
    argparse.ArgumentParser(description=__doc__).parse_args()
    vps, b = profile_of(parse_tree(PROFILE_TREE))
    print(f"tree      {PROFILE_TREE}")
    print(f"profiles  {' '.join(map(str, vps))}")
    print(f"boundary  {b}")
    print()
    start = time.perf_counter()
    result = serialize_tree(compose(parse_tree(T), [parse_tree(a) for a in ARGS]))
    ms = (time.perf_counter() - start) * 1000
    print(f"T         {T}")
    for k, a in enumerate(ARGS, start=1):
        print(f"T{k}        {a}")
    print(f"composite {result}  ({ms:.2f} ms)")
    print("matches expected" if result == EXPECTED else f"MISMATCH, expected {EXPECTED}")


if __name__ == "__main__":
    main()
