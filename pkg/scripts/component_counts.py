"""Tabulate component sizes of the tree operad and of free operads.

For the tree operad on one colour, prints |S((c;c)^n; (c;c))| (n! chains)
and the number of trees with n binary vertices and boundary (c^(n+1);c).
For the free operad on one binary generator with trivial action, prints the
number of classes with n vertices, which is (2n-1)!!.
"""

import argparse
import math

from operad_forge.collection import Collection, trivial_actions
from operad_forge.free import free_elements, vertex_count
from operad_forge.trees import Profile, enumerate_trees


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--max-n", type=int, default=3)
    args = parser.parse_args()
    cc = Profile(("c",), "c")
    binary = Profile(("c", "c"), "c")
    K = Collection(("c",), {binary: ("g",)}, trivial_actions({binary: ("g",)}))
    print(f"{'n':>2} {'unary chains':>13} {'binary trees':>13} {'free classes':>13} {'(2n-1)!!':>9}")
    for n in range(args.max_n + 1):
        chains = len(enumerate_trees(["c"], [cc] * n, cc))
        b = Profile(("c",) * (n + 1), "c")
        binaries = len(enumerate_trees(["c"], [binary] * n, b))
        classes = sum(1 for d in free_elements(K, b, n) if vertex_count(d) == n)
        double_fact = math.prod(range(2 * n - 1, 0, -2))
        print(f"{n:>2} {chains:>13} {binaries:>13} {classes:>13} {double_fact:>9}")


if __name__ == "__main__":
    main()
