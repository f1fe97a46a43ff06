"""The operad of numbered coloured trees, whose algebras are coloured operads.

Its colours are profiles over a base colour set ``C``.  An element of
component ``((d_1, ..., d_n); d)`` is a tree whose vertex ``k`` has profile
``d_k`` and whose boundary is ``d``.  Elements are represented by the trees
themselves (see :mod:`operad_forge.trees` for why that is canonical).
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .operads import FiniteOperad, tabulate
from .perms import Permutation
from .trees import (Edge, Leaf, Profile, Tree, TreeError, Vertex, number_leaves, boundary_of,
                    enumerate_trees, graft, leaf_numberings, leaf_positions, leaves, parse_tree,
                    profile_of, relabel, serialize_tree, vertex_count)


def d_profile(t: Tree) -> Profile:
    """The component of ``t``: vertex profiles as inputs, boundary as output."""
    vps, boundary = profile_of(t)
    return Profile(vps, boundary)


def unit(p: Profile) -> Tree:
    """The corolla on ``p``: one vertex, leaves numbered left to right."""
    return Vertex(1, p.output, tuple(Leaf(j, c) for j, c in enumerate(p.inputs, start=1)))


def sigma_action(t: Tree, alpha: Permutation) -> Tree:
    """Renumber vertices: the vertex numbered ``alpha(i)`` becomes ``i``."""
    n = vertex_count(t)
    if alpha.size != n:
        raise TreeError(f"permutation of {alpha.size} letters acting on a tree with {n} vertices")
    return relabel(t, {alpha(i): i for i in range(1, n + 1)})


def compose(x: Tree, args: Sequence[Tree]) -> Tree:
    """Simultaneous substitution of ``args[k-1]`` for vertex ``k`` of ``x``.

    Vertex ``j`` of ``args[k-1]`` is numbered ``n_1 + ... + n_{k-1} + j`` in
    the result; leaves keep the numbers they had in ``x``.
    """
    vps = profile_of(x)[0]
    if len(args) != len(vps):
        raise TreeError(f"tree has {len(vps)} vertices but {len(args)} arguments were given")
    offsets = {}
    total = 0
    for k, (p, g) in enumerate(zip(vps, args), start=1):
        b = boundary_of(g)
        if b != p:
            raise TreeError(f"argument {k} has boundary {b} but vertex {k} has profile {p}")
        offsets[k] = total
        total += vertex_count(g)
    return graft(x, dict(enumerate(args, start=1)), {}, offsets)


def circ(x: Tree, i: int, y: Tree) -> Tree:
    """``x o_i y``: compose with corollas in every slot but ``i``."""
    vps = profile_of(x)[0]
    if not 1 <= i <= len(vps):
        raise TreeError(f"slot {i} out of range for a tree with {len(vps)} vertices")
    return compose(x, [y if k == i else unit(p) for k, p in enumerate(vps, start=1)])


def as_permutation(t: Tree) -> Permutation | None:
    """For a one-vertex tree, ``j -> planar position of leaf j``."""
    if isinstance(t, Edge) or vertex_count(t) != 1:
        return None
    return Permutation(leaf_positions(t))


def corolla_with_numbering(p: Profile, alpha: Permutation) -> Tree:
    """The one-vertex tree on ``p`` whose :func:`as_permutation` is ``alpha``."""
    inv = alpha.inverse()
    return Vertex(1, p.output, tuple(Leaf(inv(k), c) for k, c in enumerate(p.inputs, start=1)))


def component(colours: Iterable[str] | None, vertex_profiles: Sequence[Profile],
              boundary: Profile) -> list[Tree]:
    return [parse_tree(s) for s in enumerate_trees(colours, vertex_profiles, boundary)]


def restricted_operad(colours: Sequence[str], d_colours: Sequence[Profile],
                      max_vertices: int) -> FiniteOperad:
    """The tree operad on the finite support: D-colours ``d_colours`` and at
    most ``max_vertices`` vertices.  Elements are canonical tree strings."""
    d_colours = sorted(set(d_colours))
    comps = {}
    for n in range(max_vertices + 1):
        for vps in itertools.product(d_colours, repeat=n):
            for b in d_colours:
                comps[Profile(vps, b)] = tuple(enumerate_trees(colours, vps, b))

    def act(p, alpha, x):
        return serialize_tree(sigma_action(parse_tree(x), alpha))

    def circ_rule(p, i, q, x, y):
        return serialize_tree(circ(parse_tree(x), i, parse_tree(y)))

    units = {d: serialize_tree(unit(d)) for d in d_colours}
    return tabulate(tuple(d_colours), comps, act, circ_rule, units, name="S^C")


def trees_over(profiles: Sequence[Profile], max_vertices: int, boundaries: Sequence[Profile] | None = None,
               min_vertices: int = 0, all_numberings: bool = True) -> Iterator[Tree]:
    """Every numbered tree whose vertex profiles lie in ``profiles`` and whose
    boundary lies in ``boundaries`` (default: ``profiles``), with between
    ``min_vertices`` and ``max_vertices`` vertices.  Vertices are numbered in
    every possible way, or only in preorder when ``all_numberings`` is false."""
    allowed = set(profiles)
    targets = set(profiles if boundaries is None else boundaries)
    max_leaves = max((b.arity for b in targets), default=0)
    by_output: dict = {}
    for p in sorted(allowed):
        by_output.setdefault(p.output, []).append(p)

    @lru_cache(maxsize=None)
    def grow(colour, budget: int, leaf_budget: int) -> tuple:
        out = []
        if leaf_budget >= 1:
            out.append((Leaf(0, colour), 0, 1))
        if budget == 0:
            return tuple(out)
        for p in by_output.get(colour, ()):
            for children, used, nleaves in child_lists(p.inputs, budget - 1, leaf_budget):
                out.append((Vertex(0, colour, children), used + 1, nleaves))
        return tuple(out)

    def child_lists(colours, budget, leaf_budget):
        if not colours:
            yield (), 0, 0
            return
        for head, used, nl in grow(colours[0], budget, leaf_budget):
            for rest, more, nl2 in child_lists(colours[1:], budget - used, leaf_budget - nl):
                yield (head,) + rest, used + more, nl + nl2

    seen_colours = {p.output for p in targets}
    for colour in sorted(seen_colours, key=str):
        if min_vertices == 0:
            e = Edge(colour)
            if Profile((colour,), colour) in targets:
                yield e
        for node, n, _ in grow(colour, max_vertices, max_leaves):
            if isinstance(node, Leaf) or n < min_vertices:
                continue
            planar = [l.colour for l in leaves(node)]
            for b in sorted(targets):
                if b.output != colour or sorted(b.inputs, key=str) != sorted(planar, key=str):
                    continue
                for numbering in leaf_numberings(planar, b.inputs):
                    numbered = number_leaves(node, iter(numbering))
                    orders = (itertools.permutations(range(1, n + 1)) if all_numberings
                              else [range(1, n + 1)])
                    for order in orders:
                        yield _number_vertices(numbered, iter(order))


def _number_vertices(node, numbers):
    if isinstance(node, Leaf):
        return node
    k = next(numbers)
    return Vertex(k, node.colour, tuple(_number_vertices(c, numbers) for c in node.children))
