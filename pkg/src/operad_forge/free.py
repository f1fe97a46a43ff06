"""The free coloured operad on a finite collection, truncated by vertex count.

Elements are planar trees whose vertices carry elements of the collection
``K`` and whose leaves are numbered.  Reordering the inputs of a vertex by
``alpha`` while replacing its decoration ``k`` by ``alpha^* k`` gives the
same element; each class is represented by the lexicographically least text
form, found vertex by vertex from the leaves up.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Hashable, Mapping, Union

from .collection import Collection, validate_morphism
from .operads import FiniteOperad, OperadError, evaluate_numbered, verify_operad
from .perms import Permutation
from .trees import Edge, Leaf, Profile, TreeError, leaf_numberings, leaves


class FreeError(ValueError):
    pass


@dataclass(frozen=True)
class DVertex:
    decoration: Hashable
    colour: str
    children: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))

    @property
    def profile(self) -> Profile:
        return Profile(tuple(c.colour for c in self.children), self.colour)


DecoratedTree = Union[Edge, DVertex]


def serialize(d) -> str:
    if isinstance(d, Edge):
        return f"e:{d.colour}"
    if isinstance(d, Leaf):
        return f"l{d.number}:{d.colour}"
    return f"[{d.decoration}]:{d.colour}(" + ",".join(serialize(c) for c in d.children) + ")"


def dvertices(d):
    if isinstance(d, DVertex):
        yield d
        for c in d.children:
            yield from dvertices(c)


def vertex_count(d) -> int:
    return sum(1 for _ in dvertices(d))


def boundary(d) -> Profile:
    if isinstance(d, Edge):
        return Profile((d.colour,), d.colour)
    by_number = sorted((l.number, l.colour) for l in leaves(d))
    return Profile(tuple(c for _, c in by_number), d.colour)


def check_decorated(K: Collection, d) -> list[str]:
    problems = []
    for v in dvertices(d):
        if v.decoration not in K.elements(v.profile):
            problems.append(f"decoration {v.decoration!r} is not an element of K{v.profile}")
    numbers = sorted(l.number for l in leaves(d))
    if numbers != list(range(1, len(numbers) + 1)):
        problems.append("leaf numbering not 1..m")
    return problems


def canonical(K: Collection, d):
    """Least representative of the class of ``d`` under input reordering."""
    if isinstance(d, (Edge, Leaf)):
        return d
    children = [canonical(K, c) for c in d.children]
    p = d.profile
    best = None
    for alpha in Permutation.all(p.arity):
        cand = DVertex(K.act(p, alpha, d.decoration), d.colour, alpha.permute(children))
        key = serialize(cand)
        if best is None or key < best[0]:
            best = (key, cand)
    return best[1]


def free_elements(K: Collection, bound: Profile, max_vertices: int) -> list:
    """All classes with boundary ``bound`` and at most ``max_vertices``
    vertices, as canonical representatives sorted by text form."""
    if max_vertices < 0:
        raise FreeError("max_vertices must be non-negative")
    by_output: dict = {}
    for p in K.profiles:
        for k in K.elements(p):
            by_output.setdefault(p.output, []).append((p, k))

    @lru_cache(maxsize=None)
    def grow(colour, budget: int) -> tuple:
        out = [(Leaf(0, colour), 0)]
        if budget == 0:
            return tuple(out)
        for p, k in by_output.get(colour, ()):
            for children, used in _child_lists(p.inputs, budget - 1):
                out.append((DVertex(k, colour, children), used + 1))
        return tuple(out)

    def _child_lists(colours, budget):
        if not colours:
            yield (), 0
            return
        for head, used in grow(colours[0], budget):
            for rest, more in _child_lists(colours[1:], budget - used):
                yield (head,) + rest, used + more

    found = {}
    target = sorted(bound.inputs)
    for node, _ in grow(bound.output, max_vertices):
        if isinstance(node, Leaf):
            if bound.inputs == (bound.output,):
                e = Edge(bound.output)
                found[serialize(e)] = e
            continue
        planar = [l.colour for l in leaves(node)]
        if sorted(planar) != target:
            continue
        for numbering in leaf_numberings(planar, bound.inputs):
            d = canonical(K, _number(node, iter(numbering)))
            found[serialize(d)] = d
    return [found[s] for s in sorted(found)]


def _number(node, numbers):
    if isinstance(node, Leaf):
        return Leaf(next(numbers), node.colour)
    return DVertex(node.decoration, node.colour, tuple(_number(c, numbers) for c in node.children))


def _renumber(node, f: Callable[[int], int]):
    if isinstance(node, Leaf):
        return Leaf(f(node.number), node.colour)
    if isinstance(node, Edge):
        return node
    return DVertex(node.decoration, node.colour, tuple(_renumber(c, f) for c in node.children))


# ----------------------------------------------------------- operad structure

def free_unit(colour) -> Edge:
    return Edge(colour)


def free_corolla(K: Collection, p: Profile, k) -> DVertex:
    """The one-vertex class of a generator, leaves numbered left to right."""
    if k not in K.elements(p):
        raise FreeError(f"{k!r} is not an element of K{p}")
    return DVertex(k, p.output, tuple(Leaf(j, c) for j, c in enumerate(p.inputs, start=1)))


def free_circ(K: Collection, d1, i: int, d2):
    """Graft ``d2`` onto the leaf numbered ``i`` of ``d1``."""
    b1, b2 = boundary(d1), boundary(d2)
    if not 1 <= i <= b1.arity or b1.inputs[i - 1] != b2.output:
        raise FreeError(f"cannot graft {b2} onto leaf {i} of {b1}")
    m = b2.arity
    shifted = _renumber(d2, lambda j: j + i - 1) if not isinstance(d2, Edge) else Leaf(i, d2.colour)

    def plug(node):
        if isinstance(node, Leaf):
            if node.number == i:
                return shifted
            return Leaf(node.number if node.number < i else node.number + m - 1, node.colour)
        return DVertex(node.decoration, node.colour, tuple(plug(c) for c in node.children))

    if isinstance(d1, Edge):
        return d2
    return canonical(K, plug(d1))


def free_act(K: Collection, d, alpha: Permutation):
    """``alpha^* d``: the leaf numbered ``alpha(k)`` is renumbered ``k``."""
    if isinstance(d, Edge):
        return d
    inv = alpha.inverse()
    return canonical(K, _renumber(d, inv))


# --------------------------------------------------------------- adjunction

def extend_to_free(K: Collection, P: FiniteOperad, gen: Mapping[Profile, Mapping],
                   check: bool = True) -> Callable:
    """The operad map out of the free operad determined by ``gen: K -> U(P)``.

    A decorated tree is sent to the composite in ``P`` of the images of its
    decorations, then acted on by its leaf numbering.
    """
    if check:
        report = validate_morphism(K, P.base, gen)
        if not report.ok:
            raise FreeError("generator map is not a collection morphism: " + "; ".join(report.violations[:3]))
        report = verify_operad(P)
        if not report.ok:
            raise FreeError("target is not an operad: " + "; ".join(report.violations[:3]))

    def evaluate(d):
        try:
            return evaluate_numbered(P, d, lambda v: gen[v.profile][v.decoration])[1]
        except (KeyError, OperadError, TreeError) as exc:
            raise FreeError(f"cannot evaluate {serialize(d)}: {exc}") from None

    return evaluate

