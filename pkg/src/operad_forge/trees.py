"""Planar rooted coloured trees with numbered vertices and leaves.

A tree is either an :class:`Edge` (no vertices, one edge that is both leaf
and root) or a :class:`Vertex` whose children are leaves or vertices, read
left to right.  Vertex numbers encode the bijection from ``1..n`` onto the
vertices and leaf numbers the bijection from ``1..m`` onto the leaves.
Because those numberings and the planar order pin down every vertex, two
trees represent the same element exactly when they are structurally equal,
so the dataclass ``==`` is the right equality and the text form below is
canonical.

Text form::

    tree   := edge | node
    edge   := "e:" colour
    node   := "v" INT ":" colour "(" [child ("," child)*] ")"
    child  := node | "l" INT ":" colour
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Iterable, Iterator, Mapping, Sequence, Union

COLOUR_RE = re.compile(r"[a-z0-9_]+\Z")


class TreeError(ValueError):
    """A tree or profile that violates its invariants."""


class TreeSyntaxError(TreeError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class Profile:
    """An input/output signature ``(c1,...,cn;c)``.

    Colours are usually strings, but any hashable works; the operad of trees
    is itself coloured by profiles.
    """

    inputs: tuple
    output: Hashable

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))

    @property
    def arity(self) -> int:
        return len(self.inputs)

    def permuted(self, alpha) -> Profile:
        """Profile of ``alpha^* x`` for ``x`` of this profile."""
        return Profile(alpha.permute(self.inputs), self.output)

    def __str__(self):
        return "(" + ",".join(map(str, self.inputs)) + ";" + str(self.output) + ")"

    def __lt__(self, other):
        return _profile_key(self) < _profile_key(other)


def _profile_key(p):
    if isinstance(p, Profile):
        return (1, tuple(_profile_key(c) for c in p.inputs), _profile_key(p.output))
    return (0, str(p))


def parse_profile(text: str) -> Profile:
    """Parse ``"(a,b;c)"``; ``"(;c)"`` is the nullary profile."""
    s = "".join(text.split())
    m = re.fullmatch(r"\(([a-z0-9_,]*);([a-z0-9_]+)\)", s)
    if not m:
        raise TreeError(f"malformed profile {text!r}")
    inputs = tuple(m.group(1).split(",")) if m.group(1) else ()
    if any(not c for c in inputs):
        raise TreeError(f"empty colour in profile {text!r}")
    return Profile(inputs, m.group(2))


def parse_profiles(text: str) -> list[Profile]:
    """Parse a ``;``-separated list of profiles, e.g. ``"(a,b;c);(b,b;a)"``."""
    s = "".join(text.split())
    if not s:
        return []
    found = re.findall(r"\([^()]*\)", s)
    if ";".join(found) != s:
        raise TreeError(f"malformed profile list {text!r}")
    return [parse_profile(p) for p in found]


@dataclass(frozen=True)
class Leaf:
    number: int
    colour: str


@dataclass(frozen=True)
class Vertex:
    number: int
    colour: str
    children: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))


@dataclass(frozen=True)
class Edge:
    colour: str


Tree = Union[Edge, Vertex]
Child = Union[Leaf, Vertex]


# ---------------------------------------------------------------- traversal

def vertices(t: Tree | Child) -> Iterator[Vertex]:
    """Vertices in preorder (root first, children left to right)."""
    if isinstance(t, Vertex):
        yield t
        for child in t.children:
            yield from vertices(child)


def leaves(t: Tree | Child) -> Iterator[Leaf]:
    """Leaves in planar (left to right) order.  An edge tree has one leaf,
    numbered 1."""
    if isinstance(t, Edge):
        yield Leaf(1, t.colour)
    elif isinstance(t, Leaf):
        yield t
    else:
        for child in t.children:
            yield from leaves(child)


def vertex_count(t: Tree) -> int:
    return sum(1 for _ in vertices(t))


def leaf_count(t: Tree) -> int:
    return sum(1 for _ in leaves(t))


# ------------------------------------------------------------------ parsing

_TOKEN_RE = re.compile(r"\s*(?:(?P<kind>[evl])(?P<num>\d*)\s*:\s*(?P<colour>[a-z0-9_]+)|(?P<punct>[(),]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise TreeSyntaxError(f"expected {ch!r}, found {found!r}", self.pos)
        self.pos += 1

    def head(self, allowed: str):
        """Read ``<kind><num>:<colour>``."""
        self.skip_ws()
        start = self.pos
        m = _TOKEN_RE.match(self.text, self.pos)
        if not m or not m.group("kind"):
            raise TreeSyntaxError("expected a tree token", start)
        kind = m.group("kind")
        if kind not in allowed:
            raise TreeSyntaxError(f"unexpected {kind!r} token", start)
        num = m.group("num")
        if kind == "e":
            if num:
                raise TreeSyntaxError("edge token takes no number", start)
        elif not num:
            raise TreeSyntaxError(f"{kind!r} token needs a number", start)
        elif int(num) < 1:
            raise TreeSyntaxError("numbers start at 1", start)
        self.pos = m.end()
        return kind, int(num) if num else None, m.group("colour")

    def tree(self) -> Tree:
        if self.peek() == "e":
            _, _, colour = self.head("e")
            return Edge(colour)
        return self.node()

    def node(self) -> Vertex:
        _, number, colour = self.head("v")
        self.expect("(")
        children = []
        if self.peek() != ")":
            children.append(self.child())
            while self.peek() == ",":
                self.pos += 1
                children.append(self.child())
        self.expect(")")
        return Vertex(number, colour, tuple(children))

    def child(self) -> Child:
        if self.peek() == "v":
            return self.node()
        _, number, colour = self.head("l")
        return Leaf(number, colour)


def read_tree(text: str) -> Tree:
    """Parse the text form without checking numbering or colours."""
    p = _Parser(text)
    t = p.tree()
    p.skip_ws()
    if p.pos != len(text):
        raise TreeSyntaxError("trailing input", p.pos)
    return t


def parse_tree(text: str, colours: Iterable[str] | None = None) -> Tree:
    """Parse the text form and check every tree invariant.

    Raises :class:`TreeSyntaxError` for malformed text and :class:`TreeError`
    for numbering or colour violations.
    """
    t = read_tree(text)
    problems = validate(t, colours)
    if problems:
        raise TreeError("; ".join(problems))
    return t


def serialize_tree(t: Tree | Child) -> str:
    if isinstance(t, Edge):
        return f"e:{t.colour}"
    if isinstance(t, Leaf):
        return f"l{t.number}:{t.colour}"
    return f"v{t.number}:{t.colour}(" + ",".join(serialize_tree(c) for c in t.children) + ")"


# --------------------------------------------------------------- validation

def _numbering_problems(kind: str, letter: str, numbers: list[int]) -> list[str]:
    problems = []
    seen = set()
    for k in numbers:
        if k in seen:
            problems.append(f"duplicate {kind} number {k}")
        seen.add(k)
    if len(seen) == len(numbers) and seen != set(range(1, len(numbers) + 1)):
        problems.append(f"{kind} numbering not 1..{letter}")
    return problems


def validate(t, colours: Iterable[str] | None = None) -> list[str]:
    """List every violated invariant of ``t``; empty iff ``t`` is valid."""
    if not isinstance(t, (Edge, Vertex)):
        return [f"not a tree: {type(t).__name__}"]
    problems = []
    if isinstance(t, Vertex):
        problems += _structure_problems(t)
        problems += _numbering_problems("vertex", "n", [v.number for v in vertices(t)])
        problems += _numbering_problems("leaf", "m", [l.number for l in leaves(t)])
    used = _all_colours(t)
    for c in sorted(c for c in used if not isinstance(c, str) or not COLOUR_RE.match(c)):
        problems.append(f"malformed colour {c!r}")
    if colours is not None:
        allowed = set(colours)
        for c in sorted(used - allowed, key=str):
            problems.append(f"unknown colour {c!r}")
    return problems


def _structure_problems(t: Vertex) -> list[str]:
    problems = []
    for v in vertices(t):
        for child in v.children:
            if not isinstance(child, (Leaf, Vertex)):
                problems.append(f"vertex {v.number} has an invalid child {child!r}")
    return problems


def _all_colours(t) -> set:
    if isinstance(t, (Edge, Leaf)):
        return {t.colour}
    out = {t.colour}
    for child in t.children:
        if isinstance(child, (Leaf, Vertex)):
            out |= _all_colours(child)
    return out


def check_tree(t, colours: Iterable[str] | None = None) -> None:
    problems = validate(t, colours)
    if problems:
        raise TreeError("; ".join(problems))


# ----------------------------------------------------------------- profiles

def vertex_profile(v: Vertex) -> Profile:
    return Profile(tuple(c.colour for c in v.children), v.colour)


def profile_of(t: Tree) -> tuple[tuple[Profile, ...], Profile]:
    """Vertex profiles indexed by vertex number, and the boundary profile
    (leaf colours ordered by leaf number; root colour)."""
    if isinstance(t, Edge):
        return (), Profile((t.colour,), t.colour)
    by_number = {v.number: vertex_profile(v) for v in vertices(t)}
    leaf_colours = {l.number: l.colour for l in leaves(t)}
    return (
        tuple(by_number[k] for k in sorted(by_number)),
        Profile(tuple(leaf_colours[k] for k in sorted(leaf_colours)), t.colour),
    )


def boundary_of(t: Tree) -> Profile:
    return profile_of(t)[1]


def leaf_positions(t: Tree) -> tuple[int, ...]:
    """``pos[j-1]`` is the planar position (1-based) of the leaf numbered j."""
    numbers = [l.number for l in leaves(t)]
    pos = [0] * len(numbers)
    for position, j in enumerate(numbers, start=1):
        pos[j - 1] = position
    return tuple(pos)


# ------------------------------------------------------------- substitution

def graft(host: Tree, guests: Mapping[int, Tree], renumber: Mapping[int, int],
          offsets: Mapping[int, int]) -> Tree:
    """Replace each host vertex ``k`` in ``guests`` by ``guests[k]``.

    Input edge ``j`` of the replaced vertex is identified with the guest's
    leaf numbered ``j``; guest vertex ``u`` becomes ``u + offsets[k]``.
    Host vertices not replaced are renumbered through ``renumber``.  Host
    leaves keep their numbers.  Profiles are assumed to match.
    """
    if isinstance(host, Edge):
        return host
    out = _graft(host, guests, renumber, offsets)
    if isinstance(out, Leaf):
        # every vertex was contracted away
        return Edge(out.colour)
    return out


def _graft(node, guests, renumber, offsets):
    if isinstance(node, Leaf):
        return node
    children = tuple(_graft(c, guests, renumber, offsets) for c in node.children)
    if node.number in guests:
        return _plug(guests[node.number], children, offsets[node.number])
    return Vertex(renumber[node.number], node.colour, children)


def _plug(guest, slots, offset):
    if isinstance(guest, Edge):
        return slots[0]
    if isinstance(guest, Leaf):
        return slots[guest.number - 1]
    return Vertex(guest.number + offset, guest.colour,
                  tuple(_plug(c, slots, offset) for c in guest.children))


def find_vertex(t: Tree, number: int) -> Vertex:
    for v in vertices(t):
        if v.number == number:
            return v
    raise TreeError(f"no vertex numbered {number}")


def substitute_vertex(host: Tree, i: int, guest: Tree):
    """Replace vertex ``i`` of ``host`` by ``guest``.

    Returns ``(tree, identification)``.  Vertices are renumbered blockwise:
    host vertices before ``i`` keep their numbers, the guest's vertices come
    next in their own order, the rest of the host follows.  ``identification``
    maps each input slot ``j`` of the replaced vertex to ``(vertex, slot)``,
    the new vertex number and 1-based input position where that edge now
    enters, or to ``None`` when the guest is an edge and the slot merged with
    the old output edge.
    """
    v = find_vertex(host, i)
    if vertex_profile(v) != boundary_of(guest):
        raise TreeError(
            f"vertex {i} has profile {vertex_profile(v)} but the guest has boundary {boundary_of(guest)}")
    n_guest = vertex_count(guest)
    renumber = {k: (k if k < i else k + n_guest - 1) for k in range(1, vertex_count(host) + 1) if k != i}
    tree = graft(host, {i: guest}, renumber, {i: i - 1})
    identification = {}
    if isinstance(guest, Edge):
        identification[1] = None
    else:
        for u in vertices(guest):
            for slot, child in enumerate(u.children, start=1):
                if isinstance(child, Leaf):
                    identification[child.number] = (u.number + i - 1, slot)
    return tree, dict(sorted(identification.items()))


# -------------------------------------------------------------- enumeration

def enumerate_trees(colours: Iterable[str] | None, vertex_profiles: Sequence[Profile],
                    boundary: Profile) -> list[str]:
    """All trees whose vertex ``k`` has profile ``vertex_profiles[k-1]`` and
    whose boundary is ``boundary``, as sorted canonical strings."""
    vertex_profiles = tuple(vertex_profiles)
    if colours is not None:
        allowed = set(colours)
        for p in vertex_profiles + (boundary,):
            bad = (set(p.inputs) | {p.output}) - allowed
            if bad:
                raise TreeError(f"profile {p} uses unknown colours {sorted(bad)}")
    if not vertex_profiles:
        if boundary.inputs == (boundary.output,):
            return [serialize_tree(Edge(boundary.output))]
        return []

    @lru_cache(maxsize=None)
    def skeletons(avail: frozenset, colour) -> tuple:
        if not avail:
            return (Leaf(0, colour),)
        out = []
        for r in sorted(avail):
            p = vertex_profiles[r - 1]
            if p.output != colour:
                continue
            rest = sorted(avail - {r})
            k = p.arity
            if k == 0:
                if not rest:
                    out.append(Vertex(r, colour, ()))
                continue
            for assignment in itertools.product(range(k), repeat=len(rest)):
                parts = [frozenset(v for v, slot in zip(rest, assignment) if slot == j) for j in range(k)]
                options = [skeletons(parts[j], p.inputs[j]) for j in range(k)]
                for children in itertools.product(*options):
                    out.append(Vertex(r, colour, children))
        return tuple(out)

    results = set()
    target = sorted(boundary.inputs)
    for skeleton in skeletons(frozenset(range(1, len(vertex_profiles) + 1)), boundary.output):
        planar = [l.colour for l in leaves(skeleton)]
        if sorted(planar) != target:
            continue
        for numbering in leaf_numberings(planar, boundary.inputs):
            results.add(serialize_tree(number_leaves(skeleton, iter(numbering))))
    return sorted(results)


def leaf_numberings(planar: Sequence, boundary_inputs: Sequence) -> Iterator[tuple[int, ...]]:
    """Bijections assigning each planar leaf a number of the same colour."""
    def rec(pos, used):
        if pos == len(planar):
            yield ()
            return
        for j, colour in enumerate(boundary_inputs, start=1):
            if j not in used and colour == planar[pos]:
                for rest in rec(pos + 1, used | {j}):
                    yield (j,) + rest
    yield from rec(0, frozenset())


def number_leaves(node, numbers):
    if isinstance(node, Leaf):
        return Leaf(next(numbers), node.colour)
    return Vertex(node.number, node.colour, tuple(number_leaves(c, numbers) for c in node.children))


def relabel(t: Tree, vertex_map: Mapping[int, int] | None = None,
            leaf_map: Mapping[int, int] | None = None) -> Tree:
    """Rename vertex and leaf numbers, keeping shape and colours."""
    if isinstance(t, Edge):
        return t
    return _relabel(t, vertex_map or {}, leaf_map or {})


def _relabel(node, vmap, lmap):
    if isinstance(node, Leaf):
        return Leaf(lmap.get(node.number, node.number), node.colour)
    return Vertex(vmap.get(node.number, node.number), node.colour,
                  tuple(_relabel(c, vmap, lmap) for c in node.children))
