"""Algebras over finite operads.

A family ``X`` assigns a finite tuple of element names to each colour.  An
algebra structure stores, for each stored operation ``e`` of profile
``(c1,...,cn;c)``, its action as a table from argument tuples in
``X(c1) x ... x X(cn)`` to ``X(c)``.  Argument permutation follows the
collection convention: ``(alpha^* f)(y) = f(x)`` where ``x_alpha(k) = y_k``.
"""

from __future__ import annotations

import itertools
import math
import os
import random
from dataclasses import dataclass, field
from typing import Callable, Hashable, Mapping, Sequence

from .operads import (FiniteOperad, Monoid, OperadError, ass_truncated, circ_profile,
                      evaluate_numbered, gamma, operad_from_monoid, parse_word,
                      profiles_up_to, tabulate, verify_operad, verify_operad_morphism)
from .perms import Permutation
from .report import Report
from .sc_operad import circ as tree_circ, corolla_with_numbering, trees_over
from .trees import Edge, Leaf, Profile, Tree, Vertex, profile_of, serialize_tree

DEFAULT_END_LIMIT = 10**6


class AlgebraError(ValueError):
    pass


def end_limit() -> int:
    """Materialisation bound for endomorphism components; ``OPERAD_FORGE_LIMIT``
    overrides the default of one million functions."""
    raw = os.environ.get("OPERAD_FORGE_LIMIT")
    if raw is None:
        return DEFAULT_END_LIMIT
    try:
        return int(raw)
    except ValueError:
        raise AlgebraError(f"OPERAD_FORGE_LIMIT must be an integer, got {raw!r}") from None


def arguments(X: Mapping, p: Profile) -> list[tuple]:
    """Argument tuples of profile ``p`` in lexicographic product order."""
    return list(itertools.product(*(X[c] for c in p.inputs)))


def unpermute(alpha: Permutation, y: Sequence) -> tuple:
    """The tuple ``x`` with ``x_alpha(k) = y_k``."""
    x = [None] * len(y)
    for k, value in enumerate(y, start=1):
        x[alpha(k) - 1] = value
    return tuple(x)


# ---------------------------------------------------------- endomorphisms

def function_name(values: Sequence) -> str:
    return "[" + " ".join(map(str, values)) + "]"


def end_component(X: Mapping, p: Profile, limit: int | None = None) -> list[str]:
    """Every function ``X(c1) x ... x X(cn) -> X(c)``, named by its value
    list over :func:`arguments`.  An empty product is a one-point set, so a
    nullary component is a copy of ``X(c)``."""
    limit = end_limit() if limit is None else limit
    n_args = math.prod(len(X[c]) for c in p.inputs)
    size = len(X[p.output]) ** n_args
    if size > limit:
        raise AlgebraError(f"End component {p} has {size} functions, above the limit {limit}")
    return [function_name(v) for v in itertools.product(X[p.output], repeat=n_args)]


class FunctionTables:
    """Translate between function names and tables for a fixed family."""

    def __init__(self, X: Mapping):
        self.X = X
        self._args: dict = {}

    def args(self, p: Profile) -> list[tuple]:
        if p not in self._args:
            self._args[p] = arguments(self.X, p)
        return self._args[p]

    def table(self, p: Profile, name: str) -> dict:
        values = name[1:-1].split() if len(name) > 2 else []
        return dict(zip(self.args(p), values))

    def name(self, p: Profile, table: Mapping) -> str:
        return function_name([table[a] for a in self.args(p)])


def end_operad(X: Mapping, max_arity: int | None = None, profiles: Sequence[Profile] | None = None,
               limit: int | None = None) -> FiniteOperad:
    """``End(X)`` on all profiles up to ``max_arity`` (or on ``profiles``)."""
    colours = tuple(sorted(X))
    if profiles is None:
        if max_arity is None:
            raise AlgebraError("give max_arity or profiles")
        profiles = profiles_up_to(colours, max_arity)
    comps = {p: tuple(end_component(X, p, limit)) for p in profiles}
    fn = FunctionTables(X)

    def act(p, alpha, f):
        table = fn.table(p, f)
        q = p.permuted(alpha)
        return fn.name(q, {y: table[unpermute(alpha, y)] for y in fn.args(q)})

    def circ(p, i, q, f, g):
        tf, tg = fn.table(p, f), fn.table(q, g)
        r = circ_profile(p, i, q)
        m = q.arity
        out = {a: tf[a[: i - 1] + (tg[a[i - 1: i - 1 + m]],) + a[i - 1 + m:]] for a in fn.args(r)}
        return fn.name(r, out)

    units = {c: fn.name(Profile((c,), c), {(x,): x for x in X[c]}) for c in colours
             if Profile((c,), c) in comps}
    return tabulate(colours, comps, act, circ, units, name="End")


# --------------------------------------------------------------- algebras

@dataclass
class AlgebraStructure:
    operad: FiniteOperad
    family: dict
    action: dict = field(default_factory=dict)
    total: bool = True

    def __post_init__(self):
        self.family = {c: tuple(v) for c, v in self.family.items()}

    def apply(self, p: Profile, e, args: Sequence):
        try:
            return self.action[(p, e)][tuple(args)]
        except KeyError:
            raise AlgebraError(f"action of {e!r} in {p} undefined at {tuple(args)!r}") from None


def verify_algebra(A: AlgebraStructure) -> Report:
    """Check that the action tables form an operad morphism ``P -> End(X)``:
    totality, units, ``o_i`` and argument permutation."""
    P, X = A.operad, A.family
    report = Report(support=P.support_summary())
    for c in P.colours:
        if c not in X:
            report.add(f"family has no set for colour {c!r}")
    if not report.ok:
        return report
    for p in P.profiles:
        args = set(arguments(X, p))
        for e in P.elements(p):
            table = A.action.get((p, e))
            if table is None:
                report.add(f"no action table for {e!r} in {p}")
                continue
            keys = set(table)
            if A.total:
                report.check(keys == args, lambda: f"action of {e!r} in {p} is not defined on exactly all arguments")
            else:
                report.check(keys <= args, lambda: f"action of {e!r} in {p} has foreign arguments")
            for a, v in table.items():
                report.check(v in X[p.output], lambda: f"action of {e!r} in {p} at {a} gives {v!r} outside X({p.output})")
    if not report.ok:
        return report

    def get(p, e, a):
        table = A.action[(p, e)]
        return table.get(a, _MISSING)

    for c, u in P.units.items():
        cc = Profile((c,), c)
        for x in X[c]:
            v = get(cc, u, (x,))
            if v is not _MISSING:
                report.check(v == x, lambda: f"unit of {c!r} does not act as the identity at {x!r}")
    for p, i, q in P.admissible():
        r = circ_profile(p, i, q)
        m = q.arity
        for x, y in itertools.product(P.elements(p), P.elements(q)):
            try:
                xy = P.circ(p, i, q, x, y)
            except OperadError as exc:
                report.add(str(exc))
                continue
            for a in arguments(X, r):
                inner = get(q, y, a[i - 1: i - 1 + m])
                if inner is _MISSING:
                    continue
                lhs = get(r, xy, a)
                rhs = get(p, x, a[: i - 1] + (inner,) + a[i - 1 + m:])
                if _MISSING in (lhs, rhs):
                    continue
                report.check(lhs == rhs, lambda: (
                    f"composition not respected: ({x} o_{i} {y}) acts on {a} as {lhs!r}, "
                    f"composite of actions gives {rhs!r}"))
    for p in P.profiles:
        for alpha in Permutation.all(p.arity):
            if alpha.is_identity():
                continue
            q = p.permuted(alpha)
            for e in P.elements(p):
                try:
                    ae = P.act(p, alpha, e)
                except OperadError as exc:
                    report.add(str(exc))
                    continue
                for y in arguments(X, q):
                    lhs = get(q, ae, y)
                    rhs = get(p, e, unpermute(alpha, y))
                    if _MISSING in (lhs, rhs):
                        continue
                    report.check(lhs == rhs, lambda: (
                        f"symmetry not respected: {alpha}^*{e} acts on {y} as {lhs!r}, expected {rhs!r}"))
    return report


_MISSING = object()


def curry(A: AlgebraStructure, limit: int | None = None):
    """The algebra as a map ``P -> End(X)`` on ``P``'s support: returns
    ``(End, phi)`` with ``phi[p][e]`` the name of the function ``e`` acts by."""
    P = A.operad
    End = end_operad(A.family, profiles=P.profiles, limit=limit)
    fn = FunctionTables(A.family)
    phi = {p: {e: fn.name(p, A.action[(p, e)]) for e in P.elements(p)} for p in P.profiles}
    return End, phi


def verify_algebra_via_end(A: AlgebraStructure, limit: int | None = None) -> Report:
    End, phi = curry(A, limit)
    return verify_operad_morphism(A.operad, End, phi)


# ------------------------------------------------------------- algebra maps

def verify_algebra_map(A: AlgebraStructure, B: AlgebraStructure, f: Mapping[Hashable, Mapping]) -> Report:
    """Check ``f(c) o A(e) == B(e) o (f(c1) x ... x f(cn))`` for every stored
    operation ``e``; ``f`` maps each colour to a dict ``X(c) -> Y(c)``."""
    report = Report(support=A.operad.support_summary())
    X, Y = A.family, B.family
    for c in A.operad.colours:
        fc = f.get(c, {})
        for x in X.get(c, ()):
            report.check(x in fc and fc[x] in Y.get(c, ()),
                         lambda: f"map at colour {c!r} is not a function X({c}) -> Y({c}) at {x!r}")
    if not report.ok:
        return report
    for p in A.operad.profiles:
        for e in A.operad.elements(p):
            for a in arguments(X, p):
                try:
                    lhs = f[p.output][A.apply(p, e, a)]
                    rhs = B.apply(p, e, tuple(f[c][x] for c, x in zip(p.inputs, a)))
                except AlgebraError as exc:
                    if A.total and B.total:
                        report.add(str(exc))
                    continue
                report.check(lhs == rhs, lambda: (
                    f"map does not commute with {e!r} in {p} at {a}: f(A(e)(x)) = {lhs!r}, "
                    f"B(e)(f(x)) = {rhs!r}"))
    return report


def end_pullback(X: Mapping, Y: Mapping, f: Mapping, p: Profile, limit: int | None = None) -> list[tuple[str, str]]:
    """``End(f)`` at ``p``: pairs ``(u, v)`` with ``f o u == v o (f x ... x f)``."""
    fn_x, fn_y = FunctionTables(X), FunctionTables(Y)
    args = arguments(X, p)
    out = []
    vs = [(v, fn_y.table(p, v)) for v in end_component(Y, p, limit)]
    for u in end_component(X, p, limit):
        tu = fn_x.table(p, u)
        for v, tv in vs:
            if all(f[p.output][tu[a]] == tv[tuple(f[c][x] for c, x in zip(p.inputs, a))] for a in args):
                out.append((u, v))
    return out


def verify_algebra_map_via_pullback(A: AlgebraStructure, B: AlgebraStructure, f: Mapping,
                                    limit: int | None = None) -> Report:
    """Same condition as :func:`verify_algebra_map`, checked by landing the
    pair of curried actions in the pullback ``End(f)``."""
    report = Report(support=A.operad.support_summary())
    fx, fy = FunctionTables(A.family), FunctionTables(B.family)
    for p in A.operad.profiles:
        pairs = set(end_pullback(A.family, B.family, f, p, limit))
        for e in A.operad.elements(p):
            pair = (fx.name(p, A.action[(p, e)]), fy.name(p, B.action[(p, e)]))
            report.check(pair in pairs, lambda: f"{e!r} in {p} does not land in End(f)")
    return report


# ------------------------------------------------------------ constructions

def algebra_from_functions(P: FiniteOperad, X: Mapping, rule: Callable) -> AlgebraStructure:
    """Tabulate ``rule(p, e, args)`` over the whole support."""
    action = {}
    for p in P.profiles:
        args = arguments(X, p)
        for e in P.elements(p):
            action[(p, e)] = {a: rule(p, e, a) for a in args}
    return AlgebraStructure(P, dict(X), action)


def module_algebra(R: Monoid, X: Sequence, act: Mapping, colour: str = "c") -> AlgebraStructure:
    """A left ``R``-set ``act[(r, x)] = r.x`` as a ``P_R``-algebra."""
    P = operad_from_monoid(R, colour)
    return algebra_from_functions(P, {colour: tuple(X)}, lambda p, r, a: act[(r, a[0])])


def ass_algebra(M: Monoid, max_arity: int, colour: str = "c") -> AlgebraStructure:
    """A monoid as an algebra over truncated ``Ass``: the word ``(w1 ... wn)``
    acts by ``x_w1 * ... * x_wn``, the empty word by the unit."""
    P = ass_truncated(max_arity, colour)

    def rule(p, e, a):
        out = M.unit
        for k in parse_word(e):
            out = M(out, a[k - 1])
        return out

    return algebra_from_functions(P, {colour: M.carrier}, rule)


# -------------------------------------------------- trees acting on operads

def sc_evaluate(Q: FiniteOperad, t: Tree, elems: Sequence, check: bool = False):
    """Act by the tree ``t`` on ``elems``: label vertex ``k`` by
    ``elems[k-1]``, compose along the tree, then renumber inputs by the leaf
    numbering."""
    vps = profile_of(t)[0]
    if len(elems) != len(vps):
        raise AlgebraError(f"tree has {len(vps)} vertices but {len(elems)} elements were given")
    for k, (p, e) in enumerate(zip(vps, elems), start=1):
        if e not in Q.elements(p):
            raise AlgebraError(f"element {k} ({e!r}) is not in Q{p}")
    if check:
        report = verify_operad(Q)
        if not report.ok:
            raise AlgebraError("target is not an operad: " + "; ".join(report.violations[:3]))
    try:
        return evaluate_numbered(Q, t, lambda v: elems[v.number - 1])[1]
    except OperadError as exc:
        raise AlgebraError(str(exc)) from None


def sc_action(Q: FiniteOperad) -> Callable:
    """``Q`` viewed as an algebra over the tree operad."""
    return lambda t, elems: sc_evaluate(Q, t, elems)


def grafted_pair(p: Profile, i: int, q: Profile) -> Vertex:
    """Root vertex 1 on ``p`` with vertex 2 on ``q`` in slot ``i``; leaves
    numbered left to right."""
    numbers = itertools.count(1)
    children = []
    for k, c in enumerate(p.inputs, start=1):
        if k == i:
            children.append(Vertex(2, q.output, tuple(Leaf(next(numbers), a) for a in q.inputs)))
        else:
            children.append(Leaf(next(numbers), c))
    return Vertex(1, p.output, tuple(children))


def operad_from_sc_action(phi: Callable, colours: Sequence, components: Mapping[Profile, Sequence],
                          name: str = "") -> FiniteOperad:
    """Read an operad off an action of the tree operad on ``components``.

    Units are the images of edge trees, ``alpha^*`` is the one-vertex tree
    whose leaf ``j`` sits at position ``alpha(j)``, and ``o_i`` is the
    two-vertex tree from :func:`grafted_pair`.  Inconsistencies are left in
    place for :func:`~operad_forge.operads.verify_operad` to report.
    """
    def act(p, alpha, x):
        return phi(corolla_with_numbering(p, alpha), (x,))

    def circ(p, i, q, x, y):
        return phi(grafted_pair(p, i, q), (x, y))

    units = {c: phi(Edge(c), ()) for c in colours if Profile((c,), c) in components}
    return tabulate(colours, components, act, circ, units, name=name)


def labellings(Q: FiniteOperad, t: Tree, cap: int | None = None) -> list[tuple]:
    """Element labellings of the vertices of ``t``: all of them, or a
    sample of ``cap`` drawn with a generator seeded by the tree's text."""
    pools = [Q.elements(p) for p in profile_of(t)[0]]
    total = math.prod(len(pool) for pool in pools)
    if cap is None or total <= cap:
        return list(itertools.product(*pools))
    rng = random.Random(serialize_tree(t))
    return sorted({tuple(rng.choice(pool) for pool in pools) for _ in range(cap)})


def compare_operads(P: FiniteOperad, Q: FiniteOperad, report: Report | None = None) -> Report:
    """Entrywise equality of two operads' tables on ``P``'s support."""
    report = report if report is not None else Report()
    report.check(P.profiles == Q.profiles, "supports differ")
    report.check(P.units == Q.units, lambda: f"units differ: {P.units} vs {Q.units}")
    for key in sorted(set(P.base.actions) | set(Q.base.actions)):
        p, alpha = key
        if alpha.is_identity() and (key not in P.base.actions or key not in Q.base.actions):
            continue
        a, b = P.base.actions.get(key), Q.base.actions.get(key)
        report.check(a == b, lambda: f"action of {alpha} on {p} differs")
    for key in sorted(set(P.circ_tables) | set(Q.circ_tables)):
        p, i, q = key
        a, b = P.circ_tables.get(key), Q.circ_tables.get(key)
        if a is None or b is None:
            report.add(f"o_{i} table of {p} with {q} present on one side only")
            continue
        for xy in sorted(set(a) | set(b)):
            report.check(a.get(xy) == b.get(xy), lambda: (
                f"{xy[0]} o_{i} {xy[1]} [{p};{q}]: {a.get(xy)!r} vs {b.get(xy)!r}"))
    return report


def roundtrip_report(Q: FiniteOperad, max_vertices: int, max_labellings: int | None = 32,
                     all_numberings: bool = True) -> Report:
    """Operads versus algebras over the tree operad, both directions.

    1. Extract an operad from the tree action of ``Q`` and compare tables.
    2. Both operads act identically on every tree with at most
       ``max_vertices`` vertices over ``Q``'s support.
    3. The action of ``Q`` respects grafting: acting by ``t o_i s`` equals
       acting by ``t`` after substituting the action of ``s`` at vertex ``i``.
       Checked on one vertex numbering per tree shape.

    Element labellings beyond ``max_labellings`` per tree are sampled.
    """
    report = Report(support=Q.support_summary())
    base = verify_operad(Q)
    if not base.ok:
        report.extend(base)
        return report
    phi = sc_action(Q)
    R = operad_from_sc_action(phi, Q.colours, Q.components, name=Q.name)
    compare_operads(Q, R, report)
    trees = list(trees_over(Q.profiles, max_vertices, all_numberings=all_numberings))
    skipped = 0
    for t in trees:
        for elems in labellings(Q, t, max_labellings):
            try:
                a = sc_evaluate(Q, t, elems)
            except AlgebraError:
                skipped += 1
                continue
            b = sc_evaluate(R, t, elems)
            report.check(a == b, lambda: f"extracted operad acts differently on {serialize_tree(t)}")
    # grafting commutes with renumbering vertices, so one numbering per shape suffices here
    shapes = list(trees_over(Q.profiles, max_vertices, all_numberings=False))
    by_boundary: dict = {}
    for s in shapes:
        if not isinstance(s, Edge):
            by_boundary.setdefault(profile_of(s)[1], []).append(s)
    for t in shapes:
        if isinstance(t, Edge):
            continue
        vps = profile_of(t)[0]
        for i, p in enumerate(vps, start=1):
            for s in by_boundary.get(p, ()):
                n_s = len(profile_of(s)[0])
                if len(vps) + n_s - 1 > max_vertices:
                    continue
                ts = tree_circ(t, i, s)
                for lt, ls in zip(labellings(Q, t, max_labellings), itertools.cycle(labellings(Q, s, max_labellings))):
                    try:
                        inner = sc_evaluate(Q, s, ls)
                        lhs = sc_evaluate(Q, ts, lt[: i - 1] + ls + lt[i:])
                        rhs = sc_evaluate(Q, t, lt[: i - 1] + (inner,) + lt[i:])
                    except AlgebraError:
                        skipped += 1
                        continue
                    report.check(lhs == rhs, lambda: (
                        f"grafting not respected: {serialize_tree(t)} o_{i} {serialize_tree(s)}"))
    report.support += f"; {len(trees)} trees, {skipped} evaluations outside the support"
    return report


# ---------------------------------------------------------- free algebras

def _orbit_name(P: FiniteOperad, p: Profile, e, xs: tuple) -> str:
    best = None
    for alpha in Permutation.all(p.arity):
        cand = (str(P.act(p, alpha, e)), tuple(map(str, alpha.permute(xs))))
        if best is None or cand < best:
            best = cand
    return f"{best[0]}[{' '.join(best[1])}]"


def free_carrier(P: FiniteOperad, X: Mapping) -> dict:
    """For each colour, the classes of pairs ``(e, (x1..xn))`` under
    ``(alpha^* e, y) ~ (e, x)`` with ``y_k = x_alpha(k)``, keyed by the least
    representative's name and mapped to one member ``(p, e, xs)``."""
    X = {c: tuple(X.get(c, ())) for c in P.colours}
    carrier: dict = {c: {} for c in P.colours}
    for p in P.profiles:
        for e in P.elements(p):
            for xs in arguments(X, p):
                carrier[p.output].setdefault(_orbit_name(P, p, e, xs), (p, e, xs))
    return {c: dict(sorted(v.items())) for c, v in carrier.items()}


def free_algebra(P: FiniteOperad, X: Mapping) -> AlgebraStructure:
    """The free ``P``-algebra on ``X``, on ``P``'s finite support.

    Operations act by composing in the first coordinate and concatenating
    arguments.  Action entries whose composite falls outside the support are
    omitted and the result is then marked partial.
    """
    carrier = free_carrier(P, X)
    family = {c: tuple(v) for c, v in carrier.items()}
    action = {}
    total = True
    for q in P.profiles:
        for e in P.elements(q):
            table = {}
            for args in itertools.product(*(family[c] for c in q.inputs)):
                pieces = [carrier[c][a] for c, a in zip(q.inputs, args)]
                try:
                    r, z = gamma(P, q, e, [(pp, ee) for pp, ee, _ in pieces])
                except OperadError:
                    total = False
                    continue
                xs = tuple(itertools.chain.from_iterable(xx for _, _, xx in pieces))
                table[args] = _orbit_name(P, r, z, xs)
            action[(q, e)] = table
    return AlgebraStructure(P, family, action, total)


def free_unit_map(P: FiniteOperad, X: Mapping) -> dict:
    """The inclusion of generators ``x -> [1_c, (x)]``."""
    cc = {c: Profile((c,), c) for c in P.units}
    return {c: {x: _orbit_name(P, cc[c], P.unit(c), (x,)) for x in X.get(c, ())} for c in cc}


def extend_from_free(P: FiniteOperad, X: Mapping, A: AlgebraStructure, g: Mapping) -> dict:
    """The map out of the free algebra extending ``g: X -> U(A)``:
    ``[e, (x1..xn)] -> A(e)(g(x1), ..., g(xn))``."""
    out: dict = {}
    for c, classes in free_carrier(P, X).items():
        out[c] = {name: A.apply(p, e, tuple(g[a][x] for a, x in zip(p.inputs, xs)))
                  for name, (p, e, xs) in classes.items()}
    return out
