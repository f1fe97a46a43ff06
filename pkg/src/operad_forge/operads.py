"""Coloured operads in finite sets, stored as partial-composition tables.

An operad here is a :class:`~operad_forge.collection.Collection` together
with unit elements and, for every admissible triple ``(p, i, q)``, the table
of ``x o_i y``.  The full composition product is derived by iterating
``o_i``.  Operads such as ``Ass`` are infinite, so every table lives on a
finite *support*: the stored profiles.  A triple is admissible, and its table
required, exactly when ``p``, ``q`` and the composite profile are all stored;
the verifier quantifies over admissible data only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterator, Mapping, Sequence

from .collection import Collection, CollectionError, build_actions, validate_collection
from .perms import Permutation, block_permutation
from .report import Report
from .trees import Edge, Leaf, Profile, Vertex, leaf_positions


class OperadError(ValueError):
    pass


def circ_profile(p: Profile, i: int, q: Profile) -> Profile:
    """Profile of ``x o_i y`` for ``x`` in ``p`` and ``y`` in ``q``."""
    if not 1 <= i <= p.arity:
        raise OperadError(f"slot {i} out of range for {p}")
    if q.output != p.inputs[i - 1]:
        raise OperadError(f"cannot plug {q} into slot {i} of {p}")
    return Profile(p.inputs[: i - 1] + q.inputs + p.inputs[i:], p.output)


@dataclass
class FiniteOperad:
    base: Collection
    units: dict = field(default_factory=dict)
    circ_tables: dict = field(default_factory=dict)
    name: str = ""

    @property
    def colours(self) -> tuple:
        return self.base.colours

    @property
    def components(self) -> dict:
        return self.base.components

    @property
    def profiles(self) -> list[Profile]:
        return self.base.profiles

    def elements(self, p: Profile) -> tuple:
        return self.base.elements(p)

    def in_support(self, p: Profile) -> bool:
        return self.base.in_support(p)

    def act(self, p: Profile, alpha: Permutation, x):
        try:
            return self.base.act(p, alpha, x)
        except CollectionError as exc:
            raise OperadError(str(exc)) from None

    def unit(self, colour):
        try:
            return self.units[colour]
        except KeyError:
            raise OperadError(f"no unit stored for colour {colour!r}") from None

    def circ(self, p: Profile, i: int, q: Profile, x, y):
        table = self.circ_tables.get((p, i, q))
        if table is None:
            circ_profile(p, i, q)
            raise OperadError(f"o_{i} of {p} with {q} lies outside the stored support")
        try:
            return table[(x, y)]
        except KeyError:
            raise OperadError(f"o_{i} of {p} with {q} undefined at ({x!r}, {y!r})") from None

    def admissible(self) -> Iterator[tuple[Profile, int, Profile]]:
        """Triples ``(p, i, q)`` whose composite profile is stored."""
        by_output: dict = {}
        for q in self.profiles:
            by_output.setdefault(q.output, []).append(q)
        for p in self.profiles:
            for i in range(1, p.arity + 1):
                for q in by_output.get(p.inputs[i - 1], ()):
                    if self.in_support(circ_profile(p, i, q)):
                        yield p, i, q

    def is_admissible(self, p: Profile, i: int, q: Profile) -> bool:
        if not (self.in_support(p) and self.in_support(q)):
            return False
        if not 1 <= i <= p.arity or q.output != p.inputs[i - 1]:
            return False
        return self.in_support(circ_profile(p, i, q))

    def support_summary(self) -> str:
        arities = [p.arity for p in self.profiles]
        return (f"{len(self.profiles)} profiles, arity <= {max(arities, default=0)}, "
                f"{self.base.size()} elements, {len(self.circ_tables)} o_i tables")


def tabulate(colours: Sequence, components: Mapping[Profile, Sequence],
             act: Callable, circ: Callable, units: Mapping, name: str = "") -> FiniteOperad:
    """Build an operad by tabulating ``act(p, alpha, x)`` and
    ``circ(p, i, q, x, y)`` over the support ``components``."""
    base = Collection(tuple(colours), dict(components), build_actions(components, act))
    op = FiniteOperad(base, dict(units), {}, name)
    for p, i, q in list(op.admissible()):
        op.circ_tables[(p, i, q)] = {
            (x, y): circ(p, i, q, x, y) for x in op.elements(p) for y in op.elements(q)
        }
    return op


# ------------------------------------------------------------------ verifier

def _labels_after_plug(n: int, slot: int, m: int, x_slot: Callable, y_slot: Callable) -> list:
    labels = []
    for k in range(1, n + 1):
        if k == slot:
            labels.extend(("y", y_slot(j)) for j in range(1, m + 1))
        else:
            labels.append(("x", x_slot(k)))
    return labels


def equivariance_left(p: Profile, alpha: Permutation, i: int, m: int) -> Permutation:
    """``alpha'`` with ``(alpha^* x) o_i y == alpha'^* (x o_{alpha(i)} y)``."""
    n = p.arity
    lhs = _labels_after_plug(n, i, m, alpha, lambda j: j)
    rhs = _labels_after_plug(n, alpha(i), m, lambda s: s, lambda j: j)
    return block_permutation(lhs, rhs)


def equivariance_right(p: Profile, i: int, beta: Permutation) -> Permutation:
    """``beta'`` with ``x o_i (beta^* y) == beta'^* (x o_i y)``."""
    n, m = p.arity, beta.size
    lhs = _labels_after_plug(n, i, m, lambda s: s, beta)
    rhs = _labels_after_plug(n, i, m, lambda s: s, lambda j: j)
    return block_permutation(lhs, rhs)


def verify_operad(P: FiniteOperad) -> Report:
    """Check the operad axioms on every stored element.

    Covers the collection laws, totality of the stored tables, both unit
    laws, nested and parallel associativity of ``o_i``, and equivariance of
    ``o_i`` in each argument.  The report names the support it covered.
    """
    report = validate_collection(P.base)
    report.support = P.support_summary()
    _check_tables(P, report)
    for law in (_check_units, _check_nested, _check_parallel, _check_equivariance):
        law(P, report)
    return report


def _safe(report: Report, fn: Callable):
    try:
        return fn()
    except OperadError as exc:
        report.add(str(exc))
        return _FAILED


_FAILED = object()


def _check_tables(P: FiniteOperad, report: Report):
    wanted = set(P.admissible())
    for key in sorted(set(P.circ_tables) - wanted, key=lambda k: (k[0], k[1], k[2])):
        report.add(f"o_{key[1]} table stored for non-admissible triple {key[0]}, {key[2]}")
    for p, i, q in sorted(wanted, key=lambda k: (k[0], k[1], k[2])):
        table = P.circ_tables.get((p, i, q))
        if table is None:
            report.add(f"missing o_{i} table for {p} with {q}")
            continue
        target = set(P.elements(circ_profile(p, i, q)))
        pairs = {(x, y) for x in P.elements(p) for y in P.elements(q)}
        report.check(set(table) == pairs,
                     lambda: f"o_{i} table for {p} with {q} is not defined exactly on all pairs")
        for (x, y), z in table.items():
            report.check(z in target, lambda: f"{x} o_{i} {y} = {z!r} lies outside {circ_profile(p, i, q)}")


def _check_units(P: FiniteOperad, report: Report):
    for c in P.colours:
        cc = Profile((c,), c)
        if not P.in_support(cc):
            continue
        if c not in P.units:
            report.add(f"no unit for colour {c!r}")
            continue
        if not report.check(P.units[c] in P.elements(cc),
                            lambda: f"unit {P.units[c]!r} of {c!r} is not in {cc}"):
            continue
    for c, u in P.units.items():
        if c not in P.colours:
            report.add(f"unit given for undeclared colour {c!r}")
    for p in P.profiles:
        cc = Profile((p.output,), p.output)
        if P.is_admissible(cc, 1, p) and p.output in P.units:
            for x in P.elements(p):
                z = _safe(report, lambda: P.circ(cc, 1, p, P.units[p.output], x))
                if z is not _FAILED:
                    report.check(z == x, lambda: f"left unit law fails at {x!r} in {p}")
        for i, c in enumerate(p.inputs, start=1):
            ci = Profile((c,), c)
            if P.is_admissible(p, i, ci) and c in P.units:
                for x in P.elements(p):
                    z = _safe(report, lambda: P.circ(p, i, ci, x, P.units[c]))
                    if z is not _FAILED:
                        report.check(z == x, lambda: f"right unit law fails at {x!r} in {p}, slot {i}")


def _check_nested(P: FiniteOperad, report: Report):
    """``(x o_i y) o_{i-1+j} z == x o_i (y o_j z)``."""
    for p, i, q in P.admissible():
        pq = circ_profile(p, i, q)
        for j in range(1, q.arity + 1):
            for r in P.profiles:
                if r.output != q.inputs[j - 1]:
                    continue
                if not (P.is_admissible(pq, i - 1 + j, r) and P.is_admissible(q, j, r)):
                    continue
                qr = circ_profile(q, j, r)
                if not P.is_admissible(p, i, qr):
                    continue
                for x, y, z in itertools.product(P.elements(p), P.elements(q), P.elements(r)):
                    lhs = _safe(report, lambda: P.circ(pq, i - 1 + j, r, P.circ(p, i, q, x, y), z))
                    rhs = _safe(report, lambda: P.circ(p, i, qr, x, P.circ(q, j, r, y, z)))
                    if _FAILED not in (lhs, rhs):
                        report.check(lhs == rhs, lambda: (
                            f"nested associativity fails: ({x} o_{i} {y}) o_{i - 1 + j} {z} = {lhs!r} "
                            f"but {x} o_{i} ({y} o_{j} {z}) = {rhs!r}  [{p}; {q}; {r}]"))


def _check_parallel(P: FiniteOperad, report: Report):
    """``(x o_i y) o_{k-1+m} z == (x o_k z) o_i y`` for ``i < k``."""
    for p, i, q in P.admissible():
        m = q.arity
        pq = circ_profile(p, i, q)
        for k in range(i + 1, p.arity + 1):
            for r in P.profiles:
                if r.output != p.inputs[k - 1]:
                    continue
                if not (P.is_admissible(pq, k - 1 + m, r) and P.is_admissible(p, k, r)):
                    continue
                pr = circ_profile(p, k, r)
                if not P.is_admissible(pr, i, q):
                    continue
                for x, y, z in itertools.product(P.elements(p), P.elements(q), P.elements(r)):
                    lhs = _safe(report, lambda: P.circ(pq, k - 1 + m, r, P.circ(p, i, q, x, y), z))
                    rhs = _safe(report, lambda: P.circ(pr, i, q, P.circ(p, k, r, x, z), y))
                    if _FAILED not in (lhs, rhs):
                        report.check(lhs == rhs, lambda: (
                            f"parallel associativity fails: ({x} o_{i} {y}) o_{k - 1 + m} {z} = {lhs!r} "
                            f"but ({x} o_{k} {z}) o_{i} {y} = {rhs!r}  [{p}; {q}; {r}]"))


def _check_equivariance(P: FiniteOperad, report: Report):
    for p in P.profiles:
        if not P.elements(p):
            continue
        for alpha in Permutation.all(p.arity):
            ap = p.permuted(alpha)
            for i in range(1, p.arity + 1):
                for q in P.profiles:
                    if not (P.is_admissible(ap, i, q) and P.is_admissible(p, alpha(i), q)):
                        continue
                    twist = equivariance_left(p, alpha, i, q.arity)
                    target = circ_profile(p, alpha(i), q)
                    for x, y in itertools.product(P.elements(p), P.elements(q)):
                        lhs = _safe(report, lambda: P.circ(ap, i, q, P.act(p, alpha, x), y))
                        rhs = _safe(report, lambda: P.act(target, twist, P.circ(p, alpha(i), q, x, y)))
                        if _FAILED not in (lhs, rhs):
                            report.check(lhs == rhs, lambda: (
                                f"equivariance fails: ({alpha}^* {x}) o_{i} {y} = {lhs!r} "
                                f"but {twist}^*({x} o_{alpha(i)} {y}) = {rhs!r}  [{p}; {q}]"))
    for p, i, q in P.admissible():
        target = circ_profile(p, i, q)
        for beta in Permutation.all(q.arity):
            if beta.is_identity():
                continue
            bq = q.permuted(beta)
            if not P.is_admissible(p, i, bq):
                continue
            twist = equivariance_right(p, i, beta)
            for x, y in itertools.product(P.elements(p), P.elements(q)):
                lhs = _safe(report, lambda: P.circ(p, i, bq, x, P.act(q, beta, y)))
                rhs = _safe(report, lambda: P.act(target, twist, P.circ(p, i, q, x, y)))
                if _FAILED not in (lhs, rhs):
                    report.check(lhs == rhs, lambda: (
                        f"equivariance fails: {x} o_{i} ({beta}^* {y}) = {lhs!r} "
                        f"but {twist}^*({x} o_{i} {y}) = {rhs!r}  [{p}; {q}]"))


# ----------------------------------------------------------------- composition

def gamma(P: FiniteOperad, p: Profile, x, args: Sequence[tuple[Profile, Hashable]]):
    """Full composition ``gamma(x; y_1, ..., y_n)``, by ``o_i`` from the
    right.  ``args`` holds ``(profile, element)`` pairs; returns the pair for
    the composite."""
    if len(args) != p.arity:
        raise OperadError(f"{p} takes {p.arity} arguments, got {len(args)}")
    cur_p, cur = p, x
    for i in range(p.arity, 0, -1):
        q, y = args[i - 1]
        if q.output != p.inputs[i - 1]:
            raise OperadError(f"argument {i} has output {q.output!r}, expected {p.inputs[i - 1]!r}")
        cur, cur_p = P.circ(cur_p, i, q, cur, y), circ_profile(cur_p, i, q)
    return cur_p, cur


def gamma_left_to_right(P: FiniteOperad, p: Profile, x, args: Sequence[tuple[Profile, Hashable]]):
    """Same composite as :func:`gamma`, plugging from the left."""
    if len(args) != p.arity:
        raise OperadError(f"{p} takes {p.arity} arguments, got {len(args)}")
    cur_p, cur, slot = p, x, 1
    for q, y in args:
        cur, cur_p = P.circ(cur_p, slot, q, cur, y), circ_profile(cur_p, slot, q)
        slot += q.arity
    return cur_p, cur


def evaluate_planar(P: FiniteOperad, node, label: Callable[[Vertex], Hashable]):
    """Compose the labels of a planar tree along its edges.

    Returns ``(profile, element)`` where the profile lists the leaf colours in
    planar order.  Subtrees without leaves are plugged in first, so every
    intermediate arity stays below the larger of the vertex's arity and the
    final one; that keeps truncated operads usable.
    """
    if isinstance(node, Edge):
        c = node.colour
        return Profile((c,), c), P.unit(c)
    p = Profile(tuple(ch.colour for ch in node.children), node.colour)
    cur_p, cur = p, label(node)
    sub = {j: evaluate_planar(P, ch, label) for j, ch in enumerate(node.children) if not isinstance(ch, Leaf)}
    widths = [1] * len(node.children)
    order = sorted(sub, key=lambda j: (sub[j][0].arity != 0, -j))
    for j in order:
        q, y = sub[j]
        slot = 1 + sum(widths[:j])
        cur, cur_p = P.circ(cur_p, slot, q, cur, y), circ_profile(cur_p, slot, q)
        widths[j] = q.arity
    return cur_p, cur


def evaluate_numbered(P: FiniteOperad, tree, label: Callable[[Vertex], Hashable]):
    """Compose along ``tree`` and then apply the leaf numbering: the result
    has input ``j`` at the leaf numbered ``j``."""
    planar_p, x = evaluate_planar(P, tree, label)
    pi = Permutation(leaf_positions(tree))
    return planar_p.permuted(pi), P.act(planar_p, pi, x)


def verify_operad_morphism(P: FiniteOperad, Q: FiniteOperad, phi: Mapping[Profile, Mapping]) -> Report:
    """Check that ``phi`` (componentwise maps ``P[p] -> Q[p]``) preserves
    units, ``o_i`` and the symmetric group actions on ``P``'s support."""
    report = Report()
    for p in P.profiles:
        for x in P.elements(p):
            ok = x in phi.get(p, {}) and phi[p][x] in Q.elements(p)
            report.check(ok, lambda: f"morphism does not send {x!r} in {p} into the target component")
    if not report.ok:
        return report
    for c, u in P.units.items():
        report.check(phi[Profile((c,), c)][u] == Q.units.get(c), lambda: f"unit of {c!r} not preserved")
    for p in P.profiles:
        for alpha in Permutation.all(p.arity):
            for x in P.elements(p):
                lhs = _safe(report, lambda: phi[p.permuted(alpha)][P.act(p, alpha, x)])
                rhs = _safe(report, lambda: Q.act(p, alpha, phi[p][x]))
                report.check(lhs == rhs, lambda: f"action of {alpha} on {x!r} in {p} not preserved")
    for p, i, q in P.admissible():
        r = circ_profile(p, i, q)
        for x, y in itertools.product(P.elements(p), P.elements(q)):
            lhs = _safe(report, lambda: phi[r][P.circ(p, i, q, x, y)])
            rhs = _safe(report, lambda: Q.circ(p, i, q, phi[p][x], phi[q][y]))
            if _FAILED not in (lhs, rhs):
                report.check(lhs == rhs, lambda: f"o_{i} not preserved at ({x!r}, {y!r}) [{p}; {q}]")
    return report


# ------------------------------------------------------------------- fixtures

def profiles_up_to(colours: Sequence, max_arity: int) -> list[Profile]:
    out = []
    for n in range(max_arity + 1):
        for inputs in itertools.product(colours, repeat=n):
            for c in colours:
                out.append(Profile(inputs, c))
    return sorted(out)


def terminal_operad(colours: Sequence, max_arity: int) -> FiniteOperad:
    """One element ``*`` in every profile of arity ``<= max_arity``."""
    if max_arity < 1:
        raise OperadError("max_arity must be at least 1")
    comps = {p: ("*",) for p in profiles_up_to(colours, max_arity)}
    return tabulate(colours, comps, lambda p, a, x: "*", lambda p, i, q, x, y: "*",
                    {c: "*" for c in colours}, name=f"terminal{max_arity}")


def word_name(word: Sequence[int]) -> str:
    return "(" + " ".join(map(str, word)) + ")"


def parse_word(name: str) -> tuple[int, ...]:
    inner = name.strip()[1:-1].split()
    return tuple(int(a) for a in inner)


def ass_truncated(max_arity: int, colour: str = "c") -> FiniteOperad:
    """``Ass(n) = Sigma_n`` for ``n <= max_arity`` (arity 0 included).

    A permutation is named by its word ``(w1 ... wn)``, read as the
    operation ``x_w1 * ... * x_wn``.  Hence ``alpha^* w = alpha^-1 o w`` and
    ``w o_i u`` replaces the letter ``i`` of ``w`` by the shifted word ``u``.
    """
    if max_arity < 1:
        raise OperadError("max_arity must be at least 1")
    comps = {}
    for n in range(max_arity + 1):
        comps[Profile((colour,) * n, colour)] = tuple(
            word_name(alpha.images) for alpha in Permutation.all(n))

    def act(p, alpha, name):
        w = parse_word(name)
        inv = alpha.inverse()
        return word_name(tuple(inv(a) for a in w))

    def circ(p, i, q, x, y):
        return word_name(substitute_word(parse_word(x), i, parse_word(y)))

    return tabulate((colour,), comps, act, circ, {colour: word_name((1,))}, name=f"ass{max_arity}")


def substitute_word(w: Sequence[int], i: int, u: Sequence[int]) -> tuple[int, ...]:
    m = len(u)
    out = []
    for a in w:
        if a < i:
            out.append(a)
        elif a == i:
            out.extend(b + i - 1 for b in u)
        else:
            out.append(a + m - 1)
    return tuple(out)


class MonoidError(ValueError):
    pass


@dataclass
class Monoid:
    carrier: tuple
    mult: dict
    unit: Hashable

    def __post_init__(self):
        self.carrier = tuple(self.carrier)

    def __call__(self, a, b):
        return self.mult[(a, b)]

    @classmethod
    def from_function(cls, carrier, f, unit) -> Monoid:
        carrier = tuple(carrier)
        return cls(carrier, {(a, b): f(a, b) for a in carrier for b in carrier}, unit)

    @classmethod
    def cyclic(cls, n: int) -> Monoid:
        names = [str(k) for k in range(n)]
        return cls.from_function(names, lambda a, b: str((int(a) + int(b)) % n), "0")

    def violations(self) -> list[str]:
        out = []
        s = set(self.carrier)
        if len(s) != len(self.carrier):
            out.append("carrier lists an element twice")
        if self.unit not in s:
            out.append(f"unit {self.unit!r} not in carrier")
        for a, b in itertools.product(self.carrier, repeat=2):
            if (a, b) not in self.mult:
                out.append(f"product {a}*{b} undefined")
            elif self.mult[(a, b)] not in s:
                out.append(f"product {a}*{b} = {self.mult[(a, b)]!r} not in carrier")
        if out:
            return out
        for a in self.carrier:
            if self(self.unit, a) != a or self(a, self.unit) != a:
                out.append(f"unit law fails at {a!r}")
        for a, b, c in itertools.product(self.carrier, repeat=3):
            if self(self(a, b), c) != self(a, self(b, c)):
                out.append(f"associativity fails at ({a}, {b}, {c})")
        return out


def operad_from_monoid(R: Monoid, colour: str = "c") -> FiniteOperad:
    """``P_R``: concentrated in ``(c;c)`` with ``o_1`` the monoid product.
    Every other profile is empty and left unstored."""
    problems = R.violations()
    if problems:
        raise MonoidError("; ".join(problems))
    cc = Profile((colour,), colour)
    base = Collection((colour,), {cc: R.carrier}, {(cc, Permutation.identity(1)): {r: r for r in R.carrier}})
    return FiniteOperad(base, {colour: R.unit}, {(cc, 1, cc): dict(R.mult)}, name="P_R")


def monoid_of(P: FiniteOperad, colour) -> Monoid:
    """The monoid ``P(c;c)`` under ``o_1``."""
    cc = Profile((colour,), colour)
    els = P.elements(cc)
    return Monoid(els, {(a, b): P.circ(cc, 1, cc, a, b) for a in els for b in els}, P.unit(colour))


# ----------------------------------------------------------- mutation testing

CORRUPT = "?corrupt"


def single_entry_mutations(P: FiniteOperad) -> Iterator[tuple[str, FiniteOperad]]:
    """Every operad obtained by changing one table entry: a unit, one value of
    an action table, or one value of a ``o_i`` table.  Each entry is replaced
    by every other element of its target component and by a foreign name."""
    for c, u in sorted(P.units.items()):
        for alt in _alternatives(P.elements(Profile((c,), c)), u):
            yield f"unit[{c}] := {alt}", FiniteOperad(P.base, {**P.units, c: alt}, P.circ_tables, P.name)
    for (p, alpha), table in sorted(P.base.actions.items(), key=lambda kv: (kv[0][0], kv[0][1])):
        for x, v in table.items():
            for alt in _alternatives(P.elements(p.permuted(alpha)), v):
                actions = dict(P.base.actions)
                actions[(p, alpha)] = {**table, x: alt}
                base = Collection(P.base.colours, P.base.components, actions)
                yield f"{alpha}^*[{p}]({x}) := {alt}", FiniteOperad(base, P.units, P.circ_tables, P.name)
    for key, table in sorted(P.circ_tables.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2])):
        p, i, q = key
        for (x, y), v in table.items():
            for alt in _alternatives(P.elements(circ_profile(p, i, q)), v):
                tables = dict(P.circ_tables)
                tables[key] = {**table, (x, y): alt}
                yield f"{x} o_{i} {y} [{p};{q}] := {alt}", FiniteOperad(P.base, P.units, tables, P.name)


def _alternatives(component: Sequence, current) -> list:
    return [e for e in component if e != current] + [CORRUPT]
