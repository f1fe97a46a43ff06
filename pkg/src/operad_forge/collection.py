"""Finite coloured collections: sets of named elements per profile with a
right action of the symmetric groups.

``alpha^*`` sends an element of profile ``(c1,...,cn;c)`` to one of profile
``(c_alpha(1),...,c_alpha(n);c)``; input ``k`` of ``alpha^* x`` is input
``alpha(k)`` of ``x``.  With ``alpha * beta`` the composite ``alpha o beta``
the action law reads ``(alpha*beta)^* = beta^* o alpha^*``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping

from .perms import Permutation
from .report import Report
from .trees import Profile


class CollectionError(ValueError):
    pass


@dataclass
class Collection:
    colours: tuple
    components: dict = field(default_factory=dict)
    actions: dict = field(default_factory=dict)

    def __post_init__(self):
        self.colours = tuple(self.colours)
        self.components = {p: tuple(els) for p, els in self.components.items()}

    def elements(self, p: Profile) -> tuple:
        return self.components.get(p, ())

    @property
    def profiles(self) -> list[Profile]:
        return sorted(self.components)

    def in_support(self, p: Profile) -> bool:
        return p in self.components

    def act(self, p: Profile, alpha: Permutation, x: Hashable):
        """``alpha^* x`` for ``x`` in component ``p``."""
        table = self.actions.get((p, alpha))
        if table is None:
            if alpha.is_identity():
                return x
            raise CollectionError(f"no action table for {alpha} on {p}")
        try:
            return table[x]
        except KeyError:
            raise CollectionError(f"action of {alpha} on {p} undefined at {x!r}") from None

    def size(self) -> int:
        return sum(len(v) for v in self.components.values())


def build_actions(components: Mapping[Profile, Iterable],
                  rule: Callable[[Profile, Permutation, Hashable], Hashable],
                  include_identity: bool = True) -> dict:
    """Tabulate ``rule(p, alpha, x)`` for every stored profile and every
    permutation of its inputs."""
    actions = {}
    for p, els in components.items():
        for alpha in Permutation.all(p.arity):
            if alpha.is_identity() and not include_identity:
                continue
            actions[(p, alpha)] = {x: rule(p, alpha, x) for x in els}
    return actions


def trivial_actions(components: Mapping[Profile, Iterable]) -> dict:
    """The action by which every permutation fixes every element name.  Only
    valid when each component is shared with all its permuted profiles."""
    return build_actions(components, lambda p, alpha, x: x)


def validate_collection(K: Collection) -> Report:
    """Exhaustively check totality and the right-action laws."""
    report = Report()
    for p in K.profiles:
        els = K.elements(p)
        if len(set(els)) != len(els):
            report.add(f"component {p} lists an element twice")
        bad = (set(p.inputs) | {p.output}) - set(K.colours)
        if bad:
            report.add(f"component {p} uses undeclared colours {sorted(map(str, bad))}")
    for (p, alpha), table in sorted(K.actions.items(), key=lambda kv: (kv[0][0], kv[0][1])):
        if p not in K.components:
            report.add(f"action of {alpha} given on unstored profile {p}")
        elif alpha.size != p.arity:
            report.add(f"action of {alpha} on {p} has the wrong size")
    for p in K.profiles:
        els = K.elements(p)
        if not els:
            continue
        for alpha in Permutation.all(p.arity):
            target = p.permuted(alpha)
            table = K.actions.get((p, alpha))
            if table is None:
                if not alpha.is_identity():
                    report.add(f"missing action table for {alpha} on {p}")
                continue
            report.check(set(table) == set(els),
                         lambda: f"action of {alpha} on {p} is not defined exactly on the component")
            target_els = set(K.elements(target))
            for x in els:
                if x in table:
                    report.check(table[x] in target_els,
                                 lambda: f"{alpha}^*({x}) = {table[x]!r} is not in component {target}")
            if alpha.is_identity():
                for x in els:
                    if x in table:
                        report.check(table[x] == x, lambda: f"identity does not fix {x!r} in {p}")
    for p in K.profiles:
        for alpha in Permutation.all(p.arity):
            for beta in Permutation.all(p.arity):
                for x in K.elements(p):
                    try:
                        lhs = K.act(p, alpha * beta, x)
                        rhs = K.act(p.permuted(alpha), beta, K.act(p, alpha, x))
                    except CollectionError as exc:
                        report.add(str(exc))
                        continue
                    report.check(lhs == rhs, lambda: (
                        f"action law fails on {p} at {x!r}: ({alpha}{beta})^* gives {lhs!r}, "
                        f"{beta}^* {alpha}^* gives {rhs!r}"))
    return _dedupe(report)


def _dedupe(report: Report) -> Report:
    seen = set()
    out = []
    for v in report.violations:
        if v not in seen:
            seen.add(v)
            out.append(v)
    report.violations = out
    return report


def validate_morphism(K: Collection, L: Collection, phi: Mapping[Profile, Mapping]) -> Report:
    """Check that ``phi`` maps each ``K[p]`` into ``L[p]`` and commutes with
    the symmetric group actions."""
    report = Report()
    for p in K.profiles:
        els = K.elements(p)
        table = phi.get(p, {})
        for x in els:
            if x not in table:
                report.add(f"morphism undefined at {x!r} in {p}")
            else:
                report.check(table[x] in set(L.elements(p)),
                             lambda: f"morphism sends {x!r} in {p} outside the target component")
    if not report.ok:
        return report
    for p in K.profiles:
        for alpha in Permutation.all(p.arity):
            q = p.permuted(alpha)
            for x in K.elements(p):
                try:
                    lhs = phi[q][K.act(p, alpha, x)]
                    rhs = L.act(p, alpha, phi[p][x])
                except (CollectionError, KeyError) as exc:
                    report.add(f"equivariance check at {x!r} in {p}: {exc}")
                    continue
                report.check(lhs == rhs,
                             lambda: f"morphism not equivariant at {x!r} in {p} under {alpha}")
    return report


def all_morphisms(K: Collection, L: Collection) -> list[dict]:
    """Every equivariant map ``K -> L`` (brute force over componentwise maps)."""
    slots = [(p, x) for p in K.profiles for x in K.elements(p)]
    choices = [L.elements(p) for p, _ in slots]
    out = []
    for values in itertools.product(*choices):
        phi: dict = {p: {} for p in K.profiles}
        for (p, x), y in zip(slots, values):
            phi[p][x] = y
        if validate_morphism(K, L, phi).ok:
            out.append(phi)
    return out
