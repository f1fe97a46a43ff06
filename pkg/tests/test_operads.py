import itertools
import random

import pytest
from hypothesis import given, strategies as st

from operad_forge.collection import Collection
from operad_forge.operads import (CORRUPT, FiniteOperad, Monoid, MonoidError, OperadError, ass_truncated,
                                  circ_profile, gamma, gamma_left_to_right, monoid_of, operad_from_monoid,
                                  parse_word, single_entry_mutations, substitute_word, tabulate,
                                  terminal_operad, verify_operad, verify_operad_morphism, word_name)
from operad_forge.perms import Permutation
from operad_forge.trees import Profile, parse_profile

P = parse_profile


@pytest.mark.parametrize("make", [
    lambda: terminal_operad(["a"], 3),
    lambda: terminal_operad(["a", "b"], 2),
    lambda: ass_truncated(3),
    lambda: ass_truncated(4),
    lambda: operad_from_monoid(Monoid.cyclic(3)),
])
def test_fixtures_verify(make):
    report = verify_operad(make())
    assert report.ok, report.violations[:3]
    assert report.checks > 0
    assert report.summary().startswith("OK (")


def test_circ_profile():
    assert circ_profile(P("(a,b;c)"), 2, P("(a,a;b)")) == P("(a,a,a;c)")
    with pytest.raises(OperadError):
        circ_profile(P("(a,b;c)"), 1, P("(a;b)"))
    with pytest.raises(OperadError):
        circ_profile(P("(a,b;c)"), 3, P("(a;b)"))


def test_ass_words():
    assert substitute_word((2, 1), 1, (1, 2)) == (3, 1, 2)
    assert word_name((3, 1, 2)) == "(3 1 2)"
    assert parse_word("()") == ()
    A = ass_truncated(3)
    assert A.circ(P("(c,c;c)"), 1, P("(c,c;c)"), "(2 1)", "(1 2)") == "(3 1 2)"
    assert A.unit("c") == "(1)"
    assert A.elements(P("(;c)")) == ("()",)


def test_ass_with_wrong_action_convention_fails():
    A = ass_truncated(3)
    comps = A.components

    def act(p, alpha, name):
        return word_name(tuple(alpha(a) for a in parse_word(name)))

    def circ(p, i, q, x, y):
        return word_name(substitute_word(parse_word(x), i, parse_word(y)))

    wrong = tabulate(("c",), comps, act, circ, {"c": "(1)"})
    assert not verify_operad(wrong).ok


def test_truncated_support_only_requires_admissible_tables():
    A = ass_truncated(2)
    assert (P("(c,c;c)"), 1, P("(c,c;c)")) not in A.circ_tables
    assert A.is_admissible(P("(c,c;c)"), 1, P("(c;c)"))
    assert not A.is_admissible(P("(c,c;c)"), 1, P("(c,c;c)"))
    with pytest.raises(OperadError, match="outside the stored support"):
        A.circ(P("(c,c;c)"), 1, P("(c,c;c)"), "(1 2)", "(1 2)")


def test_missing_table_is_reported():
    A = ass_truncated(2)
    tables = dict(A.circ_tables)
    del tables[(P("(c,c;c)"), 1, P("(c;c)"))]
    report = verify_operad(FiniteOperad(A.base, A.units, tables))
    assert any("missing" in v for v in report.violations)


@given(st.integers(0, 2**32 - 1))
def test_gamma_order_independent(seed):
    rng = random.Random(seed)
    A = ass_truncated(4)
    n = rng.randint(0, 2)
    x = rng.choice(A.elements(Profile(("c",) * n, "c")))
    args = []
    budget = 4
    for _ in range(n):
        m = rng.randint(0, max(0, budget - (n - 1)))
        m = min(m, budget)
        budget -= m
        q = Profile(("c",) * m, "c")
        args.append((q, rng.choice(A.elements(q))))
    p = Profile(("c",) * n, "c")
    try:
        right = gamma(A, p, x, args)
    except OperadError:
        return
    assert right == gamma_left_to_right(A, p, x, args)


def test_gamma_on_ass_matches_substitution():
    A = ass_truncated(3)
    bin_ = P("(c,c;c)")
    r, z = gamma(A, bin_, "(2 1)", [(P("(c;c)"), "(1)"), (bin_, "(2 1)")])
    assert r == P("(c,c,c;c)")
    assert z == "(3 2 1)"


def test_monoid_validation():
    with pytest.raises(MonoidError):
        operad_from_monoid(Monoid.from_function(["0", "1"], lambda a, b: "0", "1"))
    # unital but not associative: (aa)a = ba = b, a(aa) = ab = a
    table = {("a", "a"): "b", ("a", "b"): "a", ("b", "a"): "b", ("b", "b"): "a"}
    magma = Monoid.from_function(["e", "a", "b"], lambda x, y: y if x == "e" else x if y == "e" else table[(x, y)], "e")
    with pytest.raises(MonoidError, match="associativity"):
        operad_from_monoid(magma)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_monoid_roundtrip(n):
    R = Monoid.cyclic(n)
    back = monoid_of(operad_from_monoid(R), "c")
    assert back.carrier == R.carrier and back.mult == R.mult and back.unit == R.unit


def test_operad_morphism_ass_to_terminal():
    A = ass_truncated(3)
    T = terminal_operad(["c"], 3)
    phi = {p: {x: "*" for x in A.elements(p)} for p in A.profiles}
    assert verify_operad_morphism(A, T, phi).ok


def test_operad_morphism_detects_broken_map():
    R, S = operad_from_monoid(Monoid.cyclic(4)), operad_from_monoid(Monoid.cyclic(2))
    cc = P("(c;c)")
    good = {cc: {str(k): str(k % 2) for k in range(4)}}
    assert verify_operad_morphism(R, S, good).ok
    bad = {cc: {"0": "0", "1": "0", "2": "1", "3": "1"}}
    assert not verify_operad_morphism(R, S, bad).ok


# ------------------------------------------------------------- mutations

@pytest.mark.parametrize("make", [lambda: terminal_operad(["a"], 2), lambda: operad_from_monoid(Monoid.cyclic(3))])
def test_every_mutation_detected(make):
    Q = make()
    mutants = list(single_entry_mutations(Q))
    assert mutants
    for desc, mutant in mutants:
        assert not verify_operad(mutant).ok, desc


def test_mutations_include_corrupt_values():
    descs = [d for d, _ in single_entry_mutations(terminal_operad(["a"], 1))]
    assert any(CORRUPT in d for d in descs)


@pytest.mark.parametrize("R", [
    Monoid.cyclic(2),
    Monoid.from_function(["e", "a", "b"], lambda x, y: y if x == "e" else x, "e"),
])
def test_undetected_mutants_are_genuine_operads(R):
    """Where a corruption passes the verifier, the mutated table is another
    monoid, so the mutant really is an operad."""
    passed = [(d, m) for d, m in single_entry_mutations(operad_from_monoid(R)) if verify_operad(m).ok]
    assert passed
    for desc, mutant in passed:
        M = monoid_of(mutant, "c")
        assert M.violations() == [], desc
        assert M.mult != R.mult or M.unit != R.unit


def test_report_lists_violation_text():
    Q = operad_from_monoid(Monoid.cyclic(3))
    cc = P("(c;c)")
    tables = {k: dict(v) for k, v in Q.circ_tables.items()}
    tables[(cc, 1, cc)][("1", "1")] = "0"
    report = verify_operad(FiniteOperad(Q.base, Q.units, tables))
    assert not report.ok
    assert "FAILED" in str(report)
    assert report.to_json()["ok"] is False


def test_foreign_element_in_action_reported():
    Q = terminal_operad(["a"], 2)
    actions = dict(Q.base.actions)
    key = (P("(a,a;a)"), Permutation((2, 1)))
    actions[key] = {"*": "nope"}
    mutant = FiniteOperad(Collection(Q.base.colours, Q.base.components, actions), Q.units, Q.circ_tables)
    assert not verify_operad(mutant).ok


def test_every_entry_mutated_once_per_alternative():
    Q = operad_from_monoid(Monoid.cyclic(2))
    n_entries = len(Q.units) + sum(len(t) for t in Q.base.actions.values()) \
        + sum(len(t) for t in Q.circ_tables.values())
    assert len(list(single_entry_mutations(Q))) == n_entries * 2
    assert list(itertools.islice(single_entry_mutations(Q), 1))[0][0].startswith("unit")
