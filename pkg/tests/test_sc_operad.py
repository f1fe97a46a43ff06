import itertools
import random

import pytest
from hypothesis import given, strategies as st

import oracles
from strategies import composable, random_args, random_filler, random_permutation, random_tree, trees

from operad_forge.operads import verify_operad
from operad_forge.perms import Permutation
from operad_forge.sc_operad import (as_permutation, circ, component, compose, corolla_with_numbering,
                                    d_profile, restricted_operad, sigma_action, trees_over, unit)
from operad_forge.trees import (Edge, TreeError, parse_profile, parse_tree, profile_of,
                                serialize_tree, validate)

P = parse_profile
T = "v1:c(v2:a(l1:c,l2:b),v3:b(l5:a,l3:a,l4:a))"
T1 = "v2:c(v1:c(l1:a,l2:b))"
T2 = "v1:a(v2:b(l1:c),l2:b)"
T3 = "v2:b(l3:a,v1:c(l2:a,l1:a))"


def test_worked_composition_example():
    result = compose(parse_tree(T), [parse_tree(s) for s in (T1, T2, T3)])
    assert serialize_tree(result) == "v2:c(v1:c(v3:a(v4:b(l1:c),l2:b),v6:b(l4:a,v5:c(l3:a,l5:a))))"


def test_single_circ():
    result = circ(parse_tree(T), 2, parse_tree(T2))
    assert serialize_tree(result) == "v1:c(v2:a(v3:b(l1:c),l2:b),v4:b(l5:a,l3:a,l4:a))"


def test_swap_vertices():
    swapped = sigma_action(parse_tree(T), Permutation((2, 1, 3)))
    assert serialize_tree(swapped) == "v2:c(v1:a(l1:c,l2:b),v3:b(l5:a,l3:a,l4:a))"


@pytest.mark.parametrize("profile, text", [
    ("(a,b;c)", "v1:c(l1:a,l2:b)"),
    ("(;c)", "v1:c()"),
    ("(a1,a2,a3;a)", "v1:a(l1:a1,l2:a2,l3:a3)"),
])
def test_units_are_corollas(profile, text):
    assert serialize_tree(unit(P(profile))) == text


def test_edge_tree_substitutes_for_unary_vertex():
    x = parse_tree("v1:c(v2:c(l1:c))")
    assert compose(x, [parse_tree("e:c"), unit(P("(c;c)"))]) == parse_tree("v1:c(l1:c)")
    assert compose(x, [parse_tree("e:c"), parse_tree("e:c")]) == Edge("c")


def test_compose_rejects_mismatched_boundary():
    with pytest.raises(TreeError, match="boundary"):
        compose(parse_tree(T), [parse_tree(T2), parse_tree(T1), parse_tree(T3)])
    with pytest.raises(TreeError):
        compose(parse_tree(T), [parse_tree(T1)])
    with pytest.raises(TreeError):
        circ(parse_tree(T), 4, parse_tree(T1))


def test_d_profile():
    d = d_profile(parse_tree(T))
    assert d.inputs == (P("(a,b;c)"), P("(c,b;a)"), P("(a,a,a;b)"))
    assert d.output == P("(c,b,a,a,a;c)")


# ------------------------------------------------------------------ laws

@given(trees(min_vertices=1))
def test_unit_laws(x):
    vps, b = profile_of(x)
    assert compose(unit(b), [x]) == x
    assert compose(x, [unit(p) for p in vps]) == x


@given(composable(), st.randoms(use_true_random=False))
def test_associativity(xy, rng):
    x, ys = xy
    zs = [[random_filler(rng, p, 2) for p in profile_of(y)[0]] for y in ys]
    flat = [z for block in zs for z in block]
    assert compose(compose(x, ys), flat) == compose(x, [compose(y, z) for y, z in zip(ys, zs)])


@given(composable(), st.randoms(use_true_random=False))
def test_equivariance(xy, rng):
    x, ys = xy
    sizes = [len(profile_of(y)[0]) for y in ys]
    alpha = random_permutation(rng, len(ys))
    lhs = compose(sigma_action(x, alpha), [ys[alpha(k) - 1] for k in range(1, len(ys) + 1)])
    assert lhs == sigma_action(compose(x, ys), oracles.block_sum(alpha, sizes))
    betas = [random_permutation(rng, s) for s in sizes]
    lhs = compose(x, [sigma_action(y, b) for y, b in zip(ys, betas)])
    assert lhs == sigma_action(compose(x, ys), oracles.direct_sum(betas))


@given(composable())
def test_result_is_valid_with_expected_profile(xy):
    x, ys = xy
    r = compose(x, ys)
    assert validate(r) == []
    vps, b = profile_of(r)
    assert b == profile_of(x)[1]
    assert vps == tuple(p for y in ys for p in profile_of(y)[0])


@given(composable())
def test_iterated_circ_agrees_with_compose(xy):
    x, ys = xy
    cur = x
    for i in range(len(ys), 0, -1):
        cur = circ(cur, i, ys[i - 1])
    assert cur == compose(x, ys)


@given(st.randoms(use_true_random=False))
def test_sequential_and_parallel_circ(rng):
    x = random_tree(rng, rng.randint(2, 3))
    n = len(profile_of(x)[0])
    i, j = sorted(rng.sample(range(1, n + 1), 2))
    y = random_filler(rng, profile_of(x)[0][i - 1], 2)
    z = random_filler(rng, profile_of(x)[0][j - 1], 2)
    m = len(profile_of(y)[0])
    # parallel: o_i then o_j (shifted past y's vertices) equals o_j then o_i
    assert circ(circ(x, j, z), i, y) == circ(circ(x, i, y), j + m - 1, z)
    # sequential: plug w into y first or into the composite
    if m:
        k = rng.randint(1, m)
        w = random_filler(rng, profile_of(y)[0][k - 1], 2)
        assert circ(circ(x, i, y), i + k - 1, w) == circ(x, i, circ(y, k, w))


@given(trees(min_vertices=1), st.randoms(use_true_random=False))
def test_sigma_action_is_right_action(t, rng):
    n = len(profile_of(t)[0])
    a, b = random_permutation(rng, n), random_permutation(rng, n)
    assert sigma_action(t, a * b) == sigma_action(sigma_action(t, a), b)
    assert profile_of(sigma_action(t, a))[0] == a.permute(profile_of(t)[0])


# ------------------------------------------------- permutations as corollas

def test_identification_with_symmetric_group():
    p = P("(a,a;c)")
    elements = component(["a", "c"], [p], p)
    assert len(elements) == 2
    assert as_permutation(parse_tree("v1:c(l2:a,l1:a)")) == Permutation((2, 1))
    for x, y in itertools.product(elements, repeat=2):
        assert as_permutation(circ(x, 1, y)) == as_permutation(y) * as_permutation(x)


def test_identification_with_colour_preserving_subgroup():
    p = P("(a,b,a;c)")
    elements = component(None, [p], p)
    perms = {as_permutation(t) for t in elements}
    assert perms == {Permutation((1, 2, 3)), Permutation((3, 2, 1))}
    for x, y in itertools.product(elements, repeat=2):
        assert as_permutation(circ(x, 1, y)) == as_permutation(y) * as_permutation(x)


def test_sigma3_identification():
    p = P("(a,a,a;c)")
    elements = component(None, [p], p)
    assert sorted(as_permutation(t) for t in elements) == list(Permutation.all(3))


@pytest.mark.parametrize("images", list(itertools.permutations((1, 2, 3))))
def test_corolla_with_numbering(images):
    alpha = Permutation(images)
    assert as_permutation(corolla_with_numbering(P("(a,b,c;d)"), alpha)) == alpha


def test_as_permutation_needs_one_vertex():
    assert as_permutation(parse_tree("e:c")) is None
    assert as_permutation(parse_tree(T)) is None


# ------------------------------------------------------- finite restriction

def test_restricted_operad_verifies():
    d_colours = [P("(c;c)"), P("(c,c;c)"), P("(;c)")]
    S = restricted_operad(["c"], d_colours, 2)
    assert verify_operad(S).ok


def test_trees_over_matches_oracle():
    support = [P("(;c)"), P("(c;c)"), P("(c,c;c)")]
    found = {serialize_tree(t) for t in trees_over(support, 2)}
    expected = set()
    for n in range(3):
        for vps in itertools.product(support, repeat=n):
            for b in support:
                expected |= oracles.brute_trees(vps, b)
    assert found == expected


def test_random_args_respect_profiles():
    rng = random.Random(3)
    for _ in range(50):
        x = random_tree(rng, 3)
        ys = random_args(rng, x, 5)
        assert [profile_of(y)[1] for y in ys] == list(profile_of(x)[0])
