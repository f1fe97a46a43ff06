import pytest
from hypothesis import given, strategies as st

from operad_forge.perms import Permutation, block_permutation
from operad_forge.trees import Profile


@st.composite
def perm_pairs(draw, max_n=5):
    n = draw(st.integers(0, max_n))
    p = draw(st.permutations(range(1, n + 1)))
    q = draw(st.permutations(range(1, n + 1)))
    return Permutation(tuple(p)), Permutation(tuple(q))


def test_composition_is_function_composition():
    p = Permutation((2, 3, 1))
    q = Permutation((2, 1, 3))
    assert (p * q).images == (3, 2, 1)
    assert p(q(1)) == (p * q)(1)


def test_rejects_non_permutations():
    with pytest.raises(ValueError):
        Permutation((1, 1))
    with pytest.raises(ValueError):
        Permutation((0, 1))


def test_all_is_lexicographic_and_complete():
    perms = list(Permutation.all(3))
    assert len(perms) == 6
    assert perms == sorted(perms)
    assert list(Permutation.all(0)) == [Permutation(())]


@given(perm_pairs())
def test_inverse(pq):
    p, _ = pq
    assert (p * p.inverse()).is_identity()
    assert (p.inverse() * p).is_identity()


@given(perm_pairs())
def test_profile_action_is_a_right_action(pq):
    p, q = pq
    prof = Profile(tuple(f"c{k}" for k in range(p.size)), "d")
    assert prof.permuted(p * q) == prof.permuted(p).permuted(q)


def test_transposition_and_str():
    t = Permutation.transposition(3, 1, 3)
    assert str(t) == "[3 2 1]"
    assert (t * t).is_identity()


def test_block_permutation():
    p = block_permutation(["b", "c", "a"], ["a", "b", "c"])
    assert [["a", "b", "c"][p(k) - 1] for k in (1, 2, 3)] == ["b", "c", "a"]
