from operad_forge.collection import (Collection, all_morphisms, build_actions, trivial_actions,
                                     validate_collection, validate_morphism)
from operad_forge.perms import Permutation
from operad_forge.trees import parse_profile

P = parse_profile
SWAP = Permutation((2, 1))
ID2 = Permutation((1, 2))


def two_coloured():
    ab, ba = P("(a,b;c)"), P("(b,a;c)")
    comps = {ab: ("f", "g"), ba: ("f'", "g'")}
    prime = {"f": "f'", "g": "g'", "f'": "f", "g'": "g"}
    return Collection(("a", "b", "c"), comps, build_actions(comps, lambda p, a, x: x if a.is_identity() else prime[x]))


def test_valid_collection():
    assert validate_collection(two_coloured()).ok


def test_trivial_actions_valid_when_profiles_are_symmetric():
    comps = {P("(c,c;c)"): ("m",), P("(;c)"): ("z",)}
    assert validate_collection(Collection(("c",), comps, trivial_actions(comps))).ok


def test_identity_tables_may_be_omitted():
    comps = {P("(c;c)"): ("u",)}
    assert validate_collection(Collection(("c",), comps, {})).ok


def test_missing_non_identity_action():
    comps = {P("(c,c;c)"): ("m",)}
    report = validate_collection(Collection(("c",), comps, {}))
    assert any("missing action table" in v for v in report.violations)


def test_action_outside_target_component():
    K = two_coloured()
    K.actions[(P("(a,b;c)"), SWAP)] = {"f": "g", "g": "f"}
    report = validate_collection(K)
    assert not report.ok


def test_action_law_violation():
    comps = {P("(c,c,c;c)"): ("x", "y", "z")}
    cycle = {"x": "y", "y": "z", "z": "x"}
    # every transposition acting by the same 3-cycle breaks (ab)^* = b^* a^*
    K = Collection(("c",), comps, build_actions(comps, lambda p, a, x: x if a.is_identity() else cycle[x]))
    report = validate_collection(K)
    assert any("action law" in v for v in report.violations)


def test_identity_must_fix():
    comps = {P("(c,c;c)"): ("m", "n")}
    K = Collection(("c",), comps, trivial_actions(comps))
    K.actions[(P("(c,c;c)"), ID2)] = {"m": "n", "n": "m"}
    assert any("identity" in v for v in validate_collection(K).violations)


def test_undeclared_colour():
    comps = {P("(x;c)"): ("u",)}
    assert not validate_collection(Collection(("c",), comps, {})).ok


def test_morphisms_between_swap_collections():
    binary = P("(c,c;c)")
    free = Collection(("c",), {binary: ("g", "h")},
                      {(binary, ID2): {"g": "g", "h": "h"}, (binary, SWAP): {"g": "h", "h": "g"}})
    trivial = Collection(("c",), {binary: ("m",)}, trivial_actions({binary: ("m",)}))
    assert len(all_morphisms(free, trivial)) == 1
    assert len(all_morphisms(trivial, free)) == 0
    assert len(all_morphisms(free, free)) == 2
    bad = {binary: {"g": "g", "h": "g"}}
    assert not validate_morphism(free, free, bad).ok
