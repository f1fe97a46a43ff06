"""Coloured operads in finite sets: numbered trees, the tree operad whose
algebras are coloured operads, free operads, a table-driven operad verifier,
and algebras over finite operads."""

from .collection import Collection, validate_collection
from .operads import FiniteOperad, Monoid, ass_truncated, operad_from_monoid, terminal_operad, verify_operad
from .perms import Permutation
from .trees import Profile, parse_profile, parse_tree, profile_of, serialize_tree

__version__ = "0.1.0"

__all__ = [
    "Collection", "FiniteOperad", "Monoid", "Permutation", "Profile", "ass_truncated",
    "operad_from_monoid", "parse_profile", "parse_tree", "profile_of", "serialize_tree",
    "terminal_operad", "validate_collection", "verify_operad",
]
