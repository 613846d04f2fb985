"""Computational tools for combable groups with unsolvable decision problems:
free-group words and foldings, group oracles, amalgams and doubles, and the
constructions built on them."""
from .words import Alphabet, GeneratorMap, MalformedInput, NielsenRecord, format_word, free_reduce, parse_word
from .folding import SubgroupGraph, fold_subgroup, subgroup_member
from .oracle import GroupOracle, ResourceError, Undecided, ball_enumerate, make_oracle
from .presentation import FinitePresentation, HomCertificate, parse_presentation, serialize
from .amalgam import AmalgamSpec, amalgam_equal, build_amalgam, conjugator_search
from .combing import fellow_traveller_bound

__version__ = "0.1.0"
