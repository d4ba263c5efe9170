"""Deterministic pushdown automata, their stack histories and pumping
arguments for finite unions and intersections of deterministic
context-free languages."""

from .automaton import Dpda, accepts, complement, load_machine, run, validate
from .languages import Complement, DfaLeaf, DpdaLeaf, Intersection, PredicateLeaf, Union, member

__all__ = ["Dpda", "accepts", "complement", "load_machine", "run", "validate",
           "Complement", "DfaLeaf", "DpdaLeaf", "Intersection", "PredicateLeaf", "Union", "member"]
