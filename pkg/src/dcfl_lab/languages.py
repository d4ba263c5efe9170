"""Composed languages: unions, intersections and complements over DPDA, DFA
and predicate leaves, plus regular restriction by product construction."""

from dataclasses import dataclass

from .automaton import EPS, LEFT, RIGHT, Dpda, accepts, complement
from .errors import ArityUnknown, PreconditionError


class Dfa:
    """Complete deterministic finite automaton."""

    def __init__(self, states, alphabet, delta, initial, accepting, name=None):
        self.states = frozenset(states)
        self.alphabet = frozenset(alphabet)
        self.delta = dict(delta)
        self.initial = initial
        self.accepting = frozenset(accepting)
        self.name = name
        for q in self.states:
            for a in self.alphabet:
                if (q, a) not in self.delta:
                    raise ValueError(f"DFA is not complete: missing ({q},{a})")

    def step(self, q, a):
        return self.delta[(q, a)]

    def accepts(self, word):
        q = self.initial
        for a in word:
            q = self.delta[(q, a)]
        return q in self.accepting

    def complement(self):
        return Dfa(self.states, self.alphabet, self.delta, self.initial,
                   self.states - self.accepting, name=f"co-{self.name}")


def universal_dfa(alphabet):
    return Dfa({"u"}, alphabet, {("u", a): "u" for a in alphabet}, "u", {"u"}, name="Σ*")


def empty_dfa(alphabet):
    return Dfa({"e"}, alphabet, {("e", a): "e" for a in alphabet}, "e", set(), name="∅")


def sequence_dfa(alphabet, order, name=None):
    """DFA for s1* s2* ... sk* where order = [s1, ..., sk]."""
    rank = {s: i for i, s in enumerate(order)}
    dead = len(order)
    delta = {}
    for i in range(len(order) + 1):
        for a in alphabet:
            if i == dead or a not in rank or rank[a] < i:
                delta[(i, a)] = dead
            else:
                delta[(i, a)] = rank[a]
    return Dfa(range(len(order) + 1), alphabet, delta, 0, range(len(order)), name=name)


def parity_dfa(alphabet, odd=True, name=None):
    delta = {(q, a): 1 - q for q in (0, 1) for a in alphabet}
    return Dfa({0, 1}, alphabet, delta, 0, {1} if odd else {0}, name=name)


# ---- expression tree ----

class LanguageSpec:
    def alphabet(self):
        raise NotImplementedError


class DpdaLeaf(LanguageSpec):
    def __init__(self, machine, name=None):
        self.machine = machine
        self.name = name or machine.name

    def alphabet(self):
        return frozenset(self.machine.input_alphabet)

    def __repr__(self):
        return f"DpdaLeaf({self.name})"


class DfaLeaf(LanguageSpec):
    def __init__(self, dfa, name=None):
        self.dfa = dfa
        self.name = name or dfa.name

    def alphabet(self):
        return frozenset(self.dfa.alphabet)

    def __repr__(self):
        return f"DfaLeaf({self.name})"


class PredicateLeaf(LanguageSpec):
    def __init__(self, fn, alphabet, name=None):
        self.fn = fn
        self._alphabet = frozenset(alphabet)
        self.name = name or getattr(fn, "__name__", "predicate")

    def alphabet(self):
        return self._alphabet

    def __repr__(self):
        return f"PredicateLeaf({self.name})"


class _Nary(LanguageSpec):
    op = "?"

    def __init__(self, children):
        self.children = list(children)
        if not self.children:
            raise PreconditionError(f"{type(self).__name__} needs at least one child")
        alphabets = {c.alphabet() for c in self.children}
        if len(alphabets) != 1:
            raise PreconditionError("all components must share one input alphabet")

    def alphabet(self):
        return self.children[0].alphabet()

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(map(repr, self.children))})"


class Union(_Nary):
    op = "union"


class Intersection(_Nary):
    op = "intersection"


class Complement(LanguageSpec):
    def __init__(self, child):
        self.child = child

    def alphabet(self):
        return self.child.alphabet()

    def __repr__(self):
        return f"Complement({self.child!r})"


def member(spec, word, step_budget=None):
    if isinstance(spec, DpdaLeaf):
        return accepts(spec.machine, word, step_budget)
    if isinstance(spec, DfaLeaf):
        return spec.dfa.accepts(word)
    if isinstance(spec, PredicateLeaf):
        return bool(spec.fn(word))
    if isinstance(spec, Union):
        return any(member(c, word, step_budget) for c in spec.children)
    if isinstance(spec, Intersection):
        return all(member(c, word, step_budget) for c in spec.children)
    if isinstance(spec, Complement):
        return not member(spec.child, word, step_budget)
    raise TypeError(f"not a language expression: {spec!r}")


@dataclass(frozen=True)
class Arity:
    kind: str   # "union", "intersection" or "single"
    d: int

    def __str__(self):
        return f"{self.d}-{self.kind}"


def arity(spec):
    """Report the d of a pure d-union / d-intersection of DPDA leaves."""
    if isinstance(spec, DpdaLeaf):
        return Arity("single", 1)
    if isinstance(spec, (Union, Intersection)) and all(isinstance(c, DpdaLeaf) for c in spec.children):
        return Arity(spec.op, len(spec.children))
    raise ArityUnknown(f"{spec!r} is not a pure union/intersection of DPDA leaves")


def dpda_leaves(spec):
    if isinstance(spec, DpdaLeaf):
        return [spec]
    if isinstance(spec, (Union, Intersection)):
        out = []
        for c in spec.children:
            out.extend(dpda_leaves(c))
        return out
    if isinstance(spec, Complement):
        return dpda_leaves(spec.child)
    return []


def complement_spec(spec):
    """Push a complement to the leaves by De Morgan, complementing DPDAs directly."""
    if isinstance(spec, DpdaLeaf):
        return DpdaLeaf(complement(spec.machine))
    if isinstance(spec, DfaLeaf):
        return DfaLeaf(spec.dfa.complement())
    if isinstance(spec, Union):
        return Intersection([complement_spec(c) for c in spec.children])
    if isinstance(spec, Intersection):
        return Union([complement_spec(c) for c in spec.children])
    if isinstance(spec, Complement):
        return spec.child
    return Complement(spec)


# ---- product with a DFA ----

def product_with_dfa(machine, dfa, mode):
    """DPDA for L(machine) ∩ L(dfa) (mode "intersect") or ∪ (mode "union").

    The DFA advances on every real input symbol.  If the DPDA halts before
    the right endmarker, the product keeps scanning with a stationary stack
    so the DFA still sees the whole input.
    """
    if mode not in ("intersect", "union"):
        raise PreconditionError(f"unknown mode {mode!r}")
    if set(dfa.alphabet) != set(machine.input_alphabet):
        raise PreconditionError("DFA and DPDA alphabets differ")
    sigma = sorted(machine.input_alphabet)
    ACC, REJ = "ACC", "REJ"

    def combine(m_acc, s):
        d_acc = s in dfa.accepting
        return (m_acc and d_acc) if mode == "intersect" else (m_acc or d_acc)

    def name(p, s, ended):
        return f"{p}&{s}" + ("&$" if ended else "")

    def done(m_acc, s):
        return f"done:{int(m_acc)}&{s}"

    # a DFA sink that already decides the combined answer stops the run at once
    sinks = {s for s in dfa.states if all(dfa.step(s, a) == s for a in sigma)}
    decided = {s: (REJ if mode == "intersect" else ACC) for s in sinks
               if (s in dfa.accepting) == (mode == "union")}

    # Early decisions: a rejected DPDA settles an intersection, an accepted one a union.
    def settle(q, s, ended):
        if s in decided:
            return decided[s]
        m_acc = q in machine.accept_states
        if ended:
            return ACC if combine(m_acc, s) else REJ
        if mode == "intersect" and not m_acc:
            return REJ
        if mode == "union" and m_acc:
            return ACC
        return done(m_acc, s)

    states = {ACC, REJ}
    delta = {}
    inner = [p for p in machine.states if p not in machine.halting_states]
    for p in inner:
        for s in dfa.states:
            for ended in (False, True):
                states.add(name(p, s, ended))

    def target(q, s, ended):
        if s in decided:
            return decided[s]
        if q in machine.halting_states:
            t = settle(q, s, ended)
            states.add(t)
            return t
        return name(q, s, ended)

    for (p, a, top), (q, push) in machine.transitions.items():
        if p in machine.halting_states:
            continue
        for s in dfa.states:
            for ended in (False, True):
                if a == EPS:
                    delta[(name(p, s, ended), EPS, top)] = (target(q, s, ended), push)
                elif a == LEFT:
                    delta[(name(p, s, ended), a, top)] = (target(q, s, ended), push)
                elif a == RIGHT:
                    delta[(name(p, s, ended), a, top)] = (target(q, s, True), push)
                else:
                    delta[(name(p, s, ended), a, top)] = (target(q, dfa.step(s, a), ended), push)

    for m_acc in (False, True):
        for s in dfa.states:
            st = done(m_acc, s)
            states.add(st)
            for top in machine.stack_alphabet:
                for a in sigma:
                    s2 = dfa.step(s, a)
                    delta[(st, a, top)] = (decided.get(s2, done(m_acc, s2)), top)
                delta[(st, LEFT, top)] = (st, top)
                delta[(st, RIGHT, top)] = (ACC if combine(m_acc, s) else REJ, top)

    label = f"{machine.name}{'∩' if mode == 'intersect' else '∪'}{dfa.name}"
    init = target(machine.initial_state, dfa.initial, False)
    return Dpda(states, machine.input_alphabet, machine.stack_alphabet, delta, init,
                machine.bottom_marker, {ACC}, {REJ}, machine.push_size, name=label)


def restrict_regular(spec, dfa, mode):
    """Push a regular language into every component, keeping the arity."""
    ar = arity(spec)
    if set(dfa.alphabet) != set(spec.alphabet()):
        raise PreconditionError("alphabets differ")
    if isinstance(spec, DpdaLeaf):
        return DpdaLeaf(product_with_dfa(spec.machine, dfa, mode))
    parts = [DpdaLeaf(product_with_dfa(c.machine, dfa, mode)) for c in spec.children]
    out = Union(parts) if ar.kind == "union" else Intersection(parts)
    return out
