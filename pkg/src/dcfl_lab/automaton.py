"""One-way deterministic pushdown automata with endmarkers and e-moves.

Stack strings are written top-first: the string "AZ" has A on top of Z.
"""

import json
import os
from dataclasses import dataclass, field

from .errors import BudgetExhausted, InvalidMachine, StuckMachine

EPS = "ε"
LEFT = "¢"
RIGHT = "$"
ENDMARKERS = (LEFT, RIGHT)

HARD_BUDGET_CAP = 5_000_000
BUDGET_ENV = "DCFL_LAB_BUDGET"


def env_budget():
    raw = os.environ.get(BUDGET_ENV)
    if not raw:
        return None
    try:
        value = int(raw)
    except ValueError:
        return None
    return value if value > 0 else None


class Dpda:
    def __init__(self, states, input_alphabet, stack_alphabet, transitions,
                 initial_state, bottom_marker, accept_states, reject_states,
                 push_size=None, name=None):
        self.states = frozenset(states)
        self.input_alphabet = frozenset(input_alphabet)
        self.stack_alphabet = frozenset(stack_alphabet)
        self.transitions = dict(transitions)
        self.initial_state = initial_state
        self.bottom_marker = bottom_marker
        self.accept_states = frozenset(accept_states)
        self.reject_states = frozenset(reject_states)
        if push_size is None:
            push_size = max((len(push) for _, push in self.transitions.values()), default=0)
        self.push_size = push_size
        self.name = name
        self._compiled = None

    @property
    def halting_states(self):
        return self.accept_states | self.reject_states

    def compiled(self):
        # (state, read, top) -> (next state, push string reversed for list.extend)
        if self._compiled is None:
            self._compiled = {k: (q, push[::-1]) for k, (q, push) in self.transitions.items()}
        return self._compiled

    def __repr__(self):
        label = self.name or "Dpda"
        return f"<{label}: {len(self.states)} states, {len(self.transitions)} transitions>"


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.detail}"


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def kinds(self):
        return {v.kind for v in self.violations}

    def add(self, kind, detail):
        self.violations.append(Violation(kind, detail))


def validate(machine):
    rep = ValidationReport()
    m = machine
    Z0 = m.bottom_marker
    for sym in m.input_alphabet:
        if not isinstance(sym, str) or len(sym) != 1:
            rep.add("alphabet", f"input symbol {sym!r} is not a single character")
        if sym in (EPS, LEFT, RIGHT):
            rep.add("alphabet", f"reserved symbol {sym!r} in input alphabet")
    for sym in m.stack_alphabet:
        if not isinstance(sym, str) or len(sym) != 1:
            rep.add("alphabet", f"stack symbol {sym!r} is not a single character")
    if Z0 not in m.stack_alphabet:
        rep.add("bottom", f"bottom marker {Z0!r} not in stack alphabet")
    if m.initial_state not in m.states:
        rep.add("states", f"initial state {m.initial_state!r} unknown")
    for q in m.accept_states | m.reject_states:
        if q not in m.states:
            rep.add("states", f"halting state {q!r} unknown")
    both = m.accept_states & m.reject_states
    if both:
        rep.add("halting", f"states both accepting and rejecting: {sorted(map(str, both))}")
    if m.initial_state in m.halting_states:
        rep.add("halting", "initial state is a halting state")

    reads = set(m.input_alphabet) | {LEFT, RIGHT, EPS}
    for (p, a, top), (q, push) in m.transitions.items():
        where = f"δ({p},{a},{top})"
        if p not in m.states or q not in m.states:
            rep.add("states", f"{where} uses an unknown state")
        if a not in reads:
            rep.add("alphabet", f"{where} reads unknown symbol {a!r}")
        if top not in m.stack_alphabet:
            rep.add("alphabet", f"{where} has unknown stack top {top!r}")
        if any(s not in m.stack_alphabet for s in push):
            rep.add("alphabet", f"{where} pushes unknown symbols {push!r}")
        if p in m.halting_states:
            rep.add("halting", f"{where} leaves halting state {p}")
        if len(push) > m.push_size:
            rep.add("push-size", f"{where} pushes {len(push)} > {m.push_size} symbols")
        if top == Z0:
            if not push.endswith(Z0):
                rep.add("bottom", f"{where} removes the bottom marker")
            elif Z0 in push[:-1]:
                rep.add("bottom", f"{where} pushes a second bottom marker")
        elif Z0 in push:
            rep.add("bottom", f"{where} pushes the bottom marker above the bottom")

    sigma = sorted(m.input_alphabet) + [LEFT, RIGHT]
    for p in sorted(m.states - m.halting_states, key=str):
        for top in sorted(m.stack_alphabet):
            has_eps = (p, EPS, top) in m.transitions
            for s in sigma:
                has_read = (p, s, top) in m.transitions
                if has_eps and has_read:
                    rep.add("determinism", f"both δ({p},{s},{top}) and δ({p},ε,{top}) defined")
                elif not has_eps and not has_read:
                    rep.add("determinism", f"neither δ({p},{s},{top}) nor δ({p},ε,{top}) defined")
    return rep


def ensure_valid(machine):
    rep = validate(machine)
    if not rep.ok:
        raise InvalidMachine(rep.violations)
    return machine


@dataclass(frozen=True)
class Move:
    state: str
    read: str      # a tape symbol, or EPS
    top: str
    to: str
    push: str
    pos: int       # tape cell index under the head before the move (0 is ¢)


@dataclass
class RunOutcome:
    accepted: bool
    steps: int
    final_state: str
    consumed: int
    trace: list = None

    @property
    def verdict(self):
        return "accept" if self.accepted else "reject"


def default_budget(machine, n):
    env = env_budget()
    if env is not None:
        return env
    stack_bound = 1 + max(1, machine.push_size) * (n + 2)
    return min(HARD_BUDGET_CAP, 10 * (n + 2) * stack_bound)


def run(machine, word, step_budget=None, trace=True):
    """Run the machine on ¢word$ until it halts."""
    return run_tape(machine, LEFT + word + RIGHT, step_budget, trace)


def run_tape(machine, tape, step_budget=None, trace=True):
    if step_budget is None:
        step_budget = default_budget(machine, len(tape) - 2)
    delta = machine.compiled()
    halting = machine.halting_states
    n = len(tape)
    stack = [machine.bottom_marker]
    state = machine.initial_state
    pos = 0
    steps = 0
    moves = [] if trace else None
    while state not in halting:
        top = stack[-1]
        t = delta.get((state, EPS, top))
        read = EPS
        if t is None:
            if pos >= n:
                raise StuckMachine(f"state {state} wants input past the end of the tape")
            read = tape[pos]
            t = delta.get((state, read, top))
            if t is None:
                raise StuckMachine(f"no move for ({state},{read},{top})")
        if steps >= step_budget:
            raise BudgetExhausted(step_budget, steps)
        nxt, rpush = t
        if moves is not None:
            moves.append(Move(state, read, top, nxt, rpush[::-1], pos))
        if read != EPS:
            pos += 1
        stack.pop()
        stack.extend(rpush)
        state = nxt
        steps += 1
    return RunOutcome(state in machine.accept_states, steps, state, pos, moves)


def accepts(machine, word, step_budget=None):
    return run(machine, word, step_budget, trace=False).accepted


def complement(machine):
    return Dpda(machine.states, machine.input_alphabet, machine.stack_alphabet,
                machine.transitions, machine.initial_state, machine.bottom_marker,
                machine.reject_states, machine.accept_states, machine.push_size,
                name=f"co-{machine.name}" if machine.name else None)


# ---- machine definition files ----

def machine_to_dict(machine):
    trans = []
    for (p, a, top), (q, push) in sorted(machine.transitions.items(), key=lambda kv: tuple(map(str, kv[0]))):
        trans.append({"from": p, "read": a, "top": top, "to": q, "push": push})
    return {
        "name": machine.name,
        "states": sorted(machine.states, key=str),
        "input_alphabet": sorted(machine.input_alphabet),
        "stack_alphabet": sorted(machine.stack_alphabet),
        "bottom_marker": machine.bottom_marker,
        "initial_state": machine.initial_state,
        "accept_states": sorted(machine.accept_states, key=str),
        "reject_states": sorted(machine.reject_states, key=str),
        "transitions": trans,
    }


def machine_from_dict(data, check=True):
    required = ["states", "input_alphabet", "stack_alphabet", "bottom_marker",
                "initial_state", "accept_states", "reject_states", "transitions"]
    missing = [k for k in required if k not in data]
    if missing:
        raise InvalidMachine([Violation("format", f"missing field {k!r}") for k in missing])
    transitions = {}
    problems = []
    for i, t in enumerate(data["transitions"]):
        try:
            key = (t["from"], t["read"], t["top"])
            val = (t["to"], t.get("push", ""))
        except (KeyError, TypeError):
            problems.append(Violation("format", f"transition #{i} is malformed"))
            continue
        if key in transitions:
            problems.append(Violation("determinism", f"transition δ{key} defined twice"))
        transitions[key] = val
    if problems:
        raise InvalidMachine(problems)
    m = Dpda(data["states"], data["input_alphabet"], data["stack_alphabet"], transitions,
             data["initial_state"], data["bottom_marker"], data["accept_states"],
             data["reject_states"], push_size=data.get("push_size"), name=data.get("name"))
    if check:
        ensure_valid(m)
    return m


def load_machine(path, check=True):
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidMachine([Violation("format", f"not JSON: {exc}")]) from exc
    if not isinstance(data, dict):
        raise InvalidMachine([Violation("format", "top level must be an object")])
    return machine_from_dict(data, check=check)


def dump_machine(machine, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(machine_to_dict(machine), fh, ensure_ascii=False, indent=1)
