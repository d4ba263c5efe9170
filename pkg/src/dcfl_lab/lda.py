"""Deterministic d-limited automata: two-way rewriting machines whose work
alphabet is split into layers so a cell can only be rewritten on its first
d visits."""

import json
from dataclasses import dataclass, field

from .automaton import LEFT, RIGHT, ValidationReport, Violation, env_budget
from .errors import BudgetExhausted, HeadOutOfTape, InvalidMachine, StuckMachine

HARD_CAP = 5_000_000


class Lda:
    def __init__(self, states, layers, transitions, initial_state, accept_states,
                 reject_states, name=None):
        self.states = frozenset(states)
        self.layers = [frozenset(layer) for layer in layers]
        self.transitions = dict(transitions)   # (state, symbol) -> (state, symbol, dir)
        self.initial_state = initial_state
        self.accept_states = frozenset(accept_states)
        self.reject_states = frozenset(reject_states)
        self.name = name

    @property
    def d(self):
        return len(self.layers) - 1

    @property
    def input_alphabet(self):
        return self.layers[0]

    @property
    def halting_states(self):
        return self.accept_states | self.reject_states

    def layer_of(self, sym):
        for i, layer in enumerate(self.layers):
            if sym in layer:
                return i
        return None

    def __repr__(self):
        return f"<{self.name or 'Lda'}: d={self.d}, {len(self.states)} states>"


def target_layer(i, direction, d):
    """Layer a symbol of layer i must be rewritten into when the head moves in direction.

    Even i: i + 2^((1-l)/2); odd i: i + 2^((1+l)/2); capped at d.
    """
    if i == d:
        return d
    if i % 2 == 0:
        step = 1 if direction == 1 else 2
    else:
        step = 2 if direction == 1 else 1
    return min(i + step, d)


def validate_lda(m):
    rep = ValidationReport()
    d = m.d
    if d < 1:
        rep.add("layers", "need at least one work layer")
    seen = {}
    for i, layer in enumerate(m.layers):
        for s in layer:
            if not isinstance(s, str) or len(s) != 1:
                rep.add("alphabet", f"symbol {s!r} is not a single character")
            if s in seen:
                rep.add("layers", f"symbol {s!r} in layers {seen[s]} and {i}")
            seen[s] = i
    for s in (LEFT, RIGHT):
        if s not in m.layers[-1]:
            rep.add("layers", f"endmarker {s} not in the top layer")
    if m.initial_state not in m.states:
        rep.add("states", "unknown initial state")
    if m.accept_states & m.reject_states:
        rep.add("halting", "a state is both accepting and rejecting")
    for (p, s), (q, t, direction) in m.transitions.items():
        where = f"δ({p},{s})"
        if p in m.halting_states:
            rep.add("halting", f"{where} leaves a halting state")
        if p not in m.states or q not in m.states:
            rep.add("states", f"{where} uses an unknown state")
        if direction not in (-1, 1):
            rep.add("direction", f"{where} moves by {direction}")
            continue
        i, j = m.layer_of(s), m.layer_of(t)
        if i is None or j is None:
            rep.add("alphabet", f"{where} uses a symbol outside every layer")
            continue
        if i == d:
            if s != t:
                rep.add("layer", f"{where} rewrites top-layer symbol {s} into {t}")
        elif j != target_layer(i, direction, d):
            rep.add("layer", f"{where} writes layer {j}, expected {target_layer(i, direction, d)}")
        if s == LEFT and direction == -1:
            rep.add("direction", f"{where} moves left off the left endmarker")
        if s == RIGHT and direction == 1:
            rep.add("direction", f"{where} moves right off the right endmarker")
    symbols = set().union(*m.layers)
    for p in m.states - m.halting_states:
        for s in symbols:
            if (p, s) not in m.transitions:
                rep.add("totality", f"δ({p},{s}) undefined")
    return rep


@dataclass(frozen=True)
class LdaStep:
    state: str
    pos: int
    read: str
    write: str
    direction: int
    to: str


@dataclass
class LdaOutcome:
    accepted: bool
    steps: int
    final_state: str
    trace: list = field(default_factory=list)
    tapes: list = None

    @property
    def verdict(self):
        return "accept" if self.accepted else "reject"


def default_lda_budget(n):
    env = env_budget()
    if env is not None:
        return env
    return min(HARD_CAP, 50 * (n + 2) ** 2)


def run_lda(m, word, step_budget=None, snapshots=False):
    tape = [LEFT] + list(word) + [RIGHT]
    if step_budget is None:
        step_budget = default_lda_budget(len(word))
    state = m.initial_state
    pos = 0
    trace = []
    tapes = [] if snapshots else None
    steps = 0
    while state not in m.halting_states:
        if not 0 <= pos < len(tape):
            raise HeadOutOfTape(f"head at {pos} outside the tape")
        read = tape[pos]
        t = m.transitions.get((state, read))
        if t is None:
            raise StuckMachine(f"no move for ({state},{read})")
        if steps >= step_budget:
            raise BudgetExhausted(step_budget, steps)
        q, write, direction = t
        trace.append(LdaStep(state, pos, read, write, direction, q))
        tape[pos] = write
        if snapshots:
            tapes.append("".join(tape))
        state = q
        steps += 1
        if state in m.halting_states:
            break
        pos += direction
    return LdaOutcome(state in m.accept_states, steps, state, trace, tapes)


def visit_discipline_check(trace, d, n=None):
    """No cell strictly between the endmarkers is rewritten after its d-th visit.

    A step that leaves a cell in the direction opposite to the one the head
    arrived with is a turn and counts as two visits.
    """
    visits = {}
    arrival = 1
    for step in trace:
        p = step.pos
        inner = p > 0 and (n is None or p <= n)
        before = visits.get(p, 0)
        weight = 2 if step.direction != arrival else 1
        if inner and step.write != step.read and before >= d:
            return False
        visits[p] = before + weight
        arrival = step.direction
    return True


# ---- the 2-limited machine for a^n b^n ----

def anbn_lda():
    """Marks a's on the first pass, matches each b with the nearest unmatched a."""
    layers = [{"a", "b"}, {"A"}, {"X", LEFT, RIGHT}]
    acc, rej = "acc", "rej"
    delta = {
        ("q0", LEFT): ("qa", LEFT, 1),
        ("qa", "a"): ("qa", "A", 1),
        ("qa", "b"): ("left", "X", -1),
        ("qa", RIGHT): ("check", RIGHT, -1),
        ("left", "X"): ("left", "X", -1),
        ("left", "A"): ("right", "X", 1),
        ("left", LEFT): (rej, LEFT, 1),
        ("right", "X"): ("right", "X", 1),
        ("right", "b"): ("left", "X", -1),
        ("right", "a"): (rej, "A", 1),
        ("right", RIGHT): ("check", RIGHT, -1),
        ("check", "X"): ("check", "X", -1),
        ("check", "A"): (rej, "X", -1),
        ("check", LEFT): (acc, LEFT, 1),
    }
    m = Lda({"q0", "qa", "left", "right", "check", acc, rej}, layers, delta, "q0", {acc}, {rej},
            name="anbn-2lda")
    complete_with_reject(m, rej)
    return m


def complete_with_reject(m, rej):
    """Send every undefined (state, symbol) to rej, obeying the layer rules."""
    d = m.d
    symbols = sorted(set().union(*m.layers))
    for p in m.states - m.halting_states:
        for s in symbols:
            if (p, s) in m.transitions:
                continue
            direction = -1 if s == RIGHT else 1
            i = m.layer_of(s)
            if i == d:
                t = s
            else:
                t = sorted(m.layers[target_layer(i, direction, d)] - {LEFT, RIGHT})[0]
            m.transitions[(p, s)] = (rej, t, direction)
    return m


# ---- definition files ----

def lda_to_dict(m):
    return {
        "name": m.name,
        "states": sorted(m.states),
        "layers": [sorted(layer) for layer in m.layers],
        "initial_state": m.initial_state,
        "accept_states": sorted(m.accept_states),
        "reject_states": sorted(m.reject_states),
        "transitions": [{"from": p, "read": s, "to": q, "write": t, "dir": direction}
                        for (p, s), (q, t, direction) in sorted(m.transitions.items())],
    }


def lda_from_dict(data, check=True):
    try:
        delta = {(t["from"], t["read"]): (t["to"], t["write"], int(t["dir"]))
                 for t in data["transitions"]}
        m = Lda(data["states"], data["layers"], delta, data["initial_state"],
                data["accept_states"], data["reject_states"], name=data.get("name"))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidMachine([Violation("format", f"malformed lda definition: {exc}")]) from exc
    if check:
        rep = validate_lda(m)
        if not rep.ok:
            raise InvalidMachine(rep.violations)
    return m


def load_lda(path, check=True):
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidMachine([Violation("format", f"not JSON: {exc}")]) from exc
    return lda_from_dict(data, check)


def dump_lda(m, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(lda_to_dict(m), fh, ensure_ascii=False, indent=1)
