"""Ideal-shape validation and the e-enhancement transform."""

from dataclasses import dataclass, field

from .automaton import EPS, LEFT, RIGHT, Dpda, run, run_tape
from .errors import PreconditionError

PLACEHOLDER = "·"

STATIONARY = "stationary"
PUSH_ONE = "push-one"
POP_READ = "pop-on-read"
POP_EPS = "pop-on-ε"


@dataclass
class IdealShapeReport:
    kinds: dict = field(default_factory=dict)        # transition key -> move kind
    violations: list = field(default_factory=list)   # (key, reason)
    sequencing: list = field(default_factory=list)   # (key, reason)

    @property
    def ok(self):
        return not self.violations and not self.sequencing


def classify_move(read, top, push):
    if read == EPS:
        return POP_EPS if push == "" else None
    if push == top:
        return STATIONARY
    if push == "":
        return POP_READ
    if len(push) == 2 and push[1] == top:
        return PUSH_ONE
    return None


def check_ideal_shape(machine):
    rep = IdealShapeReport()
    for key, (q, push) in machine.transitions.items():
        _, read, top = key
        kind = classify_move(read, top, push)
        if kind is None:
            if read == EPS:
                reason = "ε-move that is not a pop"
            elif len(push) > 2 or (len(push) == 2 and push[1] != top):
                reason = f"push {push!r} over {top!r} is not a single push"
            else:
                reason = f"replaces {top!r} by {push!r}"
            rep.violations.append((key, reason))
        else:
            rep.kinds[key] = kind
    eps_states = {p for (p, a, _) in machine.transitions if a == EPS}
    if machine.initial_state in eps_states:
        rep.sequencing.append(((machine.initial_state, EPS, None), "initial state starts with an ε-pop"))
    for key, (q, push) in machine.transitions.items():
        if q in eps_states and rep.kinds.get(key) not in (POP_READ, POP_EPS):
            rep.sequencing.append((key, f"enters ε-pop state {q} without popping"))
    return rep


@dataclass(frozen=True)
class EnhancedString:
    symbols: str       # cells between ¢ and $, with placeholders
    tail: int = 0      # placeholders for e-moves made after reading $

    @property
    def plain(self):
        return self.symbols.replace(PLACEHOLDER, "")

    @property
    def plain_length(self):
        return len(self.symbols) - self.symbols.count(PLACEHOLDER)

    @property
    def enhanced_length(self):
        return len(self.symbols)

    def tape(self):
        return LEFT + self.symbols + RIGHT + PLACEHOLDER * self.tail

    def __str__(self):
        return self.symbols + (f" [+{self.tail}·]" if self.tail else "")


def strip(s):
    return s.replace(PLACEHOLDER, "")


def induce(machine, word, step_budget=None):
    """The e-enhanced image of word: one placeholder per e-move of the machine."""
    if PLACEHOLDER in word:
        raise PreconditionError("input already contains placeholders")
    out = run(machine, word, step_budget, trace=True)
    cells = []
    tail = 0
    n = len(word)
    for mv in out.trace:
        if mv.read == EPS:
            if mv.pos == 0:
                raise PreconditionError("ε-move before the left endmarker")
            if mv.pos > n + 1:
                tail += 1
            else:
                cells.append(PLACEHOLDER)
        elif 1 <= mv.pos <= n:
            cells.append(mv.read)
    # the machine may halt before reading everything; the rest stays plain
    read_plain = min(max(out.consumed - 1, 0), n)
    cells.append(word[read_plain:])
    return EnhancedString("".join(cells), tail)


def epsilon_enhance(machine, reject_name="rejε"):
    """Real-time machine reading a placeholder wherever the original e-moves."""
    if PLACEHOLDER in machine.input_alphabet:
        raise PreconditionError("placeholder already in the input alphabet")
    while reject_name in machine.states:
        reject_name += "'"
    sigma = list(machine.input_alphabet) + [LEFT, RIGHT]
    delta = {}
    for (p, a, top), (q, push) in machine.transitions.items():
        if a == EPS:
            delta[(p, PLACEHOLDER, top)] = (q, push)
            for s in sigma:
                delta[(p, s, top)] = (reject_name, top)
        else:
            delta[(p, a, top)] = (q, push)
            delta[(p, PLACEHOLDER, top)] = (reject_name, top)
    return Dpda(machine.states | {reject_name}, machine.input_alphabet | {PLACEHOLDER},
                machine.stack_alphabet, delta, machine.initial_state, machine.bottom_marker,
                machine.accept_states, machine.reject_states | {reject_name},
                machine.push_size, name=f"{machine.name}^ε" if machine.name else None)


def run_enhanced(enhanced_machine, x_hat, step_budget=None, trace=False):
    """Run an e-enhanced machine over the tape of an EnhancedString."""
    return run_tape(enhanced_machine, x_hat.tape(), step_budget, trace)
