"""Stack histories of real-time runs and their boundary geometry.

Boundary t sits after the first t tape cells; boundary 0 is before the left
endmarker.  Heights are compared in exact integer arithmetic throughout.
"""

from dataclasses import dataclass, field

from .automaton import EPS, default_budget
from .errors import BudgetExhausted, NoTurningPoint, NotRealTime, StuckMachine
from .normal_forms import EnhancedString


@dataclass
class StackHistory:
    states: list          # inner state at each boundary
    stacks: list          # stack string (top first) at each boundary
    tape: str
    input: EnhancedString = None
    accepted: bool = None

    @property
    def heights(self):
        return [len(s) for s in self.stacks]

    @property
    def pairs(self):
        return list(zip(self.states, self.stacks))

    @property
    def last(self):
        return len(self.states) - 1

    def __len__(self):
        return len(self.states)


def record_history(machine, enhanced_input, step_budget=None):
    """Run a real-time machine cell by cell, keeping the state-stack pair at every boundary."""
    if isinstance(enhanced_input, EnhancedString):
        tape = enhanced_input.tape()
    else:
        tape = enhanced_input
        enhanced_input = None
    if step_budget is None:
        step_budget = default_budget(machine, len(tape))
    delta = machine.compiled()
    halting = machine.halting_states
    state = machine.initial_state
    stack = [machine.bottom_marker]
    states = [state]
    stacks = [machine.bottom_marker]
    pos = 0
    while state not in halting:
        top = stack[-1]
        if (state, EPS, top) in delta:
            raise NotRealTime(f"ε-move from ({state},{top}) at boundary {pos}")
        if pos >= len(tape):
            raise StuckMachine(f"state {state} wants input past the end of the tape")
        t = delta.get((state, tape[pos], top))
        if t is None:
            raise StuckMachine(f"no move for ({state},{tape[pos]},{top})")
        if pos >= step_budget:
            raise BudgetExhausted(step_budget, pos)
        state, rpush = t
        stack.pop()
        stack.extend(rpush)
        pos += 1
        states.append(state)
        stacks.append("".join(reversed(stack)))
    return StackHistory(states, stacks, tape, enhanced_input, state in machine.accept_states)


def _heights(h):
    return h.heights if isinstance(h, StackHistory) else list(h)


# ---- blocks ----

@dataclass(frozen=True)
class BoundaryBlock:
    t1: int
    t2: int

    def __post_init__(self):
        if not 0 <= self.t1 < self.t2:
            raise ValueError(f"bad boundary block [{self.t1},{self.t2}]")


@dataclass(frozen=True)
class BlockShape:
    flat: bool
    convex: bool
    pseudo_convex: bool


def is_flat(h, t1, t2):
    return all(h[s] == h[t1] for s in range(t1, t2 + 1))


def is_convex(h, t1, t2):
    # rises (never falls) up to some s, then never rises
    s = t1
    while s < t2 and h[s + 1] >= h[s]:
        s += 1
    return all(h[r + 1] <= h[r] for r in range(s, t2))


def is_pseudo_convex(h, t1, t2):
    span = t2 - t1
    if span == 0:
        return True
    h1, h2 = h[t1], h[t2]
    return all(h[s] * span >= h1 * span + (h2 - h1) * (s - t1) for s in range(t1, t2 + 1))


def classify_block(history, block):
    h = _heights(history)
    t1, t2 = (block.t1, block.t2) if isinstance(block, BoundaryBlock) else block
    return BlockShape(is_flat(h, t1, t2), is_convex(h, t1, t2), is_pseudo_convex(h, t1, t2))


# ---- features ----

@dataclass
class Hill:
    t1: int
    t2: int
    top: tuple          # ("peak", t) or ("plateau", t, t')
    bottom_height: int
    height: int


@dataclass
class FeatureSet:
    peaks: list = field(default_factory=list)
    pits: list = field(default_factory=list)
    plateaus: list = field(default_factory=list)
    basins: list = field(default_factory=list)
    elevated_plateaus: list = field(default_factory=list)
    hills: list = field(default_factory=list)

    @property
    def turning_points(self):
        return sorted(set(self.peaks) | {b for _, b in self.elevated_plateaus})


def maximal_plateaus(h):
    out = []
    t = 0
    while t < len(h):
        e = t
        while e + 1 < len(h) and h[e + 1] == h[t]:
            e += 1
        if e > t:
            out.append((t, e))
        t = e + 1
    return out


def _fringes(h, t, e):
    return [h[f] for f in (t - 1, e + 1) if 0 <= f < len(h)]


def find_features(history, virtual_pit=True):
    h = _heights(history)
    n = len(h)
    fs = FeatureSet()
    for t in range(1, n - 1):
        if h[t - 1] < h[t] > h[t + 1]:
            fs.peaks.append(t)
        elif h[t - 1] > h[t] < h[t + 1]:
            fs.pits.append(t)
    fs.plateaus = maximal_plateaus(h)
    for t, e in fs.plateaus:
        fr = _fringes(h, t, e)
        if not fr:
            continue
        if all(f > h[t] for f in fr):
            fs.basins.append((t, e))
        elif all(f < h[t] for f in fr):
            fs.elevated_plateaus.append((t, e))
    fs.hills = _find_hills(h, fs, virtual_pit)
    return fs


def _find_hills(h, fs, virtual_pit):
    pits = set(fs.pits)
    if virtual_pit:
        pits.add(0)
    basin_left = {b for b, _ in fs.basins}
    hills = []
    n = len(h)
    for t1 in range(n):
        for t2 in range(t1 + 1, n):
            if h[t1] != h[t2]:
                continue
            tops = [("peak", p) for p in fs.peaks if t1 < p < t2]
            tops += [("plateau", a, b) for a, b in fs.elevated_plateaus if t1 <= a and b <= t2]
            if len(tops) != 1:
                continue
            if any(t1 < p < t2 for p in fs.pits):
                continue
            if any(a < t2 and b > t1 for a, b in fs.basins):
                continue
            ends_ok = (t1 in pits or t2 in pits or t1 in basin_left or t2 in basin_left)
            if not ends_ok:
                continue
            seg = h[t1:t2 + 1]
            hills.append(Hill(t1, t2, tops[0], min(seg), max(seg) - min(seg)))
    return hills


# ---- slopes and turns ----

def on_downward_slope(h, f):
    """True iff boundary f lies in some non-flat block where the height never rises."""
    a = f
    while a > 0 and h[a - 1] >= h[a]:
        a -= 1
    b = f
    while b + 1 < len(h) and h[b + 1] <= h[b]:
        b += 1
    return h[a] > h[b]


def on_upward_slope(h, f):
    a = f
    while a > 0 and h[a - 1] <= h[a]:
        a -= 1
    b = f
    while b + 1 < len(h) and h[b + 1] >= h[b]:
        b += 1
    return h[a] < h[b]


def in_basin(h, f, basins=None):
    if basins is None:
        basins = find_features(h).basins
    return any(a <= f <= b for a, b in basins)


@dataclass
class Turn:
    t1: int
    t2: int
    turning_point: int
    height: int
    bottom_height: int
    gain: int


@dataclass
class TurnPartition:
    turns: list

    @property
    def true_gain(self):
        return sum(t.gain for t in self.turns)


def turning_points(h, t1, t2, features=None):
    fs = features or find_features(h)
    return [p for p in fs.turning_points if t1 <= p <= t2]


def turn_partition(history, block=None):
    h = _heights(history)
    if block is None:
        t1, t2 = 0, len(h) - 1
    else:
        t1, t2 = (block.t1, block.t2) if isinstance(block, BoundaryBlock) else block
    tps = turning_points(h, t1, t2)
    if not tps:
        raise NoTurningPoint(f"no turning point in [{t1},{t2}]")
    cuts = [t1]
    for a, b in zip(tps, tps[1:]):
        low = min(h[a:b + 1])
        # greedy maximal turns: cut at the rightmost lowest boundary of the valley
        cuts.append(max(s for s in range(a, b + 1) if h[s] == low))
    cuts.append(t2)
    turns = []
    for (s, e), tp in zip(zip(cuts, cuts[1:]), tps):
        seg = h[s:e + 1]
        turns.append(Turn(s, e, tp, max(seg) - min(seg), min(seg), h[s] - h[e]))
    return TurnPartition(turns)


def check_turn(history, t1, t2, features=None):
    """Independent check of the turn definition; returns a list of problems."""
    h = _heights(history)
    fs = features or find_features(h)
    problems = []
    tps = [p for p in fs.turning_points if t1 <= p <= t2]
    if len(tps) != 1:
        problems.append(f"[{t1},{t2}] has {len(tps)} turning points")
    if t1 - 1 >= 0 and not on_downward_slope(h, t1 - 1):
        problems.append(f"left fringe {t1 - 1} not on a downward slope")
    if t2 + 1 < len(h) and not (on_upward_slope(h, t2 + 1) or in_basin(h, t2 + 1, fs.basins)):
        problems.append(f"right fringe {t2 + 1} neither on an upward slope nor in a basin")
    return problems


def check_partition(history, partition, block=None):
    h = _heights(history)
    fs = find_features(h)
    t1, t2 = (0, len(h) - 1) if block is None else block
    problems = []
    turns = partition.turns
    if turns[0].t1 != t1 or turns[-1].t2 != t2:
        problems.append("partition does not cover the range")
    for a, b in zip(turns, turns[1:]):
        if a.t2 != b.t1:
            problems.append(f"turns [{a.t1},{a.t2}] and [{b.t1},{b.t2}] do not meet")
    for t in turns:
        problems.extend(check_turn(h, t.t1, t.t2, fs))
    if partition.true_gain != h[t1] - h[t2]:
        problems.append("true gain does not telescope")
    return problems


def height_profile(history):
    """One row per boundary: index, height, state, stack."""
    rows = []
    for t, (q, st) in enumerate(history.pairs):
        rows.append(f"{t:4d} {len(st):3d} {'#' * len(st):<12} {q} {st}")
    return "\n".join(rows)
