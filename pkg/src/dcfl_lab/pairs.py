"""Mutually correlated boundaries, good pairs, pump tests and the
stack-operational view of iterative pairs."""

from collections import Counter
from dataclasses import dataclass

from .automaton import Dpda
from .errors import CutMisaligned, PreconditionError
from .history import is_pseudo_convex, record_history
from .languages import DpdaLeaf, LanguageSpec, member
from .normal_forms import PLACEHOLDER, EnhancedString, epsilon_enhance, induce, strip

EMPTY_TOKEN = "ε"


@dataclass(frozen=True)
class Factorization5:
    u: str
    x: str
    v: str
    y: str
    z: str

    @property
    def word(self):
        return self.u + self.x + self.v + self.y + self.z

    def parts(self):
        return (self.u, self.x, self.v, self.y, self.z)

    def pumped(self, i, j=None):
        j = i if j is None else j
        return self.u + self.x * i + self.v + self.y * j + self.z

    def cuts(self):
        """Plain positions of the (u,x), (x,v), (v,y) and (y,z) borders."""
        a = len(self.u)
        b = a + len(self.x)
        c = b + len(self.v)
        d = c + len(self.y)
        return a, b, c, d

    def __str__(self):
        return ",".join(p if p else EMPTY_TOKEN for p in self.parts())

    @classmethod
    def parse(cls, text):
        parts = text.split(",")
        if len(parts) != 5:
            raise ValueError(f"a factorization needs five comma-separated parts, got {len(parts)}")
        return cls(*("" if p == EMPTY_TOKEN else p for p in parts))

    @classmethod
    def from_cuts(cls, w, a, b, c, d):
        if not 0 <= a <= b <= c <= d <= len(w):
            raise ValueError("cuts out of order")
        return cls(w[:a], w[a:b], w[b:c], w[c:d], w[d:])


def as_spec(lang):
    return DpdaLeaf(lang) if isinstance(lang, Dpda) else lang


# ---- correlation on a history ----

def mutually_correlated(history, t1, t2):
    if not t1 < t2:
        raise PreconditionError("need t1 < t2")
    return (history.stacks[t1] == history.stacks[t2]
            and is_pseudo_convex(history.heights, t1, t2))


def _blocks(b1, b2):
    t1, t2 = b1
    t3, t4 = b2
    if not (t1 < t2 <= t3 < t4):
        raise PreconditionError(f"blocks [{t1},{t2}] and [{t3},{t4}] are not ordered")
    return t1, t2, t3, t4


def blocks_mutually_correlated(history, b1, b2):
    t1, t2, t3, t4 = _blocks(b1, b2)
    st = history.stacks
    h = history.heights
    if st[t1] != st[t4] or st[t2] != st[t3] or not st[t2].endswith(st[t1]):
        return False
    return (is_pseudo_convex(h, t1, t2) and is_pseudo_convex(h, t2, t3)
            and is_pseudo_convex(h, t3, t4))


def is_good_pair(history, b1, b2):
    try:
        t1, t2, t3, t4 = _blocks(b1, b2)
    except PreconditionError:
        return False
    q = history.states
    return q[t1] == q[t2] and q[t3] == q[t4] and blocks_mutually_correlated(history, b1, b2)


def enumerate_good_pairs(history, c=8, lo=1, hi=None):
    """All good pairs ([t1,t2],[t3,t4]) with both blocks of size at most c.

    Boundaries are restricted to [lo, hi]; by default the region between the
    endmarkers, so that every block maps back to input cells.
    """
    st = history.stacks
    q = history.states
    h = history.heights
    if hi is None:
        hi = len(history.input.symbols) + 1 if history.input is not None else history.last
    hi = min(hi, history.last)
    by_stack = {}
    for t in range(lo, hi + 1):
        by_stack.setdefault(st[t], []).append(t)
    out = []
    for t1 in range(lo, hi + 1):
        gamma = st[t1]
        for t2 in range(t1 + 1, min(t1 + c, hi) + 1):
            if q[t2] != q[t1] or not st[t2].endswith(gamma) or not is_pseudo_convex(h, t1, t2):
                continue
            for t3 in by_stack[st[t2]]:
                if t3 < t2 or not is_pseudo_convex(h, t2, t3):
                    continue
                for t4 in range(t3 + 1, min(t3 + c, hi) + 1):
                    if st[t4] == gamma and q[t4] == q[t3] and is_pseudo_convex(h, t3, t4):
                        out.append(((t1, t2), (t3, t4)))
    return out


def single_block_pairs(history, c=8, lo=1, hi=None):
    """Mutually correlated boundaries t1 < t2 (t2 - t1 <= c) with equal states."""
    if hi is None:
        hi = len(history.input.symbols) + 1 if history.input is not None else history.last
    hi = min(hi, history.last)
    out = []
    for t1 in range(lo, hi + 1):
        for t2 in range(t1 + 1, min(t1 + c, hi) + 1):
            if history.states[t1] == history.states[t2] and mutually_correlated(history, t1, t2):
                out.append((t1, t2))
    return out


# ---- boundary <-> plain cut mapping ----

def boundary_to_cut(x_hat, t):
    """Plain cut reached at boundary t (t = 1 is just after the left endmarker)."""
    if not 1 <= t <= len(x_hat.symbols) + 1:
        raise CutMisaligned(f"boundary {t} is outside the input region")
    return len(strip(x_hat.symbols[:t - 1]))


def cut_to_boundary(x_hat, cut):
    """Boundary of a plain cut; placeholders go with the plain symbol before them."""
    syms = x_hat.symbols
    seen = 0
    i = 0
    while seen < cut:
        if i >= len(syms):
            raise CutMisaligned(f"cut {cut} is past the end of the input")
        if syms[i] != PLACEHOLDER:
            seen += 1
        i += 1
    while i < len(syms) and syms[i] == PLACEHOLDER:
        i += 1
    return i + 1


def enhanced_factorization(x_hat, b1, b2):
    (t1, t2), (t3, t4) = b1, b2
    s = x_hat.symbols
    return tuple(s[a - 1:b - 1] for a, b in ((1, t1), (t1, t2), (t2, t3), (t3, t4), (t4, len(s) + 1)))


def induced_factorization(x_hat, b1, b2, word=None):
    """Plain factorization cut at the four boundaries; unread input joins z."""
    parts = [strip(p) for p in enhanced_factorization(x_hat, b1, b2)]
    f = Factorization5(*parts)
    if word is not None and f.word != word:
        f = Factorization5(f.u, f.x, f.v, f.y, f.z + word[len(f.word):])
    return f


# ---- pumping ----

@dataclass
class PumpResult:
    passes: bool
    first_failure: int = None
    checked: int = 0


def pump_test(lang, f, i_max, step_budget=None, expect=True):
    """u x^i v y^i z in L for i = 0..i_max (or all outside L when expect is False)."""
    if len(f.x) + len(f.y) < 1:
        raise PreconditionError("|xy| must be at least 1")
    spec = as_spec(lang)
    for i in range(i_max + 1):
        if member(spec, f.pumped(i), step_budget) != expect:
            return PumpResult(False, i, i + 1)
    return PumpResult(True, None, i_max + 1)


YES, NO, INCONCLUSIVE = "yes", "no", "inconclusive"


def nondegenerate_bounded(lang, f, i_max, j_max, step_budget=None):
    """Bounded evidence for nondegeneracy on the (i, j) grid.

    A row (fixed i) counts as saturated when its two last cells are both in
    the language, i.e. it still seems to grow at the bound; same for columns.
    Rows all unsaturated, or columns all unsaturated, gives yes.
    """
    if len(f.x) + len(f.y) < 1:
        raise PreconditionError("|xy| must be at least 1")
    if i_max < 1 or j_max < 1:
        return INCONCLUSIVE
    spec = as_spec(lang)
    grid = [[member(spec, f.pumped(i, j), step_budget) for j in range(j_max + 1)]
            for i in range(i_max + 1)]
    row_sat = [grid[i][j_max] and grid[i][j_max - 1] for i in range(i_max + 1)]
    col_sat = [grid[i_max][j] and grid[i_max - 1][j] for j in range(j_max + 1)]
    if not any(row_sat) or not any(col_sat):
        return YES
    return NO


# ---- stack-operational pairs ----

def is_stack_operational(machine, f, enhanced_machine=None, history=None, step_budget=None):
    """Are the four cut boundaries of f a good pair on the machine's run?"""
    if not f.x or not f.y:
        return False
    x_hat = induce(machine, f.word, step_budget)
    if history is None:
        n = enhanced_machine or epsilon_enhance(machine)
        history = record_history(n, x_hat, step_budget)
    a, b, c, d = (cut_to_boundary(x_hat, k) for k in f.cuts())
    if max(a, b, c, d) > history.last:
        raise CutMisaligned("the run halts before the last cut")
    return is_good_pair(history, (a, b), (c, d))


def is_deduced(base, cand, bound=4):
    """Is cand deduced from base for some n0, p, q <= bound (n0 >= 1)?"""
    u, x, v, y, z = base.parts()
    target = cand.word
    if not x and not y:
        return False
    for n0 in range(1, bound + 1):
        if u + x * n0 + v + y * n0 + z != target:
            continue
        for i in range(len(x) + 1):
            x1, x2 = x[:i], x[i:]
            for p in range(bound + 1):
                if cand.x != (x2 + x1) * p:
                    continue
                for j in range(len(y) + 1):
                    y1, y2 = y[:j], y[j:]
                    for q in range(bound + 1):
                        if cand.y != (y2 + y1) * q:
                            continue
                        if _deduced_parts(base, cand, x1, x2, y1, y2, n0):
                            return True
    return False


def _in_power_form(s, head, rep, tail, limit):
    """s in head rep* tail with at most limit copies of rep."""
    if not (s.startswith(head) and s.endswith(tail) and len(s) >= len(head) + len(tail)):
        return False
    mid = s[len(head):len(s) - len(tail)]
    if not rep:
        return mid == ""
    return len(mid) % len(rep) == 0 and mid == rep * (len(mid) // len(rep)) and len(mid) // len(rep) <= limit


def _deduced_parts(base, cand, x1, x2, y1, y2, n0):
    u, x, v, y, z = base.parts()
    lim = n0 + 1
    if not _in_power_form(cand.u, u, x, x1, lim):
        return False
    if not _in_power_form(cand.z, y2, y, z, lim):
        return False
    # v' in x2 x* v y* y1
    s = cand.v
    if not (s.startswith(x2) and s.endswith(y1) and len(s) >= len(x2) + len(y1)):
        return False
    mid = s[len(x2):len(s) - len(y1)]
    for a in range(lim + 1):
        pre = x * a
        if not mid.startswith(pre):
            break
        rest = mid[len(pre):]
        if _in_power_form(rest, v, y, "", lim):
            return True
    return False


# ---- pigeonhole over matched state-stack pairs ----

def repeated_state(history, boundaries):
    """First (i, j), i < j, with equal states at the listed boundaries."""
    seen = {}
    for j, t in enumerate(boundaries):
        q = history.states[t]
        if q in seen:
            return seen[q], j
        seen[q] = j
    return None


def common_state_subset(history, boundaries):
    """Largest set of indices sharing one inner state."""
    counts = Counter(history.states[t] for t in boundaries)
    if not counts:
        return []
    q, _ = counts.most_common(1)[0]
    return [i for i, t in enumerate(boundaries) if history.states[t] == q]


def matched_descent(history, t_up, t_down):
    """Boundaries pairing each rise of [t_up] with its matching fall after t_down.

    For every height level above the stack at t_up reached at some later
    boundary r <= t_down, the first boundary at that height is paired with
    the first boundary after t_down that returns to the same stack.
    """
    st = history.stacks
    base = len(st[t_up])
    ups = []
    level = base
    for t in range(t_up, t_down + 1):
        if len(st[t]) > level:
            level = len(st[t])
            ups.append(t)
    downs = []
    for t in ups:
        target = st[t]
        r = next((r for r in range(t_down, len(st)) if st[r] == target), None)
        if r is None:
            break
        downs.append(r)
    return ups[:len(downs)], downs


# ---- report ----

@dataclass
class IterativePairReport:
    factorization: Factorization5
    pumped_up_to: int = -1
    good_pair: tuple = None
    nondegenerate_bounded: str = INCONCLUSIVE
    stack_operational: bool = None
    machine: str = None

    def to_dict(self):
        f = self.factorization
        return {"u": f.u, "x": f.x, "v": f.v, "y": f.y, "z": f.z,
                "pumped_up_to": self.pumped_up_to,
                "good_pair": list(map(list, self.good_pair)) if self.good_pair else None,
                "nondegenerate_bounded": self.nondegenerate_bounded,
                "stack_operational": self.stack_operational,
                "machine": self.machine}


def certify(lang, f, i_max=5, j_max=5, machine=None, step_budget=None):
    res = pump_test(lang, f, i_max, step_budget)
    rep = IterativePairReport(f, i_max if res.passes else (res.first_failure - 1))
    rep.nondegenerate_bounded = nondegenerate_bounded(lang, f, i_max, j_max, step_budget)
    if machine is not None:
        rep.machine = machine.name
        try:
            rep.stack_operational = is_stack_operational(machine, f, step_budget=step_budget)
            if rep.stack_operational:
                x_hat = induce(machine, f.word, step_budget)
                a, b, c, d = (cut_to_boundary(x_hat, k) for k in f.cuts())
                rep.good_pair = ((a, b), (c, d))
        except CutMisaligned:
            rep.stack_operational = False
    return rep


# ---- sweeps over all short inputs ----

def distinct_runs(machine, alphabet, max_len, step_budget=None):
    """Inputs up to max_len, skipping extensions of inputs on which the machine
    halts before reading the right endmarker (their runs are identical)."""
    from .automaton import run
    frontier = [""]
    alphabet = sorted(alphabet)
    while frontier:
        nxt = []
        for w in frontier:
            out = run(machine, w, step_budget, trace=False)
            yield w, out
            if len(w) < max_len and out.consumed >= len(w) + 2:
                nxt.extend(w + s for s in alphabet)
        frontier = nxt


@dataclass
class SweepReport:
    machine: str
    histories: int = 0
    good_pairs: int = 0
    factorizations: int = 0
    failures: list = None

    def __post_init__(self):
        if self.failures is None:
            self.failures = []


def iterative_pair_sweep(machine, max_len=8, c=8, i_max=5, on_history=None, step_budget=None):
    """Every good pair on every run pumps without changing membership."""
    n = epsilon_enhance(machine)
    rep = SweepReport(machine.name)
    cache = {}
    for w, out in distinct_runs(machine, machine.input_alphabet, max_len, step_budget):
        x_hat = induce(machine, w, step_budget)
        hist = record_history(n, x_hat, step_budget)
        rep.histories += 1
        if on_history is not None:
            on_history(w, hist)
        for b1, b2 in enumerate_good_pairs(hist, c):
            rep.good_pairs += 1
            f = induced_factorization(x_hat, b1, b2, w)
            if not f.x and not f.y:
                continue
            key = (f, out.accepted)
            if key not in cache:
                rep.factorizations += 1
                cache[key] = pump_test(machine, f, i_max, step_budget, expect=out.accepted)
            if not cache[key].passes:
                rep.failures.append((w, b1, b2, str(f), cache[key].first_failure))
    return rep
