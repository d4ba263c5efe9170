"""Condition checkers and searches for the two pumping lemmas of d-union
deterministic context-free languages, at desk-scale constants."""

from dataclasses import dataclass, field
from functools import lru_cache

from .automaton import Dpda
from .errors import PreconditionError
from .languages import DpdaLeaf, LanguageSpec, member
from .pairs import INCONCLUSIVE, YES, Factorization5

HOLDS = "holds"
FAILS = "fails-exhaustively"


def oracle(lang, step_budget=None):
    """A memoized membership function for a spec, machine, zoo entry or predicate."""
    if isinstance(lang, Dpda):
        lang = DpdaLeaf(lang)
    if isinstance(lang, LanguageSpec):
        spec = lang

        def fn(w):
            return member(spec, w, step_budget)
    elif hasattr(lang, "predicate"):
        fn = lang.predicate
    elif callable(lang):
        fn = lang
    else:
        raise TypeError(f"cannot decide membership with {lang!r}")
    return lru_cache(maxsize=None)(lambda w: bool(fn(w)))


def pumps(mem, f, i_max):
    return all(mem(f.pumped(i)) for i in range(i_max + 1))


@dataclass
class ConditionWitness:
    which: str
    factorizations: dict
    j1: int = None
    j2: int = None
    c: int = None
    i_max: int = None

    def to_dict(self):
        return {"which": self.which, "j1": self.j1, "j2": self.j2, "c": self.c,
                "i_max": self.i_max,
                "factorizations": {k: str(v) for k, v in self.factorizations.items()}}


@dataclass
class SearchResult:
    witnesses: list = field(default_factory=list)
    examined: int = 0

    @property
    def witness(self):
        return self.witnesses[0] if self.witnesses else None


def _check_pre(mem, xp, y, z, c):
    if len(xp) <= c:
        raise PreconditionError(f"|x'| = {len(xp)} must exceed c = {c}")
    for w in (xp + y, xp + z):
        if not mem(w):
            raise PreconditionError(f"{w!r} is not in the language")


# ---- first lemma ----

def condition1_space(length, c):
    """Closed-form number of factorizations x'=x1..x5 with |x2x4|>=1, |x2x3x4|<=c."""
    total = 0
    for s in range(1, min(c, length) + 1):
        total += ((s + 2) * (s + 1) // 2 - 1) * (length - s + 1)
    return total


def condition2_space(length, c):
    """Closed-form number of splits x'=x1x2x3 with |x2|>=1, |x2x3|<=c."""
    return sum(min(c, length) - l3 for l3 in range(min(c, length)))


def enumerate_condition1(length, c):
    """(start, |x2|, |x3|, |x4|) in position-major, size-minor order."""
    for a in range(length + 1):
        for l2 in range(c + 1):
            for l3 in range(c + 1 - l2):
                for l4 in range(c + 1 - l2 - l3):
                    if l2 + l4 == 0 or a + l2 + l3 + l4 > length:
                        continue
                    yield a, l2, l3, l4


def search_condition1(lang, xp, y, z, c, i_max, find_all=False, mem=None):
    mem = mem or oracle(lang)
    _check_pre(mem, xp, y, z, c)
    res = SearchResult()
    for a, l2, l3, l4 in enumerate_condition1(len(xp), c):
        res.examined += 1
        b = a + l2
        cc = b + l3
        d = cc + l4
        fy = Factorization5(xp[:a], xp[a:b], xp[b:cc], xp[cc:d], xp[d:] + y)
        fz = Factorization5(xp[:a], xp[a:b], xp[b:cc], xp[cc:d], xp[d:] + z)
        if pumps(mem, fy, i_max) and pumps(mem, fz, i_max):
            res.witnesses.append(ConditionWitness("L1C1", {"x'y": fy, "x'z": fz}, c=c, i_max=i_max))
            if not find_all:
                break
    return res


def _suffix_splits(mem, prefix, x2, x3, u, i_max):
    """Splits u = u1 u2 u3 with prefix x2^i x3 u1 u2^i u3 in L for all i <= i_max."""
    out = []
    for p in range(len(u) + 1):
        for q in range(p, len(u) + 1):
            f = Factorization5(prefix, x2, x3 + u[:p], u[p:q], u[q:])
            if pumps(mem, f, i_max):
                out.append(f)
    return out


def search_condition2(lang, xp, y, z, c, i_max, find_all=False, mem=None):
    mem = mem or oracle(lang)
    _check_pre(mem, xp, y, z, c)
    res = SearchResult()
    n = len(xp)
    for l3 in range(min(c, n)):
        for l2 in range(1, min(c, n) - l3 + 1):
            res.examined += 1
            a = n - l3 - l2
            x1, x2, x3 = xp[:a], xp[a:n - l3], xp[n - l3:]
            ys = _suffix_splits(mem, x1, x2, x3, y, i_max)
            if not ys:
                continue
            zs = _suffix_splits(mem, x1, x2, x3, z, i_max)
            if not zs:
                continue
            res.witnesses.append(ConditionWitness("L1C2", {"x'y": ys[0], "x'z": zs[0]},
                                                  c=c, i_max=i_max))
            if not find_all:
                return res
    return res


def lemma1_check_condition1(lang, xp, y, z, c, i_max):
    return search_condition1(lang, xp, y, z, c, i_max).witness


def lemma1_check_condition2(lang, xp, y, z, c, i_max):
    return search_condition2(lang, xp, y, z, c, i_max).witness


@dataclass
class Lemma1Instance:
    spec: object
    c: int
    x: str
    ys: list
    i_max: int = 3

    def strings(self):
        return [self.x + y for y in self.ys]


def _common_prefix(s, t):
    k = 0
    while k < min(len(s), len(t)) and s[k] == t[k]:
        k += 1
    return k


def lemma1_witness_search(inst, find_all=False):
    """Try every pair j1 < j2 and every split x' of the common prefix.

    Returns (j1, j2, witness) for the first success, or every success when
    find_all is set.  Indices are 1-based like the strings w_1..w_{d+1}.
    """
    mem = oracle(inst.spec)
    if len(inst.x) <= inst.c:
        raise PreconditionError(f"|x| must exceed c = {inst.c}")
    if any(len(y) < 1 for y in inst.ys):
        raise PreconditionError("every y^(i) must be nonempty")
    for w in inst.strings():
        if not mem(w):
            raise PreconditionError(f"{w!r} is not in the language")
    found = []
    words = inst.strings()
    for j1 in range(len(words)):
        for j2 in range(j1 + 1, len(words)):
            s, t = words[j1], words[j2]
            k = min(_common_prefix(s, t), len(s) - 1, len(t) - 1)
            for cut in range(inst.c + 1, k + 1):
                xp, y, z = s[:cut], s[cut:], t[cut:]
                for search in (search_condition1, search_condition2):
                    wit = search(inst.spec, xp, y, z, inst.c, inst.i_max, mem=mem).witness
                    if wit is not None:
                        wit.j1, wit.j2 = j1 + 1, j2 + 1
                        found.append((j1 + 1, j2 + 1, wit))
                        if not find_all:
                            return found[0]
                        break
    return found if find_all else None


@dataclass
class RefutationReport:
    pinned: list            # (j1, j2, x', y, z)
    condition1: SearchResult
    condition2: SearchResult

    @property
    def valid_factorizations(self):
        return len(self.condition1.witnesses) + len(self.condition2.witnesses)


def refute_pinned(lang, splits, c, i_max):
    """Exhaustive searches (all witnesses) over caller-pinned (x', y, z) splits."""
    mem = oracle(lang)
    r1, r2 = SearchResult(), SearchResult()
    for split in splits:
        j1, j2, xp, y, z = split
        for res, search in ((r1, search_condition1), (r2, search_condition2)):
            got = search(lang, xp, y, z, c, i_max, find_all=True, mem=mem)
            res.examined += got.examined
            for wit in got.witnesses:
                wit.j1, wit.j2 = j1, j2
            res.witnesses.extend(got.witnesses)
    return RefutationReport(list(splits), r1, r2)


def union_witness_splits(d, n):
    """The splits chosen in the refutation for {a^n b^(kn)}: one per pair j < k."""
    out = []
    for j in range(1, d + 1):
        for k in range(j + 1, d + 1):
            out.append((j, k, "a" * n + "b" * (j * n - 1), "b", "b" * ((k - j) * n + 1)))
    return out


def pal_block_splits(d, n):
    """For block strings w_i, w_j (i < j): x' = first i+1 blocks."""
    from .zoo import pal_block_string
    out = []
    for i in range(1, d + 2):
        for j in range(i + 1, d + 2):
            wi, wj = pal_block_string(i, n), pal_block_string(j, n)
            cut = (i + 1) * n
            out.append((i, j, wi[:cut], wi[cut:], wj[cut:]))
    return out


def pumping_constant_upper_bound(machine_or_states):
    q = machine_or_states if isinstance(machine_or_states, int) else len(machine_or_states.states)
    return 2 ** (6 * q ** 6)


# ---- second lemma ----

@dataclass
class PairSets:
    """Position tuples (a, b, c, d): x = s[a:b], y = s[c:d]."""
    sure: list
    possible: list


def nondegenerate_pairs(mem, s, i_max, nd_bounds):
    i_b, j_b = nd_bounds
    sure, possible = [], []
    n = len(s)
    for a in range(n):
        for b in range(a + 1, n + 1):
            for c in range(b, n):
                for d in range(c + 1, n + 1):
                    f = Factorization5(s[:a], s[a:b], s[b:c], s[c:d], s[d:])
                    if not pumps(mem, f, i_max):
                        continue
                    v = _nd(mem, f, i_b, j_b)
                    if v == YES:
                        sure.append((a, b, c, d))
                        possible.append((a, b, c, d))
                    elif v == INCONCLUSIVE:
                        possible.append((a, b, c, d))
    return PairSets(sure, possible)


def _nd(mem, f, i_max, j_max):
    if i_max < 1 or j_max < 1:
        return INCONCLUSIVE
    grid = [[mem(f.pumped(i, j)) for j in range(j_max + 1)] for i in range(i_max + 1)]
    row_sat = any(grid[i][j_max] and grid[i][j_max - 1] for i in range(i_max + 1))
    col_sat = any(grid[i_max][j] and grid[i_max - 1][j] for j in range(j_max + 1))
    return YES if not row_sat or not col_sat else "no"


@dataclass
class ConditionReport:
    verdicts: dict                      # condition -> HOLDS / FAILS / INCONCLUSIVE
    witnesses: dict                     # condition -> description of a witness
    pair_counts: dict                   # "x'y"/"x'z" -> (sure, possible)


def _verdict(sure_hit, possible_hit):
    if sure_hit is not None:
        return HOLDS, sure_hit
    if possible_hit is None:
        return FAILS, None
    return INCONCLUSIVE, None


def _first(pred, *lists):
    for combo in _product(*lists):
        if pred(*combo):
            return combo
    return None


def _product(*lists):
    if not lists:
        yield ()
        return
    for head in lists[0]:
        for rest in _product(*lists[1:]):
            yield (head,) + rest


def lemma2_check(lang, xp, y, z, i_max=3, nd_bounds=(3, 3)):
    if not xp or not y or not z:
        raise PreconditionError("x', y and z must be nonempty")
    mem = oracle(lang)
    for w in (xp + y, xp + z):
        if not mem(w):
            raise PreconditionError(f"{w!r} is not in the language")
    L = len(xp)
    sets = {"y": nondegenerate_pairs(mem, xp + y, i_max, nd_bounds),
            "z": nondegenerate_pairs(mem, xp + z, i_max, nd_bounds)}
    verdicts, wits = {}, {}

    def check(name, pred_builder):
        sure = pred_builder("sure")
        poss = pred_builder("possible")
        verdicts[name], wits[name] = _verdict(sure, poss)

    def P(u, kind):
        return getattr(sets[u], kind)

    # (1) one of the strings has no nondegenerate iterative pair
    if not P("y", "possible") or not P("z", "possible"):
        verdicts["1"], wits["1"] = HOLDS, "no pair in " + ("x'y" if not P("y", "possible") else "x'z")
    elif P("y", "sure") and P("z", "sure"):
        verdicts["1"], wits["1"] = FAILS, None
    else:
        verdicts["1"], wits["1"] = INCONCLUSIVE, None

    def inside(p):
        return p[3] <= L

    def crossing_xy(p):
        return p[1] <= L <= p[2]

    check("2", lambda k: _first(lambda p, q: inside(p) and inside(q), P("y", k), P("z", k)))
    check("3", lambda k: _first(lambda p, q: crossing_xy(p) and crossing_xy(q), P("y", k), P("z", k)))

    def four(pred):
        return lambda k: next((("x'" + u, p) for u in ("y", "z") for p in P(u, k) if pred(p)), None)

    check("4a", four(lambda p: p[0] < L < p[1] <= p[2]))
    check("4b", four(lambda p: p[2] < L < p[3]))
    check("4c", four(lambda p: p[0] >= L))

    if y != z:
        def five(pred):
            def build(k):
                for u, op in (("y", "z"), ("z", "y")):
                    hit = _first(pred, P(u, k), P(op, k))
                    if hit is not None:
                        return ("x'" + u,) + hit
                return None
            return build

        # (x2,u2) in x'u, (x4,x6) in x'u^op, with x2 before x4 and x6 inside x'
        check("5a", five(lambda p, q: p[1] <= L <= p[2] and p[1] <= q[0] and q[3] <= L))

        def five_b(p, q):
            if not (p[2] >= L and p[1] <= L and q[3] <= L):
                return False
            # (x5x6, u2) with (x2, x4x5): the second y ends inside the first x
            if q[2] <= p[0] <= q[3] <= p[1] and q[1] <= q[2]:
                return True
            # (x6, u2) with (x2, x4): the second pair ends before the first x
            return q[3] <= p[0]
        check("5b", five(five_b))
    else:
        verdicts["5a"] = verdicts["5b"] = FAILS
        wits["5a"] = wits["5b"] = "y = z"

    counts = {"x'y": (len(sets["y"].sure), len(sets["y"].possible)),
              "x'z": (len(sets["z"].sure), len(sets["z"].possible))}
    return ConditionReport(verdicts, wits, counts)


def npal_split(d, n, j1, j2, ws=None, ss=None):
    """x', y, z of the refutation for the block-palindrome complement."""
    from .zoo import npal_blocks
    if ws is None or ss is None:
        ws, ss = npal_blocks(d, n)
    vs = [ws[i][::-1] + ss[i] for i in range(d)]
    a, b = j1 - 1, j2 - 1
    xp = "#".join(ws) + "#" + "".join(v + "#" for v in vs[:a]) + ws[a][::-1]
    y = "".join("#" + v for v in vs[a + 1:])
    mid = vs[a + 1:b] + [ws[b][::-1]] + vs[b + 1:]
    z = ss[a] + "".join("#" + v for v in mid)
    return xp, y, z
