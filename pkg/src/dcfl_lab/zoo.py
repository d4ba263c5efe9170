"""Concrete languages: ground-truth predicates, DPDA decompositions and the
witness string families used by the refutation workflows."""

import itertools
import re
from dataclasses import dataclass, field

from .automaton import complement
from .errors import UnsupportedParams
from .languages import (Complement, DfaLeaf, DpdaLeaf, Dfa, Intersection, PredicateLeaf,
                        Union, complement_spec, dpda_leaves, member, parity_dfa, restrict_regular,
                        sequence_dfa)
from .machines import (anbn, block_compare_machine, length_mismatch_machine, power_machine,
                       segment_machine)

MAX_D = 4
MAX_K = 4


@dataclass
class ZooEntry:
    name: str
    alphabet: str
    predicate: object
    spec: object = None
    provenance: str = ""
    params: dict = field(default_factory=dict)
    validation_length: int = 8

    def __contains__(self, word):
        return bool(self.predicate(word))


@dataclass
class AgreementReport:
    name: str
    max_len: int
    checked: int
    disagreements: list

    @property
    def ok(self):
        return not self.disagreements


def all_strings(alphabet, max_len):
    alphabet = sorted(alphabet)
    for n in range(max_len + 1):
        for t in itertools.product(alphabet, repeat=n):
            yield "".join(t)


def cross_validate(entry, max_len=None, step_budget=None, limit=20):
    if entry.spec is None:
        raise UnsupportedParams(f"{entry.name} has no DPDA decomposition")
    if max_len is None:
        max_len = entry.validation_length
    bad = []
    count = 0
    for w in all_strings(entry.alphabet, max_len):
        count += 1
        want = bool(entry.predicate(w))
        got = member(entry.spec, w, step_budget)
        if want != got and len(bad) < limit:
            bad.append((w, want, got))
    return AgreementReport(entry.name, max_len, count, bad)


# ---- helpers ----

def _sigma_d(d):
    return "abcd"[:d], "ABCD"[:d]


def _check_d(d, lo=1):
    if not lo <= d <= MAX_D:
        raise UnsupportedParams(f"d={d} outside [{lo},{MAX_D}]")


def _counts_in_order(word, order):
    """Exponents (e_1..e_r) if word = order[0]^e_1 ... order[-1]^e_r, else None."""
    pattern = "".join(f"({re.escape(s)}*)" for s in order)
    m = re.fullmatch(pattern, word)
    return None if m is None else [len(g) for g in m.groups()]


# ---- L_abc ----

def pred_abc(w):
    c = _counts_in_order(w, "abc")
    return c is not None and c[0] == c[1] == c[2]


def entry_abc():
    a1 = segment_machine("A1", "abc", [("abc", ("a", "b", "="))])
    a2 = segment_machine("A2", "abc", [("abc", ("b", "c", "="))])
    return ZooEntry("L_abc", "abc", pred_abc, Intersection([DpdaLeaf(a1), DpdaLeaf(a2)]),
                    "a^n b^n c^n as the intersection of two simple languages")


# ---- L_d and L_d^(<=) ----

def pred_ld(d):
    a, b = _sigma_d(d)

    def fn(w):
        c = _counts_in_order(w, a + b)
        return c is not None and c[:d] == c[d:]
    fn.__name__ = f"L_{d}"
    return fn


def entry_ld(d):
    _check_d(d)
    a, b = _sigma_d(d)
    comps = [DpdaLeaf(segment_machine(f"eq{k}", a + b, [(a + b, (a[k], b[k], "="))]))
             for k in range(d)]
    return ZooEntry("L_d", a + b, pred_ld(d), Intersection(comps),
                    "a_1^n1..a_d^nd b_1^n1..b_d^nd, intersection of d equalities", {"d": d})


def pred_ld_le(d):
    a, b = _sigma_d(d)

    def fn(w):
        c = _counts_in_order(w, a + b)
        return c is not None and all(c[i] <= c[d + i] for i in range(d))
    fn.__name__ = f"L_{d}^(<=)"
    return fn


def pred_ld_le_prime(d):
    a, b = _sigma_d(d)

    def fn(w):
        c = _counts_in_order(w, a + b)
        return c is not None and any(c[i] > c[d + i] for i in range(d))
    fn.__name__ = f"L'_{d}"
    return fn


def ld_le_spec(d):
    a, b = _sigma_d(d)
    seq = sequence_dfa(a + b, a + b, name="A")
    comps = []
    for i in range(d):
        gt = segment_machine(f"L^({i + 1})", a + b, [(a + b, (a[i], b[i], ">"))])
        comps.append(DpdaLeaf(complement(gt)))
    # the complement of {n_i > m_i} contains junk outside A; cut it away per component
    return restrict_regular(Intersection(comps), seq, "intersect"), seq


def entry_ld_le(d):
    _check_d(d)
    a, b = _sigma_d(d)
    spec, _ = ld_le_spec(d)
    return ZooEntry("L_d_le", a + b, pred_ld_le(d), spec,
                    "intersection over i of complements of {n_i > m_i}, restricted to A",
                    {"d": d})


def entry_ld_le_prime(d):
    _check_d(d)
    a, b = _sigma_d(d)
    spec, seq = ld_le_spec(d)
    prime = restrict_regular(complement_spec(spec), seq, "intersect")
    return ZooEntry("L_d_le_prime", a + b, pred_ld_le_prime(d), prime,
                    "A minus L_d^(<=): some n_i > m_i", {"d": d})


# ---- L_(d) ----

def pred_lunion(d):
    def fn(w):
        c = _counts_in_order(w, "ab")
        if c is None:
            return False
        n, m = c
        return any(m == k * n for k in range(1, d + 1))
    fn.__name__ = f"L_({d})"
    return fn


def entry_lunion(d):
    _check_d(d)
    comps = [DpdaLeaf(power_machine(k)) for k in range(1, d + 1)]
    return ZooEntry("L_(d)", "ab", pred_lunion(d), Union(comps),
                    "a^n b^(kn) for k in [d], a union of d languages", {"d": d},
                    validation_length=10)


# ---- anbn ----

def pred_anbn(w):
    c = _counts_in_order(w, "ab")
    return c is not None and c[0] == c[1]


def entry_anbn():
    return ZooEntry("anbn", "ab", pred_anbn, DpdaLeaf(anbn()), "a^n b^n",
                    validation_length=10)


# ---- palindromes ----

def pred_pal(w):
    return len(w) % 2 == 0 and w == w[::-1]


def pred_npal(w):
    # xy with |x| = |y| and y != x^R
    if len(w) % 2:
        return False
    h = len(w) // 2
    return w[h:] != w[:h][::-1]


def pred_odd(w):
    return len(w) % 2 == 1


def entry_pal():
    return ZooEntry("Pal", "01", pred_pal, None, "even-length palindromes w w^R",
                    validation_length=10)


def entry_copal():
    odd = parity_dfa("01", odd=True, name="ODD")
    spec = Union([DfaLeaf(odd),
                  Intersection([DfaLeaf(odd.complement()), PredicateLeaf(pred_npal, "01", "NPal")])])
    return ZooEntry("co-Pal", "01", lambda w: not pred_pal(w), spec,
                    "complement of Pal as ODD united with (even length and NPal)",
                    validation_length=10)


# ---- NPal#_d and its complement within the block form ----

def split_blocks(w, count, sep="#"):
    parts = w.split(sep)
    if len(parts) != count or any(set(p) - {"0", "1"} for p in parts):
        return None
    return parts


def pred_npal_d(d):
    def fn(w):
        parts = split_blocks(w, 2 * d)
        return parts is not None and all(parts[d + i] != parts[i][::-1] for i in range(d))
    fn.__name__ = f"NPal#_{d}"
    return fn


def pred_npal_d_prime(d):
    def fn(w):
        parts = split_blocks(w, 2 * d)
        return parts is not None and any(parts[d + i] == parts[i][::-1] for i in range(d))
    fn.__name__ = f"L'(NPal#_{d})"
    return fn


def block_form_dfa(d):
    """{0,1}* (# {0,1}*)^(2d-1): exactly 2d-1 separators."""
    top = 2 * d - 1
    delta = {}
    for q in range(top + 2):
        for s in "01#":
            if q == top + 1:
                delta[(q, s)] = q
            elif s == "#":
                delta[(q, s)] = q + 1
            else:
                delta[(q, s)] = q
    return Dfa(range(top + 2), "01#", delta, 0, {top}, name="A")


def entry_npal_d(d):
    _check_d(d, lo=1)
    comps = [DpdaLeaf(block_compare_machine(f"v{i}!=w{i}R", d, i, "!=")) for i in range(1, d + 1)]
    return ZooEntry("NPal#_d", "01#", pred_npal_d(d), Intersection(comps),
                    "w_1#..#w_d#v_1#..#v_d with every v_i != w_i^R", {"d": d})


def entry_npal_d_prime(d):
    base = entry_npal_d(d)
    spec = restrict_regular(complement_spec(base.spec), block_form_dfa(d), "intersect")
    return ZooEntry("NPal#_d_prime", "01#", pred_npal_d_prime(d), spec,
                    "block form with some v_i = w_i^R", {"d": d})


# ---- MPal#, NPal#, FORM (one canonical parse: the first "##") ----

def parse_form(w):
    if set(w) - set("01#"):
        return None
    p = w.find("##")
    if p < 0:
        return None
    return w[:p].split("#"), w[p + 2:].split("#")


def pred_form(w):
    return parse_form(w) is not None


def pred_mpal(w):
    parsed = parse_form(w)
    if parsed is None:
        return False
    ws, vs = parsed
    return any(vs[i] == ws[i][::-1] for i in range(min(len(ws), len(vs))))


def pred_npal_hash(w):
    parsed = parse_form(w)
    if parsed is None:
        return False
    ws, vs = parsed
    return all(vs[i] != ws[i][::-1] for i in range(min(len(ws), len(vs))))


def entry_mpal():
    return ZooEntry("MPal#", "01#", pred_mpal, None, "some v_i = w_i^R around a double separator")


def entry_npal_hash():
    spec = Intersection([PredicateLeaf(pred_form, "01#", "FORM"),
                         Complement(PredicateLeaf(pred_mpal, "01#", "MPal#"))])
    return ZooEntry("NPal#", "01#", pred_npal_hash, spec, "FORM minus MPal#")


def entry_form():
    return ZooEntry("FORM", "01#", pred_form, None, "strings with a double separator")


# ---- Dup_c and L_wot ----

def _split_c(w):
    if w.count("c") != 1 or set(w) - set("abc"):
        return None
    return w.split("c")


def pred_dup(w):
    p = _split_c(w)
    return p is not None and p[0] == p[1]


def pred_wot(w):
    p = _split_c(w)
    return p is not None and p[0] != p[1]


def pred_same_length_differ(w):
    p = _split_c(w)
    return p is not None and len(p[0]) == len(p[1]) and p[0] != p[1]


def wot_spec():
    return Union([DpdaLeaf(length_mismatch_machine()),
                  PredicateLeaf(pred_same_length_differ, "abc", "same-length-differ")])


def shape_dfa():
    """{a,b}* c {a,b}*."""
    delta = {}
    for q in range(3):
        for s in "abc":
            delta[(q, s)] = q if s != "c" else min(q + 1, 2)
    return Dfa(range(3), "abc", delta, 0, {1}, name="R")


def entry_wot():
    return ZooEntry("L_wot", "abc", pred_wot, wot_spec(), "wcx with w != x")


def entry_dup():
    spec = Intersection([DfaLeaf(shape_dfa()), complement_spec(wot_spec())])
    return ZooEntry("Dup_c", "abc", pred_dup, spec, "wcw as the shape-restricted complement of L_wot")


# ---- Hibbard-style L_k ----

def block_order(k):
    """Block indices in string order (blocks numbered 1..k)."""
    evens = list(range(2, k + 1, 2))
    odds = list(range(1, k + 1, 2))
    if k % 2 == 0:
        return evens + odds[::-1]
    return evens + [k] + [o for o in odds if o != k][::-1]


def parse_hibbard(w, k):
    if set(w) - set("abc#"):
        return None
    parts = w.split("#")
    if len(parts) != k:
        return None
    out = {}
    for blk, part in zip(block_order(k), parts):
        c = _counts_in_order(part, "abc")
        if c is None:
            return None
        out[blk] = tuple(c)
    return out


def hibbard_rec(ex, k, primed, off=0):
    """Membership of blocks off+1..off+k in L_k (or L'_k), by the four-way recursion."""
    if k == 0:
        return not primed
    n1, m1, p1 = ex[off + 1]
    if primed:
        n1, p1 = p1, n1
    if k == 1:
        return n1 == m1
    n2, m2, p2 = ex[off + 2]
    if n1 == m1 and n2 == m2 and hibbard_rec(ex, k - 2, False, off + 2):
        return True
    if n1 == m1 and n2 < m2 and hibbard_rec(ex, k - 2, True, off + 2):
        return True
    if n1 < m1 and m2 == p2 and hibbard_rec(ex, k - 2, False, off + 2):
        return True
    if n1 < m1 and m2 < p2 and hibbard_rec(ex, k - 2, True, off + 2):
        return True
    return False


def pred_hibbard(k, primed=False):
    def fn(w):
        ex = parse_hibbard(w, k)
        return ex is not None and hibbard_rec(ex, k, primed)
    fn.__name__ = f"L{'′' if primed else ''}_{k}"
    return fn


def pred_hibbard_literal(k):
    """Conditions (a)-(c) read word for word; kept as a reference, it disagrees with
    the displayed two-block instance (see tests)."""
    def fn(w):
        ex = parse_hibbard(w, k)
        if ex is None:
            return False
        n, m, p = ({j: ex[j][i] for j in ex} for i in range(3))
        if not n[1] <= m[1]:
            return False
        for j in range(2, k + 1):
            if n[j] <= m[j] and not (n[j - 1] == m[j - 1] or m[j - 1] == p[j - 1]):
                return False
            if m[j] <= p[j] and not (n[j - 1] < m[j - 1] or m[j - 1] < p[j - 1]):
                return False
        return n[k] == m[k] or m[k] == p[k]
    return fn


def hibbard_paths(k, primed=False, off=0):
    """Each path is {block: (x, y, rel)}; the union of the paths is L_k (or L'_k)."""
    if k == 0:
        return [] if primed else [{}]
    b1, b2 = off + 1, off + 2
    eq1 = ("b", "c", "=") if primed else ("a", "b", "=")
    lt1 = ("b", "c", ">") if primed else ("a", "b", "<")
    if k == 1:
        return [{b1: eq1}]
    out = []
    for first, second, rest_primed in ((eq1, ("a", "b", "="), False),
                                       (eq1, ("a", "b", "<"), True),
                                       (lt1, ("b", "c", "="), False),
                                       (lt1, ("b", "c", "<"), True)):
        for rest in hibbard_paths(k - 2, rest_primed, off + 2):
            path = {b1: first, b2: second}
            path.update(rest)
            out.append(path)
    return out


def hibbard_spec(k, primed=False):
    comps = []
    for idx, path in enumerate(hibbard_paths(k, primed)):
        segs = [("abc", path.get(blk)) for blk in block_order(k)]
        comps.append(DpdaLeaf(segment_machine(f"A{idx + 1}", "abc#", segs)))
    return Union(comps)


def _check_k(k):
    if not 1 <= k <= MAX_K:
        raise UnsupportedParams(f"k={k} outside [1,{MAX_K}]")


def entry_hibbard(k, primed=False):
    _check_k(k)
    name = "L'_k" if primed else "L_k"
    return ZooEntry(name, "abc#", pred_hibbard(k, primed), hibbard_spec(k, primed),
                    "Hibbard-style block language, union of 2^(k-1) components", {"k": k})


# ---- registry ----

FAMILIES = {
    "anbn": (lambda p: entry_anbn(), ()),
    "L_abc": (lambda p: entry_abc(), ()),
    "L_d": (lambda p: entry_ld(p.get("d", 2)), ("d",)),
    "L_d_le": (lambda p: entry_ld_le(p.get("d", 2)), ("d",)),
    "L_d_le_prime": (lambda p: entry_ld_le_prime(p.get("d", 2)), ("d",)),
    "L_(d)": (lambda p: entry_lunion(p.get("d", 2)), ("d",)),
    "Pal": (lambda p: entry_pal(), ()),
    "co-Pal": (lambda p: entry_copal(), ()),
    "NPal#_d": (lambda p: entry_npal_d(p.get("d", 2)), ("d",)),
    "NPal#_d_prime": (lambda p: entry_npal_d_prime(p.get("d", 2)), ("d",)),
    "MPal#": (lambda p: entry_mpal(), ()),
    "NPal#": (lambda p: entry_npal_hash(), ()),
    "FORM": (lambda p: entry_form(), ()),
    "L_k": (lambda p: entry_hibbard(p.get("k", 2)), ("k",)),
    "L'_k": (lambda p: entry_hibbard(p.get("k", 2), primed=True), ("k",)),
    "Dup_c": (lambda p: entry_dup(), ()),
    "L_wot": (lambda p: entry_wot(), ()),
}


def build_entry(name, params=None):
    params = dict(params or {})
    if name not in FAMILIES:
        raise UnsupportedParams(f"unknown zoo entry {name!r}")
    return FAMILIES[name][0](params)


# ---- witness families ----

@dataclass
class WitnessFamily:
    name: str
    x: str
    ys: list
    params: dict

    def strings(self):
        return [self.x + y for y in self.ys]


def prop5_family(d, n):
    return WitnessFamily("L_(d)", "a" * n, ["b" * (i * n) for i in range(1, d + 1)],
                         {"d": d, "n": n})


def ld_le_family(d, n):
    a, b = _sigma_d(d)
    x = "".join(a[i] * ((i + 1) * n) for i in range(d))
    ys = []
    for k in range(d):
        ys.append("".join(b[i] * ((i + 1) * n - (1 if i == k else 0)) for i in range(d)))
    return WitnessFamily("L_d_le_prime", x, ys, {"d": d, "n": n})


def npal_blocks(d, n):
    """Deterministic choice of the free strings w_i and s_i, each of length n."""
    ws = [format((2 * i + 1) % (1 << n), f"0{n}b") for i in range(d)]
    ss = [format((5 * i + 2) % (1 << n), f"0{n}b") for i in range(d)]
    return ws, ss


def npal_family(d, n, ws=None, ss=None):
    if ws is None or ss is None:
        ws, ss = npal_blocks(d, n)
    vs = [ws[i][::-1] + ss[i] for i in range(d)]
    x = "".join(w + "#" for w in ws)
    ys = []
    for i in range(d):
        parts = list(vs)
        parts[i] = ws[i][::-1]
        ys.append("#".join(parts))
    return WitnessFamily("NPal#_d_prime", x, ys, {"d": d, "n": n})


def pal_block_string(k, n):
    return "".join(("0" if j % 2 == 0 else "1") * n for j in range(2 * k + 1))


def pal_family_strings(d, n):
    return [pal_block_string(k, n) for k in range(1, d + 2)]


def hibbard_quadruple(nj):
    return {1: f"{'a' * nj}{'b' * nj}{'c' * (nj - 1)}",
            2: f"{'a' * nj}{'b' * (nj + 1)}{'c' * nj}",
            3: f"{'a' * nj}{'b' * (nj - 1)}{'c' * (nj - 1)}",
            4: f"{'a' * nj}{'b' * (nj - 1)}{'c' * nj}"}


def hibbard_alpha(k, ns, s):
    """alpha_s for block sizes ns[j] and choices s[j] (j = 1..k, dict or 1-based list)."""
    return "#".join(hibbard_quadruple(ns[j])[s[j]] for j in block_order(k))


def witness_family(name, params):
    p = dict(params)
    n = p.get("n", 5)
    if name == "L_(d)":
        _check_d(p.get("d", 2))
        return prop5_family(p.get("d", 2), n)
    if name in ("L_d_le", "L_d_le_prime"):
        _check_d(p.get("d", 2))
        return ld_le_family(p.get("d", 2), n)
    if name in ("NPal#_d", "NPal#_d_prime"):
        _check_d(p.get("d", 2))
        return npal_family(p.get("d", 2), n)
    raise UnsupportedParams(f"no (x, ys) witness family for {name!r}")


def witness_strings(name, params=None):
    p = dict(params or {})
    n = p.get("n", 5)
    if name == "Pal":
        d = p.get("d", 1)
        _check_d(d)
        return pal_family_strings(d, n)
    if name in ("L_k", "L'_k"):
        k = p.get("k", 2)
        _check_k(k)
        ns = p.get("ns") or {j: n + j for j in range(1, k + 1)}
        s = p.get("s") or {j: 1 for j in range(1, k + 1)}
        return [hibbard_alpha(k, ns, s)]
    return witness_family(name, p).strings()


# ---- the zoo used by the acceptance checks ----

VALIDATED = [("L_abc", {}), ("L_d", {"d": 2}), ("L_d", {"d": 3}), ("L_d_le", {"d": 2}),
             ("L_d_le_prime", {"d": 2}), ("L_(d)", {"d": 2}), ("L_(d)", {"d": 3}),
             ("co-Pal", {}), ("L_k", {"k": 2}), ("L_k", {"k": 3}), ("L'_k", {"k": 2}),
             ("Dup_c", {}), ("L_wot", {}), ("NPal#_d", {"d": 2}), ("NPal#_d_prime", {"d": 2}),
             ("NPal#", {}), ("anbn", {})]

MACHINE_SOURCES = [("anbn", {}), ("L_abc", {}), ("L_d", {"d": 2}), ("L_d", {"d": 3}),
                   ("L_d_le", {"d": 2}), ("L_d_le_prime", {"d": 2}), ("L_(d)", {"d": 3}),
                   ("NPal#_d", {"d": 2}), ("NPal#_d_prime", {"d": 2}), ("L_k", {"k": 2}),
                   ("L_k", {"k": 3}), ("L'_k", {"k": 2}), ("L'_k", {"k": 3}),
                   ("Dup_c", {}), ("L_wot", {})]


def zoo_machines(sources=None):
    """(label, machine) for every distinct DPDA component in the zoo specs."""
    out = []
    seen = set()
    for name, params in sources or MACHINE_SOURCES:
        spec = build_entry(name, params).spec
        for leaf in dpda_leaves(spec):
            m = leaf.machine
            key = (m.name, m.input_alphabet, len(m.states), len(m.transitions))
            if key in seen:
                continue
            seen.add(key)
            label = f"{name}{params or ''}:{m.name}"
            out.append((label, m))
    return out
