"""Hand-authored ideal-shape DPDAs used by the language zoo.

Push moves never look at the symbol underneath: the pushed symbol and the
next state depend on the state and the input only.
"""

from .builder import ACC, REJ, MachineBuilder
from .automaton import LEFT, RIGHT

Z = "Z"

RELATIONS = {
    # pushes n, pops m; "over" means a pop was attempted on an empty segment
    "=": lambda empty, over: empty and not over,
    "<": lambda empty, over: over,
    ">": lambda empty, over: not empty,
    "<=": lambda empty, over: empty,
    ">=": lambda empty, over: not over,
    "!=": lambda empty, over: over or not empty,
}


def segment_machine(name, sigma, segments, sep="#"):
    """Strings seg_0 sep seg_1 ... sep seg_{k-1}, each seg of the form l_0* l_1* ...

    segments is a list of (letters, check) where check is None or
    (x, y, rel): count(x) rel count(y), with x before y in letters.
    Stack left over by a segment is cleared with e-pops after the separator.
    """
    b = MachineBuilder(name, sigma, {"A"})
    k = len(segments)

    def st(seg, ph, stage):
        return f"s{seg}.{ph}{stage}"

    def start_stage(seg):
        return "" if segments[seg][1] else "v"

    def clear(seg):
        return f"c{seg}"

    def emit(p, seg, ph, stage, tops):
        letters, check = segments[seg]
        idx = {c: i for i, c in enumerate(letters)}
        ok_fn = RELATIONS[check[2]] if check else None
        ix = idx[check[0]] if check else None
        iy = idx[check[1]] if check else None
        for top in tops:
            for c in letters:
                j = idx[c]
                if j < ph:
                    continue
                if stage == "v":
                    b.stay(p, c, top, st(seg, j, "v"))
                elif j == ix:
                    b.push(p, c, top, st(seg, j, stage), "A")
                elif j == iy:
                    if top == "A":
                        b.pop(p, c, top, st(seg, j, stage))
                    else:
                        b.stay(p, c, top, st(seg, j, "o"))
                elif j < iy:
                    b.stay(p, c, top, st(seg, j, stage))
                elif ok_fn(top == Z, stage == "o"):
                    b.stay(p, c, top, st(seg, j, "v"))
            if stage != "v" and not ok_fn(top == Z, stage == "o"):
                continue
            if seg == k - 1:
                b.stay(p, RIGHT, top, ACC)
            elif top == "A":
                b.pop(p, sep, top, clear(seg + 1))
            else:
                b.stay(p, sep, top, st(seg + 1, 0, start_stage(seg + 1)))

    b.stay(b.initial, LEFT, Z, st(0, 0, start_stage(0)))
    for seg, (letters, check) in enumerate(segments):
        stages = ["", "o", "v"] if check else ["v"]
        for ph in range(len(letters)):
            for stage in stages:
                emit(st(seg, ph, stage), seg, ph, stage, (Z, "A"))
        if seg > 0:
            c = clear(seg)
            b.eps_pop(c, "A", c)
            # once the old stack is gone the clearing state reads like the start state
            emit(c, seg, 0, start_stage(seg), (Z,))
    return b.build()


def anbn():
    return segment_machine("anbn", "ab", [("ab", ("a", "b", "="))])


def power_machine(k):
    """{a^n b^(k n)}: one push per a, one pop per k b's."""
    b = MachineBuilder(f"L^({k})", "ab", {"A"})

    def r(j):
        return f"r{j}"

    b.stay("q0", LEFT, Z, "qa")
    b.push("qa", "a", Z, "qa", "A")
    b.push("qa", "a", "A", "qa", "A")
    b.stay("qa", RIGHT, Z, ACC)
    for p in ("qa", r(0)):
        if k == 1:
            b.pop(p, "b", "A", r(0))
        else:
            b.stay(p, "b", "A", r(1))
    for j in range(1, k):
        if j < k - 1:
            b.stay(r(j), "b", "A", r(j + 1))
        else:
            b.pop(r(j), "b", "A", r(0))
    b.stay(r(0), RIGHT, Z, ACC)
    return b.build()


def block_compare_machine(name, d, i, rel):
    """Strings w_1#...#w_d#v_1#...#v_d over {0,1} with v_i rel w_i^R, rel in {"=", "!="}."""
    b = MachineBuilder(name, "01#", {"0", "1"})
    nseg = 2 * d
    wseg = i - 1
    vseg = d + i - 1

    def scan(seg, done):
        return f"n{seg}{'v' if done else ''}"

    tops = (Z, "0", "1")
    b.stay("q0", LEFT, Z, "w0" if wseg == 0 else scan(0, False))
    for seg in range(nseg):
        done = seg > vseg
        if seg == wseg:
            p = f"w{seg}"
            for top in tops:
                for s in "01":
                    b.push(p, s, top, p, s)
                b.stay(p, "#", top, scan(seg + 1, False))
        elif seg == vseg:
            cmp_, diff = f"m{seg}", f"d{seg}"
            for top in tops:
                for s in "01":
                    if top == s:
                        b.pop(cmp_, s, top, cmp_)
                    else:
                        b.stay(cmp_, s, top, diff)
                    b.stay(diff, s, top, diff)
                for p, is_diff in ((cmp_, False), (diff, True)):
                    differs = is_diff or top != Z
                    ok = differs if rel == "!=" else not differs
                    if not ok:
                        continue
                    if seg == nseg - 1:
                        b.stay(p, RIGHT, top, ACC)
                    else:
                        b.stay(p, "#", top, scan(seg + 1, True))
        else:
            p = scan(seg, done)
            for top in tops:
                for s in "01":
                    b.stay(p, s, top, p)
                if seg == nseg - 1:
                    b.stay(p, RIGHT, top, ACC)
                else:
                    nxt = seg + 1
                    if nxt == wseg:
                        b.stay(p, "#", top, f"w{nxt}")
                    elif nxt == vseg:
                        b.stay(p, "#", top, f"m{nxt}")
                    else:
                        b.stay(p, "#", top, scan(nxt, nxt > vseg))
    return b.build()


def length_mismatch_machine():
    """{w c x : w, x in {a,b}*, |w| != |x|}."""
    b = MachineBuilder("len≠", "abc", {"X"})
    b.stay("q0", LEFT, Z, "w")
    for top in (Z, "X"):
        for s in "ab":
            b.push("w", s, top, "w", "X")
        b.stay("w", "c", top, "x")
        for s in "ab":
            b.stay("xo", s, top, "xo")
        b.stay("xo", RIGHT, top, ACC)
    for s in "ab":
        b.pop("x", s, "X", "x")
        b.stay("x", s, Z, "xo")
    b.stay("x", RIGHT, "X", ACC)
    return b.build()
