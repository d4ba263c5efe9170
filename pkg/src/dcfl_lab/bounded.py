"""μ-bounded intersections of machine families and description size."""

from dataclasses import dataclass, field

from .automaton import LEFT, RIGHT, run
from .builder import ACC, REJ, MachineBuilder

Z = "Z"


def des(machine):
    """|Q| * |Σ| * number of stack strings of length at most e."""
    g = len(machine.stack_alphabet)
    strings = sum(g ** i for i in range(machine.push_size + 1))
    return len(machine.states) * len(machine.input_alphabet) * strings


def mu_half(n):
    return (n + 1) // 2


@dataclass
class DpdaFamily:
    name: str
    generator: object
    mu: object = mu_half
    size_bound: tuple = ()          # polynomial coefficients, constant term first
    _cache: dict = field(default_factory=dict, repr=False)

    def machine(self, n):
        if n not in self._cache:
            self._cache[n] = self.generator(n)
        return self._cache[n]

    def bound(self, n):
        return sum(c * n ** k for k, c in enumerate(self.size_bound))

    def size_table(self, n_max):
        return [(n, des(self.machine(n)), self.bound(n)) for n in range(n_max + 1)]


def mu_bounded_member(family, x, step_budget=None):
    for i in range(family.mu(len(x)) + 1):
        if not run(family.machine(i), x, step_budget, trace=False).accepted:
            return False
    return True


def parity_machine():
    b = MachineBuilder("M_0", "01", set())
    b.stay("q0", LEFT, Z, "even")
    for s in "01":
        b.stay("even", s, Z, "odd")
        b.stay("odd", s, Z, "even")
    b.stay("even", RIGHT, Z, ACC)
    return b.build()


def pal_family(n):
    """M_0 checks even length; M_n checks that symbol n equals symbol n from the end.

    M_n pushes the whole input, latches the n-th symbol in its state and, at $,
    pops n symbols: one on $ and the rest by ε-pops, comparing on the last one.
    """
    if n == 0:
        return parity_machine()
    b = MachineBuilder(f"M_{n}", "01", {"0", "1"})
    tops = (Z, "0", "1")

    def count(k):
        return f"c{k}"

    b.stay("q0", LEFT, Z, count(0))
    for k in range(n):
        for top in tops:
            for s in "01":
                nxt = count(k + 1) if k + 1 < n else f"L{s}"
                b.push(count(k), s, top, nxt, s)
    for s in "01":
        latched, more = f"L{s}", f"M{s}"
        for top in tops:
            for a in "01":
                b.push(latched, a, top, more, a)
                b.push(more, a, top, more, a)
        for top in ("0", "1"):
            if n == 1:
                b.stay(more, RIGHT, top, ACC if top == s else REJ)
                continue
            b.pop(more, RIGHT, top, f"P{s}.1")
            for k in range(1, n):
                p = f"P{s}.{k}"
                if k < n - 1:
                    b.eps_pop(p, top, f"P{s}.{k + 1}")
                else:
                    b.eps_pop(p, top, ACC if top == s else REJ)
    return b.build()


PAL_SIZE_BOUND = (200, 80, 1)


def pal_machine_family():
    return DpdaFamily("pal", pal_family, mu_half, PAL_SIZE_BOUND)


FAMILIES = {"pal": pal_machine_family}
