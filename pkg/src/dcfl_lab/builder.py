"""Small helper for hand-authoring DPDAs in ideal shape."""

from .automaton import EPS, LEFT, RIGHT, Dpda, ensure_valid

ACC = "acc"
REJ = "rej"


class MachineBuilder:
    def __init__(self, name, sigma, gamma, bottom="Z", initial="q0"):
        self.name = name
        self.sigma = sorted(sigma)
        self.bottom = bottom
        self.gamma = set(gamma) | {bottom}
        self.initial = initial
        self.states = {initial, ACC, REJ}
        self.delta = {}

    def _add(self, p, a, top, q, push):
        key = (p, a, top)
        if key in self.delta and self.delta[key] != (q, push):
            raise ValueError(f"conflicting moves for {key}")
        self.states.update((p, q))
        self.delta[key] = (q, push)

    # the four ideal-shape move kinds
    def stay(self, p, a, top, q):
        self._add(p, a, top, q, top)

    def push(self, p, a, top, q, sym):
        self._add(p, a, top, q, sym + top)

    def pop(self, p, a, top, q):
        self._add(p, a, top, q, "")

    def eps_pop(self, p, top, q):
        self._add(p, EPS, top, q, "")

    def stay_all(self, p, a, q, tops=None):
        for top in (tops or self.gamma):
            self.stay(p, a, top, q)

    def build(self, check=True):
        """Route every missing (state, symbol, top) to the reject state."""
        reads = self.sigma + [LEFT, RIGHT]
        for p in list(self.states):
            if p in (ACC, REJ):
                continue
            for top in self.gamma:
                if (p, EPS, top) in self.delta:
                    continue
                for a in reads:
                    if (p, a, top) not in self.delta:
                        self.delta[(p, a, top)] = (REJ, top)
        m = Dpda(self.states, self.sigma, self.gamma, self.delta, self.initial,
                 self.bottom, {ACC}, {REJ}, name=self.name)
        return ensure_valid(m) if check else m
