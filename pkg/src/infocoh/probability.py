"""Exact probability laws on value sets, support complexes and grid enumeration."""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd


@dataclass(frozen=True)
class RationalLaw:
    variable: str
    values: tuple
    weights: tuple

    def __post_init__(self):
        if sum(self.weights) != 1 or any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative and sum to 1: %r" % (self.weights,))

    def __getitem__(self, v):
        return self.weights[self.values.index(v)]

    def support(self):
        return frozenset(v for v, w in zip(self.values, self.weights) if w)

    def key(self):
        return law_key(self.weights)

    def is_dirac(self):
        return sum(1 for w in self.weights if w) == 1


def frac_str(q):
    q = Fraction(q)
    return "%d/%d" % (q.numerator, q.denominator)


def law_key(weights):
    return ",".join(frac_str(w) for w in weights)


def parse_law_key(s):
    return tuple(Fraction(t) for t in s.split(","))


def common_denominator(weights):
    d = 1
    for w in weights:
        d = d * w.denominator // gcd(d, w.denominator)
    return d


class SupportComplex:
    """Laws on E(X) whose support lies in one of the maximal supports."""

    def __init__(self, variable, values, maximal_supports):
        self.variable = variable
        self.values = tuple(values)
        sups = []
        for s in maximal_supports:
            s = frozenset(s)
            bad = [v for v in s if v not in self.values]
            if bad:
                raise ValueError("support of %r mentions unknown value %r" % (variable, bad[0]))
            if not s:
                raise ValueError("empty support for %r" % (variable,))
            sups.append(s)
        uniq = []
        for s in sups:
            if not any(s < t for t in sups) and s not in uniq:
                uniq.append(s)
        order = {v: i for i, v in enumerate(self.values)}
        self.maximal_supports = tuple(sorted(uniq, key=lambda s: sorted(order[v] for v in s)))
        self.index_supports = tuple(frozenset(order[v] for v in s) for s in self.maximal_supports)

    def is_full(self):
        return len(self.maximal_supports) == 1 and len(self.maximal_supports[0]) == len(self.values)

    def admits_indices(self, idx):
        return any(idx <= s for s in self.index_supports)

    def admits(self, weights):
        idx = frozenset(i for i, w in enumerate(weights) if w)
        return self.admits_indices(idx)


class ProbabilityFunctor:
    """One support complex per object of a structure."""

    def __init__(self, structure, complexes):
        self.structure = structure
        self.complexes = dict(complexes)
        for x in structure.ids:
            if x not in self.complexes:
                self.complexes[x] = SupportComplex(x, structure.values(x), [structure.values(x)])

    def __getitem__(self, x):
        return self.complexes[x]

    def is_full(self):
        return all(c.is_full() for c in self.complexes.values())

    def grid(self, x, N):
        return enumerate_grid_weights(len(self.structure.values(x)), self.complexes[x].index_supports, N)


def full_functor(S):
    return ProbabilityFunctor(S, {})


def coproduct_functor(Q1, Q2, C, i1, i2):
    comp = {}
    for Q, inj in ((Q1, i1), (Q2, i2)):
        for x, c in Q.complexes.items():
            y = inj.object_map[x]
            if y == C.terminal:
                continue
            comp[y] = SupportComplex(y, C.values(y), c.maximal_supports)
    return ProbabilityFunctor(C, comp)


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_grid_weights(n, index_supports, N):
    """Weight tuples with common denominator <= N and admissible support."""
    if N < 1:
        raise ValueError("N must be positive")
    out = set()
    for sup in index_supports:
        cells = sorted(sup)
        for d in range(1, N + 1):
            for comp in _compositions(d, len(cells)):
                w = [Fraction(0)] * n
                for c, a in zip(cells, comp):
                    if a:
                        w[c] = Fraction(a, d)
                out.add(tuple(w))
    return tuple(sorted(out))


def enumerate_grid_laws(variable, values, Qx, N):
    return [RationalLaw(variable, tuple(values), w) for w in enumerate_grid_weights(len(values), Qx.index_supports, N)]


def push_weights(weights, index_map, m):
    out = [Fraction(0)] * m
    for w, j in zip(weights, index_map):
        if w:
            out[j] += w
    return tuple(out)


def condition_weights(weights, index_map, j):
    """Weights of P conditioned on {value j} of a coarser variable, or None."""
    mass = sum(w for w, k in zip(weights, index_map) if k == j)
    if mass == 0:
        return None
    return tuple(w / mass if k == j else Fraction(0) for w, k in zip(weights, index_map))


def marginalize(S, P, y):
    """Push the law P (on P.variable) forward along the arrow to y."""
    x = P.variable
    if not S.has_arrow(x, y):
        raise ValueError("no arrow %r -> %r" % (x, y))
    return RationalLaw(y, S.values(y), push_weights(P.weights, S.index_map(x, y), S.size(y)))


def condition(S, P, y, value):
    x = P.variable
    if not S.has_arrow(x, y):
        raise ValueError("%r is not coarser than %r" % (y, x))
    w = condition_weights(P.weights, S.index_map(x, y), S.values(y).index(value))
    return None if w is None else RationalLaw(x, S.values(x), w)


@dataclass
class AdaptedReport:
    adapted: bool
    witness: tuple = None
    reason: str = ""


def check_adapted(S, Q, N):
    """Marginal images and conditionings of grid laws stay admissible."""
    for x in S.ids:
        for w in Q.grid(x, N):
            for y in S.coarser(x):
                im = S.index_map(x, y)
                if not Q[y].admits(push_weights(w, im, S.size(y))):
                    return AdaptedReport(False, (x, y, law_key(w)), "marginal leaves Q")
                for j in range(S.size(y)):
                    c = condition_weights(w, im, j)
                    if c is not None and not Q[x].admits(c):
                        return AdaptedReport(False, (x, y, law_key(w)), "conditioning leaves Q")
    return AdaptedReport(True)
