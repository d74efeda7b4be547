"""Entropy, the alpha-twisted action, cochains and the coboundary.

Cochains are stored in jointly-local form: the value of f at [X1|...|Xn]
is a function of laws on the product X1...Xn only, so each generator tuple
owns one table keyed by weight tuples on that product. A law on a finer
variable is first pushed down to the product.

With alpha = 1 all arithmetic is exact: weights are Fractions and Shannon
entropies are LogLinear values. Other alphas use floats.
"""

import hashlib
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .exact import LogLinear, is_exact_zero
from .probability import common_denominator, condition_weights, law_key, push_weights

MAX_DEGREE = 3


class CochainError(ValueError):
    pass


@dataclass(frozen=True)
class AlphaParam:
    value: object

    def __post_init__(self):
        if not self.value > 0:
            raise ValueError("alpha must be positive")

    @property
    def exact(self):
        return self.value == 1

    def __float__(self):
        return float(self.value)


def as_alpha(a):
    if isinstance(a, AlphaParam):
        return a
    if isinstance(a, str):
        a = Fraction(a)
    if a == 1:
        return AlphaParam(1)
    return AlphaParam(float(a))


def power(p, alpha):
    """p ** alpha, exact for alpha = 1."""
    if alpha.exact:
        return p
    return float(p) ** alpha.value if p else 0.0


def entropy(alpha, weights):
    """Shannon (alpha = 1, natural log, exact) or structural alpha-entropy."""
    alpha = as_alpha(alpha)
    weights = getattr(weights, "weights", weights)
    if alpha.exact:
        out = LogLinear()
        for p in weights:
            if p:
                out = out - LogLinear.log(p) * Fraction(p)
        return out
    a = alpha.value
    return (sum(float(p) ** a for p in weights if p) - 1.0) / (1.0 - a)


def entropy_float(alpha, weights):
    return float(entropy(alpha, weights))


def binary_entropy(alpha, p):
    """s_alpha(p) as a float."""
    a = float(as_alpha(alpha))
    p = float(p)
    if a == 1.0:
        return -sum(t * math.log(t) for t in (p, 1.0 - p) if t > 0)
    return (p ** a + (1.0 - p) ** a - 1.0) / (1.0 - a)


def act(alpha, S, y, func, x, weights):
    """(Y.func)(P) for P on x: sum_y P(Y=y)^alpha func(P|Y=y); P(Y=y)=0 drops."""
    im = S.index_map(x, y)
    masses = push_weights(weights, im, S.size(y))
    total = 0
    for j, m in enumerate(masses):
        if m:
            total = total + power(m, alpha) * func(condition_weights(weights, im, j))
    return total


def monoid_action(alpha, S, y, f, x):
    """The function P -> (Y.f)(P) on laws of x, for f a function of laws on x."""
    alpha = as_alpha(alpha)
    if not S.has_arrow(x, y):
        raise CochainError("%r is not coarser than %r" % (y, x))
    return lambda w: act(alpha, S, y, f, x, w)


def valid_tuples(S, n):
    """Generator tuples of length n whose product exists in S."""
    return [t for t in iproduct(S.ids, repeat=n) if S.product_of(t) is not None]


class Cochain:
    """A degree-n cochain: tables[tuple][weights] -> value.

    ``fill(tuple, weights)`` computes missing entries on demand (memoized);
    a cochain without ``fill`` raises on missing entries.
    """

    def __init__(self, S, Q, alpha, degree, tables=None, fill=None, label=""):
        if degree < 0:
            raise CochainError("negative degree")
        self.S = S
        self.Q = Q
        self.alpha = as_alpha(alpha)
        self.degree = degree
        self.tables = tables if tables is not None else {}
        self.fill = fill
        self.label = label
        self._prod = {}

    def product(self, tup):
        if tup not in self._prod:
            p = self.S.product_of(tup)
            if p is None:
                raise CochainError("no product for %r" % (tup,))
            self._prod[tup] = p
        return self._prod[tup]

    def value(self, tup, weights):
        """Value at a law on the product of ``tup``."""
        table = self.tables.get(tup)
        if table is None:
            if self.fill is None:
                raise CochainError("no table for %r" % (tup,))
            table = self.tables[tup] = {}
        v = table.get(weights)
        if v is None:
            if self.fill is None:
                raise CochainError("no entry for %r at %s" % (tup, law_key(weights)))
            v = table[weights] = self.fill(tup, weights)
        return v

    def at(self, tup, base, weights):
        """Value at a law on ``base``, a variable refining the product of ``tup``."""
        p = self.product(tup)
        if p != base:
            weights = push_weights(weights, self.S.index_map(base, p), self.S.size(p))
        return self.value(tup, weights)

    def materialize(self, N, tuples=None):
        for tup in tuples if tuples is not None else valid_tuples(self.S, self.degree):
            for w in self.Q.grid(self.product(tup), N):
                self.value(tup, w)
        return self

    def to_dict(self):
        from .exact import exact_str
        return {
            "degree": self.degree,
            "alpha": _alpha_str(self.alpha),
            "tables": {
                "|".join(t): {law_key(w): exact_str(v) for w, v in sorted(tab.items())}
                for t, tab in sorted(self.tables.items())
            },
        }


def _alpha_str(alpha):
    return "1" if alpha.exact else "%.12g" % float(alpha.value)


def cochain_from_dict(S, Q, d):
    from .probability import parse_law_key
    alpha = as_alpha(d["alpha"])
    tables = {}
    for k, tab in d["tables"].items():
        tup = tuple(k.split("|")) if k else ()
        tables[tup] = {parse_law_key(lk): _parse_value(v, alpha) for lk, v in tab.items()}
    return Cochain(S, Q, alpha, int(d["degree"]), tables)


def _parse_value(v, alpha):
    if isinstance(v, str) and "/" in v and "log" not in v:
        return Fraction(v)
    return float(v)


def coboundary_value(f, tup, weights):
    """(delta f)[tup] at a law on the product of tup."""
    S, alpha = f.S, f.alpha
    n = len(tup) - 1
    W = S.product_of(tup)
    if W is None:
        raise CochainError("no product for %r" % (tup,))
    rest = tup[1:]
    total = act(alpha, S, tup[0], lambda c: f.at(rest, W, c), W, weights)
    for k in range(1, n + 1):
        m = S.meet(tup[k - 1], tup[k])
        merged = tup[:k - 1] + (m,) + tup[k + 1:]
        term = f.at(merged, W, weights)
        total = total + term if k % 2 == 0 else total - term
    last = f.at(tup[:-1], W, weights)
    return total + last if (n + 1) % 2 == 0 else total - last


def coboundary(f, max_degree=MAX_DEGREE):
    if f.degree + 1 > max_degree:
        raise CochainError("degree %d exceeds the maximum %d" % (f.degree + 1, max_degree))
    return Cochain(f.S, f.Q, f.alpha, f.degree + 1, fill=lambda t, w: coboundary_value(f, t, w),
                   label="d(%s)" % f.label)


@dataclass
class Residual:
    value: float
    witness: tuple
    exact_zero: bool
    count: int


def cocycle_residual(f, N, tuples=None, max_degree=MAX_DEGREE + 1):
    """Max |delta f| over generator tuples and grid laws on their products."""
    coboundary(f, max_degree=max_degree)   # degree guard
    S = f.S
    worst, witness, exact0, count = 0.0, None, True, 0
    for tup in tuples if tuples is not None else valid_tuples(S, f.degree + 1):
        W = S.product_of(tup)
        for w in f.Q.grid(W, N):
            v = coboundary_value(f, tup, w)
            count += 1
            if not is_exact_zero(v):
                exact0 = False
            a = abs(float(v))
            if witness is None or a > worst:
                worst, witness = a, (tup, law_key(w))
    return Residual(worst, witness, exact0, count)


def entropy_cochain(alpha, S, Q):
    alpha = as_alpha(alpha)
    return Cochain(S, Q, alpha, 1, fill=lambda t, w: entropy(alpha, w), label="S")


def constant_cochain(S, Q, alpha, K):
    return Cochain(S, Q, alpha, 0, tables={(): {(Fraction(1),): K}}, label="K")


def function_cochain(S, Q, alpha, func, degree=1, label="f"):
    """Degree-n cochain from func(tuple, weights)."""
    return Cochain(S, Q, alpha, degree, fill=func, label=label)


def _stable_rng(*parts):
    h = hashlib.sha256(repr(parts).encode()).digest()
    return random.Random(int.from_bytes(h[:8], "big"))


def random_cochain(S, Q, alpha, degree, N, seed=0, scale=10, lazy=False):
    """Cochain with pseudo-random values on every tuple and grid law.

    Values are small rationals when alpha = 1 and floats otherwise; each
    entry depends only on (seed, tuple, law) so the tables are reproducible.
    With ``lazy`` entries are drawn when first read (grid laws only).
    """
    alpha = as_alpha(alpha)

    def draw(tup, w):
        if common_denominator(w) > N:
            raise CochainError("law %s is off the grid N=%d" % (law_key(w), N))
        r = _stable_rng(seed, tup, law_key(w))
        if alpha.exact:
            return Fraction(r.randint(-scale * 6, scale * 6), r.randint(1, 6))
        return r.uniform(-scale, scale)

    f = Cochain(S, Q, alpha, degree, fill=draw, label="random")
    if not lazy:
        f.materialize(N)
        f.fill = None
    return f


# -- pullback ---------------------------------------------------------------

def pullback_cochain(phi, f, Q_source):
    """phi^* f on the source structure (value maps must be bijections)."""
    S, T = phi.source, phi.target
    for x in S.ids:
        vals = phi.value_maps[x]
        if len(set(vals.values())) != S.size(x) or S.size(x) != T.size(phi.object_map[x]):
            raise CochainError("value map of %r is not a bijection" % (x,))
    perm = {}
    for x in S.ids:
        pos = {v: i for i, v in enumerate(T.values(phi.object_map[x]))}
        perm[x] = tuple(pos[phi.value_maps[x][v]] for v in S.values(x))

    def fill(tup, w):
        W = S.product_of(tup)
        ttup = tuple(phi.object_map[x] for x in tup)
        TW = T.product_of(ttup)
        if TW != phi.object_map[W]:
            raise CochainError("morphism does not preserve the product of %r" % (tup,))
        tw = [Fraction(0)] * len(w)
        for i, j in enumerate(perm[W]):
            tw[j] = w[i]
        tw = tuple(tw)
        if not f.Q[TW].admits(tw):
            raise CochainError("transported law leaves Q at %r" % (TW,))
        return f.value(ttup, tw)

    return Cochain(S, Q_source, f.alpha, f.degree, fill=fill, label="pullback(%s)" % f.label)


# -- bar complex --------------------------------------------------------------

class BarChainElement:
    """Formal rational combination of Y[X1|...|Xn] over a base variable."""

    def __init__(self, S, base, terms=None):
        self.S = S
        self.base = base
        self.terms = {}
        for (y, tup), c in (terms or {}).items():
            self.add(y, tup, c)

    def add(self, y, tup, c):
        S = self.S
        for x in (y,) + tuple(tup):
            if not S.has_arrow(self.base, x):
                raise CochainError("%r is not in the monoid of %r" % (x, self.base))
        key = (y, tuple(tup))
        v = self.terms.get(key, 0) + Fraction(c)
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)

    def degree(self):
        ds = {len(t) for (_, t) in self.terms}
        return ds.pop() if len(ds) == 1 else (None if not ds else ds)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return self.base == other.base and self.terms == other.terms


def generator(S, base, tup):
    return BarChainElement(S, base, {(S.terminal, tuple(tup)): 1})


def bar_boundary(elem):
    S = elem.S
    out = BarChainElement(S, elem.base)
    for (y, tup), c in elem.terms.items():
        n = len(tup)
        if n == 0:
            continue
        out.add(S.meet(y, tup[0]), tup[1:], c)
        for k in range(1, n):
            merged = tup[:k - 1] + (S.meet(tup[k - 1], tup[k]),) + tup[k + 1:]
            out.add(y, merged, c if k % 2 == 0 else -c)
        out.add(y, tup[:-1], c if n % 2 == 0 else -c)
    return out


def augmentation(elem):
    """epsilon on degree-0 chains, monoid acting trivially."""
    return sum((c for (y, tup), c in elem.terms.items() if len(tup) == 0), Fraction(0))


# -- semidirect sum ----------------------------------------------------------

@dataclass
class SemidirectVerdict:
    splitting: bool
    defect: float
    witness: tuple
    trials: int
    cocycle_residual: float = None


def semidirect_product(alpha, S, base, a, b):
    """(m1, l1) . (m2, l2) = (m1 + l1.m2, l1 l2) with functions on laws of ``base``."""
    m1, l1 = a
    m2, l2 = b
    return (lambda w: m1(w) + act(alpha, S, l1, m2, base, w)), S.meet(l1, l2)


def semidirect_check(d, N, trials=200, seed=0, tol=1e-12, with_residual=True):
    """Is X -> (d[X], X) multiplicative in the semidirect sum?"""
    S, alpha = d.S, d.alpha
    rng = random.Random(seed)
    pairs = [t for t in valid_tuples(S, 2)]
    triples = [t for t in valid_tuples(S, 3)]
    worst, witness = 0.0, None

    def phi(x, base):
        return (lambda w: d.at((x,), base, w)), x

    for i in range(trials):
        tup = rng.choice(pairs) if i % 2 == 0 or not triples else rng.choice(triples)
        base = S.product_of(tup)
        grid = d.Q.grid(base, N)
        w = grid[rng.randrange(len(grid))]
        acc = phi(tup[0], base)
        for x in tup[1:]:
            acc = semidirect_product(alpha, S, base, acc, phi(x, base))
        lhs = acc[0](w)
        rhs = d.at((acc[1],), base, w)
        if acc[1] != base:
            raise CochainError("monoid product mismatch")
        e = abs(float(lhs - rhs))
        if witness is None or e > worst:
            worst, witness = e, (tup, law_key(w))
    res = None
    if with_residual:
        res = cocycle_residual(d, N).value
    return SemidirectVerdict(worst <= tol, worst, witness, trials, res)


def factor_set_defect(a, N, trials=200, seed=0):
    """Associativity defect of (X,f).(Y,g) = (XY, f + X.g + a(X,Y)).

    The defect on a triple is a(X,Y) + a(XY,Z) - X.a(Y,Z) - a(X,YZ).
    """
    S, alpha = a.S, a.alpha
    rng = random.Random(seed)
    triples = valid_tuples(S, 3)
    worst, witness, exact0 = 0.0, None, True
    for _ in range(trials):
        x, y, z = rng.choice(triples)
        base = S.product_of((x, y, z))
        grid = a.Q.grid(base, N)
        w = grid[rng.randrange(len(grid))]
        v = (a.at((x, y), base, w) + a.at((S.meet(x, y), z), base, w)
             - act(alpha, S, x, lambda c: a.at((y, z), base, c), base, w)
             - a.at((x, S.meet(y, z)), base, w))
        if not is_exact_zero(v):
            exact0 = False
        e = abs(float(v))
        if witness is None or e > worst:
            worst, witness = e, ((x, y, z), law_key(w))
    return worst, witness, exact0
