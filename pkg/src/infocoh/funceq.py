"""The fundamental functional equation on Farey grids and the modular group.

u(1-x) + (1-x)^a u(y/(1-x)) = u(y) + (1-y)^a u((1-x-y)/(1-y)),  u(0) = u(1) = 0.

Zero propagation works with h(x) = u(x) - u(1-x) extended with period 1:
h(x) = 0 forces h(-1/x) = 0 and h(1/x) = 0 (the two homographies
x -> (2x-1)/x and x -> (1-x)/x modulo 1) and their inverses.
"""

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cochain import as_alpha, binary_entropy, power
from .exact import LogLinear
from .linalg import LinearSystem


def farey_grid(N):
    """Reduced fractions a/b in [0, 1] with b <= N, sorted."""
    pts = {Fraction(a, b) for b in range(1, N + 1) for a in range(b + 1)}
    return sorted(pts)


# -- grid system -------------------------------------------------------------

def assemble_funceq_system(alpha, N):
    if N < 2:
        raise ValueError("N must be at least 2")
    alpha = as_alpha(alpha)
    grid = farey_grid(N)
    system = LinearSystem(grid, exact=alpha.exact)
    col = system.column
    one = Fraction(1) if alpha.exact else 1.0
    system.add_row([(col[Fraction(0)], one)], label="u(0)")
    system.add_row([(col[Fraction(1)], one)], label="u(1)")
    seen = set()
    for d in range(1, N + 1):
        for a in range(d):
            for c in range(d - a + 1):
                if c >= d:
                    continue
                x, y = Fraction(a, d), Fraction(c, d)
                if (x, y) in seen:
                    continue
                seen.add((x, y))
                coeffs = [
                    (col[1 - x], one),
                    (col[y / (1 - x)], power(1 - x, alpha)),
                    (col[y], -one),
                    (col[(1 - x - y) / (1 - y)], -power(1 - y, alpha)),
                ]
                system.add_row(coeffs, label=(str(x), str(y)))
    return system


def entropy_sample(alpha, grid):
    """s_alpha on the grid: exact LogLinear at alpha = 1, floats otherwise."""
    alpha = as_alpha(alpha)
    out = []
    for p in grid:
        if alpha.exact:
            v = LogLinear()
            for t in (p, 1 - p):
                if t:
                    v = v - LogLinear.log(t) * t
            out.append(v)
        else:
            out.append(binary_entropy(alpha.value, p))
    return out


def assemble_two_function_system(alpha, N):
    """Grid system for two functions f1, f2 on the 1-simplex.

    Unknowns ("f1", p) and ("f2", p) stand for f_i(p, 1-p); each law
    (p0, p1, p2) with common denominator <= N, p1 < 1, p2 < 1 gives
    (1-p2)^a f1(p0/(1-p2)) - f1(1-p1) - (1-p1)^a f2(p0/(1-p1)) + f2(1-p2) = 0.
    """
    alpha = as_alpha(alpha)
    grid = farey_grid(N)
    system = LinearSystem([(k, p) for k in ("f1", "f2") for p in grid], exact=alpha.exact)
    col = system.column
    one = Fraction(1) if alpha.exact else 1.0
    for k in ("f1", "f2"):
        for p in (Fraction(0), Fraction(1)):
            system.add_row([(col[(k, p)], one)], label=(k, str(p)))
    seen = set()
    for d in range(1, N + 1):
        for a in range(d + 1):
            for b in range(d + 1 - a):
                p0, p1, p2 = Fraction(a, d), Fraction(b, d), Fraction(d - a - b, d)
                if p1 == 1 or p2 == 1 or (p0, p1) in seen:
                    continue
                seen.add((p0, p1))
                system.add_row([
                    (col[("f1", p0 / (1 - p2))], power(1 - p2, alpha)),
                    (col[("f1", 1 - p1)], -one),
                    (col[("f2", p0 / (1 - p1))], -power(1 - p1, alpha)),
                    (col[("f2", 1 - p2)], one),
                ], label=(str(p0), str(p1), str(p2)))
    return system


# -- closed form ---------------------------------------------------------------

def closed_form(alpha, K):
    """The normalized solution with u(1/2) = K."""
    a = float(as_alpha(alpha))
    if a == 1.0:
        return lambda x: K / math.log(2) * binary_entropy(1, x)
    c = K / (2.0 ** (1.0 - a) - 1.0)
    return lambda x: c * (x ** a + (1.0 - x) ** a - 1.0)


def closed_form_check(alpha, K, sample_count, seed=0):
    """Max residual of both equation forms at random admissible (x, y)."""
    a = float(as_alpha(alpha))
    u = closed_form(alpha, K)
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(sample_count):
        x = rng.random()
        y = rng.random() * (1.0 - x)
        if x >= 1.0 or y >= 1.0:
            continue
        sym = u(x) + (1 - x) ** a * u(y / (1 - x)) - u(y) - (1 - y) ** a * u(x / (1 - y))
        base = u(1 - x) + (1 - x) ** a * u(y / (1 - x)) - u(y) - (1 - y) ** a * u((1 - x - y) / (1 - y))
        worst = max(worst, abs(sym), abs(base))
    return worst, u(0.5)


# -- zero propagation -----------------------------------------------------------

@dataclass
class Propagation:
    N: int
    M: int
    forced: set
    covered: bool
    coverage: float
    ambient_tried: list


def _neighbours(r, M):
    """Images of h-zeros at r (mod 1) under x -> +-1/x on all translates r + k."""
    a, b = r.numerator, r.denominator
    out = []
    k = -((M + a) // b) - 1
    while True:
        den = a + k * b
        if den > M:
            break
        if den != 0 and abs(den) <= M:
            v = Fraction(b, den)
            out.append(v - math.floor(v))
            out.append((-v) - math.floor(-v))
        k += 1
    return out


def forward_images(x):
    """(2x-1)/x and (1-x)/x reduced mod 1, for x in (0, 1]."""
    ims = [(2 * x - 1) / x, (1 - x) / x]
    return [v - math.floor(v) for v in ims]


def propagate(M):
    """Closure of {0} (= {0, 1} mod 1) inside the grid of denominator <= M."""
    forced = {Fraction(0)}
    frontier = [Fraction(0)]
    while frontier:
        nxt = []
        for r in frontier:
            for v in _neighbours(r, M):
                if v.denominator <= M and v not in forced:
                    forced.add(v)
                    nxt.append(v)
        frontier = nxt
    return forced | {Fraction(1)}


def symmetry_propagation(alpha, N, M=None):
    """Forced-zero subset of F_N; doubles the ambient bound from N up to 64N if M is None."""
    grid = farey_grid(N)
    tried = []
    Ms = [M] if M is not None else [N * 2 ** i for i in range(7)]
    forced = set()
    for m in Ms:
        if m < N:
            raise ValueError("ambient bound must be at least N")
        tried.append(m)
        forced = propagate(m)
        if all(q in forced for q in grid):
            break
    hit = [q for q in grid if q in forced]
    return Propagation(N, tried[-1], set(hit), len(hit) == len(grid), len(hit) / len(grid), tried)


# -- modular group ---------------------------------------------------------------

class ProjectiveMatrix:
    """Integer 2x2 matrix of determinant +-1 up to global sign."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def rows(cls, r1, r2):
        return cls(r1[0], r1[1], r2[0], r2[1])

    def det(self):
        return self.a * self.d - self.b * self.c

    def __matmul__(self, o):
        return ProjectiveMatrix(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                                self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inv(self):
        dt = self.det()
        return ProjectiveMatrix(self.d * dt, -self.b * dt, -self.c * dt, self.a * dt)

    def __pow__(self, n):
        out = ProjectiveMatrix(1, 0, 0, 1)
        base = self if n >= 0 else self.inv()
        for _ in range(abs(n)):
            out = out @ base
        return out

    def normalized(self):
        e = (self.a, self.b, self.c, self.d)
        first = next(v for v in e if v != 0)
        return e if first > 0 else tuple(-v for v in e)

    def __eq__(self, o):
        return self.normalized() == o.normalized()

    def __hash__(self):
        return hash(self.normalized())

    def act(self, p, q):
        """Image of the projective point [p:q]."""
        return self.a * p + self.b * q, self.c * p + self.d * q

    def entries(self):
        return [[self.a, self.b], [self.c, self.d]]

    def __repr__(self):
        return "[[%d,%d],[%d,%d]]" % (self.a, self.b, self.c, self.d)


I = ProjectiveMatrix(1, 0, 0, 1)
S_MAT = ProjectiveMatrix(0, -1, 1, 0)
T_MAT = ProjectiveMatrix(1, 1, 0, 1)
A_MAT = ProjectiveMatrix(2, -1, 1, 0)
B_MAT = ProjectiveMatrix(-1, 1, 1, 0)
B2_MAT = B_MAT @ B_MAT
P_MAT = ProjectiveMatrix(0, 1, -1, 1)


def modular_identities():
    S, T, A, B2, P = S_MAT, T_MAT, A_MAT, B2_MAT, P_MAT
    return [
        ("S^2 = I", S @ S, I),
        ("(ST)^3 = I", (S @ T) ** 3, I),
        ("P = S^-1 T^-1", P, S.inv() @ T.inv()),
        ("P A P^-1 = T^-1", P @ A @ P.inv(), T.inv()),
        ("P B^-2 P^-1 = [[3,-1],[1,0]]", P @ B2.inv() @ P.inv(), ProjectiveMatrix(3, -1, 1, 0)),
        ("T = B^2 A^-1 B^-2", T, B2 @ A.inv() @ B2.inv()),
        ("S = B^2 A B^-2 A^2 B^-2", S, B2 @ A @ B2.inv() @ A @ A @ B2.inv()),
    ]


def modular_group_check():
    """[(name, passed)] for the seven identities, exact up to sign."""
    return [(name, lhs == rhs) for name, lhs, rhs in modular_identities()]


LETTERS = {
    "A": A_MAT, "A^-1": A_MAT.inv(), "B^2": B2_MAT, "B^-2": B2_MAT.inv(),
}
T_WORD = ["B^2", "A^-1", "B^-2"]
S_WORD = ["B^2", "A", "B^-2", "A", "A", "B^-2"]
INVERSE = {"A": "A^-1", "A^-1": "A", "B^2": "B^-2", "B^-2": "B^2"}


def invert_word(w):
    return [INVERSE[s] for s in reversed(w)]


def reduce_word(w):
    out = []
    for s in w:
        if out and INVERSE[out[-1]] == s:
            out.pop()
        else:
            out.append(s)
    return out


def evaluate_word(w):
    m = I
    for s in w:
        m = m @ LETTERS[s]
    return m


def bezout_matrix(p, q):
    """[[x,p],[y,q]] with xq - yp = 1; x is the least non-negative choice when p != 0."""
    if gcd(p, q) != 1:
        raise ValueError("[%d:%d] is not reduced" % (p, q))
    if p == 0:
        return ProjectiveMatrix(q, 0, 0, q)
    x = pow(q, -1, abs(p))
    y = (x * q - 1) // p
    return ProjectiveMatrix(x, p, y, q)


def st_word(g):
    """g as a list of ("S", 1) / ("T", k) factors, up to sign."""
    word = []
    a, b, c, d = g.a, g.b, g.c, g.d
    while c != 0:
        q = a // c
        word.append(("T", q))
        a, b = a - q * c, b - q * d
        word.append(("S", 1))
        a, b, c, d = c, d, -a, -b
    if a < 0:
        a, b, c, d = -a, -b, -c, -d
    word.append(("T", b * a))
    return word


def st_to_generators(word):
    out = []
    for sym, k in word:
        base = T_WORD if sym == "T" else S_WORD
        piece = base if k > 0 else invert_word(base)
        for _ in range(abs(k)):
            out.extend(piece)
    return reduce_word(out)


@dataclass
class OrbitWitness:
    g: ProjectiveMatrix
    word: list
    verified: bool


def orbit_witness(p, q):
    g = bezout_matrix(p, q)
    w = st_to_generators(st_word(g))
    val = evaluate_word(w)
    ip, iq = g.act(0, 1)
    ok = val == g and ip * q == iq * p
    return OrbitWitness(g, w, ok)
