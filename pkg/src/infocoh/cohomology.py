"""H^0, the grid Z^1 system, non-degenerate products and structural H^1."""

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cochain import as_alpha, entropy, power
from .exact import is_exact_zero
from .linalg import (
    LinearSystem, echelon, exact_nullspace, float_nullspace, vector_rank,
)
from .probability import condition_weights, law_key, push_weights
from .structure import analyze_minimal


# -- H^0 -------------------------------------------------------------------

@dataclass
class H0Result:
    dim: int
    witness: object


def h0_compute(alpha, S, Q, N=2):
    """dim H^0: 1 at alpha = 1; otherwise 0 iff Q holds a non-atomic law."""
    alpha = as_alpha(alpha)
    if alpha.exact:
        return H0Result(1, "constant cochain 1")
    for x in S.ids:
        for sup in Q[x].index_supports:
            if len(sup) >= 2 and N >= 2:
                a, b = sorted(sup)[:2]
                w = [Fraction(0)] * S.size(x)
                w[a] = w[b] = Fraction(1, 2)
                return H0Result(0, (x, law_key(w)))
    return H0Result(1, "only atomic laws")


# -- Z^1 ------------------------------------------------------------------

def nonterminal(S):
    return [x for x in S.ids if x != S.terminal]


def z1_pairs(S):
    """Ordered pairs (Y, Z) of non-terminal objects whose meet exists."""
    xs = nonterminal(S)
    return [(y, z) for y in xs for z in xs if S.meet(y, z) is not None]


def assemble_z1_system(alpha, S, Q, N):
    """Rows f[YZ](P) - f[Z](Z*P) - sum_z P(z)^a f[Y](Y*(P|Z=z)) = 0."""
    alpha = as_alpha(alpha)
    unknowns = [(x, w) for x in nonterminal(S) for w in Q.grid(x, N)]
    system = LinearSystem(unknowns, exact=alpha.exact)
    col = system.column

    def c(x, w):
        try:
            return col[(x, w)]
        except KeyError:
            raise RuntimeError("law %s on %r is not on the grid" % (law_key(w), x)) from None

    one = Fraction(1) if alpha.exact else 1.0
    for y, z in z1_pairs(S):
        W = S.meet(y, z)
        imz, imy = S.index_map(W, z), S.index_map(W, y)
        for w in Q.grid(W, N):
            coeffs = [(c(W, w), one)]
            pz = push_weights(w, imz, S.size(z))
            coeffs.append((c(z, pz), -one))
            for j, m in enumerate(pz):
                if m:
                    cw = condition_weights(w, imz, j)
                    coeffs.append((c(y, push_weights(cw, imy, S.size(y))), -power(m, alpha)))
            system.add_row(coeffs, label=(y, z, law_key(w)))
    return system


def entropy_vector(system, alpha):
    alpha = as_alpha(alpha)
    return [entropy(alpha, w) for (_, w) in system.unknowns]


def component_entropy_vectors(system, alpha, comps):
    """S_alpha restricted to each component of S* (zero elsewhere)."""
    alpha = as_alpha(alpha)
    out = []
    for comp in comps:
        cs = set(comp)
        out.append([entropy(alpha, w) if x in cs else 0 for (x, w) in system.unknowns])
    return out


def prime_components(vec):
    """Split a vector of exact entropies by the primes in their logarithms.

    An exact Shannon entropy is a rational combination of log q over primes q,
    and the logs are independent over Q, so each coefficient vector solves
    any rational system the whole vector solves.
    """
    primes = sorted({k for v in vec for k in v.terms if k != 1})
    return primes, [[Fraction(v.terms.get(q, 0)) for v in vec] for q in primes]


@dataclass
class MembershipResult:
    residual: float
    exact_zero: bool
    worst_row: object


def nullspace_membership(system, vec):
    res = system.apply(vec)
    worst, row = 0.0, None
    exact0 = True
    for lab, r in zip(system.row_labels, res):
        if not is_exact_zero(r):
            exact0 = False
        a = abs(float(r))
        if row is None or a > worst:
            worst, row = a, lab
    return MembershipResult(worst, exact0, row)


@dataclass
class Z1Dimensions:
    z1: int
    b1: int
    h1: int
    rank: int
    method: str
    gap: float = None
    basis: list = None


def z1_h1_dimensions(system, alpha, S=None, Q=None, N=None, keep_basis=False):
    alpha = as_alpha(alpha)
    if alpha.exact:
        ech = echelon(system.rows, system.n_cols)
        z1 = system.n_cols - ech.rank
        basis = exact_nullspace(system, ech) if keep_basis else None
        rank, method, gap = ech.rank, "exact fraction-free elimination", None
        b1 = 0
    else:
        ns = float_nullspace(system)
        z1 = system.n_cols - ns.rank
        rank, method, gap = ns.rank, "svd rel 1e-8", ns.gap
        basis = [ns.basis[:, i] for i in range(ns.basis.shape[1])] if keep_basis else None
        b1 = 1 if any(sum(1 for p in w if p) >= 2 for (_, w) in system.unknowns) else 0
    return Z1Dimensions(z1, b1, z1 - b1, rank, method, gap, basis)


@dataclass
class GridTrend:
    Ns: list
    nullity: list
    projected: list
    shared_unknowns: int

    @property
    def monotone(self):
        return all(a >= b for a, b in zip(self.projected, self.projected[1:]))


def grid_dimension_trend(alpha, S, Q, Ns):
    """Nullity at each N and the dimension of its projection on the first grid's unknowns.

    Rows of a coarser grid are rows of every finer grid, so the projected
    dimension can only drop as N grows.
    """
    Ns = sorted(Ns)
    alpha = as_alpha(alpha)
    base = assemble_z1_system(alpha, S, Q, Ns[0])
    shared = base.unknowns
    nullity, projected = [], []
    for N in Ns:
        sysN = base if N == Ns[0] else assemble_z1_system(alpha, S, Q, N)
        d = z1_h1_dimensions(sysN, alpha, keep_basis=True)
        nullity.append(d.z1)
        cols = [sysN.column[u] for u in shared]
        projected.append(vector_rank(d.basis, cols, exact=alpha.exact))
    return GridTrend(Ns, nullity, projected, len(shared))


# -- elementary blocks ----------------------------------------------------

@dataclass
class BlockChain:
    row_order: list
    col_order: list
    blocks: list            # (r, c) top-left positions in the chosen order
    cells: list             # the three complete cells of each block, as (i, j) array positions
    overlaps: list          # shared positions of consecutive blocks

    def to_dict(self):
        return {
            "row_order": [_plain(v) for v in self.row_order],
            "col_order": [_plain(v) for v in self.col_order],
            "blocks": [list(b) for b in self.blocks],
            "cells": [[list(c) for c in cs] for cs in self.cells],
            "overlaps": [[list(c) for c in o] for o in self.overlaps],
        }


def _plain(v):
    return [_plain(t) for t in v] if isinstance(v, tuple) else v


def joint_array(S, x, y):
    """a[i][j] = index in E(XY) of the value over (x_i, y_j), or None."""
    W = S.meet(x, y)
    imx, imy = S.index_map(W, x), S.index_map(W, y)
    a = [[None] * S.size(y) for _ in range(S.size(x))]
    for k, (i, j) in enumerate(zip(imx, imy)):
        a[i][j] = k
    return W, a


def _complete_cells(a, Qw, rows, cols):
    cells = [(i, j) for i in rows for j in cols if a[i][j] is not None]
    for trio in itertools.combinations(cells, 3):
        if Qw.admits_indices(frozenset(a[i][j] for i, j in trio)):
            return trio
    return None


def block_completeness_grid(Q, W, cells, N=3):
    """Grid cross-check: laws of Q_W on the three cells fill the grid of the 2-simplex."""
    target = set()
    for d in range(1, N + 1):
        for i in range(d + 1):
            for j in range(d + 1 - i):
                target.add((Fraction(i, d), Fraction(j, d), Fraction(d - i - j, d)))
    got = set()
    cs = set(cells)
    for w in Q.grid(W, N):
        if all(p == 0 or k in cs for k, p in enumerate(w)):
            got.add(tuple(w[k] for k in cells))
    return got == target


def _chain_for_order(elem, ro, co):
    k, l = len(ro), len(co)
    ok = {}
    for r in range(k - 1):
        rp = frozenset((ro[r], ro[r + 1]))
        for c in range(l - 1):
            ok[(r, c)] = elem.get((rp, frozenset((co[c], co[c + 1]))))
    start, goal = (0, 0), (k - 2, l - 2)
    if not ok.get(start) or not ok.get(goal):
        return None
    prev = {start: None}
    queue = [start]
    while queue:
        p = queue.pop(0)
        if p == goal:
            path = [p]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            return path[::-1]
        r, c = p
        for q in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
            if q not in prev and ok.get(q):
                prev[q] = p
                queue.append(q)
    return None


def nondegenerate_product_check(S, Q, x, y, exhaustive_limit=6, restarts=64, seed=0):
    """A chain of elementary blocks linking the corners of A_XY, or None."""
    if S.terminal in (x, y):
        raise ValueError("factors must be non-terminal")
    W, a = joint_array(S, x, y)
    if W is None:
        raise ValueError("%r and %r have no meet" % (x, y))
    k, l = S.size(x), S.size(y)
    Qw = Q[W]
    elem = {}
    for r1, r2 in itertools.combinations(range(k), 2):
        for c1, c2 in itertools.combinations(range(l), 2):
            t = _complete_cells(a, Qw, (r1, r2), (c1, c2))
            if t:
                elem[(frozenset((r1, r2)), frozenset((c1, c2)))] = t
    if not elem:
        return None
    if max(k, l) <= exhaustive_limit:
        orders = ((ro, co) for ro in itertools.permutations(range(k)) for co in itertools.permutations(range(l)))
    else:
        rng = random.Random(seed)

        def gen():
            for _ in range(restarts):
                ro, co = list(range(k)), list(range(l))
                rng.shuffle(ro)
                rng.shuffle(co)
                yield tuple(ro), tuple(co)
        orders = gen()
    for ro, co in orders:
        path = _chain_for_order(elem, ro, co)
        if path is None:
            continue
        cells, overlaps = [], []
        for (r, c) in path:
            trio = elem[(frozenset((ro[r], ro[r + 1])), frozenset((co[c], co[c + 1])))]
            cells.append(trio)
        for (r1, c1), (r2, c2) in zip(path, path[1:]):
            s1 = {(r1 + i, c1 + j) for i in (0, 1) for j in (0, 1)}
            s2 = {(r2 + i, c2 + j) for i in (0, 1) for j in (0, 1)}
            overlaps.append(sorted(s1 & s2))
        return BlockChain([S.values(x)[i] for i in ro], [S.values(y)[j] for j in co], path, cells, overlaps)
    return None


# -- structural H^1 ---------------------------------------------------------

@dataclass
class H1Prediction:
    verdict: object            # int, "infinite" or "unknown"
    components: list
    certificates: dict = field(default_factory=dict)
    witness: object = None


def _linear_chain(S, m):
    up = [x for x in S.coarser(m) if x != m]
    up.sort(key=lambda x: -len(S.up[x]))
    for a, b in zip(up, up[1:]):
        if not S.has_arrow(a, b):
            return None
    return up


def predict_h1(alpha, S, Q):
    alpha = as_alpha(alpha)
    rep = analyze_minimal(S)
    comps = rep.components
    certs = {}
    all_nd = bool(rep.minimal)
    for m in rep.minimal:
        found = None
        for fx, fy in rep.factorizations[m]:
            ch = nondegenerate_product_check(S, Q, fx, fy)
            if ch is not None:
                found = (fx, fy, ch)
                break
        certs[m] = found
        if found is None:
            all_nd = False
    if all_nd:
        n = len(comps)
        return H1Prediction(n if alpha.exact else n - 1, comps, certs)
    for m in rep.irreducible():
        chain = _linear_chain(S, m)
        if chain is None:
            continue
        for xk in chain:
            im = S.index_map(m, xk)
            for sup in Q[m].index_supports:
                cells = sorted(sup)
                for i, j in itertools.combinations(cells, 2):
                    if im[i] == im[j]:
                        w = [Fraction(0)] * S.size(m)
                        w[i] = w[j] = Fraction(1, 2)
                        witness = {"minimal": m, "chain": [m] + chain, "conditioned_on": xk,
                                   "law": law_key(w)}
                        return H1Prediction("infinite", comps, certs, witness)
    return H1Prediction("unknown", comps, certs)


# -- entropy fits -----------------------------------------------------------

@dataclass
class EntropyFit:
    lambdas: list
    components: list
    residual: float


def fit_entropy_multiples(f, alpha, S, Q, N, comps=None):
    """Least-squares f[X] ~ sum_c lambda_c S_alpha^(c)[X] over grid laws."""
    alpha = as_alpha(alpha)
    comps = comps if comps is not None else analyze_minimal(S).components
    where = {x: i for i, c in enumerate(comps) for x in c}
    rows, target = [], []
    for x in nonterminal(S):
        for w in Q.grid(x, N):
            feat = [0.0] * len(comps)
            feat[where[x]] = float(entropy(alpha, w))
            rows.append(feat)
            target.append(float(f.value((x,), w)))
    A, b = np.array(rows), np.array(target)
    lam, *_ = np.linalg.lstsq(A, b, rcond=None)
    resid = float(np.max(np.abs(A @ lam - b))) if len(b) else 0.0
    return EntropyFit([float(v) for v in lam], comps, resid)


def vector_as_cochain(system, vec, S, Q, alpha):
    """Degree-1 cochain whose tables are the entries of a Z^1-system vector."""
    from .cochain import Cochain
    tables = {(x,): {} for x in S.ids}
    tables[(S.terminal,)] = {(Fraction(1),): 0}
    for (x, w), v in zip(system.unknowns, vec):
        tables[(x,)][w] = v
    return Cochain(S, Q, alpha, 1, tables, label="nullspace")
