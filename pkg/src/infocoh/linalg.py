"""Sparse linear systems: exact fraction-free elimination and a float SVD path."""

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from .exact import is_exact_zero


@dataclass
class LinearSystem:
    """Rows are dicts column -> coefficient; ``unknowns[j]`` labels column j."""
    unknowns: list
    rows: list = field(default_factory=list)
    row_labels: list = field(default_factory=list)
    exact: bool = True

    def __post_init__(self):
        self.column = {u: j for j, u in enumerate(self.unknowns)}

    def add_row(self, coeffs, label=None):
        row = {}
        for j, c in coeffs:
            v = row.get(j, 0) + c
            if is_exact_zero(v) if self.exact else v == 0:
                row.pop(j, None)
            else:
                row[j] = v
        self.rows.append(row)
        self.row_labels.append(label)

    @property
    def n_rows(self):
        return len(self.rows)

    @property
    def n_cols(self):
        return len(self.unknowns)

    def apply(self, vec):
        """Row residuals for a vector given as a dict or a sequence."""
        get = vec.get if isinstance(vec, dict) else vec.__getitem__
        out = []
        for row in self.rows:
            s = 0
            for j, c in row.items():
                s = s + c * get(j)
            out.append(s)
        return out

    def dense(self):
        A = np.zeros((self.n_rows, self.n_cols))
        for i, row in enumerate(self.rows):
            for j, c in row.items():
                A[i, j] = float(c)
        return A


def _integer_row(row):
    den = 1
    for c in row.values():
        d = Fraction(c).denominator
        den = den * d // gcd(den, d)
    return {j: int(Fraction(c) * den) for j, c in row.items()}


def _primitive(row):
    g = 0
    for c in row.values():
        g = gcd(g, c)
        if g == 1:
            return row
    if g > 1:
        return {j: c // g for j, c in row.items()}
    return row


@dataclass
class Echelon:
    pivots: dict   # leading column -> integer row with that leading column
    n_cols: int

    @property
    def rank(self):
        return len(self.pivots)

    def free_columns(self):
        return [j for j in range(self.n_cols) if j not in self.pivots]


def echelon(rows, n_cols):
    """Fraction-free incremental echelon form of rational rows.

    Each incoming row is cleared against existing pivots by integer cross
    multiplication r <- p_c r - r_c p and then divided by its content.
    """
    pivots = {}
    for row in rows:
        r = _primitive(_integer_row(row))
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                if r[c] < 0:
                    r = {j: -v for j, v in r.items()}
                pivots[c] = r
                break
            a, b = p[c], r[c]
            new = {j: a * v for j, v in r.items()}
            for j, v in p.items():
                t = new.get(j, 0) - b * v
                if t:
                    new[j] = t
                else:
                    new.pop(j, None)
            r = _primitive(new)
    return Echelon(pivots, n_cols)


def exact_rank(system):
    return echelon(system.rows, system.n_cols).rank


def exact_nullspace(system, ech=None):
    """Basis of the rational nullspace, one vector (list of Fractions) per free column."""
    ech = ech or echelon(system.rows, system.n_cols)
    order = sorted(ech.pivots, reverse=True)
    basis = []
    for f in ech.free_columns():
        v = [Fraction(0)] * system.n_cols
        v[f] = Fraction(1)
        for c in order:
            row = ech.pivots[c]
            s = sum((Fraction(a) * v[j] for j, a in row.items() if j != c), Fraction(0))
            v[c] = -s / row[c]
        basis.append(v)
    return basis


def bareiss_rank(matrix):
    """Rank of a dense rational matrix by Bareiss fraction-free elimination."""
    M = [list(r) for r in matrix]
    if not M:
        return 0
    den = 1
    for r in M:
        for c in r:
            d = Fraction(c).denominator
            den = den * d // gcd(den, d)
    M = [[int(Fraction(c) * den) for c in r] for r in M]
    nr, nc = len(M), len(M[0])
    prev = 1
    rank = 0
    for col in range(nc):
        piv = next((i for i in range(rank, nr) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][col]
        for i in range(rank + 1, nr):
            a = M[i][col]
            Mi, Mr = M[i], M[rank]
            for j in range(col, nc):
                Mi[j] = (p * Mi[j] - a * Mr[j]) // prev
        prev = p
        rank += 1
        if rank == nr:
            break
    return rank


def dense_rows(system):
    out = []
    for row in system.rows:
        r = [0] * system.n_cols
        for j, c in row.items():
            r[j] = c
        out.append(r)
    return out


@dataclass
class FloatNullspace:
    rank: int
    basis: np.ndarray
    singular_values: np.ndarray
    gap: float


def float_nullspace(system, rel_tol=1e-8):
    A = system.dense()
    if A.size == 0:
        return FloatNullspace(0, np.eye(system.n_cols), np.zeros(0), float("inf"))
    _, s, vt = np.linalg.svd(A, full_matrices=True)
    smax = s[0] if len(s) else 0.0
    rank = int(np.sum(s > rel_tol * smax)) if smax > 0 else 0
    if 0 < rank < len(s) and s[rank] > 0:
        gap = s[rank - 1] / s[rank]
    else:
        gap = float("inf")
    if gap < 1e3:
        warnings.warn("weak spectral gap %.3g in nullspace computation" % gap)
    return FloatNullspace(rank, vt[rank:].T, s, gap)


def vector_rank(vectors, columns=None, exact=True):
    """Rank of a family of vectors, optionally restricted to some coordinates."""
    if columns is not None:
        vectors = [[v[j] for j in columns] for v in vectors]
    if not vectors:
        return 0
    if exact:
        n = len(vectors[0])
        return echelon([{j: c for j, c in enumerate(v) if c} for v in vectors], n).rank
    A = np.array(vectors, dtype=float)
    s = np.linalg.svd(A, compute_uv=False)
    return int(np.sum(s > 1e-8 * s[0])) if len(s) and s[0] > 0 else 0
