"""Classical models: a sample space and one surjective random variable per object."""

from dataclasses import dataclass
from itertools import combinations

from .partition import Partition, canonical_assignment, partition_product
from .structure import limit_sections, pair_id


@dataclass
class ClassicalModel:
    """``point_values[X][i]`` is the value of variable X at sample point i."""
    structure: object
    omega: tuple
    point_values: dict

    def rho(self, x):
        return Partition(canonical_assignment(self.point_values[x]))


@dataclass
class ModelReport:
    ok: bool
    colliding: tuple = None
    bad_values: str = None
    bad_meet: tuple = None
    bad_arrow: tuple = None


def check_model(model):
    """Check injectivity on objects, value bijections, naturality and meets."""
    S = model.structure
    rho = {x: model.rho(x) for x in S.ids}
    seen = {}
    for x in S.ids:
        if rho[x] in seen:
            return ModelReport(False, colliding=(seen[rho[x]], x))
        seen[rho[x]] = x
    for x in S.ids:
        if set(model.point_values[x]) != set(S.values(x)):
            return ModelReport(False, bad_values=x)
    for (x, y), m in S.maps.items():
        for vx, vy in zip(model.point_values[x], model.point_values[y]):
            if m[vx] != vy:
                return ModelReport(False, bad_arrow=(x, y))
    for x, y in combinations(S.ids, 2):
        z = S.meet(x, y)
        if z is not None and rho[z] != partition_product(rho[x], rho[y]):
            return ModelReport(False, bad_meet=(x, y))
    return ModelReport(True)


def induced_model(S):
    """Model over the inverse limit, or (None, report) naming the failure."""
    secs = limit_sections(S)
    pv = {x: tuple(s[i] for s in secs) for i, x in enumerate(S.ids)}
    model = ClassicalModel(S, tuple(secs), pv)
    rep = check_model(model)
    return (model if rep.ok else None), rep


def product_model(m1, m2, P):
    """Model of the product structure P over omega1 x omega2."""
    S1, S2 = m1.structure, m2.structure
    omega = tuple((a, b) for a in m1.omega for b in m2.omega)
    pv = {}
    for x1 in S1.ids:
        for x2 in S2.ids:
            v1, v2 = m1.point_values[x1], m2.point_values[x2]
            pv[pair_id(x1, x2)] = tuple((v1[i], v2[j]) for i in range(len(m1.omega)) for j in range(len(m2.omega)))
    return ClassicalModel(P, omega, pv)


def coproduct_model(m1, m2, C):
    """Model of the coproduct C: S1-variables read the first coordinate, S2 the second."""
    S1 = m1.structure
    n1, n2 = len(m1.omega), len(m2.omega)
    omega = tuple((a, b) for a in m1.omega for b in m2.omega)
    pv = {}
    star = C.values(C.terminal)[0]
    for x in C.ids:
        if x == C.terminal:
            pv[x] = (star,) * (n1 * n2)
        elif x in S1.variables and C.sides.get(x) == 1:
            v = m1.point_values[x]
            pv[x] = tuple(v[i] for i in range(n1) for j in range(n2))
        else:
            v = m2.point_values[x]
            pv[x] = tuple(v[j] for i in range(n1) for j in range(n2))
    return ClassicalModel(C, omega, pv)


def concrete_model(S):
    """The tautological model of a concrete structure (points of omega)."""
    pv = {}
    for x in S.ids:
        p = S.partitions[x]
        labels = S.values(x)
        pv[x] = tuple(labels[b] for b in p.assignment)
    return ClassicalModel(S, tuple(S.omega), pv)
