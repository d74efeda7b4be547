"""Named example structures with their probability functors."""

from fractions import Fraction

from .cochain import as_alpha, entropy, function_cochain
from .probability import ProbabilityFunctor, SupportComplex, full_functor
from .structure import (
    Arrow, InfoStructure, Variable, build_concrete_structure,
    build_simplicial_structure, full_faces, structure_with_partition,
)


def inverse_limit_example():
    """Omega = {1,2,3,4}; X_i separates i from the rest; X1X2 and X2X3 but not X1X3."""
    omega = [1, 2, 3, 4]
    gens = {
        "X1": [[1], [2, 3, 4]],
        "X2": [[2], [1, 3, 4]],
        "X3": [[3], [1, 2, 4]],
        "X1X2": [[1], [2], [3, 4]],
        "X2X3": [[2], [3], [1, 4]],
    }
    return build_concrete_structure(omega, gens)


def inverse_limit_with_x1x3():
    return structure_with_partition(inverse_limit_example(), "X1X3", [[1], [3], [2, 4]])


def two_minimal_example():
    """Two minimal variables over the same four points, both refining X and Y."""
    labels = ["00", "01", "10", "11"]
    vx = ("0*", "1*")
    vy = ("*0", "*1")
    variables = [
        Variable("1", ("*",)),
        Variable("X", vx),
        Variable("Y", vy),
        Variable("M1", tuple(labels)),
        Variable("M2", tuple(labels)),
    ]
    arrows = [Arrow("X", "1", {v: "*" for v in vx}), Arrow("Y", "1", {v: "*" for v in vy})]
    for m in ("M1", "M2"):
        arrows.append(Arrow(m, "X", {v: v[0] + "*" for v in labels}))
        arrows.append(Arrow(m, "Y", {v: "*" + v[1] for v in labels}))
    return InfoStructure(variables, arrows, "1")


def binary_simplicial(n, names=None):
    """Full simplicial structure on n binary variables."""
    names = names or ["X%d" % (i + 1) for i in range(n)]
    S = build_simplicial_structure({v: 2 for v in names}, full_faces(names))
    return S, full_functor(S)


def two_binary():
    S = build_simplicial_structure({"X": 2, "Y": 2}, [["X"], ["Y"], ["X", "Y"]])
    return S, full_functor(S)


def product_of_two(k=4):
    """Abstract X, Y with k values each and XY their cartesian product."""
    xs = tuple("x%d" % (i + 1) for i in range(k))
    ys = tuple("y%d" % (i + 1) for i in range(k))
    xy = tuple((a, b) for a in xs for b in ys)
    variables = [Variable("1", ("*",)), Variable("X", xs), Variable("Y", ys), Variable("XY", xy)]
    arrows = [
        Arrow("X", "1", {v: "*" for v in xs}),
        Arrow("Y", "1", {v: "*" for v in ys}),
        Arrow("XY", "X", {v: v[0] for v in xy}),
        Arrow("XY", "Y", {v: v[1] for v in xy}),
    ]
    return InfoStructure(variables, arrows, "1")


def _restricted(S, xy_supports):
    """Q generated by maximal supports on XY, with marginal supports on X and Y."""
    comp = {"XY": SupportComplex("XY", S.values("XY"), xy_supports)}
    comp["X"] = SupportComplex("X", S.values("X"), [{v[0] for v in s} for s in xy_supports])
    comp["Y"] = SupportComplex("Y", S.values("Y"), [{v[1] for v in s} for s in xy_supports])
    return ProbabilityFunctor(S, comp)


def two_block_example():
    """Q_XY lives on {x1,x2}x{y1,y2} or on {x3,x4}x{y3,y4}: two free constants."""
    S = product_of_two(4)
    a = [(x, y) for x in ("x1", "x2") for y in ("y1", "y2")]
    b = [(x, y) for x in ("x3", "x4") for y in ("y3", "y4")]
    return S, _restricted(S, [a, b])


def diagonal_block_example():
    """The second block replaced by the diagonal {(x3,y3), (x4,y4)}: unbounded Z^1."""
    S = product_of_two(4)
    a = [(x, y) for x in ("x1", "x2") for y in ("y1", "y2")]
    b = [("x3", "y3"), ("x4", "y4")]
    return S, _restricted(S, [a, b])


def irreducible_chain():
    """Omega = {0,1,2}; M the point partition, X1 = {{0,1},{2}}."""
    S = build_concrete_structure([0, 1, 2], {"M": [[0], [1], [2]], "X1": [[0, 1], [2]]})
    return S, full_functor(S)


def chain_family_value(alpha, g, weights):
    """(p0 + p1)^alpha g(p0/(p0+p1), p1/(p0+p1)) on a law of M."""
    p0, p1 = weights[0], weights[1]
    s = p0 + p1
    if s == 0:
        return Fraction(0)
    scale = s if alpha.exact else float(s) ** alpha.value
    return scale * g(p0 / s, p1 / s)


def block_values(S, x, allowed):
    """Values of x lying over the allowed values of X and Y (allowed: set of labels)."""
    if x == "XY":
        return {v for v in S.values(x) if v[0] in allowed and v[1] in allowed}
    return {v for v in S.values(x) if v in allowed}


def supported_in(S, x, weights, allowed):
    vals = S.values(x)
    inside = block_values(S, x, allowed)
    return all(vals[i] in inside for i, p in enumerate(weights) if p)


def block_entropy_cochain(alpha, S, Q, allowed, label="S_block"):
    """S_alpha on laws supported over ``allowed``, zero elsewhere."""
    alpha = as_alpha(alpha)

    def val(tup, w):
        x = S.product_of(tup)
        if x == S.terminal or not supported_in(S, x, w, allowed):
            return 0
        return entropy(alpha, w)
    return function_cochain(S, Q, alpha, val, label=label)


def diagonal_g_cochain(alpha, S, Q, g):
    """Arbitrary g(p) on laws (p, 1-p) over {x3,x4}, {y3,y4} or the diagonal; zero elsewhere."""
    alpha = as_alpha(alpha)
    first = {"X": ("x3", "x4"), "Y": ("y3", "y4"), "XY": (("x3", "y3"), ("x4", "y4"))}

    def val(tup, w):
        x = S.product_of(tup)
        if x not in first:
            return 0
        vals = S.values(x)
        i, j = vals.index(first[x][0]), vals.index(first[x][1])
        if any(p for k, p in enumerate(w) if k not in (i, j)):
            return 0
        return g(w[i])
    return function_cochain(S, Q, alpha, val, label="g")
