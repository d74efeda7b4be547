"""Generalized information structures: posets of variables with value sets.

An InfoStructure holds variables (id -> ordered value labels), the arrows
X -> Y meaning "X is finer than Y" with a value surjection E(X) -> E(Y),
and a terminal variable. Composite arrows are computed once by a
breadth-first pass from each source, which also detects non-commuting
paths and cycles (both are failures of the poset axiom).
"""

from dataclasses import dataclass, field
from itertools import combinations, product as iproduct

from .partition import (
    Partition, canonical_partition, partition_product, partition_refines,
    refinement_map, trivial_partition,
)


class StructureError(ValueError):
    """Malformed structural input."""


@dataclass(frozen=True)
class Variable:
    id: str
    values: tuple


@dataclass
class Arrow:
    source: str
    target: str
    mapping: dict


AXIOMS = (
    "terminal_object",
    "poset",
    "finite_nerve",
    "conditional_meets",
    "terminal_singleton",
    "strict_surjections",
    "fiber_injection",
    "global_sections",
)


@dataclass
class AxiomResult:
    name: str
    passed: bool
    witness: object = None
    detail: str = ""


@dataclass
class ValidationReport:
    results: list
    is_embedding: bool = None

    @property
    def ok(self):
        return all(r.passed for r in self.results)

    def __getitem__(self, name):
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def failures(self):
        return [r for r in self.results if not r.passed]

    def to_dict(self):
        out = {
            "ok": self.ok,
            "checks": [
                {"name": r.name, "pass": r.passed, "witness": _jsonable(r.witness), "detail": r.detail}
                for r in self.results
            ],
        }
        if self.is_embedding is not None:
            out["embedding"] = self.is_embedding
        return out


def _jsonable(x):
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (frozenset, set)):
        return sorted((_jsonable(y) for y in x), key=repr)
    return x


class InfoStructure:
    """A finite information structure.

    ``arrows`` need only generate the order; composites are derived. If
    ``partitions`` is given (concrete structures) it maps each id to its
    Partition of ``omega`` and the conditional-meet check also requires
    meets to be partition products.
    """

    def __init__(self, variables, arrows, terminal, partitions=None, omega=None, name=None):
        self.variables = {}
        for v in variables:
            if v.id in self.variables:
                raise StructureError("duplicate variable id %r" % (v.id,))
            if len(set(v.values)) != len(v.values):
                raise StructureError("repeated value label in %r" % (v.id,))
            self.variables[v.id] = v
        if terminal not in self.variables:
            raise StructureError("terminal %r is not a variable" % (terminal,))
        self.ids = tuple(self.variables)
        self.terminal = terminal
        self.partitions = partitions
        self.omega = omega
        self.name = name
        self.arrow_faults = []
        self.given = {}
        for a in arrows:
            for end in (a.source, a.target):
                if end not in self.variables:
                    raise StructureError("arrow endpoint %r is not a variable" % (end,))
            key = (a.source, a.target)
            if key in self.given and self.given[key] != dict(a.mapping):
                self.arrow_faults.append(("parallel arrows", key))
            self.given[key] = dict(a.mapping)
        self._index = {x: i for i, x in enumerate(self.ids)}
        self._build_closure()
        self._meet_cache = {}

    # -- order ---------------------------------------------------------

    def _build_closure(self):
        succ = {x: [] for x in self.ids}
        self.cycles = []
        for (s, t), m in self.given.items():
            if s == t:
                if any(m.get(v) != v for v in self.variables[s].values):
                    self.arrow_faults.append(("non-identity endomorphism", (s, t)))
                continue
            succ[s].append(t)
        self.succ = succ
        self.maps = {}
        self.conflicts = []
        for a in self.ids:
            ident = {v: v for v in self.variables[a].values}
            found = {a: ident}
            queue = [a]
            while queue:
                b = queue.pop(0)
                mb = found[b]
                for c in succ[b]:
                    mc = self.given[(b, c)]
                    comp = {v: mc.get(mb[v]) for v in mb}
                    if c == a:
                        self.cycles.append((a, b))
                        continue
                    if c in found:
                        if found[c] != comp:
                            self.conflicts.append((a, c))
                        continue
                    found[c] = comp
                    queue.append(c)
            for c, m in found.items():
                self.maps[(a, c)] = m
        self.up = {x: set() for x in self.ids}
        self.down = {x: set() for x in self.ids}
        for (a, c) in self.maps:
            self.up[a].add(c)
            self.down[c].add(a)

    def has_arrow(self, x, y):
        return (x, y) in self.maps

    def arrow_map(self, x, y):
        try:
            return self.maps[(x, y)]
        except KeyError:
            raise StructureError("no arrow %r -> %r" % (x, y)) from None

    def index_map(self, x, y):
        """Arrow x -> y as a tuple of target value positions."""
        key = (x, y)
        cache = self.__dict__.setdefault("_index_maps", {})
        if key not in cache:
            m = self.arrow_map(x, y)
            pos = {v: i for i, v in enumerate(self.values(y))}
            cache[key] = tuple(pos[m[v]] for v in self.values(x))
        return cache[key]

    def values(self, x):
        return self.variables[x].values

    def size(self, x):
        return len(self.variables[x].values)

    def coarser(self, x):
        """Objects Y with an arrow x -> Y (including x)."""
        return [y for y in self.ids if y in self.up[x]]

    def finer(self, x):
        return [y for y in self.ids if y in self.down[x]]

    def meet(self, x, y):
        """Greatest lower bound of x and y, or None."""
        for z in (x, y):
            if z not in self.variables:
                raise StructureError("unknown variable %r" % (z,))
        key = (x, y) if self._index[x] <= self._index[y] else (y, x)
        if key in self._meet_cache:
            return self._meet_cache[key]
        common = self.down[x] & self.down[y]
        maximal = [z for z in common if not any(w != z and w in self.up[z] for w in common)]
        res = maximal[0] if len(maximal) == 1 else None
        if res is not None and any(res not in self.up[z] for z in common):
            res = None
        self._meet_cache[key] = res
        return res

    def product_of(self, tup):
        """Iterated meet of a tuple of ids; the terminal for the empty tuple."""
        cur = self.terminal
        for x in tup:
            cur = self.meet(cur, x)
            if cur is None:
                return None
        return cur

    def height(self):
        """Length of the longest chain of non-identity arrows."""
        best = {}
        for x in sorted(self.ids, key=lambda z: len(self.up[z])):
            best[x] = max([best[y] + 1 for y in self.up[x] if y != x and y in best] or [0])
        return max(best.values()) if best else 0

    def minimal(self):
        return [x for x in self.ids if self.down[x] == {x}]

    def __repr__(self):
        return "InfoStructure(%s)" % ", ".join("%s:%d" % (x, self.size(x)) for x in self.ids)


# -- builders ------------------------------------------------------------

def structure_from_partitions(omega, named, terminal="1", name=None):
    """Concrete structure whose objects are the given named partitions."""
    if terminal not in named:
        named = dict(named)
        named[terminal] = trivial_partition(len(omega))
    variables = []
    for x, p in named.items():
        variables.append(Variable(x, tuple(_block_label(omega, b) for b in p.blocks())))
    labels = {v.id: v.values for v in variables}
    arrows = []
    for x, px in named.items():
        for y, py in named.items():
            if x != y and partition_refines(px, py):
                img = refinement_map(px, py)
                arrows.append(Arrow(x, y, {labels[x][i]: labels[y][j] for i, j in enumerate(img)}))
    return InfoStructure(variables, arrows, terminal, partitions=dict(named), omega=tuple(omega), name=name)


def _block_label(omega, block):
    return tuple(omega[i] for i in block)


def build_concrete_structure(omega, generators, close=False, faces=None, terminal="1"):
    """Concrete structure generated by named partitions of ``omega``.

    ``generators`` maps a name to a Partition or to a list of blocks of
    omega labels. With ``close`` every product of generators is added
    (the full family W(Sigma)). With ``faces`` (collections of generator
    names) only the products indexed by those faces are added. The trivial
    partition is always present.
    """
    omega = list(omega)
    parts = {}
    for g, p in generators.items():
        if not isinstance(p, Partition):
            p = canonical_partition(p, ground=omega)
        if p.ground_size != len(omega):
            raise StructureError("generator %r has the wrong ground size" % (g,))
        parts[g] = p
    by_part = {}
    for g, p in parts.items():
        if p in by_part:
            raise StructureError("generators %r and %r define the same partition" % (by_part[p], g))
        by_part[p] = g
    names = list(parts)
    if close and faces is None:
        faces = [c for r in range(2, len(names) + 1) for c in combinations(names, r)]
    objs = dict(parts)
    for face in faces or []:
        face = [g for g in names if g in set(face)]
        for g in face:
            if g not in parts:
                raise StructureError("face mentions unknown generator %r" % (g,))
        if len(face) < 2:
            continue
        p = parts[face[0]]
        for g in face[1:]:
            p = partition_product(p, parts[g])
        if p in by_part:
            continue
        nm = "".join(face)
        if nm in objs:
            raise StructureError("product name %r clashes with a generator" % (nm,))
        objs[nm] = p
        by_part[p] = nm
    triv = trivial_partition(len(omega))
    if triv in by_part:
        terminal = by_part[triv]
    return structure_from_partitions(omega, objs, terminal=terminal)


def build_simplicial_structure(cardinalities, faces, terminal=None):
    """Structure of a simplicial complex of finite random vectors.

    ``cardinalities`` maps vertex id -> alphabet size (>= 2); ``faces`` is a
    downward-closed family of vertex collections. Each face I becomes a
    variable with values the tuples over the alphabets of I (in vertex
    order); J ⊆ I gives the coordinate projection I -> J.
    """
    verts = list(cardinalities)
    for v in verts:
        if int(cardinalities[v]) < 2:
            raise StructureError("vertex %r needs an alphabet of size >= 2" % (v,))
    pos = {v: i for i, v in enumerate(verts)}
    fam = set()
    for f in faces:
        for v in f:
            if v not in pos:
                raise StructureError("face mentions unknown vertex %r" % (v,))
        if len(f):
            fam.add(frozenset(f))
    for f in fam:
        for r in range(1, len(f)):
            for sub in combinations(sorted(f, key=pos.get), r):
                if frozenset(sub) not in fam:
                    raise StructureError("face family is not downward closed: %r missing" % (list(sub),))
    ordered = sorted(fam, key=lambda f: (len(f), sorted(pos[v] for v in f)))
    if terminal is None:
        terminal = "()" if any(str(v) == "1" for v in verts) else "1"
    names = {}
    for f in ordered:
        nm = "".join(str(v) for v in sorted(f, key=pos.get))
        if nm in names.values() or nm == terminal:
            nm = "*".join(str(v) for v in sorted(f, key=pos.get))
        names[f] = nm
    variables = [Variable(terminal, ((),))]
    for f in ordered:
        vs = sorted(f, key=pos.get)
        variables.append(Variable(names[f], tuple(iproduct(*[range(int(cardinalities[v])) for v in vs]))))
    arrows = []
    for f in ordered:
        vs = sorted(f, key=pos.get)
        vals = next(v.values for v in variables if v.id == names[f])
        arrows.append(Arrow(names[f], terminal, {x: () for x in vals}))
        for v in vs:
            g = f - {v}
            if not g:
                continue
            keep = [i for i, w in enumerate(vs) if w != v]
            arrows.append(Arrow(names[f], names[g], {x: tuple(x[i] for i in keep) for x in vals}))
    S = InfoStructure(variables, arrows, terminal)
    S.faces = {names[f]: tuple(sorted(f, key=pos.get)) for f in ordered}
    return S


def full_faces(vertices):
    return [c for r in range(1, len(vertices) + 1) for c in combinations(vertices, r)]


def downward_closure(maximal_faces):
    out = set()
    for f in maximal_faces:
        f = tuple(f)
        for r in range(1, len(f) + 1):
            for c in combinations(f, r):
                out.add(frozenset(c))
    return [sorted(f, key=str) for f in sorted(out, key=lambda s: (len(s), sorted(map(str, s))))]


def terminal_structure(terminal="1"):
    return InfoStructure([Variable(terminal, ((),))], [], terminal)


def chain_structure(sizes, names=None, terminal="1"):
    """Chain X_0 -> X_1 -> ... -> terminal with block-collapsing maps.

    ``sizes`` are strictly decreasing alphabet sizes; value k of a level maps
    to min(k, next_size - 1) of the next level.
    """
    names = names or ["X%d" % i for i in range(len(sizes))]
    variables = [Variable(n, tuple(range(s))) for n, s in zip(names, sizes)]
    variables.append(Variable(terminal, ((),)))
    arrows = []
    for i, (n, s) in enumerate(zip(names, sizes)):
        if i + 1 < len(sizes):
            t = sizes[i + 1]
            arrows.append(Arrow(n, names[i + 1], {k: min(k, t - 1) for k in range(s)}))
        else:
            arrows.append(Arrow(n, terminal, {k: () for k in range(s)}))
    return InfoStructure(variables, arrows, terminal)


def rename(S, mapping=None, prefix=None):
    """Copy of S with ids renamed (values unchanged)."""
    def f(x):
        if mapping and x in mapping:
            return mapping[x]
        if prefix is not None and x != S.terminal:
            return prefix + x
        return x
    variables = [Variable(f(x), S.values(x)) for x in S.ids]
    arrows = [Arrow(f(s), f(t), m) for (s, t), m in S.given.items()]
    parts = {f(x): p for x, p in S.partitions.items()} if S.partitions else None
    return InfoStructure(variables, arrows, f(S.terminal), partitions=parts, omega=S.omega)


def structure_with_partition(S, name, blocks):
    """Concrete S with one more named partition adjoined."""
    named = dict(S.partitions)
    omega = list(S.omega)
    named[name] = canonical_partition(blocks, ground=omega)
    return structure_from_partitions(omega, named, terminal=S.terminal)


# -- inverse limit ---------------------------------------------------------

def limit_sections(S):
    """All compatible families (s_X) with E(X->Y)(s_X) = s_Y.

    Sections are tuples aligned with ``S.ids``. Variables are assigned in
    order of decreasing alphabet size; each assignment prunes the domains of
    all comparable variables.
    """
    order = sorted(S.ids, key=lambda x: (-S.size(x), S._index[x]))
    related = {x: [(y, S.maps[(x, y)], None) for y in S.ids if y != x and (x, y) in S.maps]
               + [(y, None, S.maps[(y, x)]) for y in S.ids if y != x and (y, x) in S.maps]
               for x in S.ids}
    out = []
    assign = {}

    def rec(k, domains):
        if k == len(order):
            out.append(tuple(assign[x] for x in S.ids))
            return
        x = order[k]
        for v in S.values(x):
            if v not in domains[x]:
                continue
            nd = dict(domains)
            ok = True
            for y, down_map, up_map in related[x]:
                if y in assign:
                    continue
                if down_map is not None:
                    d = domains[y] & {down_map[v]}
                else:
                    d = {w for w in domains[y] if up_map.get(w) == v}
                if not d:
                    ok = False
                    break
                nd[y] = d
            if not ok:
                continue
            assign[x] = v
            rec(k + 1, nd)
            del assign[x]

    rec(0, {x: set(S.values(x)) for x in S.ids})
    return out


# -- validation -------------------------------------------------------------

def validate_structure(S):
    res = []
    missing = [x for x in S.ids if x != S.terminal and S.terminal not in S.up[x]]
    res.append(AxiomResult("terminal_object", not missing, missing[0] if missing else None,
                           "every variable maps to the terminal" if not missing else "no arrow to terminal"))

    faults = list(S.arrow_faults) + [("cycle", c) for c in S.cycles] + [("non-commuting paths", c) for c in S.conflicts]
    res.append(AxiomResult("poset", not faults, faults[0] if faults else None,
                           "" if not faults else faults[0][0]))

    h = S.height() if not S.cycles else None
    res.append(AxiomResult("finite_nerve", h is not None, None, "height %s" % (h,)))

    bad = None
    for x, y in combinations(S.ids, 2):
        common = S.down[x] & S.down[y]
        if not common:
            continue
        m = S.meet(x, y)
        if m is None:
            bad = ((x, y), sorted(common, key=S._index.get))
            detail = "no greatest common refinement"
            break
        if S.partitions is not None and S.partitions[m] != partition_product(S.partitions[x], S.partitions[y]):
            bad = ((x, y), m)
            detail = "partition product of the pair is not an object"
            break
    res.append(AxiomResult("conditional_meets", bad is None, bad, detail if bad else ""))

    n1 = S.size(S.terminal)
    res.append(AxiomResult("terminal_singleton", n1 == 1, None if n1 == 1 else n1, ""))

    bad = None
    for (s, t), m in sorted(S.maps.items(), key=lambda kv: (S._index[kv[0][0]], S._index[kv[0][1]])):
        if s == t:
            continue
        tv = set(S.values(t))
        for v in S.values(s):
            if m.get(v) not in tv:
                bad = ((s, t), v, "value %r has no image" % (v,))
                break
        if bad:
            break
        miss = [w for w in S.values(t) if w not in set(m.values())]
        if miss:
            bad = ((s, t), miss[0], "value %r of %s not hit" % (miss[0], t))
            break
        if S.size(s) <= S.size(t):
            bad = ((s, t), None, "not strict: |E(%s)| <= |E(%s)|" % (s, t))
            break
    res.append(AxiomResult("strict_surjections", bad is None, bad[:2] if bad else None, bad[2] if bad else ""))

    bad = None
    for x, y in combinations(S.ids, 2):
        m = S.meet(x, y)
        if m is None or m in (x, y):
            continue
        seen = {}
        px, py = S.maps[(m, x)], S.maps[(m, y)]
        for v in S.values(m):
            key = (px.get(v), py.get(v))
            if key in seen:
                bad = ((x, y), key, (seen[key], v))
                break
            seen[key] = v
        if bad:
            break
    res.append(AxiomResult("fiber_injection", bad is None, bad, "two values share a fiber pair" if bad else ""))

    secs = limit_sections(S)
    bad = None
    for i, x in enumerate(S.ids):
        hit = {s[i] for s in secs}
        for v in S.values(x):
            if v not in hit:
                bad = (x, v)
                break
        if bad:
            break
    res.append(AxiomResult("global_sections", bad is None, bad, "%d sections" % len(secs)))
    return ValidationReport(res)


# -- morphisms -------------------------------------------------------------

@dataclass
class StructureMorphism:
    source: InfoStructure
    target: InfoStructure
    object_map: dict
    value_maps: dict

    def __call__(self, x):
        return self.object_map[x]

    def value(self, x, v):
        return self.value_maps[x][v]


def identity_morphism(S):
    return StructureMorphism(S, S, {x: x for x in S.ids}, {x: {v: v for v in S.values(x)} for x in S.ids})


def compose(psi, phi):
    """psi after phi."""
    om = {x: psi.object_map[phi.object_map[x]] for x in phi.source.ids}
    vm = {x: {v: psi.value_maps[phi.object_map[x]][w] for v, w in phi.value_maps[x].items()}
          for x in phi.source.ids}
    return StructureMorphism(phi.source, psi.target, om, vm)


def validate_morphism(phi, S=None, T=None):
    S = S or phi.source
    T = T or phi.target
    res = []
    om, vm = phi.object_map, phi.value_maps
    bad = next((x for x in S.ids if om.get(x) not in T.variables or x not in vm), None)
    res.append(AxiomResult("objects", bad is None, bad, ""))
    if bad is not None:
        return ValidationReport(res, is_embedding=False)
    ok = om[S.terminal] == T.terminal
    res.append(AxiomResult("terminal", ok, None if ok else om[S.terminal], ""))

    bad = next(((x, y) for (x, y) in S.maps if not T.has_arrow(om[x], om[y])), None)
    res.append(AxiomResult("functor", bad is None, bad, "arrow not sent to an arrow" if bad else ""))

    bad = None
    for x, y in combinations(S.ids, 2):
        m = S.meet(x, y)
        if m is None:
            continue
        if T.meet(om[x], om[y]) != om[m]:
            bad = (x, y)
            break
    res.append(AxiomResult("meets", bad is None, bad, ""))

    bad = None
    if res[2].passed:
        for (x, y), m in S.maps.items():
            mt = T.maps[(om[x], om[y])]
            for v in S.values(x):
                if vm[y].get(m[v]) != mt.get(vm[x].get(v)):
                    bad = ((x, y), v)
                    break
            if bad:
                break
    res.append(AxiomResult("naturality", bad is None, bad, "square fails at value" if bad else ""))

    bad = None
    for x in S.ids:
        img = {vm[x].get(v) for v in S.values(x)}
        if img != set(T.values(om[x])):
            bad = x
            break
    res.append(AxiomResult("surjective_values", bad is None, bad, ""))

    emb = (len(set(om.values())) == len(S.ids)
           and all(len({vm[x][v] for v in S.values(x)}) == S.size(x) == T.size(om[x]) for x in S.ids))
    return ValidationReport(res, is_embedding=emb and all(r.passed for r in res))


# -- products and coproducts ---------------------------------------------

def pair_id(a, b):
    return "<%s,%s>" % (a, b)


def product_structure(S1, S2):
    """Product structure with its two projection morphisms."""
    ids = [(a, b) for a in S1.ids for b in S2.ids]
    variables = [Variable(pair_id(a, b), tuple(iproduct(S1.values(a), S2.values(b)))) for a, b in ids]
    arrows = []
    for (a, a2), m in S1.given.items():
        for b in S2.ids:
            arrows.append(Arrow(pair_id(a, b), pair_id(a2, b),
                                {(u, w): (m[u], w) for u in S1.values(a) for w in S2.values(b)}))
    for (b, b2), m in S2.given.items():
        for a in S1.ids:
            arrows.append(Arrow(pair_id(a, b), pair_id(a, b2),
                                {(u, w): (u, m[w]) for u in S1.values(a) for w in S2.values(b)}))
    P = InfoStructure(variables, arrows, pair_id(S1.terminal, S2.terminal))
    P.components = {pair_id(a, b): (a, b) for a, b in ids}
    p1 = StructureMorphism(P, S1, {pair_id(a, b): a for a, b in ids},
                           {pair_id(a, b): {v: v[0] for v in P.values(pair_id(a, b))} for a, b in ids})
    p2 = StructureMorphism(P, S2, {pair_id(a, b): b for a, b in ids},
                           {pair_id(a, b): {v: v[1] for v in P.values(pair_id(a, b))} for a, b in ids})
    return P, p1, p2


def pairing(f1, f2, P):
    """The morphism <f1, f2> into the product P."""
    S = f1.source
    om = {x: pair_id(f1.object_map[x], f2.object_map[x]) for x in S.ids}
    vm = {x: {v: (f1.value_maps[x][v], f2.value_maps[x][v]) for v in S.values(x)} for x in S.ids}
    return StructureMorphism(S, P, om, vm)


def coproduct_structure(S1, S2):
    """Side-by-side union with the terminals identified, plus injections."""
    t1, t2 = S1.terminal, S2.terminal
    clash = [x for x in S2.ids if x != t2 and x in S1.variables]
    if clash:
        raise StructureError("ids %r occur in both structures; rename first" % (clash,))
    if t2 != t1 and t2 in S1.variables:
        raise StructureError("terminal %r of the second structure clashes" % (t2,))
    star1 = S1.values(t1)[0]
    star2 = S2.values(t2)[0]

    def f2(x):
        return t1 if x == t2 else x

    variables = [S1.variables[x] for x in S1.ids] + [S2.variables[x] for x in S2.ids if x != t2]
    arrows = [Arrow(s, t, m) for (s, t), m in S1.given.items()]
    for (s, t), m in S2.given.items():
        if t == t2:
            m = {v: star1 for v in m}
        arrows.append(Arrow(f2(s), f2(t), m))
    C = InfoStructure(variables, arrows, t1)
    i1 = StructureMorphism(S1, C, {x: x for x in S1.ids}, {x: {v: v for v in S1.values(x)} for x in S1.ids})
    vm2 = {x: {v: v for v in S2.values(x)} for x in S2.ids}
    vm2[t2] = {star2: star1}
    i2 = StructureMorphism(S2, C, {x: f2(x) for x in S2.ids}, vm2)
    C.sides = {x: 1 for x in S1.ids if x != t1}
    C.sides.update({x: 2 for x in S2.ids if x != t2})
    return C, i1, i2


def coproduct_to_product(C, S1, S2, P):
    """Embedding X -> <X,1> (X in S1), <1,X> (X in S2) of the coproduct in the product."""
    t1, t2 = S1.terminal, S2.terminal
    s1, s2 = S1.values(t1)[0], S2.values(t2)[0]
    om, vm = {}, {}
    for x in C.ids:
        if x == C.terminal:
            om[x] = pair_id(t1, t2)
            vm[x] = {v: (s1, s2) for v in C.values(x)}
        elif C.sides[x] == 1:
            om[x] = pair_id(x, t2)
            vm[x] = {v: (v, s2) for v in C.values(x)}
        else:
            om[x] = pair_id(t1, x)
            vm[x] = {v: (s1, v) for v in C.values(x)}
    return StructureMorphism(C, P, om, vm)


# -- minimal objects ------------------------------------------------------

@dataclass
class MinimalReport:
    minimal: list
    factorizations: dict
    components: list = field(default_factory=list)

    def irreducible(self):
        return [m for m in self.minimal if not self.factorizations[m]]


def factorizations(S, z):
    """Pairs (X, Y), X before Y, with meet Z and X, Y not in {Z, terminal}."""
    cand = [x for x in S.coarser(z) if x not in (z, S.terminal)]
    return [(x, y) for x, y in combinations(cand, 2) if S.meet(x, y) == z]


def components(S):
    """Connected components of the arrow graph without the terminal."""
    parent = {x: x for x in S.ids if x != S.terminal}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (a, b) in S.maps:
        if a in parent and b in parent and a != b:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
    groups = {}
    for x in S.ids:
        if x in parent:
            groups.setdefault(find(x), []).append(x)
    return list(groups.values())


def analyze_minimal(S):
    mins = [m for m in S.minimal() if m != S.terminal]
    return MinimalReport(mins, {m: factorizations(S, m) for m in mins}, components(S))
