import pytest

from infocoh import catalog
from infocoh.structure import (
    Arrow, InfoStructure, StructureError, Variable, analyze_minimal,
    build_concrete_structure, build_simplicial_structure, chain_structure,
    compose, coproduct_structure, coproduct_to_product, downward_closure,
    full_faces, identity_morphism, limit_sections, pairing, product_structure,
    rename, validate_morphism, validate_structure,
)

# Sections in the order (1, X1, X2, X3, X1X2, X2X3), values as blocks of omega.
LISTED = {
    ((1, 2, 3, 4), (1,), (1, 3, 4), (3,), (1,), (3,)),
    ((1, 2, 3, 4), (1,), (1, 3, 4), (1, 2, 4), (1,), (1, 4)),
    ((1, 2, 3, 4), (2, 3, 4), (2,), (1, 2, 4), (2,), (2,)),
    ((1, 2, 3, 4), (2, 3, 4), (1, 3, 4), (3,), (3, 4), (3,)),
    ((1, 2, 3, 4), (2, 3, 4), (1, 3, 4), (1, 2, 4), (3, 4), (1, 4)),
}


def _in_order(S, secs, order):
    idx = [S.ids.index(x) for x in order]
    return {tuple(s[i] for i in idx) for s in secs}


def test_inverse_limit_sections_match_listed_tuples(inverse_limit):
    S = inverse_limit
    assert validate_structure(S).ok
    assert len(S.ids) == 6
    secs = limit_sections(S)
    assert _in_order(S, secs, ["1", "X1", "X2", "X3", "X1X2", "X2X3"]) == LISTED


def test_adding_x1x3_recovers_omega():
    S = catalog.inverse_limit_with_x1x3()
    assert validate_structure(S).ok
    assert len(limit_sections(S)) == 4


def test_two_minimal_example_has_no_meet():
    # M1 and M2 both refine X and Y, so X and Y have common refiners but no meet.
    rep = validate_structure(catalog.two_minimal_example())
    assert [r.name for r in rep.failures()] == ["conditional_meets"]
    assert rep["conditional_meets"].witness == (("X", "Y"), ["M1", "M2"])


def test_remark_structure_without_closure_fails_meets():
    omega = [(a, b) for a in (0, 1) for b in (0, 1)]
    gens = {
        "X1": [[(0, 0), (0, 1)], [(1, 0), (1, 1)]],
        "X2": [[(0, 0), (1, 0)], [(0, 1), (1, 1)]],
        "X3": [[(0, 0)], [(0, 1), (1, 0), (1, 1)]],
    }
    S = build_concrete_structure(omega, gens, faces=[["X1", "X2"], ["X3"]])
    rep = validate_structure(S)
    assert not rep["conditional_meets"].passed
    assert rep["conditional_meets"].witness[0] == ("X1", "X3")


def test_simplicial_three_binary():
    S, _ = catalog.binary_simplicial(3)
    assert len(S.ids) == 8
    assert S.height() == 3
    assert len(limit_sections(S)) == 8
    assert validate_structure(S).ok


def test_terminal_renamed_when_a_vertex_is_called_1():
    S = build_simplicial_structure({"1": 2, "2": 2}, [["1"], ["2"], ["1", "2"]])
    assert S.terminal == "()"
    assert validate_structure(S).ok


def test_non_downward_closed_faces_rejected():
    with pytest.raises(StructureError, match="downward"):
        build_simplicial_structure({"a": 2, "b": 2}, [["a", "b"], ["a"]])


def test_downward_closure_and_full_faces():
    assert len(full_faces(["a", "b", "c"])) == 7
    assert len(downward_closure([["a", "b"], ["b", "c"]])) == 5


def test_duplicate_generators_rejected():
    with pytest.raises(StructureError, match="same partition"):
        build_concrete_structure([0, 1], {"A": [[0], [1]], "B": [[1], [0]]})


def test_closure_adds_products():
    S = build_concrete_structure([0, 1, 2, 3], {"X": [[0, 1], [2, 3]], "Y": [[0, 2], [1, 3]]}, close=True)
    assert set(S.ids) == {"X", "Y", "XY", "1"}
    assert S.meet("X", "Y") == "XY"


def test_non_surjective_arrow_fails_strict_surjections():
    v = [Variable("1", ("*",)), Variable("X", ("a", "b", "c")), Variable("Y", ("u", "v"))]
    arrows = [Arrow("X", "Y", {"a": "u", "b": "u", "c": "u"}),
              Arrow("X", "1", {k: "*" for k in "abc"}), Arrow("Y", "1", {"u": "*", "v": "*"})]
    rep = validate_structure(InfoStructure(v, arrows, "1"))
    assert not rep["strict_surjections"].passed
    assert rep["strict_surjections"].witness == (("X", "Y"), "v")


def test_cycle_and_conflict_detection():
    v = [Variable("1", ("*",)), Variable("A", (0, 1)), Variable("B", (0, 1))]
    arrows = [Arrow("A", "B", {0: 0, 1: 1}), Arrow("B", "A", {0: 0, 1: 1}),
              Arrow("A", "1", {0: "*", 1: "*"}), Arrow("B", "1", {0: "*", 1: "*"})]
    rep = validate_structure(InfoStructure(v, arrows, "1"))
    assert not rep["poset"].passed

    v = [Variable("1", ("*",)), Variable("A", (0, 1, 2, 3)), Variable("B", (0, 1)), Variable("C", (0, 1))]
    arrows = [Arrow("A", "B", {0: 0, 1: 0, 2: 1, 3: 1}), Arrow("A", "C", {0: 0, 1: 1, 2: 0, 3: 1}),
              Arrow("B", "C", {0: 0, 1: 1}), Arrow("C", "1", {0: "*", 1: "*"}),
              Arrow("B", "1", {0: "*", 1: "*"})]
    rep = validate_structure(InfoStructure(v, arrows, "1"))
    assert rep["poset"].detail == "non-commuting paths"


def test_chain_structure():
    S = chain_structure([4, 3, 2])
    assert validate_structure(S).ok
    assert S.height() == 3
    assert S.arrow_map("X0", "X2") == {0: 0, 1: 1, 2: 1, 3: 1}


def test_product_height_is_a_sum(two_binary):
    S, _ = two_binary
    C = chain_structure([3, 2])
    P, p1, p2 = product_structure(S, C)
    assert len(P.ids) == len(S.ids) * len(C.ids)
    assert P.height() == S.height() + C.height()
    assert validate_structure(P).ok
    assert validate_morphism(p1).ok and validate_morphism(p2).ok
    assert len(limit_sections(P)) == len(limit_sections(S)) * len(limit_sections(C))


def test_coproduct_section_count_is_a_product(two_binary, inverse_limit):
    S, _ = two_binary
    C, i1, i2 = coproduct_structure(S, inverse_limit)
    assert validate_structure(C).ok
    assert len(limit_sections(C)) == len(limit_sections(S)) * len(limit_sections(inverse_limit))
    assert validate_morphism(i1).is_embedding and validate_morphism(i2).is_embedding


def test_coproduct_clash_needs_rename(two_binary):
    S, _ = two_binary
    with pytest.raises(StructureError, match="rename"):
        coproduct_structure(S, S)
    C, _, _ = coproduct_structure(S, rename(S, prefix="b"))
    assert len(C.ids) == 7


def test_coproduct_embeds_in_product(two_binary):
    S, _ = two_binary
    T = rename(S, prefix="b")
    C, i1, i2 = coproduct_structure(S, T)
    P, p1, p2 = product_structure(S, T)
    phi = coproduct_to_product(C, S, T, P)
    rep = validate_morphism(phi)
    assert rep.ok and rep.is_embedding
    assert validate_morphism(compose(p1, phi)).ok


def test_pairing_of_projections_is_identity(two_binary):
    S, _ = two_binary
    P, p1, p2 = product_structure(S, chain_structure([3, 2]))
    d = pairing(p1, p2, P)
    assert validate_morphism(d).is_embedding
    assert d.object_map == identity_morphism(P).object_map
    assert compose(p1, d).object_map == p1.object_map


def test_diagonal_is_not_surjective_on_values(two_binary):
    S, _ = two_binary
    P, _, _ = product_structure(S, S)
    ident = identity_morphism(S)
    rep = validate_morphism(pairing(ident, ident, P))
    assert [r.name for r in rep.failures()] == ["surjective_values"]


def test_bad_morphism_reports_functor_failure(two_binary):
    S, _ = two_binary
    phi = identity_morphism(S)
    phi.object_map = dict(phi.object_map, XY="X")
    rep = validate_morphism(phi)
    assert not rep.ok


def test_minimal_analysis(two_binary):
    S, _ = two_binary
    rep = analyze_minimal(S)
    assert rep.minimal == ["XY"]
    assert rep.factorizations["XY"] == [("X", "Y")]
    assert rep.irreducible() == []
    assert len(rep.components) == 1
    S, _ = catalog.irreducible_chain()
    assert analyze_minimal(S).irreducible() == ["M"]


def test_meet_is_greatest_lower_bound(inverse_limit):
    S = inverse_limit
    assert S.meet("X1", "X2") == "X1X2"
    assert S.meet("X1", "X3") is None
    assert S.meet("X1X2", "X1") == "X1X2"
    assert S.product_of(("X1", "X2", "X1")) == "X1X2"
