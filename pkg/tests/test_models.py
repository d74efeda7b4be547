from infocoh import catalog
from infocoh.models import (
    check_model, concrete_model, coproduct_model, induced_model, product_model,
)
from infocoh.structure import coproduct_structure, product_structure, rename


def test_induced_model_of_inverse_limit(inverse_limit):
    model, rep = induced_model(inverse_limit)
    assert rep.ok
    assert len(model.omega) == 5


def test_concrete_model_is_a_model():
    S = catalog.inverse_limit_with_x1x3()
    assert check_model(concrete_model(S)).ok


def test_two_minimal_example_has_no_model():
    model, rep = induced_model(catalog.two_minimal_example())
    assert model is None
    assert set(rep.colliding) == {"M1", "M2"}


def test_product_and_coproduct_models(two_binary):
    S, _ = two_binary
    T = rename(S, prefix="b")
    m1, _ = induced_model(S)
    m2, _ = induced_model(T)
    P, _, _ = product_structure(S, T)
    assert check_model(product_model(m1, m2, P)).ok
    C, _, _ = coproduct_structure(S, T)
    assert check_model(coproduct_model(m1, m2, C)).ok
