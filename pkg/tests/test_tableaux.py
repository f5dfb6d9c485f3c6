import math

import numpy as np
import pytest

from imex_relax.errors import (
    ClassificationError,
    ConditionPreconditionError,
    StructuralError,
    TableauLookupError,
    UnsupportedParameterError,
    ValidationError,
)
from imex_relax.tableaux import (
    ImexPair,
    RKTableau,
    SchemeClass,
    builtin,
    builtin_names,
    check_additional_order,
    check_order,
    check_three_stage_structure,
    classify,
    inverse_weights,
    is_gsa,
    is_isa,
    parse_tableau_text,
    resolve_pair,
    tableau_summary,
)

FIRST_ORDER_TEXT = """
# forward-backward Euler
name: EULER
order: 1
explicit:
0 0
1 0
b: 1 0
c: 0 1
implicit:
0 0
0 1
b: 0 1
c: 0 1
"""


def test_builtin_ars111_entries():
    pair = builtin("ARS111")
    assert pair.explicit_part.a[1].tolist() == [1.0, 0.0]
    assert pair.explicit_part.b.tolist() == [1.0, 0.0]
    assert pair.implicit_part.a[1, 1] == 1.0
    assert pair.implicit_part.b.tolist() == [0.0, 1.0]
    assert pair.label == "ARS111(1,1,1)"


def test_builtin_bpr_rows():
    bpr343 = builtin("BPR343")
    expected = [0.25, 0.0, 0.75, -0.5, 0.5]
    np.testing.assert_allclose(bpr343.implicit_part.a[-1], expected, atol=1e-15)
    np.testing.assert_allclose(bpr343.implicit_part.b, expected, atol=1e-15)

    bpr442 = builtin("BPR442")
    np.testing.assert_allclose(
        bpr442.implicit_part.a[3], [0.0, 1 / 24, 11 / 24, 0.25, 0.0], atol=1e-15
    )


def test_builtin_lookup_is_case_insensitive():
    assert builtin("ck222").name == "CK222"


def test_unknown_builtin_names_valid_identifiers():
    with pytest.raises(TableauLookupError) as error:
        builtin("SP111")
    for name in builtin_names():
        assert name in str(error.value)
    # lookup errors belong to the validation family
    assert isinstance(error.value, ValueError)


@pytest.mark.parametrize("name", ["ARS111", "ARS222", "CK222", "BPR442", "BPR343"])
def test_builtin_structure(name):
    pair = builtin(name)
    for part in (pair.explicit_part, pair.implicit_part):
        np.testing.assert_allclose(part.a.sum(axis=1), part.c, atol=1e-14)
    assert pair.explicit_part.is_explicit()
    assert pair.implicit_part.is_dirk()
    assert is_gsa(pair)
    assert is_isa(pair)
    assert all(report.satisfied for report in check_order(pair, pair.declared_order))


@pytest.mark.parametrize(
    "name,expected",
    [
        ("CK222", SchemeClass.TypeCK),
        ("ARS111", SchemeClass.TypeARS),
        ("ARS222", SchemeClass.TypeARS),
        ("BPR442", SchemeClass.TypeARS),
        ("BPR343", SchemeClass.TypeCK),
    ],
)
def test_classify(name, expected):
    assert classify(builtin(name)) == expected


def test_classify_type_a():
    explicit = RKTableau(a=[[0.0]], b=[1.0], c=[0.0])
    implicit = RKTableau(a=[[1.0]], b=[1.0], c=[1.0])
    pair = ImexPair("EULER1", explicit, implicit, declared_order=1)
    assert classify(pair) == SchemeClass.TypeA


def test_classify_singular_sub_block():
    c = [0, 0.5, 1]
    explicit = RKTableau(a=[[0, 0, 0], [0.5, 0, 0], [0.5, 0.5, 0]], b=[0.5, 0.5, 0], c=c)
    implicit = RKTableau(a=[[0, 0, 0], [0.5, 0, 0], [0, 0.5, 0.5]], b=[0, 0.5, 0.5], c=c)
    pair = ImexPair("BROKEN", explicit, implicit, declared_order=1)
    with pytest.raises(ClassificationError):
        classify(pair)


def test_perturbed_last_row_is_not_isa():
    pair = builtin("ARS111")
    a = pair.implicit_part.a.copy()
    a[1] = [0.1, 0.9]
    implicit = RKTableau(a=a, b=pair.implicit_part.b, c=a.sum(axis=1))
    perturbed = ImexPair("PERTURBED", pair.explicit_part, implicit, declared_order=1)
    assert not is_isa(perturbed)
    assert not is_gsa(perturbed)


def test_random_gsa_constructions_are_isa():
    rng = np.random.default_rng(7)
    for _ in range(20):
        s = 3
        a = np.tril(rng.uniform(0.1, 1.0, (s, s)))
        at = np.tril(rng.uniform(0.1, 1.0, (s, s)), k=-1)
        implicit = RKTableau(a=a, b=a[-1], c=a.sum(axis=1))
        explicit = RKTableau(a=at, b=at[-1], c=at.sum(axis=1))
        try:
            pair = ImexPair("RANDOM", explicit, implicit, declared_order=1)
        except StructuralError:
            continue
        assert is_isa(pair)
        assert is_gsa(pair)


def test_explicit_weight_on_the_last_stage_is_not_gsa():
    explicit = RKTableau(a=[[0.0]], b=[1.0], c=[0.0])
    implicit = RKTableau(a=[[1.0]], b=[1.0], c=[1.0])
    pair = ImexPair("EULER1", explicit, implicit, declared_order=1)
    assert is_isa(pair)
    assert not is_gsa(pair)


def test_check_order_ars222_second_order():
    reports = check_order(builtin("ARS222"), 2)
    assert all(report.residual < 1e-12 for report in reports)


def test_check_order_bpr343_third_order():
    reports = check_order(builtin("BPR343"), 3)
    assert len(reports) == 10
    assert all(report.satisfied for report in reports)


def test_check_order_ars111_fails_second_order():
    reports = {r.condition_id: r for r in check_order(builtin("ARS111"), 2)}
    assert not reports["bt.c=1/2"].satisfied
    assert reports["bt.c=1/2"].residual == pytest.approx(0.5)


def test_check_order_rejects_high_order():
    with pytest.raises(UnsupportedParameterError):
        check_order(builtin("BPR343"), 4)


def test_check_order_needs_equal_abscissae():
    explicit = RKTableau(a=[[0, 0], [0.5, 0]], b=[0, 1], c=[0, 0.5])
    implicit = RKTableau(a=[[0, 0], [0, 1]], b=[0, 1], c=[0, 1])
    pair = ImexPair("SHIFTED", explicit, implicit, declared_order=1)
    with pytest.raises(ConditionPreconditionError):
        check_order(pair, 1)
    # the general variant drops the precondition
    reports = check_additional_order(pair, 1, general=True)
    assert any(r.condition_id == "b.A^-2.At.ct=1" for r in reports)


def test_additional_order_bpr442():
    reports = check_additional_order(builtin("BPR442"), 2)
    assert all(report.satisfied for report in reports)


def test_additional_order_ck222_fails():
    reports = check_additional_order(builtin("CK222"), 2)
    assert max(report.residual for report in reports) > 0.05


def test_additional_order_consistency_only():
    reports = check_additional_order(builtin("ARS111"), 0)
    assert [r.condition_id for r in reports] == ["b.A^-2.At.e=1"]


def test_additional_order_is_reproducible():
    first = check_additional_order(builtin("CK222"), 2)
    second = check_additional_order(builtin("CK222"), 2)
    assert [r.residual for r in first] == [r.residual for r in second]


@pytest.mark.parametrize("name", ["ARS111", "ARS222", "CK222", "BPR442", "BPR343"])
def test_gsa_inverse_weight_identity(name):
    # b^T A^-1 is the last unit row under the reduced sub-block convention
    pair = builtin(name)
    w = inverse_weights(pair, power=1)
    expected = np.zeros(pair.s)
    expected[-1] = 1.0
    np.testing.assert_allclose(w, expected, atol=1e-12)


def test_three_stage_structure():
    report = check_three_stage_structure(builtin("CK222"))
    assert report["gsa"] and report["second_order"] and report["type_ck"]
    assert report["c1_zero"] and report["c3_one"]
    with pytest.raises(UnsupportedParameterError):
        check_three_stage_structure(builtin("BPR343"))


def test_parse_tableau_text():
    pair = parse_tableau_text(FIRST_ORDER_TEXT)
    assert pair.name == "EULER"
    assert pair.declared_order == 1
    assert classify(pair) == SchemeClass.TypeARS


def test_parse_tableau_text_errors():
    with pytest.raises(ValidationError):
        parse_tableau_text("name: X\nexplicit:\n0 0\nb: 1 0\nc: 0 1\n")
    with pytest.raises(ValidationError):
        parse_tableau_text(FIRST_ORDER_TEXT.replace("b: 0 1", "b: 0 one"))


def test_resolve_pair_from_file(tmp_path):
    path = tmp_path / "euler.tab"
    path.write_text(FIRST_ORDER_TEXT)
    assert resolve_pair(str(path)).name == "EULER"
    assert resolve_pair("bpr343").name == "BPR343"
    with pytest.raises(TableauLookupError):
        resolve_pair(str(tmp_path / "missing.tab"))


def test_tableau_summary():
    summary = tableau_summary(builtin("BPR442"))
    assert summary["class"] == "ARS"
    assert summary["gsa"] is True
    assert summary["label"] == "BPR442(4,4,2)"
    assert all(r["satisfied"] for r in summary["order_conditions"])
    assert all(r["satisfied"] for r in summary["additional_conditions"])


def test_ars222_parameters_in_full_precision():
    gamma = 1.0 - 1.0 / math.sqrt(2.0)
    assert builtin("ARS222").implicit_part.a[1, 1] == gamma
