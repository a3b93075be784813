from fractions import Fraction

import pytest

from qdsurf.epimorphisms import check_vector
from qdsurf.genus import (
    BoundTooSmallError,
    ejemplo_family_vector,
    pseudo_real_min,
    pure_symmetric_genus,
    real_genus,
    strong_symmetric_genus,
    symmetric_crosscap,
    symmetric_hyperbolic_genus,
    tps1_family_vector,
    tps_family_vector,
)
from qdsurf.signatures import parse_signature
from qdsurf.tables import (
    bordered_genus_dicyclic,
    crosscap_cyclic,
    crosscap_dicyclic,
    extension_lookup,
    fuchsian_always_extends,
)


def test_strong_symmetric_genus_values():
    for n in (2, 3, 4, 5):
        record = strong_symmetric_genus(n)
        assert record.value == n
        assert record.witness_signature.canonical().format() == (
            f"(0;+;[2,4,{4 * n}];{{-}})"
        )
        record.revalidate()


def test_strong_symmetric_genus_certificates_cover_smaller_areas():
    record = strong_symmetric_genus(3)
    witness_area = record.witness_signature.reduced_area()
    for sig_text, verdict in record.certificates:
        sig = parse_signature(sig_text)
        assert sig.reduced_area() <= witness_area
        assert verdict in ("no-epimorphism", "non-integral-genus")


def test_pure_symmetric_genus_values():
    assert pure_symmetric_genus(2).value == 2
    assert pure_symmetric_genus(4).value == 4
    record3 = pure_symmetric_genus(3)
    assert record3.value == 9
    assert record3.witness_signature.canonical().format() == "(0;+;[2,2,4,12];{-})"
    # the triangular signature is certified as passing no filtered vector
    verdicts = dict(record3.certificates)
    assert verdicts["(0;+;[2,4,12];{-})"] == "no-vector-passes-filter"


def test_symmetric_hyperbolic_genus_values():
    for n in (2, 3, 4):
        assert symmetric_hyperbolic_genus(n, "D").value == 2 * n + 1
    assert symmetric_hyperbolic_genus(2, "DC").value == 2
    assert symmetric_hyperbolic_genus(3, "DC").value == 2
    assert symmetric_hyperbolic_genus(4, "DC").value == 4
    assert symmetric_hyperbolic_genus(2, "C").value == 3
    assert symmetric_hyperbolic_genus(4, "C").value == 7
    # recorded value 2n-1 fails for odd n: the corner order of the cyclic
    # witness drops to n, giving genus 2n-2 one step earlier
    record = symmetric_hyperbolic_genus(3, "C")
    assert record.value == 4
    assert record.witness_signature.canonical().format() == "(0;+;[12];{(3)})"
    record.revalidate()


def test_dc_witness_signatures_match_parity():
    assert symmetric_hyperbolic_genus(3, "DC").witness_signature.canonical().format() == (
        "(0;+;[4];{(3)})"
    )
    assert symmetric_hyperbolic_genus(4, "DC").witness_signature.canonical().format() == (
        "(0;+;[4];{(8)})"
    )


def test_real_genus_values_and_witness():
    for n in (2, 3, 4):
        record = real_genus(n)
        assert record.value == 2 * n + 1
        assert record.witness_signature.canonical().format() == "(0;+;[2,4];{(-)})"
        record.revalidate()


def test_symmetric_crosscap_values_and_two_witnesses():
    for n in (2, 3, 4):
        record = symmetric_crosscap(n)
        assert record.value == 2 * n + 2
        assert record.witness_signatures() == [
            "(0;+;[2,4];{(-)})",
            "(0;+;[4];{(2,2)})",
        ]


def test_pseudo_real_min_dihedral_scenario():
    for n in (2, 3, 4):
        record = pseudo_real_min(n, "conformal_antic")
        assert record.value == 2 * n + 1
        assert record.witness_signature.canonical().format() == "(1;-;[2,2,2];{-})"
        record.revalidate()


def test_pseudo_real_min_doubled_scenario():
    record = pseudo_real_min(3, "conformal_only_odd")
    assert record.value == 19
    assert record.witness_signature.canonical().format() == "(1;-;[2,2,4];{-})"
    verdicts = dict(record.certificates)
    # the two shortcut routes are excluded through the recorded extensions
    assert verdicts["(1;-;[2,4];{-})"] == "extends-in-nec-table"
    assert verdicts["(1;-;[2,2,2];{-})"] == "no-epimorphism"
    # non-maximal conformal halves cannot certify the full group
    assert "conformal-part-extends" in verdicts["(2;-;[3];{-})"]


def test_pseudo_real_min_index_two_scenario():
    record = pseudo_real_min(2, "index_two_even")
    assert record.value == 24 * 2 + 1
    assert record.search_bound is None and record.certificates == ()
    with pytest.raises(ValueError):
        pseudo_real_min(2, "bogus")


def test_bound_too_small_is_loud():
    with pytest.raises(BoundTooSmallError):
        strong_symmetric_genus(3, area_bound=Fraction(1, 100))


def test_family_genera_on_grids():
    for n in (2, 3, 4):
        for k in (3, 4, 5, 6):
            vec = tps_family_vector(n, k)
            assert vec.genus() == 2 * n * k - 4 * n + 1
            assert check_vector(vec).ok
    for n in (3, 5):
        for l in (2, 3):
            for r in (1, 3):
                vec = tps1_family_vector(n, l, r)
                assert vec.genus() == 4 * n * l + 6 * n * r - 8 * n + 1
    for n in (2, 3):
        for alpha in (1, 2):
            for beta in (2, 4):
                vec = ejemplo_family_vector(n, alpha, beta)
                assert vec.genus() == 12 * n * beta + 8 * n * alpha - 8 * n + 1


def test_family_parameter_validation():
    with pytest.raises(ValueError):
        tps_family_vector(2, 2)
    with pytest.raises(ValueError):
        tps1_family_vector(4, 2, 1)
    with pytest.raises(ValueError):
        tps1_family_vector(3, 2, 2)
    with pytest.raises(ValueError):
        ejemplo_family_vector(2, 0, 2)
    with pytest.raises(ValueError):
        ejemplo_family_vector(2, 1, 3)


def test_extension_table_rows():
    rows = extension_lookup(parse_signature("(0;+;[4,4];{(-)})"))
    assert [r.format() for r in rows] == [
        "(0;+;[2,4];{(-)})",
        "(0;+;[4];{(2,2)})",
    ]
    rows = extension_lookup(parse_signature("(1;-;[4,4];{-})"))
    assert [r.format() for r in rows] == ["(0;+;[2,4];{(-)})"]
    assert extension_lookup(parse_signature("(0;+;[2,4,8];{-})")) == []
    # recorded extensions never increase reduced area per containment index
    src = parse_signature("(1;-;[4,4];{-})")
    for row in extension_lookup(src):
        assert row.reduced_area() < src.reduced_area()


def test_fuchsian_maximality_table():
    assert fuchsian_always_extends(parse_signature("(1;+;[3,3];{-})"))
    assert fuchsian_always_extends(parse_signature("(0;+;[2,2,4,4];{-})"))
    assert fuchsian_always_extends(parse_signature("(2;+;[-];{-})"))
    assert fuchsian_always_extends(parse_signature("(0;+;[4,4,5];{-})"))
    assert fuchsian_always_extends(parse_signature("(0;+;[2,4,8];{-})"))
    assert fuchsian_always_extends(parse_signature("(0;+;[3,4,12];{-})"))
    assert fuchsian_always_extends(parse_signature("(0;+;[2,2,2,2,2,2];{-})")) is None
    assert fuchsian_always_extends(parse_signature("(0;+;[2,4,5];{-})")) is None
    assert fuchsian_always_extends(parse_signature("(0;+;[2,2,2,2,4,4];{-})")) is None


def test_subgroup_genus_tables():
    # recorded bordered genus of the dicyclic subgroup bounds the search
    for n in (2, 4, 5):
        assert bordered_genus_dicyclic(n) == 2 * n + 1
    for n in (2, 4):
        assert bordered_genus_dicyclic(n) <= real_genus(n).value
    assert bordered_genus_dicyclic(3) == 6
    assert real_genus(3).value == 7  # the n=3 exception sits strictly below
    assert crosscap_cyclic(3) == 7
    assert crosscap_dicyclic(3) == 7
    assert crosscap_dicyclic(4) == 10


def test_hyperbolic_genus_min_over_subgroups():
    # the overall two-sided minimum is realized by the dicyclic part
    for n in (2, 3, 4):
        values = {
            tag: symmetric_hyperbolic_genus(n, tag).value for tag in ("D", "DC", "C")
        }
        expected_min = n if n % 2 == 0 else n - 1
        assert min(values.values()) == values["DC"] == expected_min


def test_search_deterministic_across_workers():
    a = symmetric_crosscap(2, workers=1)
    b = symmetric_crosscap(2, workers=2)
    assert a.as_json_obj() == b.as_json_obj()
