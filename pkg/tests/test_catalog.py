import itertools
import json
import random
from pathlib import Path

import pytest

from conftest import oracle_suite
from coxgrowth.catalog import (
    FiniteTypeLabel,
    catalog_labels,
    catalog_table,
    decompose,
    diagram_type,
    enumerate_finite_subsets,
    finite_subsets_with_label,
    growth_poly_of_finite,
    irreducible_components,
    label_matrix,
    recognize_affine,
    recognize_irreducible,
    solomon_series,
)
from coxgrowth.coxeter import INF, CoxeterMatrix, GrowthType, deform, polygon_matrix
from coxgrowth.errors import InputError
from coxgrowth.oracle import ball
from coxgrowth.poly import bracket_poly

GOLDEN = json.loads((Path(__file__).parent / "data" / "finite_types.json").read_text())


def _permuted(M: CoxeterMatrix, perm) -> CoxeterMatrix:
    n = M.rank
    return CoxeterMatrix.from_pairs(n, {(perm[i], perm[j]): M[i, j] for i in range(n) for j in range(i + 1, n)})


def test_label_parsing_and_normalization():
    assert str(FiniteTypeLabel.parse("I2(5)")) == "I2(5)"
    assert FiniteTypeLabel.parse("I2(3)") == FiniteTypeLabel("A", 2)
    assert FiniteTypeLabel.parse("I2(4)") == FiniteTypeLabel("B", 2)
    assert FiniteTypeLabel.parse("E6").bracket == (2, 5, 6, 8, 9, 12)
    for bad in [("D", 3), ("E", 9), ("H", 5), ("F", 3)]:
        with pytest.raises(InputError):
            FiniteTypeLabel(*bad)


@pytest.mark.parametrize("row", GOLDEN, ids=[r["label"] for r in GOLDEN])
def test_solomon_series_golden(row):
    lab = FiniteTypeLabel.parse(row["label"])
    assert solomon_series(lab) == bracket_poly(row["bracket"])


def test_catalog_covers_golden_file():
    assert sorted(str(l) for l in catalog_labels()) == sorted(r["label"] for r in GOLDEN)


@pytest.mark.parametrize("label", catalog_labels(), ids=str)
def test_recognition_is_invariant_under_relabelling(label):
    M = label_matrix(label)
    rng = random.Random(str(label))
    for _ in range(3):
        perm = list(range(M.rank))
        rng.shuffle(perm)
        assert recognize_irreducible(_permuted(M, perm), range(M.rank)) == label


def test_non_finite_diagrams_are_rejected():
    assert recognize_irreducible(polygon_matrix((3, 3, 3)), range(3)) is None
    assert recognize_irreducible(CoxeterMatrix.dihedral(INF), range(2)) is None
    # a path with two 4-labels is affine C2, not finite
    assert recognize_irreducible(CoxeterMatrix.from_pairs(3, {(0, 1): 4, (1, 2): 4}), range(3)) is None
    with pytest.raises(InputError):
        recognize_irreducible(CoxeterMatrix.from_pairs(3), range(3))


@pytest.mark.parametrize(
    "pairs, n, name",
    [
        ({(0, 1): INF}, 2, "~A1"),
        ({(0, 1): 3, (1, 2): 3, (0, 2): 3}, 3, "~A2"),
        ({(0, 1): 3, (1, 2): 3, (2, 3): 3, (0, 3): 3}, 4, "~A3"),
        ({(0, 1): 4, (1, 2): 4}, 3, "~C2"),
        ({(0, 1): 4, (1, 2): 3, (2, 3): 4}, 4, "~C3"),
        ({(0, 1): 3, (1, 2): 6}, 3, "~G2"),
        ({(0, 2): 3, (1, 2): 3, (2, 3): 4}, 4, "~B3"),
        ({(0, 1): 3, (1, 2): 4, (2, 3): 3, (3, 4): 3}, 5, "~F4"),
        ({(0, 4): 3, (1, 4): 3, (2, 4): 3, (3, 4): 3}, 5, "~D4"),
    ],
)
def test_affine_recognition(pairs, n, name):
    M = CoxeterMatrix.from_pairs(n, pairs)
    assert recognize_affine(M, range(n)) == name
    assert diagram_type(M) is GrowthType.AFFINE


def test_irreducible_components():
    M = CoxeterMatrix.from_pairs(5, {(0, 1): 3, (3, 4): INF})
    assert irreducible_components(M, range(5)) == [(0, 1), (2,), (3, 4)]
    assert irreducible_components(M, [0, 2]) == [(0,), (2,)]


def test_decompose_reducible_finite_group():
    M = CoxeterMatrix.from_pairs(4, {(0, 1): 3, (2, 3): 5})
    parts = decompose(M, range(4))
    assert [str(l) for _, l in parts] == ["A2", "I2(5)"]
    assert growth_poly_of_finite(M, range(4)) == bracket_poly([2, 3]) * bracket_poly([2, 5])
    assert decompose(polygon_matrix((2, 3, 7)), range(3)) is None
    with pytest.raises(InputError):
        growth_poly_of_finite(polygon_matrix((2, 3, 7)), range(3))


def test_family_of_the_237_triangle():
    fam = enumerate_finite_subsets(polygon_matrix((2, 3, 7)))
    assert fam.subsets() == {(), (0,), (1,), (2,), (0, 1), (1, 2), (0, 2)}


@pytest.mark.parametrize("name, M", oracle_suite(), ids=[n for n, _ in oracle_suite()])
def test_family_is_downward_closed(name, M):
    fam = enumerate_finite_subsets(M)
    subsets = fam.subsets()
    for T in subsets:
        for k in range(len(T)):
            for sub in itertools.combinations(T, k):
                assert sub in subsets
    full = tuple(range(M.rank))
    assert (full in subsets) == (diagram_type(M) is GrowthType.ELLIPTIC)


@pytest.mark.parametrize("angles", [(2, 3, 7), (2, 4, 5), (3, 3, 4), (2, 3, INF)])
def test_finite_orders_match_oracle_saturation(angles):
    M = polygon_matrix(angles)
    for member in enumerate_finite_subsets(M):
        if len(member.subset) < 2:
            continue
        sub = M.restrict(member.subset)
        order = member.poly.eval_rational(1)
        assert len(ball(sub, member.degree + 1)) == order


def test_subsets_with_label():
    M = polygon_matrix((2, 3, 7))
    assert finite_subsets_with_label(M, 7) == {(0, 2)}
    assert finite_subsets_with_label(M, 5) == set()
    D = deform(polygon_matrix((INF, INF, INF)), 6)
    assert finite_subsets_with_label(D, 6) == {(0, 1), (1, 2), (0, 2)}
    with pytest.raises(InputError):
        finite_subsets_with_label(M, 3)


def test_catalog_table_rows():
    rows = {r["label"]: r for r in catalog_table()}
    assert rows["H3"]["bracket"] == [2, 6, 10] and rows["H3"]["order"] == 120
    assert rows["E8"]["degree"] == 120
    assert json.loads(json.dumps(catalog_table())) == catalog_table()
