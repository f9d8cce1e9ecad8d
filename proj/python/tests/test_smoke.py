import os
import pathlib

import pytest

import arcres

DATA = pathlib.Path(os.environ.get("ARCRES_TEST_DATA", pathlib.Path(__file__).parents[2] / "tests" / "data"))


def test_field():
    f = arcres.Field(4, arcres.Field.default_modulus(4))
    assert f.order == 16
    for a in range(1, 16):
        assert f.mul(a, f.inv(a)) == 1


def test_pg4_pipeline():
    plane = arcres.build_pg2(2)
    assert plane.num_points == 21
    assert arcres.validate_plane(plane)["valid"]
    row = arcres.run_pipeline(arcres.regular_hyperoval(plane))
    assert row["rank2"] == 5
    assert row["n_parallel_classes"] == 15
    assert row["n_resolutions"] == 6
    assert row["n_max_compatible_sets"] == 1
    assert row["embed_valid"] is True


def test_stepwise_k6():
    design = arcres.extract_design(arcres.dual_arc(arcres.regular_hyperoval(arcres.build_pg2(2))))
    assert design.params["v"] == 6
    classes = arcres.parallel_classes(design)
    res = arcres.resolutions(design, classes, jobs=2)
    sets = arcres.max_compatible_sets(design, classes, res)
    assert (len(classes), len(res), len(sets)) == (15, 6, 1)
    plane = arcres.embed(design, sets[0], res, classes)
    assert plane.order == 4
    assert arcres.validate_plane(plane)["valid"]


def test_cliques():
    edges = [(a, b) for a in range(5) for b in range(a + 1, 5)]
    assert arcres.count_cliques(5, edges, 3) == 10
    assert arcres.enumerate_cliques(3, [(0, 1), (1, 2)], 2) == [[0, 1], [1, 2]]


def test_lunelli_sce_fixture():
    plane = arcres.build_pg2(4)
    arc = arcres.load_arc((DATA / "pg2_16_lunelli_sce.arc").read_text(), plane, 2)
    assert arc.m == 18
    design = arcres.extract_design(arcres.dual_arc(arc))
    assert arcres.rank2(design) == 65


def test_errors():
    with pytest.raises(arcres.ParameterError):
        arcres.derive_params(8, 3, 1)
    with pytest.raises(arcres.ParseError):
        arcres.load_plane("0 1 2\n", 2)
    with pytest.raises(arcres.ValidationError):
        arcres.load_arc(" ".join(str(i) for i in range(18)), arcres.build_pg2(4), 2)
