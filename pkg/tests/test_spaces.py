import json
import math

import numpy as np
import pytest

from suprafix import (AnalyticSpace, EvaluationError, FiniteSpace,
                      SemimetricFileError, SpaceFormatError,
                      finite_from_analytic, load_space, save_space)


def test_finite_space_rejects_bad_matrices():
    with pytest.raises(SpaceFormatError):
        FiniteSpace([[0.0, 1.0]])
    with pytest.raises(SpaceFormatError):
        FiniteSpace([[0.0, float("inf")], [1.0, 0.0]])
    with pytest.raises(SpaceFormatError):
        FiniteSpace([[0.0, 1.0], [1.0, 0.0]], labels=["a"])


def test_finite_pairwise_indexing():
    m = np.array([[0.0, 1.0, 4.0], [1.0, 0.0, 2.0], [4.0, 2.0, 0.0]])
    sp = FiniteSpace(m, labels=["a", "b", "c"])
    assert sp.pairwise(0, 2) == 4.0
    got = sp.pairwise(np.array([0, 1]), np.array([2, 2]))
    assert got.tolist() == [4.0, 2.0]
    assert sp.point_text(2) == "c"


def test_euclidean_and_power_formulas():
    eu = AnalyticSpace("euclidean")
    a = np.array([[1.0], [3.0]])
    b = np.array([[0.5], [-1.0]])
    assert eu.pairwise(a, b).tolist() == [0.5, 4.0]
    sq = AnalyticSpace("power", (2.0,))
    assert sq.pairwise(np.array([3.0]), np.array([1.0])) == 4.0


def test_exp_formulas():
    ea = AnalyticSpace("exp_abs")
    assert ea.pairwise(np.array([2.0]), np.array([2.0])) == 0.0
    assert ea.pairwise(np.array([1.0]), np.array([0.0])) == pytest.approx(math.e)
    es = AnalyticSpace("exp_signed")
    # The verbatim signed formula: e at (1, 0) but 1/e at (0, 1).
    assert es.pairwise(np.array([1.0]), np.array([0.0])) == pytest.approx(math.e)
    assert es.pairwise(np.array([0.0]), np.array([1.0])) == pytest.approx(1 / math.e)
    em = AnalyticSpace("expm1")
    assert em.pairwise(np.array([0.5]), np.array([0.0])) == pytest.approx(math.expm1(0.5))


def test_exp_signed_requires_dim_one():
    with pytest.raises(ValueError):
        AnalyticSpace("exp_signed", dim=2)


def test_overflowing_evaluation_raises():
    wide = AnalyticSpace("exp_abs", box=(-1000.0, 1000.0))
    with pytest.raises(EvaluationError):
        wide.pairwise(np.array([1000.0]), np.array([-1000.0]))


def test_finite_from_analytic_materializes_matrix():
    sq = AnalyticSpace("power", (2.0,))
    sp = finite_from_analytic(sq, [0.0, 1.0, 2.0])
    assert sp.matrix.tolist() == [[0.0, 1.0, 4.0], [1.0, 0.0, 1.0], [4.0, 1.0, 0.0]]


def test_save_load_roundtrip(tmp_path):
    sp = FiniteSpace([[0.0, 1.0], [1.0, 0.0]], labels=["p", "q"], label="demo")
    path = tmp_path / "demo.json"
    save_space(sp, path)
    back = load_space(path)
    assert back.labels == ["p", "q"]
    assert np.array_equal(back.matrix, sp.matrix)


def test_loader_structural_errors(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("not json at all")
    with pytest.raises(SpaceFormatError):
        load_space(path)
    path.write_text(json.dumps({"points": ["a"]}))
    with pytest.raises(SpaceFormatError):
        load_space(path)
    path.write_text(json.dumps({"points": ["a", "b"],
                                "distances": [[0, 1], [1, 0], [0, 0]]}))
    with pytest.raises(SpaceFormatError):
        load_space(path)
    with pytest.raises(SpaceFormatError):
        load_space(tmp_path / "missing.json")


def test_loader_axiom_validation(tmp_path):
    path = tmp_path / "asym.json"
    path.write_text(json.dumps({"points": ["a", "b"],
                                "distances": [[0.0, 2.0], [1.0, 0.0]]}))
    with pytest.raises(SemimetricFileError) as err:
        load_space(path)
    kinds = {w[0] for w in err.value.witnesses}
    assert kinds == {"symmetry"}
    # Same file loads when validation is waived.
    sp = load_space(path, validate=False)
    assert sp.pairwise(0, 1) == 2.0 and sp.pairwise(1, 0) == 1.0


def test_loader_flags_negative_entry(tmp_path):
    path = tmp_path / "neg.json"
    path.write_text(json.dumps({"points": ["a", "b"],
                                "distances": [[0.0, -1.0], [-1.0, 0.0]]}))
    with pytest.raises(SemimetricFileError) as err:
        load_space(path)
    assert any(w[0] == "negative" for w in err.value.witnesses)
