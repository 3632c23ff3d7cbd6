import math

import numpy as np
import pytest

from suprafix import (SampleSpec, SolveConfig, check_ciric_contraction,
                      check_semimetric, classify, fit_b_index, list_gallery,
                      load_gallery, load_space, random_feasible_space,
                      solve_fixed_point, verify_b_metric, verify_b_suprametric,
                      verify_interpolative)
from suprafix.gallery import GALLERY_NAMES, export_finite


def test_catalog_contains_the_named_items():
    names = {it["name"] for it in list_gallery()}
    assert {"exp_signed", "exp_abs", "euclidean_line", "supra_expm1",
            "power_square", "halving_euclid", "doubling_euclid"} <= names


def test_unknown_item_rejected():
    with pytest.raises(KeyError):
        load_gallery("missing_item")


@pytest.mark.parametrize("name", GALLERY_NAMES)
def test_expected_class_reproduced_by_classify(name):
    item = load_gallery(name)
    rep = classify(item.oracle, SampleSpec(seed=0), declared=item.expected)
    if name == "exp_signed":
        assert not rep.semimetric_ok
        return
    assert rep.semimetric_ok
    for check in rep.declared:
        assert check["ok"], f"{name}: declared {check['class']} violated"
    for cls, _ in item.expected:
        assert rep.classes[cls].status == "holds"


def test_exp_abs_required_index_grows_with_box():
    # Executable form of non-b-metricity: on [-2k, 2k] the midpoint family
    # forces any admissible index above e^k / 2.
    item = load_gallery("exp_abs")
    fitted = []
    for k in (2.0, 5.0, 10.0):
        boxed = item.oracle.with_box((-2 * k, 2 * k))
        fit = fit_b_index(boxed, SampleSpec(seed=0, n_triples=2000))
        assert fit.s >= math.exp(k) / 2.0 - 1e-9
        fitted.append(fit.s)
    assert fitted[0] < fitted[1] < fitted[2]


def test_supra_expm1_certificate_and_solves():
    item = load_gallery("supra_expm1")
    cert = check_ciric_contraction(item.tmap, item.oracle, item.theta,
                                   SampleSpec(seed=0, n_pairs=10_000),
                                   x0=np.array([5.0]))
    assert cert.verdict == "no_violation"
    for start in (-5.0, -1.0, 0.3, 5.0):
        res = solve_fixed_point(item.tmap, np.array([start]), item.oracle,
                                SolveConfig(tol=1e-10))
        assert res.converged
        assert abs(res.fixed_point) <= 1e-10


def test_exp_signed_flagged_by_semimetric_check():
    item = load_gallery("exp_signed")
    rep = check_semimetric(item.oracle, SampleSpec(seed=0))
    assert not rep.ok
    assert any(w.kind == "symmetry" for w in rep.witnesses)


# ---------------------------------------------------------------------------
# random feasible generator

def test_random_space_is_symmetric_zero_diagonal():
    sp = random_feasible_space(9, "supra", (1.0, 1.0), seed=4)
    assert np.array_equal(sp.matrix, sp.matrix.T)
    assert np.all(np.diag(sp.matrix) == 0.0)
    assert np.all(sp.matrix[~np.eye(9, dtype=bool)] > 0)


@pytest.mark.parametrize("kind,params,check", [
    ("metric", (), lambda sp: verify_b_metric(sp, 1.0)),
    ("b_metric", (1.7,), lambda sp: verify_b_metric(sp, 1.7)),
    ("supra", (1.0, 2.0), lambda sp: verify_b_suprametric(sp, 1.0, 2.0)),
    ("interpolative", (0.3, 1.5), lambda sp: verify_interpolative(sp, 0.3, 1.5)),
])
def test_random_space_feasible_for_target_class(kind, params, check):
    for seed in range(5):
        sp = random_feasible_space(8, kind, params, seed=seed)
        rep = check(sp)
        assert rep.ok, f"{kind} seed {seed}: {rep.worst}"
        # Tightening reaches an exact fixpoint, so slack is exactly >= 0.
        assert rep.worst.slack >= 0.0


def test_random_space_semimetric_sound():
    for seed in range(3):
        sp = random_feasible_space(10, "interpolative", (0.5, 1.0), seed=seed)
        assert check_semimetric(sp).ok


def test_random_space_rejects_bad_arguments():
    with pytest.raises(ValueError):
        random_feasible_space(1, "metric", (), seed=0)
    with pytest.raises(ValueError):
        random_feasible_space(5, "mystery", (), seed=0)


# ---------------------------------------------------------------------------
# export

def test_export_and_reload_roundtrip(tmp_path):
    item = load_gallery("supra_expm1")
    path = tmp_path / "supra.json"
    exported = export_finite(item, 9, path)
    back = load_space(path)
    assert back.n == 9
    assert np.array_equal(back.matrix, exported.matrix)
    rep = classify(back, declared=[("suprametric", {"s": 1.0, "c": 1.0})])
    assert rep.declared[0]["ok"]


def test_export_exp_signed_needs_no_validate(tmp_path):
    from suprafix import SemimetricFileError
    item = load_gallery("exp_signed")
    path = tmp_path / "signed.json"
    export_finite(item, 7, path)
    with pytest.raises(SemimetricFileError):
        load_space(path)
    sp = load_space(path, validate=False)
    assert not check_semimetric(sp).ok
