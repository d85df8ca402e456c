import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from cyops.estimators import CYTypeChecker, LocalNormalForm


def test_params_and_clone():
    est = LocalNormalForm(truncation=12, ell=4, depth=3)
    assert est.get_params() == {"truncation": 12, "ell": 4, "depth": 3}
    twin = clone(est).set_params(ell=3)
    assert twin.ell == 3 and est.ell == 4


def test_local_normal_form_fit_transform():
    est = LocalNormalForm(truncation=8, ell=3, depth=3).fit("quintic")
    assert est.q_.coeffs[:3] == (0, 1, 770)
    assert est.transform(["quintic"]) == [[(575, 121850, 63441275)]]
    R1 = LocalNormalForm(truncation=8, ell=4, depth=2).fit_transform(["R1"])
    assert R1[0][0] == (768, -136800)


def test_not_fitted_and_validation():
    with pytest.raises(NotFittedError):
        LocalNormalForm().transform(["quintic"])
    with pytest.raises(ValueError):
        LocalNormalForm(truncation=4, depth=10).fit("quintic")


def test_cy_type_checker():
    chk = CYTypeChecker(truncation=20, depth=40, prime_bound=10 ** 4).fit(["quintic"])
    assert [v.overall for v in chk.verdicts_] == [True]
    assert chk.predict(["quintic", "E"]) == [True, False]
    assert clone(chk).get_params()["depth"] == 40
