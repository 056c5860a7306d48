import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from pluecker.numeric import BitangentFinder, FlexFinder
from pluecker.numeric.curve import CurveError

CUBIC = "x^3 + y^3 + z^3 + 1/2*x*y*z"


def test_params_round_trip():
    est = BitangentFinder(seed=5, start_count=100)
    params = est.get_params()
    assert params["seed"] == 5 and params["start_count"] == 100
    est.set_params(seed=7)
    assert est.seed == 7
    assert clone(est).get_params() == est.get_params()


def test_not_fitted():
    with pytest.raises(NotFittedError):
        FlexFinder().transform()
    with pytest.raises(NotFittedError):
        BitangentFinder().summary()


def test_flex_finder():
    est = FlexFinder(seed=2).fit(CUBIC)
    assert est.n_found_ == 9 and est.n_weighted_ == 9
    pts = est.transform()
    assert pts.shape == (9, 3) and pts.dtype == np.complex128
    assert est.summary()["agrees"]


def test_bitangent_finder_low_degree():
    est = BitangentFinder().fit("x^2 + y^2 - z^2")
    assert est.n_found_ == 0
    assert est.transform().shape == (0, 3)


def test_bitangent_finder_quartic(quartic_bitangents):
    est = BitangentFinder(workers=4).fit(quartic_bitangents.curve)
    assert est.n_found_ == 28
    np.testing.assert_array_equal(est.transform(), [s.dual for s in quartic_bitangents.solutions])


def test_fit_validates_input():
    with pytest.raises(CurveError):
        FlexFinder().fit("x^2 + y")
    with pytest.raises(TypeError):
        FlexFinder().fit(42)
