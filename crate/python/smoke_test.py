"""Smoke test for the hyperknot Python extension.

Build and install with
    pip install --no-build-isolation ./crates/hyperknot-py
then run
    python python/smoke_test.py
"""

import json

import hyperknot


def main():
    a1 = hyperknot.RootSystem("A", 1)
    jd = a1.jd(1, 3, 2)
    assert str(jd) == "1 + q*t - q*t^2", jd
    assert str(hyperknot.jones(jd)) == "1 + q^2 - q^3"
    assert jd == hyperknot.TriPoly("1 + q t - q t^2")

    e6 = hyperknot.RootSystem("E6", 6)
    assert e6.weyl_order() == 51840
    assert e6.minuscule_indices() == [1, 6]
    w1 = e6.jd(1, 3, 2)
    assert w1 == e6.jd(6, 3, 2)
    assert w1.coeff(2, 21, 0) == 1

    hd = hyperknot.hyperpolynomial(3, 2)
    assert len(hd) == 9 and hd.dimension() == 9
    assert hd.specialize(0, 0, 1) == w1
    assert str(hd.specialize(1, 12, 1)) == "q^2*t^8"
    big = hyperknot.hyperpolynomial(4, 3, from_engine=True)
    assert big.dimension() == 121
    qg = hyperknot.hyperpolynomial(3, 2, convention="qg")
    assert qg.coeff(0, 0, 0) == 1

    g = hyperknot.Germ("x^2+y^3")
    assert g.spectrum_str() == "1/3, 2/3 (mu=2)"
    z = hyperknot.Germ("x^3*y + d*x^2*y^5 + a*x*y^10 + y^13")
    assert z.milnor_number() == 27
    assert len(z.spectrum()) == 27
    assert hyperknot.spectra_adjacent("Z_{3,0}", "E_{8}")
    assert not hyperknot.spectra_adjacent("X_{1,0}", "E_{8}")

    for suite in ["jd", "hyper", "spectrum"]:
        report = json.loads(hyperknot.verify_golden(suite))
        assert report["fail"] == 0, report

    try:
        hyperknot.Germ("x^2 + z^3")
    except ValueError as e:
        assert "at most 2 variables" in str(e)
    else:
        raise AssertionError("expected ValueError")
    try:
        hyperknot.Germ("x^2").milnor_number()
    except hyperknot.HyperknotError:
        pass
    else:
        raise AssertionError("expected HyperknotError")

    print("smoke test passed")


if __name__ == "__main__":
    main()
