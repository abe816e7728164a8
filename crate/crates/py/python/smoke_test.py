"""Exercises the extension module end to end. Run after `maturin develop`."""

from fractions import Fraction

import cpos


def main():
    p = cpos.Polygon.hex_ea2()
    assert p.n == 3 and len(p) == 6
    assert p.is_equal_area() and not p.is_symmetric()
    assert all(isinstance(c, Fraction) for v in p.vertices for c in v)

    ae = p.area_evolute()
    assert len(ae["points"]) >= 3, ae
    css = p.central_symmetry_set()
    assert "points" in css

    lam = p.lambda_sequence()
    assert len(lam) == 2 * p.n and all(isinstance(x, Fraction) for x in lam)

    centre = sum(x for x, _ in p.vertices) / 6, sum(y for _, y in p.vertices) / 6
    assert p.nchords(*centre) >= 1

    eq = p.equidistant(Fraction(1, 3))
    assert eq["points"], eq
    assert len(p.ess()["branches"]) == 3
    pd = p.pd_transform(2)
    assert pd["mu"] == "2" and len(pd["vertices"]) == 6
    assert p.pd_transform()["vertices"]

    cert = p.almost_symmetry()
    assert cert["mu0"] == "-1/2", cert
    parallel = p.area_parallel(p.area / 4)
    assert parallel["chains"], parallel

    report = p.check()
    assert report["pass"], [c for c in report["checks"] if c["status"] == "fail"]

    svg = p.svg("diagonals,ae,css,ess")
    assert svg.startswith("<?xml") or svg.startswith("<svg")

    moved, clamped = p.project(2, "1/3", 2)
    assert isinstance(moved, cpos.Polygon) and not clamped

    sym = cpos.Polygon([(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)])
    assert sym == cpos.Polygon.hex_sym() and sym.is_symmetric()
    assert cpos.Polygon.from_json(p.to_json()) == p

    try:
        cpos.Polygon([(0, 0), (1, 0), (1, 1), (0, 1), (0, 2)])
    except cpos.GeometryError as e:
        kind, message, _index = e.args
        assert kind and message
    else:
        raise AssertionError("odd vertex count accepted")

    print("smoke test ok:", cpos.__version__)


if __name__ == "__main__":
    main()
