import math
import pathlib

import pytest

import legendre

ROOT = pathlib.Path(__file__).resolve().parents[2]


def test_plane_kernel():
    l3 = legendre.lp(3.0)
    v = (1.0, 0.0)
    b = l3.birkhoff(v)
    assert abs(l3.norm(b) - 1) < 1e-12
    assert 6 < l3.total_length < 8
    assert abs(legendre.euclidean().rho((0.6, 0.8)) - 1) < 1e-9


def test_circle_pair_and_report():
    circle = legendre.catalog("circle", legendre.euclidean())
    pair = legendre.curvature_pair(circle)
    assert max(abs(a - 1) for a in pair["alpha"]) < 1e-7
    report = legendre.singularity_report(legendre.catalog("astroid", legendre.euclidean()))
    assert len(report["cusps"]) == 4
    assert report["maslov"]["word_reduction"] == 0


def test_synthesis_and_derived():
    curve = legendre.synthesize(
        legendre.euclidean(), lambda t: 1.0, lambda t: 1.0, (0.0, 2 * math.pi), closed=True, p=(1, 0), v=(1, 0)
    )
    x, y = curve.gamma(1.0)
    assert abs(x - math.cos(1.0)) < 1e-7 and abs(y - math.sin(1.0)) < 1e-7
    ellipse = legendre.catalog("ellipse", legendre.euclidean(), [2.0, 1.0])
    e = legendre.evolute(ellipse)
    assert abs(e.gamma(0.0)[0] - 1.5) < 1e-6
    ped = legendre.pedal(legendre.catalog("circle", legendre.euclidean()), (1.0, 0.0))
    assert ped["frontal"] is False


def test_errors_carry_kind():
    with pytest.raises(legendre.LegendreError) as info:
        legendre.evolute(legendre.from_expression("t", "t^3", legendre.euclidean(), (-1.0, 1.0)))
    assert info.value.kind == "KappaVanishes"
    assert info.value.exit_code == 5


def test_expression_and_cli(tmp_path):
    f = legendre.parse_expression("sin(t)^2 + cos(t)^2")
    assert abs(f(0.3) - 1) < 1e-15
    code, _, _ = legendre.run_config(str(ROOT / "configs" / "circle_analyze.json"), out_dir=str(tmp_path))
    assert code == 0
    assert (tmp_path / "circle_analyze.csv").exists()
