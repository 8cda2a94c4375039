# SPDX-License-Identifier: Apache-2.0
import pytest

import fso_irs_lab as fl


def test_geometry_table_point():
    g = fl.link_at_x(200.0)
    assert g["d1"] == pytest.approx(660.0)
    assert g["d2"] == pytest.approx(340.0)
    assert g["z"] == pytest.approx(274.9545416973504)


def test_saturation_levels():
    lp = fl.gml(10.0, "LP")
    assert lp["regime"] == "saturation"
    assert lp["value"] == pytest.approx(0.291769, rel=1e-5)
    assert fl.gml(10.0, "mirror")["value"] == pytest.approx(0.397957, rel=1e-5)


def test_small_surface_values():
    assert fl.gml(1e-3, "LP")["value"] == pytest.approx(1.430000547e-6, rel=1e-8)
    assert fl.oracle_gml(1e-3, "LP") == pytest.approx(1.3584e-6, rel=1e-3)


def test_relay_and_turbulence():
    assert fl.relay_gml(500.0) == pytest.approx(0.8601656811314689, rel=1e-12)
    alpha, beta = fl.gg_params(1000.0)
    assert alpha == pytest.approx(4.399688384728340, rel=1e-9)
    assert beta == pytest.approx(2.571722827839189, rel=1e-9)
    assert fl.gamma_gamma_cdf(0.5, 1.0, 1.0) == pytest.approx(0.555657476367763959, rel=1e-9)


def test_special_functions():
    assert fl.erf(complex(1.0, 2.0)) == pytest.approx(complex(-0.536643565778565034, -5.049143703447034670))
    assert fl.owen_t(0.5, 0.7).real == pytest.approx(0.0842385002284363680, rel=1e-10)


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        fl.gml(-1.0)
    with pytest.raises(ValueError):
        fl.run_scenario("[beam]\nw0 = -1\n", "/tmp")


def test_run_scenario(tmp_path):
    assert "fig4" in fl.builtin_names()
    text = 'name = "py"\nkind = "gml_vs_size"\n[sweep]\nvariable = "L"\nlo = 1e-3\nhi = 1\npoints = 4\n'
    directory, files = fl.run_scenario(text, tmp_path)
    assert any(str(f).endswith("gml.csv") for f in files)
