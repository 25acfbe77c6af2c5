import csv
import io

import pytest

from orlicz.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def test_exponents_power_log():
    code, text = call("exponents", "--phi", "catalog(power_log, 2, 1)")
    assert code == 0
    assert "q = 2\n" in text and "p = 3\n" in text


def test_exponents_csv(tmp_path):
    path = tmp_path / "g.csv"
    code, _ = call("exponents", "--phi", "catalog(power_sum, 2, 3)", "--grid", "1e-2:1e2:11", "--csv", str(path))
    assert code == 0
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["t", "value"] and len(rows) == 12
    assert rows[1][0] == "%.17g" % 1e-2


def test_norm_from_moments():
    code, text = call("norm", "--phi", "catalog(power_sum,2,3)", "--moments", "2:1.5707963, 3:1")
    assert code == 0
    first = text.splitlines()[0]
    assert first.startswith("norm = 1.496")
    assert "trichotomy case = 1" in text


def test_norm_of_integrand_and_divergence():
    code, text = call("norm", "--phi", "catalog(power_log,2,1)", "--integrand", "cauchy(0.25)")
    assert code == 0 and "norm = 1.6518" in text
    code, text = call("norm", "--phi", "catalog(power_sum,2,3)", "--integrand", "cauchy(0.25)")
    assert code == 0 and "norm = inf" in text


def test_modular():
    code, text = call("modular", "--phi", "catalog(power_sum,2,3)", "--integrand", "cauchy(0.5, half)")
    assert code == 0 and "modular = 2.570796326" in text


def test_mixed_norm(tmp_path):
    path = tmp_path / "profile.csv"
    code, text = call("mixed-norm", "--phi", "catalog(power,2)", "--integrand",
                      "separable(indicator(1,2), indicator(1,1))", "--csv", str(path))
    assert code == 0 and "mixed norm = 2" in text
    assert next(csv.reader(path.open())) == ["y", "inner_norm"]


def test_construct_and_compare():
    code, text = call("construct", "target", "--p1", "1.5", "--p", "2", "--p2", "3", "--r1", "1.2", "--r2", "4")
    assert code == 0 and "measured q = 1.5" in text and "# construction = target" in text
    code, text = call("compare", "--phi", "catalog(power_log,2,1)", "--psi", "catalog(power_sum,2,3)")
    assert code == 0 and "scan verdict = diverging at 0" in text


def test_inclusions_csv(tmp_path):
    path = tmp_path / "inc.csv"
    code, text = call("inclusions", "--phi", "catalog(power_log_shift)", "--csv", str(path))
    assert code == 0 and "any p > 2" in text
    assert len(list(csv.reader(path.open()))) == 4


def test_multiplicativity_and_validate():
    code, text = call("multiplicativity", "--phi", "catalog(power, 2.5)")
    assert code == 0 and "pure power = yes" in text
    code, text = call("validate", "--phi", "splice([(0,1):power(1,0.5,0)],[(1,inf):power(1,0.5,0)])")
    assert code == 1 and "convexity:" in text


def test_gallery_subset(tmp_path):
    path = tmp_path / "g.csv"
    code, text = call("gallery", "--only", "1,3", "--csv", str(path))
    assert code == 0 and "gallery: all checks pass" in text
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["name", "expected", "actual", "abs_err", "verdict"]


def test_gallery_exit_code_reflects_failures():
    code, text = call("gallery", "--only", "7")
    assert code == 1 and "FAIL 7" in text


@pytest.mark.parametrize(
    "argv,code",
    [
        (["exponents", "--phi", "catalog(power, 2"], 2),
        (["exponents"], 2),
        (["bogus"], 2),
        (["norm", "--phi", "catalog(power,2)", "--integrand", "cauchy(1)", "--tol", "-1"], 2),
        (["inclusions", "--phi", "catalog(power_exp, 1)"], 1),
        (["exponents", "--phi", "catalog(flat_origin)"], 1),
        (["norm", "--phi", "catalog(power_log,2,1)", "--moments", "2:1,3:1"], 1),
        (["norm", "--phi", "catalog(power,2)", "--integrand", "zero"], 1),
        (["construct", "target", "--p1", "1.5"], 2),
    ],
)
def test_exit_codes(argv, code, capsys):
    assert run(argv, out=io.StringIO()) == code
    err = capsys.readouterr().err
    assert err
