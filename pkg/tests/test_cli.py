"""Tests for the command-line driver: parsing, reports, exit codes."""

import json

import pytest

from rayzeta.cli import (
    ConfigError,
    EXIT_CONFIG,
    EXIT_HYPOTHESIS,
    EXIT_OK,
    jsonable,
    main,
    parse_char,
    parse_k_range,
    parse_label,
    parse_poly,
    render_json,
)
from fractions import Fraction


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_parse_poly():
    assert parse_poly("2,0,1") == (2, 0, 1)
    with pytest.raises(ConfigError):
        parse_poly("2,x")


def test_parse_label_and_k_range():
    lab = parse_label("1,0", 2)
    assert (lab.C, lab.D) == (1, 0)
    with pytest.raises(ConfigError):
        parse_label("3,0", 2)
    assert list(parse_k_range("0:2")) == [0, 1, 2]
    with pytest.raises(ConfigError):
        parse_k_range("5:1")


def test_parse_char():
    chi = parse_char("5:4:2=1", 5)
    assert chi.order == 4
    with pytest.raises(ConfigError):
        parse_char("3:2:2=1", 5)  # modulus mismatch
    assert parse_char("trivial", 7).order == 1


def test_rationals_serialized_as_strings():
    assert jsonable(Fraction(-5, 12)) == "-5/12"
    assert jsonable({"v": [Fraction(1, 6)]}) == {"v": ["1/6"]}


def test_zeta_report_anchor(capsys):
    code, out = run(capsys, ["zeta", "--preset", "rd-n2p2", "--n", "1", "--q", "2"])
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["Delta"] == 3
    assert {row["value"] for row in report["rows"]} == {"1/6"}
    assert {(row["C"], row["D"]) for row in report["rows"]} == {(1, 0), (0, 1)}


def test_zeta_skips_non_squarefree(capsys):
    code, out = run(capsys, ["zeta", "--preset", "rd-n2p2", "--n", "5", "--q", "2"])
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["rows"] == []
    assert len(report["skipped"]) == 1


def test_zeta_q1_is_config_error(capsys):
    code, _ = run(capsys, ["zeta", "--preset", "rd-n2p2", "--n", "1", "--q", "1"])
    assert code == EXIT_CONFIG


def test_unknown_preset_is_config_error(capsys):
    code, _ = run(capsys, ["zeta", "--preset", "nope", "--n", "1"])
    assert code == EXIT_CONFIG


def test_family_report_oracle_ok(capsys):
    code, out = run(capsys, ["family", "--preset", "rd-n2p2", "--q", "2"])
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["degree"] == 1
    assert report["rows"]
    assert all(row["oracle_ok"] for row in report["rows"])
    assert all(row["denominator_bounds_ok"] for row in report["rows"])


def test_family_csv_format(capsys):
    code, out = run(capsys, ["family", "--preset", "rd-n2p2", "--q", "2",
                             "--format", "csv"])
    assert code == EXIT_OK
    header = out.splitlines()[0].split(",")
    assert "k_coeffs" in header and "oracle_ok" in header


def test_uncertifiable_inline_family_exits_with_hypothesis_code(capsys):
    code, out = run(capsys, ["family", "--f-poly", "4,8,4",
                             "--a-polys", "0,2;0,1", "--q", "2"])
    assert code == EXIT_HYPOTHESIS
    report = json.loads(out)
    assert report["failures"]
    assert report["rows"] == []


def test_reports_are_byte_stable(capsys):
    argv = ["family", "--preset", "rd-n2p2", "--q", "3"]
    _, first = run(capsys, argv)
    _, second = run(capsys, argv)
    assert first == second


def test_lfunc_trivial_matches_family_totals(capsys):
    code, out = run(capsys, ["lfunc", "--preset", "rd-n2p2", "--q", "2"])
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["character"]["order"] == 1
    _, fam_out = run(capsys, ["family", "--preset", "rd-n2p2", "--q", "2"])
    fam = json.loads(fam_out)
    # zeta is constant on orbits and hecke_L0 sums one representative per
    # orbit, so the family column is lambda times the L coefficient
    lams = {}
    for r, n in ((0, 2), (1, 1)):
        _, zeta_out = run(capsys, ["zeta", "--preset", "rd-n2p2",
                                   "--n", str(n), "--q", "2"])
        lams[r] = json.loads(zeta_out)["lambda"]
    for row in report["rows"]:
        total = sum(
            Fraction(frow["k_coeffs"][row["power"]])
            for frow in fam["rows"] if frow["r"] == row["r"]
        )
        got = sum(Fraction(v) for v in row["coeff"].values())
        assert got * lams[row["r"]] == total


def test_lfunc_order4_symbols(capsys):
    code, out = run(capsys, ["lfunc", "--preset", "rd-n2p2", "--q", "5",
                             "--char", "5:4:2=1"])
    assert code == EXIT_OK
    report = json.loads(out)
    keys = set()
    for row in report["rows"]:
        keys.update(row["coeff"])
        assert row["approx_precision"].endswith("(approximate)")
    assert keys <= {"chi(1)", "chi(2)", "chi(3)", "chi(4)"}


def test_malformed_char_is_config_error(capsys):
    code, _ = run(capsys, ["lfunc", "--preset", "rd-n2p2", "--q", "5",
                           "--char", "5:4:4=1"])
    assert code == EXIT_CONFIG


def test_config_file_merging_and_unknown_keys(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"preset": "rd-n2p2", "q": 2, "n": 1}))
    code, out = run(capsys, ["zeta", "--config", str(cfg)])
    assert code == EXIT_OK
    assert json.loads(out)["n"] == 1

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"preset": "rd-n2p2", "wat": 1}))
    code, _ = run(capsys, ["zeta", "--config", str(bad), "--n", "1"])
    assert code == EXIT_CONFIG


def test_flags_override_config(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"preset": "rd-n2p2", "q": 2, "n": 1}))
    code, out = run(capsys, ["zeta", "--config", str(cfg), "--n", "3"])
    assert code == EXIT_OK
    assert json.loads(out)["n"] == 3


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out = run(capsys, ["zeta", "--preset", "rd-n2p2", "--n", "1", "--q", "2",
                             "--out", str(target)])
    assert code == EXIT_OK
    assert out == ""
    assert json.loads(target.read_text())["Delta"] == 3


def test_render_json_sorted_keys():
    text = render_json({"b": Fraction(1, 2), "a": 1})
    assert text.index('"a"') < text.index('"b"')


def test_verify_single_criterion(capsys):
    code, out = run(capsys, ["verify", "--criterion", "A7"])
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["passed"] is True
    assert [row["criterion"] for row in report["rows"]] == ["A7"]


def test_verify_unknown_criterion(capsys):
    code, _ = run(capsys, ["verify", "--criterion", "A99"])
    assert code == EXIT_CONFIG
