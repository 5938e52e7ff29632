import json

import pytest

from cycspine import homology, whitehead, words
from cycspine.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    return code, json.loads(out)


class TestFamily:
    def test_listing(self, capsys):
        code, out = run(capsys, "family", "H:3,4")
        assert code == 0
        assert "x0 x1 x2" in out and out.count("r") >= 4

    def test_section_word(self, capsys):
        code, data = run_json(capsys, "family", "G:5,2,12,0")
        assert code == 0
        assert data["schema"] == 1
        assert data["relators"][0] == "x0 x0 x1 x1 x1 x1 x1 x2^-1 x2^-1"

    def test_invalid_exits_2(self, capsys):
        assert main(["family", "G:0,1,4,0"]) == 2


class TestWhitehead:
    def test_census_flag(self, capsys):
        code, data = run_json(capsys, "whitehead", "F:1,1,6", "--census")
        assert code == 0
        assert data["planar"] is True
        assert data["pattern"] == "II11"
        assert data["census"] == {"3": 2, "5": 6}

    def test_nonplanar(self, capsys):
        code, data = run_json(capsys, "whitehead", "F:1,1,5")
        assert code == 0
        assert data["planar"] is False

    def test_dot_file(self, capsys, tmp_path):
        target = tmp_path / "g.dot"
        code, _ = run(capsys, "whitehead", "H:3,4", "--dot", str(target))
        assert code == 0
        text = target.read_text()
        assert "-- p0" in text and "label=" in text

    def test_matches_library(self, capsys):
        code, data = run_json(capsys, "whitehead", "G:2,1,8,4")
        g = whitehead.whitehead_graph(words.build_family(words.parse_family("G:2,1,8,4")))
        assert data["graph"] == g.to_json()


class TestAbelian:
    def test_agreement_and_values(self, capsys):
        code, data = run_json(capsys, "abelian", "G:1,2,4,0")
        assert code == 0
        assert data["agree"] is True
        assert data["order_resultant"] == "17"

    def test_infinite(self, capsys):
        code, data = run_json(capsys, "abelian", "H:2,4")
        assert code == 0
        assert data["order_resultant"] == "INFINITE"


class TestResultant:
    def test_value(self, capsys):
        code, out = run(capsys, "resultant", "--", "1,3,-1", "-1,0,0,1")
        assert code == 0
        assert out.strip() == "36"

    def test_lowest_degree_first(self, capsys):
        code, out = run(capsys, "resultant", "--", "1,1", "-1,0,0,1")
        assert out.strip() == "2"


class TestLemma42:
    def test_exact_case(self, capsys):
        code, data = run_json(capsys, "lemma42", "2", "1", "4")
        assert code == 0
        assert data["closed_form_f0_plus"] == "8"
        assert data["closed_form_fhalf_plus"] == "4"
        assert data["common_minus"] == "4"
        assert data["orders_distinct"] is True
        assert data["split_multiplicative"] is True

    def test_mismatching_closed_form_still_distinct(self, capsys):
        code, data = run_json(capsys, "lemma42", "2", "3", "4")
        assert data["fhalf_matches"] is False
        assert data["orders_distinct"] is True
        assert code == 0


class TestScheme:
    def test_build_verify_round_trip(self, capsys, tmp_path):
        scheme_file = tmp_path / "scheme.json"
        cert_file = tmp_path / "certificate.json"
        code, _ = run(capsys, "scheme", "build", "G:5,2,10,2", "-o", str(scheme_file))
        assert code == 0
        code, out = run(
            capsys,
            "scheme",
            "verify",
            str(scheme_file),
            "--family",
            "G:5,2,10,2",
            "--certificate",
            str(cert_file),
        )
        assert code == 0
        cert = json.loads(cert_file.read_text())
        assert cert["valid"] is True
        assert cert["chi"] == 0
        assert cert["cells"] == {"V": 1, "E": 10, "F": 10, "C": 1}

    def test_verify_detects_corruption(self, capsys, tmp_path):
        scheme_file = tmp_path / "scheme.json"
        run(capsys, "scheme", "build", "H:3,4", "-o", str(scheme_file))
        data = json.loads(scheme_file.read_text())
        data["arcs"][0]["label"] = (data["arcs"][0]["label"] + 1) % 4
        scheme_file.write_text(json.dumps(data))
        code, out = run(capsys, "scheme", "verify", str(scheme_file), "--family", "H:3,4")
        assert code == 1
        assert "FAIL" in out

    def test_build_rejects_unsupported(self, capsys):
        assert main(["scheme", "build", "G:3,4,8,0"]) == 2


class TestHeegaard:
    def test_quotient(self, capsys):
        code, data = run_json(capsys, "heegaard", "3", "4")
        assert code == 0
        assert data["quotient_strands"] == 3
        assert data["quotient_is_canonical_lens"] is True

    def test_rejects_bad_params(self, capsys):
        assert main(["heegaard", "2", "4"]) == 2


class TestEnumerate:
    def test_order(self, capsys):
        code, data = run_json(capsys, "enumerate", "F:1,1,4")
        assert code == 0
        assert data["status"] == "FINITE" and data["order"] == 5

    def test_exceeded_is_exit_zero(self, capsys):
        code, data = run_json(capsys, "enumerate", "H:2,4", "--max-cosets", "500")
        assert code == 0
        assert data["status"] == "EXCEEDED"

    def test_env_cap(self, capsys, monkeypatch):
        monkeypatch.setenv("SPINE_MAX_COSETS", "500")
        code, data = run_json(capsys, "enumerate", "H:2,4")
        assert data["status"] == "EXCEEDED"
        assert data["live_cosets"] == 500


class TestCertify:
    def test_spine_case(self, capsys):
        code, data = run_json(capsys, "certify", "1", "1", "6", "0")
        assert code == 0
        assert data["verdict"] == "pass"
        assert data["stages"]["spine"]["seifert_threlfall"] is True

    def test_obstruction_case_exit_zero(self, capsys):
        code, data = run_json(capsys, "certify", "4", "1", "4", "1")
        assert code == 0
        assert data["stages"]["spine"]["spine"] is False
        assert data["stages"]["spine"]["obstruction"]["duplicated_face_index"] == 2

    def test_small_n_with_enumeration(self, capsys):
        code, data = run_json(capsys, "certify", "3", "1", "3", "0", "--enumerate")
        assert code == 0
        assert data["stages"]["planarity"]["status"] == "skipped"
        assert data["stages"]["enumeration"]["result"] == "FINITE(3528)"

    def test_outside_scope_skips(self, capsys):
        code, data = run_json(capsys, "certify", "2", "1", "4", "1")
        assert code == 0
        assert data["stages"]["spine"]["status"] == "skipped"

    def test_usage_error(self, capsys):
        assert main(["certify", "0", "1", "4", "0"]) == 2

    def test_matches_library(self, capsys):
        code, data = run_json(capsys, "certify", "2", "1", "8", "4")
        p = words.build_family(words.G(2, 1, 8, 4))
        assert data["stages"]["abelianization"]["order"] == str(
            homology.abelianization_order(p)
        )


class TestSweep:
    def test_csv(self, capsys, tmp_path):
        out = tmp_path / "sweep.csv"
        code = main(["sweep", "--k", "1:2", "--l", "1", "--n", "4:5", "-o", str(out)])
        lines = out.read_text().strip().splitlines()
        assert lines[0].startswith("k,l,n,f")
        assert len(lines) == 1 + 2 * (4 + 5)
