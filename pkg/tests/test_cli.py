import json

import pytest

from qiso.cli import main


class TestNf:
    def test_torus_exchange(self, capsys):
        assert main(["nf", "torus", "V U"]) == 0
        assert capsys.readouterr().out.strip() == "e(-t) * U V"

    def test_specialized_theta(self, capsys):
        assert main(["nf", "torus", "V U", "--theta", "1/2"]) == 0
        assert capsys.readouterr().out.strip() == "-U V"

    def test_circle(self, capsys):
        assert main(["nf", "circle", "P P P"]) == 0
        assert capsys.readouterr().out.strip() == "P"


class TestMember:
    def test_yes_prints_certificate(self, capsys):
        assert main(["member", "torus", "U V - e(t) V U"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("YES")
        assert "certificate:" in out

    def test_undecided_exit_code(self, capsys):
        assert main(["member", "torus", "U V - V U"]) == 2
        assert capsys.readouterr().out.strip() == "UNDECIDED"

    def test_parse_error_exit_code(self, capsys):
        assert main(["member", "torus", "W W"]) == 3


class TestVerify:
    def test_circle_suite_json(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = main(["verify", "circle", "--quiet", "--json", str(out)])
        assert code == 0
        captured = capsys.readouterr().out
        assert "== circle:" in captured
        payload = json.loads(out.read_text())
        assert payload[0]["scenario"] == "circle"
        assert payload[0]["constants"]["sigma"] == -1
        assert payload[0]["counts"]["FAIL"] == 0
        assert any(c["status"] == "SKIPPED" for c in payload[0]["checks"])

    def test_bad_theta_rejected(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "circle", "--theta", "0.5x"])
        assert exc.value.code == 2
