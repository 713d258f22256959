import io
import json
import random
import subprocess
import sys
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction
from pathlib import Path

import pytest
from conftest import random_fraction

from doubleline.cli import (
    DecompositionDocument,
    DocumentError,
    document_to_parts,
    main,
    parse_document,
    parse_rational,
    render_document,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        try:
            code = main(argv)
        except SystemExit as exc:
            code = exc.code if isinstance(exc.code, int) else 2
    return code, out.getvalue(), err.getvalue()


def random_document(rng: random.Random) -> DecompositionDocument:
    n = rng.choice([1, 6, 7])
    return DecompositionDocument(
        variables=("x0", "x1", "x2"),
        line=tuple(random_fraction(rng) for _ in range(3)),
        terms=tuple(
            (
                random_fraction(rng),
                tuple(random_fraction(rng) for _ in range(3)),
            )
            for _ in range(n)
        ),
    )


class TestDocuments:
    def test_round_trip(self):
        rng = random.Random(73)
        for _ in range(100):
            doc = random_document(rng)
            assert parse_document(render_document(doc)) == doc

    def test_rational_grammar(self):
        assert parse_rational("-3/4") == Fraction(-3, 4)
        assert parse_rational("17") == 17
        for bad in ("1.5", "+3", "3/-4", "1/0", "", "x"):
            with pytest.raises(ValueError):
                parse_rational(bad)

    def test_missing_field(self):
        with pytest.raises(DocumentError):
            parse_document(json.dumps({"variables": ["x0", "x1", "x2"], "terms": []}))

    def test_float_alpha_rejected(self):
        raw = {
            "variables": ["x0", "x1", "x2"],
            "line": ["0", "0", "1"],
            "terms": [{"alpha": 1.5, "linear": ["1", "0", "0"]}],
        }
        with pytest.raises(DocumentError):
            parse_document(json.dumps(raw))

    def test_document_to_parts(self):
        doc = parse_document((FIXTURES / "example.json").read_text())
        dec, line = document_to_parts(doc)
        assert dec.n == 6
        assert line.linear_coefficients() == (0, 0, 1)


class TestVerify:
    def test_example_fixture(self):
        code, out, _ = run_cli(["verify", str(FIXTURES / "example.json")])
        assert code == 0
        assert "tangent: false" in out
        assert "conic-rank: 3" in out

    def test_tangent_fixture(self):
        code, out, _ = run_cli(["verify", str(FIXTURES / "tangent7.json")])
        assert code == 0
        assert "tangent: true" in out
        assert "certificate-annihilator:" in out
        assert "check certificate-verified: pass" in out

    def test_truncated_file(self, tmp_path):
        bad = tmp_path / "broken.json"
        bad.write_text((FIXTURES / "example.json").read_text()[:40])
        code, out, err = run_cli(["verify", str(bad)])
        assert code == 2
        assert out == ""

    def test_missing_file(self):
        code, _, _ = run_cli(["verify", "no-such-file.json"])
        assert code == 2

    def test_not_double_line_exits_one(self, tmp_path):
        doc = {
            "variables": ["x0", "x1", "x2"],
            "line": ["0", "0", "1"],
            "terms": [{"alpha": "1", "linear": ["1", "0", "0"]}],
        }
        path = tmp_path / "plain.json"
        path.write_text(json.dumps(doc))
        code, out, _ = run_cli(["verify", str(path)])
        assert code == 1
        assert "remainder: x0^4" in out

    def test_line_override(self, tmp_path):
        # value is divisible by x0^2, not by the document's x2
        doc = {
            "variables": ["x0", "x1", "x2"],
            "line": ["0", "0", "1"],
            "terms": [{"alpha": "1", "linear": ["1", "0", "0"]}],
        }
        path = tmp_path / "x0quart.json"
        path.write_text(json.dumps(doc))
        code, out, _ = run_cli(["verify", str(path), "--line", "1,0,0"])
        assert code == 0
        assert "cofactor: x0^2" in out


class TestCommands:
    def test_example(self):
        code, out, _ = run_cli(["example"])
        assert code == 0
        assert "cofactor-normalized: -4 * (6*x0^2 + 6*x0*x1 + 3*x1^2 + x2^2)" in out
        assert "check value-identity: pass" in out

    def test_theorem_check(self):
        code, out, _ = run_cli(["theorem-check", "--trials", "5", "--seed", "7"])
        assert code == 0
        assert "tangent: 5" in out or "q-zero-degenerate" in out

    def test_theorem_check_hundred_trials(self):
        code, out, _ = run_cli(["theorem-check", "--trials", "100", "--seed", "1"])
        assert code == 0
        assert "tangent: 100" in out

    def test_theorem_check_zero_trials_usage_error(self):
        code, _, _ = run_cli(["theorem-check", "--trials", "0"])
        assert code == 2

    def test_identity_check(self):
        code, out, _ = run_cli(["identity-check", "--h", "0,1,2,3,4,5,6"])
        assert code == 0
        assert "check zero-polynomial: pass" in out

    def test_identity_check_fraction_slice(self):
        code, _, _ = run_cli(["identity-check", "--h", "0,1,-1,2,-2,1/2,-1/2"])
        assert code == 0

    def test_identity_check_repeated_nodes(self):
        code, out, _ = run_cli(["identity-check", "--h", "0,1,2,3,4,5,5"])
        assert code == 1
        assert "check distinct-nodes: fail" in out

    def test_identity_check_wrong_count(self):
        code, _, _ = run_cli(["identity-check", "--h", "0,1,2"])
        assert code == 2

    def test_claim_check_nodes(self):
        code, out, _ = run_cli(["claim-check", "--h", "0,1,2,3,4,5"])
        assert code == 0
        assert "quartic identically zero" in out

    def test_claim_check_repeated(self):
        code, _, _ = run_cli(["claim-check", "--h", "0,0,1,2,3,4"])
        assert code == 1

    def test_claim_check_random(self):
        code, out, _ = run_cli(["claim-check", "--random", "3", "--seed", "3"])
        assert code == 0
        assert "vanishing-pass: 3" in out

    def test_claim_check_random_fifty(self):
        code, out, _ = run_cli(["claim-check", "--random", "50", "--seed", "3"])
        assert code == 0
        assert "vanishing-pass: 50" in out
        assert "two-value-pass: 50" in out

    def test_claim_check_requires_mode(self):
        code, _, _ = run_cli(["claim-check"])
        assert code == 2

    def test_unknown_command(self):
        code, _, _ = run_cli(["frobnicate"])
        assert code == 2


class TestDeterminismAndJson:
    COMMANDS = [
        ["example"],
        ["verify", str(FIXTURES / "example.json")],
        ["verify", str(FIXTURES / "tangent7.json")],
        ["theorem-check", "--trials", "5", "--seed", "7"],
        ["identity-check", "--h", "0,1,2,3,4,5,6"],
        ["claim-check", "--h", "0,1,2,3,4,5"],
        ["claim-check", "--random", "3", "--seed", "3"],
    ]

    @pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a[:2]))
    def test_byte_identical_runs(self, argv):
        first = run_cli(argv)
        second = run_cli(argv)
        assert first[0] == second[0] == 0
        assert first[1] == second[1]

    @pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a[:2]))
    def test_json_mode(self, argv):
        code, out, _ = run_cli(argv + ["--json"])
        assert code == 0
        payload = json.loads(out)
        assert payload["result"] == "pass"
        again = run_cli(argv + ["--json"])
        assert again[1] == out

    def test_exit_codes_are_limited(self):
        cases = [
            (["example"], 0),
            (["identity-check", "--h", "0,1,2,3,4,5,5"], 1),
            (["identity-check", "--h", "nonsense"], 2),
        ]
        for argv, expected in cases:
            code, _, _ = run_cli(argv)
            assert code == expected


def test_module_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "doubleline", "example"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert "result: pass" in result.stdout
    assert "wall-time" in result.stderr
