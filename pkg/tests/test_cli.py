import json
import subprocess
import sys

import pytest

from runslab.cli import dump_json, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out), out


class TestDist:
    def test_csv(self, capsys):
        code, out, _ = run(capsys, "dist", "--n", "4", "--method", "brute", "--format", "csv", "--threads", "1")
        assert code == 0
        assert out.splitlines() == ["exponent,coefficient", "1,2", "2,12", "3,10"]

    def test_text(self, capsys):
        code, out, _ = run(capsys, "dist", "--n", "3", "--method", "orbit", "--threads", "1")
        assert code == 0
        assert out.splitlines()[0] == "R_3(z) = 2z + 4z^2; m=0"

    def test_json(self, capsys):
        code, doc, _ = run_json(capsys, "dist", "--n", "6", "--threads", "1")
        assert code == 0
        assert doc["schema_version"] == "1"
        assert doc["status"] == "ok"
        payload = doc["payload"]
        assert payload["polynomial"] == {"1": "2", "2": "60", "3": "236", "4": "300", "5": "122"}
        assert payload["quotient"] == {"1": "2", "2": "56", "3": "122"}
        assert payload["m"] == 2
        assert payload["multiplicity_at_minus_one"] == 2

    def test_methods_agree(self, capsys):
        _, brute, _ = run_json(capsys, "dist", "--n", "7", "--method", "brute", "--threads", "2")
        _, orbit, _ = run_json(capsys, "dist", "--n", "7", "--method", "orbit", "--threads", "2")
        for doc in (brute, orbit):
            del doc["payload"]["method"]
            del doc["payload"]["elapsed_seconds"]
        assert brute == orbit

    @pytest.mark.parametrize("n", ["0", "-1"])
    def test_invalid_n(self, capsys, n):
        code, _, err = run(capsys, "dist", "--n", n)
        assert code == 2
        assert "at least 1" in err

    def test_cap_refusal(self, capsys):
        code, doc, _ = run_json(capsys, "dist", "--n", "14")
        assert code == 2
        assert doc["status"] == "failed"
        assert "87,178,291,200" in doc["payload"]["error"]

    def test_env_cap(self, capsys, monkeypatch):
        monkeypatch.setenv("RUNSLAB_MAX_N", "5")
        code, _, err = run(capsys, "dist", "--n", "6", "--force")
        assert code == 2
        assert "hard cap 5" in err

    def test_non_integer_n(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["dist", "--n", "four"])
        assert info.value.code == 2

    def test_quotient(self, capsys):
        code, doc, _ = run_json(capsys, "quotient", "--n", "4", "--threads", "1")
        assert code == 0
        assert doc["payload"]["quotient"] == {"1": "2", "2": "10"}
        assert "polynomial" not in doc["payload"]
        code, out, _ = run(capsys, "quotient", "--n", "3", "--threads", "1")
        assert out == "Q_3(z) = 2z + 4z^2; m=0\n"


class TestOrbit:
    def test_315462(self, capsys):
        code, doc, _ = run_json(capsys, "orbit", "--perm", "3 1 5 4 6 2")
        assert code == 0
        payload = doc["payload"]
        assert len(payload["members"]) == 4
        assert payload["minimal"]["permutation"] == [3, 1, 4, 5, 6, 2]
        assert payload["factored"] == "z^3(1+z)^2"
        assert payload["polynomial"] == {"3": "1", "4": "2", "5": "1"}
        assert [m["mask"] for m in payload["members"]] == [0, 1, 2, 3]

    def test_trivial(self, capsys):
        code, doc, _ = run_json(capsys, "orbit", "--perm", "1 2 3")
        assert code == 0
        assert len(doc["payload"]["members"]) == 1
        assert doc["payload"]["factored"] == "z"

    def test_duplicate(self, capsys):
        code, _, err = run(capsys, "orbit", "--perm", "1 1 2")
        assert code == 2
        assert "duplicate 1" in err

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "orbit", "--perm", "315462", "--format", "csv")
        assert out.splitlines() == [
            "mask,permutation,runs",
            "0,315462,5",
            "1,314526,4",
            "2,315426,4",
            "3,314562,3",
        ]

    def test_random_is_seeded(self, capsys):
        _, a, _ = run_json(capsys, "orbit", "--perm", "random", "--n", "8", "--seed", "3")
        _, b, _ = run_json(capsys, "orbit", "--perm", "random", "--n", "8", "--seed", "3")
        assert a == b
        assert sorted(a["payload"]["permutation"]) == list(range(1, 9))

    def test_random_needs_n(self, capsys):
        code, _, err = run(capsys, "orbit", "--perm", "random")
        assert code == 2


class TestCanon:
    def test_example(self, capsys):
        code, doc, _ = run_json(capsys, "canon", "--perm", "3 1 5 4 6 2")
        assert code == 0
        p = doc["payload"]
        assert p["representative"] == [3, 1, 4, 5, 6, 2]
        assert p["runs"] == 3
        assert p["generators_applied"] == [3, 5]
        assert p["is_minimal"] is True

    def test_already_minimal(self, capsys):
        code, out, _ = run(capsys, "canon", "--perm", "3 1 4 5 6 2")
        assert out == "314562  runs=3  mask={}\n"

    def test_monotone(self, capsys):
        code, out, _ = run(capsys, "canon", "--perm", "1 2 3 4")
        assert code == 0
        assert out.startswith("1234  runs=1")


class TestVerify:
    def test_all(self, capsys):
        code, doc, _ = run_json(capsys, "verify", "--n-min", "4", "--n-max", "8", "--props", "all", "--threads", "1")
        assert code == 0
        assert doc["payload"]["all_passed"] is True
        assert len(doc["payload"]["reports"]) == 9 * 5

    def test_trivial_divisibility(self, capsys):
        code, out, _ = run(capsys, "verify", "--n-min", "2", "--n-max", "3", "--props", "divisibility")
        assert code == 0
        assert "m=0 multiplicity=0" in out

    def test_two_props(self, capsys):
        code, doc, _ = run_json(capsys, "verify", "--n-min", "4", "--n-max", "4", "--props", "run-delta,commutativity")
        assert code == 0
        reports = doc["payload"]["reports"]
        assert [r["property"] for r in reports] == ["run-delta", "commutativity"]
        assert reports[0]["checked"] == 24

    def test_counterexample_exit_one(self, capsys, monkeypatch):
        import runslab.verify as verify_mod

        monkeypatch.setattr(verify_mod, "run_count", lambda p: 1)
        code, doc, _ = run_json(capsys, "verify", "--n-min", "4", "--n-max", "4", "--props", "run-delta")
        assert code == 1
        assert doc["status"] == "failed"
        cx = doc["payload"]["reports"][0]["counterexample"]
        assert cx["permutation"] == [1, 2, 3, 4]

    def test_unknown_prop(self, capsys):
        code, _, err = run(capsys, "verify", "--n-min", "4", "--n-max", "4", "--props", "parity")
        assert code == 2

    def test_infeasible(self, capsys):
        code, _, err = run(capsys, "verify", "--n-min", "4", "--n-max", "9", "--props", "run-delta")
        assert code == 2
        assert "--force" in err

    def test_reversed_range(self, capsys):
        code, _, _ = run(capsys, "verify", "--n-min", "5", "--n-max", "4")
        assert code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["dist", "--n", "5", "--threads", "1"],
        ["orbit", "--perm", "315462"],
        ["canon", "--perm", "315462"],
        ["verify", "--n-min", "4", "--n-max", "5", "--props", "run-delta,divisibility"],
    ],
)
def test_json_round_trip(capsys, argv):
    _, doc, raw = run_json(capsys, *argv)
    assert dump_json(json.loads(raw)) == raw


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "runslab", "dist", "--n", "4", "--format", "csv", "--threads", "1"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1:] == ["1,2", "2,12", "3,10"]
