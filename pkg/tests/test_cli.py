"""Command-line interface tests.

Golden lines below were produced by the commands themselves and frozen; the
serializer pins floats to 12 significant digits, so the bytes must be stable
across runs and platforms. Exit codes: 0 success, 1 theorem check failed with
the cardinality hypothesis met, 2 usage or input error, 3 numerical failure.
"""

import json
import subprocess
import sys

import numpy as np
import pytest

from fewdist import construct_johnson, construct_named
from fewdist.cli import run

GOLDEN_BOUNDS = (
    '{"setting":"euclidean","d":10,"s":3,"N":77,'
    '"cardinality_threshold":154,"ratio_bound":6}'
)
GOLDEN_INVERT = (
    '{"success":true,"t":[0.5,0.75],"residual":0,"iterations":0,'
    '"start_index":-1,"method":"closed_form","branches":["+","-"]}'
)


@pytest.fixture(scope="module")
def square_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "square.json"
    payload = {"dimension": 2, "points": [[0, 0], [1, 0], [1, 1], [0, 1]]}
    path.write_text(json.dumps(payload))
    return str(path)


@pytest.fixture(scope="module")
def broken_johnson_file(tmp_path_factory):
    # Dropping five points kills the orbit symmetry, then a 1% stretch of the
    # first coordinate moves the class means off the integral ratios while
    # n = 160 still clears the threshold of 154.
    ps = construct_johnson(10, 3)
    pts = np.array(ps.points[:-5])
    pts[:, 0] *= 1.01
    path = tmp_path_factory.mktemp("cli") / "jbroken.json"
    path.write_text(json.dumps({"dimension": 11, "points": pts.tolist()}))
    return str(path)


@pytest.fixture(scope="module")
def e8_gram_file(tmp_path_factory):
    e8 = construct_named("e8_roots")
    gram = e8.points @ e8.points.T
    path = tmp_path_factory.mktemp("cli") / "e8gram.json"
    path.write_text(json.dumps({"kind": "gram", "matrix": gram.tolist()}))
    return str(path)


class TestGoldenOutput:
    def test_bounds_exact_bytes(self, capsys):
        assert run(["bounds", "--setting", "euclidean", "-d", "10", "-s", "3"]) == 0
        assert capsys.readouterr().out == GOLDEN_BOUNDS + "\n"

    def test_invert_exact_bytes(self, capsys):
        assert run(["invert", "-s", "3", "-k", "6,-8"]) == 0
        assert capsys.readouterr().out == GOLDEN_INVERT + "\n"

    def test_run_to_run_stability(self, capsys):
        argv = ["invert", "-s", "4", "-k", "4,-6,4"]
        assert run(argv) == 0
        first = capsys.readouterr().out
        assert run(argv) == 0
        assert capsys.readouterr().out == first
        first.encode("ascii")

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "fewdist", "bounds", "--setting", "euclidean", "-d", "10", "-s", "3"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout == GOLDEN_BOUNDS + "\n"

    def test_pretty_flag_changes_layout_not_content(self, capsys):
        assert run(["bounds", "--setting", "spherical", "-d", "3", "-s", "2"]) == 0
        compact = capsys.readouterr().out
        assert run(["--json-pretty", "bounds", "--setting", "spherical", "-d", "3", "-s", "2"]) == 0
        pretty = capsys.readouterr().out
        assert pretty != compact
        assert "\n  " in pretty
        assert json.loads(pretty) == json.loads(compact)

    def test_global_flag_after_subcommand(self, capsys):
        assert run(["bounds", "--setting", "spherical", "-d", "3", "-s", "2", "--json-pretty"]) == 0
        after = capsys.readouterr().out
        assert run(["--json-pretty", "bounds", "--setting", "spherical", "-d", "3", "-s", "2"]) == 0
        assert capsys.readouterr().out == after

    def test_output_file(self, tmp_path, capsys):
        dest = tmp_path / "out.json"
        assert run(["bounds", "--setting", "euclidean", "-d", "10", "-s", "3", "-o", str(dest)]) == 0
        assert capsys.readouterr().out == ""
        assert dest.read_text() == GOLDEN_BOUNDS + "\n"


class TestSubcommands:
    def test_construct_johnson(self, capsys):
        assert run(["construct", "johnson", "-d", "4", "-s", "2"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["dimension"] == 5
        assert len(payload["points"]) == 10

    def test_construct_named(self, capsys):
        assert run(["construct", "pentagon"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["points"]) == 5

    def test_profile(self, square_file, capsys):
        assert run(["profile", square_file]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert sorted(payload) == ["dimension", "distance", "inner_product", "n"]
        assert payload["distance"]["squared_distances"] == [1.0, 2.0]
        assert payload["distance"]["pair_counts"] == [4, 2]
        assert payload["inner_product"] is None

    def test_ratios_square(self, square_file, capsys):
        assert run(["ratios", square_file]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["n"] == 4
        assert payload["reports"][0]["rounded_k"] == [2, -1]

    def test_certify_square(self, square_file, capsys):
        assert run(["certify", square_file]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["all_passed"] is True
        assert len(payload["verdicts"]) == 2

    def test_certify_single_class(self, square_file, capsys):
        assert run(["certify", square_file, "--class", "1"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["verdicts"]) == 1

    def test_enumerate_realized(self, capsys):
        assert run(["enumerate", "-d", "10", "-s", "3", "--realize"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["counts"] == {
            "total": 21,
            "realized": 15,
            "unrealizable": 6,
            "newton_failed": 0,
        }
        assert "154" in payload["report"]["finiteness"]

    def test_embed_check_gram(self, e8_gram_file, capsys):
        assert run(["embed-check", e8_gram_file, "-d", "8"]) == 0
        assert json.loads(capsys.readouterr().out)["embeddable"] is True
        # A negative verdict is still a successful query, not a failure.
        assert run(["embed-check", e8_gram_file, "-d", "7"]) == 0
        assert json.loads(capsys.readouterr().out)["embeddable"] is False


class TestExitCodes:
    def test_theorem_failure_is_exit_1(self, broken_johnson_file, capsys):
        rc = run(["ratios", broken_johnson_file, "--tol", "1e-2"])
        assert rc == 1
        payload = json.loads(capsys.readouterr().out)
        report = payload["reports"][0]
        assert report["hypothesis_met"] is True
        assert report["all_integral"] is False

    def test_intact_johnson_is_exit_0(self, tmp_path, capsys):
        ps = construct_johnson(10, 3)
        path = tmp_path / "johnson.json"
        path.write_text(json.dumps(ps.to_dict()))
        assert run(["ratios", str(path)]) == 0
        assert json.loads(capsys.readouterr().out)["reports"][0]["all_integral"] is True

    def test_missing_file(self, capsys):
        assert run(["ratios", "/nonexistent/points.json"]) == 2
        assert "error" in capsys.readouterr().err

    def test_corrupt_json(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        assert run(["profile", str(path)]) == 2
        assert "error" in capsys.readouterr().err

    def test_ragged_rows(self, tmp_path, capsys):
        path = tmp_path / "ragged.json"
        path.write_text('{"points": [[0, 0], [1]]}')
        assert run(["profile", str(path)]) == 2
        capsys.readouterr()

    def test_unknown_flag(self, capsys):
        assert run(["bounds", "--setting", "euclidean", "-d", "10", "-s", "3", "--bogus"]) == 2
        capsys.readouterr()

    def test_unknown_subcommand(self, capsys):
        assert run(["frobnicate"]) == 2
        capsys.readouterr()

    def test_invert_bad_sign_pattern(self, capsys):
        assert run(["invert", "-s", "3", "-k", "-6,8"]) == 2
        assert "error" in capsys.readouterr().err

    def test_invert_wrong_count(self, capsys):
        assert run(["invert", "-s", "3", "-k", "6"]) == 2
        assert "s-1 = 2" in capsys.readouterr().err

    def test_invert_non_numeric(self, capsys):
        assert run(["invert", "-s", "3", "-k", "6,eight"]) == 2
        capsys.readouterr()

    def test_construct_johnson_needs_parameters(self, capsys):
        assert run(["construct", "johnson"]) == 2
        capsys.readouterr()

    def test_certify_class_out_of_range(self, square_file, capsys):
        assert run(["certify", square_file, "--class", "99"]) == 2
        assert "out of range" in capsys.readouterr().err

    def test_embed_check_unknown_kind(self, tmp_path, capsys):
        path = tmp_path / "odd.json"
        path.write_text('{"kind": "adjacency", "matrix": [[0, 1], [1, 0]]}')
        assert run(["embed-check", str(path), "-d", "2"]) == 2
        capsys.readouterr()

    def test_numerical_failure_is_exit_3_with_json(self, capsys):
        rc = run(["invert", "-s", "2", "-k", "1"])
        assert rc == 3
        payload = json.loads(capsys.readouterr().out)
        assert payload["success"] is False
        assert payload["method"] == "newton"
