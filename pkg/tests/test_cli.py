import io
import json
import subprocess
import sys

import pytest

from conftest import LATTICES, ROOT
from meadows.cli import run

PI1PI1 = str(LATTICES / "pi1pi1.json")


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_meadow_build_dot_is_diamond():
    code, out, _ = call("meadow-build", "zn:6", "--dot")
    assert code == 0
    assert out.count("[label=") == 4
    assert out.count("->") == 4
    assert 'v3 [label="{a}"];' in out
    assert "{ rank=same; v1; v2; }" in out


def test_meadow_decompose_json():
    code, out, _ = call("meadow-decompose", "zn:12")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == 1
    assert len(data["factors"]) == 2
    assert all(f["local"] for f in data["factors"])
    assert sorted(f["order"] for f in data["factors"]) == [3, 4]


def test_meadow_check_custom_lattice_reports_witness():
    code, out, _ = call("meadow-check", "custom-lattice", PI1PI1)
    assert code == 2
    assert "witness: (1,0)@top" in out
    assert "maximal invertibility vertices: left, right" in out


def test_meadow_check_passes_for_z6():
    code, out, _ = call("meadow-check", "zn:6")
    assert code == 0
    assert "FAIL" not in out


def test_meadow_check_json_witness():
    code, out, _ = call("meadow-check", "custom-lattice", PI1PI1, "--json")
    assert code == 2
    data = json.loads(out)
    assert data["witness"]["element"] == "(1,0)@top"
    assert data["witness"]["maximal"] == ["left", "right"]


def test_ring_info_and_ideals():
    code, out, _ = call("ring-info", "zn:6", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["units"] == ["1", "5"] and data["primitive_idempotents"] == ["3", "4"]
    code, out, _ = call("ideals", "zn:12")
    assert code == 0 and out.startswith("6 ideals of Z12")


def test_atoms_and_product():
    code, out, _ = call("meadow-atoms", "zn:12")
    assert code == 0 and "2 atoms" in out and "local: false" in out
    code, out, _ = call("meadow-product", "zn:2", "custom-lattice", PI1PI1, "--json")
    assert code == 0
    data = json.loads(out)
    assert data["common"] is False and data["factors_common"] == [True, False]


def test_lattice_dot_and_custom_lattice():
    code, out, _ = call("lattice-dot", "zn:6")
    assert code == 0 and 'label="(1)"' in out
    code, out, _ = call("custom-lattice", PI1PI1)
    assert code == 0 and "not common" in out


@pytest.mark.parametrize("argv", [["bogus"], ["meadow-build", "zn:6", "--nope"], [],
                                  ["meadow-build"], ["meadow-build", "zn:6", "zn:3"],
                                  ["meadow-product", "zn:2"], ["meadow-check", "custom-lattice"],
                                  ["ring-info", "custom-lattice", PI1PI1],
                                  ["meadow-build", "zn:6", "--dot", "--json"]])
def test_usage_errors_exit_64(argv):
    code, _, err = call(*argv)
    assert code == 64
    assert "usage" in err or "error" in err


@pytest.mark.parametrize("argv", [["meadow-build", "zn:x"], ["meadow-build", "zn:5000"],
                                  ["meadow-build", "zn:50", "--cap", "10"],
                                  ["meadow-check", "custom-lattice", "missing.json"],
                                  ["meadow-decompose", "custom-lattice", PI1PI1]])
def test_domain_errors_exit_1(argv):
    code, out, err = call(*argv)
    assert code == 1
    assert err.startswith("error:")
    assert out == ""


def test_sampled_flag_uses_seed():
    a = call("meadow-check", "zn:12", "--sampled", "--seed", "7", "--json")[1]
    b = call("meadow-check", "zn:12", "--sampled", "--seed", "7", "--json")[1]
    assert a == b
    assert json.loads(a)["pre_meadow"]["results"][0]["sampled"] is True


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "meadows", "meadow-atoms", "zn:4"],
                          capture_output=True, text=True, cwd=ROOT)
    assert proc.returncode == 0
    assert "local: true" in proc.stdout
