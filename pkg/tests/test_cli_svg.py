import subprocess
import sys
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from padic_cusp.building import apartment_window, sl2_tree
from padic_cusp.cli import main
from padic_cusp.root_data import build_root_system
from padic_cusp.svg import apartment_svg, tree_svg

SVG_NS = "{http://www.w3.org/2000/svg}"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_apartment_a2_has_three_families(capsys):
    code, out, _ = run(capsys, "apartment", "A2", "--box", "3")
    assert code == 0
    root = ET.fromstring(out)
    families = [g for g in root.iter(f"{SVG_NS}g") if g.get("class") == "family"]
    assert len(families) == 3
    assert all(len(list(g)) > 0 for g in families)


def test_apartment_a1_svg():
    root = ET.fromstring(apartment_svg(apartment_window(build_root_system("A", 1), 1)))
    assert len([g for g in root.iter(f"{SVG_NS}g") if g.get("class") == "family"]) == 1


def test_apartment_rank_three_is_rejected():
    with pytest.raises(ValueError):
        apartment_svg(apartment_window(build_root_system("A", 3), [(1, -1)] * 3))


def test_tree_description(capsys):
    code, out, err = run(capsys, "tree", "--q", "3", "--depth", "1")
    assert code == 0
    assert out.splitlines()[0] == "tree q=3 depth=1 vertices=5 edges=4"
    assert "# q = 3" in err


def test_tree_svg_counts():
    root = ET.fromstring(tree_svg(sl2_tree(2, 2)))
    assert len(list(root.iter(f"{SVG_NS}circle"))) == 10
    assert len(list(root.iter(f"{SVG_NS}line"))) == 9


def test_yu_validate_builtin(capsys):
    code, out, _ = run(capsys, "yu-validate", "builtin:sl2_simple")
    assert code == 0
    assert "valid\tTrue" in out
    code, out, _ = run(capsys, "yu-validate", "builtin:gl2_nongeneric")
    assert code == 1


def test_generic_check_verdicts(capsys):
    code, out, _ = run(capsys, "generic-check", "--p", "7", "--character", "split exponents=1,0 c=3/7")
    assert code == 0 and "generic\tTrue" in out
    code, out, _ = run(capsys, "generic-check", "--p", "7", "--character", "split exponents=1,1 c=3/7")
    assert code == 1 and "generic\tFalse" in out


def test_weil_and_finrep(capsys):
    code, out, _ = run(capsys, "weil", "--p", "3", "--dim", "2", "--verify")
    assert code == 0 and "multiplicative\tTrue" in out and "pairs\t576" in out
    code, out, _ = run(capsys, "finrep", "--group", "SL2F3", "--cuspidal")
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines()]
    verdicts = [row[2] for row in rows if len(row) == 3 and row[2] in ("True", "False")]
    assert verdicts.count("True") == 3 and len(verdicts) == 7


def test_character_commands(capsys):
    code, out, _ = run(capsys, "character", "--p", "7", "--delta", "3")
    assert code == 0 and "Theta" in out
    code, out, _ = run(capsys, "real-character", "--n", "2", "--turns", "1/4")
    assert code == 0 and out.splitlines()[1].split("\t")[2] == "1"


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "apartment", "A2", "--bogus")[0] == 2
    assert run(capsys, "nonexistent")[0] == 2
    assert run(capsys, "tree", "--q", "3", "--depth", "1", "--precision", "0")[0] == 2


def test_computational_errors_exit_1(capsys):
    code, _, err = run(capsys, "character", "--p", "7", "--delta", "3", "--gamma", "1,7")
    assert code == 1
    assert "error: UnsupportedTorus" in err


def test_outputs_are_byte_identical(tmp_path):
    outputs = []
    for k in range(2):
        path = tmp_path / f"run{k}.txt"
        assert main(["mp-table", "--group", "SL", "--x", "1/4,-1/4", "--r", "1/2", "--seed", "5",
                     "--out", str(path)]) == 0
        svg = tmp_path / f"run{k}.svg"
        assert main(["apartment", "A2", "--box", "2", "--out", str(svg)]) == 0
        outputs.append((path.read_bytes(), svg.read_bytes()))
    assert outputs[0] == outputs[1]


def test_precision_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("PADIC_CUSP_PRECISION", "4")
    _, _, err = run(capsys, "tree", "--q", "2", "--depth", "1")
    assert "# precision = 4" in err
    _, _, err = run(capsys, "tree", "--q", "2", "--depth", "1", "--precision", "7")
    assert "# precision = 7" in err


def test_module_entry_point():
    result = subprocess.run([sys.executable, "-m", "padic_cusp", "tree", "--q", "2", "--depth", "0"],
                            capture_output=True, text=True, check=False)
    assert result.returncode == 0
    assert "vertices=1" in result.stdout
