import subprocess
import sys

import pytest

from ramseylab import catalog
from ramseylab.cli import main
from ramseylab.constructions import two_c5_coloring
from ramseylab.formats import read_coloring, read_design, write_coloring


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_clean_catalog(capsys):
    code, out, _ = run(capsys, "verify", "--pattern", "kite", "kite_k6_n7")
    assert code == 0 and "NO MONO COPY" in out
    assert "class sizes 7,7,6,6,5,4" in out


def test_verify_witness(capsys):
    code, out, _ = run(capsys, "verify", "--pattern", "bow", "kite_k6_n7")
    assert code == 1 and "MONO COPY in color" in out


def test_verify_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.hrc"
    bad.write_text("HRC1\nr 3 n 4 k 2 m 1\n0 1 2 7\n")
    code, _, err = run(capsys, "verify", "--pattern", "kite", str(bad))
    assert code == 2 and "line 3" in err
    code, _, _ = run(capsys, "verify", "--pattern", "kite", str(tmp_path / "missing.hrc"))
    assert code == 2


def test_verify_unknown_pattern(capsys):
    code, _, err = run(capsys, "verify", "--pattern", "nope", "kite_k6_n7")
    assert code == 1 and "nope" in err


def test_construct_sum_mod(capsys, tmp_path):
    out_path = tmp_path / "s.hrc"
    code, out, _ = run(capsys, "construct", "sum-mod", "--n", "5", "--m", "5", "--out", str(out_path))
    assert code == 0 and "kite-free" in out and "NO MONO COPY" in out
    assert len(out_path.read_text().splitlines()) == 2 + 10


def test_construct_certificate(capsys, tmp_path):
    out_path = tmp_path / "b.hrc"
    code, _, _ = run(capsys, "construct", "certificate", "--name", "bow_k6_n6", "--out", str(out_path))
    c = read_coloring(out_path)
    assert code == 0 and len(out_path.read_text().splitlines()) == 22 and c.k == 6


def test_construct_stepping_up(capsys, tmp_path):
    phi = tmp_path / "phi.hrc"
    write_coloring(two_c5_coloring(), phi)
    out_path = tmp_path / "psi.hrc"
    code, out, _ = run(capsys, "construct", "stepping-up", "--input", str(phi), "--out", str(out_path))
    assert code == 0 and read_coloring(out_path).n == 32 and "NO MONO COPY" in out


def test_construct_stepping_up_void(capsys, tmp_path):
    from ramseylab.core import Coloring
    phi = tmp_path / "k3.hrc"
    write_coloring(Coloring.from_function(2, 3, 1, lambda s: 0), phi)
    code, out, _ = run(capsys, "construct", "stepping-up", "--input", str(phi),
                       "--out", str(tmp_path / "o.hrc"))
    assert code == 0 and "guarantee void" in out


@pytest.mark.parametrize("argv", [
    ["kneser", "--r", "3", "--k", "2"],
    ["random-cover", "--n", "9", "--k", "40", "--seed", "5"],
    ["pasch-host", "--q", "2"],
    ["design-coloring", "--v", "8"],
    ["design-coloring", "--v", "10", "--method", "pairs"],
])
def test_construct_variants(capsys, tmp_path, argv):
    out_path = tmp_path / "c.hrc"
    code, out, _ = run(capsys, "construct", *argv, "--out", str(out_path))
    assert code == 0 and "guarantee:" in out and "NO MONO COPY" in out
    read_coloring(out_path)


def test_construct_k43e(capsys, tmp_path):
    phi = tmp_path / "phi.hrc"
    write_coloring(two_c5_coloring(), phi)
    code, out, _ = run(capsys, "construct", "k43e", "--input", str(phi), "--out", str(tmp_path / "o.hrc"))
    assert code == 0 and "NO MONO COPY" in out
    from ramseylab.core import Coloring
    write_coloring(Coloring.from_function(2, 3, 1, lambda s: 0), phi)
    code, _, err = run(capsys, "construct", "k43e", "--input", str(phi), "--out", str(tmp_path / "o.hrc"))
    assert code == 1 and "triangle" in err


def test_random_cover_requires_seed(capsys, tmp_path):
    with pytest.raises(SystemExit):
        main(["construct", "random-cover", "--n", "9", "--k", "40", "--out", str(tmp_path / "x")])


def test_search(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "--pattern", "kite", "--k", "4", "--n", "5")
    assert code == 0 and "NOT FOUND ⇒ r_4(kite) ≤ 5" in out
    code, out, _ = run(capsys, "search", "--pattern", "kite", "--k", "4", "--n", "4",
                       "--out-dir", str(tmp_path))
    assert code == 0 and "FOUND ⇒ r_4(kite) > 4" in out
    assert read_coloring(tmp_path / "kite_k4_n4.hrc").k == 4
    code, out, _ = run(capsys, "search", "--pattern", "F5", "--k", "3", "--n", "7", "--budget", "10")
    assert code == 3


def test_turan_and_bounds(capsys):
    code, out, _ = run(capsys, "turan", "--pattern", "bow", "--n", "8")
    assert code == 0 and out.splitlines()[0] == "8"
    code, out, _ = run(capsys, "turan", "--pattern", "kite", "--n", "9", "--budget", "3")
    assert code == 3
    code, out, _ = run(capsys, "bounds", "--pattern", "bow", "--k", "6")
    assert code == 0 and out.splitlines()[0] == "[7,7]" and "bow_k6_n6" in out


def test_design(capsys, tmp_path):
    out_path = tmp_path / "d.des"
    code, _, _ = run(capsys, "design", "--t", "3", "--v", "8", "--block-size", "4", "--out", str(out_path))
    assert code == 0 and len(read_design(out_path).blocks) == 14
    code, out, _ = run(capsys, "design", "--t", "3", "--v", "7", "--block-size", "4", "--out", str(out_path))
    assert code == 1 and "counting obstruction" in out


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0 and out.count("clean") == len(catalog.names())


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "ramseylab.cli", "turan", "--pattern", "kite", "--n", "7"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "7"
