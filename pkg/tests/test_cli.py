import subprocess
import sys

import pytest

from rackenum.cli import run


def out(capsys, *argv):
    code = run(list(argv))
    return code, capsys.readouterr().out


def test_enumerate_prints_row(capsys):
    assert out(capsys, "enumerate", "--n", "4", "--kind", "rack", "--workers", "1") == (0, "19 18 17 2\n")


def test_oracle(capsys):
    assert out(capsys, "oracle", "--n", "3", "--kind", "quandle") == (0, "3\n")


def test_subgroups(capsys):
    code, text = out(capsys, "subgroups", "--n", "5")
    assert code == 0 and text.splitlines()[-1] == "a=19 b=10"


def test_enumerate_verify_export(tmp_path, capsys):
    lib = tmp_path / "q5.lib"
    assert run(["enumerate", "--n", "5", "--kind", "quandle", "--out", str(lib), "--workers", "1"]) == 0
    assert run(["verify", "--lib", str(lib)]) == 0
    tables, counts = tmp_path / "t.txt", tmp_path / "c.txt"
    assert run(["export", "--lib", str(lib), "--tables", str(tables), "--counts", str(counts)]) == 0
    assert counts.read_text().splitlines()[-1] == "22 18 15 7"
    assert tables.read_text().count("\n5\n") + 1 == 22
    capsys.readouterr()


def test_deterministic_output(tmp_path):
    a, b = tmp_path / "a.lib", tmp_path / "b.lib"
    run(["enumerate", "--n", "5", "--kind", "rack", "--out", str(a), "--workers", "1"])
    run(["enumerate", "--n", "5", "--kind", "rack", "--out", str(b), "--workers", "2"])
    assert a.read_bytes() == b.read_bytes()


def test_count_matches_sweep(capsys):
    from conftest import catalog
    from rackenum.action import orbit_sweep
    from rackenum.envelope import FolderSpace
    from rackenum.perm import normalizer_in_sym

    code, text = out(capsys, "count", "--n", "4", "--kind", "quandle")
    assert code == 0
    per_class = [int(line.split("orbits=")[1]) for line in text.splitlines()[:-1]]
    want = []
    for sc in catalog(4):
        sp = FolderSpace(sc.group, "quandle")
        want.append(orbit_sweep(sp, normalizer_in_sym(sc.group)).orbit_count_all)
    assert per_class == want


def test_burnside(tmp_path, capsys):
    dot = tmp_path / "g.dot"
    code, text = out(capsys, "burnside", "--group", "(1,2)(3,4,5)", "--f", "(1,2)(4,5)",
                     "--kind", "rack", "--dot", str(dot))
    assert code == 0
    assert text.splitlines() == ["induced=(1)(3)", "gamma[1]=2", "gamma[3]=2", "fix=4"]
    assert dot.read_text().startswith("digraph")
    code, text = out(capsys, "burnside", "--group", "(1,2);(1,2,3);(4,5);(4,5,6)",
                     "--f", "(1,5)(2,4)(3,6)", "--kind", "rack")
    assert text.splitlines()[-1] == "fix=2"


def test_catalog_file(tmp_path, capsys):
    cat = tmp_path / "cat.txt"
    cat.write_text("n=3\n(1,2,3)\n(1,2);(1,2,3)\n")
    code, text = out(capsys, "enumerate", "--n", "3", "--kind", "quandle", "--catalog", str(cat))
    # C_3 has no quandle envelope (trivial stabilizer centers); S_3 gives the dihedral quandle
    assert (code, text) == (0, "1 1 0 1\n")


def test_nonabelian_only(capsys):
    code, text = out(capsys, "enumerate", "--n", "5", "--kind", "quandle", "--nonabelian-only")
    assert text.split()[0] == "7"


@pytest.mark.parametrize("argv,code", [
    (["enumerate", "--n", "0", "--kind", "rack"], 2),
    (["enumerate", "--n", "3"], 2),
    (["enumerate", "--n", "4", "--kind", "rack", "--memory-cap", "2"], 3),
    (["verify", "--lib", "/nonexistent/file"], 2),
    (["burnside", "--group", "(1,2,3)", "--f", "(1,4)", "--kind", "rack"], 2),
])
def test_exit_codes(argv, code, capsys):
    assert run(argv) == code
    assert capsys.readouterr().out == ""


def test_corrupt_library_exit_code(tmp_path):
    lib = tmp_path / "r3.lib"
    run(["enumerate", "--n", "3", "--kind", "rack", "--out", str(lib)])
    data = bytearray(lib.read_bytes())
    data[30] ^= 1
    lib.write_bytes(bytes(data))
    assert run(["verify", "--lib", str(lib)]) == 4


def test_verify_rejects_wrong_survivors(tmp_path):
    from rackenum.store import read_library, write_library

    lib_path = tmp_path / "r3.lib"
    run(["enumerate", "--n", "3", "--kind", "rack", "--out", str(lib_path)])
    lib = read_library(lib_path.read_bytes())
    # set the bit of a folder that is not orbit-minimal or not an envelope
    rec = next(r for r in lib.classes if r.size > 1 and r.survivor_count)
    bits = bytearray(rec.bits)
    free = next(i for i in range(rec.size) if not bits[i >> 3] >> (i & 7) & 1)
    bits[free >> 3] |= 1 << (free & 7)
    rec.bits, rec.survivor_count = bytes(bits), rec.survivor_count + 1
    lib_path.write_bytes(write_library(lib))
    assert run(["verify", "--lib", str(lib_path)]) == 4


def test_module_entry_point_logs_to_stderr():
    proc = subprocess.run([sys.executable, "-m", "rackenum", "enumerate", "--n", "0", "--kind", "rack"],
                          capture_output=True, text=True)
    assert proc.returncode == 2 and proc.stdout == "" and "n must be" in proc.stderr
