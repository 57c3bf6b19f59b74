import json
import subprocess
import sys
from pathlib import Path

import pytest

from osborn.cli import main
from osborn.enumerate import kinyon16
from osborn.loop import load_loop, parse_loop, serialize_loop
from osborn.properties import holds_at

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def tab(tmp_path):
    p = tmp_path / "kinyon16.tab"
    p.write_text(serialize_loop(kinyon16()))
    return p


def test_check_universal_osborn(capsys, tab):
    code, out, _ = run(capsys, "check", str(tab), "--property", "osborn",
                       "--property", "universal-osborn")
    assert code == 0
    assert out == "os0 holds\nuniversal-osborn holds\n"


def test_check_failure_exit_and_witness(capsys, tab):
    code, out, _ = run(capsys, "check", str(tab), "--property", "wip")
    assert code == 1 and out == "wip fails witness: 3,9,14\n"
    assert not holds_at(kinyon16(), "wip", (3, 9, 14))


def test_check_groups(capsys):
    for name in ("z4", "v4"):
        code, _, _ = run(capsys, "check", f"{name}.tab", "--property", "cip")
        assert code == 0


def test_structured_golden(capsys):
    argv = ["check", "kinyon16.tab", "--property", "osborn", "--property", "wip",
            "--property", "cip", "--property", "lsip", "--property", "universal-osborn",
            "--format", "structured"]
    code, out, _ = run(capsys, *argv)
    assert code == 1
    assert out == (GOLDEN / "check_kinyon16.jsonl").read_text()
    for line in out.splitlines():
        rec = json.loads(line)
        assert ("witness" in rec) == (rec["status"] == "fails")
    assert run(capsys, *argv)[1] == out


def test_encode(capsys, tab):
    code, out, _ = run(capsys, "encode", "--loop", str(tab), "--key", "16", "--ci", "dlip",
                       "--split", "2", "--msg", "OSBORN")
    assert code == 0 and out == "9,16,7,9,10,12\n"


def test_cipher_table_golden(capsys):
    code, out, _ = run(capsys, "encode", "--loop", "kinyon16.tab", "--key", "16",
                       "--split", "2", "--msg", "OSBORN", "--table")
    assert code == 0
    assert out.encode() == (GOLDEN / "cipher_table.tsv").read_bytes()


def test_decode(capsys, tmp_path):
    codec = tmp_path / "c.map"
    codec.write_text("B 7\nN 9\nO 11\nR 12\nS 13\n")
    base = ["--loop", "kinyon16", "--key", "16", "--split", "2", "--codec", str(codec)]
    assert run(capsys, "decode", *base, "--cipher", "9,16,7,9,10,12") == (0, "OSBORN\n", "")
    code, out, _ = run(capsys, "decode", *base, "--cipher", "9,16,7,9,10,12", "--elements")
    assert out == "11,13,7,11,12,9\n"


def test_chain(capsys):
    code, out, _ = run(capsys, "chain", "--loop", "kinyon16", "--components",
                       "L:16|L:10|R:10|R:16", "--msg", "OSBORN")
    assert code == 0
    assert out.splitlines()[-1] == "4\tR:16\t11*\t13*\t7*\t11*\t12*\t9*"


def test_isotope(capsys, tmp_path):
    out_file = tmp_path / "iso.tab"
    code, _, _ = run(capsys, "isotope", "kinyon16", "--f", "2", "--g", "3", "-o", str(out_file))
    iso = load_loop(out_file)
    assert code == 0 and iso.identity == 4 and iso.mul(3, 2) == 1


def test_universal_check(capsys):
    assert run(capsys, "universal-check", "kinyon16")[1] == "universal-osborn holds\n"


def test_enumerate_emit(capsys, tmp_path):
    code, out, _ = run(capsys, "enumerate", "--order", "5", "--where", "osborn",
                       "--emit", str(tmp_path / "hits"))
    files = sorted((tmp_path / "hits").glob("*.tab"))
    assert code == 0 and out == "order 5 loops 6\n" and len(files) == 6
    for f in files:
        assert parse_loop(f.read_text()).order == 5


def test_enumerate_too_large(capsys):
    code, _, err = run(capsys, "enumerate", "--order", "7")
    assert code == 2 and "exceeds" in err


def test_cycles(capsys, tab):
    code, out, _ = run(capsys, "cycles", "--loop", str(tab))
    assert out.splitlines()[0] == "(1)(2)(3)(4)(5)(6)(7 8)(9 15 11 14 10 16 12 13)"


def test_cf(capsys):
    code, out, _ = run(capsys, "cf", "kinyon16", "--ci", "osi011", "--key", "16", "--split", "3")
    assert code == 0
    assert "degree 6" in out and "rfc R:10,R:16,L:16" in out


def test_verify_theorem(capsys):
    code, out, _ = run(capsys, "verify-theorem", "kinyon16", "--theorem", "r-inner-companion",
                       "--theorem", "wip-osborn-inverses")
    assert code == 0
    assert out.splitlines() == ["r-inner-companion holds", "wip-osborn-inverses vacuous"]


def test_g_loop_seed(capsys):
    argv = ["check", "kinyon16", "--property", "g-loop", "--samples", "4", "--seed", "11",
            "--format", "structured"]
    first = run(capsys, *argv)
    assert first[0] == 0 and first == run(capsys, *argv)


def test_report(capsys, tmp_path):
    code, out, _ = run(capsys, "report", "z3", "--out", str(tmp_path))
    assert code == 0
    assert {Path(p).name for p in out.split()} >= {"cayley.png", "properties.tsv"}


@pytest.mark.parametrize("argv,code", [
    (["check", "missing.tab"], 3),
    (["check", "kinyon16", "--property", "nope"], 2),
    (["encode", "--loop", "kinyon16", "--key", "16", "--split", "0", "--msg", "O"], 2),
    (["encode", "--loop", "kinyon16", "--key", "99", "--split", "2", "--msg", "O"], 2),
    (["encode", "--loop", "kinyon16", "--key", "16", "--split", "2", "--msg", "Q"], 2),
    (["decode", "--loop", "kinyon16", "--key", "16", "--split", "2", "--cipher", "x"], 2),
])
def test_error_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_malformed_file(capsys, tmp_path):
    bad = tmp_path / "bad.tab"
    bad.write_text("2\n1 2\n1 2\n")
    assert run(capsys, "validate", str(bad))[0] == 3


def test_argparse_usage_exit():
    with pytest.raises(SystemExit) as exc:
        main(["check", "--format", "xml"])
    assert exc.value.code == 2


def test_console_entry():
    r = subprocess.run([sys.executable, "-m", "osborn.cli", "encode", "--loop", "kinyon16",
                        "--key", "16", "--split", "2", "--msg", "OSBORN"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "9,16,7,9,10,12\n"
