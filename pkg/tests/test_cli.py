import json
import subprocess
import sys

import pytest

from homcls import io
from homcls.cli import run
from homcls.homotopy import HomotopyEngine
from homcls.postnikov import parse_target


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def test_group_s4(capsys):
    assert call(capsys, "group", "--space", "s4.json", "--target", "sphere:3")[:2] == (0, "Z/2")


def test_cohomology_rp2(capsys):
    assert call(capsys, "cohomology", "--space", "rp2.json", "--coeff", "Z", "--dim", "2")[:2] == (0, "Z/2")


def test_homotopic(capsys):
    code, out, _ = call(capsys, "homotopic", "--space", "s3.json", "--target", "sphere:3",
                        "--map", "id_s3.json", "--map", "const_s3.json")
    assert (code, out) == (0, "not homotopic")
    code, out, _ = call(capsys, "homotopic", "--space", "s3.json", "--target", "sphere:3",
                        "--map", "id_s3.json", "--map", "id_s3.json")
    assert (code, out) == (0, "homotopic")


@pytest.mark.parametrize("argv", [
    ["group", "--space", "s4.json", "--target", "sphere:3"],
    ["group", "--space", "wedge_s4_s3.json", "--target", "sphere:3"],
    ["stage-group", "--space", "torus7.json", "--target", "em:Z:2", "--stage", "2"],
    ["cohomology", "--space", "torus7.json", "--coeff", "Z+Z/2", "--dim", "1"],
])
def test_json_and_text_agree(capsys, argv):
    _, text, _ = call(capsys, *argv)
    code, js, _ = call(capsys, *argv, "--json")
    obj = json.loads(js)
    assert code == 0 and obj["schema_version"] == 1
    torsion, free = io.group_from_json(obj)
    from homcls.abelian import format_group
    assert format_group(torsion, free) == text


def test_nullhomotopic_certificate(capsys, tmp_path):
    cert = tmp_path / "cert.json"
    mp = tmp_path / "map.json"
    io.write_json(mp, io.stamp({"assignments": {
        **{f"{a},{b}": "*" for a in range(5) for b in range(a + 1, 5)},
        **{str(v): "*" for v in range(5)},
        **{",".join(map(str, t)): "*" for t in [(0, 1, 2), (0, 1, 3), (0, 1, 4), (0, 2, 3), (0, 2, 4),
                                                  (0, 3, 4), (1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]},
        "0,1,2,3": "s3", "0,1,2,4": "s3", "0,1,3,4": "*", "0,2,3,4": "*", "1,2,3,4": "*"}}))
    code, out, _ = call(capsys, "nullhomotopic", "--space", "dd4.json", "--target", "sphere:3",
                        "--map", str(mp), "--certificate", str(cert))
    # facets missing 4 and 3 have opposite orientation, so the map has degree 0
    assert (code, out) == (0, "nullhomotopic")
    b, source = io.certificate_from_json(io.read_json(cert))
    eng = HomotopyEngine(parse_target("sphere:3"))
    assert eng.is_valid(b) and eng.restrict_to_base(b).components == source.components
    assert not source.is_zero()


def test_not_nullhomotopic(capsys):
    code, out, _ = call(capsys, "nullhomotopic", "--space", "s3.json", "--target", "sphere:3",
                        "--map", "id_s3.json", "--json")
    assert code == 0 and json.loads(out)["nullhomotopic"] is False


def test_em_homotopic_with_cocycles(capsys, tmp_path):
    x = io.load_space(io.data_path("rp2.json"))
    from homcls.cochains import Z2, cohomology_group, coboundary, Cochain
    z = cohomology_group(x, 2, Z2).generators[0]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    io.write_json(a, io.cochain_to_json(z))
    io.write_json(b, io.cochain_to_json(z + coboundary(Cochain(x, 1, Z2, {"0,1": 1}))))
    code, out, _ = call(capsys, "homotopic", "--space", "rp2.json", "--target", "em:Z/2:2",
                        "--map", str(a), "--map", str(b))
    assert (code, out) == (0, "homotopic")


def test_snf(capsys, tmp_path):
    p = tmp_path / "m.json"
    p.write_text("[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]")
    code, out, _ = call(capsys, "snf", str(p), "--json")
    assert code == 0 and json.loads(out)["diagonal"] == [2, 6, 12]
    code, out, _ = call(capsys, "snf", str(p))
    assert out.splitlines()[1] == "D = [[2, 0, 0], [0, 6, 0], [0, 0, 12]]"
    p.write_text("[[1, 2], [3]]")
    assert call(capsys, "snf", str(p))[0] == 3


def test_exit_codes(capsys, tmp_path):
    assert call(capsys, "group", "--space", "s4.json")[0] == 1
    assert call(capsys, "frobnicate")[0] == 1
    assert call(capsys, "group", "--space", "s4.json", "--target", "sphere:9")[0] == 1
    assert call(capsys, "homotopic", "--space", "s3.json", "--target", "sphere:3", "--map", "id_s3.json")[0] == 1
    assert call(capsys, "group", "--space", "dd4.json", "--target", "em:Z:2")[0] == 2
    assert call(capsys, "stage-group", "--space", "s3.json", "--target", "sphere:3", "--stage", "9")[0] == 2
    assert call(capsys, "group", "--space", "missing.json", "--target", "sphere:3")[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema_version": 2, "format": "simplicial_set"}')
    assert call(capsys, "group", "--space", str(bad), "--target", "sphere:3")[0] == 3
    bad.write_text("{not json")
    assert call(capsys, "group", "--space", str(bad), "--target", "sphere:3")[0] == 3
    nonsimp = tmp_path / "f.json"
    io.write_json(nonsimp, {"assignments": {"v": "*", "s3": "v"}})
    assert call(capsys, "homotopic", "--space", "s3.json", "--target", "sphere:3",
                "--map", str(nonsimp), "--map", "id_s3.json")[0] == 3


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "homcls", "group", "--space", "s3.json",
                           "--target", "sphere:3"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "Z"
