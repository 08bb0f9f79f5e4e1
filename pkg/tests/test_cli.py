import json
import subprocess
import sys
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from seqcurves import certfile
from seqcurves.cli import main
from seqcurves.curves import SequenceSpec
from seqcurves.families import edwards_generate, huff_generate, twisted_generate


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(scope="module")
def edwards_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "ed.json"
    assert main(["generate", "--family", "edwards", "--values", "-1,0,1,2,3,4",
                 "--count", "3", "--out", str(path)]) == 0
    return path


def test_generate_edwards(edwards_file):
    cf = certfile.read(edwards_file)
    assert len(cf.certificates) == 3
    assert cf.version == "seqcurve/1"
    raw = json.loads(edwards_file.read_text())
    d = raw["certificates"][0]["params"]["d"]
    assert isinstance(d, str) and "/" in d


def test_generate_duplicate(capsys):
    code, _, err = run(capsys, "generate", "--family", "edwards", "--values", "-1,0,1,1,3,4")
    assert code == 2 and "distinct" in err


def test_generate_malformed(capsys):
    code, _, err = run(capsys, "generate", "--family", "edwards", "--values", "-1,0,1,2,x,4")
    assert code == 2


def test_generate_twisted(capsys):
    code, out, _ = run(capsys, "generate", "--family", "twisted", "--a", "2",
                       "--values", "0,2,3,5", "--count", "2")
    assert code == 0 and len(certfile.loads(out).certificates) == 2


def test_generate_inadmissible_huff(capsys):
    code, _, err = run(capsys, "generate", "--family", "huff", "--values", "-1,0,1,2,3")
    assert code == 2 and "-99" in err


def test_generate_partial(capsys):
    code, out, err = run(capsys, "generate", "--family", "edwards", "--values", "-1,0,1,2,3,4",
                         "--count", "10", "--max-multiple", "3")
    assert code == 3 and "warning" in err
    assert 0 < len(certfile.loads(out).certificates) < 10


def test_verify_ok(capsys, edwards_file):
    code, out, _ = run(capsys, "verify", str(edwards_file))
    assert code == 0 and "3 of 3" in out


def test_verify_tampered(capsys, edwards_file, tmp_path):
    doc = json.loads(edwards_file.read_text())
    w = doc["certificates"][1]["witnesses"][4]
    w[1] = str(F(w[1]) + 1)
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", str(bad))
    assert code == 1 and "certificate 1" in out and "FAILED" in out


def test_verify_empty(capsys, tmp_path):
    path = tmp_path / "empty.json"
    certfile.write(path, certfile.CertificateFile(SequenceSpec("edwards", (-1, 0, 1, 2, 3, 4)), [], {}))
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0 and "nothing to verify" in out


def test_verify_unparsable(capsys, tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    assert run(capsys, "verify", str(path))[0] == 2
    assert run(capsys, "verify", str(tmp_path / "missing.json"))[0] == 2


def test_search_huff(capsys):
    code, out, _ = run(capsys, "search", "--family", "huff", "--a", "3", "--b", "2", "--height", "1")
    assert code == 0
    pts = {tuple(p) for p in json.loads(out)["points"]}
    assert {("-1", "1"), ("-1", "-1"), ("0", "0"), ("1", "1"), ("1", "-1")} <= pts


def test_search_bad(capsys):
    assert run(capsys, "search", "--family", "edwards", "--d", "1", "--height", "3")[0] == 2
    assert run(capsys, "search", "--family", "edwards", "--d", "2", "--height", "0")[0] == 2


def test_admissible(capsys):
    code, out, _ = run(capsys, "admissible", "--family", "edwards", "--values", "2,3")
    rep = json.loads(out)
    assert code == 0 and rep["ok"] and rep["h_value"] == "1129"
    code, out, _ = run(capsys, "admissible", "--family", "huff", "--values", "2,3")
    rep = json.loads(out)
    assert rep["h_value"] == "-99" and rep["notes"]["A"] == "9" and rep["notes"]["B"] == "16"
    # the only rational points come from torsion, see README
    assert code == 2 and rep["failures"] == ["order certificate torsion"]
    code, out, _ = run(capsys, "admissible", "--family", "edwards", "--values", "1,3")
    assert code == 2 and not json.loads(out)["ok"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "seqcurves", "admissible", "--family", "edwards",
                           "--values", "2,3"], capture_output=True, text=True)
    assert proc.returncode == 0 and "1129" in proc.stdout


@pytest.fixture(scope="module")
def sample_results():
    return [
        edwards_generate(SequenceSpec("edwards", (-1, 0, 1, 2, 3, 4)), 2),
        twisted_generate(SequenceSpec("twisted", (0, 2, 3, 5), {"a": 2}), 1),
        twisted_generate(SequenceSpec("twisted", (-1, 1, 2, 3, 5), {"a": F(9, 4)}, "y"), 1),
        huff_generate(SequenceSpec("huff", (-1, 0, 1, 2, 5)), 2),
    ]


def test_round_trip(sample_results):
    for res in sample_results:
        cf = certfile.from_result(res)
        back = certfile.loads(certfile.dumps(cf))
        assert back == cf
        assert certfile.dumps(back) == certfile.dumps(cf)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.fractions(max_denominator=10**6).filter(lambda v: v not in (-1, 0, 1)),
                min_size=3, max_size=3, unique=True))
def test_round_trip_values(vals):
    spec = SequenceSpec("edwards", (-1, 0, 1, *vals), {"note": vals[0]})
    cf = certfile.CertificateFile(spec, [], {"slopes": tuple(vals)})
    assert certfile.loads(certfile.dumps(cf)) == cf


def test_bad_format_tag():
    with pytest.raises(certfile.FormatError):
        certfile.loads('{"format": "seqcurve/0", "spec": {}}')
