import io
import json
import subprocess
import sys

from thicklat import gallery
from thicklat.cli import lattice_document, lattice_from_document, main


def run(capsys, monkeypatch, argv, stdin=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def example(name):
    return json.dumps(lattice_document(gallery.get(name).lattice,
                                       automorphism=gallery.get(name).serre,
                                       sublattice=gallery.get(name).tensor_sub))


def first(out):
    return json.loads(out.splitlines()[0])


def test_check_diamond(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["check"], example("diamond"))
    assert code == 0
    props = {p["property"]: p for p in first(out)["properties"]}
    assert props["distributive"]["verdict"] is False
    assert props["distributive"]["witness"] == ["l", "m", "n"]


def test_check_boolean2_all_true(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["check"], example("boolean2"))
    assert all(p["verdict"] for p in first(out)["properties"])


def test_check_p1(capsys, monkeypatch, tmp_path):
    path = tmp_path / "p1_2_1.json"
    path.write_text(example("p1_2_1"))
    code, out, _ = run(capsys, monkeypatch, ["check", "--in", str(path)])
    props = {p["property"]: p for p in first(out)["properties"]}
    assert props["modular"]["verdict"] is False


def test_spectrum_variants(capsys, monkeypatch):
    _, out, _ = run(capsys, monkeypatch, ["spectrum", "--variant", "spcnt"], example("pentagon"))
    rep = first(out)
    assert rep["points"] == ["l", "n"] and len(rep["closed_sets"]) == 4
    assert rep["sober"]["verdict"] is True and rep["open_lattice_size"] == 4
    _, out, _ = run(capsys, monkeypatch, ["spectrum", "--variant", "fspcnt"], example("a2"))
    assert len(first(out)["points"]) == 5
    _, out, _ = run(capsys, monkeypatch, ["spectrum", "--variant", "mspec"], example("diamond"))
    assert first(out)["points"] == []


def test_omega_and_free_frame(capsys, monkeypatch):
    _, out, _ = run(capsys, monkeypatch, ["omega"], example("diamond"))
    assert first(out)["elements"] == ["{}"]
    _, out, _ = run(capsys, monkeypatch, ["free-frame"], example("pentagon"))
    assert len(first(out)["elements"]) == 8
    assert json.loads(out.splitlines()[1])["name"] == "unit"


def test_dual_of_discrete(capsys, monkeypatch):
    _, spec, _ = run(capsys, monkeypatch, ["spectrum"], example("boolean2"))
    _, out, _ = run(capsys, monkeypatch, ["dual"], spec)
    a, b = first(spec), first(out)
    assert a["points"] == b["points"] and a["closed_sets"] == b["closed_sets"]


def test_fixed(capsys, monkeypatch):
    _, out, _ = run(capsys, monkeypatch, ["fixed"], example("preprojective_a2"))
    assert first(out)["elements"] == ["0", "1"]
    code, _, err = run(capsys, monkeypatch, ["fixed"], example("pentagon"))
    assert code == 2 and "automorphism" in err


def test_example_and_round_trip(capsys, monkeypatch):
    for name in gallery.names():
        code, out, _ = run(capsys, monkeypatch, ["example", name])
        assert code == 0
        doc = first(out)
        L, sigma, sub = lattice_from_document(doc)
        assert L == gallery.get(name).lattice
        assert lattice_document(L, automorphism=sigma, sublattice=sub) == doc


def test_unknown_example(capsys, monkeypatch):
    code, _, err = run(capsys, monkeypatch, ["example", "nope"])
    assert code == 4 and "pentagon" in err


def test_exit_codes(capsys, monkeypatch):
    assert run(capsys, monkeypatch, ["check"], "{not json")[0] == 2
    assert run(capsys, monkeypatch, ["check"], '{"elements": 3}')[0] == 2
    bad = {"name": "v", "elements": ["0", "a", "b"], "covers": [["0", "a"], ["0", "b"]]}
    code, _, err = run(capsys, monkeypatch, ["check"], json.dumps(bad))
    assert code == 3 and "(a, b)" in err
    cyc = {"name": "c", "elements": ["a", "b"], "covers": [["a", "b"], ["b", "a"]]}
    assert run(capsys, monkeypatch, ["check"], json.dumps(cyc))[0] == 3
    code, _, err = run(capsys, monkeypatch, ["--max-size", "3", "free-frame"], example("pentagon"))
    assert code == 5 and "exceeds" in err


def test_dot(capsys, monkeypatch):
    _, out, _ = run(capsys, monkeypatch, ["dot"], example("pentagon"))
    assert out.startswith('digraph "pentagon" {') and "rankdir=BT;" in out
    assert out.index('n0 [label="0"]') < out.index('n4 [label="1"]')
    assert "n2 -> n3;" in out
    _, out, _ = run(capsys, monkeypatch, ["dot", "--space", "--variant", "fspcnt"], example("kxk"))
    assert out.count("->") == 4
    _, out, _ = run(capsys, monkeypatch, ["--format", "dot", "omega"], example("pentagon"))
    assert out.startswith("digraph")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "thicklat", "example", "two"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["elements"] == ["0", "1"]
