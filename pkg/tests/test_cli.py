import json
from pathlib import Path

from zcolor.cli import main

CORPUS = Path(__file__).resolve().parent.parent / "src" / "zcolor" / "corpus"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_invariants_trefoil(capsys):
    code, doc = run(capsys, "invariants", str(CORPUS / "trefoil.pd"))
    assert code == 0
    assert doc["writhe"] == -3
    assert doc["determinant"] == 3
    assert doc["components"] == 1
    assert doc["z_colorable"] is False
    assert doc["schema_version"] == 1


def test_validate_garbage_exits_2(tmp_path, capsys):
    bad = tmp_path / "garbage.txt"
    bad.write_text("this is not a pd file")
    code, doc = run(capsys, "validate", str(bad))
    assert code == 2
    assert doc["error"]["type"] == "syntax"
    assert "line" in doc["error"]


def test_missing_file_is_usage_error(capsys):
    code, doc = run(capsys, "invariants", "no-such-file.pd")
    assert code == 2
    assert doc["error"]["type"] == "usage"


def test_domain_error_exits_1(capsys):
    code, doc = run(capsys, "cable", "--two-parallel-untwisted",
                    str(CORPUS / "trefoil.pd"))
    assert code == 1
    assert "linking number" in doc["error"]["message"]


def test_fox_count(capsys):
    code, doc = run(capsys, "fox-count", str(CORPUS / "trefoil.pd"), "-n", "3")
    assert code == 0
    assert doc["count"] == 9


def test_cable_spec(capsys):
    code, doc = run(capsys, "cable", "--spec", "3,2", str(CORPUS / "hopf.pd"))
    assert code == 0
    assert doc["crossings"] == 12


def test_color_parallel_reduce(capsys):
    code, doc = run(capsys, "color-parallel", "--spec", "4,4", "--reduce",
                    str(CORPUS / "hopf.pd"))
    assert code == 0
    assert doc["palette"] == [-1, 0, 1, 2]
    assert doc["traces"]


def test_color_two_parallel_via_spec2(capsys):
    code, doc = run(capsys, "color-parallel", "--spec", "2", "--reduce",
                    str(CORPUS / "unknot_writhe0.pd"))
    assert code == 0
    assert doc["palette"] == [0, 1, 2, 3]


def test_verify_and_spectrum(tmp_path, capsys):
    coloring = tmp_path / "c.json"
    coloring.write_text(json.dumps({str(e): 5 for e in range(1, 7)}))
    code, doc = run(capsys, "verify", str(CORPUS / "trefoil.pd"), str(coloring))
    assert code == 0
    assert doc["valid"] is True
    assert doc["d_m"] == 0
    assert doc["palette"] == [5]


def test_replay_round_trip(tmp_path, capsys):
    code, doc = run(capsys, "color-parallel", "--spec", "4,4", "--reduce",
                    str(CORPUS / "hopf.pd"))
    assert len(doc["traces"]) == 1
    trace = tmp_path / "trace.json"
    trace.write_text(json.dumps(doc["traces"][0]))
    pd_in = tmp_path / "h44.pd"
    pd_in.write_text(doc["pd"])
    target = tmp_path / "h44_reduced.pd"
    target.write_text(doc["reduced_pd"])
    code2, doc2 = run(capsys, "replay", str(pd_in), str(trace),
                      "--check", str(target))
    assert code2 == 0
    assert doc2["equivalent"] is True


def test_corpus_runner(capsys):
    code, doc = run(capsys, "corpus", str(CORPUS))
    assert code == 0
    assert doc["failures"] == 0
    assert len(doc["entries"]) >= 7


def test_corpus_empty_dir(tmp_path, capsys):
    code, doc = run(capsys, "corpus", str(tmp_path))
    assert code == 0
    assert doc["entries"] == []


def test_corpus_detects_corruption(tmp_path, capsys):
    (tmp_path / "bad.pd").write_text("X[1,1,1,1]")
    code, doc = run(capsys, "corpus", str(tmp_path))
    assert code == 1
    assert doc["failures"] == 1
    assert doc["entries"][0]["file"] == "bad.pd"


def test_minimize(capsys):
    code, doc = run(capsys, "minimize", "--bound", "2",
                    str(CORPUS / "split_unlink.pd"))
    assert code == 0
    assert doc["palette_size"] >= 2


def test_output_determinism(capsys):
    code1, doc1 = run(capsys, "invariants", str(CORPUS / "figure8.pd"))
    code2, doc2 = run(capsys, "invariants", str(CORPUS / "figure8.pd"))
    assert doc1 == doc2


def test_simplify_coloring_command(tmp_path, capsys):
    from zcolor.diagram import serialize_pd_raw
    from zcolor.generate import diff_chain

    d, g = diff_chain([2, 1])
    pd_file = tmp_path / "chain.pd"
    pd_file.write_text(serialize_pd_raw(d))
    coloring = tmp_path / "chain.json"
    coloring.write_text(json.dumps({str(e): c for e, c in g.items()}))
    code, doc = run(capsys, "simplify-coloring", str(pd_file), str(coloring))
    assert code == 0
    assert doc["simple"][0] is True
    assert doc["trace"]["stages"]


def test_colorability_emits_lattice(capsys):
    code, doc = run(capsys, "colorability", str(CORPUS / "trefoil.pd"))
    assert code == 0
    assert doc["kernel_rank"] == 1
    assert doc["lattice"]["rank"] == 1
    assert doc["z_colorable"] is False
