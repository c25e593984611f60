import json

import pytest

from legendrian_calculus import data
from legendrian_calculus.data import BUNDLED_CORPUS, CORPUS_ENV, Corpus, load_fixture, resolve_input
from legendrian_calculus.errors import CorpusLoadError, SchemaError
from legendrian_calculus.framed import Rotate, self_linking
from legendrian_calculus.fronts import bennequin, rotation_number


def _write(path, doc):
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


def test_bundled_corpus(corpus):
    counts = corpus.counts()
    assert counts["framed"] == 7
    assert counts["singular"] == 12
    assert counts["paths"] == 5
    assert counts["ladders"] == 3
    assert counts["descriptors"] == 6
    # six stored fronts and fourteen stabilizations of each grid base
    assert counts["fronts"] == 6 + 2 * 14


def test_stabilization_grid(corpus):
    trefoil = corpus.fronts["trefoil"]
    stabilized = corpus.fronts["trefoil^3,1"]
    assert bennequin(stabilized) == bennequin(trefoil) - 4
    assert rotation_number(stabilized) == rotation_number(trefoil) + 2
    assert "unknot^0,4" in corpus.fronts
    assert "unknot^0,5" not in corpus.fronts


def test_corpus_get(corpus):
    assert self_linking(corpus.get("framed", "trefoil")) == 3
    with pytest.raises(SchemaError):
        corpus.get("framed", "figure_eight")


def test_env_directory(tmp_path, monkeypatch):
    _write(tmp_path / "mine.json", {"format": 1, "kind": "front", "events": [["L", 1], ["R", 1]]})
    monkeypatch.setenv(CORPUS_ENV, str(tmp_path))
    corpus = Corpus.load()
    assert sorted(corpus.fronts) == ["mine"]
    assert corpus.counts()["framed"] == 0


def test_bad_fixture_is_named(tmp_path):
    _write(tmp_path / "fronts.json", {"format": 1, "kind": "front", "fixtures": {
        "fine": {"events": [["L", 1], ["R", 1]]},
        "broken": {"events": [["X", 1]]},
    }})
    with pytest.raises(CorpusLoadError) as info:
        Corpus.load(str(tmp_path))
    assert info.value.fixture == "broken"


def test_bad_json(tmp_path):
    (tmp_path / "broken.json").write_text("{", encoding="utf-8")
    with pytest.raises(CorpusLoadError) as info:
        Corpus.load(str(tmp_path))
    assert info.value.fixture == "broken"


@pytest.mark.parametrize("doc", [
    {"kind": "front", "events": []},
    {"format": 2, "kind": "front", "events": []},
    [1, 2],
])
def test_format_marker(tmp_path, doc):
    with pytest.raises(SchemaError):
        load_fixture(_write(tmp_path / "doc.json", doc))


def test_unknown_kind(tmp_path):
    with pytest.raises(SchemaError):
        load_fixture(_write(tmp_path / "doc.json", {"format": 1, "kind": "braid"}))


def test_single_fixture_file(tmp_path):
    path = _write(tmp_path / "kink.json", {"format": 1, "kind": "framed", "gauss": [[1, "o", 1], [1, "u", 1]],
                                           "offset": -1})
    assert self_linking(load_fixture(path)) == 0
    assert self_linking(resolve_input("framed", path)) == 0


def test_resolve_by_name():
    assert bennequin(resolve_input("front", "trefoil", str(BUNDLED_CORPUS))) == 1


def test_gauss_entries():
    with pytest.raises(SchemaError):
        data.decode_framed({"gauss": [[1, "x", 1], [1, "u", 1]]})
    k = data.decode_framed({"gauss": [[1, "o", 1, "a"], [1, "u", 1]], "offset": -1})
    assert data.encode_framed(k)["gauss"] == [[1, "o", 1, "a"], [1, "u", 1]]


def test_moves():
    assert data.decode_move({"move": "rotate", "steps": 2}) == Rotate(2)
    assert data.encode_move(Rotate(2)) == {"move": "rotate", "steps": 2}
    with pytest.raises(SchemaError):
        data.decode_move({"move": "r4"})
    with pytest.raises(SchemaError):
        data.decode_move({"move": "rotate", "steps": 1, "angle": 3})
    with pytest.raises(SchemaError):
        data.decode_move({"move": "rotate"})


def test_crossing_change_sign_is_checked():
    doc = {"start": {"gauss": [[1, "o", 1], [1, "u", 1]], "offset": -1},
           "events": [{"move": "crossing-change", "crossing": 1, "sign": 1}]}
    with pytest.raises(SchemaError):
        data.decode_path(doc)


def test_ladder_front_must_match_the_cutoff():
    with pytest.raises(SchemaError):
        data.decode_ladder({"cutoff": 0, "values": {"0": 1}, "front": [["L", 1], ["R", 1]]})


def test_descriptor_flags():
    with pytest.raises(SchemaError):
        data.decode_descriptor({"h2": {"factors": [0]}, "euler": [0], "flags": {"overtwisted": True}})
    with pytest.raises(SchemaError):
        data.decode_descriptor({"h2": {}, "euler": [0]})
    d = data.decode_descriptor({"h2": {"relations": [[2, 0], [0, 4]]}, "euler": [0, 2]})
    assert d.h2.factors == (2, 4)


def test_documents_survive_a_dump(corpus):
    for name, path in corpus.paths.items():
        again = data.decode_path(json.loads(data.dump(data.encode_path(path))))
        assert again == path, name
    for name, ladder in corpus.ladders.items():
        assert data.decode_ladder(json.loads(data.dump(data.encode_ladder(ladder)))) == ladder, name
