"""JSON documents and the bundled fixture corpus.

Every document carries ``"format": 1``. A document is either one fixture
(``{"format": 1, "kind": "front", ...}``) or a collection
(``{"format": 1, "kind": "front", "fixtures": {"name": {...}, ...}}``).
"""
import json
import logging
import os
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

from .errors import CalculusError, CorpusLoadError, SchemaError
from .framed import (
    CrossingChange,
    FramedDiagram,
    KinkAbsorb,
    KinkPairCancel,
    KinkPairInsert,
    KnotDiagram,
    MoveSequence,
    OffsetTrade,
    R2Insert,
    R2Remove,
    R3,
    Rotate,
    SingularFramedDiagram,
    Visit,
    crossing_change,
    path_states,
    set_crossing_sign,
)
from .fronts import FrontWord, Orientation, OrientedFront, bennequin, front_to_framed, stabilize
from .topology.abelian import FGAbelianGroup
from .topology.condition import ManifoldDescriptor, ManifoldFlags, TorusRecord
from .vassiliev import InvariantLadder

logger = logging.getLogger(__name__)

FORMAT = 1
CORPUS_ENV = "LEGENDRIAN_CORPUS_DIR"
BUNDLED_CORPUS = Path(__file__).parent / "corpus"
GRID_BASES = ("unknot", "trefoil")
GRID_TOTAL = 4

MOVES = {cls.name: cls for cls in (Rotate, R2Insert, R2Remove, R3, OffsetTrade, KinkAbsorb,
                                   KinkPairInsert, KinkPairCancel)}


def traverse_directory_using_os(root_folder) -> List[str]:
    file_list = []
    if not os.path.isdir(root_folder):
        file_list.append(str(root_folder))
    else:
        for dirpath, _, filenames in os.walk(root_folder):
            for filename in sorted(filenames):
                if filename.endswith(".json"):
                    file_list.append(os.path.join(dirpath, filename))
    return sorted(file_list)


def _require(doc: Dict[str, Any], key: str, kind: str):
    if key not in doc:
        raise SchemaError(f"{kind} document is missing {key!r}")
    return doc[key]


# --- fronts -------------------------------------------------------------------


def decode_front(doc: Dict[str, Any]) -> OrientedFront:
    try:
        word = FrontWord.from_pairs(_require(doc, "events", "front"))
        orientation = Orientation(doc.get("orientation", Orientation.FORWARD.value))
    except (TypeError, ValueError) as e:
        if isinstance(e, CalculusError):
            raise
        raise SchemaError(f"bad front events: {e}") from e
    return OrientedFront(word, orientation)


def encode_front(front: OrientedFront) -> Dict[str, Any]:
    return {"kind": "front", "events": front.word.to_pairs(), "orientation": front.orientation.value}


# --- framed and singular diagrams ---------------------------------------------


def _decode_visit(item) -> Visit:
    if not isinstance(item, (list, tuple)) or len(item) not in (3, 4) or item[1] not in ("o", "u"):
        raise SchemaError(f"gauss entry {item!r} is not [crossing, 'o'|'u', sign(, word)]")
    word = item[3] if len(item) == 4 else ""
    return Visit(int(item[0]), item[1] == "o", int(item[2]), str(word))


def _encode_visit(visit: Visit) -> list:
    item = [visit.crossing, "o" if visit.over else "u", visit.sign]
    if visit.word:
        item.append(visit.word)
    return item


def decode_diagram(doc: Dict[str, Any]) -> KnotDiagram:
    return KnotDiagram(tuple(_decode_visit(item) for item in doc.get("gauss", [])), doc.get("closed_word", ""))


def encode_diagram(d: KnotDiagram) -> Dict[str, Any]:
    doc: Dict[str, Any] = {"gauss": [_encode_visit(v) for v in d.visits]}
    if d.closed_word:
        doc["closed_word"] = d.closed_word
    return doc


def decode_framed(doc: Dict[str, Any]) -> FramedDiagram:
    return FramedDiagram(decode_diagram(doc), int(doc.get("offset", 0)))


def encode_framed(k: FramedDiagram) -> Dict[str, Any]:
    return {"kind": "framed", **encode_diagram(k.diagram), "offset": k.offset}


def decode_singular(doc: Dict[str, Any]) -> SingularFramedDiagram:
    diagram = decode_diagram(doc)
    marked = [int(c) for c in doc.get("marked", [])]
    # marked crossings may be written in either resolution
    for crossing in marked:
        if crossing in diagram.signs():
            diagram = set_crossing_sign(diagram, crossing, 1)
    return SingularFramedDiagram(diagram, frozenset(marked), int(doc.get("offset", 0)))


def encode_singular(s: SingularFramedDiagram) -> Dict[str, Any]:
    return {"kind": "singular", **encode_diagram(s.diagram), "offset": s.offset, "marked": sorted(s.marked)}


# --- moves and paths ----------------------------------------------------------


def decode_move(doc: Dict[str, Any]):
    name = _require(doc, "move", "move")
    cls = MOVES.get(name)
    if cls is None:
        raise SchemaError(f"unknown move {name!r}, expected one of {sorted(MOVES)}")
    known = {f.name for f in fields(cls)}
    unknown = set(doc) - known - {"move"}
    if unknown:
        raise SchemaError(f"move {name!r} has no fields {sorted(unknown)}")
    kwargs = {key: tuple(value) if isinstance(value, list) else value for key, value in doc.items() if key != "move"}
    try:
        return cls(**kwargs)
    except TypeError as e:
        raise SchemaError(f"move {name!r}: {e}") from e


def encode_move(move) -> Dict[str, Any]:
    if isinstance(move, CrossingChange):
        return {"move": move.name, "crossing": move.crossing, "sign": move.sign}
    doc: Dict[str, Any] = {"move": move.name}
    for f in fields(move):
        value = getattr(move, f.name)
        if value != f.default:
            doc[f.name] = list(value) if isinstance(value, tuple) else value
    return doc


def decode_path(doc: Dict[str, Any]) -> MoveSequence:
    """Crossing changes are written as ``{"move": "crossing-change", "crossing": c}``;
    their singular snapshot is rebuilt from the state they act on."""
    start = decode_framed(_require(doc, "start", "path"))
    events = []
    state = start
    for index, item in enumerate(doc.get("events", [])):
        if item.get("move") == CrossingChange.name:
            event = crossing_change(state, int(_require(item, "crossing", "crossing-change")))
            if "sign" in item and int(item["sign"]) != event.sign:
                raise SchemaError(f"event {index}: crossing {event.crossing} changes to sign {event.sign}, "
                                  f"document says {item['sign']}")
        else:
            event = decode_move(item)
        events.append(event)
        state = path_states(MoveSequence(state, (event,)))[-1]
    return MoveSequence(start, tuple(events))


def encode_path(path: MoveSequence) -> Dict[str, Any]:
    return {"kind": "path", "start": encode_framed(path.start), "events": [encode_move(e) for e in path.events]}


# --- ladders and descriptors --------------------------------------------------


def decode_ladder(doc: Dict[str, Any]) -> InvariantLadder:
    values = {int(rung): value for rung, value in _require(doc, "values", "ladder").items()}
    cutoff = doc.get("cutoff")
    base = None
    if "front" in doc:
        front = decode_front({"events": doc["front"]})
        if cutoff is not None and bennequin(front) != cutoff:
            raise SchemaError(f"ladder front has Thurston-Bennequin number {bennequin(front)}, cutoff is {cutoff}")
        base = front_to_framed(front)
    return InvariantLadder(doc.get("knot", "knot"), values, cutoff, int(doc.get("step", 2)), base)


def encode_ladder(ladder: InvariantLadder) -> Dict[str, Any]:
    return {
        "kind": "ladder",
        "knot": ladder.knot_label,
        "cutoff": ladder.cutoff,
        "step": ladder.step,
        "values": {str(rung): value for rung, value in ladder.values.items()},
    }


def decode_group(doc: Dict[str, Any]) -> FGAbelianGroup:
    if "factors" in doc:
        return FGAbelianGroup(tuple(doc["factors"]))
    if "relations" in doc:
        return FGAbelianGroup.from_relations(doc["relations"], doc.get("generators"))
    raise SchemaError("h2 needs 'factors' or 'relations'")


def decode_descriptor(doc: Dict[str, Any]) -> ManifoldDescriptor:
    h2 = decode_group(_require(doc, "h2", "descriptor"))
    flags = doc.get("flags", {})
    unknown = set(flags) - {f.name for f in fields(ManifoldFlags)}
    if unknown:
        raise SchemaError(f"unknown descriptor flags {sorted(unknown)}")
    tori = tuple(TorusRecord(tuple(t["class"]), bool(t["realizable"]), int(t["pairing"]))
                 for t in doc.get("tori", []))
    return ManifoldDescriptor(h2, tuple(_require(doc, "euler", "descriptor")), ManifoldFlags(**flags), tori,
                              doc.get("name", ""))


DECODERS: Dict[str, Callable[[Dict[str, Any]], Any]] = {
    "front": decode_front,
    "framed": decode_framed,
    "singular": decode_singular,
    "path": decode_path,
    "ladder": decode_ladder,
    "descriptor": decode_descriptor,
}


def read_document(path) -> Dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as f:
            doc = json.load(f)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: {e}") from e
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise SchemaError(f"{path}: expected a JSON object with \"format\": {FORMAT}")
    return doc


def decode_document(doc: Dict[str, Any], default_name: str = "") -> Tuple[str, Dict[str, Any]]:
    """Decode every fixture of a document into ``(kind, {name: object})``."""
    kind = doc.get("kind")
    if kind not in DECODERS:
        raise SchemaError(f"unknown kind {kind!r}, expected one of {sorted(DECODERS)}")
    if "fixtures" in doc:
        entries = doc["fixtures"]
    else:
        entries = {doc.get("name", default_name): doc}
    decoded = {}
    for name, entry in entries.items():
        try:
            decoded[name] = DECODERS[kind](entry)
        except (ValueError, KeyError, TypeError) as e:
            raise CorpusLoadError(name, e) from e
    return kind, decoded


def load_fixture(path) -> Any:
    """The single fixture stored in ``path``."""
    kind, decoded = decode_document(read_document(path), Path(path).stem)
    if len(decoded) != 1:
        raise SchemaError(f"{path} holds {len(decoded)} {kind} fixtures, expected one")
    return next(iter(decoded.values()))


def dump(doc: Dict[str, Any]) -> str:
    return json.dumps({"format": FORMAT, **doc}, sort_keys=True)


@dataclass
class Corpus:
    fronts: Dict[str, OrientedFront] = field(default_factory=dict)
    framed: Dict[str, FramedDiagram] = field(default_factory=dict)
    singular: Dict[str, SingularFramedDiagram] = field(default_factory=dict)
    paths: Dict[str, MoveSequence] = field(default_factory=dict)
    ladders: Dict[str, InvariantLadder] = field(default_factory=dict)
    descriptors: Dict[str, ManifoldDescriptor] = field(default_factory=dict)

    KINDS = {"front": "fronts", "framed": "framed", "singular": "singular", "path": "paths",
             "ladder": "ladders", "descriptor": "descriptors"}

    @classmethod
    def load(cls, directory: Optional[str] = None) -> "Corpus":
        directory = directory or os.environ.get(CORPUS_ENV) or str(BUNDLED_CORPUS)
        corpus = cls()
        for file in traverse_directory_using_os(directory):
            try:
                doc = read_document(file)
            except SchemaError as e:
                raise CorpusLoadError(Path(file).stem, e) from e
            kind, decoded = decode_document(doc, Path(file).stem)
            getattr(corpus, cls.KINDS[kind]).update(decoded)
        corpus.add_stabilization_grid()
        logger.info("loaded corpus from %s: %s", directory, corpus.counts())
        return corpus

    def add_stabilization_grid(self, bases=GRID_BASES, total: int = GRID_TOTAL) -> None:
        """Add ``name^i,j`` = ``stabilize(name, i, j)`` for ``0 < i + j <= total``."""
        for name in bases:
            if name not in self.fronts:
                continue
            for i in range(total + 1):
                for j in range(total + 1 - i):
                    if i or j:
                        self.fronts[f"{name}^{i},{j}"] = stabilize(self.fronts[name], i, j)

    def counts(self) -> Dict[str, int]:
        return {attr: len(getattr(self, attr)) for attr in self.KINDS.values()}

    def names(self) -> Dict[str, List[str]]:
        return {attr: sorted(getattr(self, attr)) for attr in self.KINDS.values()}

    def get(self, kind: str, name: str):
        table = getattr(self, self.KINDS[kind])
        if name not in table:
            raise SchemaError(f"no {kind} fixture named {name!r}")
        return table[name]


def resolve_input(kind: str, source: str, corpus_dir: Optional[str] = None):
    """A fixture from a JSON file path, or from the corpus by name."""
    if os.path.exists(source):
        return load_fixture(source)
    return Corpus.load(corpus_dir).get(kind, source)
