from dataclasses import dataclass, field
from typing import Optional


@dataclass
class RuntimeArguments:
    """
    Options shared by every subcommand.
    """

    json: bool = field(
        default=False, metadata={"help": "Print one JSON object per line instead of text."}
    )
    seed: int = field(
        default=0, metadata={"help": "Seed for every randomized step."}
    )
    log_level: str = field(
        default="WARNING",
        metadata={"help": "Logging level on stderr.", "choices": ["DEBUG", "INFO", "WARNING", "ERROR"]}
    )
    corpus_dir: Optional[str] = field(
        default=None,
        metadata={"help": "Fixture directory used to resolve inputs given by name. "
                          "Falls back to $LEGENDRIAN_CORPUS_DIR, then to the bundled corpus."}
    )


@dataclass
class StabilizeArguments:
    i: int = field(
        default=0, metadata={"help": "Number of cusp pairs raising the rotation number."}
    )
    j: int = field(
        default=0, metadata={"help": "Number of cusp pairs lowering the rotation number."}
    )


@dataclass
class FrontMoveArguments:
    move: Optional[str] = field(
        default=None,
        metadata={"help": "Front move to apply; without it the applicable moves are listed.",
                  "choices": ["triple-point", "tangency-add-up", "tangency-add-down", "tangency-remove",
                              "cusp-push-up", "cusp-push-down", "cusp-pull"]}
    )
    index: int = field(
        default=0, metadata={"help": "Event index of the move site."}
    )
    position: int = field(
        default=1, metadata={"help": "Strand position, read by the tangency insertions only."}
    )


@dataclass
class FramedMoveArguments:
    move: str = field(
        default="rotate",
        metadata={"help": "Framed move name, or crossing-change."}
    )
    params: str = field(
        default="{}",
        metadata={"help": "JSON object with the move fields, e.g. '{\"position\": 0, \"sign\": 1}'."}
    )


@dataclass
class PathArguments:
    filter: str = field(
        default="none",
        metadata={"help": "Only count crossing changes the filter keeps.", "choices": ["none", "alpha-nu"]}
    )
    group: Optional[str] = field(
        default=None, metadata={"help": "Free group the loop words live in, as free:N."}
    )


@dataclass
class InvariantArguments:
    invariant: str = field(
        default="self-linking",
        metadata={"help": "Invariant of framed knots to evaluate.",
                  "choices": ["self-linking", "self-linking-squared", "constant"]}
    )


@dataclass
class OrderArguments:
    n: int = field(
        default=1, metadata={"help": "Order of the invariant."}
    )
    height: int = field(
        default=1, metadata={"help": "Number of rungs to fill above the cutoff."}
    )
    depth: int = field(
        default=4, metadata={"help": "Kink moves below the maximal front when building a ladder."}
    )


@dataclass
class BundleArguments:
    orientation: str = field(
        default="1,-1",
        metadata={"help": "Comma separated orientation character of the base generators a, b, ..."}
    )
    a: str = field(
        default="0:", metadata={"help": "First element as k:word, meaning f^k word."}
    )
    b: str = field(
        default="0:", metadata={"help": "Second element as k:word."}
    )


@dataclass
class SearchArguments:
    bound: int = field(
        default=6, metadata={"help": "Largest exponent tried."}
    )


@dataclass
class WordPairArguments:
    rank: int = field(
        default=2, metadata={"help": "Rank of the free group."}
    )
    first: str = field(
        default="", metadata={"help": "Word of the first loop."}
    )
    second: str = field(
        default="", metadata={"help": "Word of the second loop."}
    )
    other_first: Optional[str] = field(
        default=None, metadata={"help": "First loop of a pair to compare with."}
    )
    other_second: Optional[str] = field(
        default=None, metadata={"help": "Second loop of a pair to compare with."}
    )
    bound: int = field(
        default=4, metadata={"help": "Longest conjugator tried when comparing pairs."}
    )


@dataclass
class SuiteArguments:
    timeout: Optional[float] = field(
        default=None, metadata={"help": "Seconds allowed per check; a check running longer fails."}
    )
    only: Optional[str] = field(
        default=None, metadata={"help": "Comma separated check name prefixes to run."}
    )
