"""Rule engine deciding, from declared facts about a contact 3-manifold, whether
some component of framed curves splits into infinitely many Legendrian components.

The engine does not inspect manifolds. Each rule turns one known theorem into a
test on the descriptor, and anything no rule covers is Unknown.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from ..errors import InconsistentDescriptor
from .abelian import Element, FGAbelianGroup

logger = logging.getLogger(__name__)


class Status(str, Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    UNKNOWN = "Unknown"


class Rule(str, Enum):
    INTERPRETATION_II = "InterpretationII"
    TIGHT = "Tight"
    TORSION = "Torsion"
    ATOROIDAL = "Atoroidal"
    PARALLELIZABLE = "Parallelizable"


CITATIONS: Dict[Rule, str] = {
    Rule.INTERPRETATION_II: "a torus realized through curves of the component pairs nonzero with the Euler class",
    Rule.TIGHT: "the contact structure is tight and cooriented",
    Rule.TORSION: "the Euler class of the contact bundle is in the torsion of H^2(M, Z)",
    Rule.ATOROIDAL: "pi_2(M) = 0 and no torus injects on pi_1",
    Rule.PARALLELIZABLE: "the contact plane field is parallelizable",
}


@dataclass(frozen=True)
class TorusRecord:
    homology_class: Element
    # the circle factor is freely homotopic to curves of the component
    realizable: bool
    pairing: int


@dataclass(frozen=True)
class ManifoldFlags:
    tight: Optional[bool] = None
    pi2_zero: Optional[bool] = None
    no_injective_torus: Optional[bool] = None
    parallelizable_contact: Optional[bool] = None


@dataclass(frozen=True)
class ManifoldDescriptor:
    h2: FGAbelianGroup
    euler: Element
    flags: ManifoldFlags = field(default_factory=ManifoldFlags)
    tori: Tuple[TorusRecord, ...] = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "euler", self.h2.check(self.euler))
        tori = tuple(TorusRecord(self.h2.check(t.homology_class), t.realizable, t.pairing) for t in self.tori)
        object.__setattr__(self, "tori", tori)
        if self.h2.factors == (0,):
            for t in tori:
                expected = self.euler[0] * t.homology_class[0]
                if t.pairing != expected:
                    raise InconsistentDescriptor(
                        f"{self.name or 'descriptor'}: torus class {t.homology_class} pairs to {expected} "
                        f"with the Euler class, record says {t.pairing}")


@dataclass(frozen=True)
class Verdict:
    status: Status
    rule: Optional[Rule] = None

    @property
    def citation(self) -> str:
        return CITATIONS[self.rule] if self.rule else ""

    def to_dict(self) -> Dict[str, Optional[str]]:
        return {
            "status": self.status.value,
            "rule": self.rule.value if self.rule else None,
            "citation": self.citation,
        }


def _holding_rules(d: ManifoldDescriptor) -> List[Rule]:
    rules = []
    if d.flags.tight:
        rules.append(Rule.TIGHT)
    if d.h2.order_is_finite(d.euler):
        rules.append(Rule.TORSION)
    if d.flags.pi2_zero and d.flags.no_injective_torus:
        rules.append(Rule.ATOROIDAL)
    if d.flags.parallelizable_contact:
        rules.append(Rule.PARALLELIZABLE)
    return rules


def condition_star(d: ManifoldDescriptor) -> Verdict:
    witnesses = [t for t in d.tori if t.realizable and t.pairing != 0]
    holding = _holding_rules(d)
    if witnesses:
        if holding:
            raise InconsistentDescriptor(
                f"{d.name or 'descriptor'}: torus {witnesses[0].homology_class} pairs to {witnesses[0].pairing} "
                f"but rule {holding[0].value} also applies")
        logger.debug("%s fails via torus %s", d.name, witnesses[0])
        return Verdict(Status.FAILS, Rule.INTERPRETATION_II)
    if holding:
        return Verdict(Status.HOLDS, holding[0])
    return Verdict(Status.UNKNOWN)
