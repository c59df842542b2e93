"""Abstract model for contract documents.

A document is an ordered list of named contract boxes.  Each box carries a
label, an optional agent, optional guard and timing conditions, a body and
an optional reparation.  Bodies are either a modal clause over an action
expression, a refinement (conjunction / choice / sequence) over sub-boxes,
a repetition, or a cross-reference to another box.

All values are immutable after construction; structural invariants are
enforced in the constructors and raise :class:`ModelError` when violated.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional, Union

from .diagnostics import Span


class ModelError(ValueError):
    """A constructor argument violates a structural invariant."""


_LABEL_RE = re.compile(r"[A-Za-z0-9][A-Za-z0-9_]*\Z")

#: Words with a fixed role in the surface language.  Banning them as labels
#: keeps tokenization unambiguous.  The determiner "a" is deliberately not
#: reserved: single-letter labels are legal and determiners only ever occur
#: inside noun phrases.
RESERVED_WORDS = frozenset("""
    if when and or then first all one of the following in order
    otherwise see repeatedly variable variables clock is are not done
    required allowed forbidden may to less greater than equal
    with from an
""".split())


@dataclass(frozen=True)
class Label:
    text: str

    def __post_init__(self) -> None:
        if not _LABEL_RE.match(self.text):
            raise ModelError(
                f"invalid label {self.text!r}: labels are letters, digits or "
                "underscores, with no spaces")
        if self.text in RESERVED_WORDS:
            raise ModelError(f"invalid label {self.text!r}: reserved word")

    def __str__(self) -> str:
        return self.text


def clock_name(box: Label) -> str:
    """Name of the implicit timer that is reset when box ``box`` completes."""
    return "t_" + box.text


_CLOCK_RE = re.compile(r"t_([A-Za-z0-9][A-Za-z0-9_]*)\Z")


def clock_box(clock: str) -> Optional[str]:
    """Inverse of :func:`clock_name`; None if ``clock`` is not t_<label>."""
    m = _CLOCK_RE.match(clock)
    return m.group(1) if m else None


class Modality(Enum):
    OBLIGATION = "obligation"
    PERMISSION = "permission"
    PROHIBITION = "prohibition"


class RefOp(Enum):
    CONJ = "and"
    CHOICE = "or"
    SEQ = "seq"


class CmpOp(Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"


class Number(Enum):
    SG = "sg"
    PL = "pl"


class Det(Enum):
    A = "a"
    AN = "an"
    THE = "the"


class Prep(Enum):
    WITH = "with"
    OF = "of"
    TO = "to"
    FROM = "from"


# --------------------------------------------------------------------------
# Noun phrases

@dataclass(frozen=True)
class NounRef:
    """A noun lemma together with the grammatical number it is used in."""

    lemma: str
    number: Number


@dataclass(frozen=True)
class Proper:
    ref: NounRef


@dataclass(frozen=True)
class Common:
    head: NounRef
    determiner: Optional[Det] = None
    adjectives: tuple[str, ...] = ()
    pp: Optional[tuple[Prep, "NounPhrase"]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "adjectives", tuple(self.adjectives))
        if self.pp is not None:
            prep, np = self.pp
            # Coordination always binds at the top of a noun phrase; allowing
            # it inside a prepositional modifier would make the surface form
            # ambiguous.
            if isinstance(np, Coord):
                raise ModelError("prepositional modifier cannot contain a "
                                 "coordinated noun phrase")
            object.__setattr__(self, "pp", (prep, np))


@dataclass(frozen=True)
class Coord:
    left: "NounPhrase"
    right: "NounPhrase"

    def __post_init__(self) -> None:
        # Left-associative normal form: "a and b and c" is Coord(Coord(a,b),c).
        if isinstance(self.right, Coord):
            raise ModelError("coordination must nest to the left")


NounPhrase = Union[Proper, Common, Coord]


# --------------------------------------------------------------------------
# Actions

@dataclass(frozen=True)
class Intransitive:
    verb: str


@dataclass(frozen=True)
class Transitive:
    verb: str
    obj: NounPhrase


Action = Union[Intransitive, Transitive]


@dataclass(frozen=True)
class Atom:
    action: Action


@dataclass(frozen=True)
class Compound:
    op: RefOp
    parts: tuple["NamedAction", ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))
        if len(self.parts) < 2:
            raise ModelError("a combined action needs at least two parts")


ActionExpr = Union[Atom, Compound]


@dataclass(frozen=True)
class NamedAction:
    """A labelled action box; carries no agent, conditions or reparation."""

    name: Label
    expr: ActionExpr


# --------------------------------------------------------------------------
# Conditions

@dataclass(frozen=True)
class Cmp:
    variable: str
    op: CmpOp
    value: int
    negated: bool = False
    span: Optional[Span] = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not _LABEL_RE.match(self.variable):
            raise ModelError(f"invalid variable name {self.variable!r}")
        if self.value < 0:
            raise ModelError("comparison values are unsigned integers")


@dataclass(frozen=True)
class DoneTest:
    action: Label
    negated: bool = False
    span: Optional[Span] = field(default=None, compare=False, repr=False)


Guard = Union[Cmp, DoneTest]


@dataclass(frozen=True)
class TimeRestriction:
    clock: str
    op: CmpOp
    value: int
    negated: bool = False
    span: Optional[Span] = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if clock_box(self.clock) is None:
            raise ModelError(
                f"invalid clock name {self.clock!r}: clocks are t_ followed "
                "by a box label")
        if self.value < 0:
            raise ModelError("comparison values are unsigned integers")


# --------------------------------------------------------------------------
# Bodies, reparations, contracts

@dataclass(frozen=True)
class Modal:
    modality: Modality
    action: ActionExpr


@dataclass(frozen=True)
class Refinement:
    op: RefOp
    parts: tuple["Contract", ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))
        if len(self.parts) < 2:
            raise ModelError("a refinement needs at least two sub-contracts")


@dataclass(frozen=True)
class Rep:
    inner: "Contract"


@dataclass(frozen=True)
class CrossRef:
    target: Label
    span: Optional[Span] = field(default=None, compare=False, repr=False)


Body = Union[Modal, Refinement, Rep, CrossRef]


@dataclass(frozen=True)
class RefReparation:
    target: Label
    span: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class InlineReparation:
    contract: "Contract"


Reparation = Union[RefReparation, InlineReparation]


@dataclass(frozen=True)
class Contract:
    name: Label
    body: Body
    agent: Optional[NounPhrase] = None
    guards: tuple[Guard, ...] = ()
    timing: tuple[TimeRestriction, ...] = ()
    reparation: Optional[Reparation] = None
    span: Optional[Span] = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "guards", tuple(self.guards))
        object.__setattr__(self, "timing", tuple(self.timing))
        if isinstance(self.body, Modal):
            if self.agent is None:
                raise ModelError(f"modal clause {self.name} needs an agent")
            if (self.body.modality is Modality.PERMISSION
                    and self.reparation is not None):
                raise ModelError(
                    f"permission clause {self.name} cannot carry a reparation")
        else:
            if self.agent is not None:
                raise ModelError(
                    f"non-modal box {self.name} cannot have an agent")
            if self.reparation is not None:
                raise ModelError(
                    f"non-modal box {self.name} cannot carry a reparation")


@dataclass(frozen=True)
class Document:
    contracts: tuple[Contract, ...]
    variables: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "contracts", tuple(self.contracts))
        object.__setattr__(self, "variables", tuple(self.variables))
        if not self.contracts:
            raise ModelError("a document must contain at least one contract")
        seen: set[str] = set()
        for label in iter_labels(self):
            if label.text in seen:
                raise ModelError(f"duplicate label {label.text!r}")
            seen.add(label.text)


# --------------------------------------------------------------------------
# Traversal helpers

def _iter_action_labels(expr: ActionExpr) -> Iterator[Label]:
    if isinstance(expr, Compound):
        for part in expr.parts:
            yield part.name
            yield from _iter_action_labels(part.expr)


def iter_contracts(doc: Document) -> Iterator[Contract]:
    """All contract boxes in document order, including nested and inline ones."""

    def walk(c: Contract) -> Iterator[Contract]:
        yield c
        if isinstance(c.body, Refinement):
            for part in c.body.parts:
                yield from walk(part)
        elif isinstance(c.body, Rep):
            yield from walk(c.body.inner)
        if isinstance(c.reparation, InlineReparation):
            yield from walk(c.reparation.contract)

    for top in doc.contracts:
        yield from walk(top)


def iter_labels(doc: Document) -> Iterator[Label]:
    """Labels of every box (contracts and named actions) in document order."""
    for c in iter_contracts(doc):
        yield c.name
        if isinstance(c.body, Modal):
            yield from _iter_action_labels(c.body.action)


def equals_structural(a: Document, b: Document) -> bool:
    """Full deep equality of every field; source spans are ignored."""
    return a == b
