"""Contract texts in controlled natural language: parse, check, exchange.

The package turns contract text written in a small controlled English into
a validated structural model, renders the model back to canonical text, and
reads and writes the COML XML interchange format.  A command line front end
and an HTTP validation service are built on the same calls.
"""
from .ast import (
    Atom, Body, Common, Compound, Contract, Coord, CrossRef, Cmp, CmpOp, Det,
    Document, DoneTest, InlineReparation, Intransitive, Label, Modal,
    Modality, ModelError, NamedAction, NounPhrase, NounRef, Number, Prep,
    Proper, RefOp, RefReparation, Refinement, Rep, Reparation,
    TimeRestriction, Transitive, equals_structural, iter_contracts,
    iter_labels,
)
from .coml import from_coml, to_coml
from .diagnostics import Diagnostic, Severity, Span, has_errors
from .layout import LayoutError, unpretty_print
from .lexicon import Lexicon, LexiconError, load_lexicon
from .linearize import LinearizeError, linearize
from .parser import parse_document
from .validate import generate_clocks, validate_document

__version__ = "1.0.0"

__all__ = [
    "Atom", "Body", "Common", "Compound", "Contract", "Coord", "CrossRef",
    "Cmp", "CmpOp", "Det", "Diagnostic", "Document", "DoneTest",
    "InlineReparation", "Intransitive", "Label", "LayoutError", "Lexicon",
    "LexiconError", "LinearizeError", "Modal", "Modality", "ModelError",
    "NamedAction", "NounPhrase", "NounRef", "Number", "Prep", "Proper",
    "RefOp", "RefReparation", "Refinement", "Rep", "Reparation", "Severity",
    "Span", "TimeRestriction", "Transitive", "equals_structural",
    "from_coml", "generate_clocks", "has_errors", "iter_contracts",
    "iter_labels", "linearize", "load_lexicon", "parse_document", "to_coml",
    "unpretty_print", "validate_document",
]
