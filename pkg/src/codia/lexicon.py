"""Word-level knowledge needed for parsing and agreement.

The lexicon file is line-oriented, whitespace-separated, with ``#`` comments:

    noun <lemma> <singular> <plural|-> <sg|pl|mass> [proper]
    verb <lemma> <base...> <intrans|trans>
    adj  <lemma> <form>

Verb bases may be fixed multiword sequences.  Transitive verbs may also be
used without an object ("Mary is required to pay"); intransitive verbs never
take one.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .ast import Coord, NounPhrase, Number, Proper, RESERVED_WORDS

DETERMINERS = frozenset({"a", "an", "the"})
PREPOSITIONS = frozenset({"with", "of", "to", "from"})

#: Tokens that may never appear as lexicon surface forms: the grammar's
#: keywords plus the closed classes handled by the parser itself.
_FORBIDDEN_FORMS = RESERVED_WORDS | DETERMINERS


class LexiconError(ValueError):
    """Malformed lexicon source or an unresolved lookup."""


@dataclass(frozen=True)
class NounEntry:
    lemma: str
    singular: str
    plural: Optional[str]
    default_number: Number
    proper: bool = False
    mass: bool = False

    def __post_init__(self) -> None:
        if self.proper and self.plural is not None:
            raise LexiconError(f"proper noun {self.lemma!r} cannot have a plural")
        if self.mass and (self.plural is not None
                          or self.default_number is not Number.SG):
            raise LexiconError(f"mass noun {self.lemma!r} must be singular "
                               "and have no plural")

    def form(self, number: Number) -> str:
        if number is Number.SG:
            return self.singular
        if self.plural is None:
            raise LexiconError(f"noun {self.lemma!r} has no plural form")
        return self.plural


@dataclass(frozen=True)
class VerbEntry:
    lemma: str
    base: str
    transitive: bool


@dataclass(frozen=True)
class AdjEntry:
    lemma: str
    form: str


@dataclass(frozen=True)
class Lexicon:
    nouns: dict[str, NounEntry]
    verbs: dict[str, VerbEntry]
    adjectives: dict[str, AdjEntry]
    # Derived surface-form indexes, built by load_lexicon.
    noun_forms: dict[str, tuple[str, Number]] = field(default_factory=dict)
    adj_forms: dict[str, str] = field(default_factory=dict)
    verb_bases: dict[str, list[tuple[tuple[str, ...], str]]] = field(default_factory=dict)

    def noun(self, lemma: str) -> NounEntry:
        try:
            return self.nouns[lemma]
        except KeyError:
            raise LexiconError(f"unknown noun lemma {lemma!r}") from None

    def verb(self, lemma: str) -> VerbEntry:
        try:
            return self.verbs[lemma]
        except KeyError:
            raise LexiconError(f"unknown verb lemma {lemma!r}") from None

    def adjective(self, lemma: str) -> AdjEntry:
        try:
            return self.adjectives[lemma]
        except KeyError:
            raise LexiconError(f"unknown adjective lemma {lemma!r}") from None

    def resolve_noun_form(self, form: str) -> Optional[tuple[NounEntry, Number]]:
        hit = self.noun_forms.get(form)
        if hit is None:
            return None
        lemma, number = hit
        return self.nouns[lemma], number

    def is_np_start(self, token: str) -> bool:
        return (token in DETERMINERS
                or token in self.adj_forms
                or token in self.noun_forms)


def _check_form(form: str, line_no: int) -> None:
    if form in _FORBIDDEN_FORMS:
        raise LexiconError(
            f"line {line_no}: {form!r} is a keyword and cannot be a lexicon form")


def load_lexicon(source: str) -> Lexicon:
    """Parse lexicon text; raises :class:`LexiconError` with a line number."""
    nouns: dict[str, NounEntry] = {}
    verbs: dict[str, VerbEntry] = {}
    adjectives: dict[str, AdjEntry] = {}

    for line_no, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        kind = fields[0]
        if kind == "noun":
            if len(fields) not in (5, 6) or (len(fields) == 6 and fields[5] != "proper"):
                raise LexiconError(f"line {line_no}: malformed noun entry")
            _, lemma, sg, pl, numflag = fields[:5]
            proper = len(fields) == 6
            if numflag not in ("sg", "pl", "mass"):
                raise LexiconError(
                    f"line {line_no}: noun number must be sg, pl or mass")
            if lemma in nouns:
                raise LexiconError(f"line {line_no}: duplicate noun lemma {lemma!r}")
            plural = None if pl == "-" else pl
            mass = numflag == "mass"
            default = Number.PL if numflag == "pl" else Number.SG
            for form in (sg,) + ((plural,) if plural else ()):
                _check_form(form, line_no)
            try:
                nouns[lemma] = NounEntry(lemma, sg, plural, default,
                                         proper=proper, mass=mass)
            except LexiconError as exc:
                raise LexiconError(f"line {line_no}: {exc}") from None
        elif kind == "verb":
            if len(fields) < 4 or fields[-1] not in ("intrans", "trans"):
                raise LexiconError(f"line {line_no}: malformed verb entry")
            lemma = fields[1]
            base = " ".join(fields[2:-1])
            if lemma in verbs:
                raise LexiconError(f"line {line_no}: duplicate verb lemma {lemma!r}")
            for tok in base.split():
                _check_form(tok, line_no)
            verbs[lemma] = VerbEntry(lemma, base, transitive=fields[-1] == "trans")
        elif kind == "adj":
            if len(fields) != 3:
                raise LexiconError(f"line {line_no}: malformed adjective entry")
            _, lemma, form = fields
            if lemma in adjectives:
                raise LexiconError(
                    f"line {line_no}: duplicate adjective lemma {lemma!r}")
            _check_form(form, line_no)
            adjectives[lemma] = AdjEntry(lemma, form)
        else:
            raise LexiconError(
                f"line {line_no}: unknown entry kind {kind!r} "
                "(expected noun, verb or adj)")

    noun_forms: dict[str, tuple[str, Number]] = {}
    for e in nouns.values():
        for form, number in ((e.singular, Number.SG),) + (
                ((e.plural, Number.PL),) if e.plural else ()):
            if form in noun_forms and noun_forms[form][0] != e.lemma:
                raise LexiconError(
                    f"noun form {form!r} is ambiguous between lemmas "
                    f"{noun_forms[form][0]!r} and {e.lemma!r}")
            # Mass/proper nouns are fixed to their default number.
            noun_forms.setdefault(form, (e.lemma, number))

    adj_forms: dict[str, str] = {}
    for a in adjectives.values():
        if a.form in noun_forms:
            raise LexiconError(
                f"form {a.form!r} is both an adjective and a noun; "
                "this would be undecidable inside a noun phrase")
        if a.form in adj_forms:
            raise LexiconError(f"adjective form {a.form!r} is ambiguous")
        adj_forms[a.form] = a.lemma

    verb_bases: dict[str, list[tuple[tuple[str, ...], str]]] = {}
    for v in verbs.values():
        toks = tuple(v.base.split())
        bucket = verb_bases.setdefault(toks[0], [])
        if any(t == toks for t, _ in bucket):
            raise LexiconError(f"verb base {v.base!r} is ambiguous")
        bucket.append((toks, v.lemma))
    for bucket in verb_bases.values():
        bucket.sort(key=lambda item: -len(item[0]))  # longest match first

    return Lexicon(nouns, verbs, adjectives, noun_forms, adj_forms, verb_bases)


def np_number(np: NounPhrase, lex: Lexicon) -> Number:
    """Grammatical number of a noun phrase: coordination is plural, otherwise
    the number of the head noun."""
    if isinstance(np, Coord):
        return Number.PL
    ref = np.ref if isinstance(np, Proper) else np.head
    entry = lex.noun(ref.lemma)
    if entry.proper or entry.mass:
        return entry.default_number
    return ref.number


def copula_for(number: Number) -> str:
    return "is" if number is Number.SG else "are"
