"""Recursive-descent parser from the controlled surface language to the model.

The grammar is deterministic over a closed keyword set; noun/verb/adjective
tokens are resolved against the active lexicon.  Parsing stops at the first
error and reports it as a diagnostic with a source span.
"""
from __future__ import annotations

from typing import Optional

from . import ast
from .ast import (
    Atom, CmpOp, Common, Compound, Contract, Coord, CrossRef, Cmp, Det,
    Document, DoneTest, InlineReparation, Intransitive, Label, Modal,
    Modality, ModelError, NamedAction, NounRef, Proper, Prep, RefOp,
    RefReparation, Refinement, Rep, TimeRestriction, Transitive,
)
from .diagnostics import Diagnostic, Span, error
from .layout import LayoutError, Token, layout_tokens
from .lexicon import DETERMINERS, Lexicon, copula_for, np_number

_MODALITY_KEYWORDS = {
    "required": Modality.OBLIGATION,
    "allowed": Modality.PERMISSION,
    "forbidden": Modality.PROHIBITION,
}

_LIST_OPS = {"and": RefOp.CONJ, "or": RefOp.CHOICE, "then": RefOp.SEQ}

_CMP_OPS = {"less": CmpOp.LESS, "greater": CmpOp.GREATER, "equal": CmpOp.EQUAL}


class _Abort(Exception):
    """Internal: unwinds the parse after the first error diagnostic."""


class _Parser:
    def __init__(self, tokens: list[Token], lex: Lexicon, autolabel: bool) -> None:
        self.tokens = tokens
        self.pos = 0
        self.lex = lex
        self.autolabel = autolabel
        self.diags: list[Diagnostic] = []
        self.seen_labels: dict[str, Span] = {}
        self._auto_counters: dict[str, int] = {}

    # -- token plumbing ----------------------------------------------------

    def peek(self, k: int = 0) -> Token:
        i = min(self.pos + k, len(self.tokens) - 1)
        return self.tokens[i]

    def at(self, text: str, k: int = 0) -> bool:
        return self.peek(k).text == text and self.peek(k).kind != "eof"

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, text: str, what: str) -> Token:
        if not self.at(text):
            self.fail("grammar", f"expected {what}, found {self._describe()}")
        return self.advance()

    def _describe(self, k: int = 0) -> str:
        tok = self.peek(k)
        return "end of input" if tok.kind == "eof" else repr(tok.text)

    def fail(self, code: str, message: str, token: Optional[Token] = None) -> None:
        tok = token if token is not None else self.peek()
        self.diags.append(error(code, message, tok.span))
        raise _Abort

    # -- labels ------------------------------------------------------------

    @staticmethod
    def _labelish(tok: Token) -> bool:
        """Labels may be any letter/digit run, e.g. `1a` (paper sublabels)."""
        return tok.kind in ("word", "int")

    def _label_token(self, what: str) -> Label:
        tok = self.peek()
        if not self._labelish(tok):
            self.fail("grammar", f"expected {what}, found {self._describe()}")
        try:
            label = Label(tok.text)
        except ModelError as exc:
            self.fail("grammar", str(exc))
        self.advance()
        return label

    def define_label(self, parent: Optional[Label]) -> tuple[Label, Span]:
        """Consume ``<label> :``, or synthesize a label under --autolabel."""
        tok = self.peek()
        if self._labelish(tok) and self.at(":", 1):
            label = self._label_token("a box label")
            self.expect(":", "':' after the label")
            span = tok.span
        elif self.autolabel and parent is not None:
            n = self._auto_counters.get(parent.text, 0) + 1
            self._auto_counters[parent.text] = n
            label = Label(f"{parent.text}_{n}")
            span = tok.span
        else:
            self.fail("grammar",
                      f"expected a labelled clause ('name : ...'), found "
                      f"{self._describe()}")
        if label.text in self.seen_labels:
            self.fail("duplicate-label",
                      f"label {label.text!r} is already defined", tok)
        self.seen_labels[label.text] = span
        return label, span

    # -- document ----------------------------------------------------------

    def document(self) -> Document:
        variables = self._preamble()
        contracts = []
        while self.peek().kind != "eof":
            contracts.append(self.contract(parent=None))
        if not contracts:
            self.fail("grammar", "a document must contain at least one contract")
        try:
            return Document(tuple(contracts), variables)
        except ModelError as exc:  # defensive: labels are pre-checked
            self.fail("grammar", str(exc))

    def _preamble(self) -> tuple[str, ...]:
        if not (self.at("variables") and self.at(":", 1)):
            return ()
        self.advance()
        self.advance()
        names = [self._identifier("a variable name")]
        while self.at(","):
            self.advance()
            names.append(self._identifier("a variable name"))
        return tuple(names)

    def _identifier(self, what: str) -> str:
        tok = self.peek()
        if tok.kind != "word":
            self.fail("grammar", f"expected {what}, found {self._describe()}")
        self.advance()
        return tok.text

    # -- contracts ---------------------------------------------------------

    def contract(self, parent: Optional[Label]) -> Contract:
        name, span = self.define_label(parent)
        guards, timing = self.conditions()

        agent = None
        reparation = None
        if self.at("see"):
            tok = self.advance()
            target = self._label_token("a box label after 'see'")
            body: ast.Body = CrossRef(target, span=self._prev_span())
        elif self.at("repeatedly"):
            self.advance()
            body = Rep(self.contract(parent=name))
        elif self.at("all") and self.at("of", 1):
            self.advance(); self.advance()
            body = self.bulleted_contracts(RefOp.CONJ, name)
        elif self.at("one") and self.at("of", 1):
            self.advance(); self.advance()
            body = self.bulleted_contracts(RefOp.CHOICE, name)
        elif (self.at("the") and self.at("following", 1) and self.at(",", 2)
              and self.at("in", 3) and self.at("order", 4)):
            for _ in range(5):
                self.advance()
            body = self.bulleted_contracts(RefOp.SEQ, name)
        elif self.at("first"):
            self.advance()
            body = self.inline_seq(name)
        elif self._labelish(self.peek()) and self.at(":", 1):
            body = self.inline_refinement(name)
        else:
            agent, modality, action, reparation = self.modal_clause(name)
            body = Modal(modality, action)

        if self.at("otherwise"):
            tok = self.peek()
            if not isinstance(body, Modal):
                self.fail("grammar",
                          "only obligation and prohibition clauses may carry "
                          "a reparation", tok)
            if reparation is not None:
                self.fail("grammar", "duplicate reparation", tok)
            if body.modality is Modality.PERMISSION:
                self.fail("grammar",
                          "a permission clause cannot carry a reparation", tok)
            self.advance()
            reparation = self.reparation(parent)

        try:
            return Contract(name, body, agent=agent, guards=tuple(guards),
                            timing=tuple(timing), reparation=reparation,
                            span=span)
        except ModelError as exc:
            self.fail("grammar", str(exc))

    def _prev_span(self) -> Span:
        return self.tokens[self.pos - 1].span

    def reparation(self, parent: Optional[Label]):
        if self.at("see"):
            self.advance()
            target = self._label_token("a box label after 'see'")
            return RefReparation(target, span=self._prev_span())
        return InlineReparation(self.contract(parent))

    def bulleted_contracts(self, op: RefOp, parent: Label) -> Refinement:
        open_tok = self.peek()
        self.expect("{", "an indented bulleted list")
        parts = []
        while True:
            self.expect("-", "a bulleted clause")
            parts.append(self.contract(parent))
            if self.at("}"):
                self.advance()
                break
            if not self.at("-"):
                self.fail("grammar",
                          f"expected another bulleted clause or the end of "
                          f"the list, found {self._describe()}")
        if len(parts) < 2:
            self.fail("grammar", "a refinement needs at least two clauses",
                      open_tok)
        return Refinement(op, tuple(parts))

    def inline_seq(self, parent: Optional[Label]) -> Refinement:
        parts = [self.contract(parent)]
        self.expect(",", "', then' after the first clause")
        self.expect("then", "', then' after the first clause")
        parts.append(self.contract(parent))
        while self.at(",") and self.at("then", 1):
            self.advance(); self.advance()
            parts.append(self.contract(parent))
        return Refinement(RefOp.SEQ, tuple(parts))

    def inline_refinement(self, parent: Optional[Label]) -> Refinement:
        parts = [self.contract(parent)]
        op: Optional[RefOp] = None
        while (self.peek().text in ("and", "or")
               and self._labelish(self.peek(1)) and self.at(":", 2)):
            tok = self.advance()
            this_op = RefOp.CONJ if tok.text == "and" else RefOp.CHOICE
            if op is not None and this_op is not op:
                self.fail("grammar",
                          "all clauses of one combination must use the same "
                          "combinator", tok)
            op = this_op
            parts.append(self.contract(parent))
        if op is None:
            self.fail("grammar",
                      "expected 'and' or 'or' and a second clause, found "
                      f"{self._describe()}")
        return Refinement(op, tuple(parts))

    # -- conditions ----------------------------------------------------------

    def conditions(self) -> tuple[list, list]:
        guards: list = []
        timing: list = []
        while self.peek().text in ("if", "when"):
            self.advance()
            self._condition(guards, timing)
            while self.at("and"):
                self.advance()
                self._condition(guards, timing)
        return guards, timing

    def _condition(self, guards: list, timing: list) -> None:
        if self.at("variable"):
            self.advance()
            var_tok = self.peek()
            var = self._identifier("a variable name")
            negated = self._negation()
            op, value = self._comparison()
            guards.append(Cmp(var, op, value, negated, span=var_tok.span))
        elif self.at("clock"):
            self.advance()
            tok = self.peek()
            name = self._identifier("a clock name")
            if ast.clock_box(name) is None:
                self.fail("grammar",
                          f"clock names are t_ followed by a box label, "
                          f"found {name!r}", tok)
            negated = self._negation()
            op, value = self._comparison()
            timing.append(TimeRestriction(name, op, value, negated,
                                          span=tok.span))
        elif self._labelish(self.peek()) and self.at("is", 1):
            tok = self.peek()
            label = self._label_token("a box label")
            self.expect("is", "'is'")
            negated = self._negation()
            self.expect("done", "'done'")
            guards.append(DoneTest(label, negated, span=tok.span))
        else:
            self.fail("grammar",
                      "expected a condition ('variable ...', 'clock ...' or "
                      f"'<label> is done'), found {self._describe()}")

    def _negation(self) -> bool:
        if self.at("not"):
            self.advance()
            return True
        return False

    def _comparison(self) -> tuple[CmpOp, int]:
        tok = self.peek()
        if tok.text not in _CMP_OPS:
            self.fail("grammar",
                      "expected 'less than', 'greater than' or 'equal to', "
                      f"found {self._describe()}")
        self.advance()
        if tok.text == "equal":
            self.expect("to", "'to' after 'equal'")
        else:
            self.expect("than", f"'than' after {tok.text!r}")
        num = self.peek()
        if num.kind != "int":
            self.fail("grammar", f"expected a number, found {self._describe()}")
        self.advance()
        return _CMP_OPS[tok.text], int(num.text)

    # -- modal clauses -------------------------------------------------------

    def modal_clause(self, name: Label):
        agent = self.noun_phrase()
        tok = self.peek()
        reparation = None
        if tok.text == "may":
            self.advance()
            return agent, Modality.PERMISSION, Atom(self.verb_phrase()), None
        if tok.text == "mustn't":
            self.advance()
            return agent, Modality.PROHIBITION, Atom(self.verb_phrase()), None
        if tok.text in ("is", "are"):
            self.advance()
            expected = copula_for(np_number(agent, self.lex))
            if tok.text != expected:
                self.fail("agreement",
                          f"copula {tok.text!r} does not agree with the "
                          f"agent (expected {expected!r})", tok)
            kw = self.peek()
            if kw.text not in _MODALITY_KEYWORDS:
                self.fail("grammar",
                          "expected 'required', 'allowed' or 'forbidden', "
                          f"found {self._describe()}")
            self.advance()
            modality = _MODALITY_KEYWORDS[kw.text]
            if self.at("to"):
                self.advance()
                return agent, modality, Atom(self.verb_phrase()), None
            if self.at("{"):
                action, reparation = self.action_list(name, allow_reparation=True)
                if reparation is not None:
                    if modality is Modality.PERMISSION:
                        self.fail("grammar",
                                  "a permission clause cannot carry a "
                                  "reparation", self._rep_tok)
                return agent, modality, action, reparation
            self.fail("grammar",
                      "expected 'to' and an action, or an indented action "
                      f"list, found {self._describe()}")
        self.fail("grammar",
                  "expected a modal ('is/are required/allowed/forbidden', "
                  f"'may' or 'mustn't'), found {self._describe()}")

    def action_list(self, parent: Optional[Label], allow_reparation: bool):
        """Parse ``{ - name : to ... , op - ... [otherwise ...] }``."""
        open_tok = self.expect("{", "an action list")
        parts = []
        ops: list[tuple[Token, RefOp]] = []
        reparation = None
        while True:
            self.expect("-", "a bulleted action")
            parts.append(self.named_action(parent))
            if self.at(",") and self.peek(1).text in _LIST_OPS:
                self.advance()
                op_tok = self.advance()
                ops.append((op_tok, _LIST_OPS[op_tok.text]))
                continue
            if self.at("otherwise"):
                self._rep_tok = self.peek()
                if not allow_reparation:
                    self.fail("grammar",
                              "a reparation must appear at the end of the "
                              "whole clause, not inside a nested action list")
                self.advance()
                reparation = self.reparation(parent)
            self.expect("}", "', and/or/then' before the next action, "
                             "'otherwise', or the end of the list")
            break
        if len(parts) < 2:
            self.fail("grammar", "a combined action needs at least two items",
                      open_tok)
        first = ops[0][1]
        for tok, op in ops[1:]:
            if op is not first:
                self.fail("grammar",
                          "all items of one action list must use the same "
                          "combinator", tok)
        return Compound(first, tuple(parts)), reparation

    def named_action(self, parent: Optional[Label]) -> NamedAction:
        name, _span = self.define_label(parent)
        if self.at("to"):
            self.advance()
            return NamedAction(name, Atom(self.verb_phrase()))
        if self.at("{"):
            expr, _ = self.action_list(name, allow_reparation=False)
            return NamedAction(name, expr)
        self.fail("grammar",
                  "expected 'to' and an action, or a nested action list, "
                  f"found {self._describe()}")

    def verb_phrase(self):
        tok = self.peek()
        if tok.kind != "word":
            self.fail("grammar", f"expected a verb, found {self._describe()}")
        candidates = self.lex.verb_bases.get(tok.text, [])
        match = None
        for base_tokens, lemma in candidates:
            if all(self.at(t, i) for i, t in enumerate(base_tokens)):
                match = (base_tokens, lemma)
                break
        if match is None:
            self.fail("unknown-word", f"unknown verb {tok.text!r}", tok)
        base_tokens, lemma = match
        for _ in base_tokens:
            self.advance()
        entry = self.lex.verb(lemma)
        # A label followed by ':' starts the next clause, never an object.
        if (self._np_start(self.peek())
                and not (self._labelish(self.peek()) and self.at(":", 1))):
            if not entry.transitive:
                self.fail("grammar",
                          f"verb {lemma!r} is intransitive and takes no object")
            return Transitive(lemma, self.noun_phrase())
        return Intransitive(lemma)

    # -- noun phrases ----------------------------------------------------------

    def _np_start(self, tok: Token) -> bool:
        return tok.kind == "word" and self.lex.is_np_start(tok.text)

    def noun_phrase(self):
        left = self._np_simple()
        while (self.at("and") and self._np_start(self.peek(1))
               and not self.at(":", 2)):
            self.advance()
            left = Coord(left, self._np_simple())
        return left

    def _np_simple(self):
        det = None
        tok = self.peek()
        if tok.text in DETERMINERS:
            det = Det(tok.text)
            self.advance()
        adjectives: list[str] = []
        while (self.peek().text in self.lex.adj_forms
               and (self.peek(1).text in self.lex.adj_forms
                    or self.peek(1).text in self.lex.noun_forms)):
            adjectives.append(self.lex.adj_forms[self.advance().text])
        head_tok = self.peek()
        if head_tok.kind != "word":
            self.fail("grammar", f"expected a noun, found {self._describe()}")
        resolved = self.lex.resolve_noun_form(head_tok.text)
        if resolved is None:
            self.fail("unknown-word", f"unknown word {head_tok.text!r}",
                      head_tok)
        self.advance()
        entry, number = resolved
        ref = NounRef(entry.lemma, number)
        if entry.proper:
            if det is not None or adjectives:
                self.fail("grammar",
                          f"proper noun {entry.lemma!r} cannot take a "
                          "determiner or adjectives", head_tok)
            return Proper(ref)
        pp = None
        if (self.peek().text in ("with", "of", "to", "from")
                and self._np_start(self.peek(1)) and not self.at(":", 2)):
            prep = Prep(self.advance().text)
            pp = (prep, self._np_simple())
        return Common(ref, determiner=det, adjectives=tuple(adjectives), pp=pp)


def parse_document(text: str, lex: Lexicon, autolabel: bool = False
                   ) -> tuple[Optional[Document], list[Diagnostic]]:
    """Parse surface text into a document.

    Returns ``(document, diagnostics)``; the document is None when any error
    diagnostic was produced.
    """
    try:
        tokens = layout_tokens(text)
    except LayoutError as exc:
        return None, [exc.diagnostic]
    parser = _Parser(tokens, lex, autolabel)
    try:
        doc = parser.document()
    except _Abort:
        return None, parser.diags
    return doc, parser.diags
