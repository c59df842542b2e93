"""Rendering documents back to the canonical surface text.

The output is deterministic and bit-exact: guards are introduced by ``if``,
timing by ``when clock``, lists are bulleted with two-space indentation, and
exactly-two-part refinements are inlined when both parts are plain modal
clauses.  Re-parsing the output yields a structurally equal document.
"""
from __future__ import annotations

from .ast import (
    ActionExpr, Atom, CmpOp, Common, Compound, Contract, Coord, CrossRef,
    Cmp, Document, DoneTest, InlineReparation, Intransitive, Modal, Modality,
    NamedAction, NounPhrase, Proper, RefOp, RefReparation, Refinement, Rep,
    Reparation, TimeRestriction, Transitive,
)
from .lexicon import Lexicon, LexiconError, copula_for, np_number


class LinearizeError(Exception):
    """A word reference does not resolve in the active lexicon."""


_CMP_WORDS = {CmpOp.LESS: "less than", CmpOp.GREATER: "greater than",
              CmpOp.EQUAL: "equal to"}

_REF_KEYWORDS = {RefOp.CONJ: "all of", RefOp.CHOICE: "one of",
                 RefOp.SEQ: "the following, in order"}

_LIST_OP_WORDS = {RefOp.CONJ: "and", RefOp.CHOICE: "or", RefOp.SEQ: "then"}

# One line of output, at a bullet depth (0 = column one, no bullet).
_Line = tuple[int, str]


def linearize(doc: Document, lex: Lexicon) -> str:
    """Canonical surface text for ``doc``; ends with a newline."""
    lines: list[str] = []
    if doc.variables:
        lines.append("variables: " + ", ".join(doc.variables))
    for contract in doc.contracts:
        head, children = _contract(contract, lex)
        lines.append(head)
        for depth, text in children:
            lines.append("  " * depth + text)
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Noun and verb phrases

def _np(np: NounPhrase, lex: Lexicon) -> str:
    if isinstance(np, Coord):
        return f"{_np(np.left, lex)} and {_np(np.right, lex)}"
    try:
        if isinstance(np, Proper):
            entry = lex.noun(np.ref.lemma)
            if not entry.proper:
                raise LinearizeError(
                    f"noun {np.ref.lemma!r} is not a proper noun")
            return entry.singular
        words: list[str] = []
        if np.determiner is not None:
            words.append(np.determiner.value)
        for adj in np.adjectives:
            words.append(lex.adjective(adj).form)
        words.append(lex.noun(np.head.lemma).form(np.head.number))
    except LexiconError as exc:
        raise LinearizeError(str(exc)) from None
    if np.pp is not None:
        prep, inner = np.pp
        words.append(prep.value)
        words.append(_np(inner, lex))
    return " ".join(words)


def _vp(action, lex: Lexicon) -> str:
    try:
        entry = lex.verb(action.verb)
    except LexiconError as exc:
        raise LinearizeError(str(exc)) from None
    if isinstance(action, Intransitive):
        return entry.base
    if not entry.transitive:
        raise LinearizeError(f"verb {action.verb!r} is intransitive and "
                             "takes no object")
    return f"{entry.base} {_np(action.obj, lex)}"


# --------------------------------------------------------------------------
# Conditions

def _guard(g, lex: Lexicon) -> str:
    if isinstance(g, Cmp):
        neg = "not " if g.negated else ""
        return f"variable {g.variable} {neg}{_CMP_WORDS[g.op]} {g.value}"
    neg = "not " if g.negated else ""
    return f"{g.action} is {neg}done"


def _timing(tr: TimeRestriction) -> str:
    neg = "not " if tr.negated else ""
    return f"clock {tr.clock} {neg}{_CMP_WORDS[tr.op]} {tr.value}"


def _conditions(c: Contract, lex: Lexicon) -> list[str]:
    parts = []
    if c.guards:
        parts.append("if " + " and ".join(_guard(g, lex) for g in c.guards))
    if c.timing:
        parts.append("when " + " and ".join(_timing(t) for t in c.timing))
    return parts


# --------------------------------------------------------------------------
# Contracts

def _is_inline_part(c: Contract) -> bool:
    """Inline-eligible: a plain modal clause over a single action, with at
    most a by-reference reparation.  Anything else gets bullets."""
    return (isinstance(c.body, Modal) and isinstance(c.body.action, Atom)
            and not isinstance(c.reparation, InlineReparation))


def _contract(c: Contract, lex: Lexicon) -> tuple[str, list[_Line]]:
    head: list[str] = [f"{c.name} :"]
    head.extend(_conditions(c, lex))
    children: list[_Line] = []

    body = c.body
    if isinstance(body, CrossRef):
        head.append(f"see {body.target}")
    elif isinstance(body, Rep):
        inner_head, children = _contract(body.inner, lex)
        head.append(f"repeatedly {inner_head}")
    elif isinstance(body, Refinement):
        if len(body.parts) == 2 and all(_is_inline_part(p) for p in body.parts):
            left, _ = _contract(body.parts[0], lex)
            right, _ = _contract(body.parts[1], lex)
            if body.op is RefOp.SEQ:
                head.append(f"first {left} , then {right}")
            else:
                head.append(f"{left} {_LIST_OP_WORDS[body.op]} {right}")
        else:
            head.append(_REF_KEYWORDS[body.op])
            for part in body.parts:
                part_head, part_children = _contract(part, lex)
                children.append((1, f"- {part_head}"))
                children.extend((d + 1, t) for d, t in part_children)
    else:
        agent = _np(c.agent, lex)
        copula = copula_for(np_number(c.agent, lex))
        if isinstance(body.action, Atom):
            vp = _vp(body.action.action, lex)
            if body.modality is Modality.OBLIGATION:
                head.append(f"{agent} {copula} required to {vp}")
            elif body.modality is Modality.PERMISSION:
                head.append(f"{agent} may {vp}")
            else:
                head.append(f"{agent} mustn't {vp}")
        else:
            keyword = {Modality.OBLIGATION: "required",
                       Modality.PERMISSION: "allowed",
                       Modality.PROHIBITION: "forbidden"}[body.modality]
            head.append(f"{agent} {copula} {keyword}")
            children = _action_items(body.action, lex)
            if c.reparation is not None:
                rep_text, rep_children = _reparation(c.reparation, lex)
                depth, last = children[-1]
                children[-1] = (depth, f"{last} {rep_text}")
                children.extend((depth + d, t) for d, t in rep_children)
            return " ".join(head), children

    if c.reparation is not None:
        rep_text, rep_children = _reparation(c.reparation, lex)
        head.append(rep_text)
        children.extend(rep_children)
    return " ".join(head), children


def _reparation(rep: Reparation, lex: Lexicon) -> tuple[str, list[_Line]]:
    if isinstance(rep, RefReparation):
        return f"otherwise see {rep.target}", []
    inner_head, inner_children = _contract(rep.contract, lex)
    return f"otherwise {inner_head}", inner_children


# --------------------------------------------------------------------------
# Action lists

def _action_items(expr: Compound, lex: Lexicon) -> list[_Line]:
    op_word = _LIST_OP_WORDS[expr.op]
    lines: list[_Line] = []
    for i, part in enumerate(expr.parts):
        text = f"- {_named_action(part, lex)}"
        if i < len(expr.parts) - 1:
            text += f" , {op_word}"
        lines.append((1, text))
    return lines


def _named_action(na: NamedAction, lex: Lexicon) -> str:
    if isinstance(na.expr, Atom):
        return f"{na.name} : to {_vp(na.expr.action, lex)}"
    return f"{na.name} : {_braced_actions(na.expr, lex)}"


def _braced_actions(expr: Compound, lex: Lexicon) -> str:
    """Nested action combinations are rendered inline with braces; the layout
    only ever bullets one action list per clause line."""
    op_word = _LIST_OP_WORDS[expr.op]
    items = [f"- {_named_action(p, lex)}" for p in expr.parts]
    joined = f" , {op_word} ".join(items)
    return "{ " + joined + " }"
