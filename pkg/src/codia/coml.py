"""COML: the XML interchange format for contract documents.

The element structure mirrors the abstract model one-to-one; the shipped
``data/coml.xsd`` document is normative.  Serialization is deterministic:
the same document always yields byte-identical XML.  Lexical references are
stored as lemma strings; the lexicon itself is never embedded.
"""
from __future__ import annotations

import xml.etree.ElementTree as ET
from typing import Optional
from xml.sax.saxutils import escape, quoteattr

from .ast import (
    ActionExpr, Atom, Body, CmpOp, Common, Compound, Contract, Coord,
    CrossRef, Cmp, Det, Document, DoneTest, InlineReparation, Intransitive,
    Label, Modal, Modality, ModelError, NamedAction, NounPhrase, NounRef,
    Number, Prep, Proper, RefOp, RefReparation, Refinement, Rep, Reparation,
    TimeRestriction, Transitive,
)
from .diagnostics import Diagnostic, error

COML_VERSION = "1"

_MODALITY_TAGS = {Modality.OBLIGATION: "obligation",
                  Modality.PERMISSION: "permission",
                  Modality.PROHIBITION: "prohibition"}
_TAG_MODALITIES = {v: k for k, v in _MODALITY_TAGS.items()}


# --------------------------------------------------------------------------
# Writing

class _Writer:
    def __init__(self) -> None:
        self.lines: list[str] = ['<?xml version="1.0" encoding="UTF-8"?>']

    def tag(self, depth: int, name: str, attrs: list[tuple[str, str]],
            empty: bool = False) -> None:
        rendered = "".join(f" {k}={quoteattr(v)}" for k, v in attrs)
        slash = "/" if empty else ""
        self.lines.append(f"{'  ' * depth}<{name}{rendered}{slash}>")

    def close(self, depth: int, name: str) -> None:
        self.lines.append(f"{'  ' * depth}</{name}>")


def to_coml(doc: Document) -> str:
    w = _Writer()
    w.tag(0, "document", [("version", COML_VERSION)])
    if doc.variables:
        w.tag(1, "variables", [])
        for name in doc.variables:
            w.tag(2, "variable", [("name", name)], empty=True)
        w.close(1, "variables")
    for contract in doc.contracts:
        _write_contract(w, 1, contract)
    w.close(0, "document")
    return "\n".join(w.lines) + "\n"


def _write_contract(w: _Writer, depth: int, c: Contract) -> None:
    w.tag(depth, "contract", [("name", c.name.text)])
    if c.agent is not None:
        w.tag(depth + 1, "agent", [])
        _write_np(w, depth + 2, c.agent)
        w.close(depth + 1, "agent")
    for g in c.guards:
        w.tag(depth + 1, "guard", [])
        if isinstance(g, Cmp):
            attrs = [("var", g.variable), ("op", g.op.value),
                     ("value", str(g.value))]
            if g.negated:
                attrs.append(("negated", "true"))
            w.tag(depth + 2, "cmp", attrs, empty=True)
        else:
            attrs = [("action", g.action.text)]
            if g.negated:
                attrs.append(("negated", "true"))
            w.tag(depth + 2, "done", attrs, empty=True)
        w.close(depth + 1, "guard")
    for t in c.timing:
        w.tag(depth + 1, "timing", [])
        attrs = [("clock", t.clock), ("op", t.op.value), ("value", str(t.value))]
        if t.negated:
            attrs.append(("negated", "true"))
        w.tag(depth + 2, "cmp", attrs, empty=True)
        w.close(depth + 1, "timing")
    _write_body(w, depth + 1, c.body)
    if c.reparation is not None:
        w.tag(depth + 1, "reparation", [])
        if isinstance(c.reparation, RefReparation):
            w.tag(depth + 2, "crossref",
                  [("target", c.reparation.target.text)], empty=True)
        else:
            _write_contract(w, depth + 2, c.reparation.contract)
        w.close(depth + 1, "reparation")
    w.close(depth, "contract")


def _write_body(w: _Writer, depth: int, body: Body) -> None:
    if isinstance(body, Modal):
        tag = _MODALITY_TAGS[body.modality]
        w.tag(depth, tag, [])
        _write_action_expr(w, depth + 1, body.action)
        w.close(depth, tag)
    elif isinstance(body, Refinement):
        w.tag(depth, "refinement", [("op", body.op.value)])
        for part in body.parts:
            _write_contract(w, depth + 1, part)
        w.close(depth, "refinement")
    elif isinstance(body, Rep):
        w.tag(depth, "rep", [])
        _write_contract(w, depth + 1, body.inner)
        w.close(depth, "rep")
    else:
        w.tag(depth, "crossref", [("target", body.target.text)], empty=True)


def _write_action_expr(w: _Writer, depth: int, expr: ActionExpr) -> None:
    if isinstance(expr, Atom):
        action = expr.action
        if isinstance(action, Intransitive):
            w.tag(depth, "action", [("verb", action.verb)], empty=True)
        else:
            w.tag(depth, "action", [("verb", action.verb)])
            w.tag(depth + 1, "object", [])
            _write_np(w, depth + 2, action.obj)
            w.close(depth + 1, "object")
            w.close(depth, "action")
    else:
        w.tag(depth, "refinement", [("op", expr.op.value)])
        for part in expr.parts:
            w.tag(depth + 1, "namedAction", [("name", part.name.text)])
            _write_action_expr(w, depth + 2, part.expr)
            w.close(depth + 1, "namedAction")
        w.close(depth, "refinement")


def _write_np(w: _Writer, depth: int, np: NounPhrase) -> None:
    if isinstance(np, Proper):
        w.tag(depth, "np", [("type", "proper"), ("lemma", np.ref.lemma)],
              empty=True)
    elif isinstance(np, Coord):
        w.tag(depth, "np", [("type", "coord")])
        _write_np(w, depth + 1, np.left)
        _write_np(w, depth + 1, np.right)
        w.close(depth, "np")
    else:
        attrs = [("type", "common"), ("lemma", np.head.lemma),
                 ("number", np.head.number.value)]
        if np.determiner is not None:
            attrs.append(("det", np.determiner.value))
        if not np.adjectives and np.pp is None:
            w.tag(depth, "np", attrs, empty=True)
            return
        w.tag(depth, "np", attrs)
        for adj in np.adjectives:
            w.tag(depth + 1, "adj", [("lemma", adj)], empty=True)
        if np.pp is not None:
            prep, inner = np.pp
            w.tag(depth + 1, "pp", [("prep", prep.value)])
            _write_np(w, depth + 2, inner)
            w.close(depth + 1, "pp")
        w.close(depth, "np")


# --------------------------------------------------------------------------
# Reading

class ComlError(Exception):
    def __init__(self, code: str, message: str, path: str) -> None:
        super().__init__(f"{path}: {message}")
        self.code = code
        self.path = path


def from_coml(xml_text: str) -> tuple[Optional[Document], list[Diagnostic]]:
    """Parse COML text; failures are reported as diagnostics naming the
    offending element path."""
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        return None, [error("xml-syntax", f"not well-formed XML: {exc}")]
    try:
        return _read_document(root), []
    except ComlError as exc:
        return None, [error(exc.code, str(exc))]


def _schema_error(message: str, path: str) -> ComlError:
    return ComlError("xml-schema", message, path)


def _attrs(el: ET.Element, path: str, required: tuple[str, ...],
           optional: tuple[str, ...] = ()) -> dict[str, str]:
    keys = set(el.keys())
    missing = set(required) - keys
    if missing:
        raise _schema_error(f"missing attribute(s) {sorted(missing)}", path)
    extra = keys - set(required) - set(optional)
    if extra:
        raise _schema_error(f"unexpected attribute(s) {sorted(extra)}", path)
    return dict(el.items())


def _expect_tag(el: ET.Element, tags: tuple[str, ...], path: str) -> None:
    if el.tag not in tags:
        raise _schema_error(
            f"unexpected element <{el.tag}> (expected one of "
            f"{', '.join(tags)})", f"{path}/{el.tag}")


def _indexed_children(el: ET.Element, path: str):
    counters: dict[str, int] = {}
    out = []
    for child in el:
        counters[child.tag] = counters.get(child.tag, 0) + 1
        out.append((child, f"{path}/{child.tag}[{counters[child.tag]}]"))
    return out


def _label(text: str, path: str) -> Label:
    try:
        return Label(text)
    except ModelError as exc:
        raise ComlError("model-invariant", str(exc), path) from None


def _read_document(root: ET.Element) -> Document:
    path = "document"
    if root.tag != "document":
        raise _schema_error("root element must be <document>", path)
    attrs = _attrs(root, path, required=("version",))
    if attrs["version"] != COML_VERSION:
        raise _schema_error(
            f"unsupported version {attrs['version']!r} (expected "
            f"{COML_VERSION!r})", path)
    variables: list[str] = []
    contracts: list[Contract] = []
    children = _indexed_children(root, path)
    for i, (child, cpath) in enumerate(children):
        if child.tag == "variables":
            if i != 0:
                raise _schema_error("<variables> must come first", cpath)
            for var, vpath in _indexed_children(child, cpath):
                _expect_tag(var, ("variable",), cpath)
                variables.append(_attrs(var, vpath, required=("name",))["name"])
        elif child.tag == "contract":
            contracts.append(_read_contract(child, cpath))
        else:
            _expect_tag(child, ("variables", "contract"), path)
    if not contracts:
        raise _schema_error("a document needs at least one <contract>", path)
    try:
        return Document(tuple(contracts), tuple(variables))
    except ModelError as exc:
        raise ComlError("model-invariant", str(exc), path) from None


_BODY_TAGS = ("obligation", "permission", "prohibition", "refinement", "rep",
              "crossref")


def _read_contract(el: ET.Element, path: str) -> Contract:
    attrs = _attrs(el, path, required=("name",))
    name = _label(attrs["name"], path)
    agent = None
    guards: list = []
    timing: list = []
    body: Optional[Body] = None
    reparation: Optional[Reparation] = None
    stage = 0  # 0: agent, 1: guards, 2: timing, 3: body, 4: reparation
    for child, cpath in _indexed_children(el, path):
        tag = child.tag
        if tag == "agent":
            if stage > 0 or agent is not None:
                raise _schema_error("<agent> must come first", cpath)
            agent = _read_single_np(child, cpath)
            stage = 1
        elif tag == "guard":
            if stage > 1:
                raise _schema_error("<guard> must precede <timing> and the "
                                    "body", cpath)
            guards.append(_read_guard(child, cpath))
            stage = 1
        elif tag == "timing":
            if stage > 2:
                raise _schema_error("<timing> must precede the body", cpath)
            timing.append(_read_timing(child, cpath))
            stage = 2
        elif tag in _BODY_TAGS:
            if body is not None:
                raise _schema_error("a contract has exactly one body", cpath)
            body = _read_body(child, cpath)
            stage = 3
        elif tag == "reparation":
            if body is None or reparation is not None:
                raise _schema_error("<reparation> must follow the body",
                                    cpath)
            reparation = _read_reparation(child, cpath)
            stage = 4
        else:
            raise _schema_error(f"unexpected element <{tag}> in <contract>",
                                cpath)
    if body is None:
        raise _schema_error("a contract needs a body", path)
    try:
        return Contract(name, body, agent=agent, guards=tuple(guards),
                        timing=tuple(timing), reparation=reparation)
    except ModelError as exc:
        raise ComlError("model-invariant", str(exc), path) from None


def _read_single_child(el: ET.Element, path: str) -> tuple[ET.Element, str]:
    children = _indexed_children(el, path)
    if len(children) != 1:
        raise _schema_error("expected exactly one child element", path)
    return children[0]


def _read_cmp_attrs(el: ET.Element, path: str, key: str):
    attrs = _attrs(el, path, required=(key, "op", "value"),
                   optional=("negated",))
    try:
        op = CmpOp(attrs["op"])
    except ValueError:
        raise _schema_error(f"invalid op {attrs['op']!r}", path) from None
    if not attrs["value"].isdigit():
        raise _schema_error(f"invalid value {attrs['value']!r}", path)
    negated = _read_negated(attrs, path)
    return attrs[key], op, int(attrs["value"]), negated


def _read_negated(attrs: dict[str, str], path: str) -> bool:
    raw = attrs.get("negated", "false")
    if raw not in ("true", "false"):
        raise _schema_error(f"invalid negated value {raw!r}", path)
    return raw == "true"


def _read_guard(el: ET.Element, path: str):
    child, cpath = _read_single_child(el, path)
    if child.tag == "cmp":
        var, op, value, negated = _read_cmp_attrs(child, cpath, "var")
        try:
            return Cmp(var, op, value, negated)
        except ModelError as exc:
            raise ComlError("model-invariant", str(exc), cpath) from None
    if child.tag == "done":
        attrs = _attrs(child, cpath, required=("action",),
                       optional=("negated",))
        return DoneTest(_label(attrs["action"], cpath),
                        _read_negated(attrs, cpath))
    raise _schema_error(f"unexpected element <{child.tag}> in <guard>", cpath)


def _read_timing(el: ET.Element, path: str) -> TimeRestriction:
    child, cpath = _read_single_child(el, path)
    if child.tag != "cmp":
        raise _schema_error("a <timing> holds one <cmp clock=...>", cpath)
    clock, op, value, negated = _read_cmp_attrs(child, cpath, "clock")
    try:
        return TimeRestriction(clock, op, value, negated)
    except ModelError as exc:
        raise ComlError("model-invariant", str(exc), cpath) from None


def _read_body(el: ET.Element, path: str) -> Body:
    tag = el.tag
    if tag in _TAG_MODALITIES:
        child, cpath = _read_single_child(el, path)
        return Modal(_TAG_MODALITIES[tag], _read_action_expr(child, cpath))
    if tag == "refinement":
        op = _read_refop(el, path)
        parts = []
        for child, cpath in _indexed_children(el, path):
            _expect_tag(child, ("contract",), path)
            parts.append(_read_contract(child, cpath))
        if len(parts) < 2:
            raise _schema_error("a refinement needs at least two contracts",
                                path)
        return Refinement(op, tuple(parts))
    if tag == "rep":
        child, cpath = _read_single_child(el, path)
        _expect_tag(child, ("contract",), path)
        return Rep(_read_contract(child, cpath))
    # crossref
    attrs = _attrs(el, path, required=("target",))
    return CrossRef(_label(attrs["target"], path))


def _read_refop(el: ET.Element, path: str) -> RefOp:
    attrs = _attrs(el, path, required=("op",))
    try:
        return RefOp(attrs["op"])
    except ValueError:
        raise _schema_error(f"invalid refinement op {attrs['op']!r}",
                            path) from None


def _read_action_expr(el: ET.Element, path: str) -> ActionExpr:
    if el.tag == "action":
        attrs = _attrs(el, path, required=("verb",))
        children = _indexed_children(el, path)
        if not children:
            return Atom(Intransitive(attrs["verb"]))
        if len(children) != 1 or children[0][0].tag != "object":
            raise _schema_error("an <action> has at most one <object>", path)
        obj_el, obj_path = children[0]
        return Atom(Transitive(attrs["verb"],
                               _read_single_np(obj_el, obj_path)))
    if el.tag == "refinement":
        op = _read_refop(el, path)
        parts = []
        for child, cpath in _indexed_children(el, path):
            _expect_tag(child, ("namedAction",), path)
            attrs = _attrs(child, cpath, required=("name",))
            inner, ipath = _read_single_child(child, cpath)
            parts.append(NamedAction(_label(attrs["name"], cpath),
                                     _read_action_expr(inner, ipath)))
        try:
            return Compound(op, tuple(parts))
        except ModelError as exc:
            raise ComlError("model-invariant", str(exc), path) from None
    raise _schema_error(
        f"unexpected element <{el.tag}> (expected <action> or <refinement>)",
        path)


def _read_reparation(el: ET.Element, path: str) -> Reparation:
    child, cpath = _read_single_child(el, path)
    if child.tag == "crossref":
        attrs = _attrs(child, cpath, required=("target",))
        return RefReparation(_label(attrs["target"], cpath))
    if child.tag == "contract":
        return InlineReparation(_read_contract(child, cpath))
    raise _schema_error(
        f"unexpected element <{child.tag}> in <reparation>", cpath)


def _read_single_np(el: ET.Element, path: str) -> NounPhrase:
    child, cpath = _read_single_child(el, path)
    _expect_tag(child, ("np",), path)
    return _read_np(child, cpath)


def _read_np(el: ET.Element, path: str) -> NounPhrase:
    kind = el.get("type")
    if kind == "proper":
        attrs = _attrs(el, path, required=("type", "lemma"))
        if len(el):
            raise _schema_error("a proper <np> has no children", path)
        return Proper(NounRef(attrs["lemma"], Number.SG))
    if kind == "coord":
        _attrs(el, path, required=("type",))
        children = _indexed_children(el, path)
        if len(children) != 2 or any(c.tag != "np" for c, _ in children):
            raise _schema_error("a coord <np> has exactly two <np> children",
                                path)
        try:
            return Coord(_read_np(children[0][0], children[0][1]),
                         _read_np(children[1][0], children[1][1]))
        except ModelError as exc:
            raise ComlError("model-invariant", str(exc), path) from None
    if kind == "common":
        attrs = _attrs(el, path, required=("type", "lemma", "number"),
                       optional=("det",))
        try:
            number = Number(attrs["number"])
        except ValueError:
            raise _schema_error(f"invalid number {attrs['number']!r}",
                                path) from None
        det = None
        if "det" in attrs:
            try:
                det = Det(attrs["det"])
            except ValueError:
                raise _schema_error(f"invalid determiner {attrs['det']!r}",
                                    path) from None
        adjectives: list[str] = []
        pp = None
        for child, cpath in _indexed_children(el, path):
            if child.tag == "adj":
                if pp is not None:
                    raise _schema_error("<adj> must precede <pp>", cpath)
                adjectives.append(
                    _attrs(child, cpath, required=("lemma",))["lemma"])
            elif child.tag == "pp":
                if pp is not None:
                    raise _schema_error("at most one <pp> per <np>", cpath)
                pattrs = _attrs(child, cpath, required=("prep",))
                try:
                    prep = Prep(pattrs["prep"])
                except ValueError:
                    raise _schema_error(
                        f"invalid preposition {pattrs['prep']!r}",
                        cpath) from None
                inner, ipath = _read_single_child(child, cpath)
                _expect_tag(inner, ("np",), cpath)
                pp = (prep, _read_np(inner, ipath))
            else:
                raise _schema_error(f"unexpected element <{child.tag}> in "
                                    "<np>", cpath)
        try:
            return Common(NounRef(attrs["lemma"], number), determiner=det,
                          adjectives=tuple(adjectives), pp=pp)
        except ModelError as exc:
            raise ComlError("model-invariant", str(exc), path) from None
    raise _schema_error(
        f"invalid or missing np type {kind!r} (proper, common or coord)",
        path)
