"""Document-level checks beyond what the constructors enforce.

The model constructors guarantee local shape (label syntax, unique labels,
no reparation on permissions).  This module adds the cross-cutting checks:
every reference must resolve, by-reference reparations must not form a
cycle, and variables used in guards should be declared when the document
carries a variable preamble.
"""
from __future__ import annotations

from .ast import (
    Contract, CrossRef, Cmp, Document, DoneTest, InlineReparation,
    RefReparation, Refinement, Rep, clock_box, iter_contracts, iter_labels,
)
from .diagnostics import Diagnostic, error, warning


def generate_clocks(doc: Document) -> list[str]:
    """One implicit clock per label, named ``t_<label>``, in document order."""
    return [f"t_{label}" for label in iter_labels(doc)]


def validate_document(doc: Document) -> list[Diagnostic]:
    """All resolution and consistency diagnostics for ``doc``, sorted by
    source position."""
    labels = {label.text for label in iter_labels(doc)}
    clocks = {f"t_{label}" for label in labels}
    diagnostics: list[Diagnostic] = []

    for contract in iter_contracts(doc):
        if isinstance(contract.body, CrossRef):
            if contract.body.target.text not in labels:
                diagnostics.append(error(
                    "unresolved-reference",
                    f"reference to unknown label "
                    f"{contract.body.target.text!r}",
                    contract.body.span))
        for g in contract.guards:
            if isinstance(g, DoneTest) and g.action.text not in labels:
                diagnostics.append(error(
                    "unresolved-reference",
                    f"done-test on unknown label {g.action.text!r}",
                    g.span))
        for t in contract.timing:
            if t.clock not in clocks:
                diagnostics.append(error(
                    "unresolved-reference",
                    f"unknown clock {t.clock!r} (no box is labelled "
                    f"{clock_box(t.clock)!r})",
                    t.span))
        if (isinstance(contract.reparation, RefReparation)
                and contract.reparation.target.text not in labels):
            diagnostics.append(error(
                "unresolved-reference",
                f"reparation points at unknown label "
                f"{contract.reparation.target.text!r}",
                contract.reparation.span))

    diagnostics.extend(_reparation_cycles(doc))
    diagnostics.extend(_variable_checks(doc))
    # Stable position order; documents loaded from COML carry no source
    # spans, so their findings keep the traversal order.
    diagnostics.sort(key=lambda d: (d.span.start_line, d.span.start_col))
    return diagnostics


def _reparation_cycles(doc: Document) -> list[Diagnostic]:
    """A by-reference reparation hands the breach over to the contract owning
    the target label; activating that contract activates everything nested
    inside it, whose own reparations may hand the breach onwards.  If that
    chain ever returns to a contract already on it, no run can discharge the
    breach, so we flag it.

    The graph has one node per labelled contract, a containment edge from
    each contract to its nested parts, and a reparation edge for every
    ``otherwise see`` clause.  Containment alone is a tree, so any cycle
    found involves at least one reparation edge."""
    contracts: dict[str, Contract] = {}
    children: dict[str, list[str]] = {}
    for c in iter_contracts(doc):
        contracts[c.name.text] = c
        kids: list[Contract] = []
        if isinstance(c.body, Refinement):
            kids.extend(c.body.parts)
        elif isinstance(c.body, Rep):
            kids.append(c.body.inner)
        if isinstance(c.reparation, InlineReparation):
            kids.append(c.reparation.contract)
        children[c.name.text] = [k.name.text for k in kids]

    diagnostics: list[Diagnostic] = []
    reported: set[frozenset[str]] = set()
    done: set[str] = set()

    def successors(node: str):
        for kid in children[node]:
            yield kid, None
        rep = contracts[node].reparation
        if isinstance(rep, RefReparation) and rep.target.text in contracts:
            yield rep.target.text, rep

    def visit(node: str, trail: list[str]) -> None:
        if node in done:
            return
        if node in trail:
            cycle = trail[trail.index(node):] + [node]
            key = frozenset(cycle)
            if key not in reported:
                reported.add(key)
                # Point at a reparation clause on the loop.
                closer = next(contracts[n].reparation for n in cycle[:-1]
                              if isinstance(contracts[n].reparation,
                                            RefReparation))
                diagnostics.append(error(
                    "reparation-cycle",
                    "reparation chain loops: " + " -> ".join(cycle),
                    closer.span))
            return
        for dst, _ in successors(node):
            visit(dst, trail + [node])
        done.add(node)

    for top in doc.contracts:
        visit(top.name.text, [])
    return diagnostics


def _variable_checks(doc: Document) -> list[Diagnostic]:
    declared = set(doc.variables)
    seen: set[str] = set()
    diagnostics: list[Diagnostic] = []
    for contract in iter_contracts(doc):
        for g in contract.guards:
            if not isinstance(g, Cmp) or g.variable in seen:
                continue
            seen.add(g.variable)
            if doc.variables and g.variable not in declared:
                diagnostics.append(error(
                    "undeclared-variable",
                    f"variable {g.variable!r} is not in the variables "
                    "preamble", g.span))
            elif not doc.variables:
                diagnostics.append(warning(
                    "undeclared-variable",
                    f"variable {g.variable!r} is used but the document "
                    "declares no variables", g.span))
    return diagnostics
