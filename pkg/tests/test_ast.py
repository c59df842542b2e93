import pytest

from codia import (
    Atom, Common, Contract, Coord, CrossRef, Document, InlineReparation,
    Intransitive, Label, Modal, Modality, ModelError, NamedAction, NounRef,
    Number, Proper, RefOp, RefReparation, Refinement, Rep, Span, Transitive,
    equals_structural, iter_contracts, iter_labels,
)
from codia.ast import Compound, clock_box, clock_name

MARY = Proper(NounRef("Mary", Number.SG))
PAY = Atom(Intransitive("pay"))


def obligation(name, reparation=None):
    return Contract(Label(name), Modal(Modality.OBLIGATION, PAY),
                    agent=MARY, reparation=reparation)


class TestLabel:
    def test_simple(self):
        assert Label("payRight").text == "payRight"

    def test_digit_initial(self):
        # Sublabels such as 1a are ordinary labels.
        for text in ("1", "1a", "2b_3"):
            assert Label(text).text == text

    def test_single_letter(self):
        assert Label("a").text == "a"

    @pytest.mark.parametrize("bad", ["", "pay right", "x-y", "x.y", "_x"])
    def test_rejects_bad_charset(self, bad):
        with pytest.raises(ModelError):
            Label(bad)

    @pytest.mark.parametrize("word", ["otherwise", "see", "done", "is",
                                      "variables", "required"])
    def test_rejects_keywords(self, word):
        with pytest.raises(ModelError):
            Label(word)


class TestClocks:
    def test_clock_name(self):
        assert clock_name(Label("payRight")) == "t_payRight"
        assert clock_name(Label("a")) == "t_a"

    def test_clock_box_inverse(self):
        assert clock_box("t_payRight") == "payRight"
        assert clock_box(clock_name(Label("x1"))) == "x1"

    def test_clock_box_rejects_other_shapes(self):
        assert clock_box("payRight") is None
        assert clock_box("t_") is None
        assert clock_box("t_pay right") is None


class TestContractInvariants:
    def test_modal_requires_agent(self):
        with pytest.raises(ModelError):
            Contract(Label("x"), Modal(Modality.OBLIGATION, PAY))

    def test_permission_never_repairs(self):
        with pytest.raises(ModelError):
            Contract(Label("x"), Modal(Modality.PERMISSION, PAY),
                     agent=MARY, reparation=RefReparation(Label("y")))

    def test_prohibition_may_repair(self):
        c = Contract(Label("x"), Modal(Modality.PROHIBITION, PAY),
                     agent=MARY, reparation=RefReparation(Label("y")))
        assert c.reparation.target == Label("y")

    def test_refinement_box_has_no_agent(self):
        body = Refinement(RefOp.CONJ, (obligation("a"), obligation("b")))
        with pytest.raises(ModelError):
            Contract(Label("x"), body, agent=MARY)

    def test_refinement_box_has_no_reparation(self):
        body = Refinement(RefOp.CONJ, (obligation("a"), obligation("b")))
        with pytest.raises(ModelError):
            Contract(Label("x"), body, reparation=RefReparation(Label("y")))

    def test_refinement_needs_two_parts(self):
        with pytest.raises(ModelError):
            Refinement(RefOp.CONJ, (obligation("a"),))

    def test_compound_needs_two_parts(self):
        with pytest.raises(ModelError):
            Compound(RefOp.CONJ, (NamedAction(Label("a"), PAY),))


class TestNounPhrases:
    def test_coord_is_left_associated(self):
        john = Proper(NounRef("John", Number.SG))
        with pytest.raises(ModelError):
            Coord(MARY, Coord(john, MARY))
        assert Coord(Coord(MARY, john), MARY).right == MARY

    def test_pp_inner_must_be_simple(self):
        from codia import Prep
        with pytest.raises(ModelError):
            Common(NounRef("coffee", Number.SG),
                   pp=(Prep.WITH, Coord(MARY, MARY)))


class TestDocument:
    def test_rejects_duplicate_labels(self):
        with pytest.raises(ModelError):
            Document((obligation("a"), obligation("a")))

    def test_rejects_duplicate_action_labels(self):
        compound = Compound(RefOp.CONJ, (NamedAction(Label("a"), PAY),
                                         NamedAction(Label("b"), PAY)))
        top = Contract(Label("a"), Modal(Modality.OBLIGATION, compound),
                       agent=MARY)
        with pytest.raises(ModelError):
            Document((top,))

    def test_needs_one_contract(self):
        with pytest.raises(ModelError):
            Document(())

    def test_iter_labels_covers_nested_and_inline(self):
        inner = obligation("deep")
        repaired = obligation("top", reparation=InlineReparation(inner))
        other = Contract(Label("loop"), Rep(obligation("body")))
        doc = Document((repaired, other))
        assert [l.text for l in iter_labels(doc)] == [
            "top", "deep", "loop", "body"]

    def test_iter_contracts_order(self):
        doc = Document((Contract(
            Label("s"),
            Refinement(RefOp.SEQ, (obligation("a"), obligation("b")))),))
        assert [c.name.text for c in iter_contracts(doc)] == ["s", "a", "b"]


class TestEquality:
    def test_spans_are_ignored(self):
        a = Contract(Label("x"), Modal(Modality.OBLIGATION, PAY), agent=MARY,
                     span=Span(1, 1, 1, 5))
        b = Contract(Label("x"), Modal(Modality.OBLIGATION, PAY), agent=MARY,
                     span=Span(9, 9, 9, 12))
        assert equals_structural(Document((a,)), Document((b,)))

    def test_label_spelling_matters(self):
        assert not equals_structural(Document((obligation("x"),)),
                                     Document((obligation("y"),)))

    def test_object_matters(self):
        euro = Atom(Transitive("pay", Common(NounRef("euro", Number.SG))))
        a = Contract(Label("x"), Modal(Modality.OBLIGATION, PAY), agent=MARY)
        b = Contract(Label("x"), Modal(Modality.OBLIGATION, euro), agent=MARY)
        assert not equals_structural(Document((a,)), Document((b,)))
