import pytest

from codia import LexiconError, load_lexicon
from codia.ast import Common, Coord, NounRef, Number, Proper
from codia.lexicon import copula_for, np_number


def test_load_shipped_lexicon(lexicon):
    assert lexicon.noun("client").plural == "clients"
    assert lexicon.verb("pay").transitive
    assert not lexicon.verb("wait").transitive
    assert lexicon.adjective("wrong").form == "wrong"


def test_noun_forms_index(lexicon):
    entry, number = lexicon.resolve_noun_form("coins")
    assert entry.lemma == "coin" and number is Number.PL
    entry, number = lexicon.resolve_noun_form("coin")
    assert number is Number.SG
    assert lexicon.resolve_noun_form("nonsense") is None


def test_mass_noun_has_no_plural(lexicon):
    entry = lexicon.noun("money")
    assert entry.mass
    with pytest.raises(LexiconError):
        entry.form(Number.PL)


def test_proper_noun(lexicon):
    assert lexicon.noun("Mary").proper


def test_multiword_verb_base():
    lex = load_lexicon("verb giveup give up intrans\n")
    assert lex.verb("giveup").base == "give up"
    assert lex.verb_bases["give"][0][0] == ("give", "up")


def test_unknown_lookups_raise(lexicon):
    with pytest.raises(LexiconError, match="nope"):
        lexicon.noun("nope")
    with pytest.raises(LexiconError, match="nope"):
        lexicon.verb("nope")
    with pytest.raises(LexiconError, match="nope"):
        lexicon.adjective("nope")


class TestLoadErrors:
    def test_line_number_in_message(self):
        with pytest.raises(LexiconError, match="line 2"):
            load_lexicon("noun a_noun thing things sg\nbogus entry here\n")

    def test_duplicate_lemma(self):
        with pytest.raises(LexiconError, match="duplicate"):
            load_lexicon("verb pay pay trans\nverb pay pay intrans\n")

    def test_keyword_form_rejected(self):
        # 'done' has a fixed grammatical role and cannot be a noun.
        with pytest.raises(LexiconError, match="keyword"):
            load_lexicon("noun done done - mass\n")

    def test_determiner_form_rejected(self):
        with pytest.raises(LexiconError, match="keyword"):
            load_lexicon("noun a a - mass\n")

    def test_ambiguous_noun_form(self):
        src = "noun sheepA sheep - mass\nnoun sheepB sheep sheeps sg\n"
        with pytest.raises(LexiconError, match="ambiguous"):
            load_lexicon(src)

    def test_adjective_noun_overlap(self):
        src = "noun light light lights sg\nadj lightA light\n"
        with pytest.raises(LexiconError, match="both an adjective and a noun"):
            load_lexicon(src)

    def test_malformed_noun(self):
        with pytest.raises(LexiconError, match="malformed"):
            load_lexicon("noun onlylemma\n")

    def test_comments_and_blanks_ignored(self):
        lex = load_lexicon("# heading\n\nverb pay pay trans  # trailing\n")
        assert lex.verb("pay").base == "pay"


class TestAgreement:
    def test_np_number(self, lexicon):
        mary = Proper(NounRef("Mary", Number.SG))
        clients = Common(NounRef("client", Number.PL))
        assert np_number(mary, lexicon) is Number.SG
        assert np_number(clients, lexicon) is Number.PL
        assert np_number(Coord(mary, mary), lexicon) is Number.PL

    def test_mass_nouns_are_singular(self, lexicon):
        money = Common(NounRef("money", Number.SG))
        assert np_number(money, lexicon) is Number.SG

    def test_copula(self):
        assert copula_for(Number.SG) == "is"
        assert copula_for(Number.PL) == "are"
