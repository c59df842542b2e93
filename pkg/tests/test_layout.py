import pytest

from codia.layout import LayoutError, layout_tokens, unpretty_print

BULLETED = """\
1 : all of
  - 1a : Mary may eat a bagel
  - 1b : John is required to pay
"""

BRACED = "1 : all of { - 1a : Mary may eat a bagel - 1b : John is required to pay }"


def test_unpretty_print_two_item_list():
    assert unpretty_print(BULLETED) == BRACED


def test_unpretty_print_nested_lists():
    text = ("a : all of\n"
            "  - b : one of\n"
            "    - c : Mary may wait\n"
            "    - d : John may wait\n"
            "  - e : Mary may pay\n")
    assert unpretty_print(text) == (
        "a : all of { - b : one of { - c : Mary may wait "
        "- d : John may wait } - e : Mary may pay }")


def test_unpretty_print_multiple_top_level():
    text = "a : Mary may pay\nb : John may pay\n"
    assert unpretty_print(text) == "a : Mary may pay\nb : John may pay"


def test_blank_lines_are_skipped():
    text = "a : all of\n\n  - b : Mary may pay\n\n  - c : John may pay\n"
    assert unpretty_print(text) == (
        "a : all of { - b : Mary may pay - c : John may pay }")


class TestLayoutErrors:
    def test_tab_in_indentation(self):
        with pytest.raises(LayoutError) as exc:
            unpretty_print("a : all of\n\t- b : Mary may pay\n")
        assert exc.value.diagnostic.code == "layout"

    def test_odd_indent(self):
        with pytest.raises(LayoutError) as exc:
            unpretty_print("a : all of\n   - b : Mary may pay\n")
        assert exc.value.diagnostic.code == "layout"

    def test_depth_jump(self):
        with pytest.raises(LayoutError) as exc:
            unpretty_print("a : all of\n    - b : Mary may pay\n")
        assert "level" in exc.value.diagnostic.message

    def test_indented_non_bullet(self):
        with pytest.raises(LayoutError) as exc:
            unpretty_print("a : all of\n  b : Mary may pay\n")
        assert exc.value.diagnostic.code == "layout"

    def test_error_span_points_at_line(self):
        with pytest.raises(LayoutError) as exc:
            unpretty_print("a : x\n    - bad\n")
        assert exc.value.diagnostic.span.start_line == 2


class TestTokens:
    def test_positions_survive_normalisation(self):
        tokens = layout_tokens("a : all of\n  - b : Mary may pay\n")
        by_text = {t.text: t for t in tokens}
        assert (by_text["Mary"].line, by_text["Mary"].col) == (2, 9)
        assert by_text["a"].col == 1

    def test_brace_tokens_inserted(self):
        tokens = layout_tokens("a : all of\n  - b : x\n  - c : y\n")
        kinds = [t.text for t in tokens if t.kind == "punct"]
        assert kinds == [":", "{", "-", ":", "-", ":", "}"]

    def test_number_token_kind(self):
        tokens = layout_tokens("if variable paid less than 10\n")
        ten = [t for t in tokens if t.text == "10"]
        assert ten and ten[0].kind == "int"

    def test_digit_initial_word(self):
        tokens = layout_tokens("1a : x\n")
        assert tokens[0].kind == "word" and tokens[0].text == "1a"

    def test_eof_token(self):
        assert layout_tokens("")[-1].kind == "eof"

    def test_unexpected_character(self):
        with pytest.raises(LayoutError) as exc:
            layout_tokens("a : Mary may pay 50%\n")
        assert exc.value.diagnostic.code == "grammar"
