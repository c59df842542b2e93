from codia import (
    equals_structural, from_coml, linearize, parse_document, to_coml,
)


def parse(text, lexicon):
    doc, diags = parse_document(text, lexicon)
    assert doc is not None, [d.format() for d in diags]
    return doc


def test_golden_document_serializes_byte_identically(lexicon, golden_cnl,
                                                     golden_coml):
    doc = parse(golden_cnl, lexicon)
    assert to_coml(doc) == golden_coml


def test_golden_coml_parses_back(lexicon, golden_cnl, golden_coml):
    doc, diags = from_coml(golden_coml)
    assert doc is not None and not diags
    assert equals_structural(doc, parse(golden_cnl, lexicon))
    assert linearize(doc, lexicon) == golden_cnl


def test_serialization_is_deterministic(lexicon, golden_cnl):
    doc = parse(golden_cnl, lexicon)
    assert to_coml(doc) == to_coml(doc)


def test_round_trip_small_document(lexicon):
    text = ("variables: paid\n"
            "x : if variable paid less than 1 client is required\n"
            "  - a : to press abort , or\n"
            "  - b : to choose coffee with milk otherwise see r\n"
            "r : Mary mustn't eat a bagel otherwise y : John may wait\n")
    doc = parse(text, lexicon)
    doc2, diags = from_coml(to_coml(doc))
    assert not diags
    assert equals_structural(doc, doc2)


def test_declaration_and_escaping(lexicon):
    doc = parse("x : Mary may pay\n", lexicon)
    xml = to_coml(doc)
    assert xml.startswith('<?xml version="1.0" encoding="UTF-8"?>\n')
    assert xml.endswith("\n")
    assert '<document version="1">' in xml


class TestErrors:
    def assert_sole(self, xml, code, fragment=None):
        doc, diags = from_coml(xml)
        assert doc is None
        assert len(diags) == 1
        assert diags[0].code == code, diags[0]
        if fragment:
            assert fragment in diags[0].message
        return diags[0]

    def test_not_well_formed(self):
        self.assert_sole("<document", "xml-syntax")

    def test_wrong_root(self):
        self.assert_sole("<contract/>", "xml-schema")

    def test_unsupported_version(self):
        self.assert_sole('<document version="9"/>', "xml-schema", "version")

    def test_missing_body(self):
        xml = '<document version="1"><contract name="x"/></document>'
        self.assert_sole(xml, "xml-schema", "body")

    def test_unknown_element_with_path(self):
        xml = ('<document version="1"><contract name="x">'
               "<wat/></contract></document>")
        d = self.assert_sole(xml, "xml-schema")
        assert "document/contract[1]/wat[1]" in d.message

    def test_bad_attribute(self):
        xml = ('<document version="1"><contract name="x" extra="1">'
               '<crossref target="y"/></contract></document>')
        self.assert_sole(xml, "xml-schema", "extra")

    def test_bad_cmp_op(self):
        xml = ('<document version="1"><contract name="x">'
               '<guard><cmp var="v" op="above" value="1"/></guard>'
               '<crossref target="y"/></contract></document>')
        self.assert_sole(xml, "xml-schema", "above")

    def test_duplicate_labels(self):
        xml = ('<document version="1">'
               '<contract name="x"><crossref target="y"/></contract>'
               '<contract name="x"><crossref target="y"/></contract>'
               "</document>")
        self.assert_sole(xml, "model-invariant")

    def test_permission_with_reparation(self):
        xml = ('<document version="1"><contract name="x">'
               '<agent><np type="proper" lemma="Mary"/></agent>'
               '<permission><action verb="pay"/></permission>'
               '<reparation><crossref target="y"/></reparation>'
               "</contract></document>")
        self.assert_sole(xml, "model-invariant")

    def test_invalid_label_text(self):
        xml = ('<document version="1"><contract name="not a label">'
               '<crossref target="y"/></contract></document>')
        self.assert_sole(xml, "model-invariant")

    def test_refinement_needs_two_parts(self):
        xml = ('<document version="1"><contract name="x">'
               '<refinement op="and">'
               '<contract name="y"><crossref target="z"/></contract>'
               "</refinement></contract></document>")
        self.assert_sole(xml, "xml-schema")
