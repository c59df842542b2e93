import pytest
from fastapi.testclient import TestClient

from codia.service import create_app


@pytest.fixture(scope="module")
def client(lexicon):
    return TestClient(create_app(lexicon))


class TestParse:
    def test_golden(self, client, golden_cnl, golden_coml):
        r = client.post("/api/parse", json={"text": golden_cnl})
        assert r.status_code == 200
        body = r.json()
        assert body["ok"] is True
        assert body["coml"] == golden_coml

    def test_error_omits_coml(self, client):
        body = client.post("/api/parse", json={"text": "x :"}).json()
        assert body["ok"] is False
        assert "coml" not in body
        assert body["diagnostics"][0]["code"] == "grammar"

    def test_empty_text(self, client):
        assert client.post("/api/parse", json={"text": ""}).json()["ok"] is False

    def test_diagnostic_shape(self, client):
        body = client.post("/api/parse",
                           json={"text": "a : Mary may pay\na : see a\n"}).json()
        d = body["diagnostics"][0]
        assert set(d) == {"severity", "code", "message", "span"}
        assert d["span"] == {"startLine": 2, "startColumn": 1,
                             "endLine": 2, "endColumn": 1}


class TestLinearize:
    def test_golden(self, client, golden_cnl, golden_coml):
        body = client.post("/api/linearize", json={"coml": golden_coml}).json()
        assert body["ok"] is True
        assert body["text"] == golden_cnl

    def test_invalid_xml(self, client):
        body = client.post("/api/linearize", json={"coml": "<nope"}).json()
        assert body["ok"] is False
        assert body["diagnostics"][0]["code"] == "xml-syntax"

    def test_fixpoint_through_service(self, client, golden_cnl):
        coml = client.post("/api/parse", json={"text": golden_cnl}).json()["coml"]
        text = client.post("/api/linearize", json={"coml": coml}).json()["text"]
        assert text == golden_cnl


class TestValidate:
    def test_golden_clock_count(self, client, golden_cnl, lexicon):
        from codia import iter_labels, parse_document
        body = client.post("/api/validate", json={"text": golden_cnl}).json()
        assert body["ok"] is True
        doc, _ = parse_document(golden_cnl, lexicon)
        assert body["clocks"] == [f"t_{l}" for l in iter_labels(doc)]

    def test_coml_input(self, client, golden_coml):
        body = client.post("/api/validate", json={"coml": golden_coml}).json()
        assert body["ok"] is True
        assert "t_payRight" in body["clocks"]

    def test_dangling_reference(self, client):
        body = client.post("/api/validate", json={"text": "a : see b\n"}).json()
        assert body["ok"] is False
        assert body["diagnostics"][0]["code"] == "unresolved-reference"

    def test_single_contract(self, client):
        body = client.post("/api/validate",
                           json={"text": "x : Mary may pay\n"}).json()
        assert body["clocks"] == ["t_x"]

    def test_neither_field(self, client):
        assert client.post("/api/validate", json={}).status_code == 400


class TestTransport:
    def test_malformed_json(self, client):
        r = client.post("/api/parse", content=b"{oops",
                        headers={"content-type": "application/json"})
        assert r.status_code == 400

    def test_non_object_body(self, client):
        r = client.post("/api/parse", json=["text"])
        assert r.status_code == 400

    def test_oversized_body(self, client):
        r = client.post("/api/parse", json={"text": "y" * (1 << 20)})
        assert r.status_code == 413

    def test_matches_cli_json_serialization(self, client, lexicon):
        from codia import parse_document, validate_document
        text = "a : see b\n"
        doc, diags = parse_document(text, lexicon)
        expected = [d.to_json() for d in diags + validate_document(doc)]
        body = client.post("/api/validate", json={"text": text}).json()
        assert body["diagnostics"] == expected
