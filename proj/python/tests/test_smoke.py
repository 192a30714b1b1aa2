import os
import pathlib

import pytest

import lukprover as lp

CORPUS = os.environ.get("LUKP_CORPUS_DIR", str(pathlib.Path(__file__).resolve().parents[2] / "corpus"))


def test_theories():
    assert lp.theories() == ["ALm", "ALi", "ALc", "LLm", "LLi", "LLc", "ML", "IL", "BL"]


def test_parse_and_expand():
    assert lp.normalize_formula("(A)^") == "A^"
    assert lp.expand("A^") == "A -o 1"
    with pytest.raises(ValueError):
        lp.normalize_formula("A /\\ B \\/ C")


def test_prove_and_check():
    proof = lp.prove("A * (A -o B) |- B * (B -o A)", "LLm", 6)
    assert proof is not None
    assert lp.check_proof(proof, "LLm")[0]
    assert not lp.check_proof(proof, "ALm")[0]
    assert lp.prove("A * (A -o B) |- B * (B -o A)", "ALc", 6) is None
    assert lp.to_hilbert(proof, "LLm").strip()


def test_contraction_countermodel():
    cm = lp.find_countermodel("A |- A * A", "LLc", 10, 5.0)
    assert cm is not None
    assert cm["size"] == 3
    assert 0 < cm["assignment"]["A"] < cm["top"]
    assert not lp.valid("A |- A * A", cm)
    assert lp.valid("A |- A * A", lp.lukasiewicz_chain(2))
    assert lp.class_flags(lp.lukasiewicz_chain(4))["involutive"]


def test_model_counts():
    assert [lp.count_models(n, "ALm") for n in (1, 2)] == [1, 1]


def test_translate():
    assert lp.expand(lp.translate("kolmogorov", "A")) == lp.expand("A^^")


def test_scripts_and_corpus():
    text = "lemma t theory ALm claim A * (A -o B) >= B\nstart A * (A -o B)\n>= B by mp at root\n"
    assert lp.check_script(text) == [("t", True, "")]
    bad = "lemma t theory ALm claim A * B -o C >= A -o C\nstart A * B -o C\n>= A -o C by wk at 0\n"
    [(_, ok, msg)] = lp.check_script(bad)
    assert not ok and "polarity" in msg
    results = lp.run_corpus(CORPUS, "wconj")
    assert results and all(r["ok"] for r in results)
    [(_, ok, _)] = lp.check_script(lp.k_contradiction(3), CORPUS)
    assert ok
