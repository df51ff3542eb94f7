import json
import math
import os
from pathlib import Path

import pytest

import phkg

ROOT = Path(os.environ.get("PHKG_SOURCE_DIR", Path(__file__).resolve().parents[2]))
LOG = (ROOT / "fixtures" / "5weeks.jsonl").read_text()
PROFILE = (ROOT / "fixtures" / "diabetic.json").read_text()
CATALOG = (ROOT / "data" / "recipes.json").read_text()


def test_cv_known_values():
    assert phkg.cv([10.0, 10.0, 10.0]) == 0.0
    assert math.isclose(phkg.cv([1.0, 3.0]), 1.0 / 2.0, rel_tol=1e-12)
    with pytest.raises(phkg.PhkgError):
        phkg.cv([0.0, 0.0])


def test_generate_log_is_deterministic():
    a = phkg.generate_log(days=14, seed=3)
    assert a == phkg.generate_log(days=14, seed=3)
    assert a != phkg.generate_log(days=14, seed=4)
    dates = {json.loads(line)["date"] for line in a.splitlines()}
    assert len(dates) == 14


def test_mine_five_weeks():
    patterns = phkg.mine(LOG)
    daily = [c for c in patterns["consistency"] if c["window"]["granularity"] == "daily"]
    assert len({c["window"]["start"] for c in daily}) == 5


def test_kg_reason_and_query():
    kg = phkg.build_kg(LOG, PROFILE)
    reasoned, report = phkg.reason(kg)
    assert {"verdicts", "constraints"} <= set(report)
    assert len(reasoned) >= len(kg)
    header, rows = phkg.query(kg, "SELECT ?p WHERE { ?p a pho:ConsistentPattern }")
    assert header == ["p"]
    assert rows
    ans = phkg.answer(kg, "consistency.carbohydrates")
    assert ans["question"] == "consistency.carbohydrates"
    assert isinstance(ans["verdict"], bool)
    assert "consistency.carbohydrates" in phkg.question_ids()


def test_recommend_and_augment():
    kg = phkg.build_kg(LOG, PROFILE)
    _, report = phkg.reason(kg)
    recs = phkg.recommend(CATALOG, report, meal="breakfast")
    assert [r["rank"] for r in recs] == list(range(1, len(recs) + 1))
    question = phkg.augment_question("What should I eat for breakfast?", report["constraints"])
    assert question.startswith("What should I eat for breakfast")


def test_pipeline_files_match_stages():
    files = phkg.run_pipeline(LOG, PROFILE, CATALOG)
    assert list(files) == [
        "log.jsonl",
        "patterns.json",
        "phkg.ttl",
        "phkg-reasoned.ttl",
        "report.json",
        "recommendations.json",
    ]
    assert files["phkg.ttl"] == phkg.build_kg(LOG, PROFILE)
    assert json.loads(files["patterns.json"]) == phkg.mine(LOG)


def test_errors_map_to_python_exceptions():
    with pytest.raises(phkg.ParseError):
        phkg.query("", "SELECT ?x WHERE { }")
    with pytest.raises(phkg.ValidationError):
        phkg.mine(LOG, window=0)
    with pytest.raises(phkg.IoError):
        phkg.reason("", rules="/nonexistent/rules.rule")
    with pytest.raises(phkg.ValidationError):
        phkg.answer(phkg.build_kg(LOG, PROFILE), "weather")
