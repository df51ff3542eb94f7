"""Food logs to personal health knowledge graphs, guideline reasoning and recipe ranking.

Graphs travel as Turtle text. Patterns, reports, answers and recommendations
come back as parsed JSON.
"""

import json

from . import _core
from ._core import (
    DataInconsistency,
    InsufficientData,
    IoError,
    ParseError,
    PhkgError,
    PreconditionError,
    ResolutionError,
    UndefinedStatistic,
    UnsupportedFeature,
    ValidationError,
    cv,
    generate_log,
    question_ids,
)

__all__ = [
    "DataInconsistency",
    "InsufficientData",
    "IoError",
    "ParseError",
    "PhkgError",
    "PreconditionError",
    "ResolutionError",
    "UndefinedStatistic",
    "UnsupportedFeature",
    "ValidationError",
    "answer",
    "augment_question",
    "build_kg",
    "cv",
    "generate_log",
    "mine",
    "query",
    "question_ids",
    "reason",
    "recommend",
    "run_pipeline",
]


def _settings(window=None, thresholds=None, rules=None, question=None, progress_band=None):
    out = {}
    if window is not None:
        out["window"] = str(window)
    if rules is not None:
        out["rules"] = str(rules)
    if question is not None:
        out["question"] = question
    if progress_band is not None:
        out["progress-band"] = repr(float(progress_band))
    for name, value in (thresholds or {}).items():
        out["thresholds." + name] = repr(float(value))
    return out


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def mine(log, user="user", window=7, thresholds=None):
    """Mined patterns of a JSON-lines or CSV food log."""
    return json.loads(_core.mine(log, user, _settings(window, thresholds)))


def build_kg(log, profile, window=7, thresholds=None):
    """Turtle for the knowledge graph of a log and a profile (JSON text or dict)."""
    return _core.build_kg(log, _text(profile), _settings(window, thresholds))


def reason(kg, rules=None, question=None):
    """Returns (augmented Turtle, report dict)."""
    turtle, report = _core.reason(kg, _settings(rules=rules, question=question))
    return turtle, json.loads(report)


def query(kg, sparql):
    """Rows of a SELECT query as lists of N-Triples-style strings."""
    lines = _core.query(kg, sparql).splitlines()
    header = [name[1:] for name in lines[0].split("\t")] if lines and lines[0] else []
    return header, [line.split("\t") for line in lines[1:]]


def answer(kg, question, catalog=None, item="", meal=None, rules=None, progress_band=None):
    """Answer to one competency question as a dict."""
    settings = _settings(rules=rules, progress_band=progress_band)
    return json.loads(_core.answer(kg, question, _text(catalog) if catalog else "", item, meal, settings))


def augment_question(question, constraints):
    """Question text with the active constraints appended in brackets."""
    return _core.augment_question(question, _text(constraints))


def recommend(catalog, constraints=None, meal=None):
    """Ranked recipes for a constraint set or a reason report."""
    return json.loads(_core.recommend(_text(catalog), _text(constraints) if constraints else "", meal))


def run_pipeline(log, profile, catalog=None, window=7, thresholds=None, rules=None, question=None, meal="breakfast"):
    """Every output file of the pipeline as an ordered name -> text dict."""
    settings = _settings(window, thresholds, rules, question)
    settings["meal"] = meal or "any"
    files = _core.run_pipeline(log, _text(profile), _text(catalog) if catalog else "", settings)
    return dict(files)
