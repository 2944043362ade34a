import csv
import io
import pathlib

import pytest

import emoplan

DATA = pathlib.Path(__file__).resolve().parents[2] / "data"


@pytest.fixture(scope="module")
def benchmark():
    return emoplan.load(
        (DATA / "squirrel_domain.pddl").read_text(),
        (DATA / "squirrel_problem.pddl").read_text(),
    )


def test_ground_counts(benchmark):
    counts = benchmark.ground_counts()
    assert counts["move"] == 25
    assert counts["kid_give"] == 225
    assert counts["accommodate-distress"] == 3
    assert benchmark.children == ["c1", "c2", "c3"]


def test_plan_validate_simulate(benchmark):
    result = emoplan.plan(benchmark, timeout=60)
    assert result["status"] == "solved"
    assert result["makespan"] <= 775.0

    report = emoplan.validate(benchmark, result["plan"])
    assert report["valid"]
    assert report["violations"] == []

    rows = list(csv.DictReader(io.StringIO(emoplan.simulate(benchmark, result["plan"], 1.0))))
    first = rows[0]
    assert (first["time"], first["child"]) == ("0.000", "c1")
    assert (first["pleasure"], first["arousal"], first["dominance"]) == ("0.400", "0.400", "0.450")
    for row in rows:
        for key in ("pleasure", "arousal", "dominance"):
            assert -1.0 <= float(row[key]) <= 1.0


def test_empty_plan_misses_goal(benchmark):
    report = emoplan.validate(benchmark, "")
    assert not report["valid"]
    assert report["violations"][0]["kind"] == "GoalUnsatisfied"


def test_emotion_helpers():
    assert emoplan.classify(0.4, 0.4, 0.45) == "Boredom"
    assert emoplan.classify(1.0, 1.0, 1.0) == "Happiness"
    assert emoplan.classify(0.5, 0.5, 0.5) == "Unclassified"
    dp, da, dd = emoplan.expected_delta("accommodate", "distress", 30)
    assert dp == pytest.approx(0.3, abs=1e-9)
    assert da == pytest.approx(-0.6, abs=1e-9)
    assert dd == 0.0


def test_generate_roundtrip():
    domain, problem = emoplan.generate(children=1, toys=1)
    task = emoplan.load(domain, problem)
    assert task.print_domain() == domain
    assert task.print_problem() == problem
    assert emoplan.plan(task)["status"] == "solved"


def test_parse_error_is_value_error():
    with pytest.raises(ValueError):
        emoplan.load("(define (domain d0)", "")
