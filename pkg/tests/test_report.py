import json
import random

import pytest

from compairs.report import Check, Report, check, emit, info, parse


def random_report(rng: random.Random) -> Report:
    def value():
        kind = rng.randrange(5)
        if kind == 0:
            return rng.randint(-10**30, 10**30)
        if kind == 1:
            return None
        if kind == 2:
            return f"<= {rng.randint(0, 99)}"
        if kind == 3:
            return [rng.randint(0, 9) for _ in range(rng.randint(0, 4))]
        return {"a": rng.random() < 0.5, "b": rng.randint(0, 5)}

    checks = [Check(f"claim.{rng.randint(0, 50)}", {"n": rng.randint(1, 9), "k": rng.randint(1, 4)},
                    value(), value(), rng.choice(["pass", "fail", "info"]))
              for _ in range(rng.randint(0, 8))]
    return Report(config={"seed": rng.randint(0, 2**63), "workers": rng.randint(1, 8)}, checks=checks)


def test_empty_report_json():
    d = json.loads(emit(Report(), "json"))
    assert d["checks"] == [] and "version" in d and "timestamp" not in d


def test_one_check_csv():
    out = emit(Report(checks=[check("x", {"n": 1}, 1, 1, True)]), "csv").splitlines()
    assert len(out) == 2 and out[0].startswith("claim_id")


def test_roundtrip_100_reports():
    rng = random.Random(2024)
    for _ in range(100):
        r = random_report(rng)
        assert parse(emit(r, "json"), "json") == r
        assert parse(emit(r, "csv"), "csv").checks == r.checks


def test_deterministic_emit_is_stable():
    r = random_report(random.Random(1))
    a = emit(r.stamp(True))
    b = emit(r.stamp(True))
    assert a == b
    assert "timestamp" in emit(r.stamp(False))


def test_status_validation_and_ok():
    with pytest.raises(ValueError):
        Check("x", {}, 1, 1, "maybe")
    r = Report(checks=[info("a", {}, None, 3), check("b", {}, 1, 1, True)])
    assert r.ok and r.counts() == {"pass": 1, "fail": 0, "info": 1}
    r.checks.append(check("c", {}, 1, 2, False))
    assert not r.ok and [c.claim_id for c in r.failed] == ["c"]
