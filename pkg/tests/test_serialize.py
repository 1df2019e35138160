import json

from digitcover.cover import PANDIGITAL_POOL, PrimeCover, find_coherent_covers
from digitcover.crt import CongruenceSystem
from digitcover.search import eliminate_below
from digitcover.serialize import (
    cover_from_json,
    cover_to_json,
    dumps,
    report_from_text,
    report_to_text,
    solution_to_json,
    system_from_json,
    system_to_json,
)


def test_cover_round_trip():
    cover = PrimeCover.parse("11,37,11,3,11,13")
    obj = cover_to_json(cover, 7, 10, 891)
    assert [c["modulus"] for c in obj["conditions"]] == [3, 11, 13, 37]
    assert all(891 % c["modulus"] == c["residue"] for c in obj["conditions"])
    text = dumps(obj)
    assert cover_from_json(text) == (cover, 7, 10, 891)
    assert dumps(json.loads(text)) == text


def test_big_seed_survives():
    cover = PrimeCover.parse("11,73,11,101,11,137,11,101")
    seed = 4942768284976776320
    assert cover_from_json(dumps(cover_to_json(cover, 9, seed=seed)))[3] == seed


def test_system_round_trip():
    system = CongruenceSystem.of([(2, 3), (0, 11), (1, 13)])
    assert system_from_json(dumps(system_to_json(system))).sorted() == system.sorted()


def test_solution_json():
    sol = find_coherent_covers([1, 3], [3, 7, 11, 13, 37], 6)
    obj = json.loads(dumps(solution_to_json(sol)))
    assert [c["digit"] for c in obj["covers"]] == [1, 3]
    assert system_from_json(obj).sorted() == sol.system.sorted()


def test_report_round_trip():
    report = eliminate_below(40, 1, n_max=60)
    text = report_to_text(report)
    again = report_from_text(text)
    assert report_to_text(again) == text
    assert again.survivors == report.survivors
    assert text.splitlines()[-1].startswith("# summary")
    assert "37 covered 6 37,7,3,37,13,3" in text.splitlines()
