import pytest

import qpdlog


@pytest.fixture(scope="module")
def kummer():
    return qpdlog.Setup.kummer(3, k=4)


@pytest.fixture(scope="module")
def small():
    return qpdlog.Setup.search(2, k=3, l=3, seed=1)


def test_setup_round_trip(kummer):
    assert (kummer.q, kummer.k, kummer.l) == (3, 4, 2)
    assert kummer.N == "6560"
    assert kummer.factor_base_size == 6560
    assert kummer.validate() == []
    back = qpdlog.Setup.from_json(kummer.to_json())
    assert back.to_json() == kummer.to_json()


def test_descent_verifies(kummer):
    z = kummer.random_target(5)
    out = qpdlog.descend(kummer, z, seed=3, proof=True)
    assert qpdlog.verify_relation(kummer, z, out["relation"])
    assert out["proof"]["steps"]
    j = next(iter(out["relation"]))
    bumped = dict(out["relation"])
    bumped[6559] = (bumped.get(6559, 0) + 1) % 6560
    assert not qpdlog.verify_relation(kummer, z, bumped)
    assert j >= 0


def test_solve_small(small):
    g = small.random_target(1)
    h = small.power(g, "200")
    rep = qpdlog.solve(small, g, h, seed=4)
    assert rep["verified"]
    assert small.power(g, str(rep["x"])) == h


def test_bluher_f81():
    img = qpdlog.bluher_image(3, k=4)
    assert len(img["image"]) == 3
    assert all(c == 24 for c in img["counts"])


def test_echelon_and_final():
    out = qpdlog.echelon([[4], [6]], 10, carried=[[1, 2]])
    assert out["rows"] == [[0], [2]]
    assert out["zero_rows"] == 1
    assert qpdlog.solve_final(3, 7, 10) == 1
    assert qpdlog.solve_final(3, 4, 10) is None


def test_errors(kummer):
    with pytest.raises(ValueError):
        qpdlog.descend(kummer, "[]")
    with pytest.raises(ValueError):
        qpdlog.Setup.kummer(4, k=2)
