import pytest

import portopt


def test_uniform_solve_trivial():
    m = portopt.Matroid.uniform(2, 1)
    out = portopt.solve(m, [1.0, 0.0], 1)
    assert out["sets"] == [[0]]
    assert out["estimate"]["mean"] == 1.0
    assert out["algorithm"] == "uniform"


def test_general_solver_on_sure_triangle():
    m = portopt.Matroid.graphic(3, [(0, 1), (1, 2), (0, 2)])
    out = portopt.solve(m, [1.0, 1.0, 1.0], 2, samples=500, seed=3)
    assert out["estimate"]["mean"] == 2.0
    assert all(len(s) == 2 for s in out["sets"])


def test_solve_is_deterministic():
    m = portopt.Matroid.uniform(16, 4)
    probs = [((7 * i) % 16 + 1) / 16.0 for i in range(16)]
    a = portopt.solve(m, probs, 3, seed=11, samples=400)
    b = portopt.solve(m, probs, 3, seed=11, samples=400)
    assert a == b


def test_disjoint_baseline_reports_algorithm():
    m = portopt.Matroid.uniform(4, 2)
    out = portopt.solve(m, [0.9, 0.8, 0.7, 0.6], 2, algorithm="disjoint")
    assert out["algorithm"] == "disjoint"
    assert out["sets"] == [[0, 1], [2, 3]]


def test_estimate_matches_exact():
    sets = [[0, 1], [1, 2]]
    probs = [0.5, 0.5, 0.5]
    exact = portopt.exact_value(sets, probs)
    assert exact == 1.25
    est = portopt.estimate_value(sets, probs, 20000, seed=0)
    assert abs(est["mean"] - exact) <= est["ci"]


def test_matroid_queries():
    m = portopt.Matroid.graphic(3, [(0, 1), (1, 2), (0, 2)])
    assert m.n == 3 and m.rank == 2
    assert m.is_independent([0, 1])
    assert not m.is_independent([0, 1, 2])
    p = portopt.Matroid.partition([0, 0, 1], [1, 2])
    assert p.rank_of([0, 1, 2]) == 2
    e = portopt.Matroid.explicit_sets(4, [[0, 1], [2, 3]])
    assert e.is_independent([2, 3]) and not e.is_independent([1, 2])


def test_pb_helpers():
    assert portopt.pb_pmf([0.5, 0.5]) == pytest.approx([0.25, 0.5, 0.25])
    assert portopt.expected_max_iid([1.0], 3) == 1.0
    assert portopt.expected_max_iid([0.5], 2) == pytest.approx(0.75)


def test_generators_round_trip_json():
    inst = portopt.gen_uniform_mixing(4)
    assert inst["k"] == 4 and len(inst["probs"]) == 16
    text = portopt.instance_to_json(inst["matroid"], inst["probs"], inst["k"])
    back = portopt.parse_instance_json(text)
    assert back["probs"] == inst["probs"]
    assert back["matroid"].rank == 4


def test_bad_inputs_raise():
    with pytest.raises(ValueError):
        portopt.parse_instance_json("{nope")
    with pytest.raises(ValueError):
        m = portopt.Matroid.uniform(2, 1)
        portopt.solve(m, [0.5, 0.5], 0)
