"""End-to-end smoke tests for the python bindings."""

import pytest

import labelcast as lc


def path(n):
    return lc.Graph(n, [(i, i + 1) for i in range(n - 1)], 0)


def test_graph_and_levels():
    g = path(4)
    assert g.node_count == 4
    assert g.neighbors(1) == [0, 2]
    lv = lc.compute_levels(g)
    assert lv.level == [0, 1, 2, 3]
    assert lv.eccentricity == 3
    assert lv.parents[2] == [1]


def test_disconnected_graph_rejected():
    with pytest.raises(lc.Error):
        lc.Graph(4, [(0, 1), (2, 3)], 0)


def test_separation_roundtrip():
    diamond = lc.Graph(4, [(0, 1), (0, 2), (1, 3), (2, 3)], 0)
    lv = lc.compute_levels(diamond)
    sep = lc.find_separation(lv)
    assert sep is not None
    assert sep.parts == [([1], [2])]
    assert lc.check_separation(lv, sep).accepted
    assert lc.write_separation(sep) == "level 1 part1: 1 part2: 2\n"


def test_ls_simulation_level_timing():
    g = path(4)
    lv = lc.compute_levels(g)
    labels = lc.label_ls(lv, lc.find_separation(lv))
    trace = lc.run_simulation(g, labels, lc.Protocol.LS)
    assert trace.all_informed
    assert trace.first_receipt == [-1, 0, 2, 4]
    assert trace.termination_round == 6
    assert lc.verify_trace(trace, g, lv, lc.Protocol.LS).all_passed


def test_lsack_ack_round():
    g = path(7)  # D = 6, even: ACK arrives at 2D
    lv = lc.compute_levels(g)
    labels = lc.label_ls_ack(lv, lc.find_separation(lv))
    trace = lc.run_simulation(g, labels, lc.Protocol.LSACK)
    assert trace.ack_arrival_round == 12


def test_oack_bounds():
    g = path(4)
    labels = lc.label_oack(g)
    text = lc.write_label_file(labels)
    assert text.splitlines()[0] == "scheme OACK3"
    assert sum(1 for line in text.splitlines()[1:] if line.endswith(" 001")) == 1
    trace = lc.run_simulation(g, labels, lc.Protocol.OACK)
    completion = max(trace.first_receipt)
    assert completion <= 2 * 4 - 3
    assert trace.ack_arrival_round is not None
    assert trace.ack_arrival_round <= completion + 4


def test_reduction():
    sat = lc.Formula(3, [[1, 2, 3]])
    report = lc.verify_reduction(sat)
    assert report.satisfiable and report.separable and report.agree

    unsat = lc.Formula(3, [[1, 2, 3], [-1, -2, -3]])
    report = lc.verify_reduction(unsat)
    assert not report.satisfiable and not report.separable and report.agree

    assignment = lc.brute_force_1in3(sat)
    assert assignment == [True, False, False]
    assert lc.satisfies_1in3(sat, assignment)

    gadget = lc.build_gadget(sat)
    assert gadget.graph.node_count == 16
    assert gadget.role_of(3) == "u_y"


def test_wban_derivation():
    text = open("data/posture1_walking.csv").read()
    table = lc.parse_attenuation_csv(text)
    assert table.mean("navel", "chest") == 30.6
    assert table.mean("navel", "ankle") == 57.4
    g = lc.derive_graph(table, 50.0, "navel")
    assert g.has_edge(0, 1)
    assert not g.has_edge(0, 4)
    with pytest.raises(lc.Error):
        lc.derive_graph(table, 25.0, "navel")


def test_label_widths():
    g = path(5)
    lv = lc.compute_levels(g)
    sep = lc.find_separation(lv)
    for labels, width in [
        (lc.label_ls(lv, sep), 1),
        (lc.label_ls_ack(lv, sep), 2),
        (lc.label_oack(g), 3),
    ]:
        body = lc.write_label_file(labels).splitlines()[1:]
        assert len(body) == 5
        assert all(len(line.split()[1]) == width for line in body)
