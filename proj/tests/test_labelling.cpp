#include <doctest.h>

#include <algorithm>

#include "labelcast/labelling.hpp"
#include "labelcast/selfcheck.hpp"
#include "labelcast/simulator.hpp"

using namespace labelcast;

namespace {

Graph path(int n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return build_graph(n, edges, 0);
}

Graph star6() {
  return build_graph(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}}, 0);
}

// A graph where firing every greedy dominator at once collides everywhere
// and strands node 4; the scheduler has to drop one of the first-wave
// senders to get through.
Graph greedy_trap() {
  return build_graph(8,
                     {{0, 1},
                      {0, 2},
                      {0, 3},
                      {1, 4},
                      {2, 4},
                      {1, 5},
                      {3, 5},
                      {2, 6},
                      {3, 6},
                      {3, 7}},
                     0);
}

Separation found(const LevelView& lv) {
  auto sep = find_separation(lv);
  REQUIRE(sep.has_value());
  return *sep;
}

}  // namespace

TEST_CASE("beta schedule on a path informs every two rounds") {
  BroadcastSchedule sched = compute_beta_schedule(path(4));
  CHECK(sched.informed_round == std::vector<int>{-1, 0, 2, 4});
  CHECK(sched.completion_round == 4);
  CHECK(sched.completion_round <= 2 * 4 - 3);
}

TEST_CASE("beta schedule on a star finishes at round zero") {
  BroadcastSchedule sched = compute_beta_schedule(star6());
  for (NodeId u = 1; u < 6; ++u) CHECK(sched.informed_round[u] == 0);
  CHECK(sched.completion_round == 0);
}

TEST_CASE("beta schedule on the two-node edge") {
  BroadcastSchedule sched = compute_beta_schedule(path(2));
  CHECK(sched.informed_round == std::vector<int>{-1, 0});
}

TEST_CASE("beta schedule escapes the greedy trap") {
  Graph g = greedy_trap();
  BroadcastSchedule sched = compute_beta_schedule(g);
  for (NodeId u = 0; u < g.node_count(); ++u)
    CHECK(sched.informed_round[u] >= -1);
  CHECK(sched.completion_round <= 2 * g.node_count() - 3);
  // Every recorded dominating set covers its frontier.
  for (size_t i = 0; i < sched.dominator_history.size(); ++i)
    for (NodeId f : sched.frontier_history[i]) {
      bool covered = false;
      for (NodeId d : sched.dominator_history[i])
        covered |= g.has_edge(f, d);
      CHECK(covered);
    }
}

TEST_CASE("schedules replay identically under the round automaton") {
  Rng rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    Graph g = random_connected_graph(rng, 20);
    BroadcastSchedule sched = compute_beta_schedule(g);
    LabelSet ls = label_oack(g);
    Trace tr = run_simulation(g, ls, Protocol::OACK, "\xB5",
                              4 * g.node_count() + 8);
    for (NodeId u = 0; u < g.node_count(); ++u) {
      if (u == g.source()) continue;
      CHECK(tr.first_receipt[u] == sched.informed_round[u]);
    }
  }
}

TEST_CASE("3-bit labels on the path from one end") {
  LabelSet ls = label_oack(path(4));
  CHECK(ls.labels[3].x1 == 0);
  CHECK(ls.labels[3].x2 == 0);
  CHECK(ls.labels[3].x3 == 1);  // 001, the ACK generator
  for (NodeId u : {1, 2}) {
    CHECK(ls.labels[u].x1 == 1);
    CHECK(ls.labels[u].x2 == 0);
    CHECK(ls.labels[u].x3 == 1);  // 101, relays both the payload and the ACK
  }
}

TEST_CASE("3-bit labels on a star mark the smallest leaf") {
  LabelSet ls = label_oack(star6());
  CHECK(ls.labels[1].x3 == 1);
  for (NodeId u = 2; u < 6; ++u) {
    CHECK(ls.labels[u].x1 == 0);
    CHECK(ls.labels[u].x2 == 0);
    CHECK(ls.labels[u].x3 == 0);
  }
}

TEST_CASE("exactly one node holds 001") {
  Rng rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = random_connected_graph(rng, 25);
    LabelSet ls = label_oack(g);
    int count = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
      const Label& l = ls.labels[u];
      if (u != g.source() && !l.x1 && !l.x2 && l.x3) ++count;
    }
    CHECK(count == 1);
  }
}

TEST_CASE("the marked back path steps down in informing rounds to the source") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = random_connected_graph(rng, 25);
    BroadcastSchedule sched = compute_beta_schedule(g);
    LabelSet ls = label_oack(g);
    NodeId gen = -1;
    std::vector<NodeId> marked;
    for (NodeId u = 0; u < g.node_count(); ++u)
      if (ls.labels[u].x3) {
        marked.push_back(u);
        if (!ls.labels[u].x1 && !ls.labels[u].x2) gen = u;
      }
    REQUIRE(gen >= 0);
    // Walking from the generator along marked neighbors with strictly
    // smaller informing rounds must reach a son of the source, visiting
    // every marked node exactly once.
    NodeId cur = gen;
    size_t visited = 1;
    while (!g.has_edge(cur, g.source()) || visited < marked.size()) {
      NodeId next = -1;
      for (NodeId v : g.neighbors(cur))
        if (ls.labels[v].x3 &&
            sched.informed_round[v] < sched.informed_round[cur] &&
            (next == -1 || v < next))
          next = v;
      REQUIRE(next >= 0);
      cur = next;
      ++visited;
    }
    CHECK(visited == marked.size());
    CHECK(g.has_edge(cur, g.source()));
  }
}

TEST_CASE("label_oack rejects the single node") {
  CHECK_THROWS_AS(label_oack(build_graph(1, {}, 0)), Error);
}

TEST_CASE("1-bit labels follow the separation") {
  Graph g = path(4);
  LevelView lv = compute_levels(g);

  Separation all_first;
  all_first.parts.resize(2);
  all_first.parts[0].first = lv.buckets[1];
  all_first.parts[1].first = lv.buckets[2];
  LabelSet ones = label_ls(lv, all_first);
  CHECK(ones.labels[1].x1 == 1);
  CHECK(ones.labels[2].x1 == 1);
  CHECK(ones.labels[0].x1 == 0);  // source unused
  CHECK(ones.labels[3].x1 == 0);  // level D carries no separation bit

  LabelSet zeros = label_ls(lv, found(lv));
  for (NodeId u = 0; u < 4; ++u) CHECK(zeros.labels[u].x1 == 0);
}

TEST_CASE("1-bit labels on the diamond") {
  Graph g = build_graph(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, 0);
  LevelView lv = compute_levels(g);
  LabelSet ls = label_ls(lv, found(lv));
  CHECK(ls.labels[1].x1 == 1);
  CHECK(ls.labels[2].x1 == 0);
}

TEST_CASE("label_ls rejects an invalid separation") {
  Graph g = build_graph(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, 0);
  LevelView lv = compute_levels(g);
  Separation bad;
  bad.parts.resize(1);
  bad.parts[0].first = {1, 2};
  CHECK_THROWS_AS(label_ls(lv, bad), Error);
}

TEST_CASE("2-bit labels mark one chain node per level up to the half way") {
  for (int n : {7, 8}) {  // D = 6 and D = 7, half-way level 2 in both
    Graph g = path(n);
    LevelView lv = compute_levels(g);
    LabelSet ls = label_ls_ack(lv, found(lv));
    for (NodeId u = 0; u < n; ++u)
      CHECK(int(ls.labels[u].x2) == ((u == 1 || u == 2) ? 1 : 0));
  }
}

TEST_CASE("2-bit label chain is a parent chain with one node per level") {
  Rng rng(37);
  int deep = 0;
  for (int trial = 0; trial < 60 || deep < 10; ++trial) {
    REQUIRE(trial < 300);
    Graph g = random_separable_graph(rng, 40);
    LevelView lv = compute_levels(g);
    if (!ls_ack_applicable(lv.eccentricity)) continue;
    ++deep;
    LabelSet ls = label_ls_ack(lv, found(lv));
    const int half = lv.eccentricity / 2 - 1;
    std::vector<int> marked_per_level(lv.eccentricity + 1, 0);
    for (NodeId u = 0; u < g.node_count(); ++u)
      if (ls.labels[u].x2) ++marked_per_level[lv.level[u]];
    for (int i = 0; i <= lv.eccentricity; ++i)
      CHECK(marked_per_level[i] == (i >= 1 && i <= half ? 1 : 0));
  }
}

TEST_CASE("degenerate depths mark no chain") {
  for (int n : {2, 3, 4}) {  // D = 1, 2, 3
    Graph g = path(n);
    LevelView lv = compute_levels(g);
    CHECK(!ls_ack_applicable(lv.eccentricity));
    LabelSet ls = label_ls_ack(lv, found(lv));
    for (NodeId u = 0; u < n; ++u) CHECK(ls.labels[u].x2 == 0);
  }
}

TEST_CASE("label files round trip with the right widths") {
  Graph g = path(5);
  LevelView lv = compute_levels(g);

  LabelSet oack = label_oack(g);
  std::string text = write_label_file(oack);
  CHECK(text.substr(0, 13) == "scheme OACK3\n");
  LabelSet back = parse_label_file(text);
  CHECK(write_label_file(back) == text);

  CHECK(write_label_file(label_ls(lv, found(lv))).substr(0, 11) ==
        "scheme LS1\n");
  CHECK(write_label_file(label_ls_ack(lv, found(lv))).substr(0, 14) ==
        "scheme LSACK2\n");

  CHECK_THROWS_AS(parse_label_file("scheme LS1\n0 01\n"), ParseError);
  CHECK_THROWS_AS(parse_label_file("scheme NOPE\n"), Error);
  CHECK_THROWS_AS(parse_label_file("scheme LS1\n0 1\n0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_label_file("0 1\n"), ParseError);
}
