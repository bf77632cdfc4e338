#include "labelcast/selfcheck.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "labelcast/ingestion.hpp"
#include "labelcast/labelling.hpp"
#include "labelcast/simulator.hpp"

namespace labelcast {

uint64_t Rng::next() {
  // splitmix64
  uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int Rng::below(int bound) { return bound <= 1 ? 0 : int(next() % uint64_t(bound)); }

bool Rng::chance(double p) { return (next() >> 11) * 0x1.0p-53 < p; }

Graph random_tree(Rng& rng, int max_nodes) {
  const int n = 2 + rng.below(std::max(max_nodes - 1, 1));
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId v = 1; v < n; ++v) edges.emplace_back(rng.below(v), v);
  return build_graph(n, edges, rng.below(n));
}

Graph random_separable_graph(Rng& rng, int max_nodes) {
  Graph tree = random_tree(rng, max_nodes);
  LevelView lv = compute_levels(tree);
  std::vector<std::pair<NodeId, NodeId>> edges = tree.edges();
  // Same-level edges never create new parents, so every node keeps exactly
  // one parent and any partition with an empty first part stays valid.
  for (const auto& bucket : lv.buckets)
    for (size_t i = 0; i < bucket.size(); ++i)
      for (size_t j = i + 1; j < bucket.size(); ++j)
        if (rng.chance(0.25)) edges.emplace_back(bucket[i], bucket[j]);
  Graph g = build_graph(tree.node_count(), edges, tree.source());

  LevelView lv2 = compute_levels(g);
  Separation trivial;
  trivial.parts.resize(std::max(lv2.eccentricity - 1, 0));
  for (int i = 1; i <= lv2.eccentricity - 1; ++i)
    trivial.parts[i - 1].second = lv2.buckets[i];
  if (!check_separation(lv2, trivial).accepted)
    throw Error("internal: augmented tree lost separability");
  return g;
}

Graph random_connected_graph(Rng& rng, int max_nodes) {
  const int n = 2 + rng.below(std::max(max_nodes - 1, 1));
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId v = 1; v < n; ++v) edges.emplace_back(rng.below(v), v);
  const double p = 2.0 / n;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (rng.chance(p)) edges.emplace_back(u, v);
  return build_graph(n, edges, rng.below(n));
}

Formula random_formula(Rng& rng, int max_vars, int max_clauses) {
  Formula f;
  f.var_count = std::max(3, 1 + rng.below(max_vars));
  const int l = rng.below(max_clauses + 1);
  for (int j = 0; j < l; ++j) {
    // Three distinct variables per clause, as in the textbook problem.
    std::array<int, 3> vars;
    vars[0] = rng.below(f.var_count);
    do vars[1] = rng.below(f.var_count);
    while (vars[1] == vars[0]);
    do vars[2] = rng.below(f.var_count);
    while (vars[2] == vars[0] || vars[2] == vars[1]);
    std::array<Literal, 3> clause;
    for (int t = 0; t < 3; ++t) clause[t] = {vars[t], rng.chance(0.5)};
    f.clauses.push_back(clause);
  }
  return f;
}

Graph random_small_level_graph(Rng& rng, int max_level_size) {
  const int depth = 2 + rng.below(4);
  std::vector<std::vector<NodeId>> layers;
  int next_id = 0;
  layers.push_back({next_id++});
  for (int i = 1; i <= depth; ++i) {
    const int width = 1 + rng.below(max_level_size);
    std::vector<NodeId> layer;
    for (int w = 0; w < width; ++w) layer.push_back(next_id++);
    layers.push_back(layer);
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (size_t i = 1; i < layers.size(); ++i) {
    const auto& above = layers[i - 1];
    for (NodeId u : layers[i]) {
      const int parent_count = 1 + rng.below(std::min<int>(3, above.size()));
      std::set<NodeId> chosen;
      while (int(chosen.size()) < parent_count)
        chosen.insert(above[rng.below(int(above.size()))]);
      for (NodeId p : chosen) edges.emplace_back(p, u);
    }
    for (size_t a = 0; a < layers[i].size(); ++a)
      for (size_t b = a + 1; b < layers[i].size(); ++b)
        if (rng.chance(0.1)) edges.emplace_back(layers[i][a], layers[i][b]);
  }
  return build_graph(next_id, edges, 0);
}

namespace {

std::string plural(int k, const std::string& noun) {
  return std::to_string(k) + " " + noun + (k == 1 ? "" : "s");
}

// Direct quantifier evaluation of the separation property, kept independent
// of check_separation's bucket-counting pass.
bool oracle_separation_property(const LevelView& lv, const Separation& sep) {
  for (int i = 1; i <= lv.eccentricity - 1; ++i) {
    std::set<NodeId> s1(sep.parts[i - 1].first.begin(),
                        sep.parts[i - 1].first.end());
    std::set<NodeId> s2(sep.parts[i - 1].second.begin(),
                        sep.parts[i - 1].second.end());
    for (NodeId u : lv.buckets[i + 1]) {
      long c1 = std::count_if(lv.parents[u].begin(), lv.parents[u].end(),
                              [&](NodeId p) { return s1.count(p) > 0; });
      long c2 = std::count_if(lv.parents[u].begin(), lv.parents[u].end(),
                              [&](NodeId p) { return s2.count(p) > 0; });
      if (c1 != 1 && c2 != 1) return false;
    }
  }
  return true;
}

struct LsCorpusEntry {
  Graph graph;
  LevelView lv;
  Separation sep;
};

std::vector<LsCorpusEntry> make_ls_corpus(Rng& rng, int count) {
  std::vector<LsCorpusEntry> corpus;
  corpus.reserve(count);
  for (int i = 0; i < count; ++i) {
    Graph g = (i % 2 == 0) ? random_tree(rng, 50)
                           : random_separable_graph(rng, 50);
    LevelView lv = compute_levels(g);
    auto sep = find_separation(lv);
    if (!sep) throw Error("internal: generated instance not separable");
    corpus.push_back({std::move(g), std::move(lv), std::move(*sep)});
  }
  return corpus;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg) {
  std::vector<CriterionResult> results;
  Rng rng(cfg.seed);

  std::vector<LsCorpusEntry> ls_corpus = make_ls_corpus(rng, cfg.ls_instances);
  std::vector<Trace> ls_traces;
  ls_traces.reserve(ls_corpus.size());
  for (const auto& entry : ls_corpus) {
    LabelSet labels = label_ls(entry.lv, entry.sep);
    ls_traces.push_back(run_simulation(entry.graph, labels, Protocol::LS, "\xB5",
                                       std::max(2 * entry.graph.node_count(),
                                                2 * entry.lv.eccentricity + 8)));
  }

  {  // Criterion 1: exact level timing and the 2D termination bound.
    int bad = 0;
    std::string first_bad;
    for (size_t i = 0; i < ls_corpus.size(); ++i) {
      const auto& entry = ls_corpus[i];
      const Trace& tr = ls_traces[i];
      bool ok = tr.all_informed &&
                tr.termination_round <= 2 * entry.lv.eccentricity;
      for (NodeId u = 0; ok && u < entry.graph.node_count(); ++u)
        if (u != entry.graph.source() &&
            tr.first_receipt[u] != 2 * entry.lv.level[u] - 2)
          ok = false;
      if (!ok && bad++ == 0) first_bad = "instance " + std::to_string(i);
    }
    results.push_back({1, "ls-timing",
                       bad == 0,
                       bad == 0 ? plural(int(ls_corpus.size()), "instance") +
                                      ", every receipt at 2*level-2, "
                                      "termination within 2D"
                                : plural(bad, "violation") + ", first at " +
                                      first_bad});
  }

  {  // Criterion 2: exactly one transmitting neighbor at first receipt.
    int bad = 0;
    for (size_t i = 0; i < ls_corpus.size(); ++i) {
      const auto& entry = ls_corpus[i];
      const Trace& tr = ls_traces[i];
      for (NodeId u = 0; u < entry.graph.node_count(); ++u) {
        if (u == entry.graph.source() || tr.first_receipt[u] < 0) continue;
        int heard = 0;
        for (auto& [v, m] : tr.rounds[tr.first_receipt[u]].transmitters)
          if (m.kind == MessageKind::Data && entry.graph.has_edge(u, v))
            ++heard;
        if (heard != 1) ++bad;
      }
    }
    results.push_back({2, "ls-collision-freedom", bad == 0,
                       bad == 0 ? "every first receipt came from a single "
                                  "transmitting neighbor"
                                : plural(bad, "collided first receipt")});
  }

  {  // Criterion 3: half-way ACK arrival rounds.
    int bad = 0, exact = 0, degenerate = 0;
    std::string first_bad;
    for (size_t i = 0; i < ls_corpus.size(); ++i) {
      const auto& entry = ls_corpus[i];
      const int d = entry.lv.eccentricity;
      LabelSet labels = label_ls_ack(entry.lv, entry.sep);
      Trace tr = run_simulation(entry.graph, labels, Protocol::LSACK, "\xB5",
                                std::max(2 * entry.graph.node_count(), 2 * d + 8));
      bool ok;
      if (ls_ack_applicable(d)) {
        const int want = d % 2 != 0 ? 2 * (d - 1) : 2 * d;
        ok = tr.ack_arrival_round && *tr.ack_arrival_round == want;
        ++exact;
      } else {
        ok = !tr.ack_arrival_round;  // reported "not applicable", no number
        ++degenerate;
      }
      if (!ok && bad++ == 0)
        first_bad = "instance " + std::to_string(i) + " (D=" +
                    std::to_string(d) + ")";
    }
    results.push_back(
        {3, "lsack-ack-timing", bad == 0,
         bad == 0 ? plural(exact, "exact arrival") + ", " +
                        plural(degenerate, "degenerate-depth instance") +
                        " reported not applicable"
                  : plural(bad, "violation") + ", first at " + first_bad});
  }

  {  // Criterion 4: arbitrary-graph bounds for the 3-bit scheme.
    int bad = 0;
    std::string first_bad;
    for (int i = 0; i < cfg.oack_instances; ++i) {
      Graph g = random_connected_graph(rng, 30);
      const int n = g.node_count();
      LabelSet labels = label_oack(g);
      Trace tr = run_simulation(g, labels, Protocol::OACK, "\xB5", 4 * n + 8);
      int completion = -1;
      for (NodeId u = 0; u < n; ++u)
        completion = std::max(completion, tr.first_receipt[u]);
      bool ok = tr.all_informed && completion <= 2 * n - 3 &&
                tr.ack_arrival_round &&
                *tr.ack_arrival_round <= completion + n;
      if (!ok && bad++ == 0) first_bad = "instance " + std::to_string(i);
    }
    results.push_back({4, "oack-bounds", bad == 0,
                       bad == 0 ? plural(cfg.oack_instances, "graph") +
                                      ": informed within 2n-3, ACK within n "
                                      "rounds of completion"
                                : plural(bad, "violation") + ", first at " +
                                      first_bad});
  }

  {  // Criterion 5: reduction equivalence plus both construction directions.
    std::vector<Formula> formulas;
    Formula fixed_sat;
    fixed_sat.var_count = 3;
    fixed_sat.clauses.push_back(
        {Literal{0, true}, Literal{1, true}, Literal{2, true}});
    Formula fixed_unsat = fixed_sat;
    fixed_unsat.clauses.push_back(
        {Literal{0, false}, Literal{1, false}, Literal{2, false}});
    formulas.push_back(fixed_sat);
    formulas.push_back(fixed_unsat);
    for (int i = 0; i < cfg.formula_instances; ++i)
      formulas.push_back(random_formula(rng, 4, 4));
    int bad = 0, sat_count = 0;
    std::string first_bad;
    for (size_t i = 0; i < formulas.size(); ++i) {
      ReductionReport rep = verify_reduction(formulas[i]);
      sat_count += rep.satisfiable;
      if (!(rep.agree && rep.forward_ok && rep.backward_ok) && bad++ == 0)
        first_bad = "formula " + std::to_string(i);
    }
    results.push_back({5, "reduction-equivalence", bad == 0,
                       bad == 0 ? plural(int(formulas.size()), "formula") +
                                      " (" + std::to_string(sat_count) +
                                      " satisfiable), verdicts and both "
                                      "directions agree"
                                : plural(bad, "disagreement") + ", first at " +
                                      first_bad});
  }

  {  // Criterion 6: checker vs. direct quantifier evaluation.
    int bad = 0;
    for (int i = 0; i < cfg.checker_instances; ++i) {
      Graph g = random_small_level_graph(rng, 10);
      LevelView lv = compute_levels(g);
      Separation sep;
      sep.parts.resize(std::max(lv.eccentricity - 1, 0));
      for (int lvl = 1; lvl <= lv.eccentricity - 1; ++lvl)
        for (NodeId u : lv.buckets[lvl])
          (rng.chance(0.5) ? sep.parts[lvl - 1].first
                           : sep.parts[lvl - 1].second)
              .push_back(u);
      if (check_separation(lv, sep).accepted !=
          oracle_separation_property(lv, sep))
        ++bad;
    }
    results.push_back({6, "checker-soundness", bad == 0,
                       bad == 0 ? plural(cfg.checker_instances, "pair") +
                                      ", checker matches the quantifier oracle"
                                : plural(bad, "disagreement")});
  }

  {  // Criterion 7: emitted label files carry the exact widths.
    int bad = 0;
    int files = 0;
    auto audit = [&](const LabelSet& ls) {
      ++files;
      const std::string text = write_label_file(ls);
      std::istringstream in(text);
      std::string line;
      std::getline(in, line);  // scheme header
      int ones_001 = 0;
      int nodes = 0;
      while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string id, bits;
        row >> id >> bits;
        ++nodes;
        if (int(bits.size()) != scheme_width(ls.scheme)) ++bad;
        if (ls.scheme == Scheme::OACK3 && bits == "001") ++ones_001;
      }
      if (nodes != ls.node_count()) ++bad;
      if (ls.scheme == Scheme::OACK3 && ones_001 != 1) ++bad;
      LabelSet reparsed = parse_label_file(text);
      if (write_label_file(reparsed) != text) ++bad;
    };
    for (int i = 0; i < 25; ++i) {
      const auto& entry = ls_corpus[i % ls_corpus.size()];
      audit(label_ls(entry.lv, entry.sep));
      audit(label_ls_ack(entry.lv, entry.sep));
      audit(label_oack(random_connected_graph(rng, 30)));
    }
    results.push_back({7, "label-widths", bad == 0,
                       bad == 0 ? plural(files, "file") +
                                      ": 1/2/3 bits per node and a unique 001"
                                : plural(bad, "width violation")});
  }

  {  // Criterion 8: bundled walking table and threshold derivation.
    bool ok = true;
    std::string detail;
    try {
      std::ifstream in(cfg.data_dir + "/posture1_walking.csv");
      if (!in) throw Error("cannot open " + cfg.data_dir + "/posture1_walking.csv");
      std::stringstream buf;
      buf << in.rdbuf();
      AttenuationTable tbl = parse_attenuation_csv(buf.str());
      const int navel = body_position_index("navel");
      const int chest = body_position_index("chest");
      const int ankle = body_position_index("ankle");
      if (tbl.mean(navel, chest) != 30.6) throw Error("mean(navel,chest) wrong");
      if (tbl.mean(navel, ankle) != 57.4) throw Error("mean(navel,ankle) wrong");
      Graph g = derive_graph(tbl, 50.0, "navel");
      if (!g.has_edge(navel, chest)) throw Error("navel-chest edge missing at 50 dB");
      if (g.has_edge(navel, ankle)) throw Error("navel-ankle edge present at 50 dB");
      detail = "walking table values match and the 50 dB threshold keeps "
               "navel-chest while dropping navel-ankle";
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    results.push_back({8, "ingestion-fidelity", ok, detail});
  }

  return results;
}

}  // namespace labelcast
