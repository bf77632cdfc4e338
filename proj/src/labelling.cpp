#include "labelcast/labelling.hpp"

#include <algorithm>
#include <climits>
#include <sstream>
#include <unordered_set>

#include "labelcast/protocols.hpp"
#include "labelcast/simulator.hpp"

namespace labelcast {

int scheme_width(Scheme s) {
  switch (s) {
    case Scheme::LS1: return 1;
    case Scheme::LSACK2: return 2;
    case Scheme::OACK3: return 3;
  }
  return 0;
}

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::LS1: return "LS1";
    case Scheme::LSACK2: return "LSACK2";
    case Scheme::OACK3: return "OACK3";
  }
  return "?";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "LS1") return Scheme::LS1;
  if (name == "LSACK2") return Scheme::LSACK2;
  if (name == "OACK3") return Scheme::OACK3;
  throw Error("unknown scheme '" + name + "'");
}

namespace {

// ---------------------------------------------------------------------------
// Offline schedule search for the 3-bit scheme.
//
// The broadcast automaton ties a node's transmission windows rigidly to its
// informing round: a first transmission happens exactly two rounds after the
// first receipt (when selected), and a dominator keeps transmitting only
// while consecutive Stay notifications reach it. A single greedy pass over
// these windows can paint itself into a corner on graphs where redundant
// simultaneous coverage kills every parent of some node, so the selection is
// a depth-first search over a small menu of deterministic dominator sets,
// greedy-first. States that exhausted their menu are memoized.

struct SlotRecord {
  std::vector<NodeId> frontier;
  std::vector<NodeId> dominators;
  std::vector<std::pair<NodeId, int>> stays;  // (sender, round)
};

struct SearchState {
  std::vector<int> informed_round;  // INT_MIN = uninformed
  std::vector<NodeId> informer;
  std::vector<NodeId> prev_tx;   // data transmitters of the previous slot
  std::vector<NodeId> prev_new;  // nodes informed in the previous slot
  int data_round = 2;            // round of the upcoming data transmission
};

constexpr int kUninformed = INT_MIN;

class ScheduleSearch {
 public:
  explicit ScheduleSearch(const Graph& g) : g_(g), n_(g.node_count()) {}

  bool run(SearchState st, std::vector<SlotRecord>& records,
           SearchState& final_state) {
    std::vector<NodeId> frontier;
    bool any_uninformed = false;
    for (NodeId u = 0; u < n_; ++u)
      if (st.informed_round[u] == kUninformed) {
        any_uninformed = true;
        for (NodeId w : g_.neighbors(u))
          if (st.informed_round[w] != kUninformed) {
            frontier.push_back(u);
            break;
          }
      }
    if (!any_uninformed) {
      final_state = st;
      return true;
    }

    std::string key = state_key(st);
    if (failed_.count(key)) return false;

    for (const auto& txset : action_menu(st)) {
      if (++budget_used_ > kBudget)
        throw InfeasibleError(
            "broadcast schedule search budget exhausted (" +
            std::to_string(kBudget) + " candidate rounds)");
      SearchState next = st;
      SlotRecord rec;
      rec.frontier = frontier;
      if (!apply(txset, next, rec)) continue;
      records.push_back(std::move(rec));
      if (run(std::move(next), records, final_state)) return true;
      records.pop_back();
    }
    failed_.insert(std::move(key));
    return false;
  }

 private:
  static constexpr long kBudget = 200000;

  std::string state_key(const SearchState& st) const {
    std::string key;
    key.reserve(n_ * 3);
    for (NodeId u = 0; u < n_; ++u)
      key.push_back(st.informed_round[u] == kUninformed ? '0' : '1');
    key.push_back('|');
    for (NodeId u : st.prev_tx) key += std::to_string(u) + ",";
    key.push_back('|');
    for (NodeId u : st.prev_new)
      key += std::to_string(u) + ":" + std::to_string(st.informer[u]) + ",";
    return key;
  }

  bool is_informed(const SearchState& st, NodeId u) const {
    return st.informed_round[u] != kUninformed;
  }

  // A dominator can be retained only if a Stay sender exists: a node
  // informed in the previous slot adjacent to it.
  NodeId stay_son(const SearchState& st, NodeId d) const {
    for (NodeId u : st.prev_new)
      if (st.informer[u] == d) return u;  // prev_new ascending, smallest first
    for (NodeId u : st.prev_new)
      if (g_.has_edge(u, d)) return u;
    return -1;
  }

  std::vector<NodeId> candidates(const SearchState& st) const {
    std::vector<NodeId> c = st.prev_new;
    for (NodeId d : st.prev_tx)
      if (d != g_.source() && stay_son(st, d) >= 0) c.push_back(d);
    std::sort(c.begin(), c.end());
    return c;
  }

  bool covers_something(const SearchState& st, NodeId c) const {
    for (NodeId v : g_.neighbors(c))
      if (!is_informed(st, v)) return true;
    return false;
  }

  std::vector<NodeId> greedy(const SearchState& st,
                             const std::vector<NodeId>& cands) const {
    std::vector<NodeId> chosen;
    std::vector<char> covered(n_, 0);
    for (NodeId c : cands) {
      bool gains = false;
      for (NodeId v : g_.neighbors(c))
        if (!is_informed(st, v) && !covered[v]) {
          gains = true;
          break;
        }
      if (!gains) continue;
      chosen.push_back(c);
      for (NodeId v : g_.neighbors(c))
        if (!is_informed(st, v)) covered[v] = 1;
    }
    return chosen;
  }

  // Variant that refuses inclusions leaving any chosen dominator without a
  // node it would inform alone; every member then keeps a fresh Stay sender.
  std::vector<NodeId> productive_greedy(const SearchState& st,
                                        const std::vector<NodeId>& cands) const {
    std::vector<NodeId> chosen;
    auto private_count = [&](NodeId m, const std::vector<NodeId>& set) {
      int cnt = 0;
      for (NodeId v : g_.neighbors(m)) {
        if (is_informed(st, v)) continue;
        bool shared = false;
        for (NodeId other : set)
          if (other != m && g_.has_edge(other, v)) {
            shared = true;
            break;
          }
        if (!shared) ++cnt;
      }
      return cnt;
    };
    for (NodeId c : cands) {
      std::vector<NodeId> trial = chosen;
      trial.push_back(c);
      if (private_count(c, trial) == 0) continue;
      bool ok = true;
      for (NodeId m : chosen)
        if (private_count(m, trial) == 0) {
          ok = false;
          break;
        }
      if (ok) chosen = std::move(trial);
    }
    return chosen;
  }

  std::vector<std::vector<NodeId>> action_menu(const SearchState& st) const {
    std::vector<std::vector<NodeId>> menu;
    auto push_unique = [&](std::vector<NodeId> set) {
      if (set.empty()) return;
      if (std::find(menu.begin(), menu.end(), set) == menu.end())
        menu.push_back(std::move(set));
    };
    const std::vector<NodeId> cands = candidates(st);
    const std::vector<NodeId> base = greedy(st, cands);
    push_unique(base);
    push_unique(productive_greedy(st, cands));
    for (NodeId drop : base) {
      std::vector<NodeId> rest;
      for (NodeId c : cands)
        if (c != drop) rest.push_back(c);
      push_unique(greedy(st, rest));
      push_unique(productive_greedy(st, rest));
    }
    for (NodeId c : cands)
      if (covers_something(st, c)) push_unique({c});
    return menu;
  }

  // Simulates the Stay round and the data round the automaton would run for
  // this transmitter set; fails when an intended retention misses its Stay
  // or the round informs nobody.
  bool apply(const std::vector<NodeId>& txset, SearchState& st,
             SlotRecord& rec) const {
    std::vector<NodeId> retained_wanted;
    std::unordered_set<NodeId> prev_new_set(st.prev_new.begin(),
                                            st.prev_new.end());
    for (NodeId d : txset)
      if (!prev_new_set.count(d)) retained_wanted.push_back(d);

    std::vector<char> is_stay_sender(n_, 0);
    for (NodeId d : retained_wanted) {
      NodeId son = stay_son(st, d);
      if (son < 0) return false;
      is_stay_sender[son] = 1;
    }

    // Stay delivery: a previous-slot transmitter keeps transmitting iff it
    // hears exactly one Stay. Extra retentions triggered as a side effect
    // are folded into the transmitter set; the replay will produce them.
    std::vector<NodeId> actual_tx;
    for (NodeId d : st.prev_tx) {
      if (d == g_.source()) continue;
      int heard = 0;
      for (NodeId v : g_.neighbors(d)) heard += is_stay_sender[v];
      if (heard == 1) actual_tx.push_back(d);
    }
    for (NodeId d : retained_wanted)
      if (std::find(actual_tx.begin(), actual_tx.end(), d) == actual_tx.end())
        return false;
    for (NodeId a : txset)
      if (prev_new_set.count(a)) actual_tx.push_back(a);
    std::sort(actual_tx.begin(), actual_tx.end());

    std::vector<char> transmitting(n_, 0);
    for (NodeId d : actual_tx) transmitting[d] = 1;
    std::vector<NodeId> newly;
    for (NodeId u = 0; u < n_; ++u) {
      if (is_informed(st, u)) continue;
      NodeId lone = -1;
      int cnt = 0;
      for (NodeId v : g_.neighbors(u))
        if (transmitting[v]) {
          ++cnt;
          lone = v;
        }
      if (cnt == 1) {
        newly.push_back(u);
        st.informed_round[u] = st.data_round;
        st.informer[u] = lone;
      }
    }
    if (newly.empty()) return false;

    for (NodeId u = 0; u < n_; ++u)
      if (is_stay_sender[u])
        rec.stays.emplace_back(u, st.data_round - 1);
    rec.dominators = actual_tx;
    st.prev_tx = std::move(actual_tx);
    st.prev_new = std::move(newly);
    st.data_round += 2;
    return true;
  }

  const Graph& g_;
  int n_;
  mutable long budget_used_ = 0;
  std::unordered_set<std::string> failed_;
};

}  // namespace

BroadcastSchedule compute_beta_schedule(const Graph& g) {
  const int n = g.node_count();
  BroadcastSchedule sched;
  sched.informed_round.assign(n, kUninformed);
  sched.informer.assign(n, -1);
  sched.transmit_rounds.assign(n, {});
  sched.informed_round[g.source()] = -1;

  if (n == 1) {
    sched.completion_round = -1;
    return sched;
  }

  // Round 0: the source transmits alone, informing its whole neighborhood.
  SearchState st;
  st.informed_round = sched.informed_round;
  st.informer = sched.informer;
  for (NodeId v : g.neighbors(g.source())) {
    st.informed_round[v] = 0;
    st.informer[v] = g.source();
    st.prev_new.push_back(v);
  }
  st.prev_tx = {g.source()};
  st.data_round = 2;

  std::vector<SlotRecord> records;
  SearchState final_state;
  ScheduleSearch search(g);
  if (!search.run(std::move(st), records, final_state))
    throw InfeasibleError("no broadcast schedule found");

  sched.informed_round = final_state.informed_round;
  sched.informer = final_state.informer;
  sched.transmit_rounds[g.source()].push_back(0);
  int round = 2;
  for (const SlotRecord& rec : records) {
    for (NodeId d : rec.dominators) sched.transmit_rounds[d].push_back(round);
    sched.frontier_history.push_back(rec.frontier);
    sched.dominator_history.push_back(rec.dominators);
    for (auto& s : rec.stays) sched.stay_senders.push_back(s);
    round += 2;
  }
  sched.completion_round =
      *std::max_element(sched.informed_round.begin(), sched.informed_round.end());
  return sched;
}

namespace {

// Shortest path from `gen` to the source along edges that step strictly
// down in informing round, using only nodes that already carry X1 or X2
// (their label with X3 added reads 101, 111 or 011, never a second 001).
// A shortest such path has no chords between non-consecutive members (a
// chord would shorten it), which keeps the relayed ACK and its echoes from
// colliding at the wavefront. Ties broken by smallest id.
std::vector<NodeId> ack_back_path(const Graph& g, const BroadcastSchedule& sched,
                                  const LabelSet& base, NodeId gen) {
  const int n = g.node_count();
  std::vector<int> dist(n, -1);
  std::vector<NodeId> pred(n, -1);
  std::vector<NodeId> frontier{gen};
  dist[gen] = 0;
  while (!frontier.empty() && dist[g.source()] < 0) {
    std::vector<NodeId> next;
    for (NodeId u : frontier)
      for (NodeId v : g.neighbors(u)) {
        if (dist[v] >= 0 || sched.informed_round[v] >= sched.informed_round[u])
          continue;
        if (v != g.source() && !base.labels[v].x1 && !base.labels[v].x2)
          continue;
        dist[v] = dist[u] + 1;
        pred[v] = u;
        next.push_back(v);
      }
    std::sort(next.begin(), next.end());  // smallest-id predecessors win
    frontier = std::move(next);
  }
  if (dist[g.source()] < 0)
    throw Error("internal: no informing path back to the source");
  std::vector<NodeId> path;
  for (NodeId u = pred[g.source()]; u != -1; u = pred[u]) path.push_back(u);
  return path;  // generator last; source excluded
}

}  // namespace

LabelSet label_oack(const Graph& g) {
  const int n = g.node_count();
  if (n < 2) throw Error("acknowledged broadcast needs at least 2 nodes");
  BroadcastSchedule sched = compute_beta_schedule(g);

  LabelSet base{Scheme::OACK3, std::vector<Label>(n)};
  for (NodeId u = 0; u < n; ++u)
    if (u != g.source() && !sched.transmit_rounds[u].empty())
      base.labels[u].x1 = 1;
  for (auto& [u, round] : sched.stay_senders) base.labels[u].x2 = 1;

  std::vector<NodeId> generators;
  for (NodeId u = 0; u < n; ++u)
    if (sched.informed_round[u] == sched.completion_round)
      generators.push_back(u);

  // Smallest-id last-informed node generates the ACK; should its wave ever
  // miss the n-round budget, the next candidate is tried.
  LabelSet first_try;
  for (size_t gi = 0; gi < generators.size(); ++gi) {
    NodeId gen = generators[gi];
    LabelSet ls = base;
    if (ls.labels[gen].x1 || ls.labels[gen].x2)
      throw Error("internal: last-informed node carries transmit bits");
    for (NodeId u : ack_back_path(g, sched, base, gen)) ls.labels[u].x3 = 1;
    ls.labels[gen].x3 = 1;
    if (gi == 0) first_try = ls;
    Trace tr = run_simulation(g, ls, Protocol::OACK, "\xB5",
                              std::max(2 * n, sched.completion_round + n + 4));
    if (tr.ack_arrival_round &&
        *tr.ack_arrival_round <= sched.completion_round + n)
      return ls;
  }
  return first_try;
}

LabelSet label_ls(const LevelView& lv, const Separation& sep) {
  SeparationVerdict v = check_separation(lv, sep);
  if (!v.accepted)
    throw Error("separation rejected (witness node " +
                std::to_string(v.witness) + "); cannot label");
  LabelSet ls{Scheme::LS1, std::vector<Label>(lv.node_count())};
  for (const auto& [p1, p2] : sep.parts)
    for (NodeId u : p1) ls.labels[u].x1 = 1;
  return ls;
}

bool ls_ack_applicable(int eccentricity) { return eccentricity / 2 - 1 >= 1; }

LabelSet label_ls_ack(const LevelView& lv, const Separation& sep) {
  SeparationVerdict v = check_separation(lv, sep);
  if (!v.accepted)
    throw Error("separation rejected (witness node " +
                std::to_string(v.witness) + "); cannot label");
  LabelSet ls{Scheme::LSACK2, std::vector<Label>(lv.node_count())};
  for (const auto& [p1, p2] : sep.parts)
    for (NodeId u : p1) ls.labels[u].x1 = 1;

  const int half = lv.eccentricity / 2 - 1;
  if (half >= 1) {
    NodeId cur = lv.buckets[half].front();
    ls.labels[cur].x2 = 1;
    while (lv.level[cur] > 1) {
      cur = lv.parents[cur].front();
      ls.labels[cur].x2 = 1;
    }
  }
  return ls;
}

std::string write_label_file(const LabelSet& ls) {
  std::ostringstream out;
  out << "scheme " << scheme_name(ls.scheme) << '\n';
  const int width = scheme_width(ls.scheme);
  for (NodeId u = 0; u < ls.node_count(); ++u) {
    const Label& l = ls.labels[u];
    out << u << ' ' << int(l.x1);
    if (width >= 2) out << int(l.x2);
    if (width >= 3) out << int(l.x3);
    out << '\n';
  }
  return out.str();
}

LabelSet parse_label_file(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  LabelSet ls;
  bool have_header = false;
  std::vector<std::pair<NodeId, Label>> entries;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream row(line);
    std::string first;
    if (!(row >> first) || first[0] == '#') continue;
    if (!have_header) {
      std::string name;
      if (first != "scheme" || !(row >> name))
        throw ParseError("expected 'scheme <OACK3|LS1|LSACK2>' header", lineno);
      ls.scheme = scheme_from_name(name);
      have_header = true;
      continue;
    }
    NodeId id;
    std::string bits;
    try {
      id = std::stoi(first);
    } catch (...) {
      throw ParseError("bad node id '" + first + "'", lineno);
    }
    if (!(row >> bits) || bits.size() != size_t(scheme_width(ls.scheme)))
      throw ParseError("label must have exactly " +
                           std::to_string(scheme_width(ls.scheme)) + " bits",
                       lineno);
    Label l;
    for (size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] != '0' && bits[i] != '1')
        throw ParseError("label bits must be 0/1", lineno);
      uint8_t b = bits[i] == '1';
      (i == 0 ? l.x1 : i == 1 ? l.x2 : l.x3) = b;
    }
    entries.emplace_back(id, l);
  }
  if (!have_header) throw ParseError("missing 'scheme' header");
  ls.labels.assign(entries.size(), {});
  std::vector<char> seen(entries.size(), 0);
  for (auto& [id, l] : entries) {
    if (id < 0 || id >= int(entries.size()) || seen[id])
      throw ParseError("node ids must cover 0.." +
                       std::to_string(entries.size() - 1) + " exactly once");
    seen[id] = 1;
    ls.labels[id] = l;
  }
  return ls;
}

}  // namespace labelcast
