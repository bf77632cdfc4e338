#include "labelcast/simulator.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

namespace labelcast {

std::string protocol_name(Protocol p) {
  switch (p) {
    case Protocol::OACK: return "OACK";
    case Protocol::LS: return "LS";
    case Protocol::LSACK: return "LSACK";
  }
  return "?";
}

Protocol protocol_from_name(const std::string& name) {
  if (name == "OACK") return Protocol::OACK;
  if (name == "LS") return Protocol::LS;
  if (name == "LSACK") return Protocol::LSACK;
  throw Error("unknown protocol '" + name + "'");
}

Scheme scheme_for(Protocol p) {
  switch (p) {
    case Protocol::OACK: return Scheme::OACK3;
    case Protocol::LS: return Scheme::LS1;
    case Protocol::LSACK: return Scheme::LSACK2;
  }
  return Scheme::LS1;
}

std::vector<std::optional<Message>> resolve_round(
    const Graph& g, const std::vector<std::optional<Message>>& outgoing) {
  const int n = g.node_count();
  std::vector<std::optional<Message>> received(n);
  for (NodeId u = 0; u < n; ++u) {
    if (outgoing[u]) continue;  // a transmitter cannot receive this round
    NodeId lone = -1;
    int cnt = 0;
    for (NodeId v : g.neighbors(u))
      if (outgoing[v]) {
        ++cnt;
        lone = v;
      }
    if (cnt == 1) received[u] = outgoing[lone];
  }
  return received;
}

Trace run_simulation(const Graph& g, const LabelSet& labels, Protocol protocol,
                     const std::string& payload, int max_rounds,
                     int quiescence_window) {
  const int n = g.node_count();
  if (labels.scheme != scheme_for(protocol))
    throw Error("label scheme " + scheme_name(labels.scheme) +
                " does not match protocol " + protocol_name(protocol));
  if (labels.node_count() != n)
    throw Error("label set covers " + std::to_string(labels.node_count()) +
                " nodes, graph has " + std::to_string(n));
  if (max_rounds < 2 * n)
    throw Error("max_rounds must be at least 2 * node_count");

  auto step = protocol == Protocol::OACK  ? step_oack
              : protocol == Protocol::LS ? step_ls
                                         : step_ls_ack;

  std::vector<NodeState> states;
  states.reserve(n);
  for (NodeId u = 0; u < n; ++u)
    states.push_back(
        make_node_state(u, u == g.source(), labels.labels[u], payload));

  Trace tr;
  tr.protocol = protocol;
  tr.node_count = n;
  tr.source = g.source();
  tr.first_receipt.assign(n, -1);

  std::vector<std::optional<Message>> inboxes(n);
  int informed = 1;
  int silent_streak = 0;
  for (int round = 0; round < max_rounds; ++round) {
    std::vector<std::optional<Message>> outgoing(n);
    for (NodeId u = 0; u < n; ++u) {
      StepResult res = step(std::move(states[u]), round, inboxes[u]);
      states[u] = std::move(res.state);
      if (res.outbox.message) outgoing[u] = std::move(res.outbox.message);
    }

    RoundEvent ev;
    ev.round = round;
    for (NodeId u = 0; u < n; ++u)
      if (outgoing[u]) ev.transmitters.emplace_back(u, *outgoing[u]);

    // The acknowledged arbitrary-graph scheme keeps its two phases apart;
    // a round mixing DATA with an ACK there is worth flagging.
    if (protocol == Protocol::OACK) {
      bool data_seen = false, ack_seen = false;
      for (auto& [u, m] : ev.transmitters) {
        data_seen |= m.kind == MessageKind::Data;
        ack_seen |= m.kind == MessageKind::Ack;
      }
      if (data_seen && ack_seen)
        tr.anomalies.push_back("round " + std::to_string(round) +
                               ": DATA and ACK transmitted in the same round");
    }

    inboxes = resolve_round(g, outgoing);
    for (NodeId u = 0; u < n; ++u) {
      if (inboxes[u]) {
        ev.receptions.emplace_back(u, *inboxes[u]);
        if (inboxes[u]->kind == MessageKind::Data && u != g.source() &&
            tr.first_receipt[u] < 0) {
          tr.first_receipt[u] = round;
          ++informed;
        }
        if (inboxes[u]->kind == MessageKind::Ack && u == g.source() &&
            !tr.ack_arrival_round)
          tr.ack_arrival_round = round;
      } else if (!outgoing[u]) {
        CollisionEvent col;
        col.round = round;
        for (NodeId v : g.neighbors(u))
          if (outgoing[v]) col.transmitters.push_back(v);
        if (col.transmitters.size() >= 2) {
          col.node = u;
          // A control message drowning out the payload at a node that still
          // waits for it would contradict the schemes' spacing; flag it.
          bool data = false, control = false;
          for (NodeId v : col.transmitters) {
            data |= outgoing[v]->kind == MessageKind::Data;
            control |= outgoing[v]->kind != MessageKind::Data;
          }
          if (data && control && u != g.source() && tr.first_receipt[u] < 0)
            tr.anomalies.push_back(
                "round " + std::to_string(round) +
                ": control message collided with DATA at uninformed node " +
                std::to_string(u));
          tr.collision_log.push_back(std::move(col));
        }
      }
    }

    if (!ev.transmitters.empty()) {
      tr.termination_round = round;
      silent_streak = 0;
    } else {
      ++silent_streak;
    }
    tr.rounds.push_back(std::move(ev));

    if (informed == n && silent_streak >= quiescence_window) break;
  }

  tr.all_informed = informed == n;
  tr.failed = !tr.all_informed;
  return tr;
}

namespace {

void add_check(VerifyReport& rep, const std::string& name, bool passed,
               const std::string& detail) {
  rep.checks.push_back({name, passed, detail});
  rep.all_passed &= passed;
}

}  // namespace

VerifyReport verify_trace(const Trace& tr, const Graph& g, const LevelView& lv,
                          Protocol protocol, const Expectations& exp) {
  VerifyReport rep;
  const int n = g.node_count();
  const int d = lv.eccentricity;

  add_check(rep, "broadcast-complete", tr.all_informed,
            tr.all_informed ? "every node informed" : "uninformed nodes remain");
  if (!tr.all_informed) return rep;

  {
    // Every delivered payload must be the one the source injected.
    bool ok = true;
    std::string detail = "all data receptions carry the broadcast payload";
    const std::string* payload = nullptr;
    if (!tr.rounds.empty())
      for (auto& [u, m] : tr.rounds[0].transmitters)
        if (m.kind == MessageKind::Data) payload = &m.payload;  // the source's send
    for (const RoundEvent& ev : tr.rounds) {
      if (!payload) break;
      for (auto& [u, m] : ev.receptions)
        if (m.kind == MessageKind::Data) {
          if (m.payload != *payload) {
            ok = false;
            detail = "node " + std::to_string(u) + " received a different "
                     "payload at round " + std::to_string(ev.round);
          }
        }
      if (!ok) break;
    }
    add_check(rep, "payload-integrity", ok, detail);
  }

  if (protocol == Protocol::LS || protocol == Protocol::LSACK) {
    {
      bool ok = true;
      std::string detail = exp.exact_level_timing
                               ? "first receipt at round 2*level-2 for every node"
                               : "first receipts within each level's two slots";
      for (NodeId u = 0; u < n && ok; ++u) {
        if (u == g.source()) continue;
        const int deadline = 2 * lv.level[u] - 2;
        const int r = tr.first_receipt[u];
        if (exp.exact_level_timing ? r != deadline
                                   : (r != deadline && r != deadline - 1)) {
          ok = false;
          detail = "node " + std::to_string(u) + " at level " +
                   std::to_string(lv.level[u]) + " informed at round " +
                   std::to_string(r) + ", expected " +
                   (exp.exact_level_timing ? std::to_string(deadline)
                                           : std::to_string(deadline - 1) +
                                                 " or " +
                                                 std::to_string(deadline));
        }
      }
      add_check(rep, "level-timing", ok, detail);
    }
    add_check(rep, "termination-bound", tr.termination_round <= 2 * d,
              "termination at round " + std::to_string(tr.termination_round) +
                  ", bound " + std::to_string(2 * d));
  }

  if (exp.collision_free_first_receipt) {
    bool ok = true;
    std::string detail = "exactly one transmitting neighbor at each first receipt";
    for (NodeId u = 0; u < n && ok; ++u) {
      if (u == g.source()) continue;
      const int r = tr.first_receipt[u];
      int heard = 0;
      for (auto& [v, m] : tr.rounds[r].transmitters)
        if (m.kind == MessageKind::Data && g.has_edge(u, v)) ++heard;
      if (heard != 1) {
        ok = false;
        detail = "node " + std::to_string(u) + " heard " +
                 std::to_string(heard) + " data transmitters at round " +
                 std::to_string(r);
      }
    }
    add_check(rep, "collision-free-first-receipt", ok, detail);
  }

  if (protocol == Protocol::LSACK) {
    if (ls_ack_applicable(d)) {
      const int want = d % 2 != 0 ? 2 * (d - 1) : 2 * d;
      const bool ok = tr.ack_arrival_round && *tr.ack_arrival_round == want;
      add_check(rep, "ack-arrival", ok,
                tr.ack_arrival_round
                    ? "ACK at round " + std::to_string(*tr.ack_arrival_round) +
                          ", expected " + std::to_string(want)
                    : "ACK never reached the source, expected round " +
                          std::to_string(want));
    } else {
      add_check(rep, "ack-arrival", !tr.ack_arrival_round,
                "ACK not applicable (degenerate depth D=" + std::to_string(d) +
                    ")");
    }
  }

  if (protocol == Protocol::OACK) {
    int completion = -1;
    for (NodeId u = 0; u < n; ++u)
      completion = std::max(completion, tr.first_receipt[u]);
    const int limit = exp.max_completion_round.value_or(2 * n - 3);
    add_check(rep, "completion-bound", completion <= limit,
              "last first receipt at round " + std::to_string(completion) +
                  ", bound " + std::to_string(limit));
    const int ack_budget = exp.ack_rounds_after_completion.value_or(n);
    const bool ack_ok =
        tr.ack_arrival_round && *tr.ack_arrival_round <= completion + ack_budget;
    add_check(rep, "ack-bound", ack_ok,
              tr.ack_arrival_round
                  ? "ACK at round " + std::to_string(*tr.ack_arrival_round) +
                        ", bound " + std::to_string(completion + ack_budget)
                  : "ACK never reached the source");
    bool phases_ok = tr.anomalies.empty();
    add_check(rep, "phase-separation", phases_ok,
              phases_ok ? "no round mixed DATA with ACK" : tr.anomalies.front());
  }

  return rep;
}

std::string write_trace_jsonl(const Trace& tr) {
  using nlohmann::json;
  std::ostringstream out;
  for (const RoundEvent& ev : tr.rounds) {
    json rec;
    rec["round"] = ev.round;
    json tx = json::array();
    for (auto& [u, m] : ev.transmitters)
      tx.push_back({{"node", u}, {"kind", message_kind_name(m.kind)}});
    rec["transmitters"] = tx;
    json rx = json::array();
    for (auto& [u, m] : ev.receptions)
      rx.push_back({{"node", u}, {"kind", message_kind_name(m.kind)}});
    rec["receptions"] = rx;
    json cols = json::array();
    for (const CollisionEvent& c : tr.collision_log)
      if (c.round == ev.round)
        cols.push_back({{"node", c.node}, {"transmitters", c.transmitters}});
    rec["collisions"] = cols;
    out << rec.dump() << '\n';
  }
  json summary;
  summary["summary"] = true;
  summary["protocol"] = protocol_name(tr.protocol);
  json fr = json::object();
  for (NodeId u = 0; u < tr.node_count; ++u)
    fr[std::to_string(u)] = tr.first_receipt[u];
  summary["first_receipt"] = fr;
  summary["termination_round"] = tr.termination_round;
  if (tr.ack_arrival_round)
    summary["ack_arrival_round"] = *tr.ack_arrival_round;
  else
    summary["ack_arrival_round"] = nullptr;
  summary["all_informed"] = tr.all_informed;
  summary["failed"] = tr.failed;
  summary["anomalies"] = tr.anomalies;
  out << summary.dump() << '\n';
  return out.str();
}

}  // namespace labelcast
