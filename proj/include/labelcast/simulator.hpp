#pragma once

#include <optional>
#include <string>
#include <vector>

#include "labelcast/graph.hpp"
#include "labelcast/labelling.hpp"
#include "labelcast/protocols.hpp"

namespace labelcast {

enum class Protocol { OACK, LS, LSACK };

std::string protocol_name(Protocol p);
Protocol protocol_from_name(const std::string& name);
Scheme scheme_for(Protocol p);

struct RoundEvent {
  int round = 0;
  std::vector<std::pair<NodeId, Message>> transmitters;  // ascending ids
  std::vector<std::pair<NodeId, Message>> receptions;    // resolved deliveries
};

struct CollisionEvent {
  int round = 0;
  NodeId node = 0;
  std::vector<NodeId> transmitters;  // the >= 2 neighbors heard at once
};

struct Trace {
  Protocol protocol = Protocol::LS;
  int node_count = 0;
  NodeId source = 0;
  std::vector<RoundEvent> rounds;
  std::vector<int> first_receipt;         // -1 for the source and uninformed
  std::optional<int> ack_arrival_round;   // round the source heard ACK
  int termination_round = -1;             // last round with any transmission
  bool all_informed = false;
  bool failed = false;                    // stopped at max_rounds with uninformed nodes
  std::vector<CollisionEvent> collision_log;
  std::vector<std::string> anomalies;
};

/// One synchronous round: a node with exactly one transmitting neighbor
/// receives that message, otherwise nothing; a transmitter hears nothing
/// itself (half-duplex).
std::vector<std::optional<Message>> resolve_round(
    const Graph& g, const std::vector<std::optional<Message>>& outgoing);

/// Drives the per-node automata round by round. Stops after
/// `quiescence_window` consecutive silent rounds once every node is
/// informed, or at max_rounds (flagging failure if nodes stayed uninformed).
Trace run_simulation(const Graph& g, const LabelSet& labels, Protocol protocol,
                     const std::string& payload, int max_rounds,
                     int quiescence_window = 3);

struct Expectations {
  // LS / LSACK: demand first_receipt == 2*level - 2 for every non-source
  // node (the generated acceptance families satisfy this exactly).
  bool exact_level_timing = true;
  bool collision_free_first_receipt = true;
  std::optional<int> max_completion_round;           // OACK default: 2n - 3
  std::optional<int> ack_rounds_after_completion;    // OACK default: n
};

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  bool all_passed = true;
  std::vector<VerifyCheck> checks;
};

VerifyReport verify_trace(const Trace& tr, const Graph& g, const LevelView& lv,
                          Protocol protocol, const Expectations& exp = {});

/// JSON-lines rendering: one object per round, then a summary object.
std::string write_trace_jsonl(const Trace& tr);

}  // namespace labelcast
