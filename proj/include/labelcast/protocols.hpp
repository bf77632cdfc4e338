#pragma once

#include <optional>
#include <string>

#include "labelcast/labelling.hpp"

namespace labelcast {

enum class MessageKind { Data, Stay, Ack, Pack };

std::string message_kind_name(MessageKind k);

struct Message {
  MessageKind kind = MessageKind::Data;
  std::string payload;  // the broadcast message for Data, empty otherwise
};

/// Constant-size per-node automaton state. Rounds of key events are kept as
/// plain integers; nothing here grows with the network or with time.
struct NodeState {
  NodeId id = 0;
  bool is_source = false;
  Label label;
  std::string sourcemsg;        // empty until informed
  bool sent_data = false;       // k
  bool sent_ack = false;        // k_ack
  int first_receipt_round = -1;  // round in which the first Data arrived
  int last_data_tx_round = -2;
  int stay_heard_round = -2;
  int ack_heard_round = -2;
  // Scheduled transmissions (absolute rounds, -1 = none pending).
  int data_tx_round = -1;
  int pack_tx_round = -1;
  int pack_check_round = -1;  // the single round whose pACK suppresses the ACK
  int ack_tx_round = -1;

  bool informed() const { return is_source || first_receipt_round >= 0; }
};

struct Outbox {
  std::optional<Message> message;  // at most one transmission per round
};

struct StepResult {
  NodeState state;
  Outbox outbox;
};

NodeState make_node_state(NodeId id, bool is_source, Label label,
                          const std::string& payload);

/// One round of the 3-bit acknowledged broadcast automaton. `inbox` is the
/// collision-resolved reception of round `round - 1` (nullopt on silence or
/// collision).
StepResult step_oack(NodeState st, int round,
                     const std::optional<Message>& inbox);

/// One round of the 1-bit level-synchronous broadcast automaton.
StepResult step_ls(NodeState st, int round, const std::optional<Message>& inbox);

/// One round of the 2-bit broadcast-with-acknowledgment automaton.
StepResult step_ls_ack(NodeState st, int round,
                       const std::optional<Message>& inbox);

}  // namespace labelcast
