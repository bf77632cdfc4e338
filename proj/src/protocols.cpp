#include "labelcast/protocols.hpp"

namespace labelcast {

std::string message_kind_name(MessageKind k) {
  switch (k) {
    case MessageKind::Data: return "DATA";
    case MessageKind::Stay: return "STAY";
    case MessageKind::Ack: return "ACK";
    case MessageKind::Pack: return "PACK";
  }
  return "?";
}

NodeState make_node_state(NodeId id, bool is_source, Label label,
                          const std::string& payload) {
  NodeState st;
  st.id = id;
  st.is_source = is_source;
  st.label = label;
  if (is_source) st.sourcemsg = payload;
  return st;
}

namespace {

// Folds the resolved reception of round - 1 into the state. Unexpected
// messages fall through: every branch below guards on positive conditions.
void absorb(NodeState& st, int round, const std::optional<Message>& inbox) {
  if (!inbox) return;
  switch (inbox->kind) {
    case MessageKind::Data:
      if (!st.is_source && st.first_receipt_round < 0) {
        st.first_receipt_round = round - 1;
        st.sourcemsg = inbox->payload;
      }
      break;
    case MessageKind::Stay:
      st.stay_heard_round = round - 1;
      break;
    case MessageKind::Ack:
      st.ack_heard_round = round - 1;
      break;
    case MessageKind::Pack:
      break;  // handled by the 2-bit automaton only
  }
}

}  // namespace

StepResult step_oack(NodeState st, int round,
                     const std::optional<Message>& inbox) {
  Outbox out;
  if (st.is_source) {
    if (round == 0) out.message = Message{MessageKind::Data, st.sourcemsg};
    return {st, out};
  }
  absorb(st, round, inbox);
  if (st.first_receipt_round < 0) return {st, out};

  const Label& l = st.label;
  if (st.first_receipt_round == round - 2) {
    if (l.x1) {
      out.message = Message{MessageKind::Data, st.sourcemsg};
      st.last_data_tx_round = round;
    }
  } else if (st.first_receipt_round == round - 1) {
    if (!l.x1 && !l.x2 && l.x3) {
      out.message = Message{MessageKind::Ack, {}};
    } else if (l.x2) {
      out.message = Message{MessageKind::Stay, {}};
    }
  } else if (st.stay_heard_round == round - 1) {
    if (st.last_data_tx_round == round - 2) {
      out.message = Message{MessageKind::Data, st.sourcemsg};
      st.last_data_tx_round = round;
    }
  } else if (st.ack_heard_round == round - 1) {
    if (l.x3) out.message = Message{MessageKind::Ack, {}};
  }
  return {st, out};
}

StepResult step_ls(NodeState st, int round, const std::optional<Message>& inbox) {
  Outbox out;
  if (st.is_source) {
    if (round == 0) out.message = Message{MessageKind::Data, st.sourcemsg};
    return {st, out};
  }
  const bool was_informed = st.first_receipt_round >= 0;
  absorb(st, round, inbox);
  if (!was_informed && st.first_receipt_round >= 0 && !st.sent_data) {
    const int r = st.first_receipt_round;
    if (r % 2 != 0)
      st.data_tx_round = st.label.x1 ? r + 2 : r + 3;
    else
      st.data_tx_round = st.label.x1 ? r + 1 : r + 2;
    st.sent_data = true;  // the one permitted transmission is now booked
  }
  if (st.data_tx_round == round) {
    out.message = Message{MessageKind::Data, st.sourcemsg};
    st.data_tx_round = -1;
  }
  return {st, out};
}

StepResult step_ls_ack(NodeState st, int round,
                       const std::optional<Message>& inbox) {
  Outbox out;
  if (st.is_source) {
    if (round == 0) out.message = Message{MessageKind::Data, st.sourcemsg};
    return {st, out};
  }
  const bool was_informed = st.first_receipt_round >= 0;
  absorb(st, round, inbox);

  if (!was_informed && st.first_receipt_round >= 0 && !st.sent_data) {
    const int r = st.first_receipt_round;
    const bool odd = r % 2 != 0;
    st.data_tx_round = st.label.x1 ? (odd ? r + 2 : r + 1)
                                   : (odd ? r + 3 : r + 2);
    st.sent_data = true;
    if (st.label.x2) {
      // The probe goes out two rounds after the data relay slot of this
      // level; a pACK heard at exactly check-round + 0 reveals a marked son
      // below, so only silence there makes this node the ACK origin.
      st.pack_tx_round = odd ? r + 5 : r + 4;
      st.pack_check_round = odd ? r + 7 : r + 6;
      st.ack_tx_round = odd ? r + 9 : r + 8;
    }
  }

  if (inbox && inbox->kind == MessageKind::Pack &&
      round - 1 == st.pack_check_round) {
    st.ack_tx_round = -1;  // someone below carries the chain further
  }
  if (inbox && inbox->kind == MessageKind::Ack && st.label.x2 && !st.sent_ack) {
    st.ack_tx_round = round + 1;  // received at round - 1, relayed two later
    st.sent_ack = true;
  }

  if (st.data_tx_round == round) {
    out.message = Message{MessageKind::Data, st.sourcemsg};
    st.data_tx_round = -1;
  } else if (st.pack_tx_round == round) {
    out.message = Message{MessageKind::Pack, {}};
    st.pack_tx_round = -1;
  } else if (st.ack_tx_round == round) {
    out.message = Message{MessageKind::Ack, {}};
    st.ack_tx_round = -1;
    st.sent_ack = true;
  }
  return {st, out};
}

}  // namespace labelcast
