#include <doctest.h>

#include "labelcast/protocols.hpp"

using namespace labelcast;

namespace {

NodeState fresh(Label label, bool is_source = false) {
  return make_node_state(7, is_source, label, "mu");
}

std::optional<Message> data() { return Message{MessageKind::Data, "mu"}; }

// Runs the automaton with a single reception at `receipt_round` and returns
// the rounds at which it transmitted each message kind.
template <typename Step>
std::vector<std::pair<int, MessageKind>> timeline(Step step, NodeState st,
                                                  int receipt_round,
                                                  int horizon) {
  std::vector<std::pair<int, MessageKind>> sent;
  for (int r = 0; r <= horizon; ++r) {
    std::optional<Message> inbox =
        r == receipt_round + 1 ? data() : std::nullopt;
    StepResult res = step(st, r, inbox);
    st = res.state;
    if (res.outbox.message) sent.emplace_back(r, res.outbox.message->kind);
  }
  return sent;
}

}  // namespace

TEST_CASE("the source transmits the payload at round zero and then rests") {
  NodeState st = fresh({}, true);
  StepResult r0 = step_oack(st, 0, std::nullopt);
  REQUIRE(r0.outbox.message);
  CHECK(r0.outbox.message->kind == MessageKind::Data);
  CHECK(r0.outbox.message->payload == "mu");
  StepResult r1 = step_oack(r0.state, 1, data());
  CHECK(!r1.outbox.message);
}

TEST_CASE("an X1 node relays the payload two rounds after its receipt") {
  NodeState st = fresh({1, 0, 0});
  StepResult s5 = step_oack(st, 5, data());  // receipt round 4
  CHECK(!s5.outbox.message);
  StepResult s6 = step_oack(s5.state, 6, std::nullopt);
  REQUIRE(s6.outbox.message);
  CHECK(s6.outbox.message->kind == MessageKind::Data);
  CHECK(s6.outbox.message->payload == "mu");
  StepResult s7 = step_oack(s6.state, 7, std::nullopt);
  CHECK(!s7.outbox.message);
}

TEST_CASE("ACK and Stay go out the round after the receipt") {
  // The inbox seen at step r carries the reception of round r-1.
  StepResult ack = step_oack(fresh({0, 0, 1}), 4, data());  // receipt round 3
  REQUIRE(ack.outbox.message);
  CHECK(ack.outbox.message->kind == MessageKind::Ack);

  StepResult stay = step_oack(fresh({1, 1, 0}), 4, data());
  REQUIRE(stay.outbox.message);
  CHECK(stay.outbox.message->kind == MessageKind::Stay);
}

TEST_CASE("an all-zero label never transmits") {
  NodeState st = fresh({0, 0, 0});
  StepResult r = step_oack(st, 2, data());
  st = r.state;
  CHECK(!r.outbox.message);
  for (int round = 3; round < 10; ++round) {
    StepResult res = step_oack(st, round, std::nullopt);
    st = res.state;
    CHECK(!res.outbox.message);
  }
}

TEST_CASE("a stay extends the sender's window by one transmission") {
  NodeState st = fresh({1, 0, 0});
  StepResult a = step_oack(st, 1, data());  // receipt round 0
  StepResult b = step_oack(a.state, 2, std::nullopt);
  REQUIRE(b.outbox.message);  // transmits at round 2
  StepResult c = step_oack(b.state, 3, std::nullopt);
  CHECK(!c.outbox.message);
  // The stay lands at round 3, one round after the transmission.
  StepResult d = step_oack(c.state, 4, Message{MessageKind::Stay, {}});
  REQUIRE(d.outbox.message);  // transmitted at r-2 and heard the stay at r-1
  CHECK(d.outbox.message->kind == MessageKind::Data);
  StepResult e = step_oack(d.state, 5, std::nullopt);
  CHECK(!e.outbox.message);
  StepResult f = step_oack(e.state, 6, std::nullopt);
  CHECK(!f.outbox.message);  // no further stay, window closed
}

TEST_CASE("a stay without a matching transmission is ignored") {
  NodeState st = fresh({1, 0, 0});
  StepResult a = step_oack(st, 5, Message{MessageKind::Stay, {}});
  CHECK(!a.outbox.message);
  StepResult b = step_oack(a.state, 6, std::nullopt);
  CHECK(!b.outbox.message);
}

TEST_CASE("an X3 relay forwards the ACK one round after hearing it") {
  NodeState st = fresh({1, 0, 1});
  StepResult a = step_oack(st, 9, data());  // receipt round 8
  StepResult b = step_oack(a.state, 10, std::nullopt);
  REQUIRE(b.outbox.message);  // X1 fire at receipt+2
  StepResult c = step_oack(b.state, 13, Message{MessageKind::Ack, {}});
  REQUIRE(c.outbox.message);  // ACK heard at round 12, relayed at 13
  CHECK(c.outbox.message->kind == MessageKind::Ack);

  NodeState no_relay = fresh({1, 0, 0});
  StepResult e = step_oack(no_relay, 9, data());
  StepResult f = step_oack(e.state, 13, Message{MessageKind::Ack, {}});
  CHECK(!f.outbox.message);
}

TEST_CASE("ls parity table") {
  // Even receipt, X1=1: transmit at r+1.
  auto sent = timeline(step_ls, fresh({1, 0, 0}), 0, 8);
  REQUIRE(sent.size() == 1);
  CHECK(sent[0] == std::pair{1, MessageKind::Data});
  // Even receipt, X1=0: transmit at r+2.
  sent = timeline(step_ls, fresh({0, 0, 0}), 2, 8);
  REQUIRE(sent.size() == 1);
  CHECK(sent[0] == std::pair{4, MessageKind::Data});
  // Odd receipt, X1=1: r+2; X1=0: r+3.
  sent = timeline(step_ls, fresh({1, 0, 0}), 1, 8);
  CHECK(sent[0] == std::pair{3, MessageKind::Data});
  sent = timeline(step_ls, fresh({0, 0, 0}), 1, 8);
  CHECK(sent[0] == std::pair{4, MessageKind::Data});
}

TEST_CASE("a second receipt does not schedule a second transmission") {
  NodeState st = fresh({0, 0, 0});
  StepResult a = step_ls(st, 1, data());
  st = a.state;
  int transmissions = a.outbox.message.has_value();
  for (int r = 2; r < 10; ++r) {
    // The payload keeps arriving; only the first receipt may schedule.
    StepResult res = step_ls(st, r, data());
    st = res.state;
    transmissions += res.outbox.message.has_value();
  }
  CHECK(transmissions == 1);
}

TEST_CASE("lsack marked node probes and then originates the ACK") {
  // Even receipt at round 2: data r+2, pACK r+4, silence at the check round
  // r+6, ACK at r+8.
  auto sent = timeline(step_ls_ack, fresh({0, 1, 0}), 2, 12);
  REQUIRE(sent.size() == 3);
  CHECK(sent[0] == std::pair{4, MessageKind::Data});
  CHECK(sent[1] == std::pair{6, MessageKind::Pack});
  CHECK(sent[2] == std::pair{10, MessageKind::Ack});

  // Odd receipt at round 1 with X1=1: data r+2, pACK r+5, ACK r+9.
  sent = timeline(step_ls_ack, fresh({1, 1, 0}), 1, 12);
  REQUIRE(sent.size() == 3);
  CHECK(sent[0] == std::pair{3, MessageKind::Data});
  CHECK(sent[1] == std::pair{6, MessageKind::Pack});
  CHECK(sent[2] == std::pair{10, MessageKind::Ack});
}

TEST_CASE("a pACK heard at the check round suppresses the origination") {
  NodeState st = fresh({0, 1, 0});
  StepResult a = step_ls_ack(st, 3, data());  // receipt round 2, check round 8
  st = a.state;
  std::vector<std::pair<int, MessageKind>> sent;
  for (int r = 4; r <= 14; ++r) {
    std::optional<Message> inbox;
    if (r == 9) inbox = Message{MessageKind::Pack, {}};  // received at round 8
    StepResult res = step_ls_ack(st, r, inbox);
    st = res.state;
    if (res.outbox.message) sent.emplace_back(r, res.outbox.message->kind);
  }
  REQUIRE(sent.size() == 2);  // data and pACK only, no ACK
  CHECK(sent[0].second == MessageKind::Data);
  CHECK(sent[1].second == MessageKind::Pack);
}

TEST_CASE("a pACK outside the check round does not suppress") {
  NodeState st = fresh({0, 1, 0});
  StepResult a = step_ls_ack(st, 3, data());  // receipt 2, check 8, ack 10
  st = a.state;
  bool acked = false;
  for (int r = 4; r <= 12; ++r) {
    std::optional<Message> inbox;
    if (r == 5) inbox = Message{MessageKind::Pack, {}};  // round 4, too early
    StepResult res = step_ls_ack(st, r, inbox);
    st = res.state;
    if (res.outbox.message && res.outbox.message->kind == MessageKind::Ack)
      acked = true;
  }
  CHECK(acked);
}

TEST_CASE("only marked nodes relay the ACK, two rounds later, once") {
  NodeState st = fresh({0, 1, 0});
  StepResult a = step_ls_ack(st, 3, data());
  st = a.state;
  // Suppress the own origination first.
  StepResult sup = step_ls_ack(st, 9, Message{MessageKind::Pack, {}});
  st = sup.state;
  StepResult b = step_ls_ack(st, 11, Message{MessageKind::Ack, {}});
  st = b.state;
  CHECK(!b.outbox.message);
  StepResult c = step_ls_ack(st, 12, std::nullopt);
  REQUIRE(c.outbox.message);
  CHECK(c.outbox.message->kind == MessageKind::Ack);
  StepResult d = step_ls_ack(c.state, 13, Message{MessageKind::Ack, {}});
  StepResult e = step_ls_ack(d.state, 14, std::nullopt);
  CHECK(!d.outbox.message);
  CHECK(!e.outbox.message);  // k_ack set, relays only once

  NodeState unmarked = fresh({0, 0, 0});
  StepResult f = step_ls_ack(unmarked, 3, data());
  StepResult g = step_ls_ack(f.state, 11, Message{MessageKind::Ack, {}});
  StepResult h = step_ls_ack(g.state, 12, std::nullopt);
  CHECK(!h.outbox.message);
}
