#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "labelcast/graph.hpp"
#include "labelcast/separability.hpp"

namespace labelcast {

enum class Scheme { OACK3, LS1, LSACK2 };

int scheme_width(Scheme s);
std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

struct Label {
  uint8_t x1 = 0;
  uint8_t x2 = 0;
  uint8_t x3 = 0;
};

struct LabelSet {
  Scheme scheme = Scheme::LS1;
  std::vector<Label> labels;  // indexed by node id; source all-zero

  int node_count() const { return static_cast<int>(labels.size()); }
};

/// Offline schedule of the frontier/dominating-set broadcast that backs
/// the 3-bit labelling. All containers use rounds as absolute indices;
/// data transmissions land on even rounds, Stay notifications on odd ones.
struct BroadcastSchedule {
  std::vector<int> informed_round;            // source = -1
  std::vector<std::vector<int>> transmit_rounds;
  std::vector<NodeId> informer;               // unique transmitter heard at informing; source = -1
  std::vector<std::vector<NodeId>> frontier_history;   // Frnt per selection step
  std::vector<std::vector<NodeId>> dominator_history;  // miniD per selection step
  std::vector<std::pair<NodeId, int>> stay_senders;    // (node, stay round)
  int completion_round = -1;                  // last informing round
};

/// Computes a schedule under which the per-node broadcast automaton informs
/// every node within 2n-3 rounds. Greedy dominating-set selection with
/// bounded backtracking; raises InfeasibleError if the search budget is
/// exhausted (never observed on the tested families).
BroadcastSchedule compute_beta_schedule(const Graph& g);

/// 3-bit labelling for arbitrary connected graphs (n >= 2): X1 marks
/// dominating-set members, X2 Stay senders, X3 the ACK back-path with the
/// generator holding 001.
LabelSet label_oack(const Graph& g);

/// 1-bit labelling for level-separable graphs: X1 = 1 on S_{i,1} members.
LabelSet label_ls(const LevelView& lv, const Separation& sep);

/// 2-bit labelling: X1 as label_ls, X2 marks one parent-chain from the
/// half-way level floor(D/2)-1 down to a son of the source. Depths whose
/// half-way level would be 0 (D <= 3) get an empty chain and no ACK.
LabelSet label_ls_ack(const LevelView& lv, const Separation& sep);

/// True iff the scheme's pACK/ACK machinery is active at this depth.
bool ls_ack_applicable(int eccentricity);

// Label file format: "scheme <NAME>" header, then one "<id> <bits>" line
// per node, X1 first.
std::string write_label_file(const LabelSet& ls);
LabelSet parse_label_file(const std::string& text);

}  // namespace labelcast
