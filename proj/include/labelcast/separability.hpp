#pragma once

#include <array>
#include <optional>
#include <vector>

#include "labelcast/graph.hpp"

namespace labelcast {

/// Per-level partition (S_{i,1}, S_{i,2}) for levels 1..D-1. Level 0 holds
/// only the source and level D has no sons, so neither needs a partition.
struct Separation {
  // parts[i-1] is the pair for level i; members ascending.
  std::vector<std::pair<std::vector<NodeId>, std::vector<NodeId>>> parts;

  int level_count() const { return static_cast<int>(parts.size()); }
};

struct SeparationVerdict {
  bool accepted = false;
  NodeId witness = -1;     // on reject: a node whose parent counts violate the property
  int witness_level = -1;  // its level
};

/// Decides whether sep is a level separation: for every level i in [1, D-1]
/// and every u in S_{i+1}, |P(u) ∩ S_{i,1}| = 1 or |P(u) ∩ S_{i,2}| = 1.
/// A partition that does not cover S_i, or overlaps, is an input error.
SeparationVerdict check_separation(const LevelView& lv, const Separation& sep);

/// Searches each level independently for a subset S_{i,1} (ascending binary
/// order, node ids ascending mapped to bit positions ascending) satisfying
/// the property; nullopt iff some level admits none. Levels larger than
/// level_cap raise InfeasibleError rather than deciding.
std::optional<Separation> find_separation(const LevelView& lv,
                                          int level_cap = 24);

// ---------------------------------------------------------------------------
// 1-IN-3-SAT and the hardness gadget.

struct Literal {
  int var = 0;          // 0-based variable index
  bool positive = true;
};

struct Formula {
  int var_count = 0;
  std::vector<std::array<Literal, 3>> clauses;
};

/// Validates counts and literal ranges.
void validate_formula(const Formula& f);

enum class GadgetRole { Source, UNa, UNb, UY, UYi, UNi, VA, VB, VXi, VCj };

struct RoleTag {
  GadgetRole role = GadgetRole::Source;
  int index = -1;  // variable (UYi/UNi/VXi) or clause (VCj) index, 0-based
};

/// The reduction graph: s at level 0, S_1 the variable/anchor row, S_2 the
/// checker row. Node ids follow construction order so roles are positional.
struct GadgetMap {
  Graph graph;
  std::vector<RoleTag> roles;  // roles[id]

  NodeId source_id() const { return 0; }
  NodeId u_na() const { return 1; }
  NodeId u_nb() const { return 2; }
  NodeId u_y() const { return 3; }
  NodeId u_yi(int i) const { return 4 + 2 * i; }
  NodeId u_ni(int i) const { return 5 + 2 * i; }
  NodeId v_a() const { return 4 + 2 * var_count; }
  NodeId v_b() const { return 5 + 2 * var_count; }
  NodeId v_xi(int i) const { return 6 + 2 * var_count + i; }
  NodeId v_cj(int j) const { return 6 + 3 * var_count + j; }

  int var_count = 0;
  int clause_count = 0;
};

GadgetMap build_gadget(const Formula& f);

using Assignment = std::vector<bool>;  // indexed by variable

/// First assignment in ascending binary order (x1 = least-significant bit)
/// satisfying exactly one literal per clause; nullopt if none exists.
/// var_count above var_cap raises InfeasibleError.
std::optional<Assignment> brute_force_1in3(const Formula& f, int var_cap = 24);

/// Reads an assignment off an accepted separation of a gadget:
/// x_i is true iff u_{y_i} shares a part with u_y.
Assignment extract_assignment(const GadgetMap& gm, const Separation& sep);

/// True iff every clause has exactly one satisfied literal.
bool satisfies_1in3(const Formula& f, const Assignment& a);

struct ReductionReport {
  bool satisfiable = false;
  bool separable = false;
  bool agree = false;
  // Cross-checks, meaningful only when both verdicts are positive:
  bool forward_ok = true;   // assignment -> separation passes check_separation
  bool backward_ok = true;  // separation -> assignment satisfies the formula
};

/// Runs both sides of the reduction and both proof directions.
ReductionReport verify_reduction(const Formula& f);

// Text formats -------------------------------------------------------------

/// "p 1in3 <k> <l>" header, then one clause per line as three signed
/// 1-based literals (no trailing 0). '#' comment lines allowed.
Formula parse_formula(const std::string& text);

/// One line per level: "level <i> part1: <ids> part2: <ids>".
std::string write_separation(const Separation& sep);

}  // namespace labelcast
