#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "labelcast/graph.hpp"
#include "labelcast/separability.hpp"

namespace labelcast {

/// Deterministic 64-bit generator (splitmix64) so instance corpora are
/// identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}
  uint64_t next();
  /// Uniform draw in [0, bound).
  int below(int bound);
  bool chance(double p);

 private:
  uint64_t state_;
};

Graph random_tree(Rng& rng, int max_nodes);
/// Random tree plus extra edges between nodes of the same level; levels and
/// parent sets are unchanged, so the result stays level-separable. Verified
/// with check_separation before returning.
Graph random_separable_graph(Rng& rng, int max_nodes);
Graph random_connected_graph(Rng& rng, int max_nodes);
Formula random_formula(Rng& rng, int max_vars, int max_clauses);
/// Connected graph whose level buckets all stay within max_level_size.
Graph random_small_level_graph(Rng& rng, int max_level_size);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AcceptanceConfig {
  uint64_t seed = 0x5eedcafe;
  int ls_instances = 1000;
  int oack_instances = 500;
  int formula_instances = 200;
  int checker_instances = 1000;
  std::string data_dir = "data";  // bundled attenuation tables
};

/// Runs the whole acceptance battery; one result per criterion.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg = {});

}  // namespace labelcast
