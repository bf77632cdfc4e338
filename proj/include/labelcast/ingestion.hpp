#pragma once

#include <array>
#include <string>

#include "labelcast/graph.hpp"

namespace labelcast {

/// Fixed id order for the seven on-body device positions.
inline constexpr std::array<const char*, 7> kBodyPositions = {
    "navel", "chest", "head", "upper arm", "ankle", "thigh", "wrist"};

int body_position_index(const std::string& name);

/// Pairwise channel attenuation for one posture: mean and standard deviation
/// in dB over the 21 unordered position pairs. The standard deviations are
/// carried as metadata only; edge decisions use the means.
struct AttenuationTable {
  std::string posture;
  double mean_db[7][7] = {};
  double stddev_db[7][7] = {};

  double mean(int a, int b) const { return mean_db[a][b]; }
  double stddev(int a, int b) const { return stddev_db[a][b]; }
};

/// Edge-list format: '#' comments, "n <count> source <id>" header, then one
/// "u v" pair per line.
Graph parse_edge_list(const std::string& text);
std::string write_edge_list(const Graph& g);

/// CSV with a header row naming the seven positions, then 21 rows
/// "nameA,nameB,mean,stddev". A "posture,<name>" line may precede the header.
AttenuationTable parse_attenuation_csv(const std::string& text);

/// Deterministic threshold graph: an edge exists iff the mean attenuation is
/// strictly below threshold_db. Node ids follow kBodyPositions order.
/// A disconnected result is an error naming the unreachable positions.
Graph derive_graph(const AttenuationTable& tbl, double threshold_db,
                   const std::string& source_name);

}  // namespace labelcast
