#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace labelcast {

using NodeId = int;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an exhaustive search would exceed its configured cap.
/// Distinct from a negative answer: the question was not decided.
class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& what) : Error(what) {}
};

/// Raised on malformed input text; carries a 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Undirected connected graph over dense node ids 0..n-1 with a designated
/// broadcast source. Immutable after construction.
class Graph {
 public:
  Graph(int node_count, const std::vector<std::pair<NodeId, NodeId>>& edges,
        NodeId source);

  int node_count() const { return static_cast<int>(adj_.size()); }
  NodeId source() const { return source_; }

  /// Neighbor set of u, ascending. Throws on out-of-range ids.
  const std::vector<NodeId>& neighbors(NodeId u) const;

  bool has_edge(NodeId u, NodeId v) const;

  /// Deduplicated edges, endpoints normalized (smaller id first), sorted.
  const std::vector<std::pair<NodeId, NodeId>>& edges() const { return edges_; }

 private:
  NodeId source_;
  std::vector<std::vector<NodeId>> adj_;
  std::vector<std::pair<NodeId, NodeId>> edges_;
};

/// BFS levelling of a graph from its source: levels, buckets S_0..S_D,
/// parent/son sets and the source eccentricity D.
struct LevelView {
  std::vector<int> level;                     // level[u] = d(source, u)
  int eccentricity = 0;                       // D
  std::vector<std::vector<NodeId>> buckets;   // buckets[i] = S_i, ascending ids
  std::vector<std::vector<NodeId>> parents;   // parents[u] = P(u)
  std::vector<std::vector<NodeId>> sons;      // sons[u] = S(u)

  int node_count() const { return static_cast<int>(level.size()); }
};

Graph build_graph(int node_count,
                  const std::vector<std::pair<NodeId, NodeId>>& edges,
                  NodeId source);

LevelView compute_levels(const Graph& g);

}  // namespace labelcast
