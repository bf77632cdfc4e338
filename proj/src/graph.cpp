#include "labelcast/graph.hpp"

#include <algorithm>
#include <queue>

namespace labelcast {

Graph::Graph(int node_count,
             const std::vector<std::pair<NodeId, NodeId>>& edges,
             NodeId source)
    : source_(source) {
  if (node_count < 1) throw Error("node_count must be >= 1");
  if (source < 0 || source >= node_count)
    throw Error("source id " + std::to_string(source) + " out of range");

  adj_.assign(node_count, {});
  edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u == v) throw Error("self-loop at node " + std::to_string(u));
    if (u < 0 || v < 0 || u >= node_count || v >= node_count)
      throw Error("edge (" + std::to_string(u) + "," + std::to_string(v) +
                  ") endpoint out of range");
    if (u > v) std::swap(u, v);
    edges_.emplace_back(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (auto [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());

  // Connectivity is a model assumption; reject instead of warn.
  std::vector<char> seen(node_count, 0);
  std::queue<NodeId> q;
  q.push(source_);
  seen[source_] = 1;
  int reached = 1;
  while (!q.empty()) {
    NodeId u = q.front();
    q.pop();
    for (NodeId v : adj_[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        q.push(v);
      }
  }
  if (reached != node_count) throw Error("graph is disconnected");
}

const std::vector<NodeId>& Graph::neighbors(NodeId u) const {
  if (u < 0 || u >= node_count())
    throw Error("node id " + std::to_string(u) + " out of range");
  return adj_[u];
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto& nbrs = neighbors(u);
  if (v < 0 || v >= node_count())
    throw Error("node id " + std::to_string(v) + " out of range");
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

Graph build_graph(int node_count,
                  const std::vector<std::pair<NodeId, NodeId>>& edges,
                  NodeId source) {
  return Graph(node_count, edges, source);
}

LevelView compute_levels(const Graph& g) {
  const int n = g.node_count();
  LevelView lv;
  lv.level.assign(n, -1);
  lv.parents.assign(n, {});
  lv.sons.assign(n, {});

  std::queue<NodeId> q;
  lv.level[g.source()] = 0;
  q.push(g.source());
  while (!q.empty()) {
    NodeId u = q.front();
    q.pop();
    for (NodeId v : g.neighbors(u))
      if (lv.level[v] < 0) {
        lv.level[v] = lv.level[u] + 1;
        q.push(v);
      }
  }

  lv.eccentricity = *std::max_element(lv.level.begin(), lv.level.end());
  lv.buckets.assign(lv.eccentricity + 1, {});
  for (NodeId u = 0; u < n; ++u) lv.buckets[lv.level[u]].push_back(u);
  for (auto [u, v] : g.edges()) {
    if (lv.level[v] - lv.level[u] == 1) {
      lv.sons[u].push_back(v);
      lv.parents[v].push_back(u);
    } else if (lv.level[u] - lv.level[v] == 1) {
      lv.sons[v].push_back(u);
      lv.parents[u].push_back(v);
    }
  }
  return lv;
}

}  // namespace labelcast
