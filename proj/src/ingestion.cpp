#include "labelcast/ingestion.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace labelcast {

int body_position_index(const std::string& name) {
  for (int i = 0; i < 7; ++i)
    if (name == kBodyPositions[i]) return i;
  throw Error("unknown body position '" + name + "'");
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int node_count = -1;
  NodeId source = -1;
  std::vector<std::pair<NodeId, NodeId>> edges;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream row(line);
    std::string first;
    if (!(row >> first) || first[0] == '#') continue;
    if (node_count < 0) {
      std::string source_kw;
      if (first != "n" || !(row >> node_count >> source_kw >> source) ||
          source_kw != "source")
        throw ParseError("expected header 'n <node_count> source <id>'",
                         lineno);
      continue;
    }
    NodeId u, v;
    std::istringstream pair_row(line);
    if (!(pair_row >> u >> v))
      throw ParseError("expected edge line 'u v'", lineno);
    NodeId extra;
    if (pair_row >> extra) throw ParseError("trailing tokens on edge line", lineno);
    edges.emplace_back(u, v);
  }
  if (node_count < 0) throw ParseError("missing 'n <node_count> source <id>' header");
  try {
    return build_graph(node_count, edges, source);
  } catch (const Error& e) {
    throw ParseError(e.what(), lineno);
  }
}

std::string write_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "n " << g.node_count() << " source " << g.source() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  for (std::string& f : fields) {
    while (!f.empty() && f.front() == ' ') f.erase(f.begin());
    while (!f.empty() && f.back() == ' ') f.pop_back();
  }
  return fields;
}

}  // namespace

AttenuationTable parse_attenuation_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  AttenuationTable tbl;
  bool have_header = false;
  bool pair_seen[7][7] = {};
  int pairs = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields = split_csv(line);
    if (!have_header) {
      if (fields.size() == 2 && fields[0] == "posture") {
        tbl.posture = fields[1];
        continue;
      }
      if (fields.size() != 7)
        throw ParseError("header must name the seven positions", lineno);
      for (int i = 0; i < 7; ++i)
        if (fields[i] != kBodyPositions[i])
          throw ParseError("header position " + std::to_string(i) +
                               " must be '" + kBodyPositions[i] + "', got '" +
                               fields[i] + "'",
                           lineno);
      have_header = true;
      continue;
    }
    if (fields.size() != 4)
      throw ParseError("expected 'nameA,nameB,mean,stddev'", lineno);
    int a, b;
    double mean, stddev;
    try {
      a = body_position_index(fields[0]);
      b = body_position_index(fields[1]);
      mean = std::stod(fields[2]);
      stddev = std::stod(fields[3]);
    } catch (const std::exception& e) {
      throw ParseError(e.what(), lineno);
    }
    if (a == b) throw ParseError("pair must name two distinct positions", lineno);
    if (mean <= 0 || stddev <= 0)
      throw ParseError("values must be positive", lineno);
    if (pair_seen[a][b])
      throw ParseError("duplicate pair " + fields[0] + "," + fields[1], lineno);
    pair_seen[a][b] = pair_seen[b][a] = true;
    tbl.mean_db[a][b] = tbl.mean_db[b][a] = mean;
    tbl.stddev_db[a][b] = tbl.stddev_db[b][a] = stddev;
    ++pairs;
  }
  if (!have_header) throw ParseError("missing position header row");
  if (pairs != 21)
    throw ParseError("table has " + std::to_string(pairs) +
                     " pairs, expected all 21");
  return tbl;
}

Graph derive_graph(const AttenuationTable& tbl, double threshold_db,
                   const std::string& source_name) {
  if (threshold_db <= 0) throw Error("threshold must be positive");
  const int source = body_position_index(source_name);
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (int a = 0; a < 7; ++a)
    for (int b = a + 1; b < 7; ++b)
      if (tbl.mean(a, b) < threshold_db) edges.emplace_back(a, b);

  // Report the unreachable positions by name instead of the generic
  // connectivity error.
  std::vector<char> seen(7, 0);
  std::queue<int> q;
  q.push(source);
  seen[source] = 1;
  std::vector<std::vector<int>> adj(7);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        q.push(v);
      }
  }
  std::string isolated;
  for (int i = 0; i < 7; ++i)
    if (!seen[i]) isolated += std::string(isolated.empty() ? "" : ", ") +
                              kBodyPositions[i];
  if (!isolated.empty())
    throw Error("threshold " + std::to_string(threshold_db) +
                " dB disconnects the graph; unreachable positions: " + isolated);
  return build_graph(7, edges, source);
}

}  // namespace labelcast
