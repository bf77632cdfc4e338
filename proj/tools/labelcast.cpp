#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "labelcast/ingestion.hpp"
#include "labelcast/labelling.hpp"
#include "labelcast/selfcheck.hpp"
#include "labelcast/separability.hpp"
#include "labelcast/simulator.hpp"

namespace {

using namespace labelcast;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

Graph load_graph(const std::string& path) { return parse_edge_list(slurp(path)); }

Separation require_separation(const LevelView& lv) {
  auto sep = find_separation(lv);
  if (!sep) throw Error("graph is not level-separable");
  return *sep;
}

LabelSet make_labels(const Graph& g, const LevelView& lv, Scheme scheme) {
  switch (scheme) {
    case Scheme::OACK3: return label_oack(g);
    case Scheme::LS1: return label_ls(lv, require_separation(lv));
    case Scheme::LSACK2: return label_ls_ack(lv, require_separation(lv));
  }
  throw Error("unreachable");
}

const char* kPostureFiles[7] = {
    "posture1_walking.csv",      "posture2_running.csv",
    "posture3_walking_weakly.csv", "posture4_sitting_down.csv",
    "posture5_lying_down.csv",   "posture6_sleeping.csv",
    "posture7_jacket.csv"};

int cmd_check_separable(const std::string& graph_path) {
  Graph g = load_graph(graph_path);
  LevelView lv = compute_levels(g);
  auto sep = find_separation(lv);
  if (!sep) {
    std::cout << "not level-separable\n";
    return 1;
  }
  std::cout << "level-separable (D=" << lv.eccentricity << ")\n"
            << write_separation(*sep);
  return 0;
}

int cmd_find_separation(const std::string& graph_path, const std::string& out) {
  Graph g = load_graph(graph_path);
  LevelView lv = compute_levels(g);
  auto sep = find_separation(lv);
  if (!sep) {
    std::cout << "not level-separable\n";
    return 1;
  }
  const std::string text = write_separation(*sep);
  if (out.empty())
    std::cout << text;
  else
    spill(out, text);
  return 0;
}

int cmd_label(const std::string& graph_path, const std::string& scheme_name_arg,
              const std::string& out) {
  Graph g = load_graph(graph_path);
  LevelView lv = compute_levels(g);
  LabelSet ls = make_labels(g, lv, scheme_from_name(scheme_name_arg));
  const std::string text = write_label_file(ls);
  if (out.empty())
    std::cout << text;
  else
    spill(out, text);
  return 0;
}

int cmd_simulate(const std::string& graph_path, const std::string& scheme_arg,
                 const std::string& labels_path, const std::string& protocol_arg,
                 int max_rounds, const std::string& trace_path, bool verify,
                 bool bounded_timing) {
  Graph g = load_graph(graph_path);
  LevelView lv = compute_levels(g);
  Protocol protocol = protocol_from_name(protocol_arg);

  LabelSet ls;
  if (!labels_path.empty()) {
    ls = parse_label_file(slurp(labels_path));
  } else {
    Scheme scheme =
        scheme_arg.empty() ? scheme_for(protocol) : scheme_from_name(scheme_arg);
    if (scheme != scheme_for(protocol))
      throw Error("scheme " + scheme_name(scheme) + " does not drive protocol " +
                  protocol_arg);
    ls = make_labels(g, lv, scheme);
  }

  if (max_rounds <= 0) max_rounds = 4 * g.node_count() + 8;
  Trace tr = run_simulation(g, ls, protocol, "\xB5", max_rounds);
  if (!trace_path.empty()) spill(trace_path, write_trace_jsonl(tr));

  std::cout << "all_informed " << (tr.all_informed ? "yes" : "no") << '\n'
            << "termination_round " << tr.termination_round << '\n';
  if (tr.ack_arrival_round)
    std::cout << "ack_arrival_round " << *tr.ack_arrival_round << '\n';
  else if (protocol != Protocol::LS)
    std::cout << "ack_arrival_round "
              << (protocol == Protocol::LSACK && !ls_ack_applicable(lv.eccentricity)
                      ? "not applicable (degenerate depth)"
                      : "none")
              << '\n';

  if (!verify) return tr.failed ? 1 : 0;
  Expectations exp;
  if (bounded_timing) exp.exact_level_timing = false;
  VerifyReport rep = verify_trace(tr, g, lv, protocol, exp);
  for (const VerifyCheck& c : rep.checks)
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail
              << '\n';
  return rep.all_passed ? 0 : 1;
}

int cmd_reduce(const std::string& formula_path, bool verify) {
  Formula f = parse_formula(slurp(formula_path));
  if (!verify) {
    GadgetMap gm = build_gadget(f);
    std::cout << write_edge_list(gm.graph);
    return 0;
  }
  ReductionReport rep = verify_reduction(f);
  std::cout << "satisfiable " << (rep.satisfiable ? "yes" : "no") << '\n'
            << "separable " << (rep.separable ? "yes" : "no") << '\n';
  if (rep.agree)
    std::cout << "verdicts agree (both "
              << (rep.satisfiable ? "positive" : "negative") << ")\n";
  else
    std::cout << "verdicts DISAGREE\n";
  if (rep.satisfiable && rep.separable)
    std::cout << "assignment->separation "
              << (rep.forward_ok ? "validates" : "FAILS") << '\n'
              << "separation->assignment "
              << (rep.backward_ok ? "validates" : "FAILS") << '\n';
  return rep.agree && rep.forward_ok && rep.backward_ok ? 0 : 1;
}

int cmd_derive_wban(int posture, double threshold, const std::string& source,
                    const std::string& data_dir, const std::string& out) {
  if (posture < 1 || posture > 7) throw Error("posture must be 1..7");
  AttenuationTable tbl =
      parse_attenuation_csv(slurp(data_dir + "/" + kPostureFiles[posture - 1]));
  Graph g = derive_graph(tbl, threshold, source);
  const std::string text = write_edge_list(g);
  if (out.empty())
    std::cout << text;
  else
    spill(out, text);
  return 0;
}

int cmd_selftest(const std::string& data_dir) {
  AcceptanceConfig cfg;
  cfg.data_dir = data_dir;
  if (const char* seed_env = std::getenv("LABELCAST_SEED"))
    cfg.seed = std::strtoull(seed_env, nullptr, 0);
  bool all = true;
  for (const CriterionResult& r : run_acceptance(cfg)) {
    std::cout << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " ("
              << r.name << "): " << r.detail << '\n';
    all &= r.passed;
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"labelcast: labelled wireless broadcast toolkit and simulator"};
  app.require_subcommand(1);

  std::string graph_path, out_path, scheme_arg, labels_path, trace_path;
  std::string protocol_arg, formula_path, source_name, data_dir = "data";
  int max_rounds = 0, posture = 1;
  double threshold = 0;
  bool verify = false, bounded_timing = false;

  auto* check = app.add_subcommand("check-separable",
                                   "decide the level-separable property");
  check->add_option("--graph", graph_path, "edge-list file")->required();

  auto* find = app.add_subcommand("find-separation",
                                  "emit a level separation if one exists");
  find->add_option("--graph", graph_path, "edge-list file")->required();
  find->add_option("--out", out_path, "write the separation here");

  auto* label = app.add_subcommand("label", "compute a labelling scheme");
  label->add_option("--graph", graph_path, "edge-list file")->required();
  label->add_option("--scheme", scheme_arg, "OACK3, LS1 or LSACK2")->required();
  label->add_option("--out", out_path, "write the label file here");

  auto* sim = app.add_subcommand("simulate", "run a broadcast protocol");
  sim->add_option("--graph", graph_path, "edge-list file")->required();
  sim->add_option("--protocol", protocol_arg, "OACK, LS or LSACK")->required();
  sim->add_option("--scheme", scheme_arg, "labelling scheme to precompute");
  sim->add_option("--labels", labels_path, "label file to load instead");
  sim->add_option("--max-rounds", max_rounds, "round budget");
  sim->add_option("--trace", trace_path, "write a JSONL trace here");
  sim->add_flag("--verify", verify, "check the round-bound guarantees");
  sim->add_flag("--bounded-timing", bounded_timing,
                "also accept receipts one round before the level deadline");

  auto* reduce = app.add_subcommand("reduce",
                                    "build the 1-IN-3-SAT hardness gadget");
  reduce->add_option("--formula", formula_path, "1in3 formula file")->required();
  reduce->add_flag("--verify", verify,
                   "brute-force both sides and cross-validate");

  auto* wban = app.add_subcommand("derive-wban",
                                  "threshold graph from an attenuation table");
  wban->add_option("--posture", posture, "posture index 1..7")->required();
  wban->add_option("--threshold", threshold, "receiver sensitivity in dB")
      ->required();
  wban->add_option("--source", source_name, "source body position")->required();
  wban->add_option("--data-dir", data_dir, "attenuation table directory");
  wban->add_option("--out", out_path, "write the edge list here");

  auto* selftest = app.add_subcommand("selftest", "run the acceptance battery");
  selftest->add_option("--data-dir", data_dir, "attenuation table directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check_separable(graph_path);
    if (find->parsed()) return cmd_find_separation(graph_path, out_path);
    if (label->parsed()) return cmd_label(graph_path, scheme_arg, out_path);
    if (sim->parsed())
      return cmd_simulate(graph_path, scheme_arg, labels_path, protocol_arg,
                          max_rounds, trace_path, verify, bounded_timing);
    if (reduce->parsed()) return cmd_reduce(formula_path, verify);
    if (wban->parsed())
      return cmd_derive_wban(posture, threshold, source_name, data_dir,
                             out_path);
    if (selftest->parsed()) return cmd_selftest(data_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
