#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "labelcast/ingestion.hpp"
#include "labelcast/labelling.hpp"
#include "labelcast/selfcheck.hpp"
#include "labelcast/separability.hpp"
#include "labelcast/simulator.hpp"

namespace py = pybind11;
using namespace labelcast;

namespace {

Formula formula_from_lists(int var_count,
                           const std::vector<std::vector<int>>& clauses) {
  Formula f;
  f.var_count = var_count;
  for (const auto& c : clauses) {
    if (c.size() != 3) throw Error("each clause needs exactly 3 literals");
    std::array<Literal, 3> clause;
    for (int i = 0; i < 3; ++i) {
      if (c[i] == 0) throw Error("literals are nonzero 1-based integers");
      clause[i] = {std::abs(c[i]) - 1, c[i] > 0};
    }
    f.clauses.push_back(clause);
  }
  validate_formula(f);
  return f;
}

std::string role_string(const GadgetMap& gm, NodeId u) {
  const RoleTag& t = gm.roles.at(u);
  switch (t.role) {
    case GadgetRole::Source: return "s";
    case GadgetRole::UNa: return "u_na";
    case GadgetRole::UNb: return "u_nb";
    case GadgetRole::UY: return "u_y";
    case GadgetRole::UYi: return "u_y" + std::to_string(t.index + 1);
    case GadgetRole::UNi: return "u_n" + std::to_string(t.index + 1);
    case GadgetRole::VA: return "v_a";
    case GadgetRole::VB: return "v_b";
    case GadgetRole::VXi: return "v_x" + std::to_string(t.index + 1);
    case GadgetRole::VCj: return "v_c" + std::to_string(t.index + 1);
  }
  return "?";
}

std::vector<std::pair<NodeId, std::string>> kinds_of(
    const std::vector<std::pair<NodeId, Message>>& items) {
  std::vector<std::pair<NodeId, std::string>> out;
  out.reserve(items.size());
  for (auto& [u, m] : items) out.emplace_back(u, message_kind_name(m.kind));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "labelled wireless broadcast toolkit (C++ core)";

  py::register_exception<Error>(m, "Error");
  py::register_exception<InfeasibleError>(m, "InfeasibleError");

  py::class_<Graph>(m, "Graph")
      .def(py::init([](int n, const std::vector<std::pair<int, int>>& edges,
                       int source) { return build_graph(n, edges, source); }),
           py::arg("node_count"), py::arg("edges"), py::arg("source"))
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("source", &Graph::source)
      .def("neighbors",
           [](const Graph& g, NodeId u) { return g.neighbors(u); })
      .def("has_edge", &Graph::has_edge)
      .def_property_readonly("edges", &Graph::edges)
      .def("__repr__", [](const Graph& g) {
        std::ostringstream s;
        s << "Graph(n=" << g.node_count() << ", edges=" << g.edges().size()
          << ", source=" << g.source() << ")";
        return s.str();
      });

  py::class_<LevelView>(m, "LevelView")
      .def_readonly("level", &LevelView::level)
      .def_readonly("eccentricity", &LevelView::eccentricity)
      .def_readonly("buckets", &LevelView::buckets)
      .def_readonly("parents", &LevelView::parents)
      .def_readonly("sons", &LevelView::sons);

  py::class_<Separation>(m, "Separation")
      .def(py::init<>())
      .def_readwrite("parts", &Separation::parts);

  py::class_<SeparationVerdict>(m, "SeparationVerdict")
      .def_readonly("accepted", &SeparationVerdict::accepted)
      .def_readonly("witness", &SeparationVerdict::witness)
      .def_readonly("witness_level", &SeparationVerdict::witness_level);

  py::enum_<Scheme>(m, "Scheme")
      .value("OACK3", Scheme::OACK3)
      .value("LS1", Scheme::LS1)
      .value("LSACK2", Scheme::LSACK2);

  py::enum_<Protocol>(m, "Protocol")
      .value("OACK", Protocol::OACK)
      .value("LS", Protocol::LS)
      .value("LSACK", Protocol::LSACK);

  py::class_<Label>(m, "Label")
      .def_readonly("x1", &Label::x1)
      .def_readonly("x2", &Label::x2)
      .def_readonly("x3", &Label::x3)
      .def("__repr__", [](const Label& l) {
        return "Label(" + std::to_string(l.x1) + std::to_string(l.x2) +
               std::to_string(l.x3) + ")";
      });

  py::class_<LabelSet>(m, "LabelSet")
      .def_readonly("scheme", &LabelSet::scheme)
      .def_readonly("labels", &LabelSet::labels);

  py::class_<BroadcastSchedule>(m, "BroadcastSchedule")
      .def_readonly("informed_round", &BroadcastSchedule::informed_round)
      .def_readonly("transmit_rounds", &BroadcastSchedule::transmit_rounds)
      .def_readonly("informer", &BroadcastSchedule::informer)
      .def_readonly("frontier_history", &BroadcastSchedule::frontier_history)
      .def_readonly("dominator_history", &BroadcastSchedule::dominator_history)
      .def_readonly("stay_senders", &BroadcastSchedule::stay_senders)
      .def_readonly("completion_round", &BroadcastSchedule::completion_round);

  py::class_<Formula>(m, "Formula")
      .def(py::init(&formula_from_lists), py::arg("var_count"),
           py::arg("clauses"))
      .def_property_readonly("var_count",
                             [](const Formula& f) { return f.var_count; })
      .def_property_readonly("clauses", [](const Formula& f) {
        std::vector<std::vector<int>> out;
        for (auto& c : f.clauses) {
          std::vector<int> one;
          for (auto& lit : c) one.push_back((lit.positive ? 1 : -1) * (lit.var + 1));
          out.push_back(one);
        }
        return out;
      });

  py::class_<GadgetMap>(m, "GadgetMap")
      .def_property_readonly("graph",
                             [](const GadgetMap& gm) { return gm.graph; })
      .def_property_readonly("var_count",
                             [](const GadgetMap& gm) { return gm.var_count; })
      .def_property_readonly("clause_count",
                             [](const GadgetMap& gm) { return gm.clause_count; })
      .def("role_of", &role_string, py::arg("node"));

  py::class_<ReductionReport>(m, "ReductionReport")
      .def_readonly("satisfiable", &ReductionReport::satisfiable)
      .def_readonly("separable", &ReductionReport::separable)
      .def_readonly("agree", &ReductionReport::agree)
      .def_readonly("forward_ok", &ReductionReport::forward_ok)
      .def_readonly("backward_ok", &ReductionReport::backward_ok);

  py::class_<RoundEvent>(m, "RoundEvent")
      .def_readonly("round", &RoundEvent::round)
      .def_property_readonly(
          "transmitters",
          [](const RoundEvent& ev) { return kinds_of(ev.transmitters); })
      .def_property_readonly("receptions", [](const RoundEvent& ev) {
        return kinds_of(ev.receptions);
      });

  py::class_<Trace>(m, "Trace")
      .def_readonly("rounds", &Trace::rounds)
      .def_readonly("first_receipt", &Trace::first_receipt)
      .def_readonly("ack_arrival_round", &Trace::ack_arrival_round)
      .def_readonly("termination_round", &Trace::termination_round)
      .def_readonly("all_informed", &Trace::all_informed)
      .def_readonly("failed", &Trace::failed)
      .def_readonly("anomalies", &Trace::anomalies);

  py::class_<VerifyCheck>(m, "VerifyCheck")
      .def_readonly("name", &VerifyCheck::name)
      .def_readonly("passed", &VerifyCheck::passed)
      .def_readonly("detail", &VerifyCheck::detail);

  py::class_<VerifyReport>(m, "VerifyReport")
      .def_readonly("all_passed", &VerifyReport::all_passed)
      .def_readonly("checks", &VerifyReport::checks);

  py::class_<AttenuationTable>(m, "AttenuationTable")
      .def_readonly("posture", &AttenuationTable::posture)
      .def("mean",
           [](const AttenuationTable& t, const std::string& a,
              const std::string& b) {
             return t.mean(body_position_index(a), body_position_index(b));
           })
      .def("stddev", [](const AttenuationTable& t, const std::string& a,
                        const std::string& b) {
        return t.stddev(body_position_index(a), body_position_index(b));
      });

  py::class_<CriterionResult>(m, "CriterionResult")
      .def_readonly("id", &CriterionResult::id)
      .def_readonly("name", &CriterionResult::name)
      .def_readonly("passed", &CriterionResult::passed)
      .def_readonly("detail", &CriterionResult::detail);

  m.def("parse_edge_list", &parse_edge_list, py::arg("text"));
  m.def("write_edge_list", &write_edge_list, py::arg("graph"));
  m.def("compute_levels", &compute_levels, py::arg("graph"));
  m.def("check_separation", &check_separation, py::arg("levels"),
        py::arg("separation"));
  m.def("find_separation", &find_separation, py::arg("levels"),
        py::arg("level_cap") = 24);
  m.def("build_gadget", &build_gadget, py::arg("formula"));
  m.def("brute_force_1in3", &brute_force_1in3, py::arg("formula"),
        py::arg("var_cap") = 24);
  m.def("extract_assignment", &extract_assignment, py::arg("gadget"),
        py::arg("separation"));
  m.def("satisfies_1in3", &satisfies_1in3, py::arg("formula"),
        py::arg("assignment"));
  m.def("verify_reduction", &verify_reduction, py::arg("formula"));
  m.def("parse_formula", &parse_formula, py::arg("text"));
  m.def("write_separation", &write_separation, py::arg("separation"));
  m.def("compute_beta_schedule", &compute_beta_schedule, py::arg("graph"));
  m.def("label_oack", &label_oack, py::arg("graph"));
  m.def("label_ls", &label_ls, py::arg("levels"), py::arg("separation"));
  m.def("label_ls_ack", &label_ls_ack, py::arg("levels"), py::arg("separation"));
  m.def("ls_ack_applicable", &ls_ack_applicable, py::arg("eccentricity"));
  m.def("write_label_file", &write_label_file, py::arg("labels"));
  m.def("parse_label_file", &parse_label_file, py::arg("text"));
  m.def(
      "run_simulation",
      [](const Graph& g, const LabelSet& labels, Protocol protocol,
         const std::string& payload, int max_rounds, int quiescence_window) {
        if (max_rounds <= 0) max_rounds = 4 * g.node_count() + 8;
        return run_simulation(g, labels, protocol, payload, max_rounds,
                              quiescence_window);
      },
      py::arg("graph"), py::arg("labels"), py::arg("protocol"),
      py::arg("payload") = "mu", py::arg("max_rounds") = 0,
      py::arg("quiescence_window") = 3);
  m.def(
      "verify_trace",
      [](const Trace& tr, const Graph& g, const LevelView& lv,
         Protocol protocol, bool exact_level_timing) {
        Expectations exp;
        exp.exact_level_timing = exact_level_timing;
        return verify_trace(tr, g, lv, protocol, exp);
      },
      py::arg("trace"), py::arg("graph"), py::arg("levels"),
      py::arg("protocol"), py::arg("exact_level_timing") = true);
  m.def("write_trace_jsonl", &write_trace_jsonl, py::arg("trace"));
  m.def("parse_attenuation_csv", &parse_attenuation_csv, py::arg("text"));
  m.def("derive_graph", &derive_graph, py::arg("table"), py::arg("threshold_db"),
        py::arg("source"));
  m.def(
      "run_acceptance",
      [](uint64_t seed, int ls_instances, int oack_instances,
         int formula_instances, int checker_instances,
         const std::string& data_dir) {
        AcceptanceConfig cfg;
        cfg.seed = seed;
        cfg.ls_instances = ls_instances;
        cfg.oack_instances = oack_instances;
        cfg.formula_instances = formula_instances;
        cfg.checker_instances = checker_instances;
        cfg.data_dir = data_dir;
        return run_acceptance(cfg);
      },
      py::arg("seed") = 0x5eedcafe, py::arg("ls_instances") = 1000,
      py::arg("oack_instances") = 500, py::arg("formula_instances") = 200,
      py::arg("checker_instances") = 1000, py::arg("data_dir") = "data");
}
