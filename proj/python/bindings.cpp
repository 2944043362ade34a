#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cctype>
#include <memory>

#include "emoplan/emotion.hpp"
#include "emoplan/grounding.hpp"
#include "emoplan/pddl/parser.hpp"
#include "emoplan/planner.hpp"
#include "emoplan/validator.hpp"

namespace py = pybind11;
using namespace emoplan;

namespace {

// Owns the parsed inputs together with their grounding.
struct PyTask {
  pddl::Domain domain;
  pddl::Problem problem;
  Task task;
};

std::shared_ptr<PyTask> load(const std::string& domain_text, const std::string& problem_text) {
  auto t = std::make_shared<PyTask>();
  t->domain = pddl::parse_domain(domain_text);
  t->problem = pddl::parse_problem(problem_text, t->domain);
  t->task = ground(t->domain, t->problem);
  return t;
}

py::tuple pad_tuple(const PadState& p) { return py::make_tuple(p.pleasure, p.arousal, p.dominance); }

std::string capitalized(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

emotion::Strategy parse_strategy(const std::string& name) {
  const std::string s = capitalized(name);
  if (s == "Accommodate") return emotion::Strategy::Accommodate;
  if (s == "Maintain") return emotion::Strategy::Maintain;
  if (s == "Improve") return emotion::Strategy::Improve;
  throw py::value_error("unknown strategy " + name);
}

emotion::EmotionLabel parse_emotion(const std::string& s) {
  auto label = emotion::parse_label(capitalized(s));
  if (!label) throw py::value_error("unknown emotion " + s);
  return *label;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Temporal planning with PAD emotion effects";

  py::register_exception<pddl::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<PlanSyntaxError>(m, "PlanSyntaxError", PyExc_ValueError);

  py::class_<PyTask, std::shared_ptr<PyTask>>(m, "Task")
      .def_property_readonly("action_count",
                             [](const PyTask& t) { return t.task.actions().size(); })
      .def_property_readonly("children", [](const PyTask& t) { return t.task.children(); })
      .def("ground_counts",
           [](const PyTask& t) { return count_groundings(t.domain, t.problem); })
      .def("print_domain", [](const PyTask& t) { return pddl::print_domain(t.domain); })
      .def("print_problem", [](const PyTask& t) { return pddl::print_problem(t.problem); });

  m.def("load", &load, py::arg("domain"), py::arg("problem"),
        "Parse and ground a domain/problem pair given as PDDL text.");

  m.def(
      "plan",
      [](const PyTask& t, double timeout, double epsilon, std::uint64_t seed, int portfolio) {
        PlannerConfig cfg;
        cfg.timeout = timeout;
        cfg.epsilon = epsilon;
        cfg.seed = seed;
        PlanResult r;
        {
          py::gil_scoped_release release;
          r = plan_portfolio(t.task, cfg, portfolio);
        }
        py::dict out;
        out["status"] = to_string(r.status);
        out["reason"] = r.reason;
        out["plan"] = r.solved() ? py::object(py::str(print_plan(r.plan))) : py::none();
        out["makespan"] = r.solved() ? py::object(py::float_(r.plan.makespan())) : py::none();
        out["expanded"] = r.stats.expanded;
        return out;
      },
      py::arg("task"), py::arg("timeout") = 60.0, py::arg("epsilon") = kDefaultEpsilon,
      py::arg("seed") = 0, py::arg("portfolio") = 1);

  m.def(
      "validate",
      [](const PyTask& t, const std::string& plan_text, double epsilon, bool all_violations) {
        ValidationOptions opts;
        opts.epsilon = epsilon;
        opts.all_violations = all_violations;
        const ValidationReport r = validate(t.task, parse_plan(plan_text), opts);
        py::dict out;
        out["valid"] = r.valid();
        out["makespan"] = r.makespan;
        py::list violations;
        for (const auto& v : r.violations) {
          py::dict d;
          d["kind"] = to_string(v.kind);
          d["time"] = v.time;
          d["text"] = v.describe(t.task);
          violations.append(d);
        }
        out["violations"] = violations;
        return out;
      },
      py::arg("task"), py::arg("plan"), py::arg("epsilon") = kDefaultEpsilon,
      py::arg("all_violations") = false);

  m.def(
      "simulate",
      [](const PyTask& t, const std::string& plan_text, double dt) {
        try {
          return trajectory_csv(simulate_trajectory(t.task, parse_plan(plan_text), dt));
        } catch (const InvalidPlan& e) {
          throw py::value_error(e.report().violations.front().describe(t.task));
        }
      },
      py::arg("task"), py::arg("plan"), py::arg("dt") = 1.0,
      "Trajectory CSV of a valid plan.");

  m.def(
      "classify",
      [](double p, double a, double d) {
        return std::string(emotion::to_string(emotion::classify(PadState{p, a, d})));
      },
      py::arg("pleasure"), py::arg("arousal"), py::arg("dominance"));

  m.def(
      "expected_delta",
      [](const std::string& strategy, const std::string& emotion, double duration) {
        return pad_tuple(
            emotion::expected_delta(parse_strategy(strategy), parse_emotion(emotion), duration));
      },
      py::arg("strategy"), py::arg("emotion"), py::arg("duration"));

  m.def(
      "generate",
      [](int children, int toys, double degradation_rate, std::uint64_t seed) {
        if (children < 1 || toys < 1) throw py::value_error("children and toys must be >= 1");
        emotion::DomainConfig dc;
        dc.children = children;
        dc.degradation_rate = degradation_rate;
        emotion::ProblemConfig pc;
        pc.children = children;
        pc.toys = toys;
        pc.init_pads = emotion::default_pads(children, seed);
        return py::make_tuple(pddl::print_domain(emotion::synthesize_domain(dc)),
                              pddl::print_problem(emotion::synthesize_problem(pc)));
      },
      py::arg("children") = 3, py::arg("toys") = 3,
      py::arg("degradation_rate") = emotion::kDefaultDegradationRate, py::arg("seed") = 0,
      "Benchmark (domain, problem) PDDL text.");
}
