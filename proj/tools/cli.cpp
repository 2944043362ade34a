#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "emoplan/emotion.hpp"
#include "emoplan/grounding.hpp"
#include "emoplan/pddl/parser.hpp"
#include "emoplan/planner.hpp"
#include "emoplan/validator.hpp"

namespace emoplan::cli {
namespace {

namespace fs = std::filesystem;

// Exits the current command with a code and a message for stderr.
struct Abort {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Abort{kUsage, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !out.flush()) throw Abort{kUsage, "cannot write " + path};
}

struct Inputs {
  pddl::Domain domain;
  pddl::Problem problem;
};

Inputs load(const std::string& domain_path, const std::string& problem_path) {
  Inputs in;
  const std::string dtext = read_file(domain_path);
  const std::string ptext = read_file(problem_path);
  try {
    in.domain = pddl::parse_domain(dtext);
  } catch (const pddl::ParseError& e) {
    throw Abort{kUsage, domain_path + ":" + e.what()};
  }
  try {
    in.problem = pddl::parse_problem(ptext, in.domain);
  } catch (const pddl::ParseError& e) {
    throw Abort{kUsage, problem_path + ":" + e.what()};
  }
  return in;
}

Plan load_plan(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_plan(text);
  } catch (const PlanSyntaxError& e) {
    throw Abort{kUsage, path + ": " + e.what()};
  }
}

struct GenOptions {
  int children = 3;
  int toys = 3;
  std::string out = ".";
  double degradation_rate = emotion::kDefaultDegradationRate;
  std::uint64_t seed = 0;
};

int cmd_gen(const GenOptions& o, std::ostream& out) {
  if (o.children < 1 || o.toys < 1) {
    throw Abort{kUsage, "--children and --toys must be at least 1"};
  }
  emotion::DomainConfig dc;
  dc.children = o.children;
  dc.degradation_rate = o.degradation_rate;
  emotion::ProblemConfig pc;
  pc.children = o.children;
  pc.toys = o.toys;
  pc.init_pads = emotion::default_pads(o.children, o.seed);

  std::error_code ec;
  fs::create_directories(o.out, ec);
  const fs::path dir(o.out);
  const std::string dpath = (dir / "domain.pddl").string();
  const std::string ppath = (dir / "problem.pddl").string();
  write_file(dpath, pddl::print_domain(emotion::synthesize_domain(dc)));
  write_file(ppath, pddl::print_problem(emotion::synthesize_problem(pc)));
  out << dpath << '\n' << ppath << '\n';
  return kOk;
}

struct PlanOptions {
  std::string domain, problem, output;
  double timeout = 60.0;
  double epsilon = kDefaultEpsilon;
  std::uint64_t seed = 0;
  int portfolio = 1;
};

int cmd_plan(const PlanOptions& o, std::ostream& out, std::ostream& err) {
  const Inputs in = load(o.domain, o.problem);
  const Task task = ground(in.domain, in.problem);
  PlannerConfig cfg;
  cfg.timeout = o.timeout;
  cfg.epsilon = o.epsilon;
  cfg.seed = o.seed;
  const PlanResult result = plan_portfolio(task, cfg, o.portfolio);
  if (!result.solved()) {
    err << to_string(result.status) << ": " << result.reason << '\n';
    return kFailed;
  }
  const std::string text = print_plan(result.plan);
  if (o.output.empty()) {
    out << text;
  } else {
    write_file(o.output, text);
  }
  out << "makespan " << format_time(result.plan.makespan()) << '\n';
  return kOk;
}

struct ValidateOptions {
  std::string domain, problem, plan;
  double epsilon = kDefaultEpsilon;
  bool all_violations = false;
};

int cmd_validate(const ValidateOptions& o, std::ostream& out) {
  const Inputs in = load(o.domain, o.problem);
  const Plan p = load_plan(o.plan);
  const Task task = ground(in.domain, in.problem);
  ValidationOptions opts;
  opts.epsilon = o.epsilon;
  opts.all_violations = o.all_violations;
  const ValidationReport report = validate(task, p, opts);
  if (report.valid()) {
    out << "valid, makespan " << format_time(report.makespan) << '\n';
    return kOk;
  }
  out << "invalid\n";
  for (const auto& v : report.violations) out << v.describe(task) << '\n';
  return kFailed;
}

struct SimulateOptions {
  std::string domain, problem, plan, csv;
  double dt = 1.0;
  double epsilon = kDefaultEpsilon;
};

int cmd_simulate(const SimulateOptions& o, std::ostream& err) {
  if (!(o.dt > 0.0)) throw Abort{kUsage, "--dt must be positive"};
  const Inputs in = load(o.domain, o.problem);
  const Plan p = load_plan(o.plan);
  const Task task = ground(in.domain, in.problem);
  ValidationOptions opts;
  opts.epsilon = o.epsilon;
  try {
    const Trajectory traj = simulate_trajectory(task, p, o.dt, opts);
    write_file(o.csv, trajectory_csv(traj));
  } catch (const InvalidPlan& e) {
    err << "plan is invalid: " << e.report().violations.front().describe(task) << '\n';
    return kFailed;
  }
  return kOk;
}

int cmd_ground(const std::string& domain, const std::string& problem, std::ostream& out) {
  const Inputs in = load(domain, problem);
  std::size_t total = 0;
  for (const auto& [name, n] : count_groundings(in.domain, in.problem)) {
    out << name << ' ' << n << '\n';
    total += n;
  }
  out << "total " << total << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Temporal planner for child-robot interaction with PAD emotion effects", "emoplan"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "write the benchmark domain.pddl and problem.pddl");
  g->add_option("--children", gen.children, "number of children")->capture_default_str();
  g->add_option("--toys", gen.toys, "number of toys")->capture_default_str();
  g->add_option("--out", gen.out, "output directory")->capture_default_str();
  g->add_option("--degradation-rate", gen.degradation_rate,
                "PAD loss per second of task action (pleasure and arousal)")
      ->capture_default_str();
  g->add_option("--seed", gen.seed, "seed for the initial PAD of children beyond c3")
      ->capture_default_str();

  PlanOptions pl;
  auto* p = app.add_subcommand("plan", "search for a plan");
  p->add_option("-d,--domain", pl.domain, "domain file")->required();
  p->add_option("-p,--problem", pl.problem, "problem file")->required();
  p->add_option("-o,--output", pl.output, "plan file (default: standard output)");
  p->add_option("--timeout", pl.timeout, "wall-clock budget in seconds")->capture_default_str();
  p->add_option("--epsilon", pl.epsilon, "separation between events")->capture_default_str();
  p->add_option("--seed", pl.seed, "open-list tie-break seed")->capture_default_str();
  p->add_option("--portfolio", pl.portfolio, "independent seeded searches run in parallel")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  ValidateOptions va;
  auto* v = app.add_subcommand("validate", "check a plan");
  v->add_option("-d,--domain", va.domain, "domain file")->required();
  v->add_option("-p,--problem", va.problem, "problem file")->required();
  v->add_option("-P,--plan", va.plan, "plan file")->required();
  v->add_option("--epsilon", va.epsilon, "separation between events")->capture_default_str();
  v->add_flag("--all-violations", va.all_violations,
              "diagnostic: keep replaying past failures and list all of them");

  SimulateOptions si;
  auto* s = app.add_subcommand("simulate", "write the PAD trajectory of a valid plan as CSV");
  s->add_option("-d,--domain", si.domain, "domain file")->required();
  s->add_option("-p,--problem", si.problem, "problem file")->required();
  s->add_option("-P,--plan", si.plan, "plan file")->required();
  s->add_option("--csv", si.csv, "output CSV file")->required();
  s->add_option("--dt", si.dt, "sample period in seconds")->capture_default_str();
  s->add_option("--epsilon", si.epsilon, "separation between events")->capture_default_str();

  std::string gr_domain, gr_problem;
  bool count = false;
  auto* gr = app.add_subcommand("ground", "debug view of the ground action set");
  gr->add_option("-d,--domain", gr_domain, "domain file")->required();
  gr->add_option("-p,--problem", gr_problem, "problem file")->required();
  gr->add_flag("--count", count, "print instances per schema");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    CLI::App* bad = &app;
    for (auto* sub : app.get_subcommands()) bad = sub;
    err << bad->help();
    return kUsage;
  }

  try {
    if (*g) return cmd_gen(gen, out);
    if (*p) return cmd_plan(pl, out, err);
    if (*v) return cmd_validate(va, out);
    if (*s) return cmd_simulate(si, err);
    if (*gr) return cmd_ground(gr_domain, gr_problem, out);
  } catch (const Abort& a) {
    err << a.message << '\n';
    if (*g && (gen.children < 1 || gen.toys < 1)) err << g->help();
    return a.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace emoplan::cli
