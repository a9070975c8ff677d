#include "negdep/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "negdep/concentration.hpp"
#include "negdep/coupling.hpp"
#include "negdep/dependence.hpp"
#include "negdep/io.hpp"
#include "negdep/martingale.hpp"

namespace negdep::cli {

namespace {

using nlohmann::json;

struct MeasureSource {
  std::string family;
  std::string file;

  ExplicitMeasure load() const {
    if (family.empty() == file.empty()) {
      throw Error(ErrorCode::InvalidArgument, "give exactly one of --family or --file");
    }
    return family.empty() ? load_measure(file) : family_from_spec(family);
  }
};

struct Output {
  std::string path;
  std::string format = "json";
};

void add_source(CLI::App* cmd, MeasureSource& src) {
  cmd->add_option("--family", src.family, "measure family spec, e.g. nand:3 (see `negdep family --help`)");
  cmd->add_option("--file", src.file, "measure JSON file");
}

void add_output(CLI::App* cmd, Output& o, std::vector<std::string> formats) {
  cmd->add_option("-o,--output", o.path, "write the result here instead of stdout");
  cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember(std::move(formats)));
}

void emit(const Output& o, const std::string& text, std::ostream& out) {
  if (o.path.empty()) {
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
    return;
  }
  std::ofstream file(o.path);
  if (!file) throw Error(ErrorCode::ParseError, "cannot write '" + o.path + "'");
  file << text;
  if (!text.empty() && text.back() != '\n') file << '\n';
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<int> parse_order(const std::string& s) {
  std::vector<int> order;
  for (const auto& item : split_list(s, ',')) order.push_back(std::stoi(item));
  return order;
}

// ---- commands ------------------------------------------------------------

int cmd_check(const MeasureSource& src, const std::string& notions_flag, const Output& o, std::ostream& out) {
  const ExplicitMeasure m = src.load();
  std::vector<Notion> notions;
  if (notions_flag == "all") {
    notions = all_notions();
  } else {
    for (const auto& name : split_list(notions_flag, ',')) notions.push_back(parse_notion(name));
  }
  if (notions.empty()) throw Error(ErrorCode::InvalidArgument, "no notions selected");
  bool pass = true;
  json reports = json::array();
  std::string text;
  for (Notion notion : notions) {
    NotionReport r = check_notion(m, notion);
    pass = pass && r.passed();
    reports.push_back(to_json(r));
    text += describe(r) + "\n";
  }
  if (o.format == "json") {
    emit(o, json{{"n", m.n()}, {"pass", pass}, {"reports", reports}}.dump(2), out);
  } else {
    emit(o, text, out);
  }
  return pass ? kExitPass : kExitVerdictFailed;
}

int cmd_family(const std::string& spec, const Output& o, std::ostream& out) {
  emit(o, serialize_measure(family_from_spec(spec)), out);
  return kExitPass;
}

int cmd_coupling(const std::string& lower_path, const std::string& upper_path, bool covering, const Output& o,
                 std::ostream& out) {
  const ExplicitMeasure lower = load_measure(lower_path);
  const ExplicitMeasure upper = load_measure(upper_path);
  try {
    const Coupling c = build_monotone_coupling(lower, upper, covering);
    if (o.format == "json") {
      emit(o, json{{"feasible", true}, {"coupling", to_json(c)}}.dump(2), out);
    } else {
      std::string text = "coupling found (displacement " + pretty_rational(coupling_displacement(c)) + ")\n";
      for (const auto& pair : c.mass) {
        text += "  " + to_bitstring(pair.x, lower.n()) + " -> " + to_bitstring(pair.y, lower.n()) + " : " +
                pretty_rational(pair.p) + "\n";
      }
      emit(o, text, out);
    }
    return kExitPass;
  } catch (const DominanceFailure& failure) {
    if (o.format == "json") {
      emit(o, json{{"feasible", false}, {"certificate", to_json(failure.certificate())}}.dump(2), out);
    } else {
      emit(o, std::string("no coupling: ") + failure.what() + "\n  " + to_json(failure.certificate()).dump() + "\n",
           out);
    }
    return kExitVerdictFailed;
  }
}

int cmd_martingale(const MeasureSource& src, const std::string& f_spec, const std::string& order_flag,
                   const Output& o, std::ostream& out) {
  const ExplicitMeasure m = src.load();
  const TestFunction f = function_from_spec(f_spec, m.n());
  try {
    const MartingaleTree tree =
        order_flag == "adaptive" ? build_adaptive_tree(m, f) : fixed_order_tree(m, f, parse_order(order_flag));
    if (o.format == "csv") {
      emit(o, tree_to_csv(tree), out);
    } else if (o.format == "json") {
      emit(o, to_json(tree).dump(2), out);
    } else {
      emit(o, std::string(tree.adaptive ? "adaptive" : "fixed-order") + " tree: " +
                  std::to_string(tree.nodes.size()) + " nodes, Y0 = " + pretty_rational(tree.root().y) +
                  ", max step = " + pretty_rational(max_step(tree)) + "\n",
           out);
    }
    return kExitPass;
  } catch (const IntervalViolation& v) {
    const auto& node = v.node();
    json cert = {{"error", "IntervalViolation"},
                 {"revealed", {{"indices", node.revealed.indices()}, {"values", node.revealed.values()}}},
                 {"pick", node.pick},
                 {"alpha", format_rational(node.alpha)},
                 {"beta", format_rational(node.beta)}};
    emit(o, o.format == "json" ? cert.dump(2) : std::string(v.what()) + "\n", out);
    return kExitVerdictFailed;
  }
}

int cmd_tail(const MeasureSource& src, const std::string& f_spec, const std::string& grid_flag, const Output& o,
             std::ostream& out) {
  const ExplicitMeasure m = src.load();
  const TestFunction f = function_from_spec(f_spec, m.n());
  std::vector<Rational> grid;
  if (grid_flag.empty()) {
    grid = default_t_grid(f);
  } else {
    const auto parts = split_list(grid_flag, ':');
    if (parts.size() != 3) throw Error(ErrorCode::ParseError, "--grid expects FROM:STEP:TO");
    grid = t_grid_range(parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2]));
  }
  const TailReport report = verify_theorem(m, f, grid);
  if (o.format == "csv") {
    emit(o, tail_report_to_csv(report), out);
  } else if (o.format == "json") {
    emit(o, to_json(report).dump(2), out);
  } else {
    std::string text = "mu = " + pretty_rational(report.mu) + (report.verdict ? ", all rows pass\n" : ", FAILED\n");
    for (const auto& row : report.rows) {
      text += "  t=" + pretty_rational(row.t) + " upper=" + pretty_rational(row.upper_exact) +
              " lower=" + pretty_rational(row.lower_exact) + " bound=" + std::to_string(row.bound) +
              (row.pass ? "" : "  FAIL") + "\n";
    }
    emit(o, text, out);
  }
  return report.verdict ? kExitPass : kExitVerdictFailed;
}

int cmd_counterexample(int n, const Output& o, std::ostream& out) {
  if (n < 3 || n > 12) throw Error(ErrorCode::InvalidArgument, "counterexample needs 3 <= n <= 12");
  const ExplicitMeasure m = family_nand(n);
  const TestFunction f = TestFunction::sum(n);
  json doc = {{"n", n}};
  bool pass = true;
  if (n <= enumeration_cap(caps::kNegRegression)) {
    const NotionReport nr = check_neg_regression(m);
    doc["neg_regression"] = to_json(nr);
    pass = pass && nr.passed();
  } else {
    doc["neg_regression"] = "skipped: above the negative-regression enumeration cap";
  }
  std::vector<int> identity(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) identity[static_cast<std::size_t>(i)] = i + 1;
  const MartingaleTree fixed = fixed_order_tree(m, f, identity);
  const MartingaleTree adaptive = build_adaptive_tree(m, f);
  const Rational fixed_step = max_step(fixed, StepMode::Increment);
  const Rational adaptive_step = max_step(adaptive, StepMode::Gap);
  const auto& root = fixed.root();
  const Rational root_step = abs(*root.y0 - root.y);
  const Rational formula = ratio(n - 3, 2) + ratio(2, mpz_class(1) << n);
  const bool separated = fixed_step > 1 && adaptive_step <= 1;
  if (n >= 5) pass = pass && separated;
  pass = pass && adaptive_step <= 1;
  doc["fixed_max_step"] = format_rational(fixed_step);
  doc["fixed_first_step_on_x1_0"] = format_rational(root_step);
  doc["first_step_formula"] = format_rational(formula);
  doc["adaptive_max_step"] = format_rational(adaptive_step);
  doc["adaptive_root_pick"] = adaptive.root().pick;
  doc["separated"] = separated;
  doc["pass"] = pass;
  if (o.format == "json") {
    emit(o, doc.dump(2), out);
  } else {
    emit(o,
         "nand(" + std::to_string(n) + "), f = sum\n  fixed order max step:    " + pretty_rational(fixed_step) +
             "\n  fixed order |Y1 - Y0| at X1=0: " + pretty_rational(root_step) + " (formula " +
             pretty_rational(formula) + ")\n  adaptive max gap:        " + pretty_rational(adaptive_step) +
             "\n  separation (fixed > 1 >= adaptive): " + (separated ? "yes" : "no") + "\n",
         out);
  }
  return pass ? kExitPass : kExitVerdictFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"negdep: exact negative-dependence and concentration checks on {0,1}^n"};
  app.require_subcommand(1);
  app.footer(family_grammar_help() +
             "Exit codes: 0 all checks pass, 1 a verdict failed (certificate printed), 2 usage or input error.\n"
             "NEGDEP_MAX_N overrides the enumeration caps.");

  MeasureSource src;
  Output o;
  std::string notions = "all";
  auto* check = app.add_subcommand("check", "run negative-dependence checkers");
  add_source(check, src);
  check->add_option("--notions", notions, "comma list of nc,cyl,na,nr,cna,sc,rayleigh or 'all'");
  add_output(check, o, {"json", "text"});

  std::string family_spec;
  auto* family = app.add_subcommand("family", "write a generated measure as JSON");
  family->add_option("--spec", family_spec, "family spec")->required();
  family->footer(family_grammar_help());
  add_output(family, o, {"json"});

  std::string lower_path, upper_path;
  bool covering = false;
  auto* coupling = app.add_subcommand("coupling", "build a monotone coupling or a dominance certificate");
  coupling->add_option("--lower", lower_path, "the stochastically smaller measure")->required();
  coupling->add_option("--upper", upper_path, "the stochastically larger measure")->required();
  coupling->add_flag("--covering", covering, "restrict pairs to distance at most 1");
  add_output(coupling, o, {"json", "text"});

  std::string f_spec = "sum";
  std::string order = "adaptive";
  auto* martingale = app.add_subcommand("martingale", "build the Doob martingale tree of f");
  add_source(martingale, src);
  martingale->add_option("--f", f_spec, "sum | parity | const:C | random:SEED[:monotone]");
  martingale->add_option("--order", order, "'adaptive' or a permutation such as 1,2,3");
  add_output(martingale, o, {"json", "csv", "text"});

  std::string grid;
  auto* tail = app.add_subcommand("tail", "compare exact tails with the concentration bound");
  add_source(tail, src);
  tail->add_option("--f", f_spec, "sum | parity | const:C | random:SEED[:monotone]");
  tail->add_option("--grid", grid, "FROM:STEP:TO (default quarter steps over the range of f)");
  add_output(tail, o, {"json", "csv", "text"});

  int n = 0;
  auto* counter = app.add_subcommand("counterexample", "fixed versus adaptive ordering on the NAND measure");
  counter->add_option("--n", n, "number of variables (3..12)")->required();
  add_output(counter, o, {"json", "text"});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*check) return cmd_check(src, notions, o, out);
    if (*family) return cmd_family(family_spec, o, out);
    if (*coupling) return cmd_coupling(lower_path, upper_path, covering, o, out);
    if (*martingale) return cmd_martingale(src, f_spec, order, o, out);
    if (*tail) return cmd_tail(src, f_spec, grid, o, out);
    if (*counter) return cmd_counterexample(n, o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace negdep::cli
