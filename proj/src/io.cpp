#include "negdep/io.hpp"

#include <cstdio>
#include <sstream>

namespace negdep {

namespace {

using nlohmann::json;

std::string q(const Rational& r) { return format_rational(r); }

json bitstrings(const std::vector<Bits>& points, int width) {
  json out = json::array();
  for (Bits p : points) out.push_back(to_bitstring(p, width));
  return out;
}

json assignment_json(const Assignment& a) {
  std::string values;
  for (int v : a.values()) values.push_back(v ? '1' : '0');
  return {{"indices", a.indices()}, {"values", values}};
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json certificate_json(Notion notion, const Certificate& cert) {
  return std::visit(
      [notion](const auto& c) -> json {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, PairwiseCertificate>) {
          return {{"type", "pair"}, {"i", c.i}, {"j", c.j}, {"covariance", q(c.covariance)}};
        } else if constexpr (std::is_same_v<T, CylinderCertificate>) {
          return {{"type", "cylinder"},
                  {"subset", c.subset},
                  {"complemented", c.complemented},
                  {"product_expectation", q(c.product_expectation)},
                  {"product_of_marginals", q(c.product_of_marginals)}};
        } else if constexpr (std::is_same_v<T, AssociationCertificate>) {
          return {{"type", "upsets"},
                  {"conditioned_on", assignment_json(c.conditioned_on)},
                  {"I", c.left},
                  {"J", c.right},
                  {"A", bitstrings(c.up_set_left, static_cast<int>(c.left.size()))},
                  {"B", bitstrings(c.up_set_right, static_cast<int>(c.right.size()))},
                  {"covariance", q(c.covariance)}};
        } else if constexpr (std::is_same_v<T, ConditionalCertificate>) {
          const int k = static_cast<int>(c.revealed.size());
          if (notion == Notion::StochasticCovering) {
            return {{"type", "covering"},
                    {"I", c.revealed},
                    {"a", to_bitstring(c.larger, k)},
                    {"a_prime", to_bitstring(c.smaller, k)},
                    {"cut", to_json(c.cut)}};
          }
          return {{"type", "regression"},
                  {"J", c.revealed},
                  {"a", to_bitstring(c.smaller, k)},
                  {"b", to_bitstring(c.larger, k)},
                  {"cut", to_json(c.cut)}};
        } else {
          json z = json::array();
          for (const auto& v : c.point) z.push_back(q(v));
          return {{"type", "rayleigh"}, {"i", c.i}, {"j", c.j}, {"z", z}, {"delta", q(c.delta)}};
        }
      },
      cert);
}

json node_json(const MartingaleTree& tree, int id) {
  const auto& node = tree.nodes[static_cast<std::size_t>(id)];
  json out = {{"revealed", assignment_json(node.revealed)},
              {"probability", q(node.probability)},
              {"y", q(node.y)},
              {"pick", node.pick}};
  if (node.is_leaf()) return out;
  out["p0"] = q(node.p0);
  out["p1"] = q(node.p1);
  out["alpha"] = q(node.alpha);
  out["beta"] = q(node.beta);
  if (node.pick_info) out["pick_info"] = to_json(*node.pick_info);
  json children = json::object();
  for (int c = 0; c < 2; ++c) {
    if (node.children[c] >= 0) children[c == 0 ? "0" : "1"] = node_json(tree, node.children[c]);
  }
  out["children"] = std::move(children);
  return out;
}

}  // namespace

json to_json(const ExplicitMeasure& m) { return json::parse(serialize_measure(m, -1)); }

json to_json(const DominanceCertificate& cert) {
  json out = {{"kind", cert.kind == CutKind::DownClosed ? "down_closed" : "infeasibility_cut"},
              {"down_set", bitstrings(cert.down_set, cert.bits)},
              {"lower_mass", q(cert.lower_mass)},
              {"upper_mass", q(cert.upper_mass)}};
  if (cert.kind == CutKind::InfeasibilityCut) out["targets"] = bitstrings(cert.targets, cert.bits);
  return out;
}

json to_json(const Coupling& c) {
  json pairs = json::array();
  const int L = c.lower.n();
  for (const auto& pair : c.mass) {
    pairs.push_back({{"x", to_bitstring(pair.x, L)}, {"y", to_bitstring(pair.y, L)}, {"p", q(pair.p)}});
  }
  return {{"covering", c.covering},
          {"lower", to_json(c.lower)},
          {"upper", to_json(c.upper)},
          {"pairs", std::move(pairs)},
          {"displacement", q(coupling_displacement(c))}};
}

Coupling coupling_from_json(const json& doc) {
  try {
    Coupling c{deserialize_measure(doc.at("lower").dump()), deserialize_measure(doc.at("upper").dump()), {},
               doc.value("covering", false)};
    const int L = c.lower.n();
    for (const auto& pair : doc.at("pairs")) {
      c.mass.push_back({parse_bitstring(pair.at("x").get<std::string>(), L),
                        parse_bitstring(pair.at("y").get<std::string>(), L),
                        parse_rational(pair.at("p").get<std::string>())});
    }
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("coupling JSON: ") + e.what());
  }
}

json to_json(const NotionReport& report) {
  const WorkStats& w = report.work;
  json out = {{"notion", std::string(notion_name(report.notion))},
              {"verdict", std::string(verdict_name(report.verdict))},
              {"certificate", report.certificate ? certificate_json(report.notion, *report.certificate) : json()},
              {"work",
               {{"pairs_checked", w.pairs_checked},
                {"subsets_checked", w.subsets_checked},
                {"upsets_checked", w.upsets_checked},
                {"conditionals_checked", w.conditionals_checked},
                {"flows_run", w.flows_run},
                {"points_evaluated", w.points_evaluated}}}};
  if (report.extremal) out["max_covariance"] = q(*report.extremal);
  return out;
}

json to_json(const PickResult& pick) {
  json out = {{"index", pick.index}, {"deterministic", pick.deterministic}};
  if (pick.influence_sum) out["influence_sum"] = q(*pick.influence_sum);
  return out;
}

json to_json(const PickLemmaReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries) {
    json entry = {{"index", e.index}, {"pi", q(e.pi)}, {"quantity", q(e.quantity)}};
    if (e.influence_sum) entry["influence_sum"] = q(*e.influence_sum);
    entries.push_back(std::move(entry));
  }
  return {{"entries", std::move(entries)},
          {"some_nonnegative", report.some_nonnegative},
          {"identity_holds", report.identity_holds}};
}

json to_json(const MartingaleTree& tree) {
  return {{"n", tree.n},
          {"adaptive", tree.adaptive},
          {"monotone_f", tree.monotone_f},
          {"max_step", q(max_step(tree))},
          {"root", node_json(tree, 0)}};
}

json to_json(const TailReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"t", q(row.t)},
                    {"upper_exact", q(row.upper_exact)},
                    {"lower_exact", q(row.lower_exact)},
                    {"bound", row.bound},
                    {"monotone_bound", row.monotone_bound ? json(*row.monotone_bound) : json()},
                    {"pass", row.pass}});
  }
  return {{"n", report.n},
          {"mu", q(report.mu)},
          {"monotone", report.monotone},
          {"verdict", report.verdict},
          {"offending_row", report.offending_row ? json(*report.offending_row) : json()},
          {"rows", std::move(rows)}};
}

std::string tree_to_csv(const MartingaleTree& tree) {
  std::ostringstream out;
  out << "id,parent,depth,revealed,pick,probability,p0,p1,y,y0,y1,alpha,beta\n";
  for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
    const auto& node = tree.nodes[id];
    std::string revealed;
    for (std::size_t k = 0; k < node.revealed.size(); ++k) {
      if (k) revealed += ';';
      revealed += std::to_string(node.revealed.indices()[k]) + "=" + std::to_string(node.revealed.values()[k]);
    }
    out << id << ',' << node.parent << ',' << node.depth << ',' << revealed << ',' << node.pick << ','
        << q(node.probability) << ',';
    if (node.is_leaf()) {
      out << ",," << q(node.y) << ",,,,\n";
      continue;
    }
    out << q(node.p0) << ',' << q(node.p1) << ',' << q(node.y) << ',' << (node.y0 ? q(*node.y0) : "") << ','
        << (node.y1 ? q(*node.y1) : "") << ',' << q(node.alpha) << ',' << q(node.beta) << '\n';
  }
  return out.str();
}

std::string tail_report_to_csv(const TailReport& report) {
  std::ostringstream out;
  out << "t,upper_exact,lower_exact,bound,monotone_bound,pass\n";
  for (const auto& row : report.rows) {
    out << q(row.t) << ',' << q(row.upper_exact) << ',' << q(row.lower_exact) << ',' << fmt_double(row.bound) << ','
        << (row.monotone_bound ? fmt_double(*row.monotone_bound) : "") << ',' << (row.pass ? "true" : "false")
        << '\n';
  }
  return out.str();
}

std::string describe(const NotionReport& report) {
  std::string line = std::string(notion_name(report.notion)) + ": " + std::string(verdict_name(report.verdict));
  if (report.extremal) line += " (max covariance " + pretty_rational(*report.extremal) + ")";
  if (report.certificate) line += "\n  certificate: " + certificate_json(report.notion, *report.certificate).dump();
  return line;
}

}  // namespace negdep
