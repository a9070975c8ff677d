#include "negdep/measure.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace negdep {

// ---- Assignment ----------------------------------------------------------

Assignment::Assignment(std::vector<int> indices, std::vector<int> values) {
  if (indices.size() != values.size()) {
    throw Error(ErrorCode::InvalidArgument, "assignment has " + std::to_string(indices.size()) +
                                                " indices but " + std::to_string(values.size()) + " values");
  }
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] < 1 || indices[k] > kMaxBits) {
      throw Error(ErrorCode::InvalidArgument, "variable index " + std::to_string(indices[k]) + " out of range");
    }
    if (values[k] != 0 && values[k] != 1) {
      throw Error(ErrorCode::InvalidArgument, "assignment values must be 0 or 1");
    }
    pairs.emplace_back(indices[k], values[k]);
  }
  std::sort(pairs.begin(), pairs.end());
  for (const auto& [index, value] : pairs) {
    const Bits bit = Bits{1} << (index - 1);
    if (mask_ & bit) {
      throw Error(ErrorCode::InvalidArgument, "variable " + std::to_string(index) + " assigned twice");
    }
    mask_ |= bit;
    if (value) value_bits_ |= bit;
    indices_.push_back(index);
    values_.push_back(value);
  }
}

Assignment Assignment::from_bits(Bits mask, Bits values) {
  std::vector<int> idx = indices_of(mask);
  std::vector<int> vals;
  vals.reserve(idx.size());
  for (int i : idx) vals.push_back(test_var(values, i) ? 1 : 0);
  return Assignment(std::move(idx), std::move(vals));
}

Assignment Assignment::with(int index, int value) const {
  std::vector<int> idx = indices_;
  std::vector<int> vals = values_;
  idx.push_back(index);
  vals.push_back(value);
  return Assignment(std::move(idx), std::move(vals));
}

void Assignment::validate(int n) const {
  if (!indices_.empty() && indices_.back() > n) {
    throw Error(ErrorCode::DimensionMismatch,
                "assignment mentions variable " + std::to_string(indices_.back()) + " but n = " + std::to_string(n));
  }
}

// ---- ExplicitMeasure -----------------------------------------------------

ExplicitMeasure ExplicitMeasure::from_atoms(int n, std::vector<Atom> atoms) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "measure needs n >= 1");
  require_within_cap(n, caps::kMeasure, "measure storage");
  std::map<Bits, Rational> merged;
  for (auto& atom : atoms) {
    atom.p.canonicalize();
    if ((atom.x & ~full_mask(n)) != 0) {
      throw Error(ErrorCode::BadWidth, "atom does not fit in " + std::to_string(n) + " bits");
    }
    if (sgn(atom.p) < 0) {
      throw Error(ErrorCode::NegativeMass, "atom " + to_bitstring(atom.x, n) + " has mass " + pretty_rational(atom.p));
    }
    merged[atom.x] += atom.p;
  }
  Rational total = 0;
  std::vector<Atom> kept;
  for (auto& [x, p] : merged) {
    if (sgn(p) == 0) continue;
    total += p;
    kept.push_back({x, p});
  }
  if (total != 1) {
    throw Error(ErrorCode::MassNotOne, "atoms sum to " + pretty_rational(total));
  }
  std::sort(kept.begin(), kept.end(), [n](const Atom& a, const Atom& b) { return lex_less(a.x, b.x, n); });
  return ExplicitMeasure(n, std::move(kept));
}

Rational ExplicitMeasure::probability(Bits x) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                             [this](const Atom& a, Bits key) { return lex_less(a.x, key, n_); });
  if (it != atoms_.end() && it->x == x) return it->p;
  return 0;
}

Rational ExplicitMeasure::probability(const Assignment& event) const {
  event.validate(n_);
  Rational total = 0;
  for (const auto& atom : atoms_) {
    if (event.matches(atom.x)) total += atom.p;
  }
  return total;
}

ExplicitMeasure new_explicit(int n, std::vector<std::pair<std::string, Rational>> atoms) {
  std::vector<Atom> parsed;
  parsed.reserve(atoms.size());
  for (auto& [bits, p] : atoms) parsed.push_back({parse_bitstring(bits, n), p});
  return ExplicitMeasure::from_atoms(n, std::move(parsed));
}

ExplicitMeasure condition(const ExplicitMeasure& m, const Assignment& on) {
  on.validate(m.n());
  const Rational mass = m.probability(on);
  if (sgn(mass) == 0) {
    throw Error(ErrorCode::ZeroProbabilityEvent, "conditioning event has probability 0");
  }
  const int rest = m.n() - static_cast<int>(on.size());
  if (rest == 0) {
    throw Error(ErrorCode::InvalidArgument, "conditioning on every variable leaves an empty measure");
  }
  const std::vector<int> remaining = indices_of(full_mask(m.n()) & ~on.mask());
  std::vector<Atom> out;
  for (const auto& atom : m.atoms()) {
    if (on.matches(atom.x)) out.push_back({gather(atom.x, remaining), atom.p / mass});
  }
  return ExplicitMeasure::from_atoms(rest, std::move(out));
}

ExplicitMeasure marginal(const ExplicitMeasure& m, std::span<const int> subset) {
  if (subset.empty()) throw Error(ErrorCode::EmptySubset, "marginal onto an empty index set");
  Bits seen = 0;
  for (int i : subset) {
    if (i < 1 || i > m.n()) {
      throw Error(ErrorCode::DimensionMismatch, "index " + std::to_string(i) + " outside [1, n]");
    }
    if (seen & (Bits{1} << (i - 1))) throw Error(ErrorCode::InvalidArgument, "repeated index in marginal");
    seen |= Bits{1} << (i - 1);
  }
  std::vector<Atom> out;
  out.reserve(m.atoms().size());
  for (const auto& atom : m.atoms()) out.push_back({gather(atom.x, subset), atom.p});
  return ExplicitMeasure::from_atoms(static_cast<int>(subset.size()), std::move(out));
}

// ---- TestFunction --------------------------------------------------------

TestFunction TestFunction::from_table(int n, std::vector<Rational> values, bool declared_monotone) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "test function needs n >= 1");
  require_within_cap(n, caps::kMeasure, "test function table");
  if (values.size() != (std::size_t{1} << n)) {
    throw Error(ErrorCode::DimensionMismatch, "table has " + std::to_string(values.size()) + " entries, expected 2^" +
                                                  std::to_string(n));
  }
  for (auto& v : values) v.canonicalize();
  for (Bits x = 0; x <= full_mask(n); ++x) {
    for (int i = 0; i < n; ++i) {
      const Bits bit = Bits{1} << i;
      if (x & bit) continue;
      const Rational delta = values[x | bit] - values[x];
      if (abs(delta) > 1) {
        throw Error(ErrorCode::NotLipschitz, "flipping x" + std::to_string(i + 1) + " at " + to_bitstring(x, n) +
                                                 " changes f by " + pretty_rational(delta));
      }
      if (declared_monotone && sgn(delta) < 0) {
        throw Error(ErrorCode::NotMonotone, "f decreases when x" + std::to_string(i + 1) + " is raised at " +
                                                to_bitstring(x, n));
      }
    }
    if (x == full_mask(n)) break;
  }
  return TestFunction(n, std::move(values), declared_monotone);
}

TestFunction TestFunction::sum(int n) {
  std::vector<Rational> values(std::size_t{1} << n);
  for (std::size_t x = 0; x < values.size(); ++x) values[x] = weight(static_cast<Bits>(x));
  return from_table(n, std::move(values), true);
}

TestFunction TestFunction::constant(int n, const Rational& c) {
  return from_table(n, std::vector<Rational>(std::size_t{1} << n, c), true);
}

TestFunction TestFunction::parity(int n) {
  std::vector<Rational> values(std::size_t{1} << n);
  for (std::size_t x = 0; x < values.size(); ++x) values[x] = weight(static_cast<Bits>(x)) % 2;
  return from_table(n, std::move(values), n == 1);
}

TestFunction TestFunction::random_lipschitz(int n, std::mt19937_64& rng, bool monotone, int denominator) {
  if (denominator < 1) throw Error(ErrorCode::InvalidArgument, "denominator must be positive");
  require_within_cap(n, caps::kMeasure, "test function table");
  std::vector<Rational> values(std::size_t{1} << n);
  values[0] = 0;
  for (Bits x = 1; x <= full_mask(n); ++x) {
    Rational lo, hi;
    bool first = true;
    for (int i = 0; i < n; ++i) {
      const Bits bit = Bits{1} << i;
      if (!(x & bit)) continue;
      const Rational& below = values[x ^ bit];
      const Rational cand_lo = monotone ? below : Rational(below - 1);
      const Rational cand_hi = below + 1;
      if (first || cand_lo > lo) lo = cand_lo;
      if (first || cand_hi < hi) hi = cand_hi;
      first = false;
    }
    const Rational span_steps = (hi - lo) * denominator;
    const long steps = span_steps.get_num().get_si();
    std::uniform_int_distribution<long> pick(0, steps);
    values[x] = lo + ratio(pick(rng), denominator);
    if (x == full_mask(n)) break;
  }
  return from_table(n, std::move(values), monotone);
}

Rational TestFunction::min_value() const { return *std::min_element(values_.begin(), values_.end()); }
Rational TestFunction::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

Rational expectation(const ExplicitMeasure& m, const TestFunction& f) {
  if (f.n() != m.n()) {
    throw Error(ErrorCode::DimensionMismatch, "f has n = " + std::to_string(f.n()) + ", measure has n = " +
                                                  std::to_string(m.n()));
  }
  return expectation(m, f.values());
}

Rational expectation(const ExplicitMeasure& m, std::span<const Rational> table) {
  if (table.size() != (std::size_t{1} << m.n())) {
    throw Error(ErrorCode::DimensionMismatch, "table size does not match 2^n");
  }
  Rational total = 0;
  for (const auto& atom : m.atoms()) total += atom.p * table[atom.x];
  return total;
}

std::vector<Rational> conditional_means(const ExplicitMeasure& m, const Assignment& event) {
  event.validate(m.n());
  std::vector<Rational> means(static_cast<std::size_t>(m.n()) + 1);
  Rational mass = 0;
  for (const auto& atom : m.atoms()) {
    if (!event.matches(atom.x)) continue;
    mass += atom.p;
    for (int i = 1; i <= m.n(); ++i) {
      if (test_var(atom.x, i)) means[static_cast<std::size_t>(i)] += atom.p;
    }
  }
  if (sgn(mass) == 0) throw Error(ErrorCode::ZeroProbabilityEvent, "conditioning event has probability 0");
  for (auto& v : means) v /= mass;
  return means;
}

// ---- families ------------------------------------------------------------

ExplicitMeasure family_nand(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "nand needs n >= 2");
  require_within_cap(n, caps::kMeasure, "nand family");
  std::vector<Atom> atoms;
  const Rational each(1, mpz_class(1) << (n - 1));
  const Bits rest_all = full_mask(n) & ~Bits{1};
  for (Bits r = 0; r < (Bits{1} << (n - 1)); ++r) {
    const Bits x = r << 1;
    atoms.push_back({x == rest_all ? x : (x | 1u), each});
  }
  return ExplicitMeasure::from_atoms(n, std::move(atoms));
}

namespace {

void check_probabilities(std::span<const Rational> p) {
  if (p.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one probability");
  for (const auto& q : p) {
    if (sgn(q) < 0 || q > 1) throw Error(ErrorCode::InvalidArgument, "probability " + pretty_rational(q) + " outside [0,1]");
  }
}

Rational product_weight(std::span<const Rational> p, Bits x) {
  Rational w = 1;
  for (std::size_t i = 0; i < p.size(); ++i) w *= ((x >> i) & 1u) ? p[i] : Rational(1 - p[i]);
  return w;
}

}  // namespace

ExplicitMeasure family_independent(std::span<const Rational> p) {
  check_probabilities(p);
  const int n = static_cast<int>(p.size());
  require_within_cap(n, caps::kMeasure, "independent family");
  std::vector<Atom> atoms;
  for (Bits x = 0; x <= full_mask(n); ++x) {
    atoms.push_back({x, product_weight(p, x)});
    if (x == full_mask(n)) break;
  }
  return ExplicitMeasure::from_atoms(n, std::move(atoms));
}

ExplicitMeasure family_conditioned_sum(std::span<const Rational> p, int lo, int hi) {
  check_probabilities(p);
  const int n = static_cast<int>(p.size());
  require_within_cap(n, caps::kMeasure, "conditioned-sum family");
  std::vector<Atom> atoms;
  Rational total = 0;
  for (Bits x = 0; x <= full_mask(n); ++x) {
    const int w = weight(x);
    if (w >= lo && w <= hi) {
      Rational q = product_weight(p, x);
      if (sgn(q) > 0) {
        total += q;
        atoms.push_back({x, q});
      }
    }
    if (x == full_mask(n)) break;
  }
  if (sgn(total) == 0) {
    throw Error(ErrorCode::EmptyConditioningEvent,
                "event " + std::to_string(lo) + " <= sum <= " + std::to_string(hi) + " has probability 0");
  }
  for (auto& a : atoms) a.p /= total;
  return ExplicitMeasure::from_atoms(n, std::move(atoms));
}

ExplicitMeasure family_balls_bins(int balls, int bins) {
  if (balls < 1 || bins < 1) throw Error(ErrorCode::InvalidArgument, "balls and bins must be positive");
  const long n = static_cast<long>(balls) * bins;
  if (n > kMaxBits) throw Error(ErrorCode::TooLarge, "balls * bins = " + std::to_string(n) + " variables");
  require_within_cap(static_cast<int>(n), caps::kMeasure, "balls-and-bins family");
  mpz_class outcomes = 1;
  for (int i = 0; i < balls; ++i) outcomes *= bins;
  const Rational each(1, outcomes);
  std::vector<Atom> atoms;
  std::vector<int> choice(static_cast<std::size_t>(balls), 0);
  while (true) {
    Bits x = 0;
    for (int i = 0; i < balls; ++i) x |= Bits{1} << (i * bins + choice[static_cast<std::size_t>(i)]);
    atoms.push_back({x, each});
    int k = balls - 1;
    while (k >= 0 && ++choice[static_cast<std::size_t>(k)] == bins) choice[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) break;
  }
  return ExplicitMeasure::from_atoms(static_cast<int>(n), std::move(atoms));
}

ExplicitMeasure family_hadamard(int order) {
  if (order < 2 || !std::has_single_bit(static_cast<unsigned>(order))) {
    throw Error(ErrorCode::InvalidArgument, "hadamard order must be a power of two >= 2");
  }
  const int n = order - 1;
  if (n > kMaxBits) throw Error(ErrorCode::TooLarge, "hadamard order " + std::to_string(order));
  require_within_cap(n, caps::kMeasure, "hadamard family");
  const Rational each(1, order);
  std::vector<Atom> atoms;
  for (int col = 0; col < order; ++col) {
    Bits x = 0;
    for (int row = 1; row < order; ++row) {
      // Sylvester entry is (-1)^{popcount(row & col)}; +1 maps to bit 1.
      if (std::popcount(static_cast<unsigned>(row & col)) % 2 == 0) x |= Bits{1} << (row - 1);
    }
    atoms.push_back({x, each});
  }
  return ExplicitMeasure::from_atoms(n, std::move(atoms));
}

ExplicitMeasure family_anti_pair() { return new_explicit(2, {{"01", Rational(1, 2)}, {"10", Rational(1, 2)}}); }

ExplicitMeasure family_pos_pair() { return new_explicit(2, {{"00", Rational(1, 2)}, {"11", Rational(1, 2)}}); }

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

int parse_int(const std::string& s, std::string_view what) {
  Rational q = parse_rational(s);
  if (q.get_den() != 1 || !q.get_num().fits_sint_p()) {
    throw Error(ErrorCode::ParseError, std::string(what) + " must be an integer, got '" + s + "'");
  }
  return static_cast<int>(q.get_num().get_si());
}

std::vector<Rational> parse_prob_list(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& item : split(s, ',')) out.push_back(parse_rational(item));
  return out;
}

}  // namespace

ExplicitMeasure family_from_spec(std::string_view spec) {
  const auto parts = split(spec, ':');
  const std::string& name = parts[0];
  auto expect_args = [&](std::size_t count) {
    if (parts.size() != count + 1) {
      throw Error(ErrorCode::ParseError, "family '" + name + "' takes " + std::to_string(count) + " argument(s)");
    }
  };
  if (name == "nand") {
    expect_args(1);
    return family_nand(parse_int(parts[1], "nand n"));
  }
  if (name == "indep" || name == "independent") {
    expect_args(1);
    return family_independent(parse_prob_list(parts[1]));
  }
  if (name == "condsum") {
    expect_args(3);
    return family_conditioned_sum(parse_prob_list(parts[1]), parse_int(parts[2], "lo"), parse_int(parts[3], "hi"));
  }
  if (name == "balls") {
    expect_args(2);
    return family_balls_bins(parse_int(parts[1], "balls"), parse_int(parts[2], "bins"));
  }
  if (name == "hadamard") {
    expect_args(1);
    return family_hadamard(parse_int(parts[1], "order"));
  }
  if (name == "antipair") {
    expect_args(0);
    return family_anti_pair();
  }
  if (name == "pospair") {
    expect_args(0);
    return family_pos_pair();
  }
  throw Error(ErrorCode::ParseError, "unknown family '" + name + "'");
}

TestFunction function_from_spec(std::string_view spec, int n) {
  const auto parts = split(spec, ':');
  if (parts[0] == "sum" && parts.size() == 1) return TestFunction::sum(n);
  if (parts[0] == "parity" && parts.size() == 1) return TestFunction::parity(n);
  if (parts[0] == "const" && parts.size() == 2) return TestFunction::constant(n, parse_rational(parts[1]));
  if (parts[0] == "random" && (parts.size() == 2 || parts.size() == 3)) {
    if (parts.size() == 3 && parts[2] != "monotone") {
      throw Error(ErrorCode::ParseError, "expected random:SEED[:monotone]");
    }
    std::mt19937_64 rng(static_cast<std::uint64_t>(parse_int(parts[1], "seed")));
    return TestFunction::random_lipschitz(n, rng, parts.size() == 3);
  }
  throw Error(ErrorCode::ParseError,
              "unknown function spec '" + std::string(spec) + "' (sum, parity, const:C, random:SEED[:monotone])");
}

std::string family_grammar_help() {
  return "Family specs (name:arg1:arg2...; probabilities as p/q or decimals):\n"
         "  nand:N                   X2..XN fair, X1 = NAND(X2..XN)\n"
         "  indep:P1,P2,...          independent Bernoulli(Pi)\n"
         "  condsum:P1,...:LO:HI     independent Bernoulli(Pi) given LO <= sum <= HI\n"
         "  balls:BALLS:BINS         ball-in-bin indicators, variable (i-1)*BINS + j\n"
         "  hadamard:ORDER           pairwise independent bits from Sylvester rows 2..ORDER\n"
         "  antipair                 uniform on {01, 10}\n"
         "  pospair                  uniform on {00, 11}\n";
}

// ---- JSON ----------------------------------------------------------------

std::string serialize_measure(const ExplicitMeasure& m, int indent) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& atom : m.atoms()) {
    atoms.push_back({{"x", to_bitstring(atom.x, m.n())}, {"p", format_rational(atom.p)}});
  }
  nlohmann::json doc = {{"n", m.n()}, {"atoms", std::move(atoms)}};
  return doc.dump(indent);
}

ExplicitMeasure deserialize_measure(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("measure JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer() || !doc.contains("atoms") ||
      !doc["atoms"].is_array()) {
    throw Error(ErrorCode::ParseError, "measure JSON needs integer \"n\" and array \"atoms\"");
  }
  const int n = doc["n"].get<int>();
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "measure needs n >= 1");
  require_within_cap(n, caps::kMeasure, "measure storage");
  std::vector<Atom> atoms;
  for (const auto& entry : doc["atoms"]) {
    if (!entry.is_object() || !entry.contains("x") || !entry["x"].is_string() || !entry.contains("p")) {
      throw Error(ErrorCode::ParseError, "each atom needs string \"x\" and \"p\"");
    }
    Rational p;
    if (entry["p"].is_string()) {
      p = parse_rational(entry["p"].get<std::string>());
    } else if (entry["p"].is_number()) {
      // Numbers are re-read from their JSON text so decimals stay exact.
      p = parse_rational(entry["p"].dump());
    } else {
      throw Error(ErrorCode::ParseError, "atom \"p\" must be a string or number");
    }
    atoms.push_back({parse_bitstring(entry["x"].get<std::string>(), n), p});
  }
  return ExplicitMeasure::from_atoms(n, std::move(atoms));
}

ExplicitMeasure load_measure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return deserialize_measure(buffer.str());
}

void save_measure(const ExplicitMeasure& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << serialize_measure(m) << '\n';
}

}  // namespace negdep
