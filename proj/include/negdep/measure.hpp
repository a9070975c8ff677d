#pragma once

// Exact probability measures on {0,1}^n, 1-Lipschitz test functions, and the
// named measure families used throughout the toolkit.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "negdep/core.hpp"

namespace negdep {

struct Atom {
  Bits x = 0;
  Rational p;

  friend bool operator==(const Atom& a, const Atom& b) { return a.x == b.x && a.p == b.p; }
};

// A partial assignment X_K = a_K. Indices are kept ascending.
class Assignment {
 public:
  Assignment() = default;
  Assignment(std::vector<int> indices, std::vector<int> values);

  static Assignment from_bits(Bits mask, Bits values);

  const std::vector<int>& indices() const { return indices_; }
  const std::vector<int>& values() const { return values_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }

  Bits mask() const { return mask_; }
  // Values placed at their variable positions.
  Bits value_bits() const { return value_bits_; }
  bool matches(Bits x) const { return (x & mask_) == value_bits_; }

  Assignment with(int index, int value) const;
  void validate(int n) const;

  friend bool operator==(const Assignment& a, const Assignment& b) {
    return a.mask_ == b.mask_ && a.value_bits_ == b.value_bits_;
  }

 private:
  std::vector<int> indices_;
  std::vector<int> values_;
  Bits mask_ = 0;
  Bits value_bits_ = 0;
};

class ExplicitMeasure {
 public:
  // Validates widths and signs, merges duplicate atoms, drops zero atoms and
  // requires the total mass to be exactly one.
  static ExplicitMeasure from_atoms(int n, std::vector<Atom> atoms);

  int n() const { return n_; }
  // Positive atoms in lexicographic bitstring order.
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t support_size() const { return atoms_.size(); }

  Rational probability(Bits x) const;
  Rational probability(const Assignment& event) const;

  friend bool operator==(const ExplicitMeasure& a, const ExplicitMeasure& b) {
    return a.n_ == b.n_ && a.atoms_ == b.atoms_;
  }

 private:
  ExplicitMeasure(int n, std::vector<Atom> atoms) : n_(n), atoms_(std::move(atoms)) {}

  int n_ = 0;
  std::vector<Atom> atoms_;
};

ExplicitMeasure new_explicit(int n, std::vector<std::pair<std::string, Rational>> atoms);

// Law of the unassigned variables given `on`; remaining variables are
// relabelled 1..n-|on| in ascending original order.
ExplicitMeasure condition(const ExplicitMeasure& m, const Assignment& on);

// Pushforward onto `subset`; result variable k is original variable subset[k-1].
ExplicitMeasure marginal(const ExplicitMeasure& m, std::span<const int> subset);

class TestFunction {
 public:
  // Checks |f(x) - f(x ^ e_i)| <= 1 on every edge of the cube, and
  // monotonicity along every edge when declared.
  static TestFunction from_table(int n, std::vector<Rational> values, bool declared_monotone);

  static TestFunction sum(int n);
  static TestFunction constant(int n, const Rational& c);
  static TestFunction parity(int n);
  // Built bottom-up in popcount order: each value is drawn from the interval
  // left open by the already assigned lower neighbours, on a grid of 1/denominator.
  static TestFunction random_lipschitz(int n, std::mt19937_64& rng, bool monotone, int denominator = 4);

  int n() const { return n_; }
  const Rational& operator()(Bits x) const { return values_[x]; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& declared_lipschitz() const { return lipschitz_; }
  bool declared_monotone() const { return monotone_; }

  Rational min_value() const;
  Rational max_value() const;

 private:
  TestFunction(int n, std::vector<Rational> values, bool monotone)
      : n_(n), values_(std::move(values)), lipschitz_(1), monotone_(monotone) {}

  int n_ = 0;
  std::vector<Rational> values_;
  Rational lipschitz_;
  bool monotone_ = false;
};

// sum | parity | const:C | random:SEED[:monotone]
TestFunction function_from_spec(std::string_view spec, int n);

Rational expectation(const ExplicitMeasure& m, const TestFunction& f);
Rational expectation(const ExplicitMeasure& m, std::span<const Rational> table);

// Exact conditional means E[X_i | event] for i = 1..n (index 0 unused).
std::vector<Rational> conditional_means(const ExplicitMeasure& m, const Assignment& event);

// ---- families ------------------------------------------------------------

// X_2..X_n i.i.d. fair bits, X_1 = 1 - prod X_i.
ExplicitMeasure family_nand(int n);
ExplicitMeasure family_independent(std::span<const Rational> p);
// Independent Bernoulli(p_i) conditioned on lo <= sum <= hi.
ExplicitMeasure family_conditioned_sum(std::span<const Rational> p, int lo, int hi);
// Indicator of ball i in bin j is variable (i-1)*bins + j (ball-major).
ExplicitMeasure family_balls_bins(int balls, int bins);
// Uniform column of the Sylvester Hadamard matrix; rows 2..order become
// order-1 pairwise independent fair bits via (1 + H_ij)/2.
ExplicitMeasure family_hadamard(int order);
ExplicitMeasure family_anti_pair();
ExplicitMeasure family_pos_pair();

// Mini-grammar `name:arg1:arg2...`:
//   nand:N   indep:P1,P2,...   condsum:P1,P2,...:LO:HI   balls:BALLS:BINS
//   hadamard:ORDER   antipair   pospair
// Probabilities are accepted as p/q or decimals.
ExplicitMeasure family_from_spec(std::string_view spec);
std::string family_grammar_help();

// ---- JSON ----------------------------------------------------------------

// {"n": 3, "atoms": [{"x": "100", "p": "1/4"}, ...]}, atoms sorted by bitstring.
std::string serialize_measure(const ExplicitMeasure& m, int indent = 2);
ExplicitMeasure deserialize_measure(std::string_view json_text);
ExplicitMeasure load_measure(const std::string& path);
void save_measure(const ExplicitMeasure& m, const std::string& path);

}  // namespace negdep
