#pragma once

// Shared vocabulary: exact rationals, bitvector points of {0,1}^n, errors and
// enumeration caps.

#include <gmpxx.h>

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace negdep {

using Rational = mpq_class;

// A point of {0,1}^n. Variable i (1-based) lives in bit i-1.
using Bits = std::uint32_t;

inline constexpr int kMaxBits = 20;

enum class ErrorCode {
  MassNotOne,
  NegativeMass,
  BadWidth,
  ZeroProbabilityEvent,
  EmptySubset,
  DimensionMismatch,
  EmptyConditioningEvent,
  TooLarge,
  InvalidArgument,
  ParseError,
  NotLipschitz,
  NotMonotone,
  NoEligibleIndex,
  LemmaViolated,
  IntervalViolation,
  DominanceFails,
  NodeIsLeaf,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Enumeration caps. NEGDEP_MAX_N, when set, replaces every default.
int enumeration_cap(int default_cap);
void require_within_cap(int n, int default_cap, std::string_view what);

namespace caps {
inline constexpr int kMeasure = 20;
inline constexpr int kNegAssociation = 8;
inline constexpr int kNegRegression = 10;
inline constexpr int kStochasticCovering = 10;
inline constexpr int kTree = 12;
}  // namespace caps

inline bool leq(Bits x, Bits y) { return (x & ~y) == 0; }
inline int weight(Bits x) { return std::popcount(x); }
inline Bits full_mask(int n) { return n >= 32 ? ~Bits{0} : (Bits{1} << n) - 1; }
inline bool test_var(Bits x, int index) { return (x >> (index - 1)) & 1u; }

// Sort key realising the lexicographic order of bitstrings x1 x2 ... xn.
Bits lex_key(Bits x, int n);
bool lex_less(Bits x, Bits y, int n);

std::string to_bitstring(Bits x, int n);
Bits parse_bitstring(std::string_view s, int n);

// Projection onto / embedding from the coordinates listed in `indices`
// (1-based). Local bit k corresponds to indices[k].
Bits gather(Bits x, std::span<const int> indices);
Bits scatter(Bits local, std::span<const int> indices);

std::vector<int> indices_of(Bits mask);
Bits mask_of(std::span<const int> indices);

// Subsets of [n] ordered by size, then lexicographically on their sorted
// index lists.
std::vector<Bits> canonical_subsets(int n, int min_size = 0, int max_size = -1);

// Accepts "p/q", integers, and decimals such as "0.25" or "-1.5e-3".
Rational parse_rational(std::string_view text);
// Always "num/den" in lowest terms.
std::string format_rational(const Rational& q);
// Integers print bare, everything else as "num/den".
std::string pretty_rational(const Rational& q);

double to_double(const Rational& q);

// num/den in lowest terms (mpq_class(num, den) does not reduce).
Rational ratio(const mpz_class& num, const mpz_class& den);

}  // namespace negdep
