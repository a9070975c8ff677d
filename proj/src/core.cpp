#include "negdep/core.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>

namespace negdep {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MassNotOne: return "MassNotOne";
    case ErrorCode::NegativeMass: return "NegativeMass";
    case ErrorCode::BadWidth: return "BadWidth";
    case ErrorCode::ZeroProbabilityEvent: return "ZeroProbabilityEvent";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyConditioningEvent: return "EmptyConditioningEvent";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotLipschitz: return "NotLipschitz";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::NoEligibleIndex: return "NoEligibleIndex";
    case ErrorCode::LemmaViolated: return "LemmaViolated";
    case ErrorCode::IntervalViolation: return "IntervalViolation";
    case ErrorCode::DominanceFails: return "DominanceFails";
    case ErrorCode::NodeIsLeaf: return "NodeIsLeaf";
  }
  return "Unknown";
}

int enumeration_cap(int default_cap) {
  if (const char* env = std::getenv("NEGDEP_MAX_N"); env != nullptr && *env != '\0') {
    int value = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::char_traits<char>::length(env), value);
    if (ec == std::errc() && *ptr == '\0' && value > 0) {
      return std::min(value, kMaxBits);
    }
  }
  return default_cap;
}

void require_within_cap(int n, int default_cap, std::string_view what) {
  const int cap = enumeration_cap(default_cap);
  if (n > cap) {
    throw Error(ErrorCode::TooLarge, std::string(what) + " supports n <= " + std::to_string(cap) +
                                         ", got n = " + std::to_string(n));
  }
}

Bits lex_key(Bits x, int n) {
  Bits key = 0;
  for (int i = 0; i < n; ++i) {
    key = (key << 1) | ((x >> i) & 1u);
  }
  return key;
}

bool lex_less(Bits x, Bits y, int n) { return lex_key(x, n) < lex_key(y, n); }

std::string to_bitstring(Bits x, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if ((x >> i) & 1u) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

Bits parse_bitstring(std::string_view s, int n) {
  if (static_cast<int>(s.size()) != n) {
    throw Error(ErrorCode::BadWidth, "bitstring '" + std::string(s) + "' does not have " +
                                         std::to_string(n) + " bits");
  }
  Bits x = 0;
  for (int i = 0; i < n; ++i) {
    const char c = s[static_cast<std::size_t>(i)];
    if (c == '1') {
      x |= Bits{1} << i;
    } else if (c != '0') {
      throw Error(ErrorCode::ParseError, "bitstring '" + std::string(s) + "' has a non-binary digit");
    }
  }
  return x;
}

Bits gather(Bits x, std::span<const int> indices) {
  Bits local = 0;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (test_var(x, indices[k])) local |= Bits{1} << k;
  }
  return local;
}

Bits scatter(Bits local, std::span<const int> indices) {
  Bits x = 0;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if ((local >> k) & 1u) x |= Bits{1} << (indices[k] - 1);
  }
  return x;
}

std::vector<int> indices_of(Bits mask) {
  std::vector<int> out;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) out.push_back(i + 1);
  }
  return out;
}

Bits mask_of(std::span<const int> indices) {
  Bits mask = 0;
  for (int i : indices) mask |= Bits{1} << (i - 1);
  return mask;
}

std::vector<Bits> canonical_subsets(int n, int min_size, int max_size) {
  if (max_size < 0) max_size = n;
  std::vector<Bits> out;
  for (Bits s = 0; s <= full_mask(n); ++s) {
    const int w = weight(s);
    if (w >= min_size && w <= max_size) out.push_back(s);
    if (s == full_mask(n)) break;
  }
  // Lexicographic on sorted index lists: {1,2} < {1,3} < {2,3}. Among sets of
  // equal size that is the bitstring order read left to right, reversed.
  std::stable_sort(out.begin(), out.end(), [n](Bits a, Bits b) {
    const int wa = weight(a), wb = weight(b);
    if (wa != wb) return wa < wb;
    return lex_key(a, n) > lex_key(b, n);
  });
  return out;
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) {
      throw Error(ErrorCode::ParseError, "bad exponent in '" + std::string(text) + "'");
    }
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
      throw Error(ErrorCode::ParseError, "bad decimal '" + std::string(text) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) throw Error(ErrorCode::ParseError, "bad number '" + std::string(text) + "'");
    digits = std::string(s);
  }
  mpz_class mantissa(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational q = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorCode::ParseError, "empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    std::string_view num_digits = num;
    if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+')) num_digits.remove_prefix(1);
    if (!all_digits(num_digits) || !all_digits(den)) {
      throw Error(ErrorCode::ParseError, "bad rational '" + std::string(text) + "'");
    }
    mpz_class d(std::string(den), 10);
    if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    mpz_class n(std::string(num_digits), 10);
    if (num.front() == '-') n = -n;
    Rational q(n, d);
    q.canonicalize();
    return q;
  }
  return parse_decimal(text);
}

std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string pretty_rational(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

Rational ratio(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace negdep
