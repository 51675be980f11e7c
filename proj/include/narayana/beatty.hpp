#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "narayana/bigint.hpp"
#include "narayana/interval.hpp"

namespace narayana {

/// Dyadic enclosure [L/2^bits, H/2^bits] of the dominant zero of
/// g_q(x) = x^q - x^{q-1} - 1, with g_q(lo) < 0 < g_q(hi).
/// By Descartes' rule g_q has exactly one positive zero, so the enclosure
/// isolates it.
class AlgebraicRoot {
 public:
  /// Bisection of [1, 2] to width 2^-bits. Requires q >= 2.
  static AlgebraicRoot bisect(int q, unsigned bits);

  /// Continues the bisection; `bits` must not be below bits().
  AlgebraicRoot refined(unsigned bits) const;

  int q() const { return q_; }
  unsigned bits() const { return bits_; }
  const BigInt& lo_numerator() const { return lo_; }
  const BigInt& hi_numerator() const { return hi_; }
  /// Numerators of lo^q and hi^q over 2^(q*bits).
  const BigInt& lo_power_numerator() const { return lo_pow_; }
  const BigInt& hi_power_numerator() const { return hi_pow_; }

  Rational lo() const;
  Rational hi() const;
  Rational width() const { return hi() - lo(); }
  Interval enclosure() const { return {lo(), hi()}; }

 private:
  AlgebraicRoot(int q, unsigned bits, BigInt lo, BigInt hi);

  int q_;
  unsigned bits_;
  BigInt lo_;
  BigInt hi_;
  BigInt lo_pow_;
  BigInt hi_pow_;
};

/// Exact sign of g_q at num / 2^bits.
int g_sign_at(int q, const BigInt& num, unsigned bits);

AlgebraicRoot dominant_root(int q, const Rational& width_bound);

/// Certified a(n) = floor(n alpha) and b(n) = floor(n alpha^q) for one q.
/// The shared enclosure is replaced (never mutated) when a floor needs more
/// precision.
class BeattyPair {
 public:
  static constexpr unsigned kInitialBits = 64;
  static constexpr unsigned kDefaultMaxBits = 1u << 14;

  explicit BeattyPair(int q, unsigned max_bits = kDefaultMaxBits);

  int q() const { return q_; }
  std::int64_t a(std::int64_t n) const;
  std::int64_t b(std::int64_t n) const;
  std::shared_ptr<const AlgebraicRoot> root() const;

  /// Certified floors returned so far, and enclosure refinements.
  std::uint64_t certified_count() const { return certified_.load(); }
  std::uint64_t refinement_count() const { return refinements_.load(); }

 private:
  std::int64_t certified_floor(std::int64_t n, bool power) const;
  std::shared_ptr<const AlgebraicRoot> refine_beyond(unsigned bits) const;

  int q_;
  unsigned max_bits_;
  mutable std::mutex mu_;
  mutable std::shared_ptr<const AlgebraicRoot> root_;
  mutable std::atomic<std::uint64_t> certified_{0};
  mutable std::atomic<std::uint64_t> refinements_{0};
};

/// Process-wide pair for q (q >= 2).
const BeattyPair& beatty_pair(int q);

std::int64_t beatty_a(int q, std::int64_t n);
std::int64_t beatty_b(int q, std::int64_t n);

struct ComplementarityReport {
  int q = 2;
  std::int64_t limit = 1;
  bool pass = true;
  std::string failure;
  std::int64_t a_values = 0;
  std::int64_t b_values = 0;
};

/// Checks that {a(n)} and {b(n)} restricted to [1, limit] partition it.
ComplementarityReport check_complementarity(int q, std::int64_t limit);

/// Word l_1 l_2 ... l_s over {a, b}, read as l_1 o l_2 o ... o l_s.
struct BeattyWord {
  std::string letters;

  static BeattyWord parse(std::string_view text);
  int a_count() const;
  int b_count() const;
  std::size_t size() const { return letters.size(); }
};

/// Every word of length 1..max_length, shorter first, then lexicographic.
std::vector<BeattyWord> all_words(int max_length);

std::int64_t compose_word(int q, const BeattyWord& w, std::int64_t n);

/// e_f(n) = N_{x+3y-2} a(n) + N_{x+3y} b(n) - N_{x+3y-3} n - f(n), q = 3.
BigInt kimberling_error(const BeattyWord& w, std::int64_t n);
/// e_f(n) = F_{x+2y-2} a(n) + F_{x+2y-1} b(n) - f(n), q = 2.
BigInt kimberling_error_q2(const BeattyWord& w, std::int64_t n);

struct KimberlingSummary {
  int q = 3;
  std::string word;
  std::int64_t n_max = 0;
  BigInt min_error = 0;
  BigInt max_error = 0;
  std::int64_t argmax = 1;  // first n attaining max_error
  bool constant = true;
  /// min >= 0, and the running maximum settled within the first half.
  bool nonnegative() const { return min_error >= 0; }
  bool stabilized() const { return 2 * argmax <= n_max; }
};

/// Evaluates e_f over n = 1..n_max for q in {2, 3}.
KimberlingSummary summarize_kimberling(int q, const BeattyWord& w, std::int64_t n_max);

}  // namespace narayana
