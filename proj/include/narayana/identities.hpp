#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "narayana/bigint.hpp"
#include "narayana/interval.hpp"
#include "json.hpp"

namespace narayana {

enum class IdentityId { sum_g, binomial_diagonal, weighted_binomial, footnote, cross_family, eq6, pascal };

std::string_view identity_name(IdentityId id);

struct Counterexample {
  std::int64_t n = 0;
  std::string lhs;
  std::string rhs;
};

/// Outcome of an exhaustive check over n in [from, to]; `pass` holds only
/// when every point matched.
struct IdentityReport {
  IdentityId id = IdentityId::sum_g;
  int q = 1;
  std::int64_t from = 0;
  std::int64_t to = 0;
  bool pass = true;
  std::optional<Counterexample> counterexample;

  void record(std::int64_t n, const BigInt& lhs, const BigInt& rhs);
  std::string summary() const;
  nlohmann::json to_json() const;
};

/// binom(a, b), zero when a < 0, b < 0 or b > a.
BigInt binom(std::int64_t a, std::int64_t b);

/// G_{n+q} - 1 = sum_{k<=n} G_k for n in 0..n_max.
IdentityReport verify_sum_identity(int q, std::int64_t n_max);

/// sum_{k=0}^{floor(n/q)} binom(n - k(q-1), k)
BigInt binomial_diagonal_sum(int q, std::int64_t n);
/// sum_{k=0}^{floor(n/q)} k binom(n - k(q-1), k)
BigInt weighted_binomial_sum(int q, std::int64_t n);

/// binomial_diagonal_sum(q, n) = G_{n+q-1}.
IdentityReport verify_binomial_identity(int q, std::int64_t n_max);
/// weighted_binomial_sum(q, n) = S_A(G_{n+q-1}), with S_A by direct summation.
IdentityReport verify_weighted_identity(int q, std::int64_t n_max);
/// Total number of q-parts over compositions of n+q-1 into parts 1 or q
/// equals S_A(a_n), by enumeration.
IdentityReport verify_eq6(int q, std::int64_t n_max);
/// Coefficient lists f_n(x) = sum_k binom(n-k(q-1), k) x^k satisfy
/// f_n = f_{n-1} + x f_{n-q}, and f_n(1) = G_{n+q-1}.
IdentityReport verify_pascal_recursion(int q, std::int64_t n_max);

struct CertifiedValue {
  Interval enclosure;
  int digits = 0;
  std::string lower() const;  // digits+2 fractional digits, rounded down
  std::string upper() const;
  nlohmann::json to_json() const;
};

/// c_A = 1 / (alpha g_q'(alpha) ln alpha), enclosed to width <= 10^-digits.
/// For q = 1, g_1(x) = x - 2 and alpha = 2.
CertifiedValue c_A_constant(int q, int digits);

/// G_{3q-3+i} = q + i(i+1)/2 for 1 <= i <= q+1, and G^q_{4q-1} = G^{q+1}_{4q+2}.
IdentityReport footnote_identity_check(int q);

struct Coincidence {
  BigInt value;
  std::int64_t g_index = 0;       // in G^q
  std::int64_t gprime_index = 0;  // in G^{q+1}
};

/// Values > 1 and <= bound found in both G^q and G^{q+1}.
std::vector<Coincidence> cross_family_coincidences(int q, const BigInt& bound);

}  // namespace narayana
