#include "narayana/identities.hpp"

#include <cmath>

#include "narayana/beatty.hpp"
#include "narayana/compositions.hpp"
#include "narayana/representations.hpp"
#include "narayana/sequences.hpp"

namespace narayana {

std::string_view identity_name(IdentityId id) {
  switch (id) {
    case IdentityId::sum_g: return "sumG";
    case IdentityId::binomial_diagonal: return "binomialDiagonal";
    case IdentityId::weighted_binomial: return "weightedBinomial";
    case IdentityId::footnote: return "footnote";
    case IdentityId::cross_family: return "crossFamily";
    case IdentityId::eq6: return "qPartTotal";
    case IdentityId::pascal: return "pascalRecursion";
  }
  return "?";
}

void IdentityReport::record(std::int64_t n, const BigInt& lhs, const BigInt& rhs) {
  if (lhs != rhs && pass) {
    pass = false;
    counterexample = Counterexample{n, lhs.str(), rhs.str()};
  }
}

std::string IdentityReport::summary() const {
  std::string s = std::string(identity_name(id)) + " q=" + std::to_string(q) + " n=" +
                  std::to_string(from) + ".." + std::to_string(to) + ": ";
  if (pass) return s + "pass";
  return s + "FAIL at n=" + std::to_string(counterexample->n) + " (" + counterexample->lhs +
         " != " + counterexample->rhs + ")";
}

nlohmann::json IdentityReport::to_json() const {
  nlohmann::json j{{"identity", identity_name(id)}, {"q", q}, {"from", from}, {"to", to},
                   {"status", pass ? "pass" : "fail"}};
  if (counterexample) {
    j["counterexample"] = {{"n", counterexample->n}, {"lhs", counterexample->lhs},
                           {"rhs", counterexample->rhs}};
  }
  return j;
}

BigInt binom(std::int64_t a, std::int64_t b) {
  if (a < 0 || b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  BigInt r = 1;
  for (std::int64_t i = 1; i <= b; ++i) {
    r *= a - b + i;
    r /= i;
  }
  return r;
}

IdentityReport verify_sum_identity(int q, std::int64_t n_max) {
  require(q >= 1 && n_max >= 0, "verify_sum_identity requires q >= 1, n_max >= 0");
  IdentityReport r{IdentityId::sum_g, q, 0, n_max};
  BigInt partial = 0;
  for (std::int64_t n = 0; n <= n_max; ++n) {
    partial += g_term(q, n);
    r.record(n, g_term(q, n + q) - 1, partial);
  }
  return r;
}

BigInt binomial_diagonal_sum(int q, std::int64_t n) {
  require(q >= 1 && n >= 0, "binomial_diagonal_sum requires q >= 1, n >= 0");
  BigInt s = 0;
  for (std::int64_t k = 0; k <= n / q; ++k) s += binom(n - k * (q - 1), k);
  return s;
}

BigInt weighted_binomial_sum(int q, std::int64_t n) {
  require(q >= 1 && n >= 0, "weighted_binomial_sum requires q >= 1, n >= 0");
  BigInt s = 0;
  for (std::int64_t k = 1; k <= n / q; ++k) s += k * binom(n - k * (q - 1), k);
  return s;
}

IdentityReport verify_binomial_identity(int q, std::int64_t n_max) {
  require(q >= 1 && n_max >= 0, "verify_binomial_identity requires q >= 1, n_max >= 0");
  IdentityReport r{IdentityId::binomial_diagonal, q, 0, n_max};
  for (std::int64_t n = 0; n <= n_max; ++n) {
    r.record(n, binomial_diagonal_sum(q, n), g_term(q, n + q - 1));
  }
  return r;
}

IdentityReport verify_weighted_identity(int q, std::int64_t n_max) {
  require(q >= 1 && n_max >= 0, "verify_weighted_identity requires q >= 1, n_max >= 0");
  IdentityReport r{IdentityId::weighted_binomial, q, 0, n_max};
  std::vector<BigInt> checkpoints;
  for (std::int64_t n = 0; n <= n_max; ++n) checkpoints.push_back(g_term(q, n + q - 1));
  const std::vector<BigInt> direct = cumulative_S_at(q, checkpoints);
  for (std::int64_t n = 0; n <= n_max; ++n) {
    r.record(n, weighted_binomial_sum(q, n), direct[static_cast<std::size_t>(n)]);
  }
  return r;
}

IdentityReport verify_eq6(int q, std::int64_t n_max) {
  require(q >= 1 && n_max >= 0, "verify_eq6 requires q >= 1, n_max >= 0");
  IdentityReport r{IdentityId::eq6, q, 0, n_max};
  const PartConstraint parts = one_or_q(q);
  for (std::int64_t n = 0; n <= n_max; ++n) {
    BigInt total = 0;
    for (const auto& c : enumerate_compositions(static_cast<int>(n + q - 1), parts)) {
      total += count_q_parts(q, c);
    }
    r.record(n, total, cumulative_S(q, a_term(q, n)));
  }
  return r;
}

IdentityReport verify_pascal_recursion(int q, std::int64_t n_max) {
  require(q >= 1 && n_max >= 0, "verify_pascal_recursion requires q >= 1, n_max >= 0");
  IdentityReport r{IdentityId::pascal, q, 1, n_max};
  using Poly = std::vector<BigInt>;
  auto coefficients = [q](std::int64_t n) {
    Poly f;
    if (n < 0) return f;
    for (std::int64_t k = 0; k <= n / q; ++k) f.push_back(binom(n - k * (q - 1), k));
    return f;
  };
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const Poly lhs = coefficients(n);
    Poly rhs = coefficients(n - 1);
    const Poly shifted = coefficients(n - q);
    if (rhs.size() < shifted.size() + 1) rhs.resize(shifted.size() + 1, 0);
    for (std::size_t k = 0; k < shifted.size(); ++k) rhs[k + 1] += shifted[k];
    while (!rhs.empty() && rhs.back() == 0) rhs.pop_back();
    BigInt at_one = 0;
    for (const auto& c : lhs) at_one += c;
    // both lists are free of trailing zeros, so they differ at some index
    for (std::size_t k = 0; k < std::max(lhs.size(), rhs.size()); ++k) {
      const BigInt l = k < lhs.size() ? lhs[k] : BigInt(0);
      const BigInt rr = k < rhs.size() ? rhs[k] : BigInt(0);
      if (l != rr) {
        r.record(n, l, rr);
        break;
      }
    }
    r.record(n, at_one, g_term(q, n + q - 1));
  }
  return r;
}

std::string CertifiedValue::lower() const { return decimal_floor(enclosure.lo, digits + 2); }
std::string CertifiedValue::upper() const { return decimal_ceil(enclosure.hi, digits + 2); }

nlohmann::json CertifiedValue::to_json() const {
  return {{"lower", lower()}, {"upper", upper()}, {"digits", digits}};
}

namespace {

constexpr unsigned kMaxConstantBits = 4096;

Rational pow_rat(const Rational& x, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// x g_q'(x) for q >= 2, increasing on [1, 2].
Rational x_times_gprime(int q, const Rational& x) {
  return pow_rat(x, q - 1) * (q * x - (q - 1));
}

Rational ten_to_minus(int digits) {
  BigInt p = 1;
  for (int i = 0; i < digits; ++i) p *= 10;
  return Rational(1) / Rational(p);
}

}  // namespace

CertifiedValue c_A_constant(int q, int digits) {
  require(q >= 1, "c_A requires q >= 1");
  require(digits >= 0, "digits must be >= 0");
  const Rational target = ten_to_minus(digits);
  unsigned bits = static_cast<unsigned>(std::ceil(digits * 3.3219280948873626)) + 16;
  while (bits <= kMaxConstantBits) {
    Interval c;
    if (q == 1) {
      // alpha = 2, g_1'(x) = 1: c_A = 1 / (2 ln 2)
      const Interval ln2 = log_enclosure({2, 2}, bits);
      c = Interval{1, 1} / (Interval{2, 2} * ln2);
    } else {
      const AlgebraicRoot root = AlgebraicRoot::bisect(q, bits);
      if (root.lo() > 1) {
        const Interval ln = log_enclosure(root.enclosure(), bits);
        const Interval denom{x_times_gprime(q, root.lo()) * ln.lo,
                             x_times_gprime(q, root.hi()) * ln.hi};
        c = round_outward(Interval{1, 1} / round_outward(denom, 2 * bits), 2 * bits);
      } else {
        c = {0, 1};
      }
    }
    if (c.width() <= target) return {c, digits};
    bits *= 2;
  }
  throw BudgetError("c_A to " + std::to_string(digits) + " digits needs more than " +
                    std::to_string(kMaxConstantBits) + " bits");
}

IdentityReport footnote_identity_check(int q) {
  require(q >= 1, "footnote_identity_check requires q >= 1");
  IdentityReport r{IdentityId::footnote, q, 1, q + 1};
  for (std::int64_t i = 1; i <= q + 1; ++i) {
    r.record(i, g_term(q, 3 * q - 3 + i), BigInt(q) + i * (i + 1) / 2);
  }
  r.record(4 * q - 1, g_term(q, 4 * q - 1), g_term(q + 1, 4 * q + 2));
  return r;
}

std::vector<Coincidence> cross_family_coincidences(int q, const BigInt& bound) {
  require(q >= 1, "q must be >= 1");
  require(bound >= 1, "bound must be >= 1");
  // Past index 2q-2 both sequences are strictly increasing and exceed 1.
  std::int64_t i = 2 * q - 1;
  std::int64_t j = 2 * (q + 1) - 1;
  std::vector<Coincidence> out;
  BigInt gi = g_term(q, i);
  BigInt gj = g_term(q + 1, j);
  while (gi <= bound && gj <= bound) {
    if (gi == gj) {
      out.push_back({gi, i, j});
      gi = g_term(q, ++i);
      gj = g_term(q + 1, ++j);
    } else if (gi < gj) {
      gi = g_term(q, ++i);
    } else {
      gj = g_term(q + 1, ++j);
    }
  }
  return out;
}

}  // namespace narayana
