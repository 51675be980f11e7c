#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "narayana/bigint.hpp"

namespace narayana {

enum class Family { narayana, tribonacci, padovan };

std::string_view family_name(Family f);
Family parse_family(std::string_view name);

/// Selects one characteristic polynomial: x^q - x^{q-1} - 1 (narayana),
/// x^q - sum_{i<q} x^i (tribonacci) or x^q - x - 1 (padovan).
struct FamilyParams {
  Family family = Family::narayana;
  int q = 1;

  /// Throws PreconditionError unless q >= 1 (narayana) or q >= 2 (others).
  void validate() const;
  friend bool operator==(const FamilyParams&, const FamilyParams&) = default;
};

/// Exact terms of a monic integer linear recurrence
///   x_{k+d} = sum_{j=1}^{d} c_j x_{k+d-j}
/// extended to negative indices by running it backward when c_d = 1.
///
/// Terms live in immutable snapshots. Growing the cache publishes a new
/// snapshot (capacity doubles) and never touches one already handed out,
/// so concurrent readers need no further synchronization.
class LinearRecurrence {
 public:
  using Snapshot = std::shared_ptr<const std::vector<BigInt>>;

  LinearRecurrence(std::vector<int> coeffs, std::vector<BigInt> initial);

  int order() const { return static_cast<int>(coeffs_.size()); }
  bool reversible() const { return coeffs_.back() == 1; }

  BigInt term(std::int64_t k) const;

  /// Snapshot holding at least `count` terms starting at index 0.
  Snapshot forward(std::size_t count) const;

  /// Snapshot whose last term is strictly greater than `bound`. The sequence
  /// must be eventually increasing.
  Snapshot forward_beyond(const BigInt& bound) const;

 private:
  Snapshot backward(std::size_t count) const;  // [i] holds x_{-1-i}

  std::vector<int> coeffs_;
  std::vector<BigInt> initial_;
  mutable std::mutex mu_;
  mutable Snapshot fwd_;
  mutable Snapshot bwd_;
};

/// Process-wide recurrence for the fundamental sequence of `p`
/// (q-1 zeros followed by a one).
const LinearRecurrence& fundamental(const FamilyParams& p);

/// The tribonacci-recursion sequence U with U_0 = 0, U_i = 2^{i-1} (0<i<q).
const LinearRecurrence& u_recurrence(int q);

/// G^q_k, narayana family. Negative k uses the backward recurrence (q >= 2).
BigInt g_term(int q, std::int64_t k);
/// a_k = G_{2q-2+k}.
BigInt a_term(int q, std::int64_t k);
BigInt t_term(int q, std::int64_t k);
BigInt p_term(int q, std::int64_t k);
BigInt u_term(int q, std::int64_t k);

/// Index offset between A-indices and G-indices: a_i = G_{i + a_offset(q)}.
constexpr int a_offset(int q) { return 2 * q - 2; }

/// Binary strings of length k whose ones are separated by at least q-1 zeros.
BigInt count_gap_strings(int q, int k);

/// Binary strings of length k without q consecutive ones.
BigInt count_no_q_ones(int q, int k);

}  // namespace narayana
