#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "narayana/bigint.hpp"
#include "narayana/compositions.hpp"
#include "json.hpp"

namespace narayana {

/// Sum of distinct a_i = G_{2q-2+i}; indices strictly decreasing and
/// pairwise at least q apart.
struct QRepresentation {
  int q = 1;
  std::vector<int> indices;

  friend bool operator==(const QRepresentation&, const QRepresentation&) = default;
};

struct SignedTerm {
  int index = 0;
  int sign = 1;  // +1 or -1

  friend bool operator==(const SignedTerm&, const SignedTerm&) = default;
};

/// Signed sum of a_i; same-sign neighbours at least 2q apart, opposite-sign
/// neighbours at least q+1 apart.
struct FarDifferenceRep {
  int q = 1;
  std::vector<SignedTerm> terms;

  friend bool operator==(const FarDifferenceRep&, const FarDifferenceRep&) = default;
};

/// Sum of distinct a_i = T_{i+q} (tribonacci family) without q consecutive
/// indices.
struct TriQRepresentation {
  int q = 2;
  std::vector<int> indices;

  friend bool operator==(const TriQRepresentation&, const TriQRepresentation&) = default;
};

struct Validation {
  bool valid = true;
  std::string violation;

  explicit operator bool() const { return valid; }
};

QRepresentation greedy_q_rep(int q, const BigInt& n);
Validation validate_q_rep(const QRepresentation& rep);
BigInt rep_value(const QRepresentation& rep);
std::vector<BigInt> summands(const QRepresentation& rep);
/// "49 = 41 + 6 + 2"; "0 = 0" for the empty representation.
std::string format_rep(const QRepresentation& rep);
/// {"q":3,"value":"49","indices":[9,4,1],"summands":["41","6","2"]}
nlohmann::json to_json(const QRepresentation& rep);

FarDifferenceRep far_difference_rep(int q, const BigInt& n);
Validation validate_far_difference(const FarDifferenceRep& rep);
BigInt rep_value(const FarDifferenceRep& rep);
std::string format_rep(const FarDifferenceRep& rep);
nlohmann::json to_json(const FarDifferenceRep& rep);

TriQRepresentation tribonacci_greedy_rep(int q, const BigInt& n);
Validation validate_tri_rep(const TriQRepresentation& rep);
BigInt rep_value(const TriQRepresentation& rep);
std::string format_rep(const TriQRepresentation& rep);

/// Number of summands in the greedy q-representation of n.
int sum_of_digits(int q, const BigInt& n);

/// S(n) = sum_{j<n} s(j), by summing every digit sum.
BigInt cumulative_S(int q, const BigInt& n);
/// cumulative_S at each checkpoint (ascending), in a single pass.
std::vector<BigInt> cumulative_S_at(int q, std::span<const BigInt> checkpoints);

/// The bijection from [0, a_k) onto compositions of k+q-1 into parts 1 or q:
/// read the digits of l on a_0..a_{k-1}, pad q-1 zeros, map 0 -> 1 and
/// 1 0^{q-1} -> q. For q = 1 the part produced by a 1 digit has colour 2.
Composition rep_to_composition(int q, const BigInt& l, int k);

/// Count of parts equal to q (colour-2 ones when q = 1).
int count_q_parts(int q, const Composition& c);

}  // namespace narayana
