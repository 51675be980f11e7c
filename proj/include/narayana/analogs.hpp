#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "narayana/bigint.hpp"
#include "json.hpp"

namespace narayana {

enum class AnalogTheorem { padovan, tribonacci, padovan_recurrence };

struct AnalogMismatch {
  std::string equality;  // which count failed
  std::int64_t n = 0;
  std::string sequence_value;
  std::string count_value;
};

struct AnalogReport {
  AnalogTheorem theorem = AnalogTheorem::padovan;
  int q = 3;
  std::int64_t n_max = 0;
  std::int64_t checks = 0;
  bool pass = true;
  std::optional<AnalogMismatch> mismatch;

  void record(const std::string& equality, std::int64_t n, const BigInt& seq, const BigInt& count);
  std::string summary() const;
  nlohmann::json to_json() const;
};

/// p_n against c_{n-q+1}(q-1 or q) for n >= q, c_n(q-1 mod q) and
/// c_{n+1}(1 mod q-1, part 1 excluded) for n >= 1.
AnalogReport verify_padovan_counts(int q, std::int64_t n_max);

/// T_n = c_{n-q+1}(1..q) for n >= q and U_n = c_n(1..q-1 mod q) for n >= 1.
AnalogReport verify_tribonacci_counts(int q, std::int64_t n_max);

/// p_{n+q-1} = p_n + p_{n-1} for 1 <= n <= n_max.
AnalogReport verify_padovan_recurrence(int q, std::int64_t n_max);

struct ProbeRow {
  std::int64_t n = 0;
  BigInt residue_count;  // c_n(q-1 mod q)
  BigInt shifted_count;  // c_{n+1}(>= q and 1 mod q-1)
};

/// Side-by-side counts for compositions into parts q-1 (mod q) and, one
/// larger, into parts >= q congruent to 1 mod q-1.
std::vector<ProbeRow> sills_analog_probe(int q, std::int64_t n_max);

}  // namespace narayana
