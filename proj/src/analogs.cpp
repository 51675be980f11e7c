#include "narayana/analogs.hpp"

#include <map>
#include <set>

#include "narayana/compositions.hpp"
#include "narayana/sequences.hpp"

namespace narayana {

namespace {

std::string_view theorem_name(AnalogTheorem t) {
  switch (t) {
    case AnalogTheorem::padovan: return "padovanCompositions";
    case AnalogTheorem::tribonacci: return "tribonacciCompositions";
    case AnalogTheorem::padovan_recurrence: return "padovanRecurrence";
  }
  return "?";
}

// parts q, 2q-1, 3q-2, ...: 1 (mod q-1) with the part 1 removed
PartConstraint padovan_third_parts(int q) {
  return PartConstraint::residue_set(q - 1, {1 % (q - 1)}, {1});
}

int as_int(std::int64_t n) { return static_cast<int>(n); }

}  // namespace

void AnalogReport::record(const std::string& equality, std::int64_t n, const BigInt& seq,
                          const BigInt& count) {
  ++checks;
  if (seq != count && pass) {
    pass = false;
    mismatch = AnalogMismatch{equality, n, seq.str(), count.str()};
  }
}

std::string AnalogReport::summary() const {
  std::string s = std::string(theorem_name(theorem)) + " q=" + std::to_string(q) +
                  " n<=" + std::to_string(n_max) + ": ";
  if (pass) return s + "pass (" + std::to_string(checks) + " checks)";
  return s + "FAIL " + mismatch->equality + " at n=" + std::to_string(mismatch->n) + " (" +
         mismatch->sequence_value + " != " + mismatch->count_value + ")";
}

nlohmann::json AnalogReport::to_json() const {
  nlohmann::json j{{"theorem", theorem_name(theorem)}, {"q", q}, {"nMax", n_max},
                   {"checks", checks}, {"status", pass ? "pass" : "fail"}};
  if (mismatch) {
    j["counterexample"] = {{"equality", mismatch->equality}, {"n", mismatch->n},
                           {"sequence", mismatch->sequence_value}, {"count", mismatch->count_value}};
  }
  return j;
}

AnalogReport verify_padovan_counts(int q, std::int64_t n_max) {
  require(q >= 2, "Padovan counts require q >= 2");
  AnalogReport r{AnalogTheorem::padovan, q, n_max};
  const PartConstraint pair = PartConstraint::finite_set({{q - 1, 1}, {q, 1}});
  const PartConstraint residue = residue_mod(q, q - 1);
  const PartConstraint third = padovan_third_parts(q);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const BigInt p = p_term(q, n);
    if (n >= q) r.record("c_{n-q+1}(q-1 or q)", n, p, count_compositions(as_int(n - q + 1), pair));
    r.record("c_n(q-1 mod q)", n, p, count_compositions(as_int(n), residue));
    r.record("c_{n+1}(1 mod q-1, !=1)", n, p, count_compositions(as_int(n + 1), third));
  }
  return r;
}

AnalogReport verify_tribonacci_counts(int q, std::int64_t n_max) {
  require(q >= 2, "tribonacci counts require q >= 2");
  AnalogReport r{AnalogTheorem::tribonacci, q, n_max};
  std::map<int, int> upto;
  std::set<int> residues;
  for (int i = 1; i <= q; ++i) upto[i] = 1;
  for (int i = 1; i < q; ++i) residues.insert(i);
  const PartConstraint small = PartConstraint::finite_set(upto);
  const PartConstraint residue = PartConstraint::residue_set(q, residues);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    if (n >= q) r.record("c_{n-q+1}(1..q)", n, t_term(q, n), count_compositions(as_int(n - q + 1), small));
    r.record("c_n(1..q-1 mod q)", n, u_term(q, n), count_compositions(as_int(n), residue));
  }
  return r;
}

AnalogReport verify_padovan_recurrence(int q, std::int64_t n_max) {
  require(q >= 2, "Padovan recurrence requires q >= 2");
  AnalogReport r{AnalogTheorem::padovan_recurrence, q, n_max};
  for (std::int64_t n = 1; n <= n_max; ++n) {
    r.record("p_{n+q-1} = p_n + p_{n-1}", n, p_term(q, n + q - 1), p_term(q, n) + p_term(q, n - 1));
  }
  return r;
}

std::vector<ProbeRow> sills_analog_probe(int q, std::int64_t n_max) {
  require(q >= 3, "the probe requires q >= 3");
  const PartConstraint residue = residue_mod(q, q - 1);
  const PartConstraint third = padovan_third_parts(q);
  std::vector<ProbeRow> rows;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    rows.push_back({n, count_compositions(as_int(n), residue), count_compositions(as_int(n + 1), third)});
  }
  return rows;
}

}  // namespace narayana
