#include "narayana/representations.hpp"

#include <algorithm>
#include <optional>

#include "narayana/sequences.hpp"

namespace narayana {

namespace {

using Snapshot = LinearRecurrence::Snapshot;

// G-terms covering every a_i <= bound plus one more.
Snapshot g_terms_beyond(int q, const BigInt& bound) {
  return fundamental({Family::narayana, q}).forward_beyond(bound);
}

const BigInt& a_at(const Snapshot& g, int q, int i) {
  return (*g)[static_cast<std::size_t>(i + a_offset(q))];
}

// Largest A-index i <= limit with a_i <= n (n >= 1).
int largest_a_index(const Snapshot& g, int q, const BigInt& n, int limit) {
  const auto begin = g->begin() + a_offset(q);
  auto end = begin + std::min<std::ptrdiff_t>(limit + 1, g->end() - begin);
  auto it = std::upper_bound(begin, end, n);
  return static_cast<int>(it - begin) - 1;
}

std::string join_summands(const std::vector<std::pair<int, BigInt>>& signed_values) {
  std::string out;
  for (std::size_t i = 0; i < signed_values.size(); ++i) {
    const auto& [sign, v] = signed_values[i];
    if (i == 0) {
      out += (sign < 0 ? "-" : "") + v.str();
    } else {
      out += (sign < 0 ? " - " : " + ") + v.str();
    }
  }
  return out;
}

}  // namespace

QRepresentation greedy_q_rep(int q, const BigInt& n) {
  require(q >= 1, "q must be >= 1");
  require(n >= 0, "greedy_q_rep requires n >= 0");
  QRepresentation rep{q, {}};
  if (n == 0) return rep;
  const Snapshot g = g_terms_beyond(q, n);
  BigInt rest = n;
  int limit = static_cast<int>(g->size()) - a_offset(q) - 1;
  while (rest > 0) {
    const int i = largest_a_index(g, q, rest, limit);
    rep.indices.push_back(i);
    rest -= a_at(g, q, i);
    limit = i - 1;
  }
  return rep;
}

Validation validate_q_rep(const QRepresentation& rep) {
  if (rep.q < 1) return {false, "q must be >= 1"};
  for (std::size_t i = 0; i < rep.indices.size(); ++i) {
    if (rep.indices[i] < 0) return {false, "negative index " + std::to_string(rep.indices[i])};
    if (i == 0) continue;
    const int gap = rep.indices[i - 1] - rep.indices[i];
    if (gap <= 0) return {false, "indices not strictly decreasing"};
    if (gap < rep.q) {
      return {false, "indices " + std::to_string(rep.indices[i - 1]) + " and " +
                         std::to_string(rep.indices[i]) + " are " + std::to_string(gap) +
                         " apart, need " + std::to_string(rep.q)};
    }
  }
  return {};
}

BigInt rep_value(const QRepresentation& rep) {
  BigInt total = 0;
  for (int i : rep.indices) total += a_term(rep.q, i);
  return total;
}

std::vector<BigInt> summands(const QRepresentation& rep) {
  std::vector<BigInt> out;
  out.reserve(rep.indices.size());
  for (int i : rep.indices) out.push_back(a_term(rep.q, i));
  return out;
}

std::string format_rep(const QRepresentation& rep) {
  if (rep.indices.empty()) return "0 = 0";
  std::vector<std::pair<int, BigInt>> vals;
  for (auto& v : summands(rep)) vals.emplace_back(1, std::move(v));
  return rep_value(rep).str() + " = " + join_summands(vals);
}

nlohmann::json to_json(const QRepresentation& rep) {
  nlohmann::json s = nlohmann::json::array();
  for (const auto& v : summands(rep)) s.push_back(v.str());
  return {{"q", rep.q}, {"value", rep_value(rep).str()}, {"indices", rep.indices}, {"summands", s}};
}

// ---------------------------------------------------------------------------
// Far-difference representations.
//
// M_k = a_k + M_{k-2q} is the largest value of a valid signed sum whose top
// term is +a_k. The leading index of n is the smallest k with M_k >= n; the
// remainder n - a_k is then represented recursively, with its sign flipped
// when negative, under the gap bound implied by the sign change.

namespace {

struct FarDiffContext {
  int q;
  Snapshot g;
  std::vector<BigInt> maxima;  // M_k

  const BigInt& a(int k) const { return a_at(g, q, k); }
};

FarDiffContext make_far_context(int q, const BigInt& n) {
  // a_k >= M_{k-1} + 1 > n guarantees the leading index is below k.
  FarDiffContext ctx{q, g_terms_beyond(q, 2 * n + 2), {}};
  const int count = static_cast<int>(ctx.g->size()) - a_offset(q);
  ctx.maxima.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    BigInt m = ctx.a(k);
    if (k - 2 * q >= 0) m += ctx.maxima[static_cast<std::size_t>(k - 2 * q)];
    ctx.maxima.push_back(std::move(m));
  }
  return ctx;
}

// Representation of n >= 1 whose top index is <= limit, all signs relative
// to a leading plus.
std::optional<std::vector<SignedTerm>> far_rec(const FarDiffContext& ctx, const BigInt& n,
                                               int limit) {
  const int count = static_cast<int>(ctx.maxima.size());
  auto first = std::lower_bound(ctx.maxima.begin(), ctx.maxima.end(), n);
  int k = static_cast<int>(first - ctx.maxima.begin());
  for (int attempt = 0; attempt < 2 && k < count && k <= limit; ++attempt, ++k) {
    const BigInt rest = n - ctx.a(k);
    std::vector<SignedTerm> terms{{k, 1}};
    if (rest == 0) return terms;
    std::optional<std::vector<SignedTerm>> tail;
    if (rest > 0) {
      tail = far_rec(ctx, rest, k - 2 * ctx.q);
    } else {
      tail = far_rec(ctx, -rest, k - ctx.q - 1);
      if (tail) {
        for (auto& t : *tail) t.sign = -t.sign;
      }
    }
    if (tail) {
      terms.insert(terms.end(), tail->begin(), tail->end());
      return terms;
    }
  }
  return std::nullopt;
}

}  // namespace

FarDifferenceRep far_difference_rep(int q, const BigInt& n) {
  require(q >= 1, "q must be >= 1");
  require(n >= 1, "far_difference_rep requires n >= 1");
  const FarDiffContext ctx = make_far_context(q, n);
  auto terms = far_rec(ctx, n, static_cast<int>(ctx.maxima.size()) - 1);
  if (!terms) throw std::logic_error("no far-difference representation found for " + n.str());
  return {q, std::move(*terms)};
}

Validation validate_far_difference(const FarDifferenceRep& rep) {
  if (rep.q < 1) return {false, "q must be >= 1"};
  for (std::size_t i = 0; i < rep.terms.size(); ++i) {
    const auto& t = rep.terms[i];
    if (t.index < 0) return {false, "negative index"};
    if (t.sign != 1 && t.sign != -1) return {false, "sign must be +1 or -1"};
    if (i == 0) {
      if (t.sign != 1) return {false, "leading term must be positive"};
      continue;
    }
    const auto& prev = rep.terms[i - 1];
    const int gap = prev.index - t.index;
    const int need = prev.sign == t.sign ? 2 * rep.q : rep.q + 1;
    if (gap < need) {
      return {false, "indices " + std::to_string(prev.index) + " and " +
                         std::to_string(t.index) + " are " + std::to_string(gap) +
                         " apart, need " + std::to_string(need)};
    }
  }
  return {};
}

BigInt rep_value(const FarDifferenceRep& rep) {
  BigInt total = 0;
  for (const auto& t : rep.terms) total += t.sign * a_term(rep.q, t.index);
  return total;
}

std::string format_rep(const FarDifferenceRep& rep) {
  std::vector<std::pair<int, BigInt>> vals;
  for (const auto& t : rep.terms) vals.emplace_back(t.sign, a_term(rep.q, t.index));
  return rep_value(rep).str() + " = " + join_summands(vals);
}

nlohmann::json to_json(const FarDifferenceRep& rep) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : rep.terms) {
    terms.push_back({{"index", t.index},
                     {"sign", t.sign},
                     {"summand", a_term(rep.q, t.index).str()}});
  }
  return {{"q", rep.q}, {"value", rep_value(rep).str()}, {"terms", terms}};
}

// ---------------------------------------------------------------------------

TriQRepresentation tribonacci_greedy_rep(int q, const BigInt& n) {
  require(q >= 2, "tribonacci representations require q >= 2");
  require(n >= 0, "tribonacci_greedy_rep requires n >= 0");
  TriQRepresentation rep{q, {}};
  if (n == 0) return rep;
  const Snapshot t = fundamental({Family::tribonacci, q}).forward_beyond(n);
  // a_i = T_{i+q}
  const auto begin = t->begin() + q;
  BigInt rest = n;
  auto end = t->end();
  while (rest > 0) {
    auto it = std::upper_bound(begin, end, rest) - 1;
    rep.indices.push_back(static_cast<int>(it - begin));
    rest -= *it;
    end = it;
  }
  return rep;
}

Validation validate_tri_rep(const TriQRepresentation& rep) {
  if (rep.q < 2) return {false, "q must be >= 2"};
  int run = 0;
  for (std::size_t i = 0; i < rep.indices.size(); ++i) {
    if (rep.indices[i] < 0) return {false, "negative index"};
    if (i > 0 && rep.indices[i - 1] <= rep.indices[i])
      return {false, "indices not strictly decreasing"};
    run = (i > 0 && rep.indices[i - 1] == rep.indices[i] + 1) ? run + 1 : 1;
    if (run >= rep.q) {
      return {false, std::to_string(rep.q) + " consecutive indices ending at " +
                         std::to_string(rep.indices[i])};
    }
  }
  return {};
}

BigInt rep_value(const TriQRepresentation& rep) {
  BigInt total = 0;
  for (int i : rep.indices) total += t_term(rep.q, i + rep.q);
  return total;
}

std::string format_rep(const TriQRepresentation& rep) {
  if (rep.indices.empty()) return "0 = 0";
  std::vector<std::pair<int, BigInt>> vals;
  for (int i : rep.indices) vals.emplace_back(1, t_term(rep.q, i + rep.q));
  return rep_value(rep).str() + " = " + join_summands(vals);
}

// ---------------------------------------------------------------------------

int sum_of_digits(int q, const BigInt& n) {
  return static_cast<int>(greedy_q_rep(q, n).indices.size());
}

namespace {

// Greedy digit sums over machine integers: s(j) = 1 + s(j - a_top(j)),
// with s memoised for j below a fixed table size.
class DigitSumCounter {
 public:
  DigitSumCounter(int q, std::uint64_t limit) {
    const Snapshot g = g_terms_beyond(q, BigInt(limit));
    for (std::size_t i = static_cast<std::size_t>(a_offset(q)); i < g->size(); ++i) {
      a_.push_back(static_cast<std::uint64_t>((*g)[i]));
    }
    table_.resize(static_cast<std::size_t>(std::min<std::uint64_t>(limit, kTableSize)));
    for (std::uint64_t j = 1; j < table_.size(); ++j) {
      table_[j] = static_cast<std::uint8_t>(1 + table_[j - top(j)]);
    }
  }

  std::uint64_t digit_sum(std::uint64_t j) const {
    std::uint64_t extra = 0;
    while (j >= table_.size()) {
      j -= top(j);
      ++extra;
    }
    return extra + table_[j];
  }

 private:
  static constexpr std::uint64_t kTableSize = std::uint64_t{1} << 22;

  // largest a_i <= j, j >= 1
  std::uint64_t top(std::uint64_t j) const {
    return *(std::upper_bound(a_.begin(), a_.end(), j) - 1);
  }

  std::vector<std::uint64_t> a_;
  std::vector<std::uint8_t> table_;
};

constexpr std::uint64_t kDirectSumLimit = std::uint64_t{1} << 40;

}  // namespace

std::vector<BigInt> cumulative_S_at(int q, std::span<const BigInt> checkpoints) {
  require(q >= 1, "q must be >= 1");
  std::vector<BigInt> out;
  if (checkpoints.empty()) return out;
  require(std::is_sorted(checkpoints.begin(), checkpoints.end()), "checkpoints must ascend");
  require(checkpoints.front() >= 0, "cumulative_S requires n >= 0");
  require(checkpoints.back() <= BigInt(kDirectSumLimit),
          "cumulative_S by direct summation is limited to n <= 2^40");
  const auto limit = static_cast<std::uint64_t>(checkpoints.back());
  DigitSumCounter counter(q, std::max<std::uint64_t>(limit, 1));
  std::uint64_t j = 0;
  std::uint64_t acc = 0;  // at most 40 * 2^40
  for (const auto& cp : checkpoints) {
    const auto target = static_cast<std::uint64_t>(cp);
    for (; j < target; ++j) acc += counter.digit_sum(j);
    out.emplace_back(acc);
  }
  return out;
}

BigInt cumulative_S(int q, const BigInt& n) {
  const BigInt cp[] = {n};
  return cumulative_S_at(q, cp).front();
}

Composition rep_to_composition(int q, const BigInt& l, int k) {
  require(q >= 1 && k >= 0, "rep_to_composition requires q >= 1, k >= 0");
  require(l >= 0 && l < a_term(q, k),
          "l = " + l.str() + " outside [0, a_" + std::to_string(k) + ")");
  std::vector<bool> bits(static_cast<std::size_t>(k + q - 1), false);
  for (int i : greedy_q_rep(q, l).indices) bits[static_cast<std::size_t>(i)] = true;
  Composition c;
  std::size_t pos = 0;
  while (pos < bits.size()) {
    if (bits[pos]) {
      c.parts.push_back(q);
      c.colors.push_back(q == 1 ? 2 : 1);
      pos += static_cast<std::size_t>(q);
    } else {
      c.parts.push_back(1);
      c.colors.push_back(1);
      ++pos;
    }
  }
  return c;
}

int count_q_parts(int q, const Composition& c) {
  int count = 0;
  for (std::size_t i = 0; i < c.parts.size(); ++i) {
    if (q == 1 ? c.colors[i] == 2 : c.parts[i] == q) ++count;
  }
  return count;
}

}  // namespace narayana
