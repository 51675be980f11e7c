#include "narayana/sequences.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace narayana {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::narayana: return "narayana";
    case Family::tribonacci: return "tribonacci";
    case Family::padovan: return "padovan";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "narayana") return Family::narayana;
  if (name == "tribonacci") return Family::tribonacci;
  if (name == "padovan") return Family::padovan;
  throw PreconditionError("unknown family '" + std::string(name) + "'");
}

void FamilyParams::validate() const {
  const int min_q = family == Family::narayana ? 1 : 2;
  require(q >= min_q, std::string(family_name(family)) + " requires q >= " +
                          std::to_string(min_q) + ", got " + std::to_string(q));
}

LinearRecurrence::LinearRecurrence(std::vector<int> coeffs, std::vector<BigInt> initial)
    : coeffs_(std::move(coeffs)), initial_(std::move(initial)) {
  require(!coeffs_.empty() && coeffs_.size() == initial_.size(),
          "recurrence needs one initial value per coefficient");
  fwd_ = std::make_shared<const std::vector<BigInt>>(initial_);
  bwd_ = std::make_shared<const std::vector<BigInt>>();
}

LinearRecurrence::Snapshot LinearRecurrence::forward(std::size_t count) const {
  std::lock_guard lock(mu_);
  if (fwd_->size() >= count) return fwd_;
  auto next = std::make_shared<std::vector<BigInt>>(*fwd_);
  const std::size_t target = std::max(count, 2 * next->size());
  const std::size_t d = coeffs_.size();
  next->reserve(target);
  while (next->size() < target) {
    const std::size_t k = next->size();
    BigInt v = 0;
    for (std::size_t j = 1; j <= d; ++j) {
      if (coeffs_[j - 1] != 0) v += coeffs_[j - 1] * (*next)[k - j];
    }
    next->push_back(std::move(v));
  }
  fwd_ = std::move(next);
  return fwd_;
}

LinearRecurrence::Snapshot LinearRecurrence::forward_beyond(const BigInt& bound) const {
  Snapshot s = forward(initial_.size());
  while (s->back() <= bound) s = forward(2 * s->size());
  return s;
}

LinearRecurrence::Snapshot LinearRecurrence::backward(std::size_t count) const {
  const std::size_t d = coeffs_.size();
  Snapshot fwd = forward(d);
  std::lock_guard lock(mu_);
  if (bwd_->size() >= count) return bwd_;
  auto next = std::make_shared<std::vector<BigInt>>(*bwd_);
  const std::size_t target = std::max(count, 2 * next->size());
  // x_m for m in [m_lo, d) regardless of sign.
  auto at = [&](std::int64_t m) -> const BigInt& {
    return m >= 0 ? (*fwd)[static_cast<std::size_t>(m)]
                  : (*next)[static_cast<std::size_t>(-1 - m)];
  };
  while (next->size() < target) {
    const std::int64_t k = -1 - static_cast<std::int64_t>(next->size());
    // x_k = x_{k+d} - sum_{j=1}^{d-1} c_j x_{k+d-j}
    BigInt v = at(k + static_cast<std::int64_t>(d));
    for (std::size_t j = 1; j < d; ++j) {
      if (coeffs_[j - 1] != 0) v -= coeffs_[j - 1] * at(k + static_cast<std::int64_t>(d - j));
    }
    next->push_back(std::move(v));
  }
  bwd_ = std::move(next);
  return bwd_;
}

BigInt LinearRecurrence::term(std::int64_t k) const {
  if (k >= 0) return (*forward(static_cast<std::size_t>(k) + 1))[static_cast<std::size_t>(k)];
  require(reversible(), "negative index " + std::to_string(k) +
                            " is not integral for this recurrence");
  const auto i = static_cast<std::size_t>(-1 - k);
  return (*backward(i + 1))[i];
}

namespace {

std::unique_ptr<LinearRecurrence> make_fundamental(const FamilyParams& p) {
  const int q = p.q;
  std::vector<int> coeffs(static_cast<std::size_t>(q), 0);
  switch (p.family) {
    case Family::narayana:  // x^q - x^{q-1} - 1
      coeffs[0] += 1;
      coeffs[q - 1] += 1;
      break;
    case Family::tribonacci:  // x^q - x^{q-1} - ... - 1
      std::fill(coeffs.begin(), coeffs.end(), 1);
      break;
    case Family::padovan:  // x^q - x - 1
      coeffs[q - 2] += 1;
      coeffs[q - 1] += 1;
      break;
  }
  std::vector<BigInt> initial(static_cast<std::size_t>(q), 0);
  initial.back() = 1;
  return std::make_unique<LinearRecurrence>(std::move(coeffs), std::move(initial));
}

struct Registry {
  std::mutex mu;
  std::map<std::pair<int, int>, std::unique_ptr<LinearRecurrence>> entries;
};

Registry& registry() {
  static Registry r;
  return r;
}

template <typename Make>
const LinearRecurrence& lookup(int tag, int q, Make make) {
  Registry& r = registry();
  std::lock_guard lock(r.mu);
  auto& slot = r.entries[{tag, q}];
  if (!slot) slot = make();
  return *slot;
}

}  // namespace

const LinearRecurrence& fundamental(const FamilyParams& p) {
  p.validate();
  return lookup(static_cast<int>(p.family), p.q, [&] { return make_fundamental(p); });
}

const LinearRecurrence& u_recurrence(int q) {
  require(q >= 2, "U sequence requires q >= 2");
  return lookup(100, q, [q] {
    std::vector<BigInt> initial(static_cast<std::size_t>(q), 0);
    for (int i = 1; i < q; ++i) initial[static_cast<std::size_t>(i)] = BigInt(1) << (i - 1);
    return std::make_unique<LinearRecurrence>(std::vector<int>(static_cast<std::size_t>(q), 1),
                                              std::move(initial));
  });
}

BigInt g_term(int q, std::int64_t k) {
  return fundamental({Family::narayana, q}).term(k);
}

BigInt a_term(int q, std::int64_t k) {
  require(k >= 0, "a_term requires k >= 0");
  return g_term(q, k + a_offset(q));
}

BigInt t_term(int q, std::int64_t k) {
  return fundamental({Family::tribonacci, q}).term(k);
}

BigInt p_term(int q, std::int64_t k) {
  return fundamental({Family::padovan, q}).term(k);
}

BigInt u_term(int q, std::int64_t k) {
  require(k >= 0, "u_term requires k >= 0");
  return u_recurrence(q).term(k);
}

BigInt count_gap_strings(int q, int k) {
  require(q >= 1 && k >= 0, "count_gap_strings requires q >= 1, k >= 0");
  // state s = zeros written since the last one, capped at q-1 (q-1 also
  // covers "no one yet"); a one may follow only from state q-1.
  const auto width = static_cast<std::size_t>(q);
  std::vector<BigInt> cur(width, 0);
  cur[width - 1] = 1;
  for (int step = 0; step < k; ++step) {
    std::vector<BigInt> nxt(width, 0);
    for (std::size_t s = 0; s < width; ++s) {
      if (cur[s] == 0) continue;
      nxt[std::min(s + 1, width - 1)] += cur[s];  // write 0
      if (s == width - 1) nxt[0] += cur[s];        // write 1
    }
    cur = std::move(nxt);
  }
  BigInt total = 0;
  for (const auto& v : cur) total += v;
  return total;
}

BigInt count_no_q_ones(int q, int k) {
  require(q >= 2 && k >= 0, "count_no_q_ones requires q >= 2, k >= 0");
  // state r = length of the trailing run of ones, r < q.
  const auto width = static_cast<std::size_t>(q);
  std::vector<BigInt> cur(width, 0);
  cur[0] = 1;
  for (int step = 0; step < k; ++step) {
    std::vector<BigInt> nxt(width, 0);
    for (std::size_t r = 0; r < width; ++r) {
      if (cur[r] == 0) continue;
      nxt[0] += cur[r];
      if (r + 1 < width) nxt[r + 1] += cur[r];
    }
    cur = std::move(nxt);
  }
  BigInt total = 0;
  for (const auto& v : cur) total += v;
  return total;
}

}  // namespace narayana
