#include "narayana/beatty.hpp"

#include <algorithm>
#include <map>

#include "narayana/sequences.hpp"

namespace narayana {

namespace {

BigInt pow_int(const BigInt& base, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

int g_sign_at(int q, const BigInt& num, unsigned bits) {
  // 2^{q bits} g_q(num / 2^bits) = num^q - num^{q-1} 2^bits - 2^{q bits}
  const BigInt head = pow_int(num, q - 1);
  const BigInt v = head * num - (head << bits) - (BigInt(1) << (static_cast<unsigned>(q) * bits));
  return v < 0 ? -1 : (v > 0 ? 1 : 0);
}

AlgebraicRoot::AlgebraicRoot(int q, unsigned bits, BigInt lo, BigInt hi)
    : q_(q), bits_(bits), lo_(std::move(lo)), hi_(std::move(hi)) {
  lo_pow_ = pow_int(lo_, q_);
  hi_pow_ = pow_int(hi_, q_);
}

AlgebraicRoot AlgebraicRoot::bisect(int q, unsigned bits) {
  require(q >= 2, "dominant_root requires q >= 2 (the q = 1 zero is exactly 2)");
  // g_q(1) = -1 < 0 < 2^{q-1} - 1 = g_q(2)
  return AlgebraicRoot(q, 0, 1, 2).refined(bits);
}

AlgebraicRoot AlgebraicRoot::refined(unsigned bits) const {
  require(bits >= bits_, "refinement cannot lower precision");
  BigInt lo = lo_ << (bits - bits_);
  BigInt hi = hi_ << (bits - bits_);
  for (unsigned b = bits_; b < bits; ++b) {
    const BigInt mid = (lo + hi) >> 1;
    const int s = g_sign_at(q_, mid, bits);
    if (s == 0) throw std::logic_error("g_q has no rational zero in (1, 2)");
    (s < 0 ? lo : hi) = mid;
  }
  return AlgebraicRoot(q_, bits, std::move(lo), std::move(hi));
}

Rational AlgebraicRoot::lo() const { return Rational(lo_) / Rational(BigInt(1) << bits_); }
Rational AlgebraicRoot::hi() const { return Rational(hi_) / Rational(BigInt(1) << bits_); }

AlgebraicRoot dominant_root(int q, const Rational& width_bound) {
  require(width_bound > 0, "width bound must be positive");
  unsigned bits = 0;
  while (Rational(1) / Rational(BigInt(1) << bits) > width_bound) ++bits;
  return AlgebraicRoot::bisect(q, bits);
}

BeattyPair::BeattyPair(int q, unsigned max_bits)
    : q_(q),
      max_bits_(max_bits),
      root_(std::make_shared<const AlgebraicRoot>(AlgebraicRoot::bisect(q, kInitialBits))) {}

std::shared_ptr<const AlgebraicRoot> BeattyPair::root() const {
  std::lock_guard lock(mu_);
  return root_;
}

std::shared_ptr<const AlgebraicRoot> BeattyPair::refine_beyond(unsigned bits) const {
  std::lock_guard lock(mu_);
  if (root_->bits() <= bits) {
    const unsigned next = 2 * bits;
    if (next > max_bits_) {
      throw BudgetError("certified floor needs more than " + std::to_string(max_bits_) +
                        " bits of the dominant zero");
    }
    root_ = std::make_shared<const AlgebraicRoot>(root_->refined(next));
    ++refinements_;
  }
  return root_;
}

std::int64_t BeattyPair::certified_floor(std::int64_t n, bool power) const {
  require(n >= 1, "Beatty functions require n >= 1");
  std::shared_ptr<const AlgebraicRoot> r = root();
  while (true) {
    const unsigned shift = power ? static_cast<unsigned>(q_) * r->bits() : r->bits();
    const BigInt& lo = power ? r->lo_power_numerator() : r->lo_numerator();
    const BigInt& hi = power ? r->hi_power_numerator() : r->hi_numerator();
    const BigInt f_lo = (lo * n) >> shift;
    const BigInt f_hi = (hi * n) >> shift;
    if (f_lo == f_hi) {
      ++certified_;
      return to_int64(f_lo);
    }
    r = refine_beyond(r->bits());
  }
}

std::int64_t BeattyPair::a(std::int64_t n) const { return certified_floor(n, false); }
std::int64_t BeattyPair::b(std::int64_t n) const { return certified_floor(n, true); }

const BeattyPair& beatty_pair(int q) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<BeattyPair>> pairs;
  std::lock_guard lock(mu);
  auto& slot = pairs[q];
  if (!slot) slot = std::make_unique<BeattyPair>(q);
  return *slot;
}

std::int64_t beatty_a(int q, std::int64_t n) { return beatty_pair(q).a(n); }
std::int64_t beatty_b(int q, std::int64_t n) { return beatty_pair(q).b(n); }

ComplementarityReport check_complementarity(int q, std::int64_t limit) {
  require(limit >= 1, "complementarity check requires N >= 1");
  const BeattyPair& pair = beatty_pair(q);
  ComplementarityReport report{q, limit, true, {}, 0, 0};
  std::vector<char> seen(static_cast<std::size_t>(limit) + 1, 0);  // 1: a, 2: b
  auto mark = [&](std::int64_t v, char who, std::int64_t n) {
    auto& cell = seen[static_cast<std::size_t>(v)];
    if (cell != 0 && report.pass) {
      report.pass = false;
      report.failure = "value " + std::to_string(v) + " hit twice (" +
                       std::string(1, cell == 1 ? 'a' : 'b') + " and " + std::string(1, who == 1 ? 'a' : 'b') +
                       "(" + std::to_string(n) + "))";
    }
    cell = who;
  };
  for (std::int64_t n = 1;; ++n) {
    const std::int64_t v = pair.a(n);
    if (v > limit) break;
    mark(v, 1, n);
    ++report.a_values;
  }
  for (std::int64_t n = 1;; ++n) {
    const std::int64_t v = pair.b(n);
    if (v > limit) break;
    mark(v, 2, n);
    ++report.b_values;
  }
  for (std::int64_t v = 1; v <= limit && report.pass; ++v) {
    if (seen[static_cast<std::size_t>(v)] == 0) {
      report.pass = false;
      report.failure = "value " + std::to_string(v) + " missed by both sequences";
    }
  }
  return report;
}

BeattyWord BeattyWord::parse(std::string_view text) {
  require(!text.empty(), "a Beatty word needs at least one letter");
  for (char c : text) require(c == 'a' || c == 'b', "Beatty words use only the letters a and b");
  return {std::string(text)};
}

int BeattyWord::a_count() const {
  return static_cast<int>(std::count(letters.begin(), letters.end(), 'a'));
}

int BeattyWord::b_count() const {
  return static_cast<int>(std::count(letters.begin(), letters.end(), 'b'));
}

std::vector<BeattyWord> all_words(int max_length) {
  std::vector<BeattyWord> out;
  for (int len = 1; len <= max_length; ++len) {
    for (unsigned mask = 0; mask < (1u << len); ++mask) {
      std::string w;
      for (int i = len - 1; i >= 0; --i) w += (mask >> i) & 1u ? 'b' : 'a';
      out.push_back({w});
    }
  }
  return out;
}

std::int64_t compose_word(int q, const BeattyWord& w, std::int64_t n) {
  require(!w.letters.empty(), "empty Beatty word");
  const BeattyPair& pair = beatty_pair(q);
  std::int64_t v = n;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    v = *it == 'a' ? pair.a(v) : pair.b(v);
  }
  return v;
}

BigInt kimberling_error(const BeattyWord& w, std::int64_t n) {
  const std::int64_t m = w.a_count() + 3 * w.b_count();
  const BeattyPair& pair = beatty_pair(3);
  return g_term(3, m - 2) * pair.a(n) + g_term(3, m) * pair.b(n) - g_term(3, m - 3) * n -
         compose_word(3, w, n);
}

BigInt kimberling_error_q2(const BeattyWord& w, std::int64_t n) {
  const std::int64_t m = w.a_count() + 2 * w.b_count();
  const BeattyPair& pair = beatty_pair(2);
  return g_term(2, m - 2) * pair.a(n) + g_term(2, m - 1) * pair.b(n) - compose_word(2, w, n);
}

KimberlingSummary summarize_kimberling(int q, const BeattyWord& w, std::int64_t n_max) {
  require(q == 2 || q == 3, "Kimberling identities are provided for q = 2 and q = 3");
  require(n_max >= 1, "n_max must be >= 1");
  KimberlingSummary s;
  s.q = q;
  s.word = w.letters;
  s.n_max = n_max;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const BigInt e = q == 3 ? kimberling_error(w, n) : kimberling_error_q2(w, n);
    if (n == 1) {
      s.min_error = s.max_error = e;
      s.argmax = 1;
      continue;
    }
    if (e != s.min_error || e != s.max_error) s.constant = false;
    if (e < s.min_error) s.min_error = e;
    if (e > s.max_error) {
      s.max_error = e;
      s.argmax = n;
    }
  }
  return s;
}

}  // namespace narayana
