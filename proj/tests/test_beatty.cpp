#include <set>
#include <thread>

#include "doctest.h"
#include "narayana/beatty.hpp"
#include "narayana/sequences.hpp"
#include "oracles.hpp"

using namespace narayana;
using oracle::i64;

TEST_CASE("dominant root enclosures") {
  const Rational eps(1, 1000000000000LL);
  const auto phi = dominant_root(2, eps);
  CHECK(phi.width() <= eps);
  CHECK(phi.lo() <= Rational(1618033988749LL, 1000000000000LL) + eps);
  CHECK(phi.hi() >= Rational(1618033988749LL, 1000000000000LL));
  const auto n3 = dominant_root(3, eps);
  CHECK(n3.lo() <= Rational(1465571231877LL, 1000000000000LL));
  CHECK(n3.hi() >= Rational(1465571231876LL, 1000000000000LL));
  for (int q = 2; q <= 8; ++q) {
    CHECK(g_sign_at(q, 1, 0) == -1);
    CHECK(g_sign_at(q, 2, 0) == 1);
    const auto r = AlgebraicRoot::bisect(q, 80);
    CHECK(g_sign_at(q, r.lo_numerator(), 80) < 0);
    CHECK(g_sign_at(q, r.hi_numerator(), 80) > 0);
    CHECK(r.hi_numerator() - r.lo_numerator() == 1);
    const auto finer = r.refined(200);
    CHECK(finer.lo() >= r.lo());
    CHECK(finer.hi() <= r.hi());
    CHECK(finer.lo_power_numerator() == pow(finer.lo_numerator(), static_cast<unsigned>(q)));
  }
  CHECK_THROWS_AS(AlgebraicRoot::bisect(1, 10), PreconditionError);
}

TEST_CASE("g_sign_at agrees with the oracle") {
  for (int q = 2; q <= 5; ++q) {
    for (i64 num = 0; num <= 1024; ++num) {
      CHECK(g_sign_at(q, num, 9) == oracle::g_sign(q, num, 512));
    }
  }
}

TEST_CASE("Beatty values: examples") {
  const std::vector<i64> golden{1, 3, 4, 6, 8};
  for (i64 n = 1; n <= 5; ++n) CHECK(beatty_a(2, n) == golden[static_cast<std::size_t>(n - 1)]);
  CHECK(beatty_a(3, 1) == 1);
  CHECK(beatty_b(3, 1) == 3);
  CHECK(compose_word(2, BeattyWord::parse("aa"), 3) == 6);
  CHECK(compose_word(3, BeattyWord::parse("b"), 2) == 6);
  for (i64 n = 1; n <= 200; ++n) {
    CHECK(compose_word(3, BeattyWord::parse("a"), n) == beatty_a(3, n));
    CHECK(beatty_b(2, n) == beatty_a(2, n) + n);
  }
  CHECK_THROWS_AS(beatty_a(2, 0), PreconditionError);
}

TEST_CASE("certified floors match exact rational bisection") {
  for (int q = 2; q <= 5; ++q) {
    CAPTURE(q);
    for (i64 n = 1; n <= 3000; ++n) {
      CHECK(beatty_a(q, n) == oracle::beatty_a(q, n));
      CHECK(beatty_b(q, n) == oracle::beatty_b(q, n));
    }
    for (i64 n : {99991LL, 1000003LL}) {
      CHECK(beatty_a(q, n) == oracle::beatty_a(q, n));
      CHECK(beatty_b(q, n) == oracle::beatty_b(q, n));
    }
  }
}

namespace {

// Some n near 2^62 whose floor the initial enclosure cannot settle.
i64 unsettled_at_initial_bits(int q) {
  const auto r = AlgebraicRoot::bisect(q, BeattyPair::kInitialBits);
  for (i64 n = i64{1} << 62;; ++n) {
    if ((r.lo_numerator() * n) >> r.bits() != (r.hi_numerator() * n) >> r.bits()) return n;
  }
}

}  // namespace

TEST_CASE("a fresh pair refines and counts certified values") {
  BeattyPair pair(3);
  CHECK(pair.root()->bits() == BeattyPair::kInitialBits);
  const auto before = pair.root();
  const i64 n = unsettled_at_initial_bits(3);
  const i64 v = pair.a(n);
  CHECK(pair.refinement_count() >= 1);
  CHECK(pair.root()->bits() > before->bits());
  CHECK(before->bits() == BeattyPair::kInitialBits);  // old snapshot untouched
  CHECK(pair.certified_count() == 1);
  const auto r = pair.root();
  CHECK(BigInt((r->lo_numerator() * n) >> r->bits()) == v);
  CHECK(BigInt((r->hi_numerator() * n) >> r->bits()) == v);
}

TEST_CASE("refinement budget is enforced") {
  BeattyPair tiny(3, BeattyPair::kInitialBits);
  CHECK_THROWS_AS(tiny.a(unsettled_at_initial_bits(3)), BudgetError);
  CHECK(tiny.certified_count() == 0);
}

TEST_CASE("pairs are safe to share between threads") {
  BeattyPair pair(4);
  std::vector<std::thread> threads;
  std::vector<std::vector<i64>> out(4);
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (i64 n = 1; n <= 500; ++n) out[static_cast<std::size_t>(t)].push_back(pair.b(n * 1000003));
    });
  }
  for (auto& th : threads) th.join();
  for (int t = 1; t < 4; ++t) CHECK(out[static_cast<std::size_t>(t)] == out[0]);
  CHECK(pair.certified_count() == 2000);
}

TEST_CASE("complementarity") {
  for (int q = 2; q <= 5; ++q) {
    CAPTURE(q);
    const auto r = check_complementarity(q, 10000);
    CHECK(r.pass);
    CHECK(r.a_values + r.b_values == 10000);
  }
  CHECK(check_complementarity(2, 1).pass);
  // brute partition from the oracle floors
  for (int q = 2; q <= 5; ++q) {
    std::multiset<i64> hits;
    for (i64 n = 1; oracle::beatty_a(q, n) <= 3000; ++n) hits.insert(oracle::beatty_a(q, n));
    for (i64 n = 1; oracle::beatty_b(q, n) <= 3000; ++n) hits.insert(oracle::beatty_b(q, n));
    CHECK(hits.size() == 3000);
    for (i64 v = 1; v <= 3000; ++v) CHECK(hits.count(v) == 1);
  }
}

TEST_CASE("words") {
  const auto w = BeattyWord::parse("abb");
  CHECK(w.a_count() == 1);
  CHECK(w.b_count() == 2);
  CHECK_THROWS_AS(BeattyWord::parse("abc"), PreconditionError);
  CHECK_THROWS_AS(BeattyWord::parse(""), PreconditionError);
  const auto words = all_words(4);
  CHECK(words.size() == 30);
  CHECK(words.front().letters == "a");
  CHECK(words.back().letters == "bbbb");
  CHECK(compose_word(3, BeattyWord::parse("ab"), 5) == oracle::beatty_a(3, oracle::beatty_b(3, 5)));
}

TEST_CASE("Kimberling errors at q = 2 are constant") {
  CHECK(kimberling_error_q2(BeattyWord::parse("a"), 7) == 0);
  for (i64 n = 1; n <= 1000; ++n) CHECK(kimberling_error_q2(BeattyWord::parse("aa"), n) == 1);
  for (const auto& w : all_words(4)) {
    CAPTURE(w.letters);
    const auto s = summarize_kimberling(2, w, 2000);
    CHECK(s.constant);
    CHECK(s.nonnegative());
  }
}

TEST_CASE("Kimberling errors at q = 3 are nonnegative and settle early") {
  for (i64 n = 1; n <= 300; ++n) {
    CHECK(kimberling_error(BeattyWord::parse("a"), n) == 0);
    CHECK(kimberling_error(BeattyWord::parse("b"), n) >= 0);
  }
  // direct evaluation from oracle floors and the plain sequence
  const auto word = BeattyWord::parse("ab");
  for (i64 n = 1; n <= 300; ++n) {
    const i64 f = oracle::beatty_a(3, oracle::beatty_b(3, n));
    // x + 3y = 4
    const BigInt e = g_term(3, 2) * oracle::beatty_a(3, n) + g_term(3, 4) * oracle::beatty_b(3, n) -
                     g_term(3, 1) * n - f;
    CHECK(kimberling_error(word, n) == e);
  }
  for (const auto& w : all_words(4)) {
    CAPTURE(w.letters);
    const auto s = summarize_kimberling(3, w, 2000);
    CHECK(s.nonnegative());
    CHECK(s.stabilized());
  }
  CHECK_THROWS_AS(summarize_kimberling(4, word, 10), PreconditionError);
}
