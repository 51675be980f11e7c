#include "narayana/cli.hpp"

#include <algorithm>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "narayana/analogs.hpp"
#include "narayana/beatty.hpp"
#include "narayana/compositions.hpp"
#include "narayana/identities.hpp"
#include "narayana/nim.hpp"
#include "narayana/representations.hpp"
#include "narayana/sequences.hpp"
#include "narayana/service.hpp"

namespace narayana {

using nlohmann::json;

namespace {

// Thrown by handlers for bad arguments that CLI11 cannot see.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

BigInt parse_big(const std::string& text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw UsageError("expected a nonnegative integer, got '" + text + "'");
  }
  return BigInt(text);
}

// "3,1,4" or "3+1+4"
Composition parse_parts(const std::string& text) {
  std::vector<int> parts;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, text.find('+') != std::string::npos ? '+' : ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size() || v < 1) throw UsageError("");
      parts.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("bad composition '" + text + "'");
    }
  }
  if (parts.empty()) throw UsageError("empty composition");
  return Composition(parts);
}

json parts_json(const Composition& c) {
  json j{{"parts", c.parts}, {"text", c.to_string()}};
  if (c.colored()) j["colors"] = c.colors;
  return j;
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? sep : "") + items[i];
  return s;
}

struct Context {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  bool as_json = false;
  std::vector<std::shared_ptr<void>> keep;  // option storage for the parsed commands

  void emit(const json& j) const { out << j.dump(2) << '\n'; }
};

int report_exit(bool pass) { return pass ? 0 : 1; }

// ---------------------------------------------------------------- seq

void add_seq(CLI::App& app, Context& ctx, std::function<int()>& action) {
  auto* cmd = app.add_subcommand("seq", "terms of a fundamental recurrence");
  struct Opts {
    std::string family = "narayana";
    int q = 2;
    std::int64_t from = 0;
    std::int64_t to = 20;
  };
  auto opts = std::make_shared<Opts>();
  ctx.keep.push_back(opts);
  auto& family = opts->family;
  auto& q = opts->q;
  auto& from = opts->from;
  auto& to = opts->to;
  cmd->add_option("--family", family, "narayana, tribonacci, padovan or u")
      ->check(CLI::IsMember({"narayana", "tribonacci", "padovan", "u"}));
  cmd->add_option("--q", q, "degree")->check(CLI::Range(1, 1000));
  cmd->add_option("--from", from, "first index");
  cmd->add_option("--to", to, "last index");
  cmd->callback([&] {
    action = [&] {
      if (to < from) throw UsageError("--to must not be below --from");
      if (to - from > 100000) throw UsageError("at most 100001 terms per call");
      std::vector<std::string> terms;
      for (std::int64_t k = from; k <= to; ++k) {
        BigInt v;
        if (family == "narayana") {
          v = g_term(q, k);
        } else if (family == "tribonacci") {
          v = t_term(q, k);
        } else if (family == "padovan") {
          v = p_term(q, k);
        } else {
          v = u_term(q, k);
        }
        terms.push_back(v.str());
      }
      if (ctx.as_json) {
        ctx.emit({{"family", family}, {"q", q}, {"from", from}, {"to", to}, {"terms", terms}});
      } else {
        ctx.out << join(terms, ", ") << '\n';
      }
      return 0;
    };
  });
}

// ---------------------------------------------------------------- rep

void add_rep(CLI::App& app, Context& ctx, std::function<int()>& action) {
  auto* cmd = app.add_subcommand("rep", "integer representations");
  cmd->require_subcommand(1);
  struct Opts {
    int q = 2;
    std::string value;
    int k = 0;
  };
  auto opts = std::make_shared<Opts>();
  ctx.keep.push_back(opts);
  auto& q = opts->q;
  auto& value = opts->value;
  auto& k = opts->k;
  auto with_value = [&](CLI::App* sub, const char* what) {
    sub->add_option("--q", q, "degree")->check(CLI::Range(1, 1000));
    sub->add_option("n", value, what)->required();
  };

  auto* greedy = cmd->add_subcommand("greedy", "greedy q-representation");
  with_value(greedy, "integer >= 0");
  greedy->callback([&] {
    action = [&] {
      const auto rep = greedy_q_rep(q, parse_big(value));
      if (ctx.as_json) ctx.emit(to_json(rep));
      else ctx.out << format_rep(rep) << '\n';
      return 0;
    };
  });

  auto* far = cmd->add_subcommand("far", "far-difference representation");
  with_value(far, "integer >= 1");
  far->callback([&] {
    action = [&] {
      const BigInt n = parse_big(value);
      if (n < 1) throw UsageError("far-difference needs n >= 1");
      const auto rep = far_difference_rep(q, n);
      if (ctx.as_json) ctx.emit(to_json(rep));
      else ctx.out << format_rep(rep) << '\n';
      return 0;
    };
  });

  auto* tri = cmd->add_subcommand("tri", "tribonacci q-representation");
  with_value(tri, "integer >= 0");
  tri->callback([&] {
    action = [&] {
      const auto rep = tribonacci_greedy_rep(q, parse_big(value));
      if (ctx.as_json) {
        ctx.emit({{"q", rep.q}, {"value", rep_value(rep).str()}, {"indices", rep.indices}});
      } else {
        ctx.out << format_rep(rep) << '\n';
      }
      return 0;
    };
  });

  auto* digits = cmd->add_subcommand("digits", "number of greedy summands s(n)");
  with_value(digits, "integer >= 0");
  digits->callback([&] {
    action = [&] {
      const int s = sum_of_digits(q, parse_big(value));
      if (ctx.as_json) ctx.emit({{"q", q}, {"value", value}, {"digits", s}});
      else ctx.out << s << '\n';
      return 0;
    };
  });

  auto* cumulative = cmd->add_subcommand("S", "S(n) = s(0) + ... + s(n-1)");
  with_value(cumulative, "integer >= 0");
  cumulative->callback([&] {
    action = [&] {
      const BigInt s = cumulative_S(q, parse_big(value));
      if (ctx.as_json) ctx.emit({{"q", q}, {"n", value}, {"S", s.str()}});
      else ctx.out << s << '\n';
      return 0;
    };
  });

  auto* phi = cmd->add_subcommand("phi", "composition into 1 and q attached to l in [0, a_k)");
  with_value(phi, "l");
  phi->add_option("--k", k, "string length")->required()->check(CLI::Range(0, 100000));
  phi->callback([&] {
    action = [&] {
      const auto c = rep_to_composition(q, parse_big(value), k);
      if (ctx.as_json) {
        json j = parts_json(c);
        j["qParts"] = count_q_parts(q, c);
        ctx.emit(j);
      } else {
        ctx.out << c.to_string() << '\n';
      }
      return 0;
    };
  });
}

// ---------------------------------------------------------------- comp

void add_comp(CLI::App& app, Context& ctx, std::function<int()>& action) {
  auto* cmd = app.add_subcommand("comp", "compositions");
  cmd->require_subcommand(1);
  struct Opts {
    int n = 1;
    int q = 2;
    std::string parts_spec;
    std::string composition;
    bool list = false;
    bool inverse = false;
  };
  auto opts = std::make_shared<Opts>();
  ctx.keep.push_back(opts);
  auto& n = opts->n;
  auto& q = opts->q;
  auto& parts_spec = opts->parts_spec;
  auto& composition = opts->composition;
  auto& list = opts->list;
  auto& inverse = opts->inverse;

  auto* count = cmd->add_subcommand("count", "count (and optionally list) compositions");
  count->add_option("--n", n, "integer")->required()->check(CLI::Range(0, 100000));
  count->add_option("--parts", parts_spec, "set:1,3 | set:1x2 | mod:3:1,2 | min:3, optional !excluded")
      ->required();
  count->add_flag("--list", list, "also enumerate");
  count->callback([&] {
    action = [&] {
      const auto c = PartConstraint::parse(parts_spec);
      const BigInt total = count_compositions(n, c);
      std::vector<Composition> all;
      if (list) all = enumerate_compositions(n, c);
      if (ctx.as_json) {
        json j{{"n", n}, {"parts", c.to_string()}, {"count", total.str()}};
        if (list) {
          j["compositions"] = json::array();
          for (const auto& p : all) j["compositions"].push_back(p.to_string());
        }
        ctx.emit(j);
      } else {
        ctx.out << total << '\n';
        for (const auto& p : all) ctx.out << p.to_string() << '\n';
      }
      return 0;
    };
  });

  auto* mac = cmd->add_subcommand("macmahon", "MacMahon bit sequence of a composition");
  mac->add_option("composition", composition, "3,1,4 (or bits with --inverse)")->required();
  mac->add_flag("--inverse", inverse, "read bits, print the composition");
  mac->callback([&] {
    action = [&] {
      if (inverse) {
        BitSequence bits;
        try {
          bits = BitSequence::parse(composition);
        } catch (const PreconditionError& e) {
          throw UsageError(e.what());
        }
        const auto c = macmahon_inverse(bits);
        if (ctx.as_json) ctx.emit(parts_json(c));
        else ctx.out << c.to_string() << '\n';
      } else {
        const auto bits = macmahon_sequence(parse_parts(composition));
        if (ctx.as_json) ctx.emit({{"bits", bits.to_string()}});
        else ctx.out << bits.to_string() << '\n';
      }
      return 0;
    };
  });

  auto* conj = cmd->add_subcommand("conjugate", "conjugate composition");
  conj->add_option("composition", composition, "1,4,1,7,1")->required();
  conj->callback([&] {
    action = [&] {
      const auto c = conjugate(parse_parts(composition));
      if (ctx.as_json) ctx.emit(parts_json(c));
      else ctx.out << c.to_string() << '\n';
      return 0;
    };
  });

  auto* sills = cmd->add_subcommand("sills", "parts 1 mod q  ->  parts >= q");
  sills->add_option("--q", q, "degree")->check(CLI::Range(2, 1000));
  sills->add_option("composition", composition, "parts congruent to 1 mod q")->required();
  sills->callback([&] {
    action = [&] {
      const auto c = sills_map(q, parse_parts(composition));
      if (ctx.as_json) ctx.emit(parts_json(c));
      else ctx.out << c.to_string() << '\n';
      return 0;
    };
  });

  auto* sills_inv = cmd->add_subcommand("sills-inverse", "parts >= q  ->  parts 1 mod q");
  sills_inv->add_option("--q", q, "degree")->check(CLI::Range(2, 1000));
  sills_inv->add_option("composition", composition, "parts >= q")->required();
  sills_inv->callback([&] {
    action = [&] {
      const auto c = sills_inverse(q, parse_parts(composition));
      if (ctx.as_json) ctx.emit(parts_json(c));
      else ctx.out << c.to_string() << '\n';
      return 0;
    };
  });
}

// ---------------------------------------------------------------- id

void add_id(CLI::App& app, Context& ctx, std::function<int()>& action) {
  auto* cmd = app.add_subcommand("id", "identities");
  cmd->require_subcommand(1);
  struct Opts {
    int q = 2;
    int digits = 6;
    std::int64_t n_max = 30;
    std::string which = "3";
    std::string bound = "1000000";
  };
  auto opts = std::make_shared<Opts>();
  ctx.keep.push_back(opts);
  auto& q = opts->q;
  auto& digits = opts->digits;
  auto& n_max = opts->n_max;
  auto& which = opts->which;
  auto& bound = opts->bound;

  auto* verify = cmd->add_subcommand("verify", "check an identity over n = 0..nmax");
  verify->add_option("--which", which, "3, 4, 5, 6, pascal or footnote")
      ->check(CLI::IsMember({"3", "4", "5", "6", "pascal", "footnote"}));
  verify->add_option("--q", q, "degree")->check(CLI::Range(1, 1000));
  verify->add_option("--nmax", n_max, "largest n")->check(CLI::Range(0, 100000));
  verify->callback([&] {
    action = [&] {
      IdentityReport r;
      if (which == "3") r = verify_sum_identity(q, n_max);
      else if (which == "4") r = verify_binomial_identity(q, n_max);
      else if (which == "5") r = verify_weighted_identity(q, n_max);
      else if (which == "6") r = verify_eq6(q, n_max);
      else if (which == "pascal") r = verify_pascal_recursion(q, n_max);
      else r = footnote_identity_check(q);
      if (ctx.as_json) ctx.emit(r.to_json());
      else ctx.out << r.summary() << '\n';
      return report_exit(r.pass);
    };
  });

  auto* ca = cmd->add_subcommand("cA", "certified 1 / (alpha g'(alpha) ln alpha)");
  ca->add_option("--q", q, "degree")->check(CLI::Range(1, 200));
  ca->add_option("--digits", digits, "decimal digits")->check(CLI::Range(1, 300));
  ca->callback([&] {
    action = [&] {
      const auto c = c_A_constant(q, digits);
      if (ctx.as_json) {
        json j = c.to_json();
        j["q"] = q;
        ctx.emit(j);
      } else {
        ctx.out << "c_A(q=" << q << ") in [" << c.lower() << ", " << c.upper() << "]\n";
      }
      return 0;
    };
  });

  auto* coincide = cmd->add_subcommand("coincide", "common values of G^q and G^(q+1)");
  coincide->add_option("--q", q, "degree")->check(CLI::Range(1, 1000));
  coincide->add_option("--bound", bound, "largest value scanned");
  coincide->callback([&] {
    action = [&] {
      const auto found = cross_family_coincidences(q, parse_big(bound));
      if (ctx.as_json) {
        json list = json::array();
        for (const auto& c : found) {
          list.push_back({{"value", c.value.str()}, {"gIndex", c.g_index}, {"gPrimeIndex", c.gprime_index}});
        }
        ctx.emit({{"q", q}, {"bound", bound}, {"coincidences", list}});
      } else {
        for (const auto& c : found) {
          ctx.out << c.value << " = G^" << q << "_" << c.g_index << " = G^" << q + 1 << "_" << c.gprime_index
                  << '\n';
        }
      }
      return 0;
    };
  });
}

// ---------------------------------------------------------------- nim

std::string advice_text(const nim::StrategyMove& m, std::int64_t beans, int q) {
  std::ostringstream s;
  if (m.fallback) {
    s << "no winning move (least summand " << m.least_summand << " exceeds the cap); take " << m.take;
  } else {
    s << "take " << m.take << " (least summand of " << format_rep(greedy_q_rep(q, beans)) << ")";
  }
  return s.str();
}

void add_nim(CLI::App& app, Context& ctx, std::function<int()>& action) {
  auto* cmd = app.add_subcommand("nim", "generalized Fibonacci Nim");
  cmd->require_subcommand(1);
  struct Opts {
    int q = 2;
    std::string variant = "standard";
    std::int64_t n = 20;
    std::int64_t beans = 2;
    std::int64_t last = 0;
    bool engine_first = false;
  };
  auto opts = std::make_shared<Opts>();
  ctx.keep.push_back(opts);
  auto& q = opts->q;
  auto& variant = opts->variant;
  auto& n = opts->n;
  auto& beans = opts->beans;
  auto& last = opts->last;
  auto& engine_first = opts->engine_first;
  auto rules = [&](CLI::App* sub) {
    sub->add_option("--q", q, "1, 2 or 3")->check(CLI::Range(1, 3));
    sub->add_option("--variant", variant, "standard or modified")->check(CLI::IsMember({"standard", "modified"}));
  };

  auto* solve_cmd = cmd->add_subcommand("solve", "losing starts by exhaustive search");
  rules(solve_cmd);
  solve_cmd->add_option("--n", n, "largest pile")->check(CLI::Range(2, 400));
  solve_cmd->callback([&] {
    action = [&] {
      const nim::GameConfig cfg{q, nim::parse_variant(variant), 2};
      const auto losing = nim::solve(cfg, n).losing_starts();
      std::vector<std::int64_t> g;
      for (std::int64_t m = 2; m <= n; ++m)
        if (nim::is_g_number(q, m)) g.push_back(m);
      const bool match = losing == g;
      if (ctx.as_json) {
        ctx.emit({{"q", q}, {"variant", variant}, {"n", n}, {"losing", losing}, {"matchesGNumbers", match}});
      } else {
        std::vector<std::string> items;
        for (auto v : losing) items.push_back(std::to_string(v));
        ctx.out << "losing starts: " << join(items, ", ") << '\n';
        ctx.out << "equal to the G-numbers: " << (match ? "yes" : "no") << '\n';
      }
      return report_exit(match);
    };
  });

  auto* hint = cmd->add_subcommand("hint", "strategy move for a position");
  rules(hint);
  hint->add_option("--beans", beans, "pile size")->required()->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 60));
  hint->add_option("--last", last, "opponent's last take (omit for the opening move)")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 60));
  hint->callback([&] {
    action = [&] {
      const nim::GameConfig cfg{q, nim::parse_variant(variant), std::max<std::int64_t>(beans, 2)};
      nim::GameState state{beans, std::nullopt, nim::Player::first, {}};
      if (last > 0) state.last_take = last;
      else if (beans < 2) throw UsageError("an opening pile needs at least 2 beans");
      const auto m = nim::strategy_move(cfg, state);
      if (ctx.as_json) {
        json rep = json::array();
        for (const auto& s : summands(m.representation)) rep.push_back(s.str());
        ctx.emit({{"take", m.take}, {"leastSummand", !m.fallback}, {"representation", rep}, {"winning", !m.fallback}});
      } else {
        ctx.out << advice_text(m, beans, q) << '\n';
      }
      return 0;
    };
  });

  auto* play = cmd->add_subcommand("play", "play against the engine in the terminal");
  rules(play);
  play->add_option("--beans", beans, "initial pile")->required()->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
  play->add_flag("--engine-first", engine_first, "engine opens");
  play->callback([&] {
    action = [&] {
      const nim::GameConfig cfg{q, nim::parse_variant(variant), beans};
      nim::GameState state = nim::initial_state(cfg);
      const nim::Player engine = engine_first ? nim::Player::first : nim::Player::second;
      auto& out = ctx.out;
      out << "pile " << beans << ", q = " << q << ", " << variant << " rules; 'h' for a hint, 'q' to quit\n";
      while (!state.over()) {
        if (state.to_move == engine) {
          const auto m = nim::strategy_move(cfg, state);
          state = nim::apply_move(cfg, state, m.take);
          out << "engine takes " << m.take << ", " << state.beans << " left\n";
          continue;
        }
        out << format_rep(greedy_q_rep(q, state.beans)) << "; take 1.." << nim::max_take(cfg, state) << "> ";
        out.flush();
        std::string line;
        if (!std::getline(ctx.in, line) || line == "q") {
          out << "\nbye\n";
          return 0;
        }
        if (line == "h") {
          out << advice_text(nim::strategy_move(cfg, state), state.beans, q) << '\n';
          continue;
        }
        try {
          std::size_t used = 0;
          const std::int64_t take = std::stoll(line, &used);
          if (used != line.size()) throw std::invalid_argument("junk");
          state = nim::apply_move(cfg, state, take);
        } catch (const nim::IllegalMove& e) {
          out << "illegal: take between 1 and " << e.cap() << '\n';
        } catch (const std::exception&) {
          out << "enter a number, 'h' or 'q'\n";
        }
      }
      out << (*state.winner() == engine ? "engine wins\n" : "you win\n");
      return 0;
    };
  });
}

// ---------------------------------------------------------------- beatty

void add_beatty(CLI::App& app, Context& ctx, std::function<int()>& action) {
  auto* cmd = app.add_subcommand("beatty", "certified Beatty sequences");
  cmd->require_subcommand(1);
  struct Opts {
    int q = 2;
    std::int64_t n = 10;
    std::int64_t n_max = 2000;
    std::int64_t limit = 10000;
    std::string word;
  };
  auto opts = std::make_shared<Opts>();
  ctx.keep.push_back(opts);
  auto& q = opts->q;
  auto& n = opts->n;
  auto& n_max = opts->n_max;
  auto& limit = opts->limit;
  auto& word = opts->word;

  auto* pair = cmd->add_subcommand("pair", "a(n) = floor(n alpha), b(n) = floor(n alpha^q)");
  pair->add_option("--q", q, "degree")->check(CLI::Range(2, 64));
  pair->add_option("--n", n, "last n")->check(CLI::Range(std::int64_t{1}, std::int64_t{1000000}));
  pair->callback([&] {
    action = [&] {
      json rows = json::array();
      for (std::int64_t i = 1; i <= n; ++i) {
        const auto a = beatty_a(q, i), b = beatty_b(q, i);
        if (ctx.as_json) rows.push_back({{"n", i}, {"a", std::to_string(a)}, {"b", std::to_string(b)}});
        else ctx.out << i << ' ' << a << ' ' << b << '\n';
      }
      if (ctx.as_json) ctx.emit({{"q", q}, {"rows", rows}});
      return 0;
    };
  });

  auto* w = cmd->add_subcommand("word", "error term e_f for a word over {a, b}");
  w->add_option("--q", q, "2 or 3")->check(CLI::IsMember({2, 3}));
  w->add_option("--word", word, "e.g. abb")->required();
  w->add_option("--nmax", n_max, "largest n")->check(CLI::Range(std::int64_t{1}, std::int64_t{1000000}));
  w->callback([&] {
    action = [&] {
      BeattyWord bw;
      try {
        bw = BeattyWord::parse(word);
      } catch (const PreconditionError& e) {
        throw UsageError(e.what());
      }
      const auto s = summarize_kimberling(q, bw, n_max);
      const bool pass = s.nonnegative() && (q == 2 ? s.constant : s.stabilized());
      if (ctx.as_json) {
        ctx.emit({{"q", q},
                  {"word", s.word},
                  {"nmax", s.n_max},
                  {"min", s.min_error.str()},
                  {"max", s.max_error.str()},
                  {"argmax", s.argmax},
                  {"constant", s.constant},
                  {"stabilized", s.stabilized()},
                  {"pass", pass}});
      } else {
        ctx.out << "e_" << s.word << "(n), n = 1.." << s.n_max << ": min " << s.min_error << ", max "
                << s.max_error << " (first at n = " << s.argmax << ")"
                << (s.constant ? ", constant" : "") << '\n';
      }
      return report_exit(pass);
    };
  });

  auto* check = cmd->add_subcommand("check", "a and b partition 1..N");
  check->add_option("--q", q, "degree")->check(CLI::Range(2, 64));
  check->add_option("--N", limit, "range")->check(CLI::Range(std::int64_t{1}, std::int64_t{100000000}));
  check->callback([&] {
    action = [&] {
      const auto r = check_complementarity(q, limit);
      if (ctx.as_json) {
        ctx.emit({{"q", q}, {"N", limit}, {"pass", r.pass}, {"aValues", r.a_values}, {"bValues", r.b_values},
                  {"failure", r.failure}});
      } else {
        ctx.out << "q=" << q << " N=" << limit << ": " << (r.pass ? "pass" : "FAIL " + r.failure) << " ("
                << r.a_values << " a-values, " << r.b_values << " b-values)\n";
      }
      return report_exit(r.pass);
    };
  });
}

// ---------------------------------------------------------------- analog

void add_analog(CLI::App& app, Context& ctx, std::function<int()>& action) {
  auto* cmd = app.add_subcommand("analog", "Padovan and tribonacci composition counts");
  cmd->require_subcommand(1);
  struct Opts {
    int q = 3;
    std::int64_t n_max = 50;
    std::string which = "padovan";
  };
  auto opts = std::make_shared<Opts>();
  ctx.keep.push_back(opts);
  auto& q = opts->q;
  auto& n_max = opts->n_max;
  auto& which = opts->which;

  auto* verify = cmd->add_subcommand("verify", "count equalities for n <= nmax");
  verify->add_option("--which", which, "padovan, tribonacci or recurrence")
      ->check(CLI::IsMember({"padovan", "tribonacci", "recurrence"}));
  verify->add_option("--q", q, "degree")->check(CLI::Range(2, 1000));
  verify->add_option("--nmax", n_max, "largest n")->check(CLI::Range(std::int64_t{1}, std::int64_t{5000}));
  verify->callback([&] {
    action = [&] {
      AnalogReport r;
      if (which == "padovan") r = verify_padovan_counts(q, n_max);
      else if (which == "tribonacci") r = verify_tribonacci_counts(q, n_max);
      else r = verify_padovan_recurrence(q, n_max);
      if (ctx.as_json) ctx.emit(r.to_json());
      else ctx.out << r.summary() << '\n';
      return report_exit(r.pass);
    };
  });

  auto* probe = cmd->add_subcommand("probe", "side-by-side counts for an open bijection question");
  probe->add_option("--q", q, "degree >= 3")->check(CLI::Range(3, 1000));
  probe->add_option("--nmax", n_max, "largest n")->check(CLI::Range(std::int64_t{1}, std::int64_t{5000}));
  probe->callback([&] {
    action = [&] {
      const auto rows = sills_analog_probe(q, n_max);
      if (ctx.as_json) {
        json list = json::array();
        for (const auto& r : rows) {
          list.push_back({{"n", r.n}, {"residue", r.residue_count.str()}, {"shifted", r.shifted_count.str()}});
        }
        ctx.emit({{"q", q}, {"rows", list}});
      } else {
        for (const auto& r : rows) ctx.out << r.n << ' ' << r.residue_count << ' ' << r.shifted_count << '\n';
      }
      return 0;
    };
  });
}

// ---------------------------------------------------------------- serve

void add_serve(CLI::App& app, Context& ctx, std::function<int()>& action) {
  auto* cmd = app.add_subcommand("serve", "HTTP game service");
  struct Opts {
    service::ServeOptions options;
    std::string persist;
    std::int64_t ttl_seconds = 3600;
  };
  auto opts = std::make_shared<Opts>();
  ctx.keep.push_back(opts);
  auto& options = opts->options;
  auto& persist = opts->persist;
  auto& ttl_seconds = opts->ttl_seconds;
  cmd->add_option("--port", options.port, "TCP port (NARAYANA_PORT overrides)")->check(CLI::Range(0, 65535));
  cmd->add_option("--bind", options.bind, "address to listen on");
  cmd->add_option("--persist", persist, "append events to FILE and replay it on start");
  cmd->add_option("--ttl", ttl_seconds, "idle seconds before a game is dropped")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40));
  cmd->add_option("--cors-origin", options.cors_origin, "Access-Control-Allow-Origin value");
  cmd->callback([&] {
    action = [&] {
      if (!persist.empty()) options.persist = persist;
      options.ttl_ms = ttl_seconds * 1000;
      return service::serve(options, ctx.out, ctx.err);
    };
  });
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact arithmetic for the Narayana family of recurrences", "narayana"};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx{in, out, err};
  app.add_flag("--json", ctx.as_json, "machine-readable output");
  std::function<int()> action;
  add_seq(app, ctx, action);
  add_rep(app, ctx, action);
  add_comp(app, ctx, action);
  add_id(app, ctx, action);
  add_nim(app, ctx, action);
  add_beatty(app, ctx, action);
  add_analog(app, ctx, action);
  add_serve(app, ctx, action);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (!action) return 2;
  try {
    return action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace narayana
