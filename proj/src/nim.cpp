#include "narayana/nim.hpp"

#include "narayana/sequences.hpp"

namespace narayana::nim {

std::string_view variant_name(Variant v) {
  return v == Variant::standard ? "standard" : "modified";
}

Variant parse_variant(std::string_view name) {
  if (name == "standard") return Variant::standard;
  if (name == "modified") return Variant::modified;
  throw PreconditionError("unknown rule variant '" + std::string(name) + "'");
}

void GameConfig::validate() const {
  require(q >= 1 && q <= 3, "Nim rules are defined for q in {1, 2, 3}");
  require(initial_beans >= 2, "the pile needs at least 2 beans");
}

std::optional<Player> GameState::winner() const {
  if (!over()) return std::nullopt;
  return other(to_move);
}

GameState initial_state(const GameConfig& config) {
  config.validate();
  return GameState{config.initial_beans, std::nullopt, Player::first, {}};
}

std::int64_t rule_cap(const GameConfig& config, std::int64_t previous) {
  require(previous >= 1, "previous take must be >= 1");
  const std::int64_t q = config.q;
  if (previous == 1) return q;
  if (config.variant == Variant::modified) return q * previous - (q - 1);
  return q == 3 ? 3 * previous - 1 : q * previous;
}

std::int64_t max_take(const GameConfig& config, const GameState& state) {
  require(!state.over(), "the game is already over");
  if (!state.last_take) return state.beans - 1;
  return std::min(rule_cap(config, *state.last_take), state.beans);
}

std::vector<std::int64_t> legal_moves(const GameConfig& config, const GameState& state) {
  const std::int64_t cap = max_take(config, state);
  std::vector<std::int64_t> moves;
  for (std::int64_t t = 1; t <= cap; ++t) moves.push_back(t);
  return moves;
}

GameState apply_move(const GameConfig& config, const GameState& state, std::int64_t take) {
  if (state.over()) throw IllegalMove("the game is already over", 0);
  const std::int64_t cap = max_take(config, state);
  if (take < 1 || take > cap) {
    throw IllegalMove("take " + std::to_string(take) + " is outside 1.." + std::to_string(cap),
                      cap);
  }
  GameState next = state;
  next.beans -= take;
  next.last_take = take;
  next.to_move = other(state.to_move);
  next.history.push_back(take);
  return next;
}

std::int64_t least_summand(int q, std::int64_t beans) {
  require(beans >= 1, "least summand needs beans >= 1");
  const QRepresentation rep = greedy_q_rep(q, beans);
  return to_int64(a_term(q, rep.indices.back()));
}

bool is_g_number(int q, std::int64_t n) {
  if (n < 1) return false;
  return greedy_q_rep(q, n).indices.size() == 1;
}

StrategyMove strategy_move(const GameConfig& config, const GameState& state) {
  require(state.beans >= 1, "strategy_move needs a nonempty pile");
  StrategyMove m;
  m.representation = greedy_q_rep(config.q, state.beans);
  m.least_summand = to_int64(a_term(config.q, m.representation.indices.back()));
  const std::int64_t cap = max_take(config, state);
  if (m.least_summand <= cap) {
    m.take = m.least_summand;
  } else {
    m.take = 1;
    m.fallback = true;
  }
  return m;
}

SolveTable::SolveTable(const GameConfig& rules, std::int64_t n_max, std::int64_t bound)
    : n_max_(n_max) {
  require(rules.q >= 1 && rules.q <= 3, "Nim rules are defined for q in {1, 2, 3}");
  require(n_max >= 1, "n_max must be >= 1");
  if (n_max > bound) {
    throw BudgetError("solver bound exceeded: n = " + std::to_string(n_max) + " > " +
                      std::to_string(bound));
  }
  const auto size = static_cast<std::size_t>(n_max) + 1;
  // Precompute the cap granted to the reply after each take.
  std::vector<std::int64_t> reply_cap(size, 0);
  for (std::int64_t t = 1; t <= n_max; ++t) reply_cap[static_cast<std::size_t>(t)] = rule_cap(rules, t);
  wins_.assign(size, {});
  wins_[0].assign(1, 0);  // no move: the previous player took the last bean
  for (std::int64_t beans = 1; beans <= n_max; ++beans) {
    auto& row = wins_[static_cast<std::size_t>(beans)];
    row.assign(static_cast<std::size_t>(beans) + 1, 0);
    // row[cap] = row[cap-1] || the take `cap` wins
    for (std::int64_t cap = 1; cap <= beans; ++cap) {
      const std::int64_t rest = beans - cap;
      const bool take_wins =
          rest == 0 ||
          !wins_[static_cast<std::size_t>(rest)]
               [static_cast<std::size_t>(std::min(reply_cap[static_cast<std::size_t>(cap)], rest))];
      row[static_cast<std::size_t>(cap)] = row[static_cast<std::size_t>(cap - 1)] || take_wins;
    }
  }
}

bool SolveTable::mover_wins(std::int64_t beans, std::int64_t cap) const {
  require(beans >= 0 && beans <= n_max_, "beans outside the solved range");
  require(cap >= 0, "cap must be >= 0");
  return wins_[static_cast<std::size_t>(beans)][static_cast<std::size_t>(std::min(cap, beans))] != 0;
}

std::vector<std::int64_t> SolveTable::losing_starts() const {
  std::vector<std::int64_t> out;
  for (std::int64_t n = 2; n <= n_max_; ++n)
    if (!first_player_wins(n)) out.push_back(n);
  return out;
}

SolveTable solve(const GameConfig& rules, std::int64_t n_max, std::int64_t bound) {
  return SolveTable(rules, n_max, bound);
}

bool lemma2_check(const GameConfig& rules, std::int64_t g_index, std::int64_t p) {
  const int q = rules.q;
  require(q >= 1 && q <= 3, "Nim rules are defined for q in {1, 2, 3}");
  require(g_index >= a_offset(q), "G_l must be a member of the a-sequence");
  const std::int64_t g = to_int64(g_term(q, g_index));
  require(g >= 2, "G_l must be >= 2");
  require(p >= 1 && p < g, "opponent take must satisfy 1 <= p < G_l");
  return least_summand(q, g - p) <= rule_cap(rules, p);
}

}  // namespace narayana::nim
