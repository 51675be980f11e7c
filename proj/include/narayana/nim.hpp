#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "narayana/representations.hpp"

namespace narayana::nim {

enum class Variant { standard, modified };

std::string_view variant_name(Variant v);
Variant parse_variant(std::string_view name);

struct GameConfig {
  int q = 2;
  Variant variant = Variant::standard;
  std::int64_t initial_beans = 2;

  /// q in {1,2,3}, initial_beans >= 2.
  void validate() const;
};

enum class Player { first, second };

inline Player other(Player p) { return p == Player::first ? Player::second : Player::first; }

struct GameState {
  std::int64_t beans = 0;
  std::optional<std::int64_t> last_take;
  Player to_move = Player::first;
  std::vector<std::int64_t> history;

  bool over() const { return beans == 0; }
  /// Player who removed the last bean, once the game is over.
  std::optional<Player> winner() const;
};

GameState initial_state(const GameConfig& config);

/// Largest take allowed right after the opponent took `previous` beans,
/// before clamping to the pile:
///   standard: q p, except 3p - 1 when q = 3 and p >= 2;
///   modified: q p - (q - 1) when p >= 2, q when p = 1.
std::int64_t rule_cap(const GameConfig& config, std::int64_t previous);

/// beans - 1 on the first move, otherwise rule_cap clamped to the pile.
std::int64_t max_take(const GameConfig& config, const GameState& state);
std::vector<std::int64_t> legal_moves(const GameConfig& config, const GameState& state);

class IllegalMove : public std::invalid_argument {
 public:
  IllegalMove(const std::string& what, std::int64_t cap)
      : std::invalid_argument(what), cap_(cap) {}
  std::int64_t cap() const { return cap_; }

 private:
  std::int64_t cap_;
};

GameState apply_move(const GameConfig& config, const GameState& state, std::int64_t take);

struct StrategyMove {
  std::int64_t take = 1;
  /// The least G-summand could not be taken; `take` is the smallest legal
  /// move instead. Happens only from losing positions.
  bool fallback = false;
  std::int64_t least_summand = 1;
  QRepresentation representation;
};

StrategyMove strategy_move(const GameConfig& config, const GameState& state);

/// Least summand of the greedy q-representation of beans >= 1.
std::int64_t least_summand(int q, std::int64_t beans);
/// True iff n is some a_k.
bool is_g_number(int q, std::int64_t n);

inline constexpr std::int64_t kDefaultSolveBound = 400;

/// Exhaustive win/loss table over states (beans, cap) with cap <= beans.
class SolveTable {
 public:
  SolveTable(const GameConfig& rules, std::int64_t n_max, std::int64_t bound = kDefaultSolveBound);

  std::int64_t n_max() const { return n_max_; }
  /// Mover wins from (beans, cap); cap is clamped to beans.
  bool mover_wins(std::int64_t beans, std::int64_t cap) const;
  /// First player wins a game starting with n beans (2 <= n <= n_max).
  bool first_player_wins(std::int64_t n) const { return mover_wins(n, n - 1); }
  std::vector<std::int64_t> losing_starts() const;

 private:
  std::int64_t n_max_;
  std::vector<std::vector<char>> wins_;  // wins_[beans][cap]
};

SolveTable solve(const GameConfig& rules, std::int64_t n_max,
                 std::int64_t bound = kDefaultSolveBound);

/// X left a pile whose least summand is G_l; the opponent took p < G_l.
/// True iff the least summand of G_l - p is within the cap p grants.
bool lemma2_check(const GameConfig& rules, std::int64_t g_index, std::int64_t p);

}  // namespace narayana::nim
