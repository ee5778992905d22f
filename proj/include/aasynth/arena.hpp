// Turn-based multiplayer arenas, objectives, strategies and play-outs.
#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "aasynth/circuit.hpp"

namespace aasynth {

/// States, players and actions are referred to by their declaration index.
struct Arena {
  std::vector<std::string> players;
  std::vector<std::vector<std::string>> actions;  // per player
  std::vector<std::string> states;
  std::vector<int> owner;               // per state
  std::vector<std::vector<int>> delta;  // delta[s][a], a indexes actions[owner[s]]
  int init = 0;

  int num_states() const { return static_cast<int>(states.size()); }
  int num_players() const { return static_cast<int>(players.size()); }
  int num_actions(int s) const { return static_cast<int>(delta[s].size()); }
  int successor(int s, int a) const { return delta[s][a]; }

  int state_index(std::string_view id) const;
  int player_index(std::string_view id) const;
  int action_index(int player, std::string_view id) const;
  std::optional<int> find_state(std::string_view id) const;

  /// Rebuilds the id lookup tables; call after editing the vectors by hand.
  void index();
  /// Throws InputError when an invariant is violated.
  void validate() const;

 private:
  std::unordered_map<std::string, int> state_ids_;
  std::unordered_map<std::string, int> player_ids_;
  std::vector<std::unordered_map<std::string, int>> action_ids_;
};

enum class ObjectiveKind { buchi, muller };

struct Objective {
  ObjectiveKind kind = ObjectiveKind::muller;
  std::vector<int> accept;  // Büchi targets (empty for Muller)
  Circuit circuit;          // always populated

  static Objective buchi(std::vector<int> targets);
  static Objective muller(Circuit c);
};

struct Game {
  Arena arena;
  std::vector<Objective> objectives;  // per player
  std::string meta;                   // free-form JSON text carried through from the file

  bool all_buchi() const;
};

struct Step {
  int state;
  int action;
  friend bool operator==(const Step&, const Step&) = default;
};

struct Lasso {
  std::vector<Step> prefix;
  std::vector<Step> cycle;

  /// Membership vector of the states visited infinitely often.
  std::vector<bool> inf_set(int num_states) const;
};

/// Finite-memory strategy. Memory ids are dense indices into `memory`.
struct MealyStrategy {
  int player = 0;
  std::vector<std::string> memory;
  int init_memory = 0;
  std::map<std::pair<int, int>, int> output;           // (memory, state) -> action
  std::map<std::tuple<int, int, int>, int> update;     // (memory, state, action) -> memory

  std::optional<int> action_at(int mem, int state) const;
  std::optional<int> next_memory(int mem, int state, int action) const;
  bool memoryless() const { return memory.size() == 1; }
};

/// Memoryless strategy from one action per owned state (other entries ignored).
MealyStrategy memoryless_strategy(const Arena& arena, int player, std::span<const int> choice);

using Profile = std::vector<MealyStrategy>;

/// Throws InputError when some player's strategy is undefined on the play.
Lasso outcome_of_profile(const Arena& arena, std::span<const MealyStrategy> profile);

bool eval_objective(const Objective& obj, const Lasso& lasso, int num_states);

// serialization -------------------------------------------------------------

Game parse_arena(std::string_view text);
Game load_game(const std::string& path);
std::string dump_game(const Game& game);

std::string formula_text(const Arena& arena, const Circuit& c);
Circuit parse_state_formula(const Arena& arena, std::string_view text);

MealyStrategy parse_strategy(const Arena& arena, std::string_view text);
MealyStrategy load_strategy(const Arena& arena, const std::string& path);
std::string dump_strategy(const Arena& arena, const MealyStrategy& sigma);

std::string read_file(const std::string& path);

}  // namespace aasynth
