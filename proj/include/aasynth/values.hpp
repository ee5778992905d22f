// Per-player state values, value-preserving moves and help states.
#pragma once

#include <vector>

#include "aasynth/arena.hpp"
#include "aasynth/solvers.hpp"

namespace aasynth {

struct ValueProfile {
  int player = 0;
  std::vector<int> val;                 // per state, in {-1, 0, 1}
  std::vector<std::vector<bool>> edge;  // edge[s][a]: (s, a) preserves the value, trivially true off the player's states
  std::vector<bool> help;
  Circuit m;                            // prefix-independent part of the admissibility condition

  bool preserves(int s, int a) const { return edge[s][a]; }
  std::vector<int> states_with_value(int x) const;
};

/// `use_buchi` selects the dedicated Büchi solver when the objective allows it.
std::vector<int> compute_values(const Game& game, int player, const SolverOptions& opt = {}, bool use_buchi = false);
std::vector<std::vector<bool>> value_edges(const Game& game, int player, const std::vector<int>& val);
std::vector<bool> help_states(const Game& game, int player, const std::vector<int>& val);
Circuit build_m_circuit(const Game& game, int player, const std::vector<int>& val, const std::vector<bool>& help);

ValueProfile compute_value_profile(const Game& game, int player, const SolverOptions& opt = {}, bool use_buchi = false);
std::vector<ValueProfile> compute_all_profiles(const Game& game, const SolverOptions& opt = {}, bool use_buchi = false);

struct PhiCondition {
  std::vector<std::vector<bool>> safe;  // G(safe) part
  Circuit m;
};
PhiCondition build_phi(const Game& game, int player, const SolverOptions& opt = {});

/// Region of the player (or coalition) for its objective, via the solver
/// that matches the objective.
Region winning_region(const Game& game, const std::vector<bool>& coalition, const Circuit& objective,
                      const SolverOptions& opt = {});

}  // namespace aasynth
