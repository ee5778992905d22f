// Random instances for property suites.
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "aasynth/abstraction.hpp"
#include "aasynth/arena.hpp"
#include "aasynth/solvers.hpp"

namespace aasynth::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// Every player owns at least one state when there are enough states.
inline Arena random_arena(Rng& rng, int num_states, int num_players, int max_actions = 3) {
  Arena a;
  for (int p = 0; p < num_players; ++p) {
    a.players.push_back("P" + std::to_string(p + 1));
    std::vector<std::string> acts;
    int k = uniform(rng, 1, max_actions);
    if (p == 0) k = std::max(k, 2);
    for (int i = 0; i < k; ++i) acts.push_back(std::string(1, static_cast<char>('a' + i)));
    a.actions.push_back(acts);
  }
  for (int s = 0; s < num_states; ++s) {
    a.states.push_back("s" + std::to_string(s + 1));
    int o = s < num_players ? s : uniform(rng, 0, num_players - 1);
    a.owner.push_back(o);
  }
  std::shuffle(a.owner.begin(), a.owner.end(), rng);
  for (int s = 0; s < num_states; ++s) {
    std::vector<int> row;
    for (std::size_t i = 0; i < a.actions[a.owner[s]].size(); ++i) row.push_back(uniform(rng, 0, num_states - 1));
    a.delta.push_back(row);
  }
  a.init = 0;
  a.index();
  a.validate();
  return a;
}

inline std::vector<int> random_subset(Rng& rng, int n, double p) {
  std::vector<int> out;
  for (int s = 0; s < n; ++s)
    if (coin(rng, p)) out.push_back(s);
  return out;
}

inline Game random_buchi_game(Rng& rng, int min_states = 2, int max_states = 6, int min_players = 2,
                              int max_players = 3) {
  Game g;
  const int n = uniform(rng, min_states, max_states);
  const int k = uniform(rng, min_players, std::min(max_players, n));
  g.arena = random_arena(rng, n, k);
  for (int p = 0; p < k; ++p) g.objectives.push_back(Objective::buchi(random_subset(rng, n, 0.35)));
  return g;
}

/// Random circuit over the given states (small, mixing all connectives).
inline Circuit random_circuit(Rng& rng, int n, int depth = 2) {
  if (depth == 0 || coin(rng, 0.3)) return Circuit::atom(uniform(rng, 0, n - 1));
  switch (uniform(rng, 0, 2)) {
    case 0: return make_not(random_circuit(rng, n, depth - 1));
    case 1: return make_and({random_circuit(rng, n, depth - 1), random_circuit(rng, n, depth - 1)});
    default: return make_or({random_circuit(rng, n, depth - 1), random_circuit(rng, n, depth - 1)});
  }
}

inline Game random_muller_game(Rng& rng, int min_states = 2, int max_states = 5, int num_players = 2) {
  Game g;
  const int n = uniform(rng, std::max(min_states, num_players), max_states);
  g.arena = random_arena(rng, n, num_players);
  for (int p = 0; p < num_players; ++p) {
    if (coin(rng, 0.5))
      g.objectives.push_back(Objective::buchi(random_subset(rng, n, 0.35)));
    else
      g.objectives.push_back(Objective::muller(random_circuit(rng, n)));
  }
  return g;
}

struct ParityInstance {
  GameGraph graph;
  std::vector<int> priority;
};

inline ParityInstance random_parity_game(Rng& rng, int min_states = 1, int max_states = 6, int max_priority = 5) {
  ParityInstance p;
  const int n = uniform(rng, min_states, max_states);
  for (int v = 0; v < n; ++v) {
    p.graph.add_vertex(coin(rng));
    const int k = uniform(rng, 1, 3);
    for (int i = 0; i < k; ++i) p.graph.succ[v].push_back(uniform(rng, 0, n - 1));
    p.priority.push_back(uniform(rng, 0, max_priority));
  }
  return p;
}

/// Merges states that share owner and membership in every Büchi target,
/// so each objective only depends on which blocks are inhabited.
inline Partition random_compatible_partition(Rng& rng, const Game& game, double merge = 0.6) {
  const Arena& a = game.arena;
  const int n = a.num_states();
  std::vector<std::vector<int>> blocks;
  std::vector<std::vector<int>> signature(n);
  for (int s = 0; s < n; ++s) {
    signature[s].push_back(a.owner[s]);
    for (const Objective& o : game.objectives)
      signature[s].push_back(std::binary_search(o.accept.begin(), o.accept.end(), s) ? 1 : 0);
  }
  for (int s = 0; s < n; ++s) {
    bool placed = false;
    for (auto& b : blocks)
      if (signature[b.front()] == signature[s] && coin(rng, merge)) {
        b.push_back(s);
        placed = true;
        break;
      }
    if (!placed) blocks.push_back({s});
  }
  Partition p;
  p.block_of.assign(n, -1);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    p.ids.push_back("B" + std::to_string(i));
    std::sort(blocks[i].begin(), blocks[i].end());
    for (int s : blocks[i]) p.block_of[s] = static_cast<int>(i);
  }
  p.blocks = std::move(blocks);
  return p;
}

}  // namespace aasynth::testing
