// Turning graph strategies back into Mealy machines over the base arena.
#pragma once

#include <functional>
#include <vector>

#include "aasynth/arena.hpp"
#include "aasynth/solvers.hpp"

namespace aasynth {

/// How base moves are mirrored in a derived game graph. A "tag" is the
/// extra information the derived graph tracks (a flag, for instance).
struct GraphEmbedding {
  int init_tag = 0;
  /// Graph vertex standing for base state `s` under `tag`.
  std::function<int(int tag, int s)> vertex;
  /// Tag after base move (s, a) and the graph vertices walked through,
  /// ending at the vertex of the successor state.
  std::function<int(int tag, int s, int a, std::vector<int>& walk)> move;
};

/// Mealy machine of `player` following `strategy` on the embedded graph.
/// Memory = (tag, graph memory); only configurations reachable when the
/// player follows the strategy and everybody else plays anything are kept.
MealyStrategy mealy_from_graph_strategy(const Arena& arena, int player, const GraphStrategy& strategy,
                                        const GraphEmbedding& embed, std::size_t max_memory = 10'000'000);

/// Embedding of the plain coalition graph (vertex = state).
GraphEmbedding identity_embedding(const Arena& arena);

}  // namespace aasynth
