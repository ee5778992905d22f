// Two-sided zero-sum solving on explicit game graphs.
#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "aasynth/arena.hpp"
#include "aasynth/circuit.hpp"

namespace aasynth {

/// Explicit two-sided graph. Successor order is meaningful: a strategy
/// picks a successor *index*, which for arena-derived graphs is the action.
struct GameGraph {
  std::vector<char> protagonist;  // 1 when the protagonist side moves at the vertex
  std::vector<std::vector<int>> succ;

  int size() const { return static_cast<int>(succ.size()); }
  int add_vertex(bool prot) {
    protagonist.push_back(prot);
    succ.emplace_back();
    return size() - 1;
  }
};

using Region = std::vector<bool>;

struct SolverOptions {
  std::uint64_t seed = 0;  // 0 keeps declaration order for tie-breaking
  std::size_t max_states = 10'000'000;
};

/// Finite-memory strategy on a GameGraph. Memory is the value carried
/// while sitting at `vertex`; it is valid for both sides.
class GraphStrategy {
 public:
  virtual ~GraphStrategy() = default;
  virtual int initial_memory(int vertex) const = 0;
  /// Successor index to take at `vertex`.
  virtual int choice(int memory, int vertex) const = 0;
  /// Memory after moving from `vertex` to `next`.
  virtual int update(int memory, int vertex, int next) const = 0;
};

class MemorylessStrategy final : public GraphStrategy {
 public:
  explicit MemorylessStrategy(std::vector<int> choice) : choice_(std::move(choice)) {}
  int initial_memory(int) const override { return 0; }
  int choice(int, int vertex) const override { return choice_[vertex]; }
  int update(int, int, int) const override { return 0; }
  const std::vector<int>& choices() const { return choice_; }

 private:
  std::vector<int> choice_;
};

/// Coalition graph of an arena: one vertex per state, successors in
/// action order, protagonist = owners inside `coalition`.
GameGraph coalition_graph(const Arena& arena, const std::vector<bool>& coalition);
std::vector<bool> singleton_coalition(const Arena& arena, int player);
std::vector<bool> full_coalition(const Arena& arena);

/// Least set containing `target` that the given side can force; when
/// `choice` is given, attracting-side moves are recorded for added vertices.
Region attractor(const GameGraph& g, bool protagonist_side, const Region& target,
                 const Region* within = nullptr, std::vector<int>* choice = nullptr,
                 std::uint64_t seed = 0);

/// `choice[v]` is a winning successor index for the side that wins at v,
/// and successor 0 where the owner of v loses.
struct PositionalSolution {
  Region region;  // protagonist region
  std::vector<int> choice;
};

/// Max-parity: the protagonist wins iff the highest priority seen
/// infinitely often is even.
PositionalSolution solve_parity(const GameGraph& g, std::span<const int> priority, const SolverOptions& opt = {});
PositionalSolution solve_buchi(const GameGraph& g, const Region& target, const SolverOptions& opt = {});

/// `labels[v]` is the atom index vertex v stands for in the circuit
/// (-1 for none). An empty span means the identity labelling.
struct LarProduct {
  GameGraph graph;
  std::vector<int> priority;
  std::vector<int> projection;  // product vertex -> original vertex
  std::vector<int> entry;       // original vertex -> product vertex with an empty record
  std::shared_ptr<const struct LarData> data;
};
LarProduct lar_reduce(const GameGraph& g, const Circuit& c, std::span<const int> labels, const SolverOptions& opt = {});

struct MullerSolution {
  Region region;
  std::shared_ptr<const GraphStrategy> strategy;  // wins for each side on its region
  std::size_t product_size = 0;
};
MullerSolution solve_muller(const GameGraph& g, const Circuit& c, std::span<const int> labels = {},
                            const SolverOptions& opt = {});

/// Vertices from which some path (all choices cooperating) has an
/// infinity set satisfying the circuit. Ignores the protagonist flags.
Region reachable_muller_witness(const GameGraph& g, const Circuit& c, std::span<const int> labels = {});

}  // namespace aasynth
