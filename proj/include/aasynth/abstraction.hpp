// Partition-based abstraction of a game and the abstract AA check.
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "aasynth/aa.hpp"
#include "aasynth/arena.hpp"
#include "aasynth/solvers.hpp"

namespace aasynth {

struct Partition {
  std::vector<std::string> ids;          // per block
  std::vector<std::vector<int>> blocks;  // concrete states per block, ascending
  std::vector<int> block_of;             // per concrete state

  int size() const { return static_cast<int>(blocks.size()); }
};

/// Throws InputError unless the blocks cover every state exactly once and
/// each block belongs to a single owner.
void validate_partition(const Arena& arena, const Partition& p);
Partition parse_partition(const Arena& arena, std::string_view text);
Partition load_partition(const Arena& arena, const std::string& path);
std::string dump_partition(const Arena& arena, const Partition& p);
Partition identity_partition(const Arena& arena);

enum class Compatibility { verified, violated, capped_out };
const char* compatibility_name(Compatibility c);

/// Whether each objective depends only on which blocks are inhabited.
/// Patterns are enumerated over the states the circuit mentions.
Compatibility check_compatibility(const Game& game, const Partition& p, std::uint64_t cap = std::uint64_t{1} << 20);

/// Block-level data shared by every abstract game.
struct Abstraction {
  const Game* game = nullptr;
  Partition partition;
  std::vector<int> owner;                            // per block
  std::vector<std::vector<std::vector<int>>> post;   // post[b][a], ascending block ids
  std::vector<Circuit> objective;                    // per player, atoms are block ids

  int num_blocks() const { return partition.size(); }
  int num_actions(int b) const { return static_cast<int>(post[b].size()); }
  std::vector<bool> concretize(const std::vector<bool>& blocks) const;
};

/// Validates the partition; throws InputError when compatibility is violated.
Abstraction make_abstraction(const Game& game, Partition p, Compatibility* compat = nullptr);

/// Two-sided arena in which coalition C also resolves the nondeterminism:
/// blocks first, then one intermediate vertex per (block, action).
struct AbstractArena {
  GameGraph graph;               // protagonist = coalition C
  std::vector<int> labels;       // block id, -1 on intermediates
  std::vector<int> first_inter;  // per block, vertex of (b, 0)
  int inter(int b, int a) const { return first_inter[b] + a; }
};

AbstractArena build_abstract_arena(const Abstraction& abs, const std::vector<bool>& coalition);

/// Blocks from which side D of the arena built for C wins `objective`
/// (a circuit over block atoms); `d_is_c` selects D = C, otherwise D = -C.
Region abstract_win(const Abstraction& abs, const std::vector<bool>& coalition, bool d_is_c, const Circuit& objective,
                    const SolverOptions& opt = {});

/// Controllable predecessors of X for player k on block level.
Region abstract_cpre(const Abstraction& abs, int player, const Region& target);

struct AbstractValues {
  std::array<Region, 3> over;   // indexed by value + 1
  std::array<Region, 3> under;
  Region under_any() const;
};

AbstractValues abstract_values(const Abstraction& abs, int player, const SolverOptions& opt = {});

struct AbstractEdges {
  std::vector<std::vector<bool>> over;   // [block][action]
  std::vector<std::vector<bool>> under;
};
AbstractEdges abstract_edges(const Abstraction& abs, int player, const AbstractValues& v);

struct AbstractHelp {
  Region over;
  Region under;
};
AbstractHelp abstract_help(const Abstraction& abs, int player, const AbstractValues& v);

struct AbstractPlayer {
  int player = 0;
  AbstractValues values;
  AbstractEdges edges;
  AbstractHelp help;
};
std::vector<AbstractPlayer> abstract_players(const Abstraction& abs, const SolverOptions& opt = {});

/// Under- and over-approximations of M'_k lifted to block atoms.
Circuit abstract_m_under(const Abstraction& abs, const AbstractPlayer& p);
Circuit abstract_m_over(const Abstraction& abs, const AbstractPlayer& p);

/// Flag-tagged abstract game for player k. Vertex 3*b + flag for blocks,
/// then 3*(intermediate slot) + flag after them.
struct AbstractAaGame {
  int player = 0;
  int num_blocks = 0;
  GameGraph graph;
  Circuit omega;  // atoms are vertex ids
  std::vector<int> first_inter;
  std::vector<std::vector<Flag>> flag_from_zero;  // [block][action]

  static int block_vertex(int b, Flag f) { return 3 * b + static_cast<int>(f); }
  int inter_vertex(int b, int a, Flag f) const { return 3 * (num_blocks + first_inter[b] + a) + static_cast<int>(f); }
  Flag next_flag(Flag f, int b, int a) const { return f == Flag::zero ? flag_from_zero[b][a] : f; }
};

AbstractAaGame build_abstract_aa_game(const Abstraction& abs, std::span<const AbstractPlayer> players, int player);

struct AbstractAaResult {
  bool inconclusive = false;  // initial block outside the under-approximated value sets
  bool decision = false;
  AbstractAaGame game;
  std::shared_ptr<const GraphStrategy> abstract_strategy;
  std::optional<MealyStrategy> strategy;  // concretized, when decision holds
  std::size_t product_size = 0;
};

AbstractAaResult abstract_aa_check(const Abstraction& abs, std::span<const AbstractPlayer> players, int player,
                                   const SolverOptions& opt = {});

/// Concrete Mealy strategy playing the abstract strategy on block histories.
MealyStrategy concretize_strategy(const Abstraction& abs, const AbstractAaGame& g, const GraphStrategy& sigma,
                                  std::size_t max_memory = 10'000'000);

}  // namespace aasynth
