// Exhaustive ground truth over memoryless strategies (small games only).
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "aasynth/arena.hpp"
#include "aasynth/solvers.hpp"

namespace aasynth {

/// A memoryless choice for a set of states is stored in a per-state
/// action vector; entries for states outside the set are ignored.
using Choice = std::vector<int>;

/// All memoryless choices over a fixed state set, in mixed-radix order
/// (the first state varies slowest).
class MemorylessSpace {
 public:
  MemorylessSpace(const Arena& arena, std::vector<int> states);
  static MemorylessSpace of_player(const Arena& arena, int player);
  static MemorylessSpace of_players(const Arena& arena, const std::vector<bool>& players);

  std::uint64_t size() const { return size_; }
  const std::vector<int>& states() const { return states_; }
  /// Writes the k-th choice into `into` (only the space's states are touched).
  void decode(std::uint64_t k, Choice& into) const;

 private:
  std::vector<int> states_;
  std::vector<int> radix_;
  std::uint64_t size_ = 1;
};

struct OracleOptions {
  std::uint64_t max_profiles = 1'000'000;
};

/// Play-out of a joint memoryless choice from `start` (default: init).
Lasso memoryless_outcome(const Arena& arena, const Choice& joint, std::optional<int> start = std::nullopt);
std::vector<bool> memoryless_wins(const Game& game, const Choice& joint);

/// True iff `sigma` is dominated by `sigma_prime` for player i, against
/// all memoryless strategies of the others.
bool memoryless_dominates(const Game& game, int player, const Choice& sigma, const Choice& sigma_prime,
                          const OracleOptions& opt = {});
/// Admissible memoryless strategies of the player (full per-state vectors,
/// other players' entries set to 0).
std::vector<Choice> memoryless_admissible_set(const Game& game, int player, const OracleOptions& opt = {});
bool is_nash(const Game& game, const Choice& joint, const OracleOptions& opt = {});
/// True iff the player's part of `joint` is dominant (no memoryless
/// alternative wins where it loses), others ranging over memoryless
/// strategies while players in `fixed` keep their part of `joint`.
bool is_dominant(const Game& game, int player, const Choice& joint, const std::vector<bool>& fixed,
                 const OracleOptions& opt = {});

/// Vertices where the protagonist has a memoryless strategy beating every
/// memoryless antagonist strategy; `wins` judges an infinity set.
Region brute_region(const GameGraph& g, const std::function<bool(const std::vector<bool>&)>& wins,
                    const OracleOptions& opt = {});
Region brute_region(const GameGraph& g, const std::vector<int>& priority, const OracleOptions& opt = {});

/// Throws CapExceeded when `count` exceeds the cap.
void check_profile_cap(std::uint64_t count, const OracleOptions& opt, const char* what);

}  // namespace aasynth
