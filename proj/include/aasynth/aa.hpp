// Assume-admissible synthesis: the flag-tagged product game, its Muller
// objective, the Büchi shortcut, projection and profile verification.
#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aasynth/arena.hpp"
#include "aasynth/lift.hpp"
#include "aasynth/solvers.hpp"
#include "aasynth/values.hpp"

namespace aasynth {

/// zero: nobody left their value-preserving moves yet; bot: the player
/// did first; top: somebody else did first.
enum class Flag : int { zero = 0, bot = 1, top = 2 };

const char* flag_name(Flag f);

struct TaggedArena {
  int player = 0;
  int num_base = 0;
  GameGraph graph;  // vertex 3*s + flag, successors in action order
  std::vector<std::vector<Flag>> flag_from_zero;  // flag after (s, a) taken under zero

  static int vertex(int s, Flag f) { return 3 * s + static_cast<int>(f); }
  static int base(int v) { return v / 3; }
  static Flag flag(int v) { return static_cast<Flag>(v % 3); }
  int init_vertex(const Arena& a) const { return vertex(a.init, Flag::zero); }
  Flag next_flag(Flag f, int s, int a) const { return f == Flag::zero ? flag_from_zero[s][a] : f; }
};

TaggedArena build_gprime(const Game& game, std::span<const ValueProfile> profiles, int player);

/// Replaces atom(s) by the disjunction over the three tagged copies of s.
Circuit lift_to_tags(const Circuit& c);
Circuit build_omega_prime(const Game& game, std::span<const ValueProfile> profiles, int player);

GraphEmbedding tagged_embedding(const Arena& arena, const TaggedArena& tagged);

struct AaWinning {
  bool decision = false;
  TaggedArena tagged;
  std::shared_ptr<const GraphStrategy> tagged_strategy;
  MealyStrategy strategy;  // projected onto the base arena
  std::size_t product_size = 0;
};

AaWinning aa_winning(const Game& game, std::span<const ValueProfile> profiles, int player,
                     const SolverOptions& opt = {});
/// Requires Büchi objectives; `profiles` should come from the Büchi solver.
AaWinning aa_check_buchi(const Game& game, std::span<const ValueProfile> profiles, int player,
                         const SolverOptions& opt = {});

MealyStrategy project_strategy(const Game& game, const TaggedArena& tagged, const GraphStrategy& sigma,
                               std::size_t max_memory = 10'000'000);

enum class AaBackend { generic, buchi, automatic };

struct AaOptions {
  SolverOptions solver;
  AaBackend backend = AaBackend::generic;
};

struct AaResult {
  std::vector<bool> winning;  // per player
  std::optional<Profile> profile;
  std::vector<ValueProfile> values;
  bool all() const;
};

AaResult aa_check(const Game& game, const AaOptions& opt = {});

/// True iff every play of the tagged game consistent with `sigma` satisfies
/// the player's tagged objective.
bool wins_omega_prime(const Game& game, std::span<const ValueProfile> profiles, const MealyStrategy& sigma,
                      std::string* why = nullptr);

struct VerifyResult {
  bool holds = false;
  std::vector<bool> omega_prime;  // per player
  std::vector<bool> objectives;   // per player, on the joint outcome
  std::string error;
};

VerifyResult verify_aa_profile(const Game& game, std::span<const MealyStrategy> profile, const SolverOptions& opt = {});

}  // namespace aasynth
