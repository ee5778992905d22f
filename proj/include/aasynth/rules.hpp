// Deciders for the synthesis rules other than assume-admissible.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aasynth/arena.hpp"
#include "aasynth/oracle.hpp"
#include "aasynth/solvers.hpp"

namespace aasynth {

enum class RuleMethod { exact, brute_memoryless };

const char* method_name(RuleMethod m);

struct RuleVerdict {
  std::string rule;
  bool holds = false;
  std::optional<Profile> witness;  // a full profile, or a single strategy for win_under_hyp
  RuleMethod method = RuleMethod::exact;
  std::string note;
};

RuleVerdict check_coop(const Game& game, const SolverOptions& opt = {});
RuleVerdict check_win(const Game& game, const SolverOptions& opt = {});
/// Two players; the first declared player wins its objective under the
/// hypothesis that the second one's holds.
RuleVerdict check_win_under_hyp(const Game& game, const SolverOptions& opt = {});
RuleVerdict check_ag_and(const Game& game, const SolverOptions& opt = {});

/// States of the assume-guarantee restriction (intersection of the
/// per-player regions, pruned until every state keeps a move inside).
std::vector<bool> ag_and_restriction(const Game& game, const SolverOptions& opt = {});

/// Memoryless-relative rules: ag_or, ag_and, ne_exists, dom_profile,
/// rs_exists_ne, rs_forall_ne, rs_exists_dom, rs_forall_dom. The first
/// declared player is the system in the rs_* rules.
RuleVerdict check_brute(const Game& game, const std::string& rule, const OracleOptions& opt = {});

/// Profile of memoryless strategies from a joint per-state choice.
Profile profile_from_choice(const Arena& arena, const Choice& joint);

/// Memoryless assume-guarantee check of a joint choice (deviations of
/// the others also memoryless). `conjunctive` selects the ∧ variant.
bool memoryless_ag_profile(const Game& game, const Choice& joint, bool conjunctive, const OracleOptions& opt = {});

const std::vector<std::string>& exact_rules();
const std::vector<std::string>& brute_rules();

}  // namespace aasynth
