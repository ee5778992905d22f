// Corpus access and claim evaluation shared by the unit and acceptance tests.
#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "aasynth/aa.hpp"
#include "aasynth/arena.hpp"
#include "aasynth/cli.hpp"
#include "aasynth/error.hpp"
#include "aasynth/oracle.hpp"
#include "aasynth/rules.hpp"

namespace aasynth::testing {

inline std::string corpus_path(const std::string& name) {
  return (std::filesystem::path(default_corpus_dir()) / name).string();
}

inline Game corpus_game(const std::string& id) { return load_game(corpus_path(id + ".game")); }

inline std::vector<std::string> corpus_ids() {
  std::vector<std::string> ids;
  for (const auto& e : std::filesystem::directory_iterator(default_corpus_dir()))
    if (e.path().extension() == ".game") ids.push_back(e.path().stem().string());
  std::sort(ids.begin(), ids.end());
  return ids;
}

/// Joint memoryless choice: listed states get the named action, all others
/// their first action.
inline Choice joint_choice(const Arena& a, const std::map<std::string, std::string>& picks) {
  Choice c(a.num_states(), 0);
  for (const auto& [state, action] : picks) {
    int s = a.state_index(state);
    c[s] = a.action_index(a.owner[s], action);
  }
  return c;
}

/// Profile-level predicates named in corpus claims. Player 0 is the system.
inline bool profile_check(const Game& game, const std::string& kind, const Choice& joint) {
  const int k = game.arena.num_players();
  std::vector<bool> wins = memoryless_wins(game, joint);
  if (kind == "nash") return is_nash(game, joint);
  if (kind == "sys_wins") return wins[0];
  if (kind == "all_win") return std::all_of(wins.begin(), wins.end(), [](bool b) { return b; });
  if (kind == "ag_and") return memoryless_ag_profile(game, joint, true);
  if (kind == "ag_or") return memoryless_ag_profile(game, joint, false);
  if (kind == "rs_dom") {
    std::vector<bool> fixed(k, false);
    fixed[0] = true;
    for (int j = 1; j < k; ++j)
      if (!is_dominant(game, j, joint, fixed)) return false;
    return wins[0];
  }
  throw Error("unknown profile check '" + kind + "'");
}

struct ClaimOutcome {
  std::string game;
  std::string label;
  bool expected = false;
  bool actual = false;
};

/// Evaluates every claim stored in a corpus file's metadata.
inline std::vector<ClaimOutcome> evaluate_claims(const std::string& id) {
  Game game = corpus_game(id);
  nlohmann::json meta = nlohmann::json::parse(game.meta);
  std::vector<ClaimOutcome> out;
  for (const auto& c : meta.at("claims")) {
    ClaimOutcome r;
    r.game = id;
    r.expected = c.at("holds").get<bool>();
    if (c.contains("rule")) {
      const std::string rule = c.at("rule");
      r.label = rule;
      if (rule == "aa") {
        r.actual = aa_check(game).all();
      } else if (rule == "coop") {
        r.actual = check_coop(game).holds;
      } else if (rule == "win") {
        r.actual = check_win(game).holds;
      } else if (rule == "win_under_hyp") {
        r.actual = check_win_under_hyp(game).holds;
      } else if (rule == "ag_and" && !c.contains("method")) {
        r.actual = check_ag_and(game).holds;
      } else {
        r.actual = check_brute(game, rule).holds;
      }
    } else if (c.contains("verify")) {
      Profile profile;
      for (const auto& f : c.at("verify")) profile.push_back(load_strategy(game.arena, corpus_path(f)));
      r.label = "verify";
      r.actual = verify_aa_profile(game, profile).holds;
    } else {
      std::map<std::string, std::string> picks = c.at("profile").get<std::map<std::string, std::string>>();
      r.label = c.at("profile_check").get<std::string>() + " " + c.at("profile").dump();
      r.actual = profile_check(game, c.at("profile_check"), joint_choice(game.arena, picks));
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace aasynth::testing
