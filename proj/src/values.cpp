#include "aasynth/values.hpp"

#include <set>

namespace aasynth {

std::vector<int> ValueProfile::states_with_value(int x) const {
  std::vector<int> out;
  for (int s = 0; s < static_cast<int>(val.size()); ++s)
    if (val[s] == x) out.push_back(s);
  return out;
}

Region winning_region(const Game& game, const std::vector<bool>& coalition, const Circuit& objective,
                      const SolverOptions& opt) {
  GameGraph g = coalition_graph(game.arena, coalition);
  return solve_muller(g, objective, {}, opt).region;
}

namespace {

Region region_for(const Game& game, int player, const std::vector<bool>& coalition, const SolverOptions& opt,
                  bool use_buchi) {
  const Objective& obj = game.objectives[player];
  GameGraph g = coalition_graph(game.arena, coalition);
  if (use_buchi && obj.kind == ObjectiveKind::buchi) {
    Region target(game.arena.num_states(), false);
    for (int s : obj.accept) target[s] = true;
    return solve_buchi(g, target, opt).region;
  }
  return solve_muller(g, obj.circuit, {}, opt).region;
}

}  // namespace

std::vector<int> compute_values(const Game& game, int player, const SolverOptions& opt, bool use_buchi) {
  const Arena& a = game.arena;
  Region alone = region_for(game, player, singleton_coalition(a, player), opt, use_buchi);
  Region together = region_for(game, player, full_coalition(a), opt, use_buchi);
  std::vector<int> val(a.num_states());
  for (int s = 0; s < a.num_states(); ++s) val[s] = alone[s] ? 1 : (together[s] ? 0 : -1);
  return val;
}

std::vector<std::vector<bool>> value_edges(const Game& game, int player, const std::vector<int>& val) {
  const Arena& a = game.arena;
  std::vector<std::vector<bool>> e(a.num_states());
  for (int s = 0; s < a.num_states(); ++s) {
    e[s].assign(a.num_actions(s), true);
    if (a.owner[s] != player) continue;
    for (int act = 0; act < a.num_actions(s); ++act) e[s][act] = val[a.successor(s, act)] == val[s];
  }
  return e;
}

std::vector<bool> help_states(const Game& game, int player, const std::vector<int>& val) {
  const Arena& a = game.arena;
  std::vector<bool> h(a.num_states(), false);
  for (int s = 0; s < a.num_states(); ++s) {
    if (a.owner[s] == player || val[s] != 0) continue;
    std::set<int> good;
    for (int t : a.delta[s])
      if (val[t] >= 0) good.insert(t);
    h[s] = good.size() >= 2;
  }
  return h;
}

Circuit build_m_circuit(const Game& game, int player, const std::vector<int>& val, const std::vector<bool>& help) {
  std::vector<int> win, draw, helpers;
  for (int s = 0; s < game.arena.num_states(); ++s) {
    if (val[s] == 1) win.push_back(s);
    if (val[s] == 0) draw.push_back(s);
    if (help[s]) helpers.push_back(s);
  }
  const Circuit& phi = game.objectives[player].circuit;
  return make_and({make_implies(Circuit::any_of(win), phi),
                   make_implies(Circuit::any_of(draw), make_or({phi, Circuit::any_of(helpers)}))});
}

ValueProfile compute_value_profile(const Game& game, int player, const SolverOptions& opt, bool use_buchi) {
  ValueProfile p;
  p.player = player;
  p.val = compute_values(game, player, opt, use_buchi);
  p.edge = value_edges(game, player, p.val);
  p.help = help_states(game, player, p.val);
  p.m = build_m_circuit(game, player, p.val, p.help);
  return p;
}

std::vector<ValueProfile> compute_all_profiles(const Game& game, const SolverOptions& opt, bool use_buchi) {
  std::vector<ValueProfile> out;
  for (int p = 0; p < game.arena.num_players(); ++p) out.push_back(compute_value_profile(game, p, opt, use_buchi));
  return out;
}

PhiCondition build_phi(const Game& game, int player, const SolverOptions& opt) {
  ValueProfile p = compute_value_profile(game, player, opt);
  return {std::move(p.edge), std::move(p.m)};
}

}  // namespace aasynth
