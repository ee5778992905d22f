#include "aasynth/rules.hpp"

#include <map>

#include "aasynth/error.hpp"
#include "aasynth/lift.hpp"

namespace aasynth {

const char* method_name(RuleMethod m) { return m == RuleMethod::exact ? "exact" : "brute-memoryless"; }

const std::vector<std::string>& exact_rules() {
  static const std::vector<std::string> r{"aa", "ag_and", "coop", "win", "win_under_hyp"};
  return r;
}

const std::vector<std::string>& brute_rules() {
  static const std::vector<std::string> r{"ag_and", "ag_or", "dom_profile", "ne_exists",
                                          "rs_exists_dom", "rs_exists_ne", "rs_forall_dom", "rs_forall_ne"};
  return r;
}

namespace {

Circuit conjunction_of_objectives(const Game& game) {
  std::vector<Circuit> all;
  for (const Objective& o : game.objectives) all.push_back(o.circuit);
  return make_and(std::move(all));
}

Circuit assume_guarantee(const Game& game, int player, bool conjunctive) {
  std::vector<Circuit> others;
  for (int j = 0; j < game.arena.num_players(); ++j)
    if (j != player) others.push_back(game.objectives[j].circuit);
  Circuit premise = conjunctive ? make_and(std::move(others)) : make_or(std::move(others));
  return make_implies(premise, game.objectives[player].circuit);
}

// Follows a fixed lasso of states; after the first departure it switches
// to a fallback strategy started at the state reached.
class track_then_fallback final : public GraphStrategy {
 public:
  track_then_fallback(std::vector<int> states, std::vector<int> actions, int loop_start,
                      std::shared_ptr<const GraphStrategy> fallback)
      : states_(std::move(states)), actions_(std::move(actions)), loop_(loop_start), fallback_(std::move(fallback)) {}

  int initial_memory(int) const override { return 0; }

  int choice(int mem, int v) const override {
    if (mem < len()) return actions_[mem];
    return fallback_->choice(mem - len(), v);
  }

  int update(int mem, int v, int next) const override {
    if (mem < len()) {
      int k = mem + 1 == len() ? loop_ : mem + 1;
      if (v == states_[mem] && next == states_[k]) return k;
      return len() + fallback_->initial_memory(next);
    }
    return len() + fallback_->update(mem - len(), v, next);
  }

 private:
  int len() const { return static_cast<int>(states_.size()); }
  std::vector<int> states_;
  std::vector<int> actions_;
  int loop_;
  std::shared_ptr<const GraphStrategy> fallback_;
};

}  // namespace

RuleVerdict check_coop(const Game& game, const SolverOptions& opt) {
  const Arena& a = game.arena;
  RuleVerdict v;
  v.rule = "coop";
  GameGraph g = coalition_graph(a, full_coalition(a));
  MullerSolution sol = solve_muller(g, conjunction_of_objectives(game), {}, opt);
  v.holds = sol.region[a.init];
  if (v.holds) {
    Profile p;
    GraphEmbedding id = identity_embedding(a);
    for (int i = 0; i < a.num_players(); ++i) p.push_back(mealy_from_graph_strategy(a, i, *sol.strategy, id));
    v.witness = std::move(p);
  }
  return v;
}

RuleVerdict check_win(const Game& game, const SolverOptions& opt) {
  const Arena& a = game.arena;
  RuleVerdict v;
  v.rule = "win";
  v.holds = true;
  Profile p;
  GraphEmbedding id = identity_embedding(a);
  for (int i = 0; i < a.num_players(); ++i) {
    GameGraph g = coalition_graph(a, singleton_coalition(a, i));
    MullerSolution sol = solve_muller(g, game.objectives[i].circuit, {}, opt);
    if (!sol.region[a.init]) {
      v.holds = false;
      v.note += (v.note.empty() ? "" : ", ") + a.players[i] + " cannot win alone";
      continue;
    }
    p.push_back(mealy_from_graph_strategy(a, i, *sol.strategy, id));
  }
  if (v.holds) v.witness = std::move(p);
  return v;
}

RuleVerdict check_win_under_hyp(const Game& game, const SolverOptions& opt) {
  const Arena& a = game.arena;
  if (a.num_players() != 2) throw InputError("win_under_hyp: requires exactly two players");
  RuleVerdict v;
  v.rule = "win_under_hyp";
  GameGraph g = coalition_graph(a, singleton_coalition(a, 0));
  MullerSolution sol =
      solve_muller(g, make_implies(game.objectives[1].circuit, game.objectives[0].circuit), {}, opt);
  v.holds = sol.region[a.init];
  if (v.holds) v.witness = Profile{mealy_from_graph_strategy(a, 0, *sol.strategy, identity_embedding(a))};
  return v;
}

std::vector<bool> ag_and_restriction(const Game& game, const SolverOptions& opt) {
  const Arena& a = game.arena;
  std::vector<bool> keep(a.num_states(), true);
  for (int i = 0; i < a.num_players(); ++i) {
    GameGraph g = coalition_graph(a, singleton_coalition(a, i));
    Region w = solve_muller(g, assume_guarantee(game, i, true), {}, opt).region;
    for (int s = 0; s < a.num_states(); ++s) keep[s] = keep[s] && w[s];
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (int s = 0; s < a.num_states(); ++s) {
      if (!keep[s]) continue;
      bool inside = false;
      for (int t : a.delta[s]) inside |= keep[t];
      if (!inside) {
        keep[s] = false;
        changed = true;
      }
    }
  }
  return keep;
}

RuleVerdict check_ag_and(const Game& game, const SolverOptions& opt) {
  const Arena& a = game.arena;
  RuleVerdict v;
  v.rule = "ag_and";
  std::vector<bool> keep = ag_and_restriction(game, opt);
  if (!keep[a.init]) {
    v.note = "initial state outside the assume-guarantee region";
    return v;
  }
  // Restricted arena, everyone cooperating.
  std::vector<int> local(a.num_states(), -1), global;
  for (int s = 0; s < a.num_states(); ++s)
    if (keep[s]) {
      local[s] = static_cast<int>(global.size());
      global.push_back(s);
    }
  GameGraph g;
  std::vector<std::vector<int>> edge_action;
  for (int s : global) {
    g.add_vertex(true);
    edge_action.emplace_back();
    for (int act = 0; act < a.num_actions(s); ++act)
      if (keep[a.successor(s, act)]) {
        g.succ.back().push_back(local[a.successor(s, act)]);
        edge_action.back().push_back(act);
      }
  }
  Circuit all = conjunction_of_objectives(game).substitute([&](int s) {
    return local[s] < 0 ? Circuit::constant(false) : Circuit::atom(local[s]);
  });
  MullerSolution sol = solve_muller(g, all, {}, opt);
  v.holds = sol.region[local[a.init]];
  if (!v.holds) return v;

  // Cooperative lasso inside the restriction.
  std::vector<int> states, actions;
  std::map<std::pair<int, int>, int> seen;
  int lv = local[a.init], mem = sol.strategy->initial_memory(lv);
  int loop = 0;
  while (true) {
    auto [it, fresh] = seen.emplace(std::make_pair(lv, mem), static_cast<int>(states.size()));
    if (!fresh) {
      loop = it->second;
      break;
    }
    int k = sol.strategy->choice(mem, lv);
    states.push_back(global[lv]);
    actions.push_back(edge_action[lv][k]);
    int next = g.succ[lv][k];
    mem = sol.strategy->update(mem, lv, next);
    lv = next;
  }
  Profile p;
  GraphEmbedding id = identity_embedding(a);
  for (int i = 0; i < a.num_players(); ++i) {
    GameGraph gi = coalition_graph(a, singleton_coalition(a, i));
    MullerSolution wi = solve_muller(gi, assume_guarantee(game, i, true), {}, opt);
    track_then_fallback strat(states, actions, loop, wi.strategy);
    p.push_back(mealy_from_graph_strategy(a, i, strat, id));
  }
  v.witness = std::move(p);
  return v;
}

// ---------------------------------------------------------------------------

Profile profile_from_choice(const Arena& arena, const Choice& joint) {
  Profile p;
  for (int i = 0; i < arena.num_players(); ++i) p.push_back(memoryless_strategy(arena, i, joint));
  return p;
}

bool memoryless_ag_profile(const Game& game, const Choice& joint, bool conjunctive, const OracleOptions& opt) {
  const Arena& a = game.arena;
  std::vector<bool> w = memoryless_wins(game, joint);
  if (!std::all_of(w.begin(), w.end(), [](bool b) { return b; })) return false;
  for (int i = 0; i < a.num_players(); ++i) {
    std::vector<bool> others(a.num_players(), true);
    others[i] = false;
    MemorylessSpace dev = MemorylessSpace::of_players(a, others);
    check_profile_cap(dev.size(), opt, "ag profile");
    Circuit cond = assume_guarantee(game, i, conjunctive);
    Choice c = joint;
    for (std::uint64_t k = 0; k < dev.size(); ++k) {
      dev.decode(k, c);
      if (!cond.evaluate(memoryless_outcome(a, c).inf_set(a.num_states()))) return false;
    }
  }
  return true;
}

namespace {

std::vector<bool> everyone(const Arena& a) { return std::vector<bool>(a.num_players(), true); }

// Joint choices of players 1..n-1 with the system's part taken from `base`.
struct environment_space {
  MemorylessSpace space;
  explicit environment_space(const Arena& a)
      : space(MemorylessSpace::of_players(a, [&] {
          std::vector<bool> v(a.num_players(), true);
          v[0] = false;
          return v;
        }())) {}
};

bool env_nash(const Game& game, const Choice& joint, const OracleOptions& opt) {
  const Arena& a = game.arena;
  std::vector<bool> base = memoryless_wins(game, joint);
  for (int p = 1; p < a.num_players(); ++p) {
    if (base[p]) continue;
    MemorylessSpace mine = MemorylessSpace::of_player(a, p);
    check_profile_cap(mine.size(), opt, "rs nash");
    Choice dev = joint;
    for (std::uint64_t k = 0; k < mine.size(); ++k) {
      mine.decode(k, dev);
      if (memoryless_wins(game, dev)[p]) return false;
    }
  }
  return true;
}

}  // namespace

RuleVerdict check_brute(const Game& game, const std::string& rule, const OracleOptions& opt) {
  const Arena& a = game.arena;
  RuleVerdict v;
  v.rule = rule;
  v.method = RuleMethod::brute_memoryless;
  MemorylessSpace joint_space = MemorylessSpace::of_players(a, everyone(a));
  Choice joint(a.num_states(), 0);

  if (rule == "ag_or" || rule == "ag_and" || rule == "ne_exists") {
    check_profile_cap(joint_space.size(), opt, rule.c_str());
    for (std::uint64_t k = 0; k < joint_space.size(); ++k) {
      joint_space.decode(k, joint);
      bool ok = rule == "ne_exists" ? is_nash(game, joint, opt) : memoryless_ag_profile(game, joint, rule == "ag_and", opt);
      if (ok) {
        v.holds = true;
        v.witness = profile_from_choice(a, joint);
        return v;
      }
    }
    return v;
  }

  if (rule == "dom_profile") {
    std::vector<bool> none(a.num_players(), false);
    for (int p = 0; p < a.num_players(); ++p) {
      MemorylessSpace mine = MemorylessSpace::of_player(a, p);
      check_profile_cap(mine.size(), opt, rule.c_str());
      bool found = false;
      Choice c(a.num_states(), 0);
      for (std::uint64_t k = 0; k < mine.size() && !found; ++k) {
        mine.decode(k, c);
        if (is_dominant(game, p, c, none, opt)) {
          found = true;
          for (int s : mine.states()) joint[s] = c[s];
        }
      }
      if (!found) {
        v.note = a.players[p] + " has no dominant memoryless strategy";
        return v;
      }
    }
    v.holds = true;
    v.witness = profile_from_choice(a, joint);
    return v;
  }

  const bool nash = rule == "rs_exists_ne" || rule == "rs_forall_ne";
  const bool dom = rule == "rs_exists_dom" || rule == "rs_forall_dom";
  if (!nash && !dom) throw InputError("unknown brute-force rule '" + rule + "'");
  const bool exists = rule == "rs_exists_ne" || rule == "rs_exists_dom";
  MemorylessSpace sys = MemorylessSpace::of_player(a, 0);
  environment_space env(a);
  check_profile_cap(sys.size() * std::max<std::uint64_t>(env.space.size(), 1), opt, rule.c_str());
  std::vector<bool> fixed(a.num_players(), false);
  fixed[0] = true;
  for (std::uint64_t k = 0; k < sys.size(); ++k) {
    sys.decode(k, joint);
    std::optional<Choice> good;
    bool any = false, all_good = true;
    for (std::uint64_t e = 0; e < env.space.size(); ++e) {
      env.space.decode(e, joint);
      bool rational = true;
      if (nash) {
        rational = env_nash(game, joint, opt);
      } else {
        for (int p = 1; p < a.num_players() && rational; ++p) rational = is_dominant(game, p, joint, fixed, opt);
      }
      if (!rational) continue;
      any = true;
      bool wins = memoryless_wins(game, joint)[0];
      if (wins && !good) good = joint;
      all_good &= wins;
    }
    bool ok = exists ? good.has_value() : (any && all_good);
    if (ok) {
      v.holds = true;
      v.witness = profile_from_choice(a, good ? *good : joint);
      return v;
    }
  }
  return v;
}

}  // namespace aasynth
