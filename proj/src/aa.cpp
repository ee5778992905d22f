#include "aasynth/aa.hpp"

#include <map>
#include <unordered_map>

#include "aasynth/error.hpp"

namespace aasynth {

const char* flag_name(Flag f) {
  switch (f) {
    case Flag::zero: return "zero";
    case Flag::bot: return "bot";
    case Flag::top: return "top";
  }
  return "?";
}

TaggedArena build_gprime(const Game& game, std::span<const ValueProfile> profiles, int player) {
  const Arena& a = game.arena;
  TaggedArena t;
  t.player = player;
  t.num_base = a.num_states();
  t.flag_from_zero.resize(a.num_states());
  for (int s = 0; s < a.num_states(); ++s) {
    const int who = a.owner[s];
    for (int act = 0; act < a.num_actions(s); ++act) {
      Flag f = Flag::zero;
      if (!profiles[who].preserves(s, act)) f = who == player ? Flag::bot : Flag::top;
      t.flag_from_zero[s].push_back(f);
    }
  }
  for (int s = 0; s < a.num_states(); ++s)
    for (Flag f : {Flag::zero, Flag::bot, Flag::top}) {
      int v = t.graph.add_vertex(a.owner[s] == player);
      (void)v;
      for (int act = 0; act < a.num_actions(s); ++act)
        t.graph.succ.back().push_back(TaggedArena::vertex(a.successor(s, act), t.next_flag(f, s, act)));
    }
  return t;
}

Circuit lift_to_tags(const Circuit& c) {
  return c.substitute([](int s) {
    int copies[] = {3 * s, 3 * s + 1, 3 * s + 2};
    return Circuit::any_of(copies);
  });
}

Circuit build_omega_prime(const Game& game, std::span<const ValueProfile> profiles, int player) {
  const int n = game.arena.num_states();
  std::vector<int> zero, top;
  for (int s = 0; s < n; ++s) {
    zero.push_back(TaggedArena::vertex(s, Flag::zero));
    top.push_back(TaggedArena::vertex(s, Flag::top));
  }
  Circuit own_m = lift_to_tags(profiles[player].m);
  Circuit own_phi = lift_to_tags(game.objectives[player].circuit);
  std::vector<Circuit> others;
  for (int j = 0; j < game.arena.num_players(); ++j)
    if (j != player) others.push_back(lift_to_tags(profiles[j].m));
  return make_or({make_and({Circuit::any_of(zero), own_m, make_implies(make_and(others), own_phi)}),
                  make_and({Circuit::any_of(top), own_m})});
}

GraphEmbedding tagged_embedding(const Arena& arena, const TaggedArena& tagged) {
  GraphEmbedding e;
  e.init_tag = static_cast<int>(Flag::zero);
  e.vertex = [](int tag, int s) { return TaggedArena::vertex(s, static_cast<Flag>(tag)); };
  e.move = [&arena, &tagged](int tag, int s, int a, std::vector<int>& walk) {
    Flag f = tagged.next_flag(static_cast<Flag>(tag), s, a);
    walk.push_back(TaggedArena::vertex(arena.successor(s, a), f));
    return static_cast<int>(f);
  };
  return e;
}

MealyStrategy project_strategy(const Game& game, const TaggedArena& tagged, const GraphStrategy& sigma,
                               std::size_t max_memory) {
  return mealy_from_graph_strategy(game.arena, tagged.player, sigma, tagged_embedding(game.arena, tagged), max_memory);
}

AaWinning aa_winning(const Game& game, std::span<const ValueProfile> profiles, int player, const SolverOptions& opt) {
  AaWinning out;
  out.tagged = build_gprime(game, profiles, player);
  Circuit omega = build_omega_prime(game, profiles, player);
  MullerSolution sol = solve_muller(out.tagged.graph, omega, {}, opt);
  out.decision = sol.region[out.tagged.init_vertex(game.arena)];
  out.tagged_strategy = sol.strategy;
  out.product_size = sol.product_size;
  out.strategy = project_strategy(game, out.tagged, *sol.strategy, opt.max_states);
  return out;
}

// ---------------------------------------------------------------------------
// Büchi shortcut: a deterministic parity automaton over tagged states.

namespace {

enum phase : int { ph_s = 0, ph_t = 1, ph_u = 2, ph_v = 3 };

class buchi_automaton {
 public:
  buchi_automaton(const Game& game, std::span<const ValueProfile> profiles, int player) : player_(player) {
    const Arena& a = game.arena;
    for (int j = 0; j < a.num_players(); ++j)
      if (j != player) others_.push_back(j);
    bm_.resize(a.num_players());
    for (int j = 0; j < a.num_players(); ++j) {
      std::vector<bool> acc(a.num_states(), false);
      for (int s : game.objectives[j].accept) acc[s] = true;
      if (j == player) target_ = acc;
      const ValueProfile& p = profiles[j];
      bm_[j].resize(a.num_states());
      for (int s = 0; s < a.num_states(); ++s)
        bm_[j][s] = (p.val[s] >= 0 && acc[s]) || (p.val[s] == 0 && p.help[s]) || p.val[s] == -1;
    }
  }

  int slots() const { return static_cast<int>(others_.size()) + 1; }  // last slot = top
  int initial() const { return encode(ph_s, 0 == slots() - 1 ? slots() - 1 : 0); }

  int next(int q, int letter) const {
    const int phase = q / slots(), slot = q % slots();
    const int s = TaggedArena::base(letter);
    const Flag f = TaggedArena::flag(letter);
    const bool own = bm_[player_][s] && f != Flag::bot;
    int np = phase;
    switch (phase) {
      case ph_s: np = own ? ph_u : ph_s; break;
      case ph_t:
      case ph_u: np = !own ? ph_t : (target_[s] ? ph_v : ph_u); break;
      case ph_v: np = ph_s; break;
    }
    const int top = slots() - 1;
    int ns = slot;
    if (slot == top) {
      ns = top == 0 ? top : 0;
    } else if (f == Flag::zero && bm_[others_[slot]][s]) {
      ns = slot + 1;
    }
    return encode(np, ns);
  }

  int colour(int q) const {
    const int phase = q / slots(), slot = q % slots();
    if (phase == ph_v) return 4;
    if (slot == slots() - 1) return 3;
    if (phase == ph_u) return 2;
    return 1;
  }

  bool own_bm(int s) const { return bm_[player_][s]; }

 private:
  int encode(int phase, int slot) const { return phase * slots() + slot; }

  int player_;
  std::vector<int> others_;
  std::vector<std::vector<bool>> bm_;
  std::vector<bool> target_;
};

struct automaton_data {
  std::unordered_map<std::uint64_t, int> index;  // (tagged vertex, automaton state) -> product vertex
  std::vector<int> choice;
  const buchi_automaton* automaton = nullptr;
  int q0 = 0;
};

class automaton_strategy final : public GraphStrategy {
 public:
  automaton_strategy(std::shared_ptr<const automaton_data> d, std::shared_ptr<const buchi_automaton> aut)
      : d_(std::move(d)), aut_(std::move(aut)) {}
  int initial_memory(int) const override { return d_->q0; }
  int choice(int q, int v) const override {
    auto it = d_->index.find(key(v, q));
    return it == d_->index.end() ? 0 : d_->choice[it->second];
  }
  int update(int q, int v, int) const override { return aut_->next(q, v); }
  static std::uint64_t key(int v, int q) { return (static_cast<std::uint64_t>(v) << 8) | static_cast<std::uint64_t>(q); }

 private:
  std::shared_ptr<const automaton_data> d_;
  std::shared_ptr<const buchi_automaton> aut_;
};

}  // namespace

AaWinning aa_check_buchi(const Game& game, std::span<const ValueProfile> profiles, int player, const SolverOptions& opt) {
  if (!game.all_buchi()) throw Error("aa_check_buchi: objectives must all be Büchi");
  const Arena& a = game.arena;
  AaWinning out;
  out.tagged = build_gprime(game, profiles, player);
  auto aut = std::make_shared<buchi_automaton>(game, profiles, player);
  auto data = std::make_shared<automaton_data>();
  data->q0 = aut->initial();

  GameGraph prod;
  std::vector<int> prio;
  std::vector<std::pair<int, int>> pv;
  auto vertex_for = [&](int v, int q) {
    auto [it, fresh] = data->index.emplace(automaton_strategy::key(v, q), static_cast<int>(pv.size()));
    if (fresh) {
      if (pv.size() >= opt.max_states) throw CapExceeded("aa_check_buchi: product exceeds state cap");
      pv.emplace_back(v, q);
    }
    return it->second;
  };
  // Moves of the player that drop out of value 1 after another player's
  // deviation are sent to a losing sink (never needed to win, and the
  // automaton's shortcut for the admissibility condition relies on it).
  int sink = -1;
  const int start = vertex_for(out.tagged.init_vertex(a), data->q0);
  const ValueProfile& own = profiles[player];
  for (std::size_t i = 0; i < pv.size(); ++i) {
    auto [v, q] = pv[i];
    const int nq = aut->next(q, v);
    prod.add_vertex(out.tagged.graph.protagonist[v]);
    prio.push_back(aut->colour(nq));
    const int s = TaggedArena::base(v);
    const bool guard = TaggedArena::flag(v) == Flag::top && a.owner[s] == player && own.val[s] == 1;
    std::vector<int> succ;
    for (int w : out.tagged.graph.succ[v]) {
      if (guard && own.val[TaggedArena::base(w)] != 1) {
        if (sink < 0) sink = -2;  // allocate after the loop
        succ.push_back(-1);
        continue;
      }
      succ.push_back(vertex_for(w, nq));
    }
    prod.succ[i] = std::move(succ);
  }
  if (sink == -2) {
    sink = prod.add_vertex(false);
    prod.succ[sink] = {sink};
    prio.push_back(1);
    for (auto& row : prod.succ)
      for (int& w : row)
        if (w == -1) w = sink;
  }
  PositionalSolution sol = solve_parity(prod, prio, opt);
  data->choice = std::move(sol.choice);
  data->automaton = aut.get();
  out.decision = sol.region[start];
  out.product_size = pv.size();
  out.tagged_strategy = std::make_shared<automaton_strategy>(data, aut);
  out.strategy = project_strategy(game, out.tagged, *out.tagged_strategy, opt.max_states);
  return out;
}

bool AaResult::all() const {
  return std::all_of(winning.begin(), winning.end(), [](bool b) { return b; });
}

AaResult aa_check(const Game& game, const AaOptions& opt) {
  const bool fast = opt.backend == AaBackend::buchi || (opt.backend == AaBackend::automatic && game.all_buchi());
  AaResult out;
  out.values = compute_all_profiles(game, opt.solver, fast);
  Profile profile;
  for (int p = 0; p < game.arena.num_players(); ++p) {
    AaWinning w = fast ? aa_check_buchi(game, out.values, p, opt.solver) : aa_winning(game, out.values, p, opt.solver);
    out.winning.push_back(w.decision);
    profile.push_back(std::move(w.strategy));
  }
  if (out.all()) out.profile = std::move(profile);
  return out;
}

// ---------------------------------------------------------------------------

bool wins_omega_prime(const Game& game, std::span<const ValueProfile> profiles, const MealyStrategy& sigma,
                      std::string* why) {
  const Arena& a = game.arena;
  const int player = sigma.player;
  TaggedArena tagged = build_gprime(game, profiles, player);
  Circuit omega = build_omega_prime(game, profiles, player);

  // Configurations (tagged vertex, memory) reachable under sigma.
  GameGraph g;
  std::vector<int> labels;
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> conf;
  auto vertex_for = [&](int tv, int m) {
    auto [it, fresh] = index.emplace(std::make_pair(tv, m), static_cast<int>(conf.size()));
    if (fresh) conf.emplace_back(tv, m);
    return it->second;
  };
  vertex_for(tagged.init_vertex(a), sigma.init_memory);
  for (std::size_t i = 0; i < conf.size(); ++i) {
    auto [tv, m] = conf[i];
    const int s = TaggedArena::base(tv);
    const Flag f = TaggedArena::flag(tv);
    int lo = 0, hi = a.num_actions(s);
    if (a.owner[s] == player) {
      auto act = sigma.action_at(m, s);
      if (!act || *act < 0 || *act >= hi) {
        if (why) *why = "strategy undefined at reachable state '" + a.states[s] + "'";
        return false;
      }
      lo = *act;
      hi = *act + 1;
    }
    std::vector<int> succ;
    for (int act = lo; act < hi; ++act) {
      auto nm = sigma.next_memory(m, s, act);
      if (!nm) {
        if (why) *why = "memory update undefined at reachable state '" + a.states[s] + "'";
        return false;
      }
      succ.push_back(vertex_for(TaggedArena::vertex(a.successor(s, act), tagged.next_flag(f, s, act)), *nm));
    }
    g.add_vertex(false);
    labels.push_back(tv);
    g.succ[i] = std::move(succ);
  }
  Region bad = reachable_muller_witness(g, make_not(omega), labels);
  if (bad[0]) {
    if (why) *why = "some play consistent with the strategy violates the tagged objective";
    return false;
  }
  return true;
}

VerifyResult verify_aa_profile(const Game& game, std::span<const MealyStrategy> profile, const SolverOptions& opt) {
  VerifyResult out;
  const Arena& a = game.arena;
  if (static_cast<int>(profile.size()) != a.num_players()) {
    out.error = "profile must contain one strategy per player";
    return out;
  }
  std::vector<ValueProfile> values = compute_all_profiles(game, opt);
  out.omega_prime.assign(a.num_players(), false);
  out.objectives.assign(a.num_players(), false);
  for (const MealyStrategy& sigma : profile) {
    std::string why;
    out.omega_prime[sigma.player] = wins_omega_prime(game, values, sigma, &why);
    if (!out.omega_prime[sigma.player] && out.error.empty()) out.error = a.players[sigma.player] + ": " + why;
  }
  try {
    Lasso l = outcome_of_profile(a, profile);
    for (int p = 0; p < a.num_players(); ++p) out.objectives[p] = eval_objective(game.objectives[p], l, a.num_states());
  } catch (const InputError& e) {
    if (out.error.empty()) out.error = e.what();
  }
  out.holds = std::all_of(out.omega_prime.begin(), out.omega_prime.end(), [](bool b) { return b; }) &&
              std::all_of(out.objectives.begin(), out.objectives.end(), [](bool b) { return b; });
  return out;
}

}  // namespace aasynth
