#include "aasynth/oracle.hpp"

#include <limits>

#include "aasynth/error.hpp"

namespace aasynth {

namespace {

std::uint64_t mul_capped(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

}  // namespace

MemorylessSpace::MemorylessSpace(const Arena& arena, std::vector<int> states) : states_(std::move(states)) {
  for (int s : states_) {
    radix_.push_back(arena.num_actions(s));
    size_ = mul_capped(size_, static_cast<std::uint64_t>(arena.num_actions(s)));
  }
}

MemorylessSpace MemorylessSpace::of_player(const Arena& arena, int player) {
  std::vector<int> st;
  for (int s = 0; s < arena.num_states(); ++s)
    if (arena.owner[s] == player) st.push_back(s);
  return MemorylessSpace(arena, std::move(st));
}

MemorylessSpace MemorylessSpace::of_players(const Arena& arena, const std::vector<bool>& players) {
  std::vector<int> st;
  for (int s = 0; s < arena.num_states(); ++s)
    if (players[arena.owner[s]]) st.push_back(s);
  return MemorylessSpace(arena, std::move(st));
}

void MemorylessSpace::decode(std::uint64_t k, Choice& into) const {
  for (std::size_t i = states_.size(); i-- > 0;) {
    into[states_[i]] = static_cast<int>(k % radix_[i]);
    k /= radix_[i];
  }
}

void check_profile_cap(std::uint64_t count, const OracleOptions& opt, const char* what) {
  if (count > opt.max_profiles)
    throw CapExceeded(std::string(what) + ": " + std::to_string(count) + " memoryless profiles exceed the cap of " +
                      std::to_string(opt.max_profiles));
}

Lasso memoryless_outcome(const Arena& arena, const Choice& joint, std::optional<int> start) {
  std::vector<int> pos(arena.num_states(), -1);
  std::vector<Step> steps;
  int s = start.value_or(arena.init);
  while (pos[s] < 0) {
    pos[s] = static_cast<int>(steps.size());
    steps.push_back({s, joint[s]});
    s = arena.successor(s, joint[s]);
  }
  Lasso l;
  l.prefix.assign(steps.begin(), steps.begin() + pos[s]);
  l.cycle.assign(steps.begin() + pos[s], steps.end());
  return l;
}

std::vector<bool> memoryless_wins(const Game& game, const Choice& joint) {
  Lasso l = memoryless_outcome(game.arena, joint);
  std::vector<bool> inf = l.inf_set(game.arena.num_states());
  std::vector<bool> out;
  for (const Objective& o : game.objectives) out.push_back(o.circuit.evaluate(inf));
  return out;
}

namespace {

std::vector<bool> all_but(const Arena& a, int player) {
  std::vector<bool> v(a.num_players(), true);
  v[player] = false;
  return v;
}

bool player_wins(const Game& game, int player, const Choice& joint) {
  Lasso l = memoryless_outcome(game.arena, joint);
  return game.objectives[player].circuit.evaluate(l.inf_set(game.arena.num_states()));
}

}  // namespace

bool memoryless_dominates(const Game& game, int player, const Choice& sigma, const Choice& sigma_prime,
                          const OracleOptions& opt) {
  const Arena& a = game.arena;
  MemorylessSpace others = MemorylessSpace::of_players(a, all_but(a, player));
  check_profile_cap(others.size(), opt, "memoryless_dominates");
  MemorylessSpace mine = MemorylessSpace::of_player(a, player);
  Choice x(a.num_states(), 0), y(a.num_states(), 0);
  for (int s : mine.states()) {
    x[s] = sigma[s];
    y[s] = sigma_prime[s];
  }
  bool strict = false;
  for (std::uint64_t k = 0; k < others.size(); ++k) {
    others.decode(k, x);
    others.decode(k, y);
    bool wx = player_wins(game, player, x), wy = player_wins(game, player, y);
    if (wx && !wy) return false;
    strict |= wy && !wx;
  }
  return strict;
}

std::vector<Choice> memoryless_admissible_set(const Game& game, int player, const OracleOptions& opt) {
  const Arena& a = game.arena;
  MemorylessSpace mine = MemorylessSpace::of_player(a, player);
  MemorylessSpace others = MemorylessSpace::of_players(a, all_but(a, player));
  check_profile_cap(mul_capped(mine.size(), others.size()), opt, "memoryless_admissible_set");
  std::vector<std::vector<bool>> wins(mine.size(), std::vector<bool>(others.size()));
  Choice joint(a.num_states(), 0);
  for (std::uint64_t i = 0; i < mine.size(); ++i) {
    mine.decode(i, joint);
    for (std::uint64_t k = 0; k < others.size(); ++k) {
      others.decode(k, joint);
      wins[i][k] = player_wins(game, player, joint);
    }
  }
  auto dominated_by = [&](std::uint64_t i, std::uint64_t j) {
    bool strict = false;
    for (std::uint64_t k = 0; k < others.size(); ++k) {
      if (wins[i][k] && !wins[j][k]) return false;
      strict |= wins[j][k] && !wins[i][k];
    }
    return strict;
  };
  std::vector<Choice> out;
  for (std::uint64_t i = 0; i < mine.size(); ++i) {
    bool dominated = false;
    for (std::uint64_t j = 0; j < mine.size() && !dominated; ++j) dominated = j != i && dominated_by(i, j);
    if (!dominated) {
      Choice c(a.num_states(), 0);
      mine.decode(i, c);
      out.push_back(std::move(c));
    }
  }
  return out;
}

bool is_nash(const Game& game, const Choice& joint, const OracleOptions& opt) {
  const Arena& a = game.arena;
  std::vector<bool> base = memoryless_wins(game, joint);
  for (int p = 0; p < a.num_players(); ++p) {
    if (base[p]) continue;
    MemorylessSpace mine = MemorylessSpace::of_player(a, p);
    check_profile_cap(mine.size(), opt, "is_nash");
    Choice dev = joint;
    for (std::uint64_t k = 0; k < mine.size(); ++k) {
      mine.decode(k, dev);
      if (player_wins(game, p, dev)) return false;
    }
  }
  return true;
}

bool is_dominant(const Game& game, int player, const Choice& joint, const std::vector<bool>& fixed,
                 const OracleOptions& opt) {
  const Arena& a = game.arena;
  std::vector<bool> free(a.num_players(), false);
  for (int p = 0; p < a.num_players(); ++p) free[p] = p != player && !fixed[p];
  MemorylessSpace others = MemorylessSpace::of_players(a, free);
  MemorylessSpace mine = MemorylessSpace::of_player(a, player);
  check_profile_cap(mul_capped(mine.size(), others.size()), opt, "is_dominant");
  Choice x = joint;
  for (std::uint64_t k = 0; k < others.size(); ++k) {
    others.decode(k, x);
    if (player_wins(game, player, x)) continue;
    Choice y = x;
    for (std::uint64_t j = 0; j < mine.size(); ++j) {
      mine.decode(j, y);
      if (player_wins(game, player, y)) return false;
    }
  }
  return true;
}

Region brute_region(const GameGraph& g, const std::function<bool(const std::vector<bool>&)>& wins,
                    const OracleOptions& opt) {
  const int n = g.size();
  std::vector<int> pv, av;
  std::uint64_t np = 1, na = 1;
  for (int v = 0; v < n; ++v) {
    if (g.protagonist[v]) {
      pv.push_back(v);
      np = mul_capped(np, g.succ[v].size());
    } else {
      av.push_back(v);
      na = mul_capped(na, g.succ[v].size());
    }
  }
  check_profile_cap(mul_capped(np, na), opt, "brute_region");
  auto decode = [&](const std::vector<int>& vs, std::uint64_t k, std::vector<int>& choice) {
    for (std::size_t i = vs.size(); i-- > 0;) {
      int d = static_cast<int>(g.succ[vs[i]].size());
      choice[vs[i]] = static_cast<int>(k % d);
      k /= d;
    }
  };
  auto play_wins = [&](const std::vector<int>& choice, int start) {
    std::vector<int> pos(n, -1);
    std::vector<int> path;
    int v = start;
    while (pos[v] < 0) {
      pos[v] = static_cast<int>(path.size());
      path.push_back(v);
      v = g.succ[v][choice[v]];
    }
    std::vector<bool> inf(n, false);
    for (std::size_t k = pos[v]; k < path.size(); ++k) inf[path[k]] = true;
    return wins(inf);
  };
  Region region(n, false);
  std::vector<int> choice(n, 0);
  for (int start = 0; start < n; ++start) {
    for (std::uint64_t p = 0; p < np && !region[start]; ++p) {
      decode(pv, p, choice);
      bool all = true;
      for (std::uint64_t q = 0; q < na && all; ++q) {
        decode(av, q, choice);
        all = play_wins(choice, start);
      }
      region[start] = all;
    }
  }
  return region;
}

Region brute_region(const GameGraph& g, const std::vector<int>& priority, const OracleOptions& opt) {
  return brute_region(
      g,
      [&](const std::vector<bool>& inf) {
        int top = -1;
        for (std::size_t v = 0; v < inf.size(); ++v)
          if (inf[v]) top = std::max(top, priority[v]);
        return top % 2 == 0;
      },
      opt);
}

}  // namespace aasynth
