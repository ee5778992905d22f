#include "aasynth/abstraction.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include <json.hpp>

#include "aasynth/error.hpp"
#include "aasynth/lift.hpp"

namespace aasynth {

using json = nlohmann::json;

void validate_partition(const Arena& arena, const Partition& p) {
  if (static_cast<int>(p.block_of.size()) != arena.num_states()) throw InputError("partition: state count mismatch");
  std::set<std::string> ids;
  std::vector<int> hits(arena.num_states(), 0);
  for (int b = 0; b < p.size(); ++b) {
    if (!ids.insert(p.ids[b]).second) throw InputError("partition: duplicate block id '" + p.ids[b] + "'");
    if (p.blocks[b].empty()) throw InputError("partition: block '" + p.ids[b] + "' is empty");
    const int who = arena.owner[p.blocks[b].front()];
    for (int s : p.blocks[b]) {
      ++hits[s];
      if (p.block_of[s] != b) throw InputError("partition: inconsistent block map");
      if (arena.owner[s] != who)
        throw InputError("partition: block '" + p.ids[b] + "' mixes states of " + arena.players[who] + " and " +
                         arena.players[arena.owner[s]]);
    }
  }
  for (int s = 0; s < arena.num_states(); ++s)
    if (hits[s] != 1)
      throw InputError("partition: state '" + arena.states[s] + "' appears in " + std::to_string(hits[s]) + " blocks");
}

Partition parse_partition(const Arena& arena, std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("partition: syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  Partition p;
  p.block_of.assign(arena.num_states(), -1);
  std::vector<int> seen(arena.num_states(), 0);
  try {
    for (const json& blk : doc.at("blocks")) {
      const int b = p.size();
      p.ids.push_back(blk.at("id").get<std::string>());
      p.blocks.emplace_back();
      for (const json& st : blk.at("states")) {
        auto s = arena.find_state(st.get<std::string>());
        if (!s) throw InputError("partition: unknown state '" + st.get<std::string>() + "'");
        p.blocks[b].push_back(*s);
        p.block_of[*s] = b;
        ++seen[*s];
      }
      std::sort(p.blocks[b].begin(), p.blocks[b].end());
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("partition: ") + e.what());
  }
  for (int s = 0; s < arena.num_states(); ++s)
    if (seen[s] != 1)
      throw InputError("partition: state '" + arena.states[s] + "' appears in " + std::to_string(seen[s]) + " blocks");
  validate_partition(arena, p);
  return p;
}

Partition load_partition(const Arena& arena, const std::string& path) { return parse_partition(arena, read_file(path)); }

std::string dump_partition(const Arena& arena, const Partition& p) {
  json blocks = json::array();
  for (int b = 0; b < p.size(); ++b) {
    json st = json::array();
    for (int s : p.blocks[b]) st.push_back(arena.states[s]);
    blocks.push_back({{"id", p.ids[b]}, {"states", st}});
  }
  return json{{"blocks", blocks}}.dump(2) + "\n";
}

Partition identity_partition(const Arena& arena) {
  Partition p;
  for (int s = 0; s < arena.num_states(); ++s) {
    p.ids.push_back(arena.states[s]);
    p.blocks.push_back({s});
    p.block_of.push_back(s);
  }
  return p;
}

const char* compatibility_name(Compatibility c) {
  switch (c) {
    case Compatibility::verified: return "verified";
    case Compatibility::violated: return "violated";
    case Compatibility::capped_out: return "capped-out";
  }
  return "?";
}

namespace {

Circuit lift_to_blocks(const Circuit& c, const Partition& p) {
  return c.substitute([&](int s) { return Circuit::atom(p.block_of[s]); });
}

// Pattern enumeration for one circuit. Each block holding atoms contributes
// the subset of its atom states, plus one extra pattern when the block also
// has other states (inhabited with none of its atoms).
Compatibility compatible(const Circuit& c, const Partition& p, std::uint64_t cap) {
  std::vector<int> atoms = c.atoms();
  std::map<int, std::vector<int>> by_block;
  for (int s : atoms) by_block[p.block_of[s]].push_back(s);
  struct slot {
    int block;
    std::vector<int> states;
    bool extra;
    std::uint64_t radix;
  };
  std::vector<slot> slots;
  std::uint64_t total = 1;
  for (auto& [b, st] : by_block) {
    if (st.size() >= 20) return Compatibility::capped_out;
    bool extra = p.blocks[b].size() > st.size();
    std::uint64_t r = (std::uint64_t{1} << st.size()) + (extra ? 1 : 0);
    if (total > cap / r) return Compatibility::capped_out;
    total *= r;
    slots.push_back({b, st, extra, r});
  }
  Circuit lifted = lift_to_blocks(c, p);
  std::vector<bool> concrete(p.block_of.size(), false), abstract(p.size(), false);
  for (std::uint64_t k = 0; k < total; ++k) {
    std::uint64_t rest = k;
    for (const slot& sl : slots) {
      std::uint64_t d = rest % sl.radix;
      rest /= sl.radix;
      bool full = d == (std::uint64_t{1} << sl.states.size());
      for (std::size_t i = 0; i < sl.states.size(); ++i) concrete[sl.states[i]] = !full && ((d >> i) & 1);
      abstract[sl.block] = d != 0;
    }
    if (c.evaluate(concrete) != lifted.evaluate(abstract)) return Compatibility::violated;
  }
  return Compatibility::verified;
}

}  // namespace

Compatibility check_compatibility(const Game& game, const Partition& p, std::uint64_t cap) {
  Compatibility out = Compatibility::verified;
  for (const Objective& o : game.objectives) {
    Compatibility c = compatible(o.circuit, p, cap);
    if (c == Compatibility::violated) return c;
    if (c == Compatibility::capped_out) out = c;
  }
  return out;
}

std::vector<bool> Abstraction::concretize(const std::vector<bool>& blocks) const {
  std::vector<bool> out(partition.block_of.size(), false);
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = blocks[partition.block_of[s]];
  return out;
}

Abstraction make_abstraction(const Game& game, Partition p, Compatibility* compat) {
  const Arena& a = game.arena;
  validate_partition(a, p);
  Compatibility c = check_compatibility(game, p);
  if (c == Compatibility::violated) throw InputError("partition: not compatible with the objectives");
  if (compat) *compat = c;
  Abstraction abs;
  abs.game = &game;
  abs.partition = std::move(p);
  const int nb = abs.partition.size();
  abs.owner.resize(nb);
  abs.post.resize(nb);
  for (int b = 0; b < nb; ++b) {
    const int rep = abs.partition.blocks[b].front();
    abs.owner[b] = a.owner[rep];
    abs.post[b].resize(a.num_actions(rep));
    for (int act = 0; act < a.num_actions(rep); ++act) {
      std::vector<int>& out = abs.post[b][act];
      for (int s : abs.partition.blocks[b]) out.push_back(abs.partition.block_of[a.successor(s, act)]);
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
  }
  for (const Objective& o : game.objectives) abs.objective.push_back(lift_to_blocks(o.circuit, abs.partition));
  return abs;
}

AbstractArena build_abstract_arena(const Abstraction& abs, const std::vector<bool>& coalition) {
  AbstractArena out;
  const int nb = abs.num_blocks();
  int next = nb;
  for (int b = 0; b < nb; ++b) {
    out.first_inter.push_back(next);
    next += abs.num_actions(b);
  }
  for (int b = 0; b < nb; ++b) {
    out.graph.add_vertex(coalition[abs.owner[b]]);
    out.labels.push_back(b);
    for (int act = 0; act < abs.num_actions(b); ++act) out.graph.succ.back().push_back(out.inter(b, act));
  }
  for (int b = 0; b < nb; ++b)
    for (int act = 0; act < abs.num_actions(b); ++act) {
      out.graph.add_vertex(true);
      out.labels.push_back(-1);
      out.graph.succ.back() = abs.post[b][act];
    }
  return out;
}

Region abstract_win(const Abstraction& abs, const std::vector<bool>& coalition, bool d_is_c, const Circuit& objective,
                    const SolverOptions& opt) {
  AbstractArena arena = build_abstract_arena(abs, coalition);
  if (!d_is_c)
    for (char& p : arena.graph.protagonist) p = !p;
  Region r = solve_muller(arena.graph, objective, arena.labels, opt).region;
  r.resize(abs.num_blocks());
  return r;
}

Region abstract_cpre(const Abstraction& abs, int player, const Region& target) {
  Region out(abs.num_blocks(), false);
  for (int b = 0; b < abs.num_blocks(); ++b) {
    auto inside = [&](int act) {
      return std::all_of(abs.post[b][act].begin(), abs.post[b][act].end(), [&](int t) { return target[t]; });
    };
    bool mine = abs.owner[b] == player;
    bool ok = !mine;
    for (int act = 0; act < abs.num_actions(b); ++act) {
      if (mine && inside(act)) ok = true;
      if (!mine && !inside(act)) ok = false;
    }
    out[b] = ok;
  }
  return out;
}

Region AbstractValues::under_any() const {
  Region r(under[0].size(), false);
  for (const Region& x : under)
    for (std::size_t b = 0; b < r.size(); ++b) r[b] = r[b] || x[b];
  return r;
}

namespace {

Region intersect(const Region& a, const Region& b) {
  Region r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] && b[i];
  return r;
}

Region unite(const Region& a, const Region& b) {
  Region r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] || b[i];
  return r;
}

std::vector<int> members(const Region& r) {
  std::vector<int> out;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i]) out.push_back(static_cast<int>(i));
  return out;
}

}  // namespace

AbstractValues abstract_values(const Abstraction& abs, int k, const SolverOptions& opt) {
  const Arena& a = abs.game->arena;
  const Circuit& phi = abs.objective[k];
  const Circuit not_phi = make_not(phi);
  std::vector<bool> only_k = singleton_coalition(a, k), all = full_coalition(a), none(a.num_players(), false);
  std::vector<bool> others = only_k;
  others.flip();

  AbstractValues v;
  v.over[2] = abstract_win(abs, only_k, true, phi, opt);
  v.over[0] = abstract_win(abs, none, true, not_phi, opt);
  v.over[1] = intersect(abstract_win(abs, others, true, not_phi, opt), abstract_win(abs, all, true, phi, opt));

  v.under[2] = abstract_win(abs, others, false, phi, opt);
  v.under[0] = abstract_win(abs, all, false, not_phi, opt);
  Region f = intersect(abstract_win(abs, only_k, false, not_phi, opt), abstract_win(abs, none, false, phi, opt));
  Region fixed = unite(v.under[2], v.under[0]);
  Region x = f;
  while (true) {
    Region nx = intersect(abstract_cpre(abs, k, unite(x, fixed)), f);
    if (nx == x) break;
    x = std::move(nx);
  }
  v.under[1] = std::move(x);
  return v;
}

AbstractEdges abstract_edges(const Abstraction& abs, int k, const AbstractValues& v) {
  const int nb = abs.num_blocks();
  AbstractEdges e;
  Region under_any = v.under_any();
  for (int b = 0; b < nb; ++b) {
    e.over.emplace_back(abs.num_actions(b), true);
    e.under.emplace_back(abs.num_actions(b), true);
    if (abs.owner[b] != k) continue;
    for (int act = 0; act < abs.num_actions(b); ++act) {
      const std::vector<int>& post = abs.post[b][act];
      bool over = false, under = false;
      for (int x = -1; x <= 1; ++x) {
        if (v.over[x + 1][b]) {
          over |= std::any_of(post.begin(), post.end(), [&](int t) {
            for (int l = x; l <= 1; ++l)
              if (v.over[l + 1][t]) return true;
            return false;
          });
        }
        if (v.under[x + 1][b]) {
          under |= std::all_of(post.begin(), post.end(), [&](int t) {
            for (int l = x; l <= 1; ++l)
              if (v.under[l + 1][t]) return true;
            return false;
          });
        }
      }
      e.over[b][act] = over;
      e.under[b][act] = under || !under_any[b];
    }
  }
  return e;
}

AbstractHelp abstract_help(const Abstraction& abs, int k, const AbstractValues& v) {
  const int nb = abs.num_blocks();
  AbstractHelp h{Region(nb, false), Region(nb, false)};
  Region over_good = unite(v.over[1], v.over[2]);
  Region under_good = unite(v.under[1], v.under[2]);
  for (int b = 0; b < nb; ++b) {
    if (abs.owner[b] == k) continue;
    if (v.over[1][b]) {
      std::set<int> good;
      for (const auto& post : abs.post[b])
        for (int t : post)
          if (over_good[t]) good.insert(t);
      bool two = good.size() >= 2;
      for (int t : good) two |= abs.partition.blocks[t].size() >= 2;
      h.over[b] = two;
    }
    if (v.under[1][b]) {
      const auto& post = abs.post[b];
      auto good = [&](const std::vector<int>& p) {
        return std::all_of(p.begin(), p.end(), [&](int t) { return under_good[t]; });
      };
      for (std::size_t x = 0; x < post.size() && !h.under[b]; ++x)
        for (std::size_t y = x + 1; y < post.size() && !h.under[b]; ++y) {
          std::vector<int> common;
          std::set_intersection(post[x].begin(), post[x].end(), post[y].begin(), post[y].end(),
                                std::back_inserter(common));
          h.under[b] = common.empty() && good(post[x]) && good(post[y]);
        }
    }
  }
  return h;
}

std::vector<AbstractPlayer> abstract_players(const Abstraction& abs, const SolverOptions& opt) {
  std::vector<AbstractPlayer> out;
  for (int k = 0; k < abs.game->arena.num_players(); ++k) {
    AbstractPlayer p;
    p.player = k;
    p.values = abstract_values(abs, k, opt);
    p.edges = abstract_edges(abs, k, p.values);
    p.help = abstract_help(abs, k, p.values);
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

Circuit m_circuit(const Circuit& phi, const Region& win, const Region& draw, const Region& help) {
  std::vector<int> w = members(win), d = members(draw), h = members(help);
  return make_and({make_implies(Circuit::any_of(w), phi),
                   make_implies(Circuit::any_of(d), make_or({phi, Circuit::any_of(h)}))});
}

Circuit lift_blocks_to_tags(const Circuit& c) {
  return c.substitute([](int b) {
    int copies[] = {3 * b, 3 * b + 1, 3 * b + 2};
    return Circuit::any_of(copies);
  });
}

}  // namespace

Circuit abstract_m_under(const Abstraction& abs, const AbstractPlayer& p) {
  return m_circuit(abs.objective[p.player], p.values.over[2], p.values.over[1], p.help.under);
}

Circuit abstract_m_over(const Abstraction& abs, const AbstractPlayer& p) {
  return m_circuit(abs.objective[p.player], p.values.under[2], p.values.under[1], p.help.over);
}

AbstractAaGame build_abstract_aa_game(const Abstraction& abs, std::span<const AbstractPlayer> players, int k) {
  const int nb = abs.num_blocks();
  AbstractAaGame g;
  g.player = k;
  g.num_blocks = nb;
  int slots = 0;
  for (int b = 0; b < nb; ++b) {
    g.first_inter.push_back(slots);
    slots += abs.num_actions(b);
    g.flag_from_zero.emplace_back();
    const int who = abs.owner[b];
    for (int act = 0; act < abs.num_actions(b); ++act) {
      Flag f = Flag::zero;
      if (who == k && !players[k].edges.under[b][act]) f = Flag::bot;
      if (who != k && !players[who].edges.over[b][act]) f = Flag::top;
      g.flag_from_zero[b].push_back(f);
    }
  }
  for (int b = 0; b < nb; ++b)
    for (Flag f : {Flag::zero, Flag::bot, Flag::top}) {
      g.graph.add_vertex(abs.owner[b] == k);
      for (int act = 0; act < abs.num_actions(b); ++act)
        g.graph.succ.back().push_back(g.inter_vertex(b, act, g.next_flag(f, b, act)));
    }
  for (int b = 0; b < nb; ++b)
    for (int act = 0; act < abs.num_actions(b); ++act)
      for (Flag f : {Flag::zero, Flag::bot, Flag::top}) {
        g.graph.add_vertex(false);
        for (int t : abs.post[b][act]) g.graph.succ.back().push_back(AbstractAaGame::block_vertex(t, f));
      }

  std::vector<int> zero, top;
  for (int b = 0; b < nb; ++b) {
    zero.push_back(AbstractAaGame::block_vertex(b, Flag::zero));
    top.push_back(AbstractAaGame::block_vertex(b, Flag::top));
  }
  Circuit own_m = lift_blocks_to_tags(abstract_m_under(abs, players[k]));
  Circuit own_phi = lift_blocks_to_tags(abs.objective[k]);
  std::vector<Circuit> others;
  for (const AbstractPlayer& p : players)
    if (p.player != k) others.push_back(lift_blocks_to_tags(abstract_m_over(abs, p)));
  g.omega = make_or({make_and({Circuit::any_of(zero), own_m, make_implies(make_and(others), own_phi)}),
                     make_and({Circuit::any_of(top), own_m})});
  return g;
}

MealyStrategy concretize_strategy(const Abstraction& abs, const AbstractAaGame& g, const GraphStrategy& sigma,
                                  std::size_t max_memory) {
  const Arena& a = abs.game->arena;
  const std::vector<int>& block_of = abs.partition.block_of;
  GraphEmbedding e;
  e.init_tag = static_cast<int>(Flag::zero);
  e.vertex = [&](int tag, int s) { return AbstractAaGame::block_vertex(block_of[s], static_cast<Flag>(tag)); };
  e.move = [&](int tag, int s, int act, std::vector<int>& walk) {
    const int b = block_of[s];
    Flag f = g.next_flag(static_cast<Flag>(tag), b, act);
    walk.push_back(g.inter_vertex(b, act, f));
    walk.push_back(AbstractAaGame::block_vertex(block_of[a.successor(s, act)], f));
    return static_cast<int>(f);
  };
  return mealy_from_graph_strategy(a, g.player, sigma, e, max_memory);
}

AbstractAaResult abstract_aa_check(const Abstraction& abs, std::span<const AbstractPlayer> players, int k,
                                   const SolverOptions& opt) {
  AbstractAaResult out;
  const int init_block = abs.partition.block_of[abs.game->arena.init];
  if (!players[k].values.under_any()[init_block]) {
    out.inconclusive = true;
    return out;
  }
  out.game = build_abstract_aa_game(abs, players, k);
  MullerSolution sol = solve_muller(out.game.graph, out.game.omega, {}, opt);
  out.decision = sol.region[AbstractAaGame::block_vertex(init_block, Flag::zero)];
  out.abstract_strategy = sol.strategy;
  out.product_size = sol.product_size;
  if (out.decision) out.strategy = concretize_strategy(abs, out.game, *sol.strategy, opt.max_states);
  return out;
}

}  // namespace aasynth
