#include "aasynth/solvers.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>

#include "aasynth/error.hpp"

namespace aasynth {

GameGraph coalition_graph(const Arena& arena, const std::vector<bool>& coalition) {
  GameGraph g;
  for (int s = 0; s < arena.num_states(); ++s) {
    g.add_vertex(coalition[arena.owner[s]]);
    g.succ[s] = arena.delta[s];
  }
  return g;
}

std::vector<bool> singleton_coalition(const Arena& arena, int player) {
  std::vector<bool> c(arena.num_players(), false);
  c[player] = true;
  return c;
}

std::vector<bool> full_coalition(const Arena& arena) { return std::vector<bool>(arena.num_players(), true); }

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Successor indices of v in tie-break order.
std::vector<int> succ_order(int v, int degree, std::uint64_t seed) {
  std::vector<int> order(degree);
  std::iota(order.begin(), order.end(), 0);
  if (seed != 0) {
    std::vector<std::uint64_t> key(degree);
    for (int i = 0; i < degree; ++i) key[i] = mix(seed ^ mix(static_cast<std::uint64_t>(v) * 1315423911ULL + i));
    std::sort(order.begin(), order.end(), [&](int a, int b) { return key[a] < key[b]; });
  }
  return order;
}

class graph_view {
 public:
  explicit graph_view(const GameGraph& g) : g_(g), pred_(g.size()) {
    for (int v = 0; v < g.size(); ++v)
      for (int w : g.succ[v]) pred_[w].push_back(v);
  }

  const GameGraph& graph() const { return g_; }

  // Attractor restricted to vertices with in[v] set.
  std::vector<char> attract(bool side, const std::vector<char>& target, const std::vector<char>& in,
                            std::vector<int>* choice, std::uint64_t seed) const {
    const int n = g_.size();
    std::vector<char> attr(n, 0);
    std::vector<int> count(n, 0);
    std::deque<int> queue;
    for (int v = 0; v < n; ++v) {
      if (!in[v]) continue;
      if (target[v]) {
        attr[v] = 1;
        queue.push_back(v);
      }
      for (int w : g_.succ[v]) count[v] += in[w] ? 1 : 0;
    }
    while (!queue.empty()) {
      int w = queue.front();
      queue.pop_front();
      for (int u : pred_[w]) {
        if (!in[u] || attr[u]) continue;
        if (static_cast<bool>(g_.protagonist[u]) == side) {
          if (choice) {
            const auto& su = g_.succ[u];
            for (int k : succ_order(u, static_cast<int>(su.size()), seed))
              if (in[su[k]] && attr[su[k]]) {
                (*choice)[u] = k;
                break;
              }
          }
          attr[u] = 1;
          queue.push_back(u);
        } else if (--count[u] == 0) {
          attr[u] = 1;
          queue.push_back(u);
        }
      }
    }
    return attr;
  }

  // Any successor inside `in`, in tie-break order.
  int stay_inside(int v, const std::vector<char>& in, std::uint64_t seed) const {
    const auto& s = g_.succ[v];
    for (int k : succ_order(v, static_cast<int>(s.size()), seed))
      if (in[s[k]]) return k;
    return 0;
  }

 private:
  const GameGraph& g_;
  std::vector<std::vector<int>> pred_;
};

std::vector<char> to_mask(const Region& r) { return std::vector<char>(r.begin(), r.end()); }

void check_graph(const GameGraph& g) {
  if (g.protagonist.size() != g.succ.size()) throw Error("game graph: inconsistent tables");
  for (int v = 0; v < g.size(); ++v) {
    if (g.succ[v].empty()) throw Error("game graph: vertex without successor");
    for (int w : g.succ[v])
      if (w < 0 || w >= g.size()) throw Error("game graph: successor out of range");
  }
}

// Owner-losing vertices play successor 0.
void normalise_losing_choices(const GameGraph& g, const Region& region, std::vector<int>& choice) {
  for (int v = 0; v < g.size(); ++v)
    if (static_cast<bool>(g.protagonist[v]) != static_cast<bool>(region[v])) choice[v] = 0;
}

class zielonka {
 public:
  zielonka(const GameGraph& g, std::vector<int> prio, std::uint64_t seed)
      : view_(g), prio_(std::move(prio)), seed_(seed), choice_(g.size(), 0) {}

  PositionalSolution run() {
    const int n = view_.graph().size();
    std::vector<char> all(n, 1), even(n, 0), odd(n, 0);
    solve(all, even, odd);
    PositionalSolution out;
    out.region.assign(even.begin(), even.end());
    out.choice = std::move(choice_);
    normalise_losing_choices(view_.graph(), out.region, out.choice);
    return out;
  }

 private:
  // Adds the vertices of `game` won by each parity to `win_even` / `win_odd`.
  void solve(std::vector<char> game, std::vector<char>& win_even, std::vector<char>& win_odd) {
    const int n = view_.graph().size();
    while (true) {
      int top = -1;
      for (int v = 0; v < n; ++v)
        if (game[v]) top = std::max(top, prio_[v]);
      if (top < 0) return;
      const int p = top & 1;
      const bool side = p == 0;
      std::vector<char> top_set(n, 0);
      for (int v = 0; v < n; ++v) top_set[v] = game[v] && prio_[v] == top;
      std::vector<char> attr = view_.attract(side, top_set, game, &choice_, seed_);
      std::vector<char> rest(n, 0);
      bool rest_empty = true;
      for (int v = 0; v < n; ++v) {
        rest[v] = game[v] && !attr[v];
        rest_empty &= !rest[v];
      }
      std::vector<char> sub_even(n, 0), sub_odd(n, 0);
      if (!rest_empty) solve(rest, sub_even, sub_odd);
      std::vector<char>& sub_opp = p == 0 ? sub_odd : sub_even;
      bool opp_empty = std::none_of(sub_opp.begin(), sub_opp.end(), [](char c) { return c != 0; });
      if (opp_empty) {
        for (int v = 0; v < n; ++v) {
          if (!game[v]) continue;
          (p == 0 ? win_even : win_odd)[v] = 1;
          if (top_set[v] && static_cast<bool>(view_.graph().protagonist[v]) == side)
            choice_[v] = view_.stay_inside(v, game, seed_);
        }
        return;
      }
      std::vector<char> opp_attr = view_.attract(!side, sub_opp, game, &choice_, seed_);
      for (int v = 0; v < n; ++v) {
        if (!opp_attr[v]) continue;
        (p == 0 ? win_odd : win_even)[v] = 1;
        game[v] = 0;
      }
    }
  }

  graph_view view_;
  std::vector<int> prio_;
  std::uint64_t seed_;
  std::vector<int> choice_;
};

// Order-preserving renumbering that merges adjacent equal-parity priorities.
std::vector<int> compress_priorities(std::span<const int> priority) {
  std::vector<int> distinct(priority.begin(), priority.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::unordered_map<int, int> to;
  int cur = -1;
  for (int p : distinct) {
    if (cur < 0)
      cur = p & 1;
    else if ((cur & 1) != (p & 1))
      ++cur;
    to[p] = cur;
  }
  std::vector<int> out(priority.size());
  for (std::size_t v = 0; v < priority.size(); ++v) out[v] = to[priority[v]];
  return out;
}

}  // namespace

Region attractor(const GameGraph& g, bool protagonist_side, const Region& target, const Region* within,
                 std::vector<int>* choice, std::uint64_t seed) {
  check_graph(g);
  graph_view view(g);
  std::vector<char> in = within ? to_mask(*within) : std::vector<char>(g.size(), 1);
  if (choice) choice->resize(g.size(), 0);
  std::vector<char> a = view.attract(protagonist_side, to_mask(target), in, choice, seed);
  return Region(a.begin(), a.end());
}

PositionalSolution solve_parity(const GameGraph& g, std::span<const int> priority, const SolverOptions& opt) {
  check_graph(g);
  if (static_cast<int>(priority.size()) != g.size()) throw Error("solve_parity: priority table size mismatch");
  for (int p : priority)
    if (p < 0) throw Error("solve_parity: negative priority");
  return zielonka(g, compress_priorities(priority), opt.seed).run();
}

PositionalSolution solve_buchi(const GameGraph& g, const Region& target, const SolverOptions& opt) {
  check_graph(g);
  const int n = g.size();
  graph_view view(g);
  std::vector<int> choice(n, 0);
  std::vector<char> alive(n, 1);
  std::vector<char> reach;
  while (true) {
    std::vector<char> t(n, 0);
    for (int v = 0; v < n; ++v) t[v] = alive[v] && target[v];
    std::vector<int> attempt(n, 0);
    reach = view.attract(true, t, alive, &attempt, opt.seed);
    std::vector<char> avoid(n, 0);
    bool any = false;
    for (int v = 0; v < n; ++v) {
      avoid[v] = alive[v] && !reach[v];
      any |= avoid[v] != 0;
    }
    if (!any) {
      for (int v = 0; v < n; ++v) {
        if (!alive[v] || !g.protagonist[v]) continue;
        choice[v] = t[v] ? view.stay_inside(v, alive, opt.seed) : attempt[v];
      }
      break;
    }
    for (int v = 0; v < n; ++v)
      if (avoid[v] && !g.protagonist[v]) choice[v] = view.stay_inside(v, avoid, opt.seed);
    std::vector<char> trap = view.attract(false, avoid, alive, &choice, opt.seed);
    for (int v = 0; v < n; ++v)
      if (trap[v]) alive[v] = 0;
  }
  PositionalSolution out;
  out.region.assign(alive.begin(), alive.end());
  out.choice = std::move(choice);
  normalise_losing_choices(g, out.region, out.choice);
  return out;
}

// ---------------------------------------------------------------------------
// Latest appearance records.
//
// The circuit is viewed over "literals": maximal disjunctions of atoms.
// A vertex is coloured by the set of literals its label belongs to; the
// record stores colours of the current SCC ordered by last visit.

namespace {

using words = std::vector<std::uint64_t>;

bool is_literal(const Circuit& c) {
  if (c.op() == CircuitOp::atom) return true;
  if (c.op() != CircuitOp::disjunction || c.children().empty()) return false;
  return std::all_of(c.children().begin(), c.children().end(),
                     [](const Circuit& k) { return k.op() == CircuitOp::atom; });
}

struct literal_view {
  CompiledCircuit compiled;
  std::vector<words> signature;  // per vertex, bit set over literals
  int num_literals = 0;

  literal_view(const Circuit& c, std::span<const int> labels, int n) : compiled(c, is_literal) {
    num_literals = static_cast<int>(compiled.num_inputs());
    const int nw = (num_literals + 63) / 64;
    std::unordered_map<int, words> by_label;
    for (int k = 0; k < num_literals; ++k) {
      const Circuit& lit = compiled.input(k);
      auto mark = [&](int atom) {
        auto& w = by_label[atom];
        w.resize(nw, 0);
        w[k / 64] |= 1ULL << (k % 64);
      };
      if (lit.op() == CircuitOp::atom)
        mark(lit.atom_index());
      else
        for (const Circuit& a : lit.children()) mark(a.atom_index());
    }
    signature.assign(n, words(nw, 0));
    for (int v = 0; v < n; ++v) {
      int label = labels.empty() ? v : labels[v];
      if (label < 0) continue;
      auto it = by_label.find(label);
      if (it != by_label.end()) signature[v] = it->second;
    }
  }

  bool eval(const words& lits) const {
    std::vector<bool> in(num_literals);
    for (int k = 0; k < num_literals; ++k) in[k] = (lits[k / 64] >> (k % 64)) & 1;
    return compiled.evaluate(in);
  }
};

bool empty_words(const words& w) {
  return std::all_of(w.begin(), w.end(), [](std::uint64_t x) { return x == 0; });
}

void or_into(words& acc, const words& w) {
  for (std::size_t i = 0; i < w.size(); ++i) acc[i] |= w[i];
}

/// Tarjan over the subgraph induced by `in`; returns SCCs in reverse
/// topological order (sinks first).
std::vector<std::vector<int>> sccs(const GameGraph& g, const std::vector<char>& in) {
  const int n = g.size();
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<char> on_stack(n, 0);
  std::vector<std::vector<int>> out;
  int counter = 0;
  std::vector<std::pair<int, std::size_t>> call;
  for (int root = 0; root < n; ++root) {
    if (!in[root] || index[root] >= 0) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, k] = call.back();
      if (k < g.succ[v].size()) {
        int w = g.succ[v][k++];
        if (!in[w]) continue;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      int done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        std::vector<int> comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != done);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
    }
  }
  return out;
}

bool has_cycle(const GameGraph& g, const std::vector<int>& comp) {
  if (comp.size() > 1) return true;
  int v = comp[0];
  return std::find(g.succ[v].begin(), g.succ[v].end(), v) != g.succ[v].end();
}

}  // namespace

struct LarData {
  std::vector<int> scc_of;
  std::vector<int> color_of;  // -1 when uncoloured
  std::vector<int> empty_record;  // per SCC
  std::vector<std::string> records;
  std::unordered_map<std::string, int> record_ids;
  std::unordered_map<std::uint64_t, int> product_index;
  std::vector<int> parity_choice;

  static std::string key(int scc, const std::string& content) {
    std::string k(reinterpret_cast<const char*>(&scc), sizeof scc);
    return k + content;
  }

  int intern(int scc, const std::string& content) {
    auto [it, fresh] = record_ids.emplace(key(scc, content), static_cast<int>(records.size()));
    if (fresh) records.push_back(content);
    return it->second;
  }

  int find_record(int scc, const std::string& content) const {
    auto it = record_ids.find(key(scc, content));
    return it == record_ids.end() ? -1 : it->second;
  }

  static std::string advance(const std::string& rec, int color) {
    if (color < 0) return rec;
    std::string next(1, static_cast<char>(color));
    for (char c : rec)
      if (c != static_cast<char>(color)) next.push_back(c);
    return next;
  }

  static std::uint64_t pkey(int v, int rec) {
    return (static_cast<std::uint64_t>(v) << 32) | static_cast<std::uint32_t>(rec);
  }
};

namespace {

class lar_strategy final : public GraphStrategy {
 public:
  explicit lar_strategy(std::shared_ptr<const LarData> d) : d_(std::move(d)) {}

  int initial_memory(int v) const override { return d_->empty_record[d_->scc_of[v]]; }

  int choice(int mem, int v) const override {
    auto it = d_->product_index.find(LarData::pkey(v, mem));
    return it == d_->product_index.end() ? 0 : d_->parity_choice[it->second];
  }

  int update(int mem, int v, int next) const override {
    int scc = d_->scc_of[next];
    if (scc != d_->scc_of[v]) return d_->empty_record[scc];
    int id = d_->find_record(scc, LarData::advance(d_->records[mem], d_->color_of[v]));
    if (id < 0) throw Error("lar strategy: record outside the explored product");
    return id;
  }

 private:
  std::shared_ptr<const LarData> d_;
};

// Colour classes of one SCC, after dropping colours the condition ignores
// and merging colours it cannot tell apart.
struct scc_colouring {
  std::vector<words> colour_signature;  // literals set by each colour
  std::vector<int> colour_of_vertex;    // aligned with the SCC's vertex list
};

scc_colouring colour_scc(const literal_view& lits, const std::vector<int>& comp) {
  std::map<words, int> class_of;
  std::vector<words> class_sig;
  std::vector<int> vclass;
  for (int v : comp) {
    const words& sig = lits.signature[v];
    if (empty_words(sig)) {
      vclass.push_back(-1);
      continue;
    }
    auto [it, fresh] = class_of.emplace(sig, static_cast<int>(class_sig.size()));
    if (fresh) class_sig.push_back(sig);
    vclass.push_back(it->second);
  }
  const int m = static_cast<int>(class_sig.size());
  const int nw = static_cast<int>((lits.num_literals + 63) / 64);
  std::vector<int> group(m);
  std::iota(group.begin(), group.end(), 0);

  if (m > 0 && m <= 16) {
    std::vector<char> f(std::size_t{1} << m);
    for (std::size_t s = 0; s < f.size(); ++s) {
      words acc(nw, 0);
      for (int c = 0; c < m; ++c)
        if (s >> c & 1) or_into(acc, class_sig[c]);
      f[s] = lits.eval(acc);
    }
    // groups: current partition of classes, -2 for dropped
    auto members = [&](int gidx) {
      std::uint32_t mask = 0;
      for (int c = 0; c < m; ++c)
        if (group[c] == gidx) mask |= 1u << c;
      return mask;
    };
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<int> live;
      for (int c = 0; c < m; ++c)
        if (group[c] >= 0 && std::find(live.begin(), live.end(), group[c]) == live.end()) live.push_back(group[c]);
      const int k = static_cast<int>(live.size());
      std::vector<std::uint32_t> gm(k);
      for (int i = 0; i < k; ++i) gm[i] = members(live[i]);
      auto value = [&](std::uint32_t groups_mask) {
        std::uint32_t s = 0;
        for (int i = 0; i < k; ++i)
          if (groups_mask >> i & 1) s |= gm[i];
        return f[s];
      };
      for (int i = 0; i < k && !changed; ++i) {
        bool relevant = false;
        for (std::uint32_t s = 0; s < (1u << k) && !relevant; ++s)
          if (!(s >> i & 1)) relevant = value(s) != value(s | 1u << i);
        if (!relevant) {
          for (int c = 0; c < m; ++c)
            if (group[c] == live[i]) group[c] = -2;
          changed = true;
        }
      }
      for (int i = 0; i < k && !changed; ++i)
        for (int j = i + 1; j < k && !changed; ++j) {
          bool same = true;
          for (std::uint32_t s = 0; s < (1u << k) && same; ++s) {
            if (s >> i & 1 || s >> j & 1) continue;
            char a = value(s | 1u << i), b = value(s | 1u << j), ab = value(s | 1u << i | 1u << j);
            same = a == b && b == ab;
          }
          if (same) {
            for (int c = 0; c < m; ++c)
              if (group[c] == live[j]) group[c] = live[i];
            changed = true;
          }
        }
    }
  } else if (m > 64) {
    throw CapExceeded("lar_reduce: more than 64 colours in one component");
  }

  scc_colouring out;
  std::map<int, int> dense;
  for (int c = 0; c < m; ++c) {
    if (group[c] < 0) continue;
    auto [it, fresh] = dense.emplace(group[c], static_cast<int>(out.colour_signature.size()));
    if (fresh) out.colour_signature.push_back(words(nw, 0));
    or_into(out.colour_signature[it->second], class_sig[c]);
  }
  for (int cls : vclass) out.colour_of_vertex.push_back(cls < 0 || group[cls] < 0 ? -1 : dense.at(group[cls]));
  return out;
}

}  // namespace

LarProduct lar_reduce(const GameGraph& g, const Circuit& c, std::span<const int> labels, const SolverOptions& opt) {
  check_graph(g);
  const int n = g.size();
  if (!labels.empty() && static_cast<int>(labels.size()) != n) throw Error("lar_reduce: label table size mismatch");
  literal_view lits(c, labels, n);
  auto data = std::make_shared<LarData>();
  data->scc_of.assign(n, -1);
  data->color_of.assign(n, -1);

  std::vector<std::vector<int>> comps = sccs(g, std::vector<char>(n, 1));
  struct scc_info {
    std::vector<words> sig;
    int neutral;
    std::unordered_map<std::uint64_t, char> f;
  };
  std::vector<scc_info> info(comps.size());
  const int nw = (lits.num_literals + 63) / 64;
  for (std::size_t k = 0; k < comps.size(); ++k) {
    scc_colouring col = colour_scc(lits, comps[k]);
    for (std::size_t i = 0; i < comps[k].size(); ++i) {
      data->scc_of[comps[k][i]] = static_cast<int>(k);
      data->color_of[comps[k][i]] = col.colour_of_vertex[i];
    }
    info[k].sig = std::move(col.colour_signature);
    info[k].neutral = lits.eval(words(nw, 0)) ? 0 : 1;
    data->empty_record.push_back(data->intern(static_cast<int>(k), std::string()));
  }
  auto accepting = [&](int scc, const std::string& hit) {
    std::uint64_t mask = 0;
    for (char ch : hit) mask |= 1ULL << static_cast<unsigned char>(ch);
    auto& memo = info[scc].f;
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second != 0;
    words acc(nw, 0);
    for (char ch : hit) or_into(acc, info[scc].sig[static_cast<unsigned char>(ch)]);
    bool r = lits.eval(acc);
    memo.emplace(mask, r);
    return r;
  };

  LarProduct out;
  std::vector<std::pair<int, int>> pv;  // (vertex, record)
  auto vertex_for = [&](int v, int rec) {
    auto [it, fresh] = data->product_index.emplace(LarData::pkey(v, rec), static_cast<int>(pv.size()));
    if (fresh) {
      if (pv.size() >= opt.max_states)
        throw CapExceeded("lar_reduce: product exceeds " + std::to_string(opt.max_states) + " states");
      pv.emplace_back(v, rec);
    }
    return it->second;
  };
  out.entry.resize(n);
  for (int v = 0; v < n; ++v) out.entry[v] = vertex_for(v, data->empty_record[data->scc_of[v]]);
  for (std::size_t i = 0; i < pv.size(); ++i) {
    auto [v, rec] = pv[i];
    const int scc = data->scc_of[v];
    const int color = data->color_of[v];
    const std::string& r = data->records[rec];
    int prio = info[scc].neutral;
    if (color >= 0) {
      std::size_t pos = r.find(static_cast<char>(color));
      if (pos != std::string::npos)
        prio = 2 * static_cast<int>(pos + 1) + (accepting(scc, r.substr(0, pos + 1)) ? 0 : 1);
    }
    int next_rec = data->intern(scc, LarData::advance(r, color));
    out.graph.add_vertex(g.protagonist[v]);
    out.priority.push_back(prio);
    out.projection.push_back(v);
    std::vector<int> succ;
    for (int w : g.succ[v])
      succ.push_back(vertex_for(w, data->scc_of[w] == scc ? next_rec : data->empty_record[data->scc_of[w]]));
    out.graph.succ.back() = std::move(succ);
  }
  out.data = data;
  return out;
}

MullerSolution solve_muller(const GameGraph& g, const Circuit& c, std::span<const int> labels, const SolverOptions& opt) {
  MullerSolution out;
  const int n = g.size();
  if (c.is_constant()) {
    check_graph(g);
    out.region.assign(n, c.constant_value());
    std::vector<int> choice(n, 0);
    out.strategy = std::make_shared<MemorylessStrategy>(std::move(choice));
    out.product_size = static_cast<std::size_t>(n);
    return out;
  }
  LarProduct prod = lar_reduce(g, c, labels, opt);
  PositionalSolution sol = solve_parity(prod.graph, prod.priority, opt);
  auto data = std::const_pointer_cast<LarData>(prod.data);
  data->parity_choice = std::move(sol.choice);
  out.region.resize(n);
  for (int v = 0; v < n; ++v) out.region[v] = sol.region[prod.entry[v]];
  out.strategy = std::make_shared<lar_strategy>(prod.data);
  out.product_size = prod.graph.succ.size();
  return out;
}

Region reachable_muller_witness(const GameGraph& g, const Circuit& c, std::span<const int> labels) {
  check_graph(g);
  const int n = g.size();
  if (c.is_constant()) return Region(n, c.constant_value());
  literal_view lits(c, labels, n);
  const int nw = (lits.num_literals + 63) / 64;
  std::vector<char> good(n, 0);
  std::set<std::vector<int>> visited;

  std::vector<std::vector<int>> work{[&] {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    return all;
  }()};
  while (!work.empty()) {
    std::vector<int> part = std::move(work.back());
    work.pop_back();
    if (!visited.insert(part).second) continue;
    std::vector<char> in(n, 0);
    for (int v : part) in[v] = 1;
    for (const auto& comp : sccs(g, in)) {
      if (!has_cycle(g, comp)) continue;
      if (std::any_of(comp.begin(), comp.end(), [&](int v) { return good[v] != 0; })) continue;
      words acc(nw, 0);
      for (int v : comp) or_into(acc, lits.signature[v]);
      if (lits.eval(acc)) {
        for (int v : comp) good[v] = 1;
        continue;
      }
      for (int k = 0; k < lits.num_literals; ++k) {
        if (!(acc[k / 64] >> (k % 64) & 1)) continue;
        std::vector<int> sub;
        for (int v : comp)
          if (!(lits.signature[v][k / 64] >> (k % 64) & 1)) sub.push_back(v);
        if (!sub.empty()) work.push_back(std::move(sub));
      }
    }
  }
  // Backward closure.
  std::vector<std::vector<int>> pred(n);
  for (int v = 0; v < n; ++v)
    for (int w : g.succ[v]) pred[w].push_back(v);
  std::deque<int> queue;
  for (int v = 0; v < n; ++v)
    if (good[v]) queue.push_back(v);
  while (!queue.empty()) {
    int w = queue.front();
    queue.pop_front();
    for (int u : pred[w])
      if (!good[u]) {
        good[u] = 1;
        queue.push_back(u);
      }
  }
  return Region(good.begin(), good.end());
}

}  // namespace aasynth
