#include "aasynth/lift.hpp"

#include <deque>
#include <map>

#include "aasynth/error.hpp"

namespace aasynth {

MealyStrategy mealy_from_graph_strategy(const Arena& arena, int player, const GraphStrategy& strategy,
                                        const GraphEmbedding& embed, std::size_t max_memory) {
  MealyStrategy out;
  out.player = player;
  std::map<std::pair<int, int>, int> ids;  // (tag, graph memory) -> Mealy memory
  std::vector<std::pair<int, int>> mem;
  auto intern = [&](int tag, int m) {
    auto [it, fresh] = ids.emplace(std::make_pair(tag, m), static_cast<int>(mem.size()));
    if (fresh) {
      if (mem.size() >= max_memory) throw CapExceeded("strategy memory exceeds cap");
      mem.emplace_back(tag, m);
    }
    return it->second;
  };
  const int v0 = embed.vertex(embed.init_tag, arena.init);
  out.init_memory = intern(embed.init_tag, strategy.initial_memory(v0));

  std::map<std::pair<int, int>, bool> seen;  // (state, Mealy memory)
  std::deque<std::pair<int, int>> queue{{arena.init, out.init_memory}};
  seen[{arena.init, out.init_memory}] = true;
  std::vector<int> walk;
  while (!queue.empty()) {
    auto [s, id] = queue.front();
    queue.pop_front();
    auto [tag, m] = mem[id];
    const int v = embed.vertex(tag, s);
    int lo = 0, hi = arena.num_actions(s);
    if (arena.owner[s] == player) {
      int a = strategy.choice(m, v);
      out.output[{id, s}] = a;
      lo = a;
      hi = a + 1;
    }
    for (int a = lo; a < hi; ++a) {
      walk.clear();
      int next_tag = embed.move(tag, s, a, walk);
      int cur = v, nm = m;
      for (int w : walk) {
        nm = strategy.update(nm, cur, w);
        cur = w;
      }
      int next_id = intern(next_tag, nm);
      out.update[{id, s, a}] = next_id;
      int t = arena.successor(s, a);
      if (seen.emplace(std::make_pair(t, next_id), true).second) queue.emplace_back(t, next_id);
    }
  }
  for (std::size_t k = 0; k < mem.size(); ++k) out.memory.push_back("m" + std::to_string(k));
  return out;
}

GraphEmbedding identity_embedding(const Arena& arena) {
  GraphEmbedding e;
  e.vertex = [](int, int s) { return s; };
  e.move = [&arena](int, int s, int a, std::vector<int>& walk) {
    walk.push_back(arena.successor(s, a));
    return 0;
  };
  return e;
}

}  // namespace aasynth
