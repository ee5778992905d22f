#include <doctest.h>

#include <deque>
#include <set>

#include "aasynth/error.hpp"
#include "aasynth/oracle.hpp"
#include "aasynth/solvers.hpp"
#include "aasynth/values.hpp"
#include "support/corpus.hpp"
#include "support/random_games.hpp"

using namespace aasynth;
using namespace aasynth::testing;

namespace {

// States reachable from init when `player` follows `sigma` and everybody else is free.
std::vector<bool> reachable_under(const Arena& a, int player, const Choice& sigma) {
  std::vector<bool> seen(a.num_states(), false);
  std::deque<int> queue{a.init};
  seen[a.init] = true;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int act = 0; act < a.num_actions(s); ++act) {
      if (a.owner[s] == player && act != sigma[s]) continue;
      int t = a.successor(s, act);
      if (!seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
    }
  }
  return seen;
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("a strategy never dominates itself") {
    Game g = corpus_game("fig2");
    Choice c = joint_choice(g.arena, {{"s1", "b"}});
    CHECK_FALSE(memoryless_dominates(g, 0, c, c));
  }

  TEST_CASE("leaving to the losing sink is dominated") {
    Game g = corpus_game("fig2");
    Choice to_sink = joint_choice(g.arena, {{"s1", "c"}});
    Choice to_s2 = joint_choice(g.arena, {{"s1", "b"}});
    Choice loop = joint_choice(g.arena, {{"s1", "a"}});
    CHECK(memoryless_dominates(g, 0, to_sink, to_s2));
    CHECK(memoryless_dominates(g, 0, loop, to_s2));
    CHECK_FALSE(memoryless_dominates(g, 0, to_s2, to_sink));
  }

  TEST_CASE("fig2 second player has a single admissible memoryless strategy") {
    Game g = corpus_game("fig2");
    auto adm = memoryless_admissible_set(g, 1);
    REQUIRE(adm.size() == 1);
    const int s2 = g.arena.state_index("s2");
    CHECK(g.arena.successor(s2, adm[0][s2]) == g.arena.state_index("s1"));
  }

  TEST_CASE("fig7 profile is a Nash equilibrium") {
    Game g = corpus_game("fig7");
    CHECK(is_nash(g, joint_choice(g.arena, {{"s1", "l"}, {"s2", "b"}})));
  }

  TEST_CASE("memoryless outcome closes a cycle") {
    Game g = corpus_game("fig2");
    Lasso l = memoryless_outcome(g.arena, joint_choice(g.arena, {{"s1", "b"}, {"s2", "a"}}));
    auto inf = l.inf_set(3);
    CHECK(inf == std::vector<bool>{true, true, false});
    auto wins = memoryless_wins(g, joint_choice(g.arena, {{"s1", "b"}, {"s2", "a"}}));
    CHECK(wins == std::vector<bool>{true, true});
  }

  TEST_CASE("profile cap raises CapExceeded") {
    OracleOptions opt;
    opt.max_profiles = 10;
    CHECK_THROWS_AS(check_profile_cap(11, opt, "profiles"), CapExceeded);
    CHECK_NOTHROW(check_profile_cap(10, opt, "profiles"));
  }

  TEST_CASE("memoryless space enumerates mixed-radix choices") {
    Game g = corpus_game("fig2");
    MemorylessSpace sp = MemorylessSpace::of_player(g.arena, 0);
    CHECK(sp.size() == 9);  // s1 and s3, three actions each
    std::set<std::vector<int>> seen;
    Choice c(3, 0);
    for (std::uint64_t k = 0; k < sp.size(); ++k) {
      sp.decode(k, c);
      seen.insert(c);
    }
    CHECK(seen.size() == 9);
  }

  TEST_CASE("brute_region agrees with the parity solver on random games") {
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
      ParityInstance p = random_parity_game(rng);
      Region expected = brute_region(p.graph, p.priority);
      Region actual = solve_parity(p.graph, p.priority).region;
      REQUIRE(actual == expected);
    }
  }

  TEST_CASE("strict dominance is antisymmetric") {
    Rng rng(11);
    for (int i = 0; i < 40; ++i) {
      Game g = random_buchi_game(rng, 2, 4, 2, 2);
      for (int p = 0; p < g.arena.num_players(); ++p) {
        MemorylessSpace sp = MemorylessSpace::of_player(g.arena, p);
        if (sp.size() > 16) continue;
        Choice x(g.arena.num_states(), 0), y(g.arena.num_states(), 0);
        for (std::uint64_t a = 0; a < sp.size(); ++a)
          for (std::uint64_t b = 0; b < sp.size(); ++b) {
            sp.decode(a, x);
            sp.decode(b, y);
            CHECK_FALSE((memoryless_dominates(g, p, x, y) && memoryless_dominates(g, p, y, x)));
          }
      }
    }
  }

  TEST_CASE("memoryless admissible strategies keep to value-preserving moves") {
    for (const std::string id : {"fig2", "fig4", "fig5", "fig7", "fig8", "coop-not-ag"}) {
      CAPTURE(id);
      Game g = corpus_game(id);
      for (int p = 0; p < g.arena.num_players(); ++p) {
        ValueProfile vp = compute_value_profile(g, p);
        for (const Choice& sigma : memoryless_admissible_set(g, p)) {
          auto reach = reachable_under(g.arena, p, sigma);
          for (int s = 0; s < g.arena.num_states(); ++s)
            if (reach[s] && g.arena.owner[s] == p) CHECK(vp.preserves(s, sigma[s]));
        }
      }
    }
  }
}
