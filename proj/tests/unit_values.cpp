#include <doctest.h>

#include "aasynth/oracle.hpp"
#include "aasynth/values.hpp"
#include "support/corpus.hpp"
#include "support/random_games.hpp"

using namespace aasynth;
using namespace aasynth::testing;

namespace {

const char* kSingle = R"({
  "players": ["P"], "actions": {"P": ["x"]},
  "states": [{"id": "s", "owner": "P"}], "init": "s",
  "transitions": [{"from": "s", "action": "x", "to": "s"}],
  "objectives": {"P": {"kind": "buchi", "accept": ["s"]}}
})";

void check_invariants(const Game& g, const ValueProfile& vp) {
  const Arena& a = g.arena;
  for (int s = 0; s < a.num_states(); ++s) {
    REQUIRE(vp.val[s] >= -1);
    REQUIRE(vp.val[s] <= 1);
    bool owned = a.owner[s] == vp.player;
    bool some = false;
    for (int act = 0; act < a.num_actions(s); ++act) {
      const int t = a.successor(s, act);
      some = some || vp.preserves(s, act);
      if (!owned) REQUIRE(vp.preserves(s, act));
      if (owned && vp.preserves(s, act)) REQUIRE(vp.val[t] == vp.val[s]);
      if (vp.val[s] == -1) REQUIRE(vp.val[t] == -1);
      if (vp.val[s] == 1 && !owned) REQUIRE(vp.val[t] == 1);
    }
    REQUIRE(some);
    if (vp.help[s]) {
      REQUIRE(vp.val[s] == 0);
      REQUIRE_FALSE(owned);
    }
  }
}

}  // namespace

TEST_SUITE("values") {
  TEST_CASE("fig2 values") {
    Game g = corpus_game("fig2");
    for (int p = 0; p < 2; ++p) CHECK(compute_values(g, p) == std::vector<int>{0, 0, -1});
  }

  TEST_CASE("single self-loop has value 1") {
    Game g = parse_arena(kSingle);
    ValueProfile vp = compute_value_profile(g, 0);
    CHECK(vp.val == std::vector<int>{1});
    CHECK(vp.help == std::vector<bool>{false});
    CHECK(vp.preserves(0, 0));
  }

  TEST_CASE("fig2 value-preserving moves") {
    Game g = corpus_game("fig2");
    ValueProfile p1 = compute_value_profile(g, 0), p2 = compute_value_profile(g, 1);
    const Arena& a = g.arena;
    int s1 = a.state_index("s1"), s2 = a.state_index("s2"), s3 = a.state_index("s3");
    CHECK_FALSE(p1.preserves(s1, a.action_index(0, "c")));
    CHECK(p1.preserves(s1, a.action_index(0, "a")));
    CHECK(p1.preserves(s1, a.action_index(0, "b")));
    for (int act = 0; act < 3; ++act) CHECK(p1.preserves(s3, act));
    for (int act = 0; act < 2; ++act) CHECK(p1.preserves(s2, act));
    CHECK_FALSE(p2.preserves(s2, a.action_index(1, "b")));
    CHECK(p2.preserves(s2, a.action_index(1, "a")));
  }

  TEST_CASE("fig2 help states") {
    Game g = corpus_game("fig2");
    CHECK(compute_value_profile(g, 1).help == std::vector<bool>{true, false, false});
    CHECK(compute_value_profile(g, 0).help == std::vector<bool>{false, false, false});
  }

  TEST_CASE("fig2 admissibility circuit") {
    Game g = corpus_game("fig2");
    Circuit m = compute_value_profile(g, 0).m;
    CHECK(eval_circuit(m, {true, true, false}));
    CHECK_FALSE(eval_circuit(m, {true, false, false}));
    CHECK(eval_circuit(m, {false, false, true}));
  }

  TEST_CASE("profile invariants on the corpus and random games") {
    for (const std::string& id : corpus_ids()) {
      CAPTURE(id);
      Game g = corpus_game(id);
      for (const ValueProfile& vp : compute_all_profiles(g)) check_invariants(g, vp);
    }
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
      Game g = random_buchi_game(rng);
      auto generic = compute_all_profiles(g);
      auto buchi = compute_all_profiles(g, {}, true);
      for (int p = 0; p < g.arena.num_players(); ++p) {
        check_invariants(g, generic[p]);
        REQUIRE(generic[p].val == buchi[p].val);
      }
    }
  }

  TEST_CASE("phi split into the safety part and the circuit") {
    Game g = corpus_game("fig2");
    PhiCondition phi = build_phi(g, 0);
    ValueProfile vp = compute_value_profile(g, 0);
    CHECK(phi.safe == vp.edge);
    CHECK(phi.m == vp.m);
  }

  TEST_CASE("winning regions for singleton and full coalitions") {
    Game g = corpus_game("fig2");
    CHECK(winning_region(g, singleton_coalition(g.arena, 0), g.objectives[0].circuit) == Region(3, false));
    CHECK(winning_region(g, full_coalition(g.arena), g.objectives[0].circuit) == Region{true, true, false});
  }

  TEST_CASE("outcomes of memoryless admissible strategies satisfy the admissibility condition") {
    for (const std::string id : {"fig2", "fig4", "fig5", "fig7", "fig8", "coop-not-ag", "fig10"}) {
      CAPTURE(id);
      Game g = corpus_game(id);
      const Arena& a = g.arena;
      for (int p = 0; p < a.num_players(); ++p) {
        ValueProfile vp = compute_value_profile(g, p);
        std::vector<bool> others(a.num_players(), true);
        others[p] = false;
        MemorylessSpace rest = MemorylessSpace::of_players(a, others);
        for (Choice joint : memoryless_admissible_set(g, p)) {
          for (std::uint64_t k = 0; k < rest.size(); ++k) {
            rest.decode(k, joint);
            Lasso l = memoryless_outcome(a, joint);
            for (const Step& st : l.prefix)
              if (a.owner[st.state] == p) REQUIRE(vp.preserves(st.state, st.action));
            for (const Step& st : l.cycle)
              if (a.owner[st.state] == p) REQUIRE(vp.preserves(st.state, st.action));
            REQUIRE(eval_circuit(vp.m, l.inf_set(a.num_states())));
          }
        }
      }
    }
  }
}
