#include <doctest.h>

#include "aasynth/aa.hpp"
#include "aasynth/rules.hpp"
#include "aasynth/values.hpp"
#include "support/corpus.hpp"
#include "support/random_games.hpp"

using namespace aasynth;
using namespace aasynth::testing;

namespace {

const char* kAbsorbing = R"({
  "players": ["A", "B"], "actions": {"A": ["x"], "B": ["y"]},
  "states": [{"id": "s", "owner": "A"}, {"id": "t", "owner": "B"}], "init": "s",
  "transitions": [{"from": "s", "action": "x", "to": "t"}, {"from": "t", "action": "y", "to": "t"}],
  "objectives": {"A": {"kind": "buchi", "accept": ["t"]}, "B": {"kind": "buchi", "accept": ["t"]}}
})";

bool all_objectives(const Game& g, const Profile& p) {
  Lasso l = outcome_of_profile(g.arena, p);
  for (const Objective& o : g.objectives)
    if (!eval_objective(o, l, g.arena.num_states())) return false;
  return true;
}

// Condition 2 of the assume-guarantee rule against single memoryless deviators.
bool ag_deviations_ok(const Game& g, const Profile& witness) {
  const Arena& a = g.arena;
  const int k = a.num_players();
  for (int dev = 0; dev < k; ++dev) {
    MemorylessSpace sp = MemorylessSpace::of_player(a, dev);
    Choice c(a.num_states(), 0);
    for (std::uint64_t m = 0; m < sp.size(); ++m) {
      sp.decode(m, c);
      Profile p = witness;
      p[dev] = memoryless_strategy(a, dev, c);
      Lasso l = outcome_of_profile(a, p);
      for (int i = 0; i < k; ++i) {
        if (i == dev) continue;
        bool others = true;
        for (int j = 0; j < k; ++j)
          if (j != i) others = others && eval_objective(g.objectives[j], l, a.num_states());
        if (others && !eval_objective(g.objectives[i], l, a.num_states())) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("rules") {
  TEST_CASE("cooperation") {
    Game fig4 = corpus_game("fig4");
    RuleVerdict v = check_coop(fig4);
    CHECK(v.holds);
    REQUIRE(v.witness);
    CHECK(all_objectives(fig4, *v.witness));
    CHECK_FALSE(check_coop(corpus_game("fig8")).holds);
    Game abs = parse_arena(kAbsorbing);
    CHECK(check_coop(abs).holds);
  }

  TEST_CASE("winning") {
    CHECK_FALSE(check_win(corpus_game("fig2")).holds);
    CHECK_FALSE(check_win(corpus_game("scheduler")).holds);
    CHECK(check_win(parse_arena(kAbsorbing)).holds);
    Rng rng(51);
    for (int i = 0; i < 50; ++i) {
      Game g = random_buchi_game(rng, 1, 5, 1, 1);
      ValueProfile vp = compute_value_profile(g, 0);
      RuleVerdict v = check_win(g);
      REQUIRE(v.holds == (vp.val[g.arena.init] == 1));
      if (v.holds) REQUIRE(all_objectives(g, *v.witness));
    }
  }

  TEST_CASE("winning under hypothesis") {
    Game g = corpus_game("fig2");
    g.objectives[1] = Objective::muller(Circuit::constant(false));
    CHECK(check_win_under_hyp(g).holds);
    RuleVerdict v = check_win_under_hyp(corpus_game("scheduler"));
    CHECK(v.holds);
    REQUIRE(v.witness);
    CHECK(v.witness->size() == 1);
    CHECK_THROWS_AS(check_win_under_hyp(corpus_game("fig6")), InputError);
  }

  TEST_CASE("assume-guarantee, conjunctive form") {
    Game fig4 = corpus_game("fig4");
    RuleVerdict v = check_ag_and(fig4);
    CHECK(v.holds);
    REQUIRE(v.witness);
    CHECK(all_objectives(fig4, *v.witness));
    CHECK(ag_deviations_ok(fig4, *v.witness));
    CHECK_FALSE(check_ag_and(corpus_game("fig5")).holds);
    Game abs = parse_arena(kAbsorbing);
    CHECK(check_ag_and(abs).holds == check_coop(abs).holds);
  }

  TEST_CASE("assume-guarantee witnesses withstand memoryless deviations") {
    Rng rng(53);
    int checked = 0;
    for (int i = 0; i < 150; ++i) {
      Game g = random_buchi_game(rng, 2, 5, 2, 3);
      RuleVerdict v = check_ag_and(g);
      if (!v.holds) continue;
      ++checked;
      REQUIRE(all_objectives(g, *v.witness));
      REQUIRE(ag_deviations_ok(g, *v.witness));
    }
    CHECK(checked > 0);
  }

  TEST_CASE("restriction is closed") {
    Game fig4 = corpus_game("fig4");
    std::vector<bool> keep = ag_and_restriction(fig4);
    for (int s = 0; s < fig4.arena.num_states(); ++s) {
      if (!keep[s]) continue;
      bool inside = false;
      for (int t : fig4.arena.delta[s]) inside = inside || keep[t];
      CHECK(inside);
    }
  }

  TEST_CASE("memoryless-relative rules on the corpus") {
    Game fig6 = corpus_game("fig6");
    RuleVerdict v = check_brute(fig6, "ag_or");
    CHECK_FALSE(v.holds);
    CHECK(v.method == RuleMethod::brute_memoryless);
    CHECK(aa_check(fig6).all());
    CHECK(check_brute(corpus_game("fig7"), "ne_exists").holds);
    CHECK_FALSE(check_brute(corpus_game("fig10"), "rs_exists_dom").holds);
    CHECK_THROWS_AS(check_brute(fig6, "nonsense"), InputError);
  }

  TEST_CASE("brute-force assume-guarantee implies cooperation") {
    Rng rng(57);
    for (int i = 0; i < 60; ++i) {
      Game g = random_buchi_game(rng, 2, 4, 2, 2);
      bool coop = check_coop(g).holds;
      for (const std::string r : {"ag_and", "ag_or", "ne_exists", "dom_profile"}) {
        RuleVerdict v = check_brute(g, r);
        if (v.holds && r != "ne_exists" && r != "dom_profile") REQUIRE(coop);
        if (v.holds && v.witness && r == "ag_and") REQUIRE(all_objectives(g, *v.witness));
      }
    }
  }

  TEST_CASE("implication lattice on random games") {
    Rng rng(59);
    for (int i = 0; i < 100; ++i) {
      Game g = random_buchi_game(rng);
      bool win = check_win(g).holds, aa = aa_check(g).all(), coop = check_coop(g).holds,
           ag = check_ag_and(g).holds;
      if (win) REQUIRE(aa);
      if (aa) REQUIRE(coop);
      if (win) REQUIRE(ag);
      if (ag) REQUIRE(coop);
    }
  }

  TEST_CASE("rule tables") {
    CHECK(std::string(method_name(RuleMethod::exact)) == "exact");
    CHECK(std::find(exact_rules().begin(), exact_rules().end(), "aa") != exact_rules().end());
    CHECK(std::find(brute_rules().begin(), brute_rules().end(), "rs_forall_ne") != brute_rules().end());
  }
}
