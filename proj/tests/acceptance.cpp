// One line per acceptance criterion; exit status 1 if any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "aasynth/aa.hpp"
#include "aasynth/abstraction.hpp"
#include "aasynth/oracle.hpp"
#include "aasynth/rules.hpp"
#include "aasynth/values.hpp"
#include "support/corpus.hpp"
#include "support/random_games.hpp"

using namespace aasynth;
using namespace aasynth::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Positive {
  std::string origin;
  Game game;
  Profile profile;
};

std::vector<Positive> positives;  // AA-positive instances met in criteria 1-3

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  [" << id << "] " << what << " -- " << detail << std::endl;
  if (!ok) ++failures;
}

void guarded(int id, const std::string& what, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, false, what, std::string("exception: ") + e.what());
  }
}

void remember(const std::string& origin, const Game& g, const AaResult& r) {
  if (r.profile) positives.push_back({origin, g, *r.profile});
}

bool all_objectives(const Game& g, const Profile& p) {
  Lasso l = outcome_of_profile(g.arena, p);
  for (const Objective& o : g.objectives)
    if (!eval_objective(o, l, g.arena.num_states())) return false;
  return true;
}

void corpus_verdicts() {
  const std::string what = "corpus verdicts";
  guarded(1, what, [&] {
    auto t0 = Clock::now();
    int total = 0, wrong = 0;
    std::ostringstream bad;
    for (const std::string& id : corpus_ids()) {
      if (id == "scheduler") continue;
      for (const ClaimOutcome& c : evaluate_claims(id)) {
        ++total;
        if (c.actual != c.expected) {
          ++wrong;
          bad << " " << id << ":" << c.label;
        }
      }
      Game g = corpus_game(id);
      remember(id, g, aa_check(g));
    }
    double secs = seconds_since(t0);
    std::ostringstream d;
    d << total - wrong << "/" << total << " claims match, " << secs << " s (limit 5 s)" << bad.str();
    report(1, wrong == 0 && secs < 5.0, what, d.str());
  });
}

void scheduler() {
  const std::string what = "scheduler game";
  guarded(2, what, [&] {
    auto t0 = Clock::now();
    Game g = corpus_game("scheduler");
    auto prof = compute_all_profiles(g);
    bool nobody_wins = true;
    for (const ValueProfile& vp : prof) nobody_wins = nobody_wins && vp.val[g.arena.init] != 1;
    AaResult r = aa_check(g);
    bool aa = r.all() && r.profile.has_value();
    bool outcome = aa && all_objectives(g, *r.profile);
    bool verified = aa && verify_aa_profile(g, *r.profile).holds;
    remember("scheduler", g, r);
    double secs = seconds_since(t0);
    std::ostringstream d;
    d << "win fails for both: " << nobody_wins << ", aa holds for both: " << aa << ", outcome satisfies both: "
      << outcome << ", profile verifies: " << verified << ", " << secs << " s (limit 30 s)";
    report(2, nobody_wins && aa && outcome && verified && secs < 30.0, what, d.str());
  });
}

void lattice() {
  const std::string what = "implication lattice on random games";
  guarded(3, what, [&] {
    auto t0 = Clock::now();
    Rng rng(2024);
    const int n = 500;
    int violations = 0, win = 0, aa = 0, coop = 0, ag = 0;
    for (int i = 0; i < n; ++i) {
      Game g = random_buchi_game(rng);
      bool w = check_win(g).holds, c = check_coop(g).holds, a = check_ag_and(g).holds;
      AaResult r = aa_check(g);
      bool x = r.all();
      if (x) remember("random lattice #" + std::to_string(i), g, r);
      violations += (w && !x) + (x && !c) + (w && !a) + (a && !c);
      win += w;
      aa += x;
      coop += c;
      ag += a;
    }
    double secs = seconds_since(t0);
    std::ostringstream d;
    d << n << " games, " << violations << " violations; holds: win " << win << ", aa " << aa << ", ag_and " << ag
      << ", coop " << coop << "; " << secs << " s (limit 120 s)";
    report(3, violations == 0 && secs < 120.0, what, d.str());
  });
}

void profiles_satisfy_objectives() {
  const std::string what = "AA profiles satisfy every objective";
  guarded(4, what, [&] {
    int bad = 0;
    std::ostringstream names;
    for (const Positive& p : positives)
      if (!all_objectives(p.game, p.profile)) {
        ++bad;
        names << " " << p.origin;
      }
    std::ostringstream d;
    d << positives.size() << " AA-positive instances, " << bad << " violations" << names.str();
    report(4, bad == 0 && !positives.empty(), what, d.str());
  });
}

void rectangularity() {
  const std::string what = "cross-mixed seeded AA profiles verify";
  guarded(5, what, [&] {
    const std::vector<std::uint64_t> seeds{0, 1, 2, 3};
    int mixes = 0, bad = 0;
    std::ostringstream d;
    for (const std::string id : {"fig2", "scheduler"}) {
      Game g = corpus_game(id);
      std::vector<Profile> ps;
      for (std::uint64_t s : seeds) {
        AaOptions opt;
        opt.solver.seed = s;
        AaResult r = aa_check(g, opt);
        if (!r.profile) throw Error(id + ": no AA profile for seed " + std::to_string(s));
        ps.push_back(*r.profile);
      }
      const int k = g.arena.num_players();
      std::vector<int> pick(k, 0);
      int distinct = 0;
      for (int p = 0; p < k; ++p) {
        std::vector<std::string> seen;
        for (const Profile& prof : ps) {
          std::string text = dump_strategy(g.arena, prof[p]);
          if (std::find(seen.begin(), seen.end(), text) == seen.end()) seen.push_back(text);
        }
        distinct += static_cast<int>(seen.size());
      }
      // every combination of per-player strategies across seeds
      while (true) {
        Profile mix;
        for (int p = 0; p < k; ++p) mix.push_back(ps[pick[p]][p]);
        ++mixes;
        if (!verify_aa_profile(g, mix).holds) ++bad;
        int p = 0;
        while (p < k && ++pick[p] == static_cast<int>(ps.size())) pick[p++] = 0;
        if (p == k) break;
      }
      d << id << ": " << distinct << " distinct per-player strategies; ";
    }
    d << mixes << " mixes over " << seeds.size() << " seeds, " << bad << " violations";
    report(5, bad == 0, what, d.str());
  });
}

void fast_path() {
  const std::string what = "Büchi fast path agrees with the generic path";
  guarded(6, what, [&] {
    Rng rng(606);
    const int n = 200;
    int disagree = 0;
    double generic_s = 0, fast_s = 0;
    AaOptions fast;
    fast.backend = AaBackend::buchi;
    for (int i = 0; i < n; ++i) {
      Game g = random_buchi_game(rng);
      auto t0 = Clock::now();
      AaResult a = aa_check(g);
      generic_s += seconds_since(t0);
      t0 = Clock::now();
      AaResult b = aa_check(g, fast);
      fast_s += seconds_since(t0);
      if (a.winning != b.winning) ++disagree;
    }
    const double ratio = fast_s > 0 ? generic_s / fast_s : 0;
    std::ostringstream d;
    d << n << " games, " << disagree << " disagreements; speed-up " << ratio << "x (generic " << generic_s
      << " s, fast " << fast_s << " s; informational, target 2x)";
    report(6, disagree == 0, what, d.str());
  });
}

void parity_oracle() {
  const std::string what = "parity solver matches memoryless brute force";
  guarded(7, what, [&] {
    Rng rng(707);
    const int n = 200;
    int bad = 0;
    for (int i = 0; i < n; ++i) {
      ParityInstance p = random_parity_game(rng);
      if (solve_parity(p.graph, p.priority).region != brute_region(p.graph, p.priority)) ++bad;
    }
    std::ostringstream d;
    d << n << " games, " << bad << " mismatches";
    report(7, bad == 0, what, d.str());
  });
}

std::vector<bool> with_value(const ValueProfile& vp, int x) {
  std::vector<bool> r(vp.val.size());
  for (std::size_t s = 0; s < r.size(); ++s) r[s] = vp.val[s] == x;
  return r;
}

bool subset_of(const std::vector<bool>& a, const std::vector<bool>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

void abstraction() {
  const std::string what = "abstraction exactness, inclusions and soundness";
  guarded(8, what, [&] {
    int exact_bad = 0, games = 0;
    for (const std::string& id : corpus_ids()) {
      ++games;
      Game g = corpus_game(id);
      Abstraction abs = make_abstraction(g, identity_partition(g.arena));
      auto players = abstract_players(abs);
      auto prof = compute_all_profiles(g);
      for (int k = 0; k < g.arena.num_players(); ++k) {
        const AbstractPlayer& ap = players[k];
        bool ok = true;
        for (int x = -1; x <= 1; ++x)
          ok = ok && abs.concretize(ap.values.over[x + 1]) == with_value(prof[k], x) &&
               abs.concretize(ap.values.under[x + 1]) == with_value(prof[k], x);
        ok = ok && ap.edges.over == prof[k].edge && ap.edges.under == prof[k].edge &&
             abs.concretize(ap.help.over) == prof[k].help && abs.concretize(ap.help.under) == prof[k].help;
        AbstractAaResult r = abstract_aa_check(abs, players, k);
        ok = ok && !r.inconclusive && r.decision == aa_winning(g, prof, k).decision;
        exact_bad += !ok;
      }
    }

    Rng rng(808);
    const int pairs = 150;
    int made = 0, inclusion_bad = 0, sound_bad = 0, abstract_yes = 0, inconclusive = 0;
    while (made < pairs) {
      Game g = random_buchi_game(rng, 3, 6, 2, 3);
      Partition p = random_compatible_partition(rng, g);
      if (p.size() == g.arena.num_states()) continue;
      ++made;
      Abstraction abs = make_abstraction(g, p);
      auto players = abstract_players(abs);
      auto prof = compute_all_profiles(g);
      for (int k = 0; k < g.arena.num_players(); ++k) {
        const AbstractPlayer& ap = players[k];
        bool ok = true;
        for (int x = -1; x <= 1; ++x)
          ok = ok && subset_of(abs.concretize(ap.values.under[x + 1]), with_value(prof[k], x)) &&
               subset_of(with_value(prof[k], x), abs.concretize(ap.values.over[x + 1]));
        Region under_any = ap.values.under_any();
        for (int s = 0; s < g.arena.num_states(); ++s) {
          const int b = abs.partition.block_of[s];
          for (int a = 0; a < g.arena.num_actions(s); ++a) {
            if (under_any[b] && ap.edges.under[b][a] && !prof[k].preserves(s, a)) ok = false;
            if (prof[k].preserves(s, a) && !ap.edges.over[b][a]) ok = false;
          }
        }
        ok = ok && subset_of(abs.concretize(ap.help.under), prof[k].help) &&
             subset_of(prof[k].help, abs.concretize(ap.help.over));
        inclusion_bad += !ok;

        AbstractAaResult r = abstract_aa_check(abs, players, k);
        inconclusive += r.inconclusive;
        if (r.decision) {
          ++abstract_yes;
          if (!aa_winning(g, prof, k).decision || !r.strategy || !wins_omega_prime(g, prof, *r.strategy)) ++sound_bad;
        }
      }
    }
    std::ostringstream d;
    d << "identity exactness " << exact_bad << " violations over " << games << " corpus games; " << made
      << " random pairs: " << inclusion_bad << " inclusion violations, " << abstract_yes << " abstract wins, "
      << sound_bad << " unsound, " << inconclusive << " inconclusive";
    report(8, exact_bad == 0 && inclusion_bad == 0 && sound_bad == 0 && abstract_yes > 0, what, d.str());
  });
}

void hypothesis_and_opponent_win() {
  const std::string what = "winning under hypothesis plus an opponent win gives AA";
  guarded(9, what, [&] {
    Rng rng(909);
    int tried = 0, filtered = 0, bad = 0;
    while (filtered < 100 && tried < 20000) {
      ++tried;
      Game g = tried % 2 ? random_buchi_game(rng, 2, 6, 2, 2) : random_muller_game(rng, 2, 5, 2);
      ValueProfile second = compute_value_profile(g, 1);
      if (second.val[g.arena.init] != 1) continue;
      if (!check_win_under_hyp(g).holds) continue;
      ++filtered;
      if (!aa_check(g).all()) ++bad;
    }
    std::ostringstream d;
    d << filtered << " qualifying games out of " << tried << " generated, " << bad << " without AA";
    report(9, bad == 0 && filtered >= 100, what, d.str());
  });
}

}  // namespace

int main() {
  corpus_verdicts();
  scheduler();
  lattice();
  profiles_satisfy_objectives();
  rectangularity();
  fast_path();
  parity_oracle();
  abstraction();
  hypothesis_and_opponent_win();
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
