#include "aasynth/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "aasynth/aa.hpp"
#include "aasynth/abstraction.hpp"
#include "aasynth/error.hpp"
#include "aasynth/rules.hpp"
#include "aasynth/values.hpp"

#ifndef AASYNTH_CORPUS_DIR
#define AASYNTH_CORPUS_DIR "corpus"
#endif

namespace aasynth {

using json = nlohmann::json;
namespace fs = std::filesystem;

std::string default_corpus_dir() { return AASYNTH_CORPUS_DIR; }

namespace {

struct Common {
  std::string format = "json";
  std::uint64_t seed = 0;
  std::uint64_t max_profiles = 1'000'000;
  std::size_t max_states = 10'000'000;
  bool timings = false;

  SolverOptions solver() const { return {seed, max_states}; }
  OracleOptions oracle() const { return {max_profiles}; }
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app->add_option("--seed", c.seed, "Tie-break permutation seed (0 = declaration order)");
  app->add_option("--max-profiles", c.max_profiles, "Cap on enumerated memoryless profiles");
  app->add_option("--max-states", c.max_states, "Cap on product states");
  app->add_flag("--timings", c.timings, "Include wall-clock timings in the report");
}

void print_text(std::ostream& out, const json& j, const std::string& prefix = "") {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
      if (it->is_structured() && !it->empty()) {
        print_text(out, *it, key);
      } else {
        out << key << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    bool scalar = std::all_of(j.begin(), j.end(), [](const json& x) { return !x.is_structured(); });
    if (scalar) {
      out << prefix << ":";
      for (const json& x : j) out << " " << (x.is_string() ? x.get<std::string>() : x.dump());
      out << "\n";
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) print_text(out, j[i], prefix + "[" + std::to_string(i) + "]");
    }
  } else {
    out << prefix << ": " << j.dump() << "\n";
  }
}

void emit(std::ostream& out, const Common& c, const json& report) {
  if (c.format == "text")
    print_text(out, report);
  else
    out << report.dump(2) << "\n";
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write '" + path.string() + "'");
  f << text;
}

std::vector<std::string> write_profile(const Game& game, const Profile& profile, const std::string& dir) {
  std::vector<std::string> files;
  fs::create_directories(dir);
  for (const MealyStrategy& s : profile) {
    fs::path p = fs::path(dir) / (game.arena.players[s.player] + ".strategy.json");
    write_file(p, dump_strategy(game.arena, s) + "\n");
    files.push_back(p.string());
  }
  return files;
}

AaBackend parse_backend(const std::string& s) {
  if (s == "buchi") return AaBackend::buchi;
  if (s == "auto") return AaBackend::automatic;
  return AaBackend::generic;
}

json names(const Arena& a, const std::vector<bool>& set) {
  json out = json::array();
  for (int s = 0; s < a.num_states(); ++s)
    if (set[s]) out.push_back(a.states[s]);
  return out;
}

int cmd_check(const Common& c, const std::string& path, const std::string& rule, bool brute,
              const std::string& backend, const std::string& witness_dir, std::ostream& out) {
  Stopwatch clock;
  Game game = load_game(path);
  json report{{"command", "check"}, {"game", path}, {"rule", rule}};
  bool holds = false;
  std::optional<Profile> witness;
  if (rule == "aa") {
    if (brute) throw InputError("rule 'aa' has no brute-force variant");
    AaResult r = aa_check(game, {c.solver(), parse_backend(backend)});
    holds = r.all();
    json per = json::object();
    for (int i = 0; i < game.arena.num_players(); ++i) per[game.arena.players[i]] = {{"aa_winning", r.winning[i]}};
    report["players"] = per;
    report["method"] = method_name(RuleMethod::exact);
    witness = r.profile;
  } else {
    const auto& exact = exact_rules();
    const auto& bf = brute_rules();
    bool is_exact = std::find(exact.begin(), exact.end(), rule) != exact.end();
    bool is_brute = std::find(bf.begin(), bf.end(), rule) != bf.end();
    if (!is_exact && !is_brute) throw InputError("unknown rule '" + rule + "'");
    RuleVerdict v;
    if (brute || !is_exact) {
      if (!is_brute) throw InputError("rule '" + rule + "' has no brute-force variant");
      v = check_brute(game, rule, c.oracle());
    } else if (rule == "coop") {
      v = check_coop(game, c.solver());
    } else if (rule == "win") {
      v = check_win(game, c.solver());
    } else if (rule == "win_under_hyp") {
      v = check_win_under_hyp(game, c.solver());
    } else {
      v = check_ag_and(game, c.solver());
    }
    holds = v.holds;
    witness = v.witness;
    report["method"] = method_name(v.method);
    if (!v.note.empty()) report["note"] = v.note;
  }
  report["holds"] = holds;
  if (witness && !witness_dir.empty()) report["witness"] = write_profile(game, *witness, witness_dir);
  if (c.timings) report["timings_ms"] = {{"total", clock.ms()}};
  emit(out, c, report);
  return holds ? 0 : 1;
}

int cmd_synth(const Common& c, const std::string& path, const std::string& dir, const std::string& backend,
              std::ostream& out) {
  Stopwatch clock;
  Game game = load_game(path);
  AaResult r = aa_check(game, {c.solver(), parse_backend(backend)});
  json report{{"command", "synth aa"}, {"game", path}};
  json per = json::object();
  for (int i = 0; i < game.arena.num_players(); ++i) per[game.arena.players[i]] = {{"aa_winning", r.winning[i]}};
  report["players"] = per;
  if (r.profile) report["strategies"] = write_profile(game, *r.profile, dir);
  if (c.timings) report["timings_ms"] = {{"total", clock.ms()}};
  emit(out, c, report);
  return r.all() ? 0 : 1;
}

int cmd_values(const Common& c, const std::string& path, std::ostream& out) {
  Game game = load_game(path);
  const Arena& a = game.arena;
  std::vector<ValueProfile> profiles = compute_all_profiles(game, c.solver());
  json per = json::object();
  for (const ValueProfile& p : profiles) {
    json val = json::object(), edges = json::array();
    for (int s = 0; s < a.num_states(); ++s) {
      val[a.states[s]] = p.val[s];
      if (a.owner[s] != p.player) continue;
      for (int act = 0; act < a.num_actions(s); ++act)
        if (p.preserves(s, act))
          edges.push_back({{"state", a.states[s]}, {"action", a.actions[a.owner[s]][act]}});
    }
    per[a.players[p.player]] = {{"value", val},
                                {"preserving_edges", edges},
                                {"help", names(a, p.help)},
                                {"m", formula_text(a, p.m)}};
  }
  emit(out, c, {{"command", "values"}, {"game", path}, {"players", per}});
  return 0;
}

int cmd_verify(const Common& c, const std::string& path, const std::vector<std::string>& files, std::ostream& out) {
  Game game = load_game(path);
  const Arena& a = game.arena;
  std::vector<MealyStrategy> profile(a.num_players());
  std::vector<bool> given(a.num_players(), false);
  for (const std::string& f : files) {
    MealyStrategy s = load_strategy(a, f);
    if (given[s.player]) throw InputError("two strategies for player " + a.players[s.player]);
    given[s.player] = true;
    profile[s.player] = std::move(s);
  }
  for (int i = 0; i < a.num_players(); ++i)
    if (!given[i]) throw InputError("missing strategy for player " + a.players[i]);
  VerifyResult r = verify_aa_profile(game, profile, c.solver());
  json per = json::object();
  for (int i = 0; i < a.num_players(); ++i)
    per[a.players[i]] = {{"wins_tagged_objective", r.omega_prime[i]}, {"objective_on_outcome", r.objectives[i]}};
  json report{{"command", "verify"}, {"game", path}, {"holds", r.holds}, {"players", per}};
  if (!r.error.empty()) report["error"] = r.error;
  emit(out, c, report);
  return r.holds ? 0 : 1;
}

int cmd_abstract(const Common& c, const std::string& path, const std::string& part_path, const std::string& player,
                 const std::string& out_file, std::ostream& out) {
  Game game = load_game(path);
  const Arena& a = game.arena;
  Partition part = load_partition(a, part_path);
  int k = a.player_index(player);
  Compatibility compat = Compatibility::verified;
  Abstraction abs = make_abstraction(game, std::move(part), &compat);
  std::vector<AbstractPlayer> players = abstract_players(abs, c.solver());
  AbstractAaResult r = abstract_aa_check(abs, players, k, c.solver());
  json report{{"command", "abstract"},
              {"game", path},
              {"partition", part_path},
              {"player", player},
              {"compatibility", compatibility_name(compat)},
              {"inconclusive", r.inconclusive || !r.decision},
              {"decision", r.decision}};
  if (r.strategy) {
    std::string file = out_file.empty() ? player + ".abstract.strategy.json" : out_file;
    write_file(file, dump_strategy(a, *r.strategy) + "\n");
    report["strategy"] = file;
  }
  emit(out, c, report);
  return r.decision ? 0 : 1;
}

int cmd_corpus_list(const Common& c, const std::string& dir, std::ostream& out) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".game") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  json list = json::array();
  for (const fs::path& f : files) {
    Game g = load_game(f.string());
    json meta = g.meta.empty() ? json::object() : json::parse(g.meta);
    list.push_back({{"file", f.filename().string()},
                    {"id", meta.value("id", f.stem().string())},
                    {"claims", meta.value("claims", json::array())}});
  }
  if (c.format == "text") {
    for (const json& item : list) {
      out << item["id"].get<std::string>() << "\n";
      for (const json& claim : item["claims"]) out << "  " << claim.dump() << "\n";
    }
  } else {
    out << json{{"command", "corpus list"}, {"games", list}}.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Assume-admissible synthesis for multiplayer games on graphs", "aasynth"};
  app.require_subcommand(1);
  Common common;

  std::string game, rule, backend = "generic", witness_dir, out_dir = ".", partition, player, out_file;
  std::string corpus_dir = default_corpus_dir();
  std::vector<std::string> strategy_files;
  bool brute = false;

  CLI::App* check = app.add_subcommand("check", "Decide a synthesis rule");
  add_common(check, common);
  check->add_option("game", game, "Game file")->required();
  check->add_option("--rule", rule, "Rule id")->required();
  check->add_flag("--brute", brute, "Memoryless brute-force decision");
  check->add_option("--backend", backend, "AA backend")->check(CLI::IsMember({"generic", "buchi", "auto"}));
  check->add_option("--witness-dir", witness_dir, "Write witness strategies here");

  CLI::App* synth = app.add_subcommand("synth", "Synthesize a strategy profile");
  synth->require_subcommand(1);
  CLI::App* synth_aa = synth->add_subcommand("aa", "Assume-admissible profile");
  add_common(synth_aa, common);
  synth_aa->add_option("game", game, "Game file")->required();
  synth_aa->add_option("--out-dir", out_dir, "Directory for strategy files");
  synth_aa->add_option("--backend", backend, "AA backend")->check(CLI::IsMember({"generic", "buchi", "auto"}));

  CLI::App* values = app.add_subcommand("values", "Print values, preserving edges and help states");
  add_common(values, common);
  values->add_option("game", game, "Game file")->required();

  CLI::App* verify = app.add_subcommand("verify", "Check that a profile is assume-admissible winning");
  add_common(verify, common);
  verify->add_option("game", game, "Game file")->required();
  verify->add_option("strategies", strategy_files, "One strategy file per player")->required();

  CLI::App* abstract = app.add_subcommand("abstract", "Abstract AA check for one player");
  add_common(abstract, common);
  abstract->add_option("game", game, "Game file")->required();
  abstract->add_option("partition", partition, "Partition file")->required();
  abstract->add_option("--player", player, "Player id")->required();
  abstract->add_option("--out", out_file, "Strategy output file");

  CLI::App* corpus = app.add_subcommand("corpus", "Bundled games");
  corpus->require_subcommand(1);
  CLI::App* corpus_list = corpus->add_subcommand("list", "List bundled games and their claims");
  add_common(corpus_list, common);
  corpus_list->add_option("--dir", corpus_dir, "Corpus directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return cmd_check(common, game, rule, brute, backend, witness_dir, out);
    if (synth_aa->parsed()) return cmd_synth(common, game, out_dir, backend, out);
    if (values->parsed()) return cmd_values(common, game, out);
    if (verify->parsed()) return cmd_verify(common, game, strategy_files, out);
    if (abstract->parsed()) return cmd_abstract(common, game, partition, player, out_file, out);
    if (corpus_list->parsed()) return cmd_corpus_list(common, corpus_dir, out);
  } catch (const std::exception& e) {
    err << "aasynth: " << e.what() << "\n";
    return 2;
  }
  err << "aasynth: no command\n";
  return 2;
}

}  // namespace aasynth
