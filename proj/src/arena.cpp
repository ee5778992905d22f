#include "aasynth/arena.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "aasynth/error.hpp"

namespace aasynth {

using json = nlohmann::json;

int Arena::state_index(std::string_view id) const {
  auto it = state_ids_.find(std::string(id));
  if (it == state_ids_.end()) throw InputError("unknown state '" + std::string(id) + "'");
  return it->second;
}

std::optional<int> Arena::find_state(std::string_view id) const {
  auto it = state_ids_.find(std::string(id));
  if (it == state_ids_.end()) return std::nullopt;
  return it->second;
}

int Arena::player_index(std::string_view id) const {
  auto it = player_ids_.find(std::string(id));
  if (it == player_ids_.end()) throw InputError("unknown player '" + std::string(id) + "'");
  return it->second;
}

int Arena::action_index(int player, std::string_view id) const {
  auto& m = action_ids_.at(player);
  auto it = m.find(std::string(id));
  if (it == m.end())
    throw InputError("unknown action '" + std::string(id) + "' for player '" + players[player] + "'");
  return it->second;
}

void Arena::index() {
  state_ids_.clear();
  player_ids_.clear();
  action_ids_.assign(players.size(), {});
  for (int s = 0; s < num_states(); ++s) state_ids_.emplace(states[s], s);
  for (int p = 0; p < num_players(); ++p) {
    player_ids_.emplace(players[p], p);
    for (int a = 0; a < static_cast<int>(actions[p].size()); ++a) action_ids_[p].emplace(actions[p][a], a);
  }
}

void Arena::validate() const {
  if (players.empty()) throw InputError("arena: no players");
  if (states.empty()) throw InputError("arena: no states");
  if (actions.size() != players.size()) throw InputError("arena: action table size mismatch");
  for (int p = 0; p < num_players(); ++p)
    if (actions[p].empty()) throw InputError("arena: player '" + players[p] + "' has no actions");
  if (owner.size() != states.size() || delta.size() != states.size())
    throw InputError("arena: state table size mismatch");
  if (init < 0 || init >= num_states()) throw InputError("arena: initial state out of range");
  for (int s = 0; s < num_states(); ++s) {
    if (owner[s] < 0 || owner[s] >= num_players()) throw InputError("arena: bad owner for " + states[s]);
    if (delta[s].size() != actions[owner[s]].size())
      throw InputError("arena: non-total delta at state '" + states[s] + "'");
    for (int t : delta[s])
      if (t < 0 || t >= num_states()) throw InputError("arena: non-total delta at state '" + states[s] + "'");
  }
}

Objective Objective::buchi(std::vector<int> targets) {
  Objective o;
  o.kind = ObjectiveKind::buchi;
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  o.circuit = buchi_to_circuit(targets);
  o.accept = std::move(targets);
  return o;
}

Objective Objective::muller(Circuit c) {
  Objective o;
  o.kind = ObjectiveKind::muller;
  o.circuit = std::move(c);
  return o;
}

bool Game::all_buchi() const {
  return std::all_of(objectives.begin(), objectives.end(),
                     [](const Objective& o) { return o.kind == ObjectiveKind::buchi; });
}

std::vector<bool> Lasso::inf_set(int num_states) const {
  std::vector<bool> in(num_states, false);
  for (const Step& st : cycle) in[st.state] = true;
  return in;
}

std::optional<int> MealyStrategy::action_at(int mem, int state) const {
  auto it = output.find({mem, state});
  if (it == output.end()) return std::nullopt;
  return it->second;
}

std::optional<int> MealyStrategy::next_memory(int mem, int state, int action) const {
  if (memory.size() == 1) return 0;
  auto it = update.find({mem, state, action});
  if (it == update.end()) return std::nullopt;
  return it->second;
}

MealyStrategy memoryless_strategy(const Arena& arena, int player, std::span<const int> choice) {
  MealyStrategy m;
  m.player = player;
  m.memory = {"m0"};
  for (int s = 0; s < arena.num_states(); ++s) {
    if (arena.owner[s] != player) continue;
    m.output[{0, s}] = choice[s];
    for (int a = 0; a < arena.num_actions(s); ++a) m.update[{0, s, a}] = 0;
  }
  for (int s = 0; s < arena.num_states(); ++s)
    if (arena.owner[s] != player)
      for (int a = 0; a < arena.num_actions(s); ++a) m.update[{0, s, a}] = 0;
  return m;
}

Lasso outcome_of_profile(const Arena& arena, std::span<const MealyStrategy> profile) {
  const int n = arena.num_players();
  std::vector<const MealyStrategy*> by_player(n, nullptr);
  for (const MealyStrategy& sigma : profile) {
    if (sigma.player < 0 || sigma.player >= n || by_player[sigma.player])
      throw InputError("profile: duplicate or out-of-range player");
    by_player[sigma.player] = &sigma;
  }
  for (int p = 0; p < n; ++p)
    if (!by_player[p]) throw InputError("profile: no strategy for player '" + arena.players[p] + "'");

  std::vector<int> config(n + 1);
  config[0] = arena.init;
  for (int p = 0; p < n; ++p) config[p + 1] = by_player[p]->init_memory;
  std::map<std::vector<int>, std::size_t> seen;
  std::vector<Step> steps;
  while (true) {
    auto [it, fresh] = seen.emplace(config, steps.size());
    if (!fresh) {
      Lasso l;
      l.prefix.assign(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(it->second));
      l.cycle.assign(steps.begin() + static_cast<std::ptrdiff_t>(it->second), steps.end());
      return l;
    }
    int s = config[0];
    int who = arena.owner[s];
    auto a = by_player[who]->action_at(config[who + 1], s);
    if (!a || *a < 0 || *a >= arena.num_actions(s))
      throw InputError("profile: strategy of '" + arena.players[who] + "' undefined at state '" +
                       arena.states[s] + "'");
    steps.push_back({s, *a});
    for (int p = 0; p < n; ++p) {
      auto m = by_player[p]->next_memory(config[p + 1], s, *a);
      if (!m) throw InputError("profile: memory update of '" + arena.players[p] + "' undefined");
      config[p + 1] = *m;
    }
    config[0] = arena.successor(s, *a);
  }
}

bool eval_objective(const Objective& obj, const Lasso& lasso, int num_states) {
  return obj.circuit.evaluate(lasso.inf_set(num_states));
}

// ---------------------------------------------------------------------------

namespace {

const json& field(const json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string(where) + ": missing key '" + key + "'");
  return j.at(key);
}

std::string str(const json& j, const char* where) {
  if (!j.is_string()) throw InputError(std::string(where) + ": expected a string");
  return j.get<std::string>();
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string(what) + ": syntax error at byte " + std::to_string(e.byte));
  }
}

}  // namespace

std::string formula_text(const Arena& arena, const Circuit& c) {
  return print_formula(c, [&](int s) { return arena.states.at(s); });
}

Circuit parse_state_formula(const Arena& arena, std::string_view text) {
  return parse_formula(text, [&](std::string_view id) { return arena.state_index(id); });
}

Game parse_arena(std::string_view text) {
  json j = parse_json(text, "game");
  if (!j.is_object()) throw InputError("game: top level must be an object");
  Game g;
  Arena& a = g.arena;

  const json& players = field(j, "players", "game");
  if (!players.is_array()) throw InputError("game: 'players' must be an array");
  for (const json& p : players) a.players.push_back(str(p, "players"));
  if (std::set<std::string>(a.players.begin(), a.players.end()).size() != a.players.size())
    throw InputError("game: duplicate player id");

  const json& actions = field(j, "actions", "game");
  if (!actions.is_object()) throw InputError("game: 'actions' must be an object");
  for (auto it = actions.begin(); it != actions.end(); ++it)
    if (std::find(a.players.begin(), a.players.end(), it.key()) == a.players.end())
      throw InputError("game: unknown player '" + it.key() + "' in actions");
  for (const std::string& p : a.players) {
    if (!actions.contains(p)) throw InputError("game: no actions for player '" + p + "'");
    std::vector<std::string> acts;
    for (const json& x : actions.at(p)) acts.push_back(str(x, "actions"));
    if (std::set<std::string>(acts.begin(), acts.end()).size() != acts.size())
      throw InputError("game: duplicate action for player '" + p + "'");
    a.actions.push_back(std::move(acts));
  }

  const json& states = field(j, "states", "game");
  if (!states.is_array()) throw InputError("game: 'states' must be an array");
  std::vector<std::string> owners;
  for (const json& s : states) {
    a.states.push_back(str(field(s, "id", "state"), "state id"));
    owners.push_back(str(field(s, "owner", "state"), "state owner"));
  }
  if (std::set<std::string>(a.states.begin(), a.states.end()).size() != a.states.size())
    throw InputError("game: duplicate state id");
  a.index();
  for (const std::string& o : owners) a.owner.push_back(a.player_index(o));
  a.init = a.state_index(str(field(j, "init", "game"), "init"));

  a.delta.resize(a.states.size());
  for (int s = 0; s < a.num_states(); ++s) a.delta[s].assign(a.actions[a.owner[s]].size(), -1);
  const json& trans = field(j, "transitions", "game");
  if (!trans.is_array()) throw InputError("game: 'transitions' must be an array");
  for (const json& t : trans) {
    int from = a.state_index(str(field(t, "from", "transition"), "from"));
    int act = a.action_index(a.owner[from], str(field(t, "action", "transition"), "action"));
    int to = a.state_index(str(field(t, "to", "transition"), "to"));
    if (a.delta[from][act] != -1)
      throw InputError("game: duplicate transition (" + a.states[from] + ", " + a.actions[a.owner[from]][act] + ")");
    a.delta[from][act] = to;
  }
  for (int s = 0; s < a.num_states(); ++s)
    for (int act = 0; act < a.num_actions(s); ++act)
      if (a.delta[s][act] == -1)
        throw InputError("game: non-total delta, missing transition (" + a.states[s] + ", " +
                         a.actions[a.owner[s]][act] + ")");
  a.validate();

  const json& objs = field(j, "objectives", "game");
  if (!objs.is_object()) throw InputError("game: 'objectives' must be an object");
  for (auto it = objs.begin(); it != objs.end(); ++it) a.player_index(it.key());
  for (const std::string& p : a.players) {
    if (!objs.contains(p)) throw InputError("game: no objective for player '" + p + "'");
    const json& o = objs.at(p);
    std::string kind = str(field(o, "kind", "objective"), "kind");
    if (kind == "buchi") {
      std::vector<int> acc;
      const json& list = field(o, "accept", "objective");
      if (!list.is_array()) throw InputError("objective: 'accept' must be an array");
      for (const json& s : list) acc.push_back(a.state_index(str(s, "accept")));
      g.objectives.push_back(Objective::buchi(std::move(acc)));
    } else if (kind == "muller") {
      g.objectives.push_back(Objective::muller(parse_state_formula(a, str(field(o, "formula", "objective"), "formula"))));
    } else {
      throw InputError("objective: unknown kind '" + kind + "'");
    }
  }
  if (j.contains("meta")) g.meta = j.at("meta").dump();
  return g;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Game load_game(const std::string& path) { return parse_arena(read_file(path)); }

std::string dump_game(const Game& g) {
  const Arena& a = g.arena;
  json j;
  j["players"] = a.players;
  json acts = json::object();
  for (int p = 0; p < a.num_players(); ++p) acts[a.players[p]] = a.actions[p];
  j["actions"] = acts;
  json states = json::array();
  for (int s = 0; s < a.num_states(); ++s) states.push_back({{"id", a.states[s]}, {"owner", a.players[a.owner[s]]}});
  j["states"] = states;
  j["init"] = a.states[a.init];
  json trans = json::array();
  for (int s = 0; s < a.num_states(); ++s)
    for (int act = 0; act < a.num_actions(s); ++act)
      trans.push_back({{"from", a.states[s]}, {"action", a.actions[a.owner[s]][act]}, {"to", a.states[a.delta[s][act]]}});
  j["transitions"] = trans;
  json objs = json::object();
  for (int p = 0; p < a.num_players(); ++p) {
    const Objective& o = g.objectives[p];
    if (o.kind == ObjectiveKind::buchi) {
      json acc = json::array();
      for (int s : o.accept) acc.push_back(a.states[s]);
      objs[a.players[p]] = {{"kind", "buchi"}, {"accept", acc}};
    } else {
      objs[a.players[p]] = {{"kind", "muller"}, {"formula", formula_text(a, o.circuit)}};
    }
  }
  j["objectives"] = objs;
  if (!g.meta.empty()) j["meta"] = json::parse(g.meta);
  return j.dump(2);
}

MealyStrategy parse_strategy(const Arena& a, std::string_view text) {
  json j = parse_json(text, "strategy");
  MealyStrategy m;
  m.player = a.player_index(str(field(j, "player", "strategy"), "player"));
  std::unordered_map<std::string, int> mem;
  for (const json& x : field(j, "memory", "strategy")) {
    std::string id = str(x, "memory");
    if (!mem.emplace(id, static_cast<int>(m.memory.size())).second)
      throw InputError("strategy: duplicate memory id '" + id + "'");
    m.memory.push_back(id);
  }
  if (m.memory.empty()) throw InputError("strategy: empty memory");
  auto memory_id = [&](const json& x) {
    auto it = mem.find(str(x, "memory"));
    if (it == mem.end()) throw InputError("strategy: unknown memory id '" + x.dump() + "'");
    return it->second;
  };
  m.init_memory = memory_id(field(j, "init", "strategy"));
  for (const json& o : field(j, "output", "strategy")) {
    int mm = memory_id(field(o, "memory", "output"));
    int s = a.state_index(str(field(o, "state", "output"), "state"));
    if (a.owner[s] != m.player)
      throw InputError("strategy: output at state '" + a.states[s] + "' not owned by the player");
    int act = a.action_index(m.player, str(field(o, "action", "output"), "action"));
    if (!m.output.emplace(std::make_pair(mm, s), act).second) throw InputError("strategy: duplicate output entry");
  }
  for (const json& u : field(j, "update", "strategy")) {
    int mm = memory_id(field(u, "memory", "update"));
    int s = a.state_index(str(field(u, "state", "update"), "state"));
    int act = a.action_index(a.owner[s], str(field(u, "action", "update"), "action"));
    int next = memory_id(field(u, "next", "update"));
    if (!m.update.emplace(std::make_tuple(mm, s, act), next).second)
      throw InputError("strategy: duplicate update entry");
  }
  return m;
}

MealyStrategy load_strategy(const Arena& a, const std::string& path) { return parse_strategy(a, read_file(path)); }

std::string dump_strategy(const Arena& a, const MealyStrategy& m) {
  json j;
  j["player"] = a.players[m.player];
  j["memory"] = m.memory;
  j["init"] = m.memory[m.init_memory];
  json out = json::array();
  for (const auto& [key, act] : m.output)
    out.push_back({{"memory", m.memory[key.first]}, {"state", a.states[key.second]},
                   {"action", a.actions[m.player][act]}});
  j["output"] = out;
  json upd = json::array();
  for (const auto& [key, next] : m.update) {
    auto [mm, s, act] = key;
    upd.push_back({{"memory", m.memory[mm]}, {"state", a.states[s]},
                   {"action", a.actions[a.owner[s]][act]}, {"next", m.memory[next]}});
  }
  j["update"] = upd;
  return j.dump(1);
}

}  // namespace aasynth
