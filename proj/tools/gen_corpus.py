import json, os
OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "corpus")

def game(gid, note, players, actions, states, init, trans, objectives, claims):
    transitions = []
    for s, owner in states:
        for a in actions[owner]:
            transitions.append({"from": s, "action": a, "to": trans.get(s, {}).get(a, s)})
    doc = {
        "meta": {"id": gid, "note": note, "claims": claims},
        "players": players,
        "actions": actions,
        "states": [{"id": s, "owner": o} for s, o in states],
        "init": init,
        "transitions": transitions,
        "objectives": objectives,
    }
    with open(os.path.join(OUT, gid + ".game"), "w") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")

def buchi(*acc): return {"kind": "buchi", "accept": list(acc)}
def rule(r, holds, brute=False):
    c = {"rule": r, "holds": holds}
    if brute: c["method"] = "brute-memoryless"
    return c
def prof(kind, choice, holds): return {"profile_check": kind, "profile": choice, "holds": holds}

game("fig2", "Running example: each player wants to revisit a state the other one controls.",
     ["P1", "P2"], {"P1": ["a", "b", "c"], "P2": ["a", "b"]},
     [("s1", "P1"), ("s2", "P2"), ("s3", "P1")], "s1",
     {"s1": {"a": "s1", "b": "s2", "c": "s3"}, "s2": {"a": "s1", "b": "s3"}},
     {"P1": buchi("s2"), "P2": buchi("s1")},
     [rule("aa", True), rule("win", False), rule("coop", True)])

game("fig3", "Admissibility of the profile itself matters: two dashed deviations that each look safe lose together.",
     ["P1", "P2"], {"P1": ["a", "b"], "P2": ["a", "b"]},
     [("s1", "P1"), ("s2", "P2"), ("s3", "P1"), ("goal12", "P1"), ("sink", "P1"), ("goal1", "P1")], "s1",
     {"s1": {"a": "goal12", "b": "s2"}, "s2": {"a": "s3", "b": "sink"}, "s3": {"a": "goal12", "b": "goal1"}},
     {"P1": buchi("goal12", "goal1"), "P2": buchi("goal12")},
     [{"verify": ["fig3-dashed-P1.strategy.json", "fig3-dashed-P2.strategy.json"], "holds": False}])

for fname, player, mem_out in [("fig3-dashed-P1.strategy.json", "P1", [("s1", "b"), ("s3", "a")]),
                               ("fig3-dashed-P2.strategy.json", "P2", [("s2", "b")])]:
    states = {"P1": ["s1", "s3", "goal12", "sink", "goal1"], "P2": ["s2"]}[player]
    acts = dict(mem_out)
    doc = {"player": player, "memory": ["m0"], "init": "m0",
           "output": [{"memory": "m0", "state": s, "action": acts.get(s, "a")} for s in states],
           "update": []}
    with open(os.path.join(OUT, fname), "w") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")

game("fig4", "Assume-guarantee holds but assume-admissible fails: player 1 may go right without being dominated.",
     ["P1", "P2"], {"P1": ["l", "r"], "P2": ["a", "b", "c", "d"]},
     [("s1", "P1"), ("s2", "P2"), ("s3", "P2"), ("none_top", "P1"), ("both", "P1"), ("none_low", "P1"), ("only1", "P1")], "s1",
     {"s1": {"l": "s2", "r": "s3"},
      "s2": {"a": "none_top", "b": "both", "c": "none_top", "d": "both"},
      "s3": {"a": "none_low", "b": "only1", "c": "none_low", "d": "only1"}},
     {"P1": buchi("both", "only1"), "P2": buchi("both")},
     [rule("ag_and", True), rule("aa", False), rule("coop", True)])

game("fig5", "Assume-admissible holds but the conjunctive assume-guarantee rule fails.",
     ["P1", "P2", "P3"], {"P1": ["a", "b"], "P2": ["a", "b"], "P3": ["idle"]},
     [("s1", "P2"), ("s2", "P1"), ("all3", "P3"), ("only12", "P3"), ("none", "P3")], "s1",
     {"s1": {"a": "all3", "b": "s2"}, "s2": {"a": "only12", "b": "none"}},
     {"P1": buchi("all3", "only12"), "P2": buchi("all3", "only12"), "P3": buchi("all3")},
     [rule("aa", True), rule("ag_and", False)])

game("fig6", "Assume-admissible holds but the disjunctive assume-guarantee rule fails (three players).",
     ["P1", "P2", "P3"], {"P1": ["a", "b"], "P2": ["a", "b"], "P3": ["idle"]},
     [("s1", "P1"), ("s2", "P2"), ("s3", "P2"), ("s4", "P3"), ("s5", "P3"), ("s6", "P3"), ("s7", "P3")], "s1",
     {"s1": {"a": "s3", "b": "s2"}, "s3": {"a": "s4", "b": "s5"}, "s2": {"a": "s6", "b": "s7"}},
     {"P1": buchi("s4", "s7"), "P2": buchi("s4", "s6"), "P3": {"kind": "muller", "formula": "true"}},
     [rule("aa", True), rule("ag_or", False, True)])

game("fig7", "Universal rational synthesis with dominance holds, with Nash equilibria it fails.",
     ["P1", "P2", "P3"], {"P1": ["idle"], "P2": ["l", "r"], "P3": ["a", "b"]},
     [("s1", "P2"), ("s2", "P3"), ("all3", "P1"), ("only23", "P1"), ("only3", "P1")], "s1",
     {"s1": {"l": "s2", "r": "all3"}, "s2": {"b": "only23", "a": "only3"}},
     {"P1": buchi("all3"), "P2": buchi("all3", "only23"), "P3": buchi("all3", "only23", "only3")},
     [prof("nash", {"s1": "l", "s2": "b"}, True), rule("rs_forall_dom", True, True),
      rule("rs_forall_ne", False, True), rule("rs_exists_ne", True, True)])

game("fig8", "Rational synthesis holds trivially while cooperation is impossible: player 2 can never win.",
     ["P1", "P2"], {"P1": ["idle"], "P2": ["a"]},
     [("s2", "P2"), ("goal1", "P1")], "s2",
     {"s2": {"a": "goal1"}},
     {"P1": buchi("goal1"), "P2": buchi()},
     [rule("coop", False), rule("rs_exists_ne", True, True), rule("rs_forall_ne", True, True),
      rule("rs_exists_dom", True, True), rule("rs_forall_dom", True, True)])

game("coop-not-ag", "Cooperation holds but player 2 cannot guarantee the implication from player 1's objective.",
     ["P1", "P2"], {"P1": ["a", "b"], "P2": ["idle"]},
     [("s", "P1"), ("both", "P2"), ("only1", "P2")], "s",
     {"s": {"a": "both", "b": "only1"}},
     {"P1": buchi("both", "only1"), "P2": buchi("both")},
     [rule("coop", True), rule("ag_and", False)])

game("fig10", "Cooperation holds but player 2 has no dominant strategy.",
     ["P1", "P2", "P3"], {"P1": ["idle"], "P2": ["l", "r"], "P3": ["x", "y"]},
     [("s2", "P2"), ("left3", "P3"), ("right3", "P3"), ("top", "P1"), ("none", "P1"), ("bottom", "P1")], "s2",
     {"s2": {"l": "left3", "r": "right3"}, "left3": {"x": "top", "y": "none"}, "right3": {"x": "none", "y": "bottom"}},
     {"P1": buchi("top", "bottom"), "P2": buchi("top", "bottom"), "P3": buchi("top", "bottom")},
     [rule("coop", True), rule("rs_exists_dom", False, True)])

def rect(gid, note, e_winners, claims):
    objs = {}
    for p in ["P1", "P2", "P3"]:
        acc = ["C", "D"] + (["E"] if p in e_winners else [])
        objs[p] = buchi(*acc)
    game(gid, note, ["P1", "P2", "P3"], {"P1": ["idle"], "P2": ["a", "b"], "P3": ["c", "d"]},
         [("s2", "P2"), ("s3", "P3"), ("C", "P1"), ("D", "P1"), ("E", "P1")], "s2",
         {"s2": {"a": "s3", "b": "C"}, "s3": {"c": "D", "d": "E"}}, objs, claims)

ac, bd, ad = {"s2": "a", "s3": "c"}, {"s2": "b", "s3": "d"}, {"s2": "a", "s3": "d"}
rect("fig12", "Existential rational synthesis with dominance is not rectangular.", ["P2", "P3"],
     [prof("rs_dom", ac, True), prof("rs_dom", bd, True), prof("rs_dom", ad, False)])
rect("fig13", "Universal rational synthesis with Nash equilibria is not rectangular.", ["P1", "P3"],
     [prof("nash", ac, True), prof("sys_wins", ac, True), prof("nash", bd, True), prof("sys_wins", bd, True),
      prof("nash", ad, False)])
rect("fig14", "Existential rational synthesis with Nash equilibria, and cooperation, are not rectangular.", ["P3"],
     [prof("nash", ac, True), prof("all_win", ac, True), prof("nash", bd, True), prof("all_win", bd, True),
      prof("sys_wins", ad, False), prof("all_win", ad, False)])

ac2, bd2, ad2 = {"s1": "a", "s2": "c"}, {"s1": "b", "s2": "d"}, {"s1": "a", "s2": "d"}
game("fig15", "Both assume-guarantee rules are not rectangular.",
     ["P1", "P2"], {"P1": ["a", "b"], "P2": ["c", "d"]},
     [("s1", "P1"), ("s2", "P2"), ("C", "P1"), ("D", "P1"), ("E", "P1")], "s1",
     {"s1": {"a": "s2", "b": "C"}, "s2": {"c": "D", "d": "E"}},
     {"P1": buchi("C", "D"), "P2": buchi("C", "D")},
     [prof("ag_and", ac2, True), prof("ag_or", ac2, True), prof("ag_and", bd2, True), prof("ag_or", bd2, True),
      prof("ag_and", ad2, False), prof("ag_or", ad2, False)])
