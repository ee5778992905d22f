#!/usr/bin/env python3
"""Writes scheduler.game: a two-task scheduler (Sched) against a request
generator (Env), as an explicit turn-based arena.

Convention: Env and Sched alternate, Env first. An Env move sets the request
bits r1 r2, the following Sched move sets the grant bits q1 q2. Deadlines
count Sched turns after the request:
  r1 needs q1 at the first or the second following Sched turn;
  r2 needs q2 exactly at the second following Sched turn;
  q1 and q2 together are never allowed.
Env must not repeat r_i while it is still waiting for q_i, and must issue
both requests infinitely often. A violation sets a sticky failure bit; the
obligations of the failed side are then dropped.
"""
import json
import os

BITS = ["00", "10", "01", "11"]


def env_name(st):
    n1, d1, w1, w2, sf, ef = st
    return f"E.n{n1}.d{d1}.w{w1}{w2}" + (".SF" if sf else "") + (".EF" if ef else "")


def sched_name(st):
    n1, d1, d2, w1, w2, r1, r2, sf, ef = st
    return f"S.n{n1}.d{d1}{d2}.w{w1}{w2}.r{r1}{r2}" + (".SF" if sf else "") + (".EF" if ef else "")


def env_move(st, r):
    n1, d1, w1, w2, sf, ef = st
    r1, r2 = int(r[0]), int(r[1])
    ef = ef or (r1 and w1) or (r2 and w2)
    ef = int(bool(ef))
    if not sf:
        # n1: 0 none, 1 due now or next turn, 2 due now
        if r1:
            n1 = 2 if n1 == 2 else 1
        d2 = r2
    else:
        n1, d1, d2 = 0, 0, 0
    w1, w2 = int(w1 or r1), int(w2 or r2)
    if ef:
        w1, w2 = 0, 0
    return ("S", (n1, d1, d2, w1, w2, r1, r2, sf, ef))


def sched_move(st, q):
    n1, d1, d2, w1, w2, r1, r2, sf, ef = st
    q1, q2 = int(q[0]), int(q[1])
    bad = (q1 and q2) or (n1 == 2 and not q1) or (d1 and not q2)
    sf = int(bool(sf or bad))
    n1 = 0 if q1 else {0: 0, 1: 2, 2: 0}[n1]
    d1, d2 = d2, 0
    w1, w2 = int(w1 and not q1), int(w2 and not q2)
    if sf:
        n1, d1 = 0, 0
    if ef:
        w1, w2 = 0, 0
    return ("E", (n1, d1, w1, w2, sf, ef))


def main():
    init = ("E", (0, 0, 0, 0, 0, 0))
    order, seen, queue = [], {init}, [init]
    while queue:
        node = queue.pop(0)
        order.append(node)
        kind, st = node
        for bits in BITS:
            nxt = env_move(st, bits) if kind == "E" else sched_move(st, bits)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)

    name = {n: (env_name(n[1]) if n[0] == "E" else sched_name(n[1])) for n in order}
    states, transitions = [], []
    for node in order:
        kind, st = node
        owner = "Env" if kind == "E" else "Sched"
        states.append({"id": name[node], "owner": owner})
        for bits in BITS:
            nxt = env_move(st, bits) if kind == "E" else sched_move(st, bits)
            transitions.append({"from": name[node], "action": ("r" if kind == "E" else "q") + bits, "to": name[nxt]})

    def sched_ok(n):
        return not n[1][-2]

    def env_mark(n, bit):
        return n[0] == "S" and n[1][5 + bit] and not n[1][-1]

    r1 = " | ".join(f"inf({name[n]})" for n in order if env_mark(n, 0))
    r2 = " | ".join(f"inf({name[n]})" for n in order if env_mark(n, 1))
    doc = {
        "meta": {
            "id": "scheduler",
            "note": "Two-task scheduler. Env and Sched alternate, Env first; deadlines count Sched turns "
                    "after the request: q1 within two, q2 exactly at the second; q1 and q2 never together. "
                    "Env never repeats a pending request and requests both tasks infinitely often. "
                    "Violations set sticky failure flags (.SF Sched, .EF Env). Generated by scheduler.py.",
            "claims": [
                {"rule": "win", "holds": False},
                {"rule": "aa", "holds": True},
                {"rule": "coop", "holds": True},
                {"rule": "win_under_hyp", "holds": True},
            ],
        },
        "players": ["Sched", "Env"],
        "actions": {"Sched": ["q" + b for b in BITS], "Env": ["r" + b for b in BITS]},
        "states": states,
        "init": name[init],
        "transitions": transitions,
        "objectives": {
            "Sched": {"kind": "buchi", "accept": [name[n] for n in order if sched_ok(n)]},
            "Env": {"kind": "muller", "formula": f"({r1}) & ({r2})"},
        },
    }
    out = os.path.join(os.path.dirname(os.path.abspath(__file__)), "scheduler.game")
    with open(out, "w") as f:
        json.dump(doc, f, indent=1)
        f.write("\n")
    print(f"{len(states)} states written to {out}")


if __name__ == "__main__":
    main()
