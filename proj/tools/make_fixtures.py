#!/usr/bin/env python3
"""Regenerate fixtures/ from the results cache and the gridlock binary.

Usage: tools/make_fixtures.py [path/to/gridlock]
"""
import json
import pathlib
import subprocess
import sys

root = pathlib.Path(__file__).resolve().parent.parent
binary = sys.argv[1] if len(sys.argv) > 1 else str(root / "build/tools/gridlock")
cache = root / "data/cache/solutions"
out = root / "fixtures"
out.mkdir(exist_ok=True)


def cli(*args):
    return json.loads(subprocess.run([binary, *args], check=True, capture_output=True, text=True).stdout)


def classes(mode, n):
    return json.loads((cache / f"{mode}-n{n}-m0.json").read_text())["solutions"]


def write(name, solution):
    solution = {k: solution[k] for k in ("kind", "n", "mode", "margin", "size", "points") if k in solution}
    solution.setdefault("size", len(solution["points"]))
    (out / name).write_text(json.dumps(solution, indent=2) + "\n")
    print(name, solution["size"])


for tag, s in zip("abc", classes("independent", 8)):
    write(f"fig1_n8_{tag}.json", s)
write("fig3_n16.json", cli("construct", "--grid", "--n", "16", "--json"))
write("fig4_n10.json", classes("independent", 10)[0])
write("fig4_n21.json", cli("search", "--n", "21", "--heuristic", "--json"))
for tag, s in zip("ab", classes("independent", 7)):
    write(f"fig5_n7_independent_{tag}.json", s)
for tag, s in zip("abc", classes("general", 7)):
    write(f"fig5_n7_general_{tag}.json", s)
write("fig6_n2_exterior.json", cli("search", "--n", "2", "--exterior", "1", "--json")["witness"])
write("fig6_n7_exterior.json", cli("search", "--n", "7", "--exterior", "2", "--json")["witness"])
