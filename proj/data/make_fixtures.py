#!/usr/bin/env python3
"""Regenerates the CSV fixtures in this directory with the mixar CLI.

usage: make_fixtures.py path/to/mixar
"""
import csv
import io
import math
import subprocess
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
T = 383
START = (1990, 9)
SEED_BASE = 2022

# name, cycle family, phi, varphi, price level, cycle share
SERIES = [
    ("Cotton", "noncausal", [], [1.317, -0.416], 70.0, 0.20),
    ("Wheat", "mixed", [0.423], [0.810], 200.0, 0.18),
    ("Barley", "mixed", [0.319], [0.880], 130.0, 0.18),
    ("Zinc", "mixed", [0.484], [0.859], 2000.0, 0.20),
    ("Copper", "mixed", [0.472], [0.820], 5000.0, 0.18),
    ("Aluminium", "mixed", [0.511], [0.810], 1800.0, 0.14),
    ("Nickel", "mixed", [0.564], [0.813], 12000.0, 0.30),
    ("Brent", "mixed", [0.459], [0.811], 60.0, 0.22),
]


def months():
    y, m = START
    for _ in range(T):
        yield f"{y:04d}-{m:02d}"
        m += 1
        if m > 12:
            y, m = y + 1, 1


def simulate(mixar, family, phi, varphi, seed):
    cmd = [mixar, "--seed", str(seed), "simulate", "--family", family, "--T", str(T),
           "--alpha", "1.5", "--beta", "0.25", "--gamma", "1"]
    if phi:
        cmd += ["--phi", ",".join(map(str, phi))]
    if varphi:
        cmd += ["--varphi", ",".join(map(str, varphi))]
    out = subprocess.run(cmd, check=True, capture_output=True, text=True).stdout
    return [float(row["y"]) for row in csv.DictReader(io.StringIO(out))]


def sd(x):
    mu = sum(x) / len(x)
    return math.sqrt(sum((v - mu) ** 2 for v in x) / (len(x) - 1))


def write(path, header, rows):
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def main():
    mixar = sys.argv[1]
    dates = list(months())
    cycles = {}
    prices = {}
    for k, (name, family, phi, varphi, level, share) in enumerate(SERIES, start=1):
        c = simulate(mixar, family, phi, varphi, SEED_BASE + k)
        cycles[name] = c
        s = sd(c)
        prices[name] = [
            level * (0.6 + 0.8 * t / T + 0.2 * math.sin(math.pi * t / T)) * math.exp(share * v / s)
            for t, v in enumerate(c)
        ]
    names = [s[0] for s in SERIES]
    write(HERE / "commodities.csv", ["date"] + names,
          [[d] + [f"{prices[n][t]:.4f}" for n in names] for t, d in enumerate(dates)])
    for name, fname in (("Cotton", "cotton_cycle.csv"), ("Brent", "brent_cycle.csv")):
        write(HERE / fname, ["date", name], [[d, repr(cycles[name][t])] for t, d in enumerate(dates)])


if __name__ == "__main__":
    main()
