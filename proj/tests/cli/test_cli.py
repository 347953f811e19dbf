#!/usr/bin/env python3
"""End-to-end checks of the lcmix binary: exit codes, JSON round trips,
byte-level determinism."""

import json
import subprocess
import sys
import tempfile
import os

BINARY = sys.argv[1]
failures = []


def run(*args, expect=None):
    proc = subprocess.run([BINARY, *args], capture_output=True, text=True)
    if expect is not None and proc.returncode != expect:
        failures.append(f"{args}: exit {proc.returncode}, expected {expect}\n{proc.stderr}")
    return proc


def check(cond, label):
    if not cond:
        failures.append(label)


def write(tmp, name, payload):
    path = os.path.join(tmp, name)
    with open(path, "w") as f:
        json.dump(payload, f)
    return path


def cycle(n):
    edges = []
    for i in range(n):
        edges.append([i, (i + 1) % n])
        edges.append([(i + 1) % n, i])
    return {"domain_size": n, "relations": [{"name": "E", "arity": 2, "tuples": edges}]}


def clique(c):
    edges = [[i, j] for i in range(c) for j in range(c) if i != j]
    return {"domain_size": c, "relations": [{"name": "E", "arity": 2, "tuples": edges}]}


with tempfile.TemporaryDirectory() as tmp:
    c5 = write(tmp, "c5.json", cycle(5))
    c4 = write(tmp, "c4.json", cycle(4))
    k3 = write(tmp, "k3.json", clique(3))
    k4 = write(tmp, "k4.json", clique(4))

    # aperiodicity: C5 yes with mixing time 4, C4 no
    out = run("aperiodicity", "--in", c5, expect=0)
    rep = json.loads(out.stdout)
    check(rep["aperiodic"] is True and rep["mixing_time"] == 4, "c5 aperiodicity report")
    run("aperiodicity", "--in", c4, expect=1)

    # lc exit codes: K4 vs K3 at kappa 3 is a definite NO
    run("lc", "--instance", k4, "--template", k3, "--kappa", "3", expect=1)
    run("lc", "--instance", k4, "--template", k3, "--kappa", "2", expect=0)

    # hom: C5 -> K3 exists, K4 -> K3 does not
    run("hom", "--instance", c5, "--template", k3, expect=0)
    run("hom", "--instance", k4, "--template", k3, expect=1)

    # params echoes the derived values
    out = run("params", "--g", "4", "--h", "4", "--beta", "3/2", "--r", "2", expect=0)
    rep = json.loads(out.stdout)
    check(abs(rep["nu"] - 1.5) < 1e-12, "params nu")
    check(rep["beta"] == "3/2", "params beta rational echo")

    # hypergraph stats round trip
    hg = write(tmp, "tri.json", {"n": 3, "r": 2, "edges": [[0, 1], [1, 2], [0, 2]]})
    out = run("hg-stats", "--in", hg, "--tau", "3", "--beta", "3/2", expect=0)
    rep = json.loads(out.stdout)
    check(rep["fbr_tau"] == 1 and rep["girth"] == 3, "triangle stats")
    check(rep["sdr_total"] == "3", "triangle sdr as exact rational")

    out = run("girth", "--in", hg, expect=0)
    check(json.loads(out.stdout)["girth"] == 3, "girth subcommand")

    # unknown flags are input errors; help exits cleanly
    run("lc", "--bogus-flag", expect=2)
    run("--help", expect=0)

    # malformed and out-of-range inputs exit 2
    bad = os.path.join(tmp, "bad.json")
    with open(bad, "w") as f:
        f.write("{not json")
    run("girth", "--in", bad, expect=2)
    oor = write(tmp, "oor.json", {"n": 2, "r": 2, "edges": [[0, 5]]})
    run("girth", "--in", oor, expect=2)
    run("lc", "--instance", k4, "--template", k3, "--kappa", "4", "--budget", "10", expect=2)

    # generate: writes a re-readable hypergraph and report
    hg_out = os.path.join(tmp, "gen.json")
    out = run("generate", "--n", "25", "--p", "0.12", "--g", "3", "--h", "3",
              "--max-attempts", "40", "--seed", "5", "--hypergraph-out", hg_out, expect=0)
    rep = json.loads(out.stdout)
    check(rep["success"] is True, "generate success")
    with open(hg_out) as f:
        gen = json.load(f)
    run("girth", "--in", hg_out, expect=0)
    check(all(e == sorted(e) for e in gen["edges"]), "generated edges sorted")

    # gap: rigid directed path vs the directed 3-cycle fails with a witness
    dpath = write(tmp, "dpath.json", {
        "domain_size": 5,
        "relations": [{"name": "E", "arity": 2, "tuples": [[0, 1], [1, 2], [2, 3], [3, 4]]}]})
    dcycle = write(tmp, "dc3.json", {
        "domain_size": 3,
        "relations": [{"name": "E", "arity": 2, "tuples": [[0, 1], [1, 2], [2, 0]]}]})
    out = run("gap", "--instance", dpath, "--template", dcycle,
              "--kappa", "2", "--gamma", "3", expect=1)
    check("witness" in json.loads(out.stdout), "gap witness emitted")

    # --out writes the same report to a file
    report_path = os.path.join(tmp, "rep.json")
    run("aperiodicity", "--in", c5, "--out", report_path, expect=0)
    with open(report_path) as f:
        check(json.load(f)["mixing_time"] == 4, "--out report content")

    # determinism: identical argv + seed give byte-identical reports
    a = run("generate", "--n", "20", "--p", "0.1", "--g", "3", "--h", "1", "--seed", "9",
            "--no-timestamp", expect=0).stdout
    b = run("generate", "--n", "20", "--p", "0.1", "--g", "3", "--h", "1", "--seed", "9",
            "--no-timestamp", expect=0).stdout
    check(a == b, "byte-identical deterministic reports")

    # every emitted report is re-readable json
    for blob in (a,):
        json.loads(blob)

if failures:
    print("FAILURES:")
    for f in failures:
        print(" -", f)
    sys.exit(1)
print(f"cli: all checks passed")
