#!/usr/bin/env python3
"""Regenerate the standard sweep CSVs behind the usual plots.

Presets produced (one CSV each, into --out-dir):

  freeze_p316          Markovian correlation dynamics, weights (0.3, 0.1, 0.6)
  freeze_p055          same, weights (0, 0.5, 0.5): higher plateau
  freeze_pure          same, pure entangled state (0, 0, 1): constant classical
  freeze_balanced      same, uniform mixture: everything decays
  revivals_r1          exact dynamics, gamma/Gamma = 1
  revivals_r01         exact dynamics, gamma/Gamma = 0.1
  revivals_r001        exact dynamics, gamma/Gamma = 0.01
  revivals_r0001       exact dynamics, gamma/Gamma = 0.001 (clear revivals)
  longtime_surface     stationary classical correlations over (theta, phi)
  longtime_map         stationary classical correlations over the weight simplex
  pointer_compare      optimized vs fixed pointer-basis measurement
  coherence_slow       P(t) deep in the non-Markovian regime
  coherence_fast       P(t) in the memoryless regime

Everything is a thin wrapper over the qorrel CLI, so each preset can be
rerun by hand with the flags echoed on stderr. Use --quick for coarse grids
(about 20x faster, same shapes).
"""

import argparse
import os
import sys
import time

from qorrel.cli import main as qorrel_main


def preset_commands(quick: bool):
    tpoints = "61" if quick else "201"
    slow_tpoints = "86" if quick else "341"
    grid = "41" if quick else "201"
    mixed = ["--p0", "0.3", "--p1", "0.1", "--p2", "0.6"]
    yield "freeze_p316", ["evolve", "--markovian", "--tmax", "12", "--tpoints", tpoints, *mixed]
    yield "freeze_p055", ["evolve", "--markovian", "--tmax", "12", "--tpoints", tpoints,
                          "--p0", "0", "--p1", "0.5", "--p2", "0.5"]
    yield "freeze_pure", ["evolve", "--markovian", "--tmax", "12", "--tpoints", tpoints,
                          "--p0", "0", "--p1", "0", "--p2", "1"]
    yield "freeze_balanced", ["evolve", "--markovian", "--tmax", "12", "--tpoints", tpoints,
                              "--p0", "0.3333333333", "--p1", "0.3333333333", "--p2", "0.3333333334"]
    for tag, ratio, tmax in [
        ("revivals_r1", "1", "12"),
        ("revivals_r01", "0.1", "40"),
        ("revivals_r001", "0.01", "120"),
        ("revivals_r0001", "0.001", "340"),
    ]:
        yield tag, ["evolve", "--gamma-ratio", ratio, "--tmax", tmax,
                    "--tpoints", slow_tpoints if tag == "revivals_r0001" else tpoints, *mixed]
    yield "longtime_surface", ["surface", "--grid", grid, *mixed]
    yield "longtime_map", ["stationary-map", "--grid", grid]
    yield "pointer_compare", ["compare", "--markovian", "--tmax", "12", "--tpoints", tpoints]
    yield "coherence_slow", ["pfactor", "--gamma-ratio", "0.001", "--tmax", "250", "--tpoints", tpoints]
    yield "coherence_fast", ["pfactor", "--gamma-ratio", "100", "--tmax", "5", "--tpoints", tpoints]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default="results", help="directory for the CSVs")
    parser.add_argument("--quick", action="store_true", help="coarse grids for a fast look")
    parser.add_argument("--only", default=None, help="run just presets containing this substring")
    args = parser.parse_args(argv)

    os.makedirs(args.out_dir, exist_ok=True)
    for tag, command in preset_commands(args.quick):
        if args.only and args.only not in tag:
            continue
        path = os.path.join(args.out_dir, f"{tag}.csv")
        start = time.perf_counter()
        code = qorrel_main([*command, "--out", path])
        elapsed = time.perf_counter() - start
        print(f"{tag:18s} qorrel {' '.join(command)} -> {path} "
              f"[{elapsed:.1f}s, exit {code}]", file=sys.stderr)
        if code != 0:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
