#!/usr/bin/env python3
"""Render the design-space figures from `tlut` CSV output.

Runs the tool, keeps every CSV next to the images, and writes:
  area_vs_mu.png      area breakdown per group size at 32x32, both types
  efficiency.png      efficiency of square tiles at their optimal group size
  geometry_<act>.png  relative area per throughput of rectangular tiles
  sota.png            published designs vs the matched-throughput optimum
"""
import argparse
import csv
import io
import os
import subprocess

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def tlut_csv(exe, outdir, name, *args):
    text = subprocess.run([exe, *args], check=True, capture_output=True, text=True).stdout
    with open(os.path.join(outdir, name + ".csv"), "w") as f:
        f.write(text)
    return list(csv.DictReader(io.StringIO(text)))


def area_vs_mu(exe, outdir, size):
    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    terms = ("build_area", "accumulate_area", "mux_area", "reg_area")
    for ax, act in zip(axes, ("int8", "fp16")):
        rows = tlut_csv(exe, outdir, f"cost_{act}", "cost", "--n", str(size), "--m", str(size),
                        "--mu", "1-5", "--act", act)
        mus = [int(r["mu"]) for r in rows]
        bottom = [0.0] * len(rows)
        for term in terms:
            vals = [float(r[term]) for r in rows]
            ax.bar(mus, vals, bottom=bottom, label=term.replace("_area", ""))
            bottom = [b + v for b, v in zip(bottom, vals)]
        ax.set_title(f"{act.upper()} {size}x{size}")
        ax.set_xlabel("group size mu")
        ax.set_ylabel("area (normalised)")
    axes[0].legend()
    fig.tight_layout()
    fig.savefig(os.path.join(outdir, "area_vs_mu.png"), dpi=150)


def efficiency(exe, outdir, sizes):
    fig, ax = plt.subplots(figsize=(5, 4))
    for act in ("int8", "fp16"):
        rows = tlut_csv(exe, outdir, f"efficiency_{act}", "efficiency", "--act", act, "--sizes", sizes)
        ax.plot([int(r["size"]) for r in rows], [float(r["efficiency"]) for r in rows], marker="o", label=act)
    ax.set_xlabel("square tile size n = m")
    ax.set_ylabel("throughput per area")
    ax.legend()
    fig.tight_layout()
    fig.savefig(os.path.join(outdir, "efficiency.png"), dpi=150)


def geometry(exe, outdir, size):
    for act in ("int8", "fp16"):
        rows = tlut_csv(exe, outdir, f"geometry_{act}", "geometry", "--act", act, "--size", str(size))
        fig, ax = plt.subplots(figsize=(5, 4))
        pts = ax.scatter([int(r["n"]) for r in rows], [int(r["m"]) for r in rows],
                         c=[float(r["delta"]) for r in rows], cmap="RdYlGn")
        best = next(r for r in rows if r["argmin"] == "1")
        ax.scatter([int(best["n"])], [int(best["m"])], marker="*", s=200, c="black", label="best")
        ax.set_xscale("log", base=2)
        ax.set_yscale("log", base=2)
        ax.set_xlabel("n = L * mu")
        ax.set_ylabel("m = K")
        ax.set_title(f"{act.upper()} n*m ~ {size}")
        fig.colorbar(pts, label="area/throughput saving vs square")
        ax.legend()
        fig.tight_layout()
        fig.savefig(os.path.join(outdir, f"geometry_{act}.png"), dpi=150)


def sota(exe, outdir):
    rows = tlut_csv(exe, outdir, "sota", "compare")
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.bar([r["name"] for r in rows], [float(r["area_ratio"]) for r in rows])
    ax.axhline(1.0, color="black", linewidth=0.8)
    ax.set_ylabel("published / optimal modelled area")
    fig.tight_layout()
    fig.savefig(os.path.join(outdir, "sota.png"), dpi=150)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--tlut", default="build/tools/tlut/tlut")
    ap.add_argument("--out", default="figures")
    ap.add_argument("--size", type=int, default=32, help="square side for the per-mu breakdown")
    ap.add_argument("--sizes", default="8,16,32,48,64,96,128")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    area_vs_mu(args.tlut, args.out, args.size)
    efficiency(args.tlut, args.out, args.sizes)
    geometry(args.tlut, args.out, args.size * args.size)
    sota(args.tlut, args.out)


if __name__ == "__main__":
    main()
