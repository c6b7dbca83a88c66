#!/usr/bin/env python3
"""Plot the f''''(r) region for one frame: traced boundary, brute-force hull and a few member disks."""
import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from schwarz_regions.cli import parse_complex
from schwarz_regions.dieudonne import CanonicalInstance, disk_order
from schwarz_regions.region import BoundaryTag, brute_force_region, envelope_frame, trace_boundary


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r", type=float, default=0.5)
    ap.add_argument("--s", type=float, default=0.2)
    ap.add_argument("--lambda", dest="lam", type=parse_complex, default=0.3 + 0.2j)
    ap.add_argument("--mu", type=parse_complex, default=-0.4 + 0.1j)
    ap.add_argument("--n", type=int, default=256)
    ap.add_argument("--resolution", type=int, default=32)
    ap.add_argument("--out", default="region.png")
    args = ap.parse_args()

    frame = envelope_frame(args.r, args.s, args.lam, args.mu)
    b = trace_boundary(frame, args.n)
    bf = brute_force_region(args.r, args.s, args.lam, args.mu, args.resolution)

    fig, ax = plt.subplots(figsize=(6, 6))
    t = np.linspace(0, 2 * np.pi, 200)
    for tau in 0.9 * np.exp(2j * np.pi * np.arange(12) / 12):
        d = disk_order(4, CanonicalInstance(args.r, args.s, args.lam, args.mu, tau))
        c = d.center + d.radius * np.exp(1j * t)
        ax.plot(c.real, c.imag, color="0.8", lw=0.6)
    h = np.append(bf.hull, bf.hull[:1])
    ax.plot(h.real, h.imag, color="tab:red", lw=1, label=f"hull, grid {args.resolution}")
    g = np.append(b.gammas, b.gammas[:1])
    ax.plot(g.real, g.imag, color="tab:blue", lw=1.5, label="traced boundary")
    env = np.array([p.gamma for p in b.points if p.tag is BoundaryTag.ENVELOPE])
    if env.size:
        ax.plot(env.real, env.imag, ".", color="tab:green", ms=3, label="envelope branch")
    ax.set_aspect("equal")
    ax.set_xlabel("Re f''''(r)")
    ax.set_ylabel("Im f''''(r)")
    ax.set_title(f"r={args.r}, s={args.s}, lambda={args.lam}, mu={args.mu}")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
