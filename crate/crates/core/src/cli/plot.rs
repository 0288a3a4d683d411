//! Companion matplotlib script for a sweep CSV: a regime atlas in the
//! `(s, v)` plane and the residual of each method against the numeric value.

pub fn plot_script(csv_path: &str) -> String {
    TEMPLATE.replace(
        "@CSV@",
        &csv_path.replace('\\', "\\\\").replace('"', "\\\""),
    )
}

const TEMPLATE: &str = r#"#!/usr/bin/env python3
"""Regime atlas and residual curves for a sinegap sweep."""
import csv
import math
import sys

import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "@CSV@"
with open(path, newline="") as f:
    rows = [r for r in csv.DictReader(f) if r["ln_D"]]

def num(x):
    return float(x) if x not in ("", "inf", "nan") else math.inf

fig, (atlas, resid) = plt.subplots(1, 2, figsize=(12, 5))

s_vals = sorted({num(r["s"]) for r in rows if num(r["s"]) > 1.0})
if s_vals:
    lo, hi = min(s_vals), max(s_vals)
    grid = [lo + (hi - lo) * i / 200 for i in range(201)] if hi > lo else [lo]
    for k in range(6):
        atlas.plot(grid, [s - 0.25 * (2 * k + 1) * math.log(s) for s in grid],
                   "k-." if k else "k-", lw=0.8, label="Stokes curves" if k == 1 else None)
    atlas.plot(grid, [s - 0.25 * math.log(s) ** (4 / 3) for s in grid], "g-", label="elliptic edge")
    atlas.plot(grid, [s ** (1 / 3) for s in grid], "b--", label="v = s^(1/3)")
    atlas.plot(grid, grid, "r:", lw=0.8, label="v = s")

regimes = sorted({r["regime"] for r in rows})
for i, reg in enumerate(regimes):
    pts = [(num(r["s"]), num(r["v"])) for r in rows if r["regime"] == reg and math.isfinite(num(r["v"]))]
    if pts:
        atlas.scatter(*zip(*pts), s=12, color=f"C{i}", label=reg)
atlas.set_xlabel("s")
atlas.set_ylabel("v")
atlas.set_title("regime atlas")
atlas.legend(fontsize=7)

for method in sorted({r["method"] for r in rows if r["residual_vs_numeric"]}):
    pts = sorted((num(r["s"]), num(r["v"]), float(r["residual_vs_numeric"]))
                 for r in rows if r["method"] == method and r["residual_vs_numeric"])
    for v in sorted({p[1] for p in pts}):
        xs = [p[0] for p in pts if p[1] == v]
        ys = [p[2] for p in pts if p[1] == v]
        resid.plot(xs, ys, "o-", ms=3, label=f"{method}, v={v:g}")
resid.axhline(0.0, color="k", lw=0.5)
resid.set_xlabel("s")
resid.set_ylabel("ln D(method) - ln D(numeric)")
resid.set_title("residuals")
resid.legend(fontsize=7)

fig.tight_layout()
out = path.rsplit(".", 1)[0] + ".png"
fig.savefig(out, dpi=150)
print(out)
"#;
