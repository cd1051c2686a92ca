"""Run the tower checks and the branching-rule cross-checks, writing a JSON
report (witnesses included) to a file."""

import argparse
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from tlcat.cellmod import cell_labels
from tlcat.tower import eq1_route, ind_cell, ind_cell_solver, res_cell, res_cell_solver, tower_axioms


@dataclass
class Config:
    max_n: int = 6
    out: str = "tower_report.json"


def main(cfg: Config) -> dict:
    t0 = time.perf_counter()
    report = tower_axioms(cfg.max_n)
    branching = []
    for n in range(1, cfg.max_n + 1):
        for p in cell_labels(n):
            branching.append(
                {
                    "n": n,
                    "p": p,
                    "res": res_cell_solver(n, p) == res_cell(n, p),
                    "ind": ind_cell_solver(n, p) == ind_cell(n, p),
                    "eq1": eq1_route(n, p) == ind_cell(n, p),
                }
            )
    report["branching"] = branching
    report["config"] = asdict(cfg)
    report["seconds"] = round(time.perf_counter() - t0, 2)
    return report


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=Config.max_n)
    ap.add_argument("--out", default=Config.out)
    a = ap.parse_args()
    cfg = Config(a.max_n, a.out)
    rep = main(cfg)
    Path(cfg.out).write_text(json.dumps(rep, indent=2, sort_keys=True), encoding="utf-8")
    ok = rep["pass"] and all(all(v for k, v in b.items() if k not in ("n", "p")) for b in rep["branching"])
    print(f"{len(rep['reports'])} axiom checks, {len(rep['branching'])} branching checks, all pass: {ok} -> {cfg.out}")
