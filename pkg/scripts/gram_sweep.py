"""Gram determinants of every cell module up to a size bound, with the δ
values in a small rational grid where some determinant vanishes."""

import argparse
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from tlcat.cellmod import cell_labels, gram_det, radical_dim


@dataclass
class Config:
    max_n: int = 8
    grid: list[str] = field(default_factory=lambda: ["-2", "-1", "0", "1", "2", "3", "1/2"])
    json: bool = False


def main(cfg: Config) -> dict:
    rows = []
    for n in range(cfg.max_n + 1):
        for r in cell_labels(n):
            det = gram_det(n, r)
            zeros = [q for q in cfg.grid if det(Fraction(q)) == 0]
            rows.append(
                {
                    "n": n,
                    "r": r,
                    "det": str(det),
                    "vanishes_at": zeros,
                    "radical": {q: radical_dim(n, r, Fraction(q)) for q in zeros},
                }
            )
    return {"config": asdict(cfg), "rows": rows}


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=Config.max_n)
    p.add_argument("--grid", nargs="*", default=None)
    p.add_argument("--json", action="store_true")
    a = p.parse_args()
    cfg = Config(a.max_n, a.grid if a.grid is not None else Config().grid, a.json)
    out = main(cfg)
    if cfg.json:
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        for row in out["rows"]:
            zeros = ", ".join(f"δ={q}: rad {row['radical'][q]}" for q in row["vanishes_at"]) or "-"
            print(f"Δ_{row['n']}({row['r']})  det = {row['det']:<40} zeros: {zeros}")
