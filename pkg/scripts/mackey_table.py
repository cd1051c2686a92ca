"""Both sides of the product/coproduct compatibility for Δ_n(p) · Δ_1(0),
for every label and every coproduct component."""

import argparse
from dataclasses import dataclass

from tlcat.cellmod import cell_labels
from tlcat.grothendieck import mackey_check


@dataclass
class Config:
    max_n: int = 8
    all_k: bool = False


def main(cfg: Config) -> list[dict]:
    rows = []
    for n in range(1, cfg.max_n + 1):
        for p in cell_labels(n):
            for k in (range(n + 2) if cfg.all_k else [n]):
                res = mackey_check(n, p, k)
                rows.append(
                    {
                        "n": n,
                        "p": p,
                        "k": k,
                        "left": res.pattern("left"),
                        "right": res.pattern("right"),
                        "difference": str(res.difference),
                    }
                )
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=Config.max_n)
    ap.add_argument("--all-k", action="store_true")
    a = ap.parse_args()
    print(f"{'n':>2} {'p':>2} {'k':>2}  {'left':<10} {'right':<10} right - left")
    for row in main(Config(a.max_n, a.all_k)):
        print(f"{row['n']:>2} {row['p']:>2} {row['k']:>2}  {str(row['left']):<10} {str(row['right']):<10} {row['difference']}")
