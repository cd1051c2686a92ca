"""Compare the structure-constant methods over all labels with m + n below a
bound, and list where the printed closed condition goes wrong."""

import argparse
import json
import time
from dataclasses import asdict, dataclass

from tlcat.cellmod import cell_labels
from tlcat.grothendieck import (
    restriction_dimension_check,
    struct_const_closed,
    struct_const_hom,
    struct_const_printed,
    struct_const_walled,
)


@dataclass
class Config:
    max_total: int = 10
    hom_max_total: int = 7
    dim_max_total: int = 12
    json: bool = False


def _labels(total):
    for m in range(total + 1):
        n = total - m
        for p in cell_labels(m):
            for q in cell_labels(n):
                for r in cell_labels(total):
                    yield m, n, p, q, r


def main(cfg: Config) -> dict:
    t0 = time.perf_counter()
    compared = disagreements = 0
    printed_wrong = []
    for total in range(cfg.max_total + 1):
        for args in _labels(total):
            closed = struct_const_closed(*args)
            values = {closed, struct_const_walled(*args)}
            if total <= cfg.hom_max_total:
                values.add(struct_const_hom(*args))
            compared += 1
            disagreements += len(values) > 1
            if struct_const_printed(*args) != closed:
                printed_wrong.append(list(args))
    dim_failures = [
        (m, total - m, r)
        for total in range(cfg.dim_max_total + 1)
        for m in range(total + 1)
        for r in cell_labels(total)
        if len(set(restriction_dimension_check(m, total - m, r))) > 1
    ]
    return {
        "config": asdict(cfg),
        "compared": compared,
        "disagreements": disagreements,
        "printed_condition_wrong": len(printed_wrong),
        "printed_examples": printed_wrong[:10],
        "dimension_identity_failures": dim_failures,
        "seconds": round(time.perf_counter() - t0, 2),
    }


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-total", type=int, default=Config.max_total)
    p.add_argument("--hom-max-total", type=int, default=Config.hom_max_total)
    p.add_argument("--dim-max-total", type=int, default=Config.dim_max_total)
    p.add_argument("--json", action="store_true")
    a = p.parse_args()
    out = main(Config(a.max_total, a.hom_max_total, a.dim_max_total, a.json))
    if a.json:
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        print(f"compared {out['compared']} constants, {out['disagreements']} disagreements")
        print(f"printed condition differs in {out['printed_condition_wrong']} cases, e.g. {out['printed_examples'][:3]}")
        print(f"dimension identity failures: {len(out['dimension_identity_failures'])}")
        print(f"{out['seconds']}s")
