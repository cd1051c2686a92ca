"""Command-line entry point: ``tlcat <command> ...``.

Exit codes: 0 success, 1 a checked invariant failed, 2 bad usage or parameters.
All JSON output is produced with sorted keys so repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

from . import cellmod, diagrams, grothendieck, homsolve, tower
from .coeffring import Field, make_field, scalar_to_json
from .errors import InvariantViolation

MAX_N_LIMIT = 14
DEFAULT_MAX_N = 10


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class SessionConfig:
    delta_mode: str = "generic"  # "generic" or a rational "p/q"
    output: str = "ascii"  # ascii | json | both
    max_n: int = DEFAULT_MAX_N

    def __post_init__(self):
        if not 0 <= self.max_n <= MAX_N_LIMIT:
            raise UsageError(f"max_n must lie in [0, {MAX_N_LIMIT}], got {self.max_n}")
        if self.output not in ("ascii", "json", "both"):
            raise UsageError(f"unknown output mode {self.output!r}")

    @property
    def field(self) -> Field:
        return make_field(None if self.delta_mode == "generic" else self.delta_mode)

    @classmethod
    def from_env(cls, delta_mode: str = "generic", output: str = "ascii") -> "SessionConfig":
        raw = os.environ.get("TLCAT_MAX_N")
        if raw is None:
            return cls(delta_mode, output)
        try:
            bound = int(raw)
        except ValueError:
            raise UsageError(f"TLCAT_MAX_N is not an integer: {raw!r}") from None
        return cls(delta_mode, output, bound)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2)


def _guard(cfg: SessionConfig, *sizes: int) -> None:
    for s in sizes:
        if s < 0:
            raise UsageError(f"negative size {s}")
        if s > cfg.max_n:
            raise UsageError(f"size {s} exceeds the sweep bound {cfg.max_n} (set TLCAT_MAX_N)")


def _label(n: int, r: int) -> None:
    if r < 0 or 2 * r > n:
        raise UsageError(f"invalid cell label r={r} for n={n}")


class Output:
    def __init__(self, cfg: SessionConfig):
        self.cfg = cfg
        self.lines: list[str] = []

    def emit(self, text: Optional[str], payload) -> None:
        if self.cfg.output in ("ascii", "both") and text is not None:
            self.lines.append(text)
        if self.cfg.output in ("json", "both") or text is None:
            self.lines.append(dumps(payload))

    def flush(self, stream) -> None:
        if self.lines:
            stream.write("\n".join(self.lines) + "\n")


# -- verify_all ---------------------------------------------------------------------


def _suite(name: str, fn: Callable[[], Optional[object]]) -> dict:
    """Run one suite; ``fn`` returns None on success or a witness."""
    try:
        witness = fn()
    except InvariantViolation as exc:
        witness = {"error": str(exc), "witness": exc.witness}
    return {"suite": name, "pass": witness is None, "witness": witness}


def _diagram_suite(max_n: int):
    for n in range(max_n + 1):
        got = len(diagrams.enumerate_diagrams(n, n))
        if got != diagrams.catalan(n):
            return {"n": n, "count": got}
    for n in range(min(max_n, 4) + 1):
        basis = diagrams.enumerate_diagrams(n, n)
        for a in basis:
            if diagrams.involution(diagrams.involution(a)) != a:
                return {"involution": a.to_json()}
            for b in basis:
                ab = diagrams.mul(a, b)
                for c in basis:
                    left = diagrams.mul(ab.diagram, c)
                    bc = diagrams.mul(b, c)
                    right = diagrams.mul(a, bc.diagram)
                    if (left.diagram, left.power + ab.power) != (right.diagram, right.power + bc.power):
                        return {"associativity": [a.to_json(), b.to_json(), c.to_json()]}
    return None


def _cell_suite(max_n: int, field: Field):
    from math import comb

    for n in range(max_n + 1):
        for r in cellmod.cell_labels(n):
            want = comb(n, r) - (comb(n, r - 1) if r else 0)
            if cellmod.cell_dim(n, r) != want:
                return {"n": n, "r": r, "dim": cellmod.cell_dim(n, r)}
            if not cellmod.gram_matrix(n, r, field).transpose() == cellmod.gram_matrix(n, r, field):
                return {"n": n, "r": r, "gram": "not symmetric"}
    if field.generic:
        for n in range(max_n + 1):
            cert = cellmod.is_semisimple(n, field)
            if not cert.holds:
                return cert.to_json()
    return None


def _action_suite(max_n: int, field: Field):
    for n in range(min(max_n, 5) + 1):
        for r in cellmod.cell_labels(n):
            bad = homsolve.audit_action(homsolve.cell_rep(n, r, field))
            if bad is not None:
                return {"n": n, "r": r, "failure": repr(bad)}
    return None


def _branching_suite(max_n: int, field: Field):
    for n in range(1, min(max_n, 5) + 1):
        for p in cellmod.cell_labels(n):
            if tower.res_cell_solver(n, p, field) != tower.res_cell(n, p):
                return {"op": "res", "n": n, "p": p}
            if n < min(max_n, 5) and tower.ind_cell_solver(n, p, field) != tower.ind_cell(n, p):
                return {"op": "ind", "n": n, "p": p}
    return None


def _tower_suite(max_n: int, field: Field):
    report = tower.tower_axioms(min(max_n, 5), field)
    if report["pass"]:
        return None
    return [r for r in report["reports"] if not r["pass"]][:3]


def _g0_suite(max_n: int, struct: Callable[..., int]):
    for total in range(max_n + 1):
        for m in range(total + 1):
            n = total - m
            for p in cellmod.cell_labels(m):
                for q in cellmod.cell_labels(n):
                    for r in cellmod.cell_labels(total):
                        a = struct(m, n, p, q, r)
                        b = grothendieck.struct_const_walled(m, n, p, q, r)
                        if a != b:
                            return {"m": m, "n": n, "p": p, "q": q, "r": r, "checked": a, "walled": b}
            for r in cellmod.cell_labels(total):
                got, want = grothendieck.restriction_dimension_check(m, n, r)
                if got != want:
                    return {"m": m, "n": n, "r": r, "sum": got, "dim": want}
    grade = min(max_n, 3)
    for check in (grothendieck.check_associativity, grothendieck.check_coassociativity, grothendieck.check_unit_counit):
        bad = check(grade)
        if bad is not None:
            return {"check": check.__name__, "witness": str(bad)}
    return None


MUTATIONS = {
    "printed-structure-constant": grothendieck.struct_const_printed,
}


def verify_all(max_n: int, field: Optional[Field] = None, mutation: Optional[str] = None) -> dict:
    """Run every invariant suite up to ``max_n``.

    ``mutation`` swaps a known-wrong structure-constant formula into the
    Grothendieck suite; the report must then fail with a witness.
    """
    if not 0 <= max_n <= MAX_N_LIMIT:
        raise UsageError(f"max_n must lie in [0, {MAX_N_LIMIT}]")
    if mutation is not None and mutation not in MUTATIONS:
        raise UsageError(f"unknown mutation {mutation!r}; choose from {sorted(MUTATIONS)}")
    field = field or make_field(None)
    struct = MUTATIONS.get(mutation, grothendieck.struct_const_closed)
    suites = [
        _suite("diagrams", lambda: _diagram_suite(max_n)),
        _suite("cellmod", lambda: _cell_suite(max_n, field)),
        _suite("homsolve", lambda: _action_suite(max_n, field)),
        _suite("tower", lambda: _tower_suite(max_n, field) if field.generic else None),
        _suite("branching", lambda: _branching_suite(max_n, field) if field.generic else None),
        _suite("grothendieck", lambda: _g0_suite(max_n, struct)),
    ]
    return {
        "max_n": max_n,
        "mode": field.label,
        "mutation": mutation,
        "pass": all(s["pass"] for s in suites),
        "suites": suites,
    }


# -- command handlers -----------------------------------------------------------------


def cmd_diagrams_enumerate(args, cfg: SessionConfig, out: Output) -> int:
    _guard(cfg, args.bot, args.top)
    ds = diagrams.enumerate_diagrams(args.bot, args.top)
    payload = {"bot": args.bot, "top": args.top, "count": len(ds), "diagrams": [d.to_json() for d in ds]}
    text = [f"{len(ds)} diagram(s) {args.bot} -> {args.top}"]
    if args.render:
        for i, d in enumerate(ds):
            text.append(f"[{i}]")
            text.append(diagrams.render_ascii(d))
    out.emit("\n".join(text), payload)
    return 0


def _load_diagram(text: str) -> diagrams.PlanarDiagram:
    try:
        return diagrams.PlanarDiagram.from_json(json.loads(text))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot parse diagram JSON: {exc}") from None


def cmd_diagrams_compose(args, cfg: SessionConfig, out: Output) -> int:
    f = _load_diagram(args.lower)
    g = _load_diagram(args.upper)
    if f.top != g.bot:
        raise UsageError(f"arity mismatch: lower has {f.top} top points, upper has {g.bot} bottom points")
    res = diagrams.compose(f, g)
    payload = {"loops": res.power, "diagram": res.diagram.to_json()}
    text = f"δ^{res.power} ·\n" + diagrams.render_ascii(res.diagram)
    out.emit(text, payload)
    return 0


def cmd_gram(args, cfg: SessionConfig, out: Output) -> int:
    _guard(cfg, args.n)
    _label(args.n, args.r)
    field = cfg.field
    if args.det:
        value = cellmod.gram_det(args.n, args.r) if field.generic else cellmod.gram_det_at(args.n, args.r, field.q)
        text = str(value)
        out.emit(text, {"n": args.n, "r": args.r, "mode": field.label, "det": text})
        return 0
    if args.radical:
        g = cellmod.gram_matrix(args.n, args.r, field)
        from .linalg import matrix_rank

        rad = g.nrows - matrix_rank(g, field)
        out.emit(str(rad), {"n": args.n, "r": args.r, "mode": field.label, "radical_dim": rad})
        return 0
    payload = cellmod.gram_to_json(args.n, args.r, field)
    g = cellmod.gram_matrix(args.n, args.r, field)
    rows = ["  ".join(str(v) for v in row) for row in g.to_dense(field.zero)]
    out.emit("\n".join(rows), payload)
    return 0


def cmd_hom(args, cfg: SessionConfig, out: Output) -> int:
    field = cfg.field
    try:
        M = homsolve.parse_spec(args.source, field)
        N = homsolve.parse_spec(args.target, field)
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from None
    if M.algebra.key != N.algebra.key:
        raise UsageError(f"source and target live over different algebras ({args.source} vs {args.target})")
    _guard(cfg, *[k for k in _sizes(M.algebra.key)])
    space = homsolve.hom_space(M, N)
    for H in space.basis:
        if not homsolve.is_intertwiner(H, M, N):
            raise InvariantViolation("solver returned a non-intertwiner", witness=args.source)
    payload = {
        "source": args.source,
        "target": args.target,
        "mode": field.label,
        "dim": space.dim,
        "basis": [[[scalar_to_json(v) for v in row] for row in H.to_dense(field.zero)] for H in space.basis],
    }
    out.emit(f"dim Hom = {space.dim}", payload)
    return 0


def _sizes(key) -> list[int]:
    if isinstance(key, int):
        return [key]
    if isinstance(key, tuple):
        return [s for part in key for s in _sizes(part)]
    return []


def cmd_tower_branch(args, cfg: SessionConfig, out: Output) -> int:
    _guard(cfg, args.n + (1 if args.op == "ind" else 0))
    _label(args.n, args.p)
    if args.op == "res" and args.n == 0:
        raise UsageError("cannot restrict from level 0")
    rule = (tower.res_cell if args.op == "res" else tower.ind_cell)(args.n, args.p)
    payload = {"op": args.op, "n": args.n, "p": args.p, "rule": rule.to_json()}
    text = f"{args.op.capitalize()} Δ_{args.n}({args.p}) = {rule}"
    if args.solver:
        solver = (tower.res_cell_solver if args.op == "res" else tower.ind_cell_solver)(args.n, args.p, cfg.field)
        payload["solver"] = solver.to_json()
        payload["agree"] = solver == rule
        text += f"\nsolver: {solver} ({'agrees' if solver == rule else 'DISAGREES'})"
        out.emit(text, payload)
        return 0 if solver == rule else 1
    out.emit(text, payload)
    return 0


def cmd_tower_axioms(args, cfg: SessionConfig, out: Output) -> int:
    _guard(cfg, args.max_n)
    if not cfg.field.generic:
        raise UsageError("tower axioms are checked at generic δ only")
    report = tower.tower_axioms(args.max_n, cfg.field)
    failed = [r for r in report["reports"] if not r["pass"]]
    text = f"{len(report['reports'])} checks, {len(failed)} failed"
    out.emit(text, report)
    return 0 if report["pass"] else 1


def cmd_g0_product(args, cfg: SessionConfig, out: Output) -> int:
    _guard(cfg, args.m + args.n)
    _label(args.m, args.p)
    _label(args.n, args.q)
    if args.method == "hom" and args.m + args.n > 8:
        raise UsageError("the hom method is limited to m + n <= 8")
    method = "all" if args.method == "all" else args.method
    vec = grothendieck.product(grothendieck.G0Vector.cell(args.m, args.p), grothendieck.G0Vector.cell(args.n, args.q), method)
    payload = {"m": args.m, "p": args.p, "n": args.n, "q": args.q, "method": args.method, "product": vec.to_json()}
    out.emit(f"[Δ_{args.m}({args.p})]·[Δ_{args.n}({args.q})] = {vec}", payload)
    return 0


def cmd_g0_coproduct(args, cfg: SessionConfig, out: Output) -> int:
    _guard(cfg, args.n)
    _label(args.n, args.r)
    t = grothendieck.coproduct(grothendieck.G0Vector.cell(args.n, args.r))
    out.emit(f"Δ([Δ_{args.n}({args.r})]) = {t}", {"n": args.n, "r": args.r, "coproduct": t.to_json()})
    return 0


def cmd_g0_mackey(args, cfg: SessionConfig, out: Output) -> int:
    _guard(cfg, args.n + 1)
    _label(args.n, args.p)
    res = grothendieck.mackey_check(args.n, args.p, args.k)
    text = (
        f"left  {res.pattern('left')}\n"
        f"right {res.pattern('right')}\n"
        f"right - left = {res.difference}"
    )
    out.emit(text, res.to_json())
    return 0


def cmd_g0_series(args, cfg: SessionConfig, out: Output) -> int:
    _guard(cfg, args.m + args.n)
    _label(args.m + args.n, args.r)
    layers = grothendieck.composition_series(args.m, args.n, args.r)
    payload = {
        "m": args.m,
        "n": args.n,
        "r": args.r,
        "total": sum(l.layer_dim for l in layers),
        "layers": [l.to_json() for l in layers],
    }
    if args.render:
        payload["diagrams"] = {
            str(l.triple): [w.to_json()["caps"] for w in l.diagrams] for l in layers
        }
    lines = [f"{'layer':>6}  {'(s,l_m,l_n)':<12} {'dim':>4}  quotient"]
    for i, l in enumerate(layers):
        t = l.triple
        lines.append(f"{i:>6}  {str(t):<12} {l.layer_dim:>4}  Δ_{args.m}({t.l_m})⊗Δ_{args.n}({t.l_n})")
        if args.render:
            for w in l.diagrams:
                lines.append(w.render())
    lines.append(f"total {payload['total']} = dim Δ_{args.m + args.n}({args.r}) = {cellmod.cell_dim(args.m + args.n, args.r)}")
    out.emit("\n".join(lines), payload)
    return 0


def cmd_verify(args, cfg: SessionConfig, out: Output) -> int:
    _guard(cfg, args.max_n)
    report = verify_all(args.max_n, cfg.field, args.mutation)
    lines = [f"{s['suite']:<14} {'PASS' if s['pass'] else 'FAIL'}" for s in report["suites"]]
    out.emit("\n".join(lines), report)
    return 0 if report["pass"] else 1


GOLDEN = {
    "diagrams_2_2.json": ["diagrams", "enumerate", "--bot", "2", "--top", "2"],
    "diagrams_0_2.json": ["diagrams", "enumerate", "--bot", "0", "--top", "2"],
    "gram_4_1.json": ["gram", "--n", "4", "--r", "1"],
    "gram_det_3_1.json": ["gram", "--n", "3", "--r", "1", "--det"],
    "tower_ind_4_1.json": ["tower", "ind", "--n", "4", "--p", "1"],
    "g0_product_4_1_3_1.json": ["g0", "product", "--m", "4", "--p", "1", "--n", "3", "--q", "1"],
    "g0_coproduct_4_1.json": ["g0", "coproduct", "--n", "4", "--r", "1"],
    "g0_mackey_4_1.json": ["g0", "mackey", "--n", "4", "--p", "1"],
    "g0_series_4_3_2.json": ["g0", "series", "--m", "4", "--n", "3", "--r", "2"],
}


def cmd_golden(args, cfg: SessionConfig, out: Output) -> int:
    """Regenerate (or with --check, compare against) the golden JSON corpus."""
    root = Path(args.dir)
    mismatched = []
    for name, argv in sorted(GOLDEN.items()):
        text = _capture(argv + ["--json"])
        path = root / name
        if args.check:
            if not path.exists() or path.read_text(encoding="utf-8") != text:
                mismatched.append(name)
        else:
            root.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
    payload = {"dir": str(root), "files": sorted(GOLDEN), "mismatched": mismatched, "check": args.check}
    verb = "checked" if args.check else "wrote"
    out.emit(f"{verb} {len(GOLDEN)} files, {len(mismatched)} mismatched", payload)
    return 1 if mismatched else 0


def _capture(argv: list[str]) -> str:
    import io

    buf = io.StringIO()
    code = run(argv, stdout=buf, stderr=io.StringIO())
    if code != 0:
        raise InvariantViolation(f"golden command failed: {' '.join(argv)}", witness=code)
    return buf.getvalue()


# -- parser ---------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--delta", metavar="P/Q", help="specialize δ to this rational")
    mode.add_argument("--generic", action="store_true", help="work over Q(δ) (default)")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--both", action="store_true", help="emit text followed by JSON")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="tlcat", description="Exact computations in the Temperley-Lieb category.")
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("diagrams", help="planar diagrams").add_subparsers(dest="action", required=True)
    e = d.add_parser("enumerate", parents=[common])
    e.add_argument("--bot", type=int, required=True)
    e.add_argument("--top", type=int, required=True)
    e.add_argument("--render", action="store_true")
    e.set_defaults(handler=cmd_diagrams_enumerate)
    c = d.add_parser("compose", parents=[common], help="stack UPPER on top of LOWER (JSON diagrams)")
    c.add_argument("--lower", required=True)
    c.add_argument("--upper", required=True)
    c.set_defaults(handler=cmd_diagrams_compose)

    g = sub.add_parser("gram", parents=[common], help="Gram matrix of a cell module")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--r", type=int, required=True)
    what = g.add_mutually_exclusive_group()
    what.add_argument("--det", action="store_true")
    what.add_argument("--radical", action="store_true")
    g.set_defaults(handler=cmd_gram)

    h = sub.add_parser("hom", parents=[common], help="module homomorphisms")
    h.add_argument("--source", required=True, help="e.g. cell:4:1, reg:3, tensor(S,T), res(S,k,l)")
    h.add_argument("--target", required=True)
    h.set_defaults(handler=cmd_hom)

    t = sub.add_parser("tower", help="restriction, induction and tower axioms").add_subparsers(dest="action", required=True)
    for op in ("res", "ind"):
        tp = t.add_parser(op, parents=[common])
        tp.add_argument("--n", type=int, required=True)
        tp.add_argument("--p", type=int, required=True)
        tp.add_argument("--solver", action="store_true", help="cross-check with the intertwiner solver")
        tp.set_defaults(handler=cmd_tower_branch, op=op)
    ta = t.add_parser("axioms", parents=[common])
    ta.add_argument("--max-n", type=int, required=True)
    ta.set_defaults(handler=cmd_tower_axioms)

    z = sub.add_parser("g0", help="Grothendieck group operations").add_subparsers(dest="action", required=True)
    zp = z.add_parser("product", parents=[common])
    for name in ("m", "p", "n", "q"):
        zp.add_argument(f"--{name}", type=int, required=True)
    zp.add_argument("--method", choices=sorted(grothendieck.METHODS) + ["all"], default="walled")
    zp.set_defaults(handler=cmd_g0_product)
    zc = z.add_parser("coproduct", parents=[common])
    zc.add_argument("--n", type=int, required=True)
    zc.add_argument("--r", type=int, required=True)
    zc.set_defaults(handler=cmd_g0_coproduct)
    zm = z.add_parser("mackey", parents=[common])
    zm.add_argument("--n", type=int, required=True)
    zm.add_argument("--p", type=int, required=True)
    zm.add_argument("--k", type=int, default=None, help="coproduct component (default n)")
    zm.set_defaults(handler=cmd_g0_mackey)
    zs = z.add_parser("series", parents=[common])
    zs.add_argument("--m", type=int, required=True)
    zs.add_argument("--n", type=int, required=True)
    zs.add_argument("--r", type=int, required=True)
    zs.add_argument("--render", action="store_true")
    zs.set_defaults(handler=cmd_g0_series)

    v = sub.add_parser("verify", parents=[common], help="run every invariant suite")
    v.add_argument("--max-n", type=int, default=5)
    v.add_argument("--mutation", choices=sorted(MUTATIONS), default=None)
    v.set_defaults(handler=cmd_verify)

    gd = sub.add_parser("golden", parents=[common], help="regenerate the golden JSON corpus")
    gd.add_argument("--dir", default="golden")
    gd.add_argument("--check", action="store_true", help="compare instead of writing")
    gd.set_defaults(handler=cmd_golden)
    return parser


def run(argv: Optional[list[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors this way
        return int(exc.code or 0)
    try:
        output = "both" if args.both else ("json" if args.json else "ascii")
        cfg = SessionConfig.from_env(args.delta or "generic", output)
        cfg.field  # validate --delta early
        out = Output(cfg)
        code = args.handler(args, cfg, out)
    except InvariantViolation as exc:
        stderr.write(dumps({"error": "invariant violation", "message": str(exc), "witness": _jsonable(exc.witness)}) + "\n")
        return 1
    except (UsageError, ValueError, ZeroDivisionError) as exc:
        stderr.write(f"tlcat: error: {exc}\n")
        return 2
    out.flush(stdout)
    return code


def _jsonable(obj):
    try:
        json.dumps(obj)
        return obj
    except TypeError:
        return repr(obj)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
