"""``yb``: verify structures, build Yang-Baxter operators, reproduce worked examples.

Exit status: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import algebras as A
from . import coalgebra as C
from . import racks as Rk
from . import references as ref
from . import ybe as Y
from .errors import InputError, NotACocycle, YBError
from .formats import (
    algebra_from_json_obj,
    coalgebra_from_json_obj,
    diff_to_json_obj,
    dumps,
    load_json,
    operator_from_json_obj,
    operator_to_json_obj,
    rack_from_json_obj,
    sha256_of,
)
from .linalg import Mat, scalar
from .report import VerificationReport
from .reproduce import TARGETS, Outcome, run_target

SLOW_BASE_DIM = 25

BUILTIN_ALGEBRAS = {
    "nilpotent3": A.nilpotent3,
    "octonion": A.octonion_3leibniz,
    "omni1": lambda: A.omni_lie(1),
    "omni2": lambda: A.omni_lie(2),
    "final2d": A.final_3leibniz_2d,
    "E1": lambda: A.two_dim_leibniz(1),
    "E2": lambda: A.two_dim_leibniz(2),
    "E3": lambda: A.two_dim_leibniz(3),
    "E4": lambda: A.two_dim_leibniz(4),
}

BUILTIN_RACKS = {
    "trivial3": lambda: Rk.trivial_rack(3),
    "dihedral3": lambda: Rk.dihedral_rack(3),
    "s3-conjugation": Rk.conjugation_rack,
    "s3-conjugation3": Rk.conjugation_3rack,
    "z4-module3": Rk.z4_module_3rack,
}

BUILDERS = ("central-leibniz", "central-extension", "linear-rack", "trilinear-rack", "tensor-square", "fundamental")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse already exits 2; keep the message terse
        self.print_usage(sys.stderr)
        print(f"yb: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _source(source: str, builtins: dict, reader):
    """Load ``builtin:NAME`` or a JSON file; returns (object, provenance)."""
    if source.startswith("builtin:"):
        name = source.split(":", 1)[1]
        if name not in builtins:
            raise InputError(f"unknown builtin {name!r}; choose from {', '.join(sorted(builtins))}")
        return builtins[name](), {"source": source}
    obj = load_json(source)
    try:
        return reader(obj), {"source": Path(source).name, "source_sha256": sha256_of(source)}
    except InputError as exc:
        raise InputError(f"{source}: {exc}") from exc


def _parse_subst(items) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise InputError(f"--subst expects name=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = scalar(v)
    return out


def _emit_report(rep: VerificationReport, as_json: bool) -> int:
    if as_json:
        sys.stdout.write(dumps(rep.to_json_obj()))
    else:
        print(rep.summary())
        for f in rep.failures[1:10]:
            print(f"  witness {f}")
    return 0 if rep.passed else 1


def _gate(base_dim: int, slow: bool) -> None:
    if base_dim > SLOW_BASE_DIM and not slow:
        raise InputError(f"operator on a {base_dim}-dim carrier is a slow check; pass --slow")


# ---------------------------------------------------------------- verbs

def cmd_verify(args) -> int:
    given = [x for x in (args.algebra, args.rack, args.coalgebra, args.operator) if x]
    if len(given) != 1:
        raise InputError("verify needs exactly one of --algebra, --rack, --coalgebra, --operator")
    if args.algebra:
        alg, _ = _source(args.algebra, BUILTIN_ALGEBRAS, algebra_from_json_obj)
        return _emit_report(A.verify(alg), args.json)
    if args.rack:
        r, _ = _source(args.rack, BUILTIN_RACKS, rack_from_json_obj)
        if isinstance(r, Rk.FiniteRack):
            rep = Rk.verify_finite_rack(r)
        else:
            rep = Rk.verify_finite_3rack(r)
        return _emit_report(rep, args.json)
    if args.coalgebra:
        s, _ = _source(args.coalgebra, {}, coalgebra_from_json_obj)
        rep = C.verify_coalgebra(s) if isinstance(s, C.Coalgebra) else C.verify_rack_struct(s)
        return _emit_report(rep, args.json)
    op, _ = _source(args.operator, {}, operator_from_json_obj)
    _gate(op.base_dim, args.slow)
    return _emit_report(Y.verify_operator(op), args.json)


def _omega_from_subst(alg, subst: dict) -> Mat:
    """``wIJ=value`` entries give ω(e_I, e_J) (1-based); missing entries are 0."""
    data = {}
    for k, v in subst.items():
        if not (k.startswith("w") and k[1:].isdigit() and len(k) == 3):
            raise InputError(f"central-extension takes cocycle values as wIJ=value, got {k!r}")
        i, j = int(k[1]) - 1, int(k[2]) - 1
        if not (0 <= i < alg.dim and 0 <= j < alg.dim):
            raise InputError(f"{k}: index outside 1..{alg.dim}")
        data[(i, j)] = v
    return Mat(alg.dim, alg.dim, data)


def build_operator(args) -> Y.YbeOperator:
    b = args.builder
    subst = _parse_subst(args.subst)
    prov: dict = {}
    if b in ("central-leibniz", "central-extension", "tensor-square", "fundamental"):
        if not args.algebra:
            raise InputError(f"builder {b} needs --algebra")
        alg, prov = _source(args.algebra, BUILTIN_ALGEBRAS, algebra_from_json_obj)
        want = 3 if b in ("tensor-square", "fundamental") else 2
        if alg.arity != want:
            raise InputError(f"builder {b} needs a {'3-Leibniz' if want == 3 else 'Leibniz'} algebra")
        if b == "central-leibniz":
            op = Y.solution_from_central_leibniz(alg)
        elif b == "central-extension":
            op = Y.solution_from_central_extension(alg, _omega_from_subst(alg, subst))
        elif b == "tensor-square":
            op = Y.solution_3lei_tensor_square(alg)
        else:
            op = Y.solution_3lei_fundamental(alg)
    elif b == "linear-rack":
        if args.rack:
            r, prov = _source(args.rack, BUILTIN_RACKS, rack_from_json_obj)
            if not isinstance(r, Rk.FiniteRack):
                raise InputError("linear-rack builder needs a binary rack")
            lr = C.linearize_rack(r)
        elif args.algebra:
            alg, prov = _source(args.algebra, BUILTIN_ALGEBRAS, algebra_from_json_obj)
            if alg.arity != 2:
                raise InputError("linear-rack builder needs a Leibniz algebra")
            lr = C.leibniz_linear_rack(alg)
        elif args.coalgebra:
            lr, prov = _source(args.coalgebra, {}, coalgebra_from_json_obj)
            if not isinstance(lr, C.LinearRackStruct):
                raise InputError("linear-rack builder needs a coalgebra file with op/tilde")
        else:
            raise InputError("linear-rack builder needs --rack, --algebra or --coalgebra")
        op = Y.solution_from_linear_rack(lr)
    elif b == "trilinear-rack":
        if args.rack:
            r, prov = _source(args.rack, BUILTIN_RACKS, rack_from_json_obj)
            if not isinstance(r, Rk.Finite3Rack):
                raise InputError("trilinear-rack builder needs a 3-rack")
            tr = C.linearize_3rack(r)
        elif args.algebra:
            alg, prov = _source(args.algebra, BUILTIN_ALGEBRAS, algebra_from_json_obj)
            if alg.arity != 3:
                raise InputError("trilinear-rack builder needs a 3-Leibniz algebra")
            tr = C.threeleibniz_trilinear_rack(alg)
        elif args.coalgebra:
            tr, prov = _source(args.coalgebra, {}, coalgebra_from_json_obj)
            if not isinstance(tr, C.TrilinearRackStruct):
                raise InputError("trilinear-rack builder needs a coalgebra file with t/ttilde")
        else:
            raise InputError("trilinear-rack builder needs --rack, --algebra or --coalgebra")
        op = Y.solution_from_trilinear_rack(tr)
    else:
        raise InputError(f"unknown builder {b!r}")
    return Y.YbeOperator(op.base_dim, op.matrix, {**op.provenance, **prov, "builder": b})


def _write(text: str, path: str | None) -> None:
    if path:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise InputError(f"cannot write {path}: {exc.strerror}") from exc
    else:
        sys.stdout.write(text)


def _render_operator(op: Y.YbeOperator, fmt: str) -> str:
    return op.matrix.to_csv() if fmt == "csv" else dumps(operator_to_json_obj(op))


def cmd_build(args) -> int:
    if not args.builder:
        raise InputError("build needs --builder")
    op = build_operator(args)
    _gate(op.base_dim, args.slow)
    rep = Y.verify_operator(op)
    print(rep.summary(), file=sys.stderr)
    _write(_render_operator(op, args.format), args.output)
    return 0 if rep.passed else 1


def cmd_compare(args) -> int:
    subst = _parse_subst(args.subst)
    computed, _ = _source(args.operator, {}, operator_from_json_obj)
    if args.reference in ref_targets():
        reference = ref_targets()[args.reference](subst)
    else:
        try:
            reference = Mat.from_json_obj(load_json(args.reference), subst=subst)
        except InputError as exc:
            raise InputError(f"{args.reference}: {exc}") from exc
    diff = Y.compare_to_reference(computed, reference)
    if args.json:
        sys.stdout.write(dumps(diff_to_json_obj(diff)))
    else:
        print(diff.summary())
        for d in diff.diffs[:20]:
            print(f"  ({d.row},{d.col}): computed {d.computed}, reference {d.reference}")
    return 0 if diff.match else 1


def ref_targets() -> dict:
    out = {"matrix-4x4": lambda s: ref.reference_4x4(), "matrix-25x25": lambda s: ref.reference_25x25()}
    for v in range(1, 5):
        out[f"matrix-9x9-E{v}"] = (lambda v: lambda s: ref.reference_9x9(v, {**ref.default_values(v), **s}))(v)
    return out


def _print_outcome(o: Outcome, as_json: bool) -> None:
    if as_json:
        return
    print(f"== {o.target}")
    for line in o.lines:
        print(line)
    print(f"{'OK' if o.ok else 'FAILED'} {o.target}")


def cmd_reproduce(args) -> int:
    names = list(TARGETS) if args.target == "all" else [args.target]
    subst = _parse_subst(args.subst)
    outcomes = [run_target(n, subst=subst, slow=args.slow) for n in names]
    if args.json:
        sys.stdout.write(dumps([{"target": o.target, "ok": o.ok, **o.record} for o in outcomes]))
    for o in outcomes:
        _print_outcome(o, args.json)
    return 0 if all(o.ok for o in outcomes) else 1


def cmd_export(args) -> int:
    subst = _parse_subst(args.subst)
    if args.target == "diff-25x25":
        o = run_target("matrix-25x25")
        if args.format != "json":
            raise InputError("diff reports export as JSON only")
        _write(dumps(diff_to_json_obj(o.artifact)), args.output)
        return 0
    if args.target not in TARGETS or not args.target.startswith("matrix-"):
        raise InputError(f"cannot export {args.target!r}; choose a matrix-* target or diff-25x25")
    if args.target == "matrix-25x25":
        op = Y.solution_3lei_fundamental(A.final_3leibniz_2d())
    else:
        op = run_target(args.target, subst=subst).artifact
    _write(_render_operator(op, args.format), args.output)
    return 0


# ---------------------------------------------------------------- entry point

def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="yb", description="Exact Yang-Baxter operators from racks, Leibniz and 3-Leibniz algebras.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def common(sp, inputs=True):
        if inputs:
            sp.add_argument("--algebra", metavar="FILE", help="algebra JSON, or builtin:NAME")
            sp.add_argument("--rack", metavar="FILE", help="rack JSON, or builtin:NAME")
            sp.add_argument("--coalgebra", metavar="FILE", help="coalgebra / linear or trilinear rack JSON")
        sp.add_argument("--subst", action="append", metavar="K=V", help="rational parameter value (repeatable)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--slow", action="store_true", help=f"allow carriers above dimension {SLOW_BASE_DIM}")

    v = sub.add_parser("verify", help="check the axioms of an algebra, rack, coalgebra or operator")
    common(v)
    v.add_argument("--operator", metavar="FILE", help="operator JSON")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("build", help="build a Yang-Baxter operator")
    common(b)
    b.add_argument("--builder", choices=BUILDERS, required=True)
    b.add_argument("-o", "--output", metavar="PATH")
    b.add_argument("--format", choices=("json", "csv"), default="json")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("compare", help="cell-level diff of an operator against a reference matrix")
    common(c, inputs=False)
    c.add_argument("operator", metavar="OPERATOR", help="operator JSON")
    c.add_argument("reference", metavar="REFERENCE", help="matrix JSON or a matrix-* target name")
    c.set_defaults(func=cmd_compare)

    r = sub.add_parser("reproduce", help="run a named worked example")
    common(r, inputs=False)
    r.add_argument("target", choices=[*TARGETS, "all"])
    r.set_defaults(func=cmd_reproduce)

    e = sub.add_parser("export", help="write a reproduced matrix or diff report")
    common(e, inputs=False)
    e.add_argument("target", metavar="TARGET", help="a matrix-* target or diff-25x25")
    e.add_argument("-o", "--output", metavar="PATH")
    e.add_argument("--format", choices=("json", "csv"), default="json")
    e.set_defaults(func=cmd_export)
    return p


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotACocycle as exc:
        print(f"FAIL {exc}", file=sys.stderr)
        return 1
    except InputError as exc:
        print(f"yb: input error: {exc}", file=sys.stderr)
        return 2
    except YBError as exc:
        print(f"FAIL {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        sys.stdout = open(os.devnull, "w")
        return 0


if __name__ == "__main__":
    raise SystemExit(main())
