"""Command-line front end.

Thin bindings only: every command parses arguments, calls the library,
and formats the result; no algebraic logic lives here. Exit codes are
stable: 0 success, 2 name not found, 3 parse error, 4 math error,
5 storage/IO error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from . import _expr, rotation
from .algebra import AlgebraDef, viz_hns
from .errors import (
    BuiltinProtected,
    DuplicateName,
    HcnsError,
    MathError,
    NotFound,
    ParseError,
    StorageError,
)
from .hcnumber import HNumber, NaturalForm, viz_in_a
from .ops import conjug, divis, in_add, in_multi, in_neg, in_sub, norma, scalar_mul, unit
from .registry import Registry, lib_hns
from .scalar import Scalar, coerce
from .transforms import (
    BasisTransform,
    dir_sum_n,
    export_iso_system,
    gen_iso,
    multi_dim,
    sys_izo,
    trans,
)

EXIT_OK = 0
EXIT_NOT_FOUND = 2
EXIT_PARSE = 3
EXIT_MATH = 4
EXIT_STORAGE = 5


@dataclass
class CliConfig:
    lib_path: str | None = None
    output_mode: str = "both"  # natural | list | both
    precision: int = 12

    def __post_init__(self):
        if self.output_mode not in ("natural", "list", "both"):
            raise ValueError(f"unknown output mode {self.output_mode!r}")
        if not 1 <= self.precision <= 17:
            raise ValueError("precision must be in 1..17")


def _format_scalar(value: Scalar, precision: int) -> str:
    if value.is_float:
        return f"{value.as_float():.{precision}g}"
    return value.render()


def _format_list(number: HNumber, precision: int) -> str:
    return "[" + ", ".join(_format_scalar(c, precision) for c in number.coeffs) + "]"


def _format_natural(form: NaturalForm, precision: int) -> str:
    if form.terms and form.terms[0][0].is_float:
        parts = []
        for c, i in form.terms:
            parts.append(f"{_format_scalar(c, precision)}*{form.basis}{i}")
        return " + ".join(parts).replace("+ -", "- ")
    return form.render()


def _print_result(number: HNumber, basis: str, config: CliConfig):
    if config.output_mode in ("list", "both"):
        print(f"list:    {_format_list(number, config.precision)}")
    if config.output_mode in ("natural", "both"):
        print(f"natural: {_format_natural(viz_in_a(number, basis), config.precision)}")


# ---------------------------------------------------------------------------
# Expression evaluation for `eval`
# ---------------------------------------------------------------------------

class _EvalContext:
    def __init__(self, algebra: AlgebraDef):
        self.algebra = algebra
        self.basis: str | None = None

    def note_basis(self, letters: str, pos: int):
        if self.basis is None:
            self.basis = letters
        elif self.basis != letters:
            raise ParseError(
                f"expression mixes bases {self.basis!r} and {letters!r}", pos
            )


def _eval_node(node: _expr.Node, ctx: _EvalContext):
    if isinstance(node, _expr.Num):
        return coerce(node.value)
    if isinstance(node, _expr.Name):
        m = _expr.BASIS_ELEMENT_RE.match(node.ident)
        if m:
            ctx.note_basis(m.group(1), node.pos)
            return HNumber.basis_vector(ctx.algebra.dim, int(m.group(2)))
        return Scalar.symbol(node.ident)
    if isinstance(node, _expr.Neg):
        v = _eval_node(node.operand, ctx)
        return in_neg(v) if isinstance(v, HNumber) else -v
    if isinstance(node, _expr.Pow):
        v = _eval_node(node.base, ctx)
        if isinstance(v, HNumber):
            raise ParseError("'^' applies to scalars only; spell out products", node.pos)
        return v ** node.exponent
    if isinstance(node, _expr.Call):
        args = [_eval_node(a, ctx) for a in node.args]
        if node.func == "unit" and not args:
            return unit(ctx.algebra)
        if node.func == "conj" and len(args) == 1 and isinstance(args[0], HNumber):
            return conjug(args[0], ctx.algebra)
        if node.func == "norm" and len(args) == 1 and isinstance(args[0], HNumber):
            return norma(args[0], ctx.algebra)
        raise ParseError(
            f"unknown function {node.func!r} (expected unit(), conj(x), norm(x))",
            node.pos,
        )
    if isinstance(node, _expr.BinOp):
        left = _eval_node(node.left, ctx)
        right = _eval_node(node.right, ctx)
        hn_l, hn_r = isinstance(left, HNumber), isinstance(right, HNumber)
        if node.op in "+-":
            if hn_l and hn_r:
                return in_add(left, right) if node.op == "+" else in_sub(left, right)
            if not hn_l and not hn_r:
                return left + right if node.op == "+" else left - right
            raise ParseError("cannot add scalars to hypercomplex numbers", node.pos)
        if node.op == "*":
            if hn_l and hn_r:
                return in_multi(left, right, ctx.algebra)
            if hn_l:
                return scalar_mul(right, left)
            if hn_r:
                return scalar_mul(left, right)
            return left * right
        # division: x / y solves y*z = x (left division)
        if hn_l and hn_r:
            return divis(left, right, ctx.algebra, side="left")
        if hn_l:
            return scalar_mul(Scalar.one() / right, left)
        if hn_r:
            raise ParseError("cannot divide a scalar by a hypercomplex number", node.pos)
        return left / right
    raise ParseError("unsupported construct in expression", getattr(node, "pos", None))


def eval_expression(text: str, algebra: AlgebraDef):
    ctx = _EvalContext(algebra)
    value = _eval_node(_expr.parse_expression(text, allow_calls=True), ctx)
    return value, (ctx.basis or "e")


# ---------------------------------------------------------------------------
# Angle and vector argument parsing
# ---------------------------------------------------------------------------

def _parse_angle(text: str) -> float:
    """Angles in radians; 'pi' is available (e.g. pi/3, 2*pi/3, -0.5)."""

    def ev(node: _expr.Node) -> float:
        if isinstance(node, _expr.Num):
            return float(node.value)
        if isinstance(node, _expr.Name):
            if node.ident == "pi":
                return math.pi
            raise ParseError(f"unknown name {node.ident!r} in angle", node.pos)
        if isinstance(node, _expr.Neg):
            return -ev(node.operand)
        if isinstance(node, _expr.Pow):
            return ev(node.base) ** node.exponent
        if isinstance(node, _expr.BinOp):
            a, b = ev(node.left), ev(node.right)
            return {"+": a + b, "-": a - b, "*": a * b, "/": a / b}[node.op]
        raise ParseError("unsupported construct in angle")

    return ev(_expr.parse_expression(text))


def _parse_vec3(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise ParseError(f"expected three comma-separated numbers, got {text!r}")
    try:
        x, y, z = (float(p) for p in parts)
    except ValueError as exc:
        raise ParseError(f"bad vector component in {text!r}") from exc
    return (x, y, z)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_list(registry: Registry, args, config: CliConfig) -> int:
    print(registry.render_all(), end="")
    return EXIT_OK


def cmd_show(registry: Registry, args, config: CliConfig) -> int:
    algebra = registry.search(args.name)
    print(f"{algebra.name}: dim {algebra.dim}")
    if algebra.params:
        print(f"params: {', '.join(p.name for p in algebra.params)}")
    if algebra.kind:
        print(f"kind: {algebra.kind}")
    if algebra.comment:
        print(f"comment: {algebra.comment}")
    print(viz_hns(algebra, args.basis))
    return EXIT_OK


def cmd_eval(registry: Registry, args, config: CliConfig) -> int:
    algebra = registry.search(args.algebra)
    value, basis = eval_expression(args.expr, algebra)
    if isinstance(value, HNumber):
        _print_result(value, basis, config)
    else:
        print(_format_scalar(value, config.precision))
    return EXIT_OK


def cmd_rotate(registry: Registry, args, config: CliConfig) -> int:
    if args.demo:
        point = rotation.DEMO_POINT
        specs = list(rotation.DEMO_SPECS)
    else:
        if args.angle1 is None:
            raise ParseError("--angle1 is required (or use --demo)")
        point = _parse_vec3(args.point)
        specs = [rotation.RotationSpec(_parse_vec3(args.axis1), _parse_angle(args.angle1))]
        if args.angle2 is not None:
            specs.append(
                rotation.RotationSpec(_parse_vec3(args.axis2), _parse_angle(args.angle2))
            )
    prec = config.precision

    def fmt(v) -> str:
        return "(" + ", ".join(f"{x:.{prec}g}" for x in v) + ")"

    quats = [rotation.quat_from_rotation(s) for s in specs]
    if len(specs) == 1:
        by_quat = rotation.rotate(point, quats[0])
    else:
        by_quat = rotation.rotate2(point, quats[0], quats[1])
    by_matrix = rotation.rotate_by_matrix(point, specs)
    deviation = max(abs(a - b) for a, b in zip(by_quat, by_matrix))
    print(f"point:            {fmt(point)}")
    for i, s in enumerate(specs, 1):
        print(f"rotation {i}:       angle {s.angle:.{prec}g} about {fmt(s.unit_axis())}")
    print(f"quaternion path:  {fmt(by_quat)}")
    print(f"matrix oracle:    {fmt(by_matrix)}")
    print(f"max deviation:    {deviation:.3g}")
    n_in = math.sqrt(sum(x * x for x in point))
    n_out = math.sqrt(sum(x * x for x in by_quat))
    print(f"length in/out:    {n_in:.{prec}g} / {n_out:.{prec}g}")
    if _is_demo_scenario(point, specs):
        claimed = rotation.DEMO_CLAIMED
        print(
            "note: a widely quoted result for this scenario, "
            f"{fmt(claimed)} (= 3*e2 + (sqrt(3)+1/2)*e3 + (sqrt(3)-1/2)*e4), "
            "violates length preservation "
            f"(squared length {sum(c * c for c in claimed):.4g} vs {n_in * n_in:.4g}) "
            "and is a typo in its source; the cross-validated value is printed above."
        )
    return EXIT_OK


def _is_demo_scenario(point, specs) -> bool:
    if tuple(point) != rotation.DEMO_POINT or len(specs) != 2:
        return False
    for got, want in zip(specs, rotation.DEMO_SPECS):
        if abs(got.angle - want.angle) > 1e-9:
            return False
        if max(abs(a - b) for a, b in zip(got.unit_axis(), want.unit_axis())) > 1e-9:
            return False
    return True


def cmd_dirsum(registry: Registry, args, config: CliConfig) -> int:
    parts = [registry.search(name) for name in args.names]
    result = dir_sum_n(parts, args.out)
    registry.add(args.out, result)
    print(f"added {args.out} (dim {result.dim})")
    print(viz_hns(result, "e"))
    return EXIT_OK


def cmd_double(registry: Registry, args, config: CliConfig) -> int:
    base = registry.search(args.name)
    by = registry.search(args.by) if args.by else base
    mode = {"comm": "commutative", "noncomm": "noncommutative"}[args.mode]
    result = multi_dim(base, by, "e", mode, args.out)
    registry.add(args.out, result)
    print(f"added {args.out} (dim {result.dim}, {mode})")
    print(viz_hns(result, "e"))
    return EXIT_OK


def cmd_trans(registry: Registry, args, config: CliConfig) -> int:
    algebra = registry.search(args.name)
    result = trans(algebra, args.s, args.t).renamed(args.out)
    registry.add(args.out, result)
    print(f"added {args.out} (e{args.s} <-> e{args.t})")
    print(viz_hns(result, "e"))
    return EXIT_OK


def _read_matrix_file(path: str) -> BasisTransform:
    from .scalar import parse_scalar

    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise StorageError(f"cannot read matrix file {path}: {exc}") from exc
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append([parse_scalar(cell) for cell in line.split(",")])
    if not rows:
        raise ParseError(f"matrix file {path} contains no rows")
    return BasisTransform(rows)


def cmd_geniso(registry: Registry, args, config: CliConfig) -> int:
    algebra = registry.search(args.name)
    transform = _read_matrix_file(args.matrix_file)
    result = gen_iso(transform, algebra, args.basis, name=args.out)
    registry.add(args.out, result)
    print(f"added {args.out} (basis change of {args.name})")
    print(viz_hns(result, args.basis))
    return EXIT_OK


def cmd_isosys(registry: Registry, args, config: CliConfig) -> int:
    a = registry.search(args.name1)
    b = registry.search(args.name2)
    system = sys_izo(a, b)
    text = export_iso_system(system)
    Path(args.out_file).write_text(text, encoding="utf-8")
    print(f"wrote {len(system.equations)} equations to {args.out_file}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hcns",
        description="Hypercomplex number systems: exact arithmetic over Cayley tables.",
    )
    parser.add_argument("--lib", help="algebra storage directory (overrides $HCNS_LIB)")
    parser.add_argument(
        "--output",
        choices=["natural", "list", "both"],
        default="both",
        help="how to print hypercomplex results (default: both)",
    )
    parser.add_argument(
        "--precision", type=int, default=12, help="digits for float printing (1..17)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list all algebras with their Cayley tables")

    p = sub.add_parser("show", help="show one algebra")
    p.add_argument("name")
    p.add_argument("--basis", default="e")

    p = sub.add_parser("eval", help="evaluate an expression over an algebra")
    p.add_argument("algebra")
    p.add_argument("expr")

    p = sub.add_parser("rotate", help="rotate a 3-vector by quaternions")
    p.add_argument("--point", default="1,2,3")
    p.add_argument("--axis1", default="0,1,0")
    p.add_argument("--angle1")
    p.add_argument("--axis2", default="1,0,0")
    p.add_argument("--angle2")
    p.add_argument("--demo", action="store_true", help="run the classic double-rotation scenario")

    p = sub.add_parser("dirsum", help="direct sum of algebras, stored under a new name")
    p.add_argument("names", nargs="+")
    p.add_argument("out")

    p = sub.add_parser("double", help="dimension product of an algebra with itself")
    p.add_argument("name")
    p.add_argument("mode", choices=["comm", "noncomm"])
    p.add_argument("out")
    p.add_argument("--by", help="other factor (default: the algebra itself)")

    p = sub.add_parser("trans", help="swap two basis elements")
    p.add_argument("name")
    p.add_argument("s", type=int)
    p.add_argument("t", type=int)
    p.add_argument("out")

    p = sub.add_parser("geniso", help="apply a basis-change matrix from a file")
    p.add_argument("name")
    p.add_argument("matrix_file")
    p.add_argument("out")
    p.add_argument("--basis", default="f")

    p = sub.add_parser("isosys", help="export the isomorphism equation system")
    p.add_argument("name1")
    p.add_argument("name2")
    p.add_argument("out_file")
    return parser


_COMMANDS = {
    "list": cmd_list,
    "show": cmd_show,
    "eval": cmd_eval,
    "rotate": cmd_rotate,
    "dirsum": cmd_dirsum,
    "double": cmd_double,
    "trans": cmd_trans,
    "geniso": cmd_geniso,
    "isosys": cmd_isosys,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; that code means "not found" here
        return EXIT_OK if exc.code in (0, None) else EXIT_PARSE
    try:
        config = CliConfig(
            lib_path=args.lib, output_mode=args.output, precision=args.precision
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        registry = lib_hns(config.lib_path)
        return _COMMANDS[args.command](registry, args, config)
    except NotFound as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_FOUND
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except MathError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH
    except (StorageError, DuplicateName, BuiltinProtected, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STORAGE
    except HcnsError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
