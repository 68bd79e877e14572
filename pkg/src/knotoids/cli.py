"""Command-line interface.

Every diagram argument is a file path or an ``examples://<name>`` URI.
Failures print a single ``error: <Code>: <detail>`` line and exit with 2;
``verify-equal`` exits with 1 when the brackets differ.
"""

from __future__ import annotations

import argparse
import sys

from . import library
from .bracket import FLAVORS_FOR, Flavor, bracket_from_census, check_flavor, normalize_jones, state_weight
from .diagram import Diagram, check
from .errors import FlavorMismatch, KnotoidError
from .io import parse_diagram, serialize_diagram
from .mixed import pre_shift, to_h_mixed, to_o_mixed
from .states import StateEngine, census
from .svg import render_svg

EXAMPLES = "examples://"


def load(ref: str, *, strict: bool = True) -> Diagram:
    if ref.startswith(EXAMPLES):
        d = library.example(ref[len(EXAMPLES):])
        return check(d) if strict else d
    try:
        with open(ref, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise KnotoidError(f"cannot read {ref}: {exc.strerror}") from None
    return parse_diagram(text, strict=strict)


def _flavor(d: Diagram, name: str | None) -> Flavor:
    if name is None:
        return FLAVORS_FOR[d.kind][0]
    return check_flavor(d, name)


def _write(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_crossings(a) -> int:
    d = load(a.file, strict=False)
    for c in d.crossings:
        flag = c.over or "-"
        tail = " channel" if c.channel else ""
        print(f"{c.key} {flag} {c.kind}{tail}")
    return 0


def cmd_bracket(a) -> int:
    d = load(a.file)
    f = _flavor(d, a.flavor)
    print(bracket_from_census(census(d, jobs=a.jobs, seed=a.seed), f, d.kind))
    return 0


def cmd_jones(a) -> int:
    d = load(a.file)
    f = _flavor(d, a.flavor)
    print(normalize_jones(d, bracket_from_census(census(d, jobs=a.jobs, seed=a.seed), f, d.kind)))
    return 0


def cmd_states(a) -> int:
    d = load(a.file)
    f = _flavor(d, a.flavor)
    eng = StateEngine(d, seed=a.seed)
    for choice, s in eng.states():
        line = f"{choice or '-'} {s.census()}"
        if a.trace:
            line += f" weight={state_weight(s, f, d.kind)}"
        print(line)
    return 0


def cmd_translate(a) -> int:
    d = load(a.file)
    if a.to == "o-mixed":
        m = to_o_mixed(d)
    else:
        m = to_h_mixed(d)
    _, (dx, dy) = pre_shift(d)
    notes = (
        f"{a.to} translation; source surface {d.surface.value}",
        f"pre-shift {dx} {dy}",
    )
    _write(serialize_diagram(m, notes), a.output)
    return 0


def cmd_render(a) -> int:
    d = load(a.file, strict=False)
    _write(render_svg(d), a.output)
    return 0


def cmd_examples(a) -> int:
    if a.action == "list":
        for n in library.names():
            print(n)
        return 0
    if not a.name:
        raise KnotoidError("examples show needs a name")
    d = library.example(a.name)
    _write(serialize_diagram(d), a.output)
    return 0


def cmd_verify_equal(a) -> int:
    da, db = load(a.file_a), load(a.file_b)
    if da.kind != db.kind:
        raise FlavorMismatch(f"cannot compare diagrams of kinds {da.kind} and {db.kind}")
    fa, fb = _flavor(da, a.flavor), _flavor(db, a.flavor)
    ba = bracket_from_census(census(da, jobs=a.jobs, seed=a.seed), fa, da.kind)
    bb = bracket_from_census(census(db, jobs=a.jobs, seed=a.seed), fb, db.kind)
    if ba == bb:
        print(f"equal: {ba}")
        return 0
    print(f"different: {ba} | {bb}")
    return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=1, help="worker processes for state enumeration")
    common.add_argument("--seed", type=int, default=0, help="seed for probe-path perturbation retries")

    p = argparse.ArgumentParser(prog="knotoids", description="Bracket invariants of planar, annular and toroidal multi-knotoids.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("crossings", parents=[common], help="list canonical crossing keys")
    s.add_argument("file")
    s.set_defaults(func=cmd_crossings)

    for name, func, helptext in (("bracket", cmd_bracket, "bracket polynomial"), ("jones", cmd_jones, "writhe-normalized bracket")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("file")
        s.add_argument("--flavor")
        s.set_defaults(func=func)

    s = sub.add_parser("states", parents=[common], help="one census line per Kauffman state")
    s.add_argument("file")
    s.add_argument("--flavor")
    s.add_argument("--trace", action="store_true", help="append each state's weight")
    s.set_defaults(func=cmd_states)

    s = sub.add_parser("translate", parents=[common], help="redraw as an O-mixed or H-mixed planar diagram")
    s.add_argument("file")
    s.add_argument("--to", required=True, choices=("o-mixed", "h-mixed"))
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_translate)

    s = sub.add_parser("render", parents=[common], help="SVG drawing")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("examples", parents=[common], help="built-in example library")
    s.add_argument("action", choices=("list", "show"))
    s.add_argument("name", nargs="?")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_examples)

    s = sub.add_parser("verify-equal", parents=[common], help="exit 0 iff two brackets agree")
    s.add_argument("file_a")
    s.add_argument("file_b")
    s.add_argument("--flavor")
    s.set_defaults(func=cmd_verify_equal)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except KnotoidError as exc:
        print(exc.line(), file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
