"""Command-line front end.

Exit statuses: 0 ok, 2 parse error, 3 precondition error, 4 ghost
obstruction.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .dynkin import DynkinDSpec, standard_spec, verify_catalog
from .fields import PrimeField, QQ
from .graphmap import (
    GhostObstruction,
    ModulePair,
    PreconditionError,
    decompose_hom,
    enumerate_ghosts,
    enumerate_graph_maps,
)
from .indec import classify
from .linalg import rank
from .network import to_dot
from .problemfile import ParseError, parse_problem, render_problem
from .rep import Homomorphism, hom_space, verify_hom
from .report import (
    render_catalog_report,
    render_decomposition_report,
    render_ggm_report,
    render_ghost_report,
    render_hom_report,
    render_verdict_report,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_GHOST = 4


def _field_of(args, problem):
    if args.field is None:
        return problem.field
    if args.field == "Q":
        return QQ
    if args.field.startswith("F"):
        return PrimeField(int(args.field[1:]))
    raise PreconditionError(f"unknown field {args.field!r}")


def _pair_of(args, problem) -> ModulePair:
    f1, f2 = problem.morphism_pair()
    return ModulePair(f1, f2, _field_of(args, problem))


def _emit(args, text: str):
    if args.report:
        Path(args.report).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_dot(args, pair: ModulePair):
    if args.dot:
        dot = to_dot(pair.base, "base") + to_dot(pair.cover.network, "cover")
        Path(args.dot).write_text(dot)


def _hom_from_map_spec(pair: ModulePair, entries) -> Homomorphism:
    field = pair.field
    m1, m2 = pair.m1, pair.m2
    mats = {
        v: [[field.zero] * m1.dims[v] for _ in range(m2.dims[v])]
        for v in m1.quiver.vertices
    }
    for n, terms in entries.items():
        qv = pair.f1.vertex_map.get(n)
        if qv is None:
            raise PreconditionError(f"map mentions unknown tree vertex {n}")
        c = m1.basis[qv].index(n)
        for coeff, m in terms:
            if m not in m2.basis.get(pair.f2.vertex_map.get(m, ""), ()):
                raise PreconditionError(
                    f"map sends v{n} to unknown target vertex w{m}"
                )
            r = m2.basis[qv].index(m) if m in m2.basis[qv] else None
            if r is None:
                raise PreconditionError(
                    f"target vertex w{m} lives at a different quiver vertex"
                )
            mats[qv][r][c] = field.add(mats[qv][r][c], field.of(coeff))
    frozen = {v: tuple(tuple(r) for r in m) for v, m in mats.items()}
    return Homomorphism(m1, m2, frozen)


def cmd_hom(args, problem):
    pair = _pair_of(args, problem)
    basis = hom_space(pair.m1, pair.m2)
    _emit(args, render_hom_report(pair, basis))
    _emit_dot(args, pair)
    return EXIT_OK


def _span_dimension(pair, maps):
    field = pair.field
    rows = []
    for g in maps:
        vec = []
        for v in sorted(pair.m1.quiver.vertices, key=str):
            for row in g.hom.mats[v]:
                vec.extend(row)
        rows.append(tuple(vec))
    if not rows:
        return 0
    return rank(field, tuple(rows), ncols=len(rows[0]))


def cmd_ggm(args, problem):
    pair = _pair_of(args, problem)
    maps = enumerate_graph_maps(pair)
    basis = hom_space(pair.m1, pair.m2)
    _emit(args, render_ggm_report(pair, maps, len(basis), _span_dimension(pair, maps)))
    _emit_dot(args, pair)
    return EXIT_OK


def cmd_ghosts(args, problem):
    pair = _pair_of(args, problem)
    ghosts = enumerate_ghosts(pair)
    _emit(args, render_ghost_report(pair, ghosts))
    _emit_dot(args, pair)
    return EXIT_OK


def cmd_decompose_hom(args, problem):
    pair = _pair_of(args, problem)
    if not problem.maps:
        raise PreconditionError("decompose-hom needs a map block")
    name = sorted(problem.maps)[0]
    src, dst, entries = problem.maps[name]
    if (
        problem.morphisms[src] is not pair.f1
        or problem.morphisms[dst] is not pair.f2
    ):
        raise PreconditionError(
            "the map block must go from the first morphism to the second"
        )
    h = _hom_from_map_spec(pair, entries)
    if not verify_hom(h):
        raise PreconditionError("the supplied map is not a homomorphism")
    terms = decompose_hom(pair, h)
    _emit(args, render_decomposition_report(pair, h, terms))
    _emit_dot(args, pair)
    return EXIT_OK


def cmd_classify(args, problem):
    if not problem.morphism_order:
        raise PreconditionError("classify needs a morphism")
    f = problem.morphisms[problem.morphism_order[0]]
    verdict = classify(
        f, _field_of(args, problem), budget=args.budget, with_oracle=True
    )
    _emit(args, render_verdict_report(verdict))
    return EXIT_OK


def cmd_dot(args, problem):
    pair = _pair_of(args, problem)
    dot = to_dot(pair.base, "base") + to_dot(pair.cover.network, "cover")
    if args.dot:
        Path(args.dot).write_text(dot)
    else:
        sys.stdout.write(dot)
    return EXIT_OK


def cmd_dynkin(args, problem):
    if args.n is None:
        raise PreconditionError("dynkin needs --n")
    spec = (
        DynkinDSpec(args.n, args.orientation)
        if args.orientation
        else standard_spec(args.n)
    )
    report = verify_catalog(
        spec,
        QQ if args.field in (None, "Q") else PrimeField(int(args.field[1:])),
        budget=args.budget,
        include_variants=args.variants,
    )
    _emit(args, render_catalog_report(report))
    if args.emit:
        from .dynkin import module_for_root, positive_roots
        from .problemfile import Problem

        outdir = Path(args.emit)
        outdir.mkdir(parents=True, exist_ok=True)
        for root in positive_roots(spec.n):
            f = module_for_root(spec, root)
            p = Problem()
            p.quiver = f.codomain
            p.quiver_name = f"d{spec.n}"
            p.trees["t"] = f.domain
            p.morphisms["f"] = f
            p.morphism_order = ["f"]
            name = "root_" + "".join(str(x) for x in root) + ".txt"
            (outdir / name).write_text(render_problem(p))
    return EXIT_OK


COMMANDS = {
    "hom": cmd_hom,
    "ggm": cmd_ggm,
    "ghosts": cmd_ghosts,
    "decompose-hom": cmd_decompose_hom,
    "classify": cmd_classify,
    "dot": cmd_dot,
    "dynkin": cmd_dynkin,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gtm",
        description=(
            "Generalised tree modules: hom spaces via graph maps, ghosts, "
            "and (in)decomposability certificates."
        ),
    )
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("problem", nargs="?", help="problem file (not used by dynkin)")
    ap.add_argument("--field", default=None, help="Q or F<p> (odd prime)")
    ap.add_argument("--budget", type=int, default=3**13)
    ap.add_argument("--variants", action="store_true", help="dynkin: include wrong-choice variants")
    ap.add_argument("--dot", default=None, help="write DOT export here")
    ap.add_argument("--report", default=None, help="write the report here")
    ap.add_argument("--n", type=int, default=None, help="dynkin: diagram size")
    ap.add_argument("--orientation", default=None, help="dynkin: '<>' string per edge")
    ap.add_argument("--emit", default=None, help="dynkin: write per-root fixtures here")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "dynkin":
            problem = None
        else:
            if not args.problem:
                raise PreconditionError(f"{args.command} needs a problem file")
            try:
                text = Path(args.problem).read_text()
            except OSError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_PARSE
            problem = parse_problem(text)
        return COMMANDS[args.command](args, problem)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GhostObstruction as exc:
        print(f"ghost obstruction: {exc}", file=sys.stderr)
        return EXIT_GHOST
    except (PreconditionError, ValueError) as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
