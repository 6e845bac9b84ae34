"""Line-oriented problem files: one quiver, trees, morphisms, optional
supplied maps, optional field; '#' starts a comment."""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from fractions import Fraction

from .fields import PrimeField, QQ, Rationals
from .quiver import Arrow, BoundQuiver, Path, Tree, TreeMorphism


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


@dataclass
class Problem:
    quiver: BoundQuiver = None
    quiver_name: str = ""
    trees: dict = dfield(default_factory=dict)
    morphisms: dict = dfield(default_factory=dict)
    morphism_order: list = dfield(default_factory=list)
    maps: dict = dfield(default_factory=dict)
    field: object = QQ

    def morphism_pair(self):
        if len(self.morphism_order) < 2:
            raise ValueError("this command needs two morphisms")
        f1 = self.morphisms[self.morphism_order[0]]
        f2 = self.morphisms[self.morphism_order[1]]
        return f1, f2


def _tokens(line: str):
    return line.split()


class _Parser:
    def __init__(self, text: str):
        self.problem = Problem()
        self.lines = text.splitlines()
        self.block = None
        self.block_name = ""
        self.block_line = 0
        # in-progress block state
        self.vertices = []
        self.arrows = []
        self.relations = []
        self.vmap = {}
        self.amap = {}
        self.morphism_args = ()
        self.map_entries = {}
        self.map_args = ()

    def fail(self, ln, msg):
        raise ParseError(ln, msg)

    def run(self) -> Problem:
        for ln, raw in enumerate(self.lines, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            self.dispatch(ln, line)
        self.close_block(len(self.lines))
        if self.problem.quiver is None:
            self.fail(len(self.lines) or 1, "no quiver block")
        return self.problem

    def dispatch(self, ln, line):
        toks = _tokens(line)
        head = toks[0]
        if head in ("quiver", "tree"):
            self.close_block(ln)
            if len(toks) != 2:
                self.fail(ln, f"expected '{head} <name>'")
            self.block, self.block_name, self.block_line = head, toks[1], ln
            self.vertices, self.arrows, self.relations = [], [], []
        elif head == "morphism":
            self.close_block(ln)
            parts = line[len("morphism") :].strip()
            try:
                name, rest = parts.split(":", 1)
                src, dst = rest.split("->")
            except ValueError:
                self.fail(ln, "expected 'morphism <name>: <tree> -> <quiver>'")
            self.block, self.block_name, self.block_line = (
                "morphism",
                name.strip(),
                ln,
            )
            self.morphism_args = (src.strip(), dst.strip())
            self.vmap, self.amap = {}, {}
        elif head == "map":
            self.close_block(ln)
            parts = line[len("map") :].strip()
            try:
                name, rest = parts.split(":", 1)
                src, dst = rest.split("->")
            except ValueError:
                self.fail(ln, "expected 'map <name>: <morphism> -> <morphism>'")
            self.block, self.block_name, self.block_line = "map", name.strip(), ln
            self.map_args = (src.strip(), dst.strip())
            self.map_entries = {}
        elif head == "field:":
            self.close_block(ln)
            if len(toks) != 2:
                self.fail(ln, "expected 'field: Q' or 'field: F<p>'")
            self.problem.field = self.parse_field(ln, toks[1])
            self.block = None
        elif self.block in ("quiver", "tree"):
            self.quiver_line(ln, line, toks)
        elif self.block == "morphism":
            self.morphism_line(ln, line, toks)
        elif self.block == "map":
            self.map_line(ln, line)
        else:
            self.fail(ln, f"unexpected content outside a block: {line!r}")

    def parse_field(self, ln, spec):
        if spec == "Q":
            return QQ
        if spec.startswith("F"):
            try:
                return PrimeField(int(spec[1:]))
            except ValueError as exc:
                self.fail(ln, str(exc))
        self.fail(ln, f"unknown field {spec!r}")

    def quiver_line(self, ln, line, toks):
        if toks[0] == "vertices:":
            if self.vertices:
                self.fail(ln, "duplicate vertices line")
            names = toks[1:]
            if len(set(names)) != len(names):
                self.fail(ln, "duplicate vertex label")
            self.vertices = names
        elif toks[0] == "arrow":
            try:
                head, rest = line.split(":", 1)
                label = head.split(None, 1)[1].strip()
                src, dst = (x.strip() for x in rest.split("->"))
                if not label or not src or not dst:
                    raise ValueError
            except (IndexError, ValueError):
                self.fail(ln, "expected 'arrow <label>: <src> -> <tgt>'")
            if not self.vertices:
                self.fail(ln, "arrow before vertices line")
            if src not in self.vertices:
                self.fail(ln, f"unknown vertex {src!r}")
            if dst not in self.vertices:
                self.fail(ln, f"unknown vertex {dst!r}")
            if any(a[0] == label for a in self.arrows):
                self.fail(ln, f"duplicate arrow label {label!r}")
            self.arrows.append((label, src, dst))
        elif toks[0] == "relation:":
            if self.block != "quiver":
                self.fail(ln, "relations only belong to quiver blocks")
            labels = toks[1:]
            if len(labels) < 2:
                self.fail(ln, "relations need length at least 2")
            known = {a[0]: a for a in self.arrows}
            for l in labels:
                if l not in known:
                    self.fail(ln, f"unknown arrow {l!r} in relation")
            seq = list(reversed(labels))  # rightmost is applied first
            for x, y in zip(seq, seq[1:]):
                if known[x][2] != known[y][1]:
                    self.fail(ln, "relation path does not compose")
            self.relations.append(tuple(seq))
        else:
            self.fail(ln, f"unexpected line in {self.block} block: {line!r}")

    def morphism_line(self, ln, line, toks):
        tree_name, quiver_name = self.morphism_args
        tree = self.problem.trees.get(tree_name)
        if tree is None:
            self.fail(self.block_line, f"unknown tree {tree_name!r}")
        if quiver_name != self.problem.quiver_name:
            self.fail(self.block_line, f"unknown quiver {quiver_name!r}")
        q = self.problem.quiver
        if toks[0] == "v" and len(toks) == 4 and toks[2] == "->":
            try:
                n = int(toks[1])
            except ValueError:
                self.fail(ln, "tree vertices are natural numbers")
            if n not in tree.vertices:
                self.fail(ln, f"unknown tree vertex {n}")
            if toks[3] not in q.vertices:
                self.fail(ln, f"unknown quiver vertex {toks[3]!r}")
            self.vmap[n] = toks[3]
        elif toks[0] == "a" and len(toks) == 4 and toks[2] == "->":
            label, img = toks[1], toks[3]
            arrow = next((a for a in tree.arrows if a.label == label), None)
            if arrow is None:
                self.fail(ln, f"unknown tree arrow {label!r}")
            if not q.has_arrow(img):
                self.fail(ln, f"unknown quiver arrow {img!r}")
            g = q.arrow(img)
            if self.vmap.get(arrow.source) != g.source or self.vmap.get(
                arrow.target
            ) != g.target:
                self.fail(
                    ln,
                    f"arrow {label!r} maps incompatibly onto {img!r} "
                    "(list all v lines before a lines)",
                )
            self.amap[label] = img
        else:
            self.fail(ln, f"unexpected line in morphism block: {line!r}")

    def map_line(self, ln, line):
        toks = _tokens(line)
        if toks[0] != "v" or "->" not in toks:
            self.fail(ln, "expected 'v <n> -> <coeff> <m> [+ <coeff> <m>]...'")
        try:
            n = int(toks[1])
        except (ValueError, IndexError):
            self.fail(ln, "tree vertices are natural numbers")
        rhs = line.split("->", 1)[1].strip()
        entries = []
        if rhs not in ("", "0"):
            for term in rhs.split("+"):
                parts = term.split()
                if len(parts) != 2:
                    self.fail(ln, f"malformed term {term.strip()!r}")
                try:
                    coeff = Fraction(parts[0])
                except ValueError:
                    self.fail(ln, f"bad coefficient {parts[0]!r}")
                try:
                    m = int(parts[1])
                except ValueError:
                    self.fail(ln, "target basis labels are natural numbers")
                entries.append((coeff, m))
        self.map_entries[n] = tuple(entries)

    def close_block(self, ln):
        if self.block == "quiver":
            if self.problem.quiver is not None:
                self.fail(self.block_line, "more than one quiver block")
            try:
                self.problem.quiver = BoundQuiver(
                    self.vertices, [Arrow(*a) for a in self.arrows], self.relations
                )
            except ValueError as exc:
                self.fail(self.block_line, str(exc))
            self.problem.quiver_name = self.block_name
        elif self.block == "tree":
            if self.block_name in self.problem.trees:
                self.fail(self.block_line, f"duplicate tree {self.block_name!r}")
            try:
                vs = [int(v) for v in self.vertices]
            except ValueError:
                self.fail(self.block_line, "tree vertices are natural numbers")
            try:
                self.problem.trees[self.block_name] = Tree(
                    vs, [Arrow(a[0], int(a[1]), int(a[2])) for a in self.arrows]
                )
            except ValueError as exc:
                self.fail(self.block_line, str(exc))
        elif self.block == "morphism":
            if self.block_name in self.problem.morphisms:
                self.fail(
                    self.block_line, f"duplicate morphism {self.block_name!r}"
                )
            tree = self.problem.trees[self.morphism_args[0]]
            try:
                f = TreeMorphism(tree, self.problem.quiver, self.vmap, self.amap)
            except ValueError as exc:
                self.fail(self.block_line, str(exc))
            self.problem.morphisms[self.block_name] = f
            self.problem.morphism_order.append(self.block_name)
        elif self.block == "map":
            for name in self.map_args:
                if name not in self.problem.morphisms:
                    self.fail(self.block_line, f"unknown morphism {name!r}")
            self.problem.maps[self.block_name] = (
                self.map_args[0],
                self.map_args[1],
                dict(self.map_entries),
            )
        self.block = None


def parse_problem(text: str) -> Problem:
    return _Parser(text).run()


def render_problem(p: Problem) -> str:
    """Canonical text form; parse and render are mutually inverse on it."""
    out = []
    out.append(f"quiver {p.quiver_name}")
    out.append("vertices: " + " ".join(p.quiver.vertices))
    for a in sorted(p.quiver.arrows, key=lambda a: str(a.label)):
        out.append(f"arrow {a.label}: {a.source} -> {a.target}")
    for r in sorted(p.quiver.relations):
        out.append("relation: " + " ".join(reversed(r)))
    for name in sorted(p.trees):
        t = p.trees[name]
        out.append(f"tree {name}")
        out.append("vertices: " + " ".join(str(v) for v in t.vertices))
        for a in sorted(t.arrows, key=lambda a: str(a.label)):
            out.append(f"arrow {a.label}: {a.source} -> {a.target}")
    tree_of = {}
    for name in sorted(p.trees):
        tree_of[id(p.trees[name])] = name
    for name in p.morphism_order:
        f = p.morphisms[name]
        tname = tree_of[id(f.domain)]
        out.append(f"morphism {name}: {tname} -> {p.quiver_name}")
        for n in sorted(f.vertex_map):
            out.append(f"v {n} -> {f.vertex_map[n]}")
        for l in sorted(f.arrow_map, key=str):
            out.append(f"a {l} -> {f.arrow_map[l]}")
    for name in sorted(p.maps):
        src, dst, entries = p.maps[name]
        out.append(f"map {name}: {src} -> {dst}")
        for n in sorted(entries):
            terms = entries[n]
            if not terms:
                out.append(f"v {n} -> 0")
            else:
                rhs = " + ".join(f"{c} {m}" for c, m in terms)
                out.append(f"v {n} -> {rhs}")
    if isinstance(p.field, Rationals):
        out.append("field: Q")
    else:
        out.append(f"field: F{p.field.p}")
    return "\n".join(out) + "\n"
