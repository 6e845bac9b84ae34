"""Finite quivers with monomial relations, trees, and tree morphisms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple


class Arrow(NamedTuple):
    label: object
    source: object
    target: object


@dataclass(frozen=True)
class Path:
    """A composable run of arrows, or a lazy path at a vertex.

    Arrow labels are stored in traversal order: the first entry is
    applied first.
    """

    arrows: tuple = ()
    at: object | None = None

    def __post_init__(self):
        if self.arrows and self.at is not None:
            raise ValueError("a path is either lazy or a run of arrows")
        if not self.arrows and self.at is None:
            raise ValueError("a lazy path needs a vertex")

    def __len__(self):
        return len(self.arrows)


class BoundQuiver:
    """A finite quiver plus a set of monomial relations (paths, length >= 2)."""

    def __init__(self, vertices, arrows, relations=()):
        self.vertices = tuple(vertices)
        self.arrows = tuple(
            a if isinstance(a, Arrow) else Arrow(*a) for a in arrows
        )
        self.relations = tuple(tuple(r) for r in relations)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex label")
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate arrow label")
        self._by_label = {a.label: a for a in self.arrows}
        vset = set(self.vertices)
        for a in self.arrows:
            if a.source not in vset or a.target not in vset:
                raise ValueError(f"arrow {a.label} uses an undeclared vertex")
        self._out = {v: [] for v in self.vertices}
        self._in = {v: [] for v in self.vertices}
        for a in sorted(self.arrows, key=lambda a: str(a.label)):
            self._out[a.source].append(a)
            self._in[a.target].append(a)
        for r in self.relations:
            if len(r) < 2:
                raise ValueError("relations must have length at least 2")
            if not self.is_path(Path(r)):
                raise ValueError(f"relation {r} is not a composable path")

    def arrow(self, label) -> Arrow:
        return self._by_label[label]

    def has_arrow(self, label) -> bool:
        return label in self._by_label

    def out_arrows(self, v):
        return tuple(self._out[v])

    def in_arrows(self, v):
        return tuple(self._in[v])

    def is_path(self, p: Path) -> bool:
        if p.at is not None:
            return p.at in self.vertices
        try:
            seq = [self._by_label[l] for l in p.arrows]
        except KeyError:
            return False
        return all(
            seq[i].target == seq[i + 1].source for i in range(len(seq) - 1)
        )

    def __eq__(self, other):
        return (
            isinstance(other, BoundQuiver)
            and self.vertices == other.vertices
            and self.arrows == other.arrows
            and self.relations == other.relations
        )

    def __repr__(self):
        return (
            f"BoundQuiver({len(self.vertices)} vertices, "
            f"{len(self.arrows)} arrows, {len(self.relations)} relations)"
        )


def path_in_ideal(q: BoundQuiver, p: Path) -> bool:
    """Whether p lies in the ideal generated by q's relations.

    The ideal is monomial, so membership is containment of some relation
    as a contiguous subpath.
    """
    if not q.is_path(p):
        raise ValueError("not a composable path of the quiver")
    if p.at is not None:
        return False
    seq = p.arrows
    for r in q.relations:
        k = len(r)
        if k > len(seq):
            continue
        for i in range(len(seq) - k + 1):
            if seq[i : i + k] == r:
                return True
    return False


class Tree:
    """A finite quiver whose underlying undirected graph is a tree.

    Vertex labels are distinct natural numbers; this fixes a canonical
    order used for fiber bases and network enumerations.
    """

    def __init__(self, vertices, arrows):
        self.vertices = tuple(sorted(vertices))
        self.arrows = tuple(
            a if isinstance(a, Arrow) else Arrow(*a) for a in arrows
        )
        for v in self.vertices:
            if not isinstance(v, int) or v < 0:
                raise ValueError("tree vertices must be natural numbers")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate tree vertex")
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate tree arrow label")
        if not validate_tree(self):
            raise ValueError("underlying graph is not a nonempty tree")
        self._by_label = {a.label: a for a in self.arrows}
        self._out = {v: [] for v in self.vertices}
        self._in = {v: [] for v in self.vertices}
        for a in sorted(self.arrows, key=lambda a: str(a.label)):
            self._out[a.source].append(a)
            self._in[a.target].append(a)

    def arrow(self, label) -> Arrow:
        return self._by_label[label]

    def out_arrows(self, v):
        return tuple(self._out[v])

    def in_arrows(self, v):
        return tuple(self._in[v])

    def __eq__(self, other):
        return (
            isinstance(other, Tree)
            and self.vertices == other.vertices
            and self.arrows == other.arrows
        )

    def __repr__(self):
        return f"Tree({len(self.vertices)} vertices)"


def validate_tree(q) -> bool:
    """Whether the quiver's underlying undirected graph is a nonempty tree.

    Parallel and antiparallel arrows count as distinct undirected edges,
    so they form cycles.
    """
    vs = list(q.vertices)
    ars = list(q.arrows)
    if not vs:
        return False
    vset = set(vs)
    if any(a.source not in vset or a.target not in vset for a in ars):
        return False
    if len(ars) != len(vs) - 1:
        return False
    parent = {v: v for v in vs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    joined = 0
    for a in ars:
        ra, rb = find(a.source), find(a.target)
        if ra == rb:
            return False
        parent[ra] = rb
        joined += 1
    return joined == len(vs) - 1


class TreeMorphism:
    """A quiver morphism from a tree into a bound quiver.

    Totality and source/target compatibility are structural and checked
    at construction; the boundedness and tree-module conditions are
    verdicts of validate_morphism.
    """

    def __init__(self, domain: Tree, codomain: BoundQuiver, vertex_map, arrow_map):
        self.domain = domain
        self.codomain = codomain
        self.vertex_map = dict(vertex_map)
        self.arrow_map = dict(arrow_map)
        for n in domain.vertices:
            if n not in self.vertex_map:
                raise ValueError(f"vertex map misses tree vertex {n}")
            if self.vertex_map[n] not in set(codomain.vertices):
                raise ValueError(f"image of vertex {n} is not a quiver vertex")
        for a in domain.arrows:
            if a.label not in self.arrow_map:
                raise ValueError(f"arrow map misses tree arrow {a.label}")
            img = self.arrow_map[a.label]
            if not codomain.has_arrow(img):
                raise ValueError(f"image of arrow {a.label} is not a quiver arrow")
            g = codomain.arrow(img)
            if (
                self.vertex_map[a.source] != g.source
                or self.vertex_map[a.target] != g.target
            ):
                raise ValueError(
                    f"arrow {a.label} is incompatible with its image {img}"
                )

    def image_path(self, labels) -> Path:
        return Path(tuple(self.arrow_map[l] for l in labels))

    def __repr__(self):
        return f"TreeMorphism({self.domain!r} -> {self.codomain!r})"


@dataclass(frozen=True)
class MorphismReport:
    is_bound: bool
    is_tree_module: bool
    violations: tuple


def _paths_onto_relation(f: TreeMorphism, relation):
    """All tree paths whose arrow-wise image is exactly the relation."""
    tree = f.domain
    found = []

    def extend(prefix, idx):
        if idx == len(relation):
            found.append(tuple(prefix))
            return
        tail = tree.arrow(prefix[-1]).target if prefix else None
        candidates = (
            tree.out_arrows(tail)
            if tail is not None
            else [a for v in tree.vertices for a in tree.out_arrows(v)]
        )
        for a in candidates:
            if f.arrow_map[a.label] == relation[idx]:
                prefix.append(a.label)
                extend(prefix, idx + 1)
                prefix.pop()

    extend([], 0)
    return found


def validate_morphism(f: TreeMorphism) -> MorphismReport:
    """Check the boundedness and tree-module conditions of a morphism.

    A violation is either ("path", labels) for a tree path mapping onto
    a relation, or ("arrow-pair", a, b) for distinct same-source or
    same-target tree arrows with a common image.
    """
    violations = []
    bound = True
    for r in f.codomain.relations:
        for p in _paths_onto_relation(f, r):
            violations.append(("path", p))
            bound = False
    tree_mod = True
    for v in f.domain.vertices:
        for group in (f.domain.out_arrows(v), f.domain.in_arrows(v)):
            for i in range(len(group)):
                for j in range(i + 1, len(group)):
                    a, b = group[i], group[j]
                    if f.arrow_map[a.label] == f.arrow_map[b.label]:
                        violations.append(("arrow-pair", a.label, b.label))
                        tree_mod = False
    return MorphismReport(bound, bound and tree_mod, tuple(violations))
