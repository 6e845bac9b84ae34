"""Type-D Dynkin quivers, positive roots, and the per-root construction of
generalised tree modules with batch verification."""

from __future__ import annotations

from dataclasses import dataclass

from .fields import QQ
from .indec import Verdict, classify
from .quiver import Arrow, BoundQuiver, Tree, TreeMorphism
from .rep import pushdown


@dataclass(frozen=True)
class DynkinDSpec:
    """A D_n diagram with one orientation character per edge.

    Edges are ordered: the chain edges (1,2), ..., (n-3, n-2), then the
    branch edges b = (n-2, n-1) and c = (n-2, n).  '>' points from the
    lower-numbered vertex to the higher, '<' the reverse.
    """

    n: int
    orientation: str

    def __post_init__(self):
        if self.n < 4:
            raise ValueError("type D needs at least 4 vertices")
        if len(self.orientation) != self.n - 1 or any(
            ch not in "<>" for ch in self.orientation
        ):
            raise ValueError(
                f"orientation needs {self.n - 1} characters over '<>'"
            )

    def edges(self):
        """(label, low vertex, high vertex) in canonical order."""
        out = [(f"e{i}", i, i + 1) for i in range(1, self.n - 2)]
        out.append(("b", self.n - 2, self.n - 1))
        out.append(("c", self.n - 2, self.n))
        return out

    def oriented_edges(self):
        """(label, source, target) as integers, per the orientation."""
        out = []
        for (label, lo, hi), ch in zip(self.edges(), self.orientation):
            if ch == ">":
                out.append((label, lo, hi))
            else:
                out.append((label, hi, lo))
        return out


def standard_spec(n: int) -> DynkinDSpec:
    """The orientation with every arrow pointing down the chain and the
    'c' branch arrow pointing outward."""
    return DynkinDSpec(n, "<" * (n - 2) + ">")


def dynkin_d_quiver(spec: DynkinDSpec) -> BoundQuiver:
    vertices = [str(v) for v in range(1, spec.n + 1)]
    arrows = [
        Arrow(label, str(s), str(t)) for label, s, t in spec.oriented_edges()
    ]
    return BoundQuiver(vertices, arrows, ())


def _diagram_adjacency(n: int):
    adj = {v: set() for v in range(1, n + 1)}
    for i in range(1, n - 2):
        adj[i].add(i + 1)
        adj[i + 1].add(i)
    adj[n - 2] |= {n - 1, n}
    adj[n - 1].add(n - 2)
    adj[n].add(n - 2)
    return adj


def positive_roots(n: int):
    """All positive roots of D_n, by closing the simple roots under simple
    reflections and keeping the nonnegative vectors."""
    if n < 4:
        raise ValueError("type D needs at least 4 vertices")
    adj = _diagram_adjacency(n)
    simple = [
        tuple(1 if j == i else 0 for j in range(1, n + 1))
        for i in range(1, n + 1)
    ]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        v = frontier.pop()
        for i in range(1, n + 1):
            new_i = -v[i - 1] + sum(v[j - 1] for j in adj[i])
            w = tuple(
                new_i if j == i else v[j - 1] for j in range(1, n + 1)
            )
            if any(x < 0 for x in w) or not any(w):
                continue
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return sorted(seen)


def _attachment_data(spec: DynkinDSpec, root):
    """The three arrows around the doubled segment of a root with a 2:
    the chain arrow at the 1|2 boundary plus the two branch arrows, with
    their outside and inside diagram vertices."""
    n = spec.n
    twos = [v for v in range(1, n - 1) if root[v - 1] == 2]
    j0 = min(twos)
    oriented = {label: (s, t) for label, s, t in spec.oriented_edges()}
    a_label = f"e{j0 - 1}"
    return {
        a_label: (j0 - 1, j0),
        "b": (n - 1, n - 2),
        "c": (n, n - 2),
    }, oriented, a_label


def _pigeonhole_cprime(spec: DynkinDSpec, root, attach, oriented, a_label):
    """Valid choices of the doubled arrow: those whose two complements
    point at equal-dimension targets, smallest first in the order a, b, c."""
    order = [a_label, "b", "c"]
    target_dim = {
        label: root[oriented[label][1] - 1] for label in order
    }
    valid = []
    for cp in order:
        rest = [x for x in order if x != cp]
        if target_dim[rest[0]] == target_dim[rest[1]]:
            valid.append(cp)
    return order, valid


def module_for_root(
    spec: DynkinDSpec, root, cprime: str | None = None
) -> TreeMorphism:
    """A generalised tree module with the prescribed dimension vector.

    Roots with entries <= 1 give the evident tree module on the support.
    Otherwise the dimension-2 segment is doubled, the chosen arrow is
    attached to both copies, and the two remaining arrows to one copy
    each; all orientations copy the ambient quiver.  cprime overrides
    the pigeonhole choice of the doubled arrow (used for the wrong-choice
    variants).
    """
    n = spec.n
    root = tuple(root)
    if root not in set(positive_roots(n)):
        raise ValueError(f"{root} is not a positive root of D_{n}")
    q = dynkin_d_quiver(spec)
    if max(root) <= 1:
        support = {v for v in range(1, n + 1) if root[v - 1] == 1}
        arrows = [
            Arrow(label, s, t)
            for label, s, t in spec.oriented_edges()
            if s in support and t in support
        ]
        tree = Tree(sorted(support), arrows)
        return TreeMorphism(
            tree,
            q,
            {v: str(v) for v in support},
            {a.label: a.label for a in arrows},
        )
    attach, oriented, a_label = _attachment_data(spec, root)
    order, valid = _pigeonhole_cprime(spec, root, attach, oriented, a_label)
    cp = cprime if cprime is not None else valid[0]
    if cp not in order:
        raise ValueError(f"{cp} is not one of the attachment arrows {order}")
    singles = [x for x in order if x != cp]
    twos = [v for v in range(1, n - 1) if root[v - 1] == 2]
    ones = [v for v in range(1, n - 1) if root[v - 1] == 1]
    copy2 = {v: v + n for v in twos}

    tree_vertices = set(ones) | {n - 1, n} | set(twos) | set(copy2.values())
    tree_arrows = []
    vmap = {v: str(v) for v in ones}
    vmap[n - 1] = str(n - 1)
    vmap[n] = str(n)
    for v in twos:
        vmap[v] = str(v)
        vmap[copy2[v]] = str(v)
    amap = {}

    def add_arrow(tree_label, q_label, s, t):
        tree_arrows.append(Arrow(tree_label, s, t))
        amap[tree_label] = q_label

    for i in range(1, n - 2):
        label = f"e{i}"
        s, t = oriented[label]
        if s in ones and t in ones:
            add_arrow(label, label, s, t)
        elif s in twos and t in twos:
            add_arrow(label + "'", label, s, t)
            add_arrow(label + "''", label, copy2[s], copy2[t])

    def inside_vertex(label, copy):
        outside, inside = attach[label]
        return inside if copy == 1 else copy2[inside]

    def endpoints(label, copy):
        s, t = oriented[label]
        outside, inside = attach[label]
        iv = inside_vertex(label, copy)
        if s == inside:
            return iv, t
        return s, iv

    s1, t1 = endpoints(cp, 1)
    add_arrow(cp + "'", cp, s1, t1)
    s2, t2 = endpoints(cp, 2)
    add_arrow(cp + "''", cp, s2, t2)
    for single, copy in zip(singles, (1, 2)):
        s, t = endpoints(single, copy)
        add_arrow(single, single, s, t)

    tree = Tree(sorted(tree_vertices), tree_arrows)
    f = TreeMorphism(tree, q, vmap, amap)
    m = pushdown(f, QQ)
    built = tuple(m.dims[str(v)] for v in range(1, n + 1))
    if built != root:
        raise AssertionError(
            f"construction produced dimensions {built}, expected {root}"
        )
    return f


def wrong_choice_variants(spec: DynkinDSpec, root):
    """Variants doubling an arrow whose complements violate the pigeonhole
    rule; each must come out decomposable."""
    root = tuple(root)
    if max(root) <= 1:
        return []
    attach, oriented, a_label = _attachment_data(spec, root)
    order, valid = _pigeonhole_cprime(spec, root, attach, oriented, a_label)
    return [
        module_for_root(spec, root, cprime=cp) for cp in order if cp not in valid
    ]


@dataclass(frozen=True)
class CatalogEntry:
    root: tuple
    kind: str  # 'root' | 'variant'
    dims_ok: bool
    verdict: Verdict
    ok: bool


@dataclass(frozen=True)
class CatalogReport:
    spec: DynkinDSpec
    entries: tuple

    @property
    def all_ok(self) -> bool:
        return all(e.ok for e in self.entries)


def verify_catalog(
    spec: DynkinDSpec,
    field=QQ,
    budget: int = 3**13,
    include_variants: bool = True,
    with_oracle: bool = True,
) -> CatalogReport:
    """Build and classify a module for every positive root (and optionally
    every wrong-choice variant); failures are flagged, not raised."""
    entries = []
    for root in positive_roots(spec.n):
        f = module_for_root(spec, root)
        m = pushdown(f, field)
        dims_ok = tuple(m.dims[str(v)] for v in range(1, spec.n + 1)) == root
        verdict = classify(f, field, budget=budget, with_oracle=with_oracle)
        ok = dims_ok and verdict.status == "indecomposable"
        if with_oracle and verdict.oracle is not None:
            ok = ok and verdict.oracle.status == "indecomposable"
        entries.append(CatalogEntry(root, "root", dims_ok, verdict, ok))
        if include_variants:
            for vf in wrong_choice_variants(spec, root):
                vm = pushdown(vf, field)
                vdims_ok = (
                    tuple(vm.dims[str(v)] for v in range(1, spec.n + 1)) == root
                )
                vv = classify(vf, field, budget=budget, with_oracle=with_oracle)
                vok = vdims_ok and vv.status == "decomposable"
                if with_oracle and vv.oracle is not None:
                    vok = vok and vv.oracle.status == "decomposable"
                entries.append(CatalogEntry(root, "variant", vdims_ok, vv, vok))
    return CatalogReport(spec, tuple(entries))
