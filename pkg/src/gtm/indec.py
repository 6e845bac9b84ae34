"""(In)decomposability certification for generalised tree modules:
the tree-module shortcut, the sibling-support criterion, and the explicit
idempotent construction for fork-shaped trees."""

from __future__ import annotations

from dataclasses import dataclass

from .fields import QQ
from .graphmap import (
    GraphMap,
    ModulePair,
    PreconditionError,
    Subnetwork,
    enumerate_graph_maps,
    enumerate_ghosts,
)
from .quiver import Arrow, TreeMorphism, validate_morphism
from .rep import (
    Homomorphism,
    OracleVerdict,
    hom_space,
    identity_hom,
    is_indecomposable_oracle,
    pushdown,
    verify_hom,
)


@dataclass(frozen=True)
class Verdict:
    status: str  # 'indecomposable' | 'decomposable' | 'unknown'
    method: str = ""
    transcript: tuple = ()
    witness: Homomorphism | None = None
    oracle: OracleVerdict | None = None
    notes: tuple = ()


def sibling_pairs(f: TreeMorphism):
    """Ordered pairs (n1, n2) of distinct endpoints of a two-pronged fork
    (shared source or shared target) whose prongs share an image arrow."""
    tree = f.domain
    out = set()
    for v in tree.vertices:
        for group, end in ((tree.out_arrows(v), "target"), (tree.in_arrows(v), "source")):
            for i in range(len(group)):
                for j in range(len(group)):
                    if i == j:
                        continue
                    a, b = group[i], group[j]
                    if f.arrow_map[a.label] != f.arrow_map[b.label]:
                        continue
                    n1 = getattr(a, end)
                    n2 = getattr(b, end)
                    if n1 != n2:
                        out.add((n1, n2))
    return tuple(sorted(out))


def self_pair(f: TreeMorphism, field=QQ) -> ModulePair:
    return ModulePair(f, f, field)


def certify_indecomposable(f: TreeMorphism, field=QQ, pair: ModulePair | None = None) -> Verdict:
    """Prove indecomposability from the enumerated graph maps of (M, M).

    Requires the self-pair to be ghost-free, no graph map to visit a
    sibling pair, and no two graph maps to visit a transposed pair of
    distinct coordinates.  The criterion is one-directional: failure
    yields 'unknown' with the violation recorded.
    """
    pair = pair or self_pair(f, field)
    ghosts = enumerate_ghosts(pair)
    if ghosts:
        g = ghosts[0]
        return Verdict(
            "unknown",
            "sibling-support",
            (f"self-pair has a ghost on {g.sub.sorted_vertices()}",),
        )
    maps = enumerate_graph_maps(pair)
    siblings = set(sibling_pairs(f))
    transcript = [f"self-pair ghost-free; {len(maps)} graph maps enumerated"]
    for idx, g in enumerate(maps):
        for (nm, j) in g.sub.vertices:
            if nm in siblings:
                transcript.append(
                    f"condition 1 fails: graph map {idx} contains "
                    f"({nm[0]},{nm[1]},{j:+d}) for sibling pair {nm}"
                )
                return Verdict("unknown", "sibling-support", tuple(transcript))
    transcript.append("condition 1 holds: no graph map visits a sibling pair")
    visited = {}
    for idx, g in enumerate(maps):
        for (nm, j) in g.sub.vertices:
            if nm[0] != nm[1]:
                visited.setdefault(nm, idx)
    for (n1, n2), idx in sorted(visited.items()):
        rev = (n2, n1)
        if rev in visited and (n1, n2) < rev:
            transcript.append(
                f"condition 2 fails: graph map {idx} visits {(n1, n2)} and "
                f"graph map {visited[rev]} visits {rev}"
            )
            return Verdict("unknown", "sibling-support", tuple(transcript))
    transcript.append("condition 2 holds: no transposed pair is visited twice")
    return Verdict("indecomposable", "sibling-support", tuple(transcript))


def coefficient_conditions(f: TreeMorphism, field=QQ):
    """The same two conditions read off an exact basis of End(M).

    Condition 1: every endomorphism has zero coefficient at every sibling
    pair.  Condition 2: no transposed pair of distinct coordinates is hit
    by two endomorphisms.  Used as an independent cross-check for the
    graph-map route.
    """
    m = pushdown(f, field)
    basis = hom_space(m, m)
    siblings = sibling_pairs(f)
    cond1 = True
    for h in basis:
        for (n1, n2) in siblings:
            qv = f.vertex_map[n1]
            if f.vertex_map[n2] != qv:
                continue
            if h.entry(qv, n2, n1) != field.zero:
                cond1 = False
    hit = set()
    for h in basis:
        for n1 in f.domain.vertices:
            for n2 in f.domain.vertices:
                if n1 == n2 or f.vertex_map[n1] != f.vertex_map[n2]:
                    continue
                if h.entry(f.vertex_map[n1], n2, n1) != field.zero:
                    hit.add((n1, n2))
    cond2 = all((n2, n1) not in hit for (n1, n2) in hit if n1 != n2)
    return cond1, cond2


def tree_module_criterion(f: TreeMorphism, field=QQ) -> Verdict:
    """Tree modules are indecomposable; no enumeration needed."""
    report = validate_morphism(f)
    if not report.is_tree_module:
        raise PreconditionError("module is not a tree module")
    return Verdict(
        "indecomposable",
        "tree-module",
        ("morphism satisfies the tree-module condition",),
    )


def _fork_configurations(f: TreeMorphism):
    """Candidate fork roots: (root, kind, fork arrows, children), kind 'A'
    for a shared source and 'B' for a shared target, in canonical order."""
    tree = f.domain
    out = []
    for root in tree.vertices:
        for kind, group in (("A", tree.out_arrows(root)), ("B", tree.in_arrows(root))):
            by_image = {}
            for a in group:
                by_image.setdefault(f.arrow_map[a.label], []).append(a)
            for img in sorted(by_image):
                arrows = by_image[img]
                if len(arrows) < 2:
                    continue
                children = tuple(
                    a.target if kind == "A" else a.source for a in arrows
                )
                out.append((root, kind, tuple(arrows), children))
    return out


def _subtree_components(tree, fork_arrows):
    """Components of the tree with the fork arrows removed, as vertex sets."""
    cut = {a.label for a in fork_arrows}
    adj = {v: set() for v in tree.vertices}
    for a in tree.arrows:
        if a.label in cut:
            continue
        adj[a.source].add(a.target)
        adj[a.target].add(a.source)
    seen = set()
    comps = {}
    for v in tree.vertices:
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    seen.add(y)
                    stack.append(y)
        for x in comp:
            comps[x] = frozenset(comp)
    return comps


def _tree_module_condition_on(f, vertex_set):
    """Whether distinct same-source or same-target arrows inside the
    induced subtree always have distinct images."""
    inside = set(vertex_set)
    arrows = [
        a
        for a in f.domain.arrows
        if a.source in inside and a.target in inside
    ]
    for end in ("source", "target"):
        groups = {}
        for a in arrows:
            groups.setdefault(getattr(a, end), []).append(a)
        for group in groups.values():
            images = [f.arrow_map[a.label] for a in group]
            if len(set(images)) != len(images):
                return False
    return True


def fork_decompose(f: TreeMorphism, field=QQ, pair: ModulePair | None = None) -> Verdict:
    """Build an explicit idempotent for a fork-rooted tree.

    Looks for a root whose same-image fork arrows head pairwise tree-module
    subtrees, and a graph map of (M, M) pairing two distinct children;
    the identity outside one child subtree, glued to that graph map
    through the fork, is a nontrivial idempotent.
    """
    pair = pair or self_pair(f, field)
    tree = f.domain
    maps = enumerate_graph_maps(pair)
    for root, kind, fork_arrows, children in _fork_configurations(f):
        comps = _subtree_components(tree, fork_arrows)
        ok = True
        for child in children:
            if root in comps[child]:
                ok = False
                break
            if not _tree_module_condition_on(f, comps[child] | {root}):
                ok = False
                break
        if not ok:
            continue
        child_arrow = {}
        for a, c in zip(fork_arrows, children):
            child_arrow[c] = a
        found = None
        for n1 in sorted(children):
            for n2 in sorted(children):
                if n1 == n2:
                    continue
                for g in maps:
                    if ((n1, n2), 1) in g.sub.vertices:
                        found = (n1, n2, g)
                        break
                    if ((n1, n2), -1) in g.sub.vertices:
                        found = (n1, n2, g.neg())
                        break
                if found:
                    break
            if found:
                break
        if not found:
            continue
        n1, n2, g = found
        t1_verts = comps[n1]
        t2_verts = comps[n2]
        inner = frozenset(
            v
            for v in g.sub.vertices
            if v[0][0] in t1_verts and v[0][1] in t2_verts
        )
        inner_arrows = frozenset(
            a
            for a in g.sub.arrows
            if a.source in inner and a.target in inner
        )
        drop = t2_verts if kind == "A" else t1_verts
        closure = frozenset(drop | {root})
        diag_verts = frozenset(
            ((n, n), 1) for n in tree.vertices if n not in drop
        )
        diag_arrows = frozenset(
            Arrow(((a.label, a.label), 1), ((a.source, a.source), 1), ((a.target, a.target), 1))
            for a in tree.arrows
            if not (a.source in closure and a.target in closure)
        )
        glue_a = child_arrow[n1]
        glue_b = child_arrow[n2]
        if kind == "A":
            glue = Arrow(
                ((glue_a.label, glue_b.label), 1),
                ((root, root), 1),
                ((n1, n2), 1),
            )
        else:
            glue = Arrow(
                ((glue_a.label, glue_b.label), 1),
                ((n1, n2), 1),
                ((root, root), 1),
            )
        sub = Subnetwork(
            pair,
            inner | diag_verts,
            inner_arrows | diag_arrows | {glue},
            frozenset(),
        )
        gm = GraphMap.wrap(sub)
        e = gm.hom
        if not verify_hom(e):
            raise AssertionError("constructed witness is not a homomorphism")
        if not e.compose(e).equals(e):
            raise AssertionError("constructed witness is not idempotent")
        if e.is_zero() or e.equals(identity_hom(pair.m1)):
            raise AssertionError("constructed witness is trivial")
        transcript = (
            f"fork root {root} (kind {kind}) with children {tuple(sorted(children))}",
            f"graph map pairs child {n1} with child {n2}",
        )
        return Verdict("decomposable", "fork-idempotent", transcript, e)
    return Verdict("unknown", "fork-idempotent", ("no qualifying fork and graph map",))


def classify(
    f: TreeMorphism,
    field=QQ,
    budget: int = 3**13,
    with_oracle: bool = True,
) -> Verdict:
    """First proved verdict wins: tree-module shortcut, then the sibling
    criterion, then the fork idempotent; otherwise unknown.  The oracle
    verdict is attached as evidence, never as proof.  Instances matching
    the fork-pairing hypothesis are compared against the oracle and
    flagged when the oracle disagrees with expected decomposability.
    """
    report = validate_morphism(f)
    if not report.is_bound:
        raise PreconditionError("morphism is not bound")
    pair = self_pair(f, field)
    oracle = None
    if with_oracle:
        oracle = is_indecomposable_oracle(pair.m1, budget=budget)
    notes = _conjecture_notes(f, pair, oracle)
    if report.is_tree_module:
        v = tree_module_criterion(f, field)
        return Verdict(v.status, v.method, v.transcript, None, oracle, notes)
    v = certify_indecomposable(f, field, pair=pair)
    if v.status == "indecomposable":
        return Verdict(v.status, v.method, v.transcript, None, oracle, notes)
    trail = v.transcript
    v = fork_decompose(f, field, pair=pair)
    if v.status == "decomposable":
        return Verdict(v.status, v.method, trail + v.transcript, v.witness, oracle, notes)
    return Verdict("unknown", "", trail + v.transcript, None, oracle, notes)


def _conjecture_notes(f, pair, oracle):
    """Empirical record: a sibling pair visited by some graph map should
    mean decomposable; oracle disagreement is flagged, never asserted."""
    siblings = set(sibling_pairs(f))
    if not siblings:
        return ()
    maps = enumerate_graph_maps(pair)
    hit = None
    for g in maps:
        for (nm, _) in g.sub.vertices:
            if nm in siblings:
                hit = nm
                break
        if hit:
            break
    if hit is None:
        return ()
    if oracle is None or oracle.status == "inconclusive":
        return (f"fork-pairing hypothesis holds at {hit}; oracle unavailable",)
    if oracle.status == "decomposable":
        return (f"fork-pairing hypothesis holds at {hit}; oracle concurs (decomposable)",)
    return (
        f"fork-pairing hypothesis holds at {hit} but the oracle says "
        f"indecomposable: counterexample candidate",
    )
