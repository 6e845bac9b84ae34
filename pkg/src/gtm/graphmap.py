"""Distinguished subnetworks of the 2-cover: completeness, block-freeness,
carving, ghosts, graph maps, and the decomposition of homomorphisms into
graph-map combinations."""

from __future__ import annotations

from dataclasses import dataclass

from .fields import QQ
from .network import (
    Cover,
    MixedNetwork,
    _vkey,
    lift_link_through,
    link_endpoints,
    link_sort_key,
    pullback_network,
    triangle_systems,
    triangles_and_classes,
    two_cover,
)
from .quiver import Arrow, TreeMorphism
from .rep import Homomorphism, hom_space, pushdown, support_pairs, verify_hom


class PreconditionError(ValueError):
    """A documented precondition of an operation was violated."""


class GhostObstruction(RuntimeError):
    """Raised when a ghost blocks an operation that assumes ghost-freeness."""

    def __init__(self, ghost):
        super().__init__("the module pair is not ghost-free")
        self.ghost = ghost


class SearchBudgetExceeded(RuntimeError):
    """An enumeration exceeded its caller-imposed node budget."""


class ModulePair:
    """Everything attached to an ordered pair of generalised tree modules:
    pushed-down representations, the pullback network, its 2-cover, and
    the triangle bookkeeping.  All derived data is cached; instances are
    immutable by convention."""

    def __init__(self, f1: TreeMorphism, f2: TreeMorphism, field=QQ):
        if f1.codomain != f2.codomain:
            raise ValueError("tree morphisms must share a codomain")
        self.f1 = f1
        self.f2 = f2
        self.field = field
        self.m1 = pushdown(f1, field)
        self.m2 = pushdown(f2, field)
        self._cache = {}

    def _get(self, key, make):
        if key not in self._cache:
            self._cache[key] = make()
        return self._cache[key]

    @property
    def base(self) -> MixedNetwork:
        return self._get("base", lambda: pullback_network(self.f1, self.f2))

    @property
    def cover(self) -> Cover:
        return self._get("cover", lambda: two_cover(self.base))

    @property
    def triangles(self):
        return self._get("tri", lambda: triangles_and_classes(self.base))[0]

    @property
    def classes(self):
        return self._get("tri", lambda: triangles_and_classes(self.base))[1]

    @staticmethod
    def partner(v):
        return (v[0], -v[1])

    def blocked_pair(self, l1, l2) -> bool:
        """Whether two distinct cover links through a common vertex project
        onto two sides of a triangle."""
        e1 = set(link_endpoints(l1))
        e2 = set(link_endpoints(l2))
        shared = e1 & e2
        if len(shared) != 1:
            return False
        (s,) = e1 - shared
        (e,) = e2 - shared
        if s[0] == e[0]:
            return False
        return self.base.link_between(s[0], e[0]) is not None

    def oblig_witnesses(self, v):
        """Completeness obligations of a cover vertex, with the admissible
        witnessing links for each.

        An obligation is ("in", a) per tree-1 arrow a into the left
        coordinate, or ("out", b) per tree-2 arrow b out of the right
        coordinate.  Each witness is (link, other_endpoint): an arrow
        with a matching image, or a sign-flipping edge across a fork.
        """
        key = ("ow", v)
        if key in self._cache:
            return self._cache[key]
        (n, m), j = v
        t1, t2 = self.f1.domain, self.f2.domain
        f1a, f2a = self.f1.arrow_map, self.f2.arrow_map
        out = []
        for a in t1.in_arrows(n):
            gamma = f1a[a.label]
            opts = []
            for b in t2.in_arrows(m):
                if f2a[b.label] == gamma:
                    u = ((a.source, b.source), j)
                    opts.append((("a", Arrow(((a.label, b.label), j), u, v)), u))
            for c in t1.out_arrows(a.source):
                if (
                    c.label != a.label
                    and f1a[c.label] == gamma
                    and c.target != n
                ):
                    u = ((c.target, m), -j)
                    opts.append((("e", frozenset((v, u))), u))
            out.append((("in", a.label), tuple(opts)))
        for b in t2.out_arrows(m):
            gamma = f2a[b.label]
            opts = []
            for a in t1.out_arrows(n):
                if f1a[a.label] == gamma:
                    u = ((a.target, b.target), j)
                    opts.append((("a", Arrow(((a.label, b.label), j), v, u)), u))
            for d in t2.in_arrows(b.target):
                if (
                    d.label != b.label
                    and f2a[d.label] == gamma
                    and d.source != m
                ):
                    u = ((n, d.source), -j)
                    opts.append((("e", frozenset((v, u))), u))
            out.append((("out", b.label), tuple(opts)))
        self._cache[key] = tuple(out)
        return self._cache[key]

    def __repr__(self):
        return f"ModulePair({self.f1!r}, {self.f2!r})"


@dataclass(frozen=True)
class Subnetwork:
    """A closed subnetwork of a pair's 2-cover network."""

    pair: ModulePair
    vertices: frozenset
    arrows: frozenset
    edges: frozenset

    def __post_init__(self):
        net = self.pair.cover.network
        if not self.vertices <= set(net.vertices):
            raise ValueError("vertices outside the cover network")
        for a in self.arrows:
            if a not in set(net.arrows):
                raise ValueError(f"unknown cover arrow {a}")
            if a.source not in self.vertices or a.target not in self.vertices:
                raise ValueError("arrow endpoint missing (closure violated)")
        for e in self.edges:
            if e not in set(net.edges):
                raise ValueError(f"unknown cover edge {set(e)}")
            if not e <= self.vertices:
                raise ValueError("edge endpoint missing (closure violated)")

    @staticmethod
    def from_links(pair: ModulePair, vertices, links) -> "Subnetwork":
        arrows = frozenset(l[1] for l in links if l[0] == "a")
        edges = frozenset(l[1] for l in links if l[0] == "e")
        return Subnetwork(pair, frozenset(vertices), arrows, edges)

    @staticmethod
    def empty(pair: ModulePair) -> "Subnetwork":
        return Subnetwork(pair, frozenset(), frozenset(), frozenset())

    @staticmethod
    def induced(pair: ModulePair, vertices) -> "Subnetwork":
        vs = frozenset(vertices)
        net = pair.cover.network
        arrows = frozenset(
            a for a in net.arrows if a.source in vs and a.target in vs
        )
        edges = frozenset(e for e in net.edges if e <= vs)
        return Subnetwork(pair, vs, arrows, edges)

    def links(self):
        for a in self.arrows:
            yield ("a", a)
        for e in self.edges:
            yield ("e", e)

    def sorted_vertices(self):
        return tuple(sorted(self.vertices, key=_vkey))

    def key(self):
        return (
            tuple(sorted(self.vertices, key=_vkey)),
            tuple(sorted((("a", a) for a in self.arrows), key=link_sort_key)),
            tuple(sorted((("e", e) for e in self.edges), key=link_sort_key)),
        )

    def __len__(self):
        return len(self.vertices)


def components(sub: Subnetwork):
    """Connected components, each a closed subnetwork, in canonical order."""
    adj = {v: set() for v in sub.vertices}
    all_links = list(sub.links())
    for l in all_links:
        u, v = link_endpoints(l)
        adj[u].add(v)
        adj[v].add(u)
    seen = set()
    comps = []
    for v in sorted(sub.vertices, key=_vkey):
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
        links = [l for l in all_links if set(link_endpoints(l)) <= comp]
        comps.append(Subnetwork.from_links(sub.pair, comp, links))
    return comps


def is_connected(sub: Subnetwork) -> bool:
    return len(components(sub)) == 1


def is_involution_free(sub: Subnetwork) -> bool:
    return all(sub.pair.partner(v) not in sub.vertices for v in sub.vertices)


def is_involution_invariant(sub: Subnetwork) -> bool:
    return all(sub.pair.partner(v) in sub.vertices for v in sub.vertices)


@dataclass(frozen=True)
class CompletenessCheck:
    complete: bool
    violations: tuple  # (vertex, tree arrow label, "in" | "out")


def is_complete(sub: Subnetwork) -> CompletenessCheck:
    """Every obligation of every vertex must be witnessed inside sub."""
    links = set(sub.links())
    violations = []
    for v in sorted(sub.vertices, key=_vkey):
        for (direction, arrow_label), opts in sub.pair.oblig_witnesses(v):
            if not any(l in links for l, _ in opts):
                violations.append((v, arrow_label, direction))
    return CompletenessCheck(not violations, tuple(violations))


def witness_counts(sub: Subnetwork):
    """How many links of sub witness each obligation; the direct route to
    the uniqueness characterisation of block-freeness."""
    links = set(sub.links())
    out = {}
    for v in sorted(sub.vertices, key=_vkey):
        for (direction, arrow_label), opts in sub.pair.oblig_witnesses(v):
            out[(v, direction, arrow_label)] = sum(
                1 for l, _ in opts if l in links
            )
    return out


def is_block_free(sub: Subnetwork) -> bool:
    """No two links of sub form a length-2 traversal projecting onto a
    triangle."""
    ls = sorted(sub.links(), key=link_sort_key)
    for i in range(len(ls)):
        ei = set(link_endpoints(ls[i]))
        for j in range(i + 1, len(ls)):
            if ei & set(link_endpoints(ls[j])) and sub.pair.blocked_pair(
                ls[i], ls[j]
            ):
                return False
    return True


def hom_of_subnetwork(sub: Subnetwork) -> Homomorphism:
    """The linear map sending each left basis vector to the signed sum of
    the right basis vectors paired with it in sub."""
    pair = sub.pair
    f = pair.field
    m1, m2 = pair.m1, pair.m2
    mats = {
        v: [[f.zero] * m1.dims[v] for _ in range(m2.dims[v])]
        for v in m1.quiver.vertices
    }
    for (n, m), j in sub.vertices:
        qv = pair.f1.vertex_map[n]
        r = m2.basis[qv].index(m)
        c = m1.basis[qv].index(n)
        mats[qv][r][c] = f.add(mats[qv][r][c], f.of(j))
    frozen = {v: tuple(tuple(row) for row in m) for v, m in mats.items()}
    return Homomorphism(m1, m2, frozen)


# --- carving ----------------------------------------------------------------


def _pair_matching(pair: ModulePair, u, v):
    bl = pair.base.link_between(u, v)
    return [lift_link_through(bl, (u, 1)), lift_link_through(bl, (u, -1))]


def _triple_matching(pair: ModulePair, triple):
    """Alternate links of the hexagon over a triangle: walk the base cycle
    once, lifting each side through the vertex the previous side missed."""
    x, y, z = triple
    chosen = []
    at = (x, 1)
    for u, v in ((x, y), (y, z), (z, x)):
        bl = pair.base.link_between(u, v)
        l = lift_link_through(bl, at)
        ends = link_endpoints(l)
        over_v = ends[0] if ends[0][0] == v else ends[1]
        chosen.append(l)
        at = (v, -over_v[1])
    covered = {p for l in chosen for p in link_endpoints(l)}
    if len(covered) != 6:
        raise AssertionError("hexagon matching failed to cover all vertices")
    return chosen


def _carve_with_plan(pair: ModulePair, base_vertices):
    """Replace the links inside every triangle system by a perfect matching
    of its hexagons; returns the carved subnetwork and, per odd system,
    the final triple with its three chosen links."""
    vs = sorted(set(base_vertices), key=_vkey)
    lifted = frozenset((v, j) for v in vs for j in (-1, 1))
    m = Subnetwork.induced(pair, lifted)
    check = is_complete(m)
    if not check.complete:
        raise PreconditionError(
            f"induced subnetwork is not complete: {check.violations}"
        )
    systems = triangle_systems(pair.base, pair.cover, pair.classes, vs)
    inside = set()
    matched = []
    plan = []
    for s1, s2 in systems:
        for a in s2.network.arrows:
            inside.add(("a", a))
        for e in s2.network.edges:
            inside.add(("e", e))
        bases = list(s1.base_vertices)
        k = len(bases)
        parts = []
        if k % 2 == 0:
            for i in range(0, k, 2):
                parts.append(bases[i : i + 2])
        else:
            for i in range(0, k - 3, 2):
                parts.append(bases[i : i + 2])
            parts.append(bases[k - 3 :])
        for part in parts:
            if len(part) == 2:
                matched.extend(_pair_matching(pair, *part))
            else:
                chosen = _triple_matching(pair, tuple(part))
                matched.extend(chosen)
                plan.append((tuple(part), tuple(chosen)))
    links = (set(m.links()) - inside) | set(matched)
    carved = Subnetwork.from_links(pair, m.vertices, links)
    return carved, plan


def carve_block_free(pair: ModulePair, base_vertices) -> Subnetwork:
    """A complete block-free subnetwork on the full preimage of the given
    base vertices.  The input's induced preimage must be complete."""
    carved, _ = _carve_with_plan(pair, base_vertices)
    check = is_complete(carved)
    if not check.complete:
        raise AssertionError(f"carved subnetwork incomplete: {check.violations}")
    if not is_block_free(carved):
        raise AssertionError("carved subnetwork is not block-free")
    return carved


# --- graph maps and ghosts ---------------------------------------------------


@dataclass(frozen=True)
class GraphMap:
    """A nonempty connected involution-free complete block-free subnetwork,
    together with the homomorphism it realizes."""

    sub: Subnetwork
    hom: Homomorphism

    @staticmethod
    def wrap(sub: Subnetwork) -> "GraphMap":
        if not sub.vertices:
            raise ValueError("graph maps are nonempty")
        if not is_connected(sub):
            raise ValueError("graph maps are connected")
        if not is_involution_free(sub):
            raise ValueError("graph maps are involution-free")
        if not is_complete(sub).complete:
            raise ValueError("graph maps are complete")
        if not is_block_free(sub):
            raise ValueError("graph maps are block-free")
        h = hom_of_subnetwork(sub)
        if not verify_hom(h):
            raise AssertionError("realized map is not a homomorphism")
        return GraphMap(sub, h)

    def neg(self) -> "GraphMap":
        pair = self.sub.pair
        verts = frozenset(pair.partner(v) for v in self.sub.vertices)
        arrows = frozenset(
            Arrow(
                (a.label[0], -a.label[1]),
                pair.partner(a.source),
                pair.partner(a.target),
            )
            for a in self.sub.arrows
        )
        edges = frozenset(
            frozenset(pair.partner(v) for v in e) for e in self.sub.edges
        )
        return GraphMap.wrap(Subnetwork(pair, verts, arrows, edges))

    def key(self):
        return self.sub.key()


@dataclass(frozen=True)
class Ghost:
    """A nonempty connected involution-invariant complete block-free
    subnetwork; it always realizes the zero map."""

    sub: Subnetwork
    hom: Homomorphism

    @staticmethod
    def wrap(sub: Subnetwork) -> "Ghost":
        if not sub.vertices:
            raise ValueError("ghosts are nonempty")
        if not is_connected(sub):
            raise ValueError("ghosts are connected")
        if not is_involution_invariant(sub):
            raise ValueError("ghosts are involution-invariant")
        if not is_complete(sub).complete:
            raise ValueError("ghosts are complete")
        if not is_block_free(sub):
            raise ValueError("ghosts are block-free")
        h = hom_of_subnetwork(sub)
        if not h.is_zero():
            raise AssertionError("ghost realizes a nonzero map")
        return Ghost(sub, h)

    def key(self):
        return self.sub.key()


def _share_vertex(l1, l2) -> bool:
    return bool(set(link_endpoints(l1)) & set(link_endpoints(l2)))


def _grow_islands(pair: ModulePair, seed, involution_free: bool, results):
    """Depth-first growth of connected complete block-free subnetworks from
    a seed vertex.

    The first unsatisfied obligation (canonical order) is resolved by
    each admissible witness in turn; branches that would add a vertex
    below the seed are dropped, since those islands are found from their
    own minimal vertex.  Adding a link whose far endpoint's partner is
    already present is pruned only in involution-free mode.
    """
    verts = {seed}
    links = set()
    seed_key = _vkey(seed)

    def first_unsatisfied():
        for v in sorted(verts, key=_vkey):
            for _, opts in pair.oblig_witnesses(v):
                if not any(l in links for l, _ in opts):
                    return opts
        return None

    def blocked_with_existing(link):
        ends = set(link_endpoints(link))
        for l2 in links:
            if ends & set(link_endpoints(l2)) and pair.blocked_pair(link, l2):
                return True
        return False

    def rec():
        opts = first_unsatisfied()
        if opts is None:
            sub = Subnetwork.from_links(pair, frozenset(verts), set(links))
            results.setdefault(sub.key(), sub)
            return
        for link, other in opts:
            fresh = other not in verts
            if fresh:
                if _vkey(other) < seed_key:
                    continue
                if involution_free and pair.partner(other) in verts:
                    continue
            if link in links or blocked_with_existing(link):
                continue
            verts.add(other)
            links.add(link)
            rec()
            links.discard(link)
            if fresh:
                verts.discard(other)

    rec()


def _islands(pair: ModulePair, involution_free: bool):
    key = ("islands", involution_free)

    def make():
        results = {}
        for seed in pair.cover.network.vertices:
            _grow_islands(pair, seed, involution_free, results)
        return tuple(results[k] for k in sorted(results))

    return pair._get(key, make)


def enumerate_graph_maps(pair: ModulePair):
    """All graph maps of the pair, in canonical order; closed under G -> -G."""
    return pair._get(
        "ggms",
        lambda: tuple(GraphMap.wrap(s) for s in _islands(pair, True)),
    )


def enumerate_ghosts(pair: ModulePair):
    """All ghosts of the pair, in canonical order."""
    return pair._get(
        "ghosts",
        lambda: tuple(
            Ghost.wrap(s)
            for s in _islands(pair, False)
            if is_involution_invariant(s)
        ),
    )


def is_ghost_free(pair: ModulePair) -> bool:
    return not enumerate_ghosts(pair)


# --- extraction of a graph map from a homomorphism ---------------------------


def _component_of(pair: ModulePair, vertices, links, v0) -> Subnetwork:
    adj = {v: set() for v in vertices}
    for l in links:
        u, v = link_endpoints(l)
        adj[u].add(v)
        adj[v].add(u)
    comp = {v0}
    stack = [v0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in comp:
                comp.add(y)
                stack.append(y)
    kept = [l for l in links if set(link_endpoints(l)) <= comp]
    return Subnetwork.from_links(pair, comp, kept)


def carve_graph_map(pair: ModulePair, h: Homomorphism) -> GraphMap:
    """Extract a graph map supported inside the support of h.

    Carve the support's preimage, pick the component of the smallest
    vertex without its involution partner, restore the mirror-closure
    property on the odd triple hexagons, and take the component of that
    vertex.  A pair that defeats the partner search exhibits a ghost,
    which is raised as the obstruction.
    """
    if h.is_zero():
        raise PreconditionError("cannot extract a graph map from the zero map")
    if not verify_hom(h):
        raise PreconditionError("input is not a homomorphism")
    mbar, plan = _carve_with_plan(pair, support_pairs(h))
    comps = components(mbar)
    comp_of = {}
    for comp in comps:
        for v in comp.vertices:
            comp_of[v] = comp
    v0 = None
    for v in sorted(mbar.vertices, key=_vkey):
        if pair.partner(v) not in comp_of[v].vertices:
            v0 = v
            break
    if v0 is None:
        raise GhostObstruction(Ghost.wrap(comps[0]))
    m = comp_of[v0]
    links = set(m.links())
    for triple, chosen in plan:
        present = [l for l in chosen if l in links]
        if len(present) == 2:
            pts = [p for l in present for p in link_endpoints(l)]
            inv_pair = None
            for p in pts:
                if pair.partner(p) in pts:
                    inv_pair = (p, pair.partner(p))
                    break
            l1 = next(l for l in present if inv_pair[0] in link_endpoints(l))
            l2 = next(l for l in present if inv_pair[1] in link_endpoints(l))
            (y,) = [p for p in link_endpoints(l1) if p != inv_pair[0]]
            (z,) = [p for p in link_endpoints(l2) if p != inv_pair[1]]
            links.discard(l1)
            links.discard(l2)
            repl = pair.cover.network.link_between(y, z)
            if repl is None:
                raise AssertionError("rewiring target link missing")
            links.add(repl)
        elif len(present) == 3:
            x, y, _ = triple
            for l in present:
                links.discard(l)
            links.update(_pair_matching(pair, x, y))
    g = _component_of(pair, m.vertices, links, v0)
    return GraphMap.wrap(g)


def decompose_hom(pair: ModulePair, h: Homomorphism):
    """Write h as an exact weighted sum of graph-map homomorphisms.

    Each step extracts a graph map inside the current support, cancels
    the coefficient at that map's smallest vertex, and recurses; the
    support shrinks strictly.  Requires the pair to be ghost-free along
    the way (a ghost aborts the run as an obstruction).
    """
    if not verify_hom(h):
        raise PreconditionError("input is not a homomorphism")
    field = pair.field
    terms = []
    r = h
    supp = support_pairs(r)
    while not r.is_zero():
        g = carve_graph_map(pair, r)
        (n, m), j = min(g.sub.vertices, key=_vkey)
        qv = pair.f1.vertex_map[n]
        mu = r.entry(qv, m, n)
        coeff = mu if j == 1 else field.neg(mu)
        terms.append((coeff, g))
        r = r.sub(g.hom.scale(coeff))
        new_supp = support_pairs(r)
        if len(new_supp) >= len(supp):
            raise AssertionError("support failed to shrink")
        supp = new_supp
    total = None
    for c, g in terms:
        t = g.hom.scale(c)
        total = t if total is None else total.add(t)
    if terms and not total.equals(h):
        raise AssertionError("decomposition does not sum back to the input")
    return terms
