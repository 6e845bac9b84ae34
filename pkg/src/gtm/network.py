"""Mixed graphs (networks), traversals, words, the pullback network of a
pair of tree morphisms, its 2-cover, triangles, and triangle systems."""

from __future__ import annotations

from dataclasses import dataclass

from .quiver import Arrow, TreeMorphism

# A link is a tagged union: ("a", Arrow) for a (directed) arrow or
# ("e", frozenset({u, v})) for an undirected edge.


def arrow_link(a: Arrow):
    return ("a", a)

def edge_link(u, v):
    return ("e", frozenset((u, v)))

def is_arrow_link(link) -> bool:
    return link[0] == "a"

def link_endpoints(link):
    if link[0] == "a":
        return (link[1].source, link[1].target)
    return tuple(sorted(link[1], key=_vkey))

def _vkey(v):
    """A total order across the label shapes used here: numbers sort
    numerically, strings lexicographically, tuples recursively."""
    if isinstance(v, tuple):
        return (3, tuple(_vkey(x) for x in v))
    if isinstance(v, frozenset):
        return (4, tuple(sorted(_vkey(x) for x in v)))
    if isinstance(v, bool):
        return (1, "", int(v))
    if isinstance(v, (int, float)):
        return (1, "", v)
    return (2, str(v), 0)

def link_sort_key(link):
    if link[0] == "a":
        a = link[1]
        return (0, _vkey(a.source), _vkey(a.target), _vkey(a.label))
    u, v = sorted(link[1], key=_vkey)
    return (1, _vkey(u), _vkey(v), (0, "", 0))


class MixedNetwork:
    """A quiver together with a simple undirected edge set on its vertices."""

    def __init__(self, vertices, arrows, edges, single_link=False, acyclic=False):
        self.vertices = tuple(sorted(vertices, key=_vkey))
        self.arrows = tuple(
            sorted(
                (a if isinstance(a, Arrow) else Arrow(*a) for a in arrows),
                key=lambda a: (_vkey(a.source), _vkey(a.target), _vkey(a.label)),
            )
        )
        self.edges = tuple(
            sorted(
                {frozenset(e) for e in edges},
                key=lambda e: tuple(sorted((_vkey(x) for x in e))),
            )
        )
        vset = set(self.vertices)
        for a in self.arrows:
            if a.source not in vset or a.target not in vset:
                raise ValueError("arrow endpoint not a declared vertex")
        for e in self.edges:
            if len(e) != 2 or not e <= vset:
                raise ValueError("edges must be 2-element sets of vertices")
        self._links_at = {v: [] for v in self.vertices}
        self._link_between = {}
        for a in self.arrows:
            l = arrow_link(a)
            self._links_at[a.source].append(l)
            self._links_at[a.target].append(l)
            key = frozenset((a.source, a.target))
            self._link_between.setdefault(key, []).append(l)
        for e in self.edges:
            l = ("e", e)
            for v in e:
                self._links_at[v].append(l)
            self._link_between.setdefault(e, []).append(l)
        if single_link:
            for key, ls in self._link_between.items():
                if len(ls) > 1:
                    raise ValueError(f"more than one link between {set(key)}")
        if acyclic and self._has_directed_cycle():
            raise ValueError("directed cycle of arrows")

    def _has_directed_cycle(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        queue = [v for v in self.vertices if indeg[v] == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for l in self._links_at[v]:
                if l[0] == "a" and l[1].source == v:
                    indeg[l[1].target] -= 1
                    if indeg[l[1].target] == 0:
                        queue.append(l[1].target)
        return seen != len(self.vertices)

    def links(self):
        for a in self.arrows:
            yield arrow_link(a)
        for e in self.edges:
            yield ("e", e)

    def links_at(self, v):
        return tuple(self._links_at[v])

    def link_between(self, u, v):
        ls = self._link_between.get(frozenset((u, v)), [])
        return ls[0] if ls else None

    def induced(self, vertex_subset) -> "MixedNetwork":
        vs = set(vertex_subset)
        return MixedNetwork(
            vs,
            [a for a in self.arrows if a.source in vs and a.target in vs],
            [e for e in self.edges if e <= vs],
        )

    def __repr__(self):
        return (
            f"MixedNetwork({len(self.vertices)} vertices, "
            f"{len(self.arrows)} arrows, {len(self.edges)} edges)"
        )


# --- traversals -----------------------------------------------------------
#
# A step is ("a", Arrow, +1) for a forward arrow, ("a", Arrow, -1) for a
# formal inverse, or ("e", frozenset) for an undirected edge.


@dataclass(frozen=True)
class Traversal:
    steps: tuple = ()
    base: object = None  # the vertex, for length-0 traversals

    def __post_init__(self):
        if not self.steps and self.base is None:
            raise ValueError("a length-0 traversal needs a vertex")
        if self.steps and self.base is not None:
            raise ValueError("positive-length traversals carry no base vertex")

    def __len__(self):
        return len(self.steps)


def step_is_edge(s) -> bool:
    return s[0] == "e"

def step_link(s):
    return ("e", s[1]) if s[0] == "e" else ("a", s[1])

def _tail(s):
    """Source of a directed step (undefined for edges)."""
    return s[1].source if s[2] == 1 else s[1].target

def _head(s):
    return s[1].target if s[2] == 1 else s[1].source

def step_inverse(s):
    if s[0] == "e":
        return s
    return ("a", s[1], -s[2])


def traversal_inverse(t: Traversal) -> Traversal:
    if not t.steps:
        return t
    return Traversal(tuple(step_inverse(s) for s in reversed(t.steps)))


def is_traversal(net: MixedNetwork, t: Traversal) -> bool:
    """Check the adjacency and non-backtracking conditions on a walk."""
    if not t.steps:
        return t.base in set(net.vertices)
    known_arrows = set(net.arrows)
    known_edges = set(net.edges)
    for s in t.steps:
        if s[0] == "a":
            if s[1] not in known_arrows:
                return False
        elif s[1] not in known_edges:
            return False
    S = t.steps
    n = len(S)
    for i in range(n - 1):
        a, b = S[i], S[i + 1]
        if not step_is_edge(a) and not step_is_edge(b):
            if _head(a) != _tail(b):
                return False
            if b[1] == a[1] and b[2] == -a[2]:
                return False
        elif not step_is_edge(a) and step_is_edge(b):
            if _head(a) not in b[1]:
                return False
        elif step_is_edge(a) and not step_is_edge(b):
            if _tail(b) not in a[1]:
                return False
        else:
            if len(a[1] & b[1]) != 1:
                return False
    for i in range(n - 2):
        a, b, c = S[i], S[i + 1], S[i + 2]
        if step_is_edge(a) and step_is_edge(b) and step_is_edge(c):
            if a[1] & b[1] & c[1]:
                return False
        elif not step_is_edge(a) and step_is_edge(b) and step_is_edge(c):
            if _head(a) in (b[1] & c[1]):
                return False
        elif step_is_edge(a) and step_is_edge(b) and not step_is_edge(c):
            if _tail(c) in (a[1] & b[1]):
                return False
    return True


def end_set(t: Traversal) -> frozenset:
    if not t.steps:
        return frozenset((t.base,))
    last = t.steps[-1]
    if not step_is_edge(last):
        return frozenset((_head(last),))
    if len(t.steps) == 1:
        return frozenset(last[1])
    prev = t.steps[-2]
    if step_is_edge(prev):
        return frozenset(last[1] - prev[1])
    return frozenset(last[1] - {_head(prev)})


def start_set(t: Traversal) -> frozenset:
    return end_set(traversal_inverse(t))


def visited_of_length2(t: Traversal):
    """The (start, middle, end) vertices of a length-2 traversal."""
    if len(t.steps) != 2:
        raise ValueError("need a traversal of length 2")
    a, b = t.steps
    ea = set(link_endpoints(step_link(a)))
    eb = set(link_endpoints(step_link(b)))
    if not step_is_edge(a):
        w = _head(a)
    elif not step_is_edge(b):
        w = _tail(b)
    else:
        (w,) = tuple(ea & eb)
    (s,) = tuple(ea - {w})
    (e,) = tuple(eb - {w})
    return s, w, e


def is_blocked(t: Traversal, base_net: MixedNetwork, project=None) -> bool:
    """Whether a length-2 traversal projects onto a triangle.

    project maps the traversal's vertices to base_net's; identity when
    omitted (the traversal already lives in base_net).
    """
    if len(t.steps) != 2:
        return False
    s, w, e = visited_of_length2(t)
    if project is not None:
        s, w, e = project(s), project(w), project(e)
    if len({s, w, e}) != 3:
        return False
    return (
        base_net.link_between(s, w) is not None
        and base_net.link_between(w, e) is not None
        and base_net.link_between(s, e) is not None
    )


def enumerate_traversals(net: MixedNetwork, max_len: int):
    """All traversals of length up to max_len, in deterministic order."""
    out = [Traversal(base=v) for v in net.vertices]
    all_steps = []
    for a in net.arrows:
        all_steps.append(("a", a, 1))
        all_steps.append(("a", a, -1))
    for e in net.edges:
        all_steps.append(("e", e))

    def extend(prefix):
        if len(prefix) >= max_len:
            return
        for s in all_steps:
            cand = tuple(prefix) + (s,)
            t = Traversal(cand)
            if is_traversal(net, t):
                out.append(t)
                extend(cand)

    extend(())
    return out


def reduce_word(letters):
    """Free reduction of a word over arrow labels and their inverses."""
    stack = []
    for l in letters:
        if stack and stack[-1][0] == l[0] and stack[-1][1] == -l[1]:
            stack.pop()
        else:
            stack.append(l)
    return tuple(stack)


def word_of_traversal(t: Traversal, letter_of_arrow) -> tuple:
    """Reduced word of a traversal, in walking order.

    letter_of_arrow maps a network arrow to the underlying quiver arrow
    label; edges contribute nothing.
    """
    letters = []
    for s in t.steps:
        if not step_is_edge(s):
            letters.append((letter_of_arrow(s[1]), s[2]))
    return reduce_word(letters)


# --- pullback network and 2-cover -----------------------------------------


def pullback_network(f1: TreeMorphism, f2: TreeMorphism) -> MixedNetwork:
    """The pullback of two tree morphisms, plus sign-flip edges.

    Vertices are pairs (n, m) with equal images; arrows are pairs of
    tree arrows with a common image.  An edge joins (n, m) and (n', m)
    when a shared-source fork in the first tree maps both prongs to one
    quiver arrow, and (n, m) and (n, m') for the dual shared-target
    fork in the second tree.  The construction is order-sensitive in
    (f1, f2) and is never symmetrised.
    """
    if f1.codomain != f2.codomain:
        raise ValueError("morphisms must share a codomain")
    t1, t2 = f1.domain, f2.domain
    verts = [
        (n, m)
        for n in t1.vertices
        for m in t2.vertices
        if f1.vertex_map[n] == f2.vertex_map[m]
    ]
    arrows = []
    for a in t1.arrows:
        for b in t2.arrows:
            if f1.arrow_map[a.label] == f2.arrow_map[b.label]:
                arrows.append(
                    Arrow((a.label, b.label), (a.source, b.source), (a.target, b.target))
                )
    vset = set(verts)
    edges = set()
    for n2 in t1.vertices:
        outs = t1.out_arrows(n2)
        for i in range(len(outs)):
            for j in range(len(outs)):
                if i == j:
                    continue
                a, b = outs[i], outs[j]
                if f1.arrow_map[a.label] != f1.arrow_map[b.label]:
                    continue
                if a.target == b.target:
                    continue
                for m in t2.vertices:
                    if (a.target, m) in vset and (b.target, m) in vset:
                        edges.add(frozenset(((a.target, m), (b.target, m))))
    for m2 in t2.vertices:
        ins = t2.in_arrows(m2)
        for i in range(len(ins)):
            for j in range(len(ins)):
                if i == j:
                    continue
                c, d = ins[i], ins[j]
                if f2.arrow_map[c.label] != f2.arrow_map[d.label]:
                    continue
                if c.source == d.source:
                    continue
                for n in t1.vertices:
                    if (n, c.source) in vset and (n, d.source) in vset:
                        edges.add(frozenset(((n, c.source), (n, d.source))))
    return MixedNetwork(verts, arrows, edges, single_link=True, acyclic=True)


@dataclass(frozen=True)
class Cover:
    """A 2-cover network together with its forgetful projection."""

    network: MixedNetwork

    @staticmethod
    def vertex_down(v):
        return v[0]

    @staticmethod
    def arrow_down(a: Arrow) -> Arrow:
        return Arrow(a.label[0], a.source[0], a.target[0])

    @staticmethod
    def edge_down(e) -> frozenset:
        return frozenset(x[0] for x in e)

    @staticmethod
    def link_down(link):
        if link[0] == "a":
            return ("a", Cover.arrow_down(link[1]))
        return ("e", Cover.edge_down(link[1]))

    @staticmethod
    def partner(v):
        return (v[0], -v[1])


def two_cover(base: MixedNetwork) -> Cover:
    """Double the network: arrows preserve the sign, edges flip it."""
    verts = [(v, j) for v in base.vertices for j in (-1, 1)]
    arrows = [
        Arrow((a.label, j), (a.source, j), (a.target, j))
        for a in base.arrows
        for j in (-1, 1)
    ]
    edges = []
    for e in base.edges:
        u, v = sorted(e, key=_vkey)
        for j in (-1, 1):
            edges.append(frozenset(((u, j), (v, -j))))
    net = MixedNetwork(verts, arrows, edges, single_link=True, acyclic=True)
    return Cover(net)


def lift_link_through(base_link, vertex):
    """The unique cover link over base_link incident to the cover vertex."""
    v, j = vertex
    if base_link[0] == "a":
        a = base_link[1]
        if v not in (a.source, a.target):
            raise ValueError("vertex not on the link")
        return ("a", Arrow((a.label, j), (a.source, j), (a.target, j)))
    e = base_link[1]
    if v not in e:
        raise ValueError("vertex not on the link")
    (other,) = tuple(e - {v})
    return ("e", frozenset(((v, j), (other, -j))))


# --- triangles, classes, and systems --------------------------------------


@dataclass(frozen=True)
class TriangleClass:
    """A set of triangles closed under sharing links, plus its vertex set."""

    triangles: tuple
    vertices: tuple


def triangles_and_classes(net: MixedNetwork):
    """All 3-vertex cliques of a pullback network and their link-sharing
    classes.  Each class's vertex set induces a clique (asserted)."""
    vs = net.vertices
    triangles = []
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            if net.link_between(vs[i], vs[j]) is None:
                continue
            for k in range(j + 1, len(vs)):
                if (
                    net.link_between(vs[i], vs[k]) is not None
                    and net.link_between(vs[j], vs[k]) is not None
                ):
                    triangles.append((vs[i], vs[j], vs[k]))
    link_key = {}
    parent = list(range(len(triangles)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for idx, tri in enumerate(triangles):
        a, b, c = tri
        for u, v in ((a, b), (a, c), (b, c)):
            l = net.link_between(u, v)
            key = link_sort_key(l)
            if key in link_key:
                ra, rb = find(link_key[key]), find(idx)
                if ra != rb:
                    parent[ra] = rb
            else:
                link_key[key] = idx
    groups = {}
    for idx in range(len(triangles)):
        groups.setdefault(find(idx), []).append(idx)
    classes = []
    for idxs in groups.values():
        tris = tuple(triangles[i] for i in sorted(idxs))
        vset = tuple(sorted({v for t in tris for v in t}))
        for i, u in enumerate(vset):
            for v in vset[i + 1 :]:
                if net.link_between(u, v) is None:
                    raise AssertionError("class vertex set is not a clique")
        classes.append(TriangleClass(tris, vset))
    classes.sort(key=lambda c: c.vertices)
    return triangles, classes


@dataclass(frozen=True)
class TriangleSystem:
    """The subnetwork induced by a triangle class inside a vertex set."""

    level: int
    base_vertices: tuple
    network: MixedNetwork


def triangle_systems(base: MixedNetwork, cover: Cover, classes, vertex_subset):
    """Level-1 systems (one per class meeting the subset in >= 3 vertices)
    and their preimage level-2 systems."""
    vs = set(vertex_subset)
    out = []
    for cls in classes:
        inside = tuple(v for v in cls.vertices if v in vs)
        if len(inside) < 3:
            continue
        s1 = TriangleSystem(1, inside, base.induced(inside))
        lifted = [(v, j) for v in inside for j in (-1, 1)]
        s2 = TriangleSystem(2, inside, cover.network.induced(lifted))
        out.append((s1, s2))
    return out


# --- DOT export ------------------------------------------------------------


def vertex_display(v) -> str:
    """Flatten cover vertices ((n, m), j) to (n, m, +/-) for display."""
    if (
        isinstance(v, tuple)
        and len(v) == 2
        and isinstance(v[0], tuple)
        and v[1] in (-1, 1)
    ):
        inner = ",".join(str(x) for x in v[0])
        return f"({inner},{'+' if v[1] == 1 else '-'})"
    if isinstance(v, tuple):
        return "(" + ",".join(str(x) for x in v) + ")"
    return str(v)


def to_dot(net: MixedNetwork, name="network", highlight=()) -> str:
    """DOT text for a network; undirected edges suppress their direction.

    highlight is a collection of links and/or vertices drawn in color.
    """
    hv = {vertex_display(x) for x in highlight if not isinstance(x, tuple) or x[0] not in ("a", "e")}
    hl = {link_sort_key(x) for x in highlight if isinstance(x, tuple) and x[0] in ("a", "e")}
    lines = [f"digraph {name} {{"]
    for v in net.vertices:
        d = vertex_display(v)
        attr = ' [color=red]' if d in hv else ""
        lines.append(f'  "{d}"{attr};')
    for a in net.arrows:
        attr = ' color=red' if link_sort_key(("a", a)) in hl else ""
        lines.append(
            f'  "{vertex_display(a.source)}" -> "{vertex_display(a.target)}"'
            f' [label="{vertex_display(a.label)}"{attr}];'
        )
    for e in net.edges:
        u, v = sorted(e, key=_vkey)
        attr = ' color=red' if link_sort_key(("e", e)) in hl else ""
        lines.append(
            f'  "{vertex_display(u)}" -> "{vertex_display(v)}" [dir=none{attr}];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
