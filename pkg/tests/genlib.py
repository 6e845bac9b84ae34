"""Seeded random instances shared by the property and acceptance tests."""

import random

from gtm import (
    Arrow,
    BoundQuiver,
    ModulePair,
    Tree,
    TreeMorphism,
    is_ghost_free,
    validate_morphism,
)


def random_quiver(rng: random.Random) -> BoundQuiver:
    """Up to 5 vertices and 8 arrows, with a few length-2 monomial relations."""
    nv = rng.randint(1, 5)
    vertices = [f"q{i}" for i in range(1, nv + 1)]
    na = rng.randint(1, 8)
    arrows = []
    for i in range(na):
        s = rng.choice(vertices)
        candidates = [t for t in vertices if t != s]
        if not candidates:
            continue
        arrows.append(Arrow(f"g{i}", s, rng.choice(candidates)))
    relations = []
    pairs = [
        (x.label, y.label)
        for x in arrows
        for y in arrows
        if x.target == y.source
    ]
    rng.shuffle(pairs)
    for x, y in pairs[: rng.randint(0, 2)]:
        relations.append((x, y))
    return BoundQuiver(vertices, arrows, relations)


def random_tree_morphism(rng: random.Random, q: BoundQuiver, max_vertices=8):
    """A random bound morphism from a random tree into q, or None when the
    random walk gets stuck."""
    nv = rng.randint(1, max_vertices)
    vmap = {1: rng.choice(q.vertices)}
    arrows = []
    amap = {}
    for n in range(2, nv + 1):
        parent = rng.randint(1, n - 1)
        img = vmap[parent]
        outs = q.out_arrows(img)
        ins = q.in_arrows(img)
        options = [("down", g) for g in outs] + [("up", g) for g in ins]
        if not options:
            return None
        direction, g = rng.choice(options)
        label = f"t{n}"
        if direction == "down":
            arrows.append(Arrow(label, parent, n))
            vmap[n] = g.target
        else:
            arrows.append(Arrow(label, n, parent))
            vmap[n] = g.source
        amap[label] = g.label
    tree = Tree(range(1, nv + 1), arrows)
    f = TreeMorphism(tree, q, vmap, amap)
    if not validate_morphism(f).is_bound:
        return None
    return f


def random_pairs(seed: int, count: int, ghost_free=True, max_vertices=8):
    """Deterministic stream of module pairs over random quivers."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        q = random_quiver(rng)
        f1 = random_tree_morphism(rng, q, max_vertices)
        f2 = random_tree_morphism(rng, q, max_vertices)
        if f1 is None or f2 is None:
            continue
        pair = ModulePair(f1, f2)
        if ghost_free and not is_ghost_free(pair):
            continue
        out.append(pair)
    return out


def random_tree_modules(seed: int, count: int, max_vertices=8):
    """Deterministic stream of morphisms satisfying the tree-module condition."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        q = random_quiver(rng)
        f = random_tree_morphism(rng, q, max_vertices)
        if f is None:
            continue
        if not validate_morphism(f).is_tree_module:
            continue
        out.append(f)
    return out
