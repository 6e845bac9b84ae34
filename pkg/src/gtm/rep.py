"""Representations of bound quivers, homomorphism spaces, and the
exhaustive idempotent oracle for (in)decomposability."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .fields import PrimeField, QQ, Rationals
from .linalg import (
    identity,
    is_zero_matrix,
    kernel_basis,
    mat_add,
    mat_mul,
    mat_neg,
    mat_scale,
    mat_sub,
    rank,
    trace,
    zeros,
)
from .quiver import BoundQuiver, TreeMorphism, validate_morphism


class Representation:
    """Exact matrices over a field, one vector space per quiver vertex.

    basis[v] holds labels for the chosen basis of the space at v; for
    modules produced by pushdown these are the tree vertices of the
    fiber, in ascending order.
    """

    def __init__(self, quiver: BoundQuiver, field, dims, mats, basis=None):
        self.quiver = quiver
        self.field = field
        self.dims = dict(dims)
        self.mats = dict(mats)
        if basis is None:
            basis = {v: tuple(range(self.dims.get(v, 0))) for v in quiver.vertices}
        self.basis = {v: tuple(b) for v, b in basis.items()}
        for v in quiver.vertices:
            if self.dims.get(v, 0) < 0:
                raise ValueError("negative dimension")
            self.dims.setdefault(v, 0)
            self.basis.setdefault(v, tuple(range(self.dims[v])))
            if len(self.basis[v]) != self.dims[v]:
                raise ValueError(f"basis length mismatch at vertex {v}")
        for a in quiver.arrows:
            m = self.mats.get(a.label)
            if m is None:
                m = zeros(field, self.dims[a.target], self.dims[a.source])
                self.mats[a.label] = m
            if len(m) != self.dims[a.target] or any(
                len(row) != self.dims[a.source] for row in m
            ):
                raise ValueError(f"matrix shape mismatch at arrow {a.label}")
        for r in quiver.relations:
            if not is_zero_matrix(self.field, self.path_matrix(r)):
                raise ValueError(f"relation {r} does not vanish")

    def path_matrix(self, labels):
        """Composite matrix along a path given in traversal order."""
        first = self.quiver.arrow(labels[0])
        cur = self.mats[labels[0]]
        cols = self.dims[first.source]
        for l in labels[1:]:
            cur = mat_mul(self.field, self.mats[l], cur, cols_if_empty=cols)
        return cur

    def dim_vector(self):
        return tuple(self.dims[v] for v in sorted(self.quiver.vertices, key=str))

    def total_dim(self):
        return sum(self.dims.values())

    def permuted(self, perms):
        """Same module with each vertex basis permuted by perms[v]."""
        dims = dict(self.dims)
        basis = {
            v: tuple(self.basis[v][i] for i in perms.get(v, range(dims[v])))
            for v in self.quiver.vertices
        }
        mats = {}
        for a in self.quiver.arrows:
            ps = perms.get(a.source, range(dims[a.source]))
            pt = perms.get(a.target, range(dims[a.target]))
            m = self.mats[a.label]
            mats[a.label] = tuple(
                tuple(m[pt[i]][ps[j]] for j in range(dims[a.source]))
                for i in range(dims[a.target])
            )
        return Representation(self.quiver, self.field, dims, mats, basis)

    def __repr__(self):
        return f"Representation(dims={self.dims})"


def pushdown(f: TreeMorphism, field=QQ) -> Representation:
    """Push a tree down along a bound morphism to a representation.

    The space at a quiver vertex is spanned by the tree vertices in its
    fiber (ascending); each tree arrow contributes a single 1 entry in
    the matrix of its image arrow.
    """
    report = validate_morphism(f)
    if not report.is_bound:
        raise ValueError("morphism is not bound; pushdown undefined")
    q = f.codomain
    fibers = {v: [] for v in q.vertices}
    for n in f.domain.vertices:
        fibers[f.vertex_map[n]].append(n)
    basis = {v: tuple(sorted(ns)) for v, ns in fibers.items()}
    dims = {v: len(basis[v]) for v in q.vertices}
    index = {
        v: {n: i for i, n in enumerate(basis[v])} for v in q.vertices
    }
    mats = {
        a.label: [
            [field.zero] * dims[a.source] for _ in range(dims[a.target])
        ]
        for a in q.arrows
    }
    for ta in f.domain.arrows:
        g = q.arrow(f.arrow_map[ta.label])
        row = index[g.target][ta.target]
        col = index[g.source][ta.source]
        mats[g.label][row][col] = field.add(mats[g.label][row][col], field.one)
    frozen = {l: tuple(tuple(r) for r in m) for l, m in mats.items()}
    return Representation(q, field, dims, frozen, basis)


class Homomorphism:
    """A homomorphism candidate: one matrix per quiver vertex."""

    def __init__(self, source: Representation, target: Representation, mats):
        self.source = source
        self.target = target
        self.field = source.field
        self.mats = dict(mats)
        for v in source.quiver.vertices:
            m = self.mats.get(v)
            if m is None:
                m = zeros(self.field, target.dims[v], source.dims[v])
                self.mats[v] = m
            if len(m) != target.dims[v] or any(
                len(row) != source.dims[v] for row in m
            ):
                raise ValueError(f"matrix shape mismatch at vertex {v}")

    def is_zero(self) -> bool:
        return all(is_zero_matrix(self.field, m) for m in self.mats.values())

    def add(self, other: "Homomorphism") -> "Homomorphism":
        return Homomorphism(
            self.source,
            self.target,
            {v: mat_add(self.field, self.mats[v], other.mats[v]) for v in self.mats},
        )

    def sub(self, other: "Homomorphism") -> "Homomorphism":
        return Homomorphism(
            self.source,
            self.target,
            {v: mat_sub(self.field, self.mats[v], other.mats[v]) for v in self.mats},
        )

    def scale(self, c) -> "Homomorphism":
        return Homomorphism(
            self.source,
            self.target,
            {v: mat_scale(self.field, c, self.mats[v]) for v in self.mats},
        )

    def neg(self) -> "Homomorphism":
        return Homomorphism(
            self.source,
            self.target,
            {v: mat_neg(self.field, self.mats[v]) for v in self.mats},
        )

    def compose(self, inner: "Homomorphism") -> "Homomorphism":
        """self after inner."""
        mats = {}
        for v in self.mats:
            mats[v] = mat_mul(
                self.field,
                self.mats[v],
                inner.mats[v],
                cols_if_empty=inner.source.dims[v],
            )
        return Homomorphism(inner.source, self.target, mats)

    def equals(self, other: "Homomorphism") -> bool:
        return all(self.mats[v] == other.mats[v] for v in self.mats)

    def entry(self, vertex, row_label, col_label):
        rows = self.target.basis[vertex]
        cols = self.source.basis[vertex]
        return self.mats[vertex][rows.index(row_label)][cols.index(col_label)]

    def trace_sum(self):
        t = self.field.zero
        for m in self.mats.values():
            t = self.field.add(t, trace(self.field, m))
        return t

    def rank_sum(self) -> int:
        total = 0
        for v, m in self.mats.items():
            total += rank(self.field, m, ncols=self.source.dims[v])
        return total

    def __repr__(self):
        return f"Homomorphism({self.mats})"


def identity_hom(m: Representation) -> Homomorphism:
    return Homomorphism(
        m, m, {v: identity(m.field, m.dims[v]) for v in m.quiver.vertices}
    )


def zero_hom(m1: Representation, m2: Representation) -> Homomorphism:
    return Homomorphism(m1, m2, {})


def verify_hom(h: Homomorphism) -> bool:
    """Exact check that h intertwines every arrow matrix."""
    m1, m2 = h.source, h.target
    if m1.quiver != m2.quiver or m1.field != m2.field:
        raise ValueError("source and target live over different data")
    f = h.field
    for a in m1.quiver.arrows:
        lhs = mat_mul(
            f, h.mats[a.target], m1.mats[a.label], cols_if_empty=m1.dims[a.source]
        )
        rhs = mat_mul(
            f, m2.mats[a.label], h.mats[a.source], cols_if_empty=m1.dims[a.source]
        )
        if lhs != rhs:
            return False
    return True


def hom_defects(h: Homomorphism):
    """Per-arrow pairs (lhs, rhs) of the intertwining identity that differ."""
    m1, m2 = h.source, h.target
    f = h.field
    out = {}
    for a in m1.quiver.arrows:
        lhs = mat_mul(
            f, h.mats[a.target], m1.mats[a.label], cols_if_empty=m1.dims[a.source]
        )
        rhs = mat_mul(
            f, m2.mats[a.label], h.mats[a.source], cols_if_empty=m1.dims[a.source]
        )
        if lhs != rhs:
            out[a.label] = (lhs, rhs)
    return out


def _hom_variables(m1: Representation, m2: Representation):
    """Canonical variable order: vertices sorted, then row-major entries."""
    var_index = {}
    order = []
    for v in sorted(m1.quiver.vertices, key=str):
        for r in range(m2.dims[v]):
            for c in range(m1.dims[v]):
                var_index[(v, r, c)] = len(order)
                order.append((v, r, c))
    return var_index, order


def hom_space(m1: Representation, m2: Representation):
    """Exact basis of Hom(m1, m2), via the kernel of the commutation system."""
    if m1.quiver != m2.quiver:
        raise ValueError("representations over different quivers")
    if m1.field != m2.field:
        raise ValueError("representations over different fields")
    field = m1.field
    var_index, order = _hom_variables(m1, m2)
    nvars = len(order)
    rows = []
    for a in m1.quiver.arrows:
        s, t = a.source, a.target
        p = m1.mats[a.label]
        q = m2.mats[a.label]
        for r in range(m2.dims[t]):
            for c in range(m1.dims[s]):
                row = [field.zero] * nvars
                for k in range(m1.dims[t]):
                    row[var_index[(t, r, k)]] = field.add(
                        row[var_index[(t, r, k)]], p[k][c]
                    )
                for k in range(m2.dims[s]):
                    row[var_index[(s, k, c)]] = field.sub(
                        row[var_index[(s, k, c)]], q[r][k]
                    )
                rows.append(tuple(row))
    basis_vecs = kernel_basis(field, tuple(rows), nvars)
    out = []
    for vec in basis_vecs:
        mats = {
            v: [[field.zero] * m1.dims[v] for _ in range(m2.dims[v])]
            for v in m1.quiver.vertices
        }
        for (v, r, c), x in zip(order, vec):
            mats[v][r][c] = x
        frozen = {v: tuple(tuple(row) for row in m) for v, m in mats.items()}
        h = Homomorphism(m1, m2, frozen)
        out.append(h)
    return out


def support_pairs(h: Homomorphism):
    """Pairs (n, m) of basis labels carrying a nonzero coefficient of h.

    n runs over the source's basis labels, m over the target's; for
    pushed-down modules these are tree vertices.
    """
    out = []
    for v in sorted(h.source.quiver.vertices, key=str):
        rows = h.target.basis[v]
        cols = h.source.basis[v]
        m = h.mats[v]
        for i, row_label in enumerate(rows):
            for j, col_label in enumerate(cols):
                if m[i][j] != h.field.zero:
                    out.append((col_label, row_label))
    return tuple(sorted(out))


def reduce_mod(m: Representation, p: int) -> Representation:
    """The same matrices read over the field with p elements."""
    gf = PrimeField(p)
    mats = {
        l: tuple(tuple(gf.of(x) for x in row) for row in mat)
        for l, mat in m.mats.items()
    }
    return Representation(m.quiver, gf, m.dims, mats, m.basis)


@dataclass(frozen=True)
class OracleVerdict:
    status: str  # 'indecomposable' | 'decomposable' | 'inconclusive'
    witness: object = None
    field_name: str = ""
    end_dim: int = 0

    def __repr__(self):
        return f"OracleVerdict({self.status}, End dim {self.end_dim} over {self.field_name})"


def is_indecomposable_oracle(
    m: Representation, budget: int = 3**13, p: int = 3
) -> OracleVerdict:
    """Exhaustively search End(m) over F_p for a nontrivial idempotent.

    Rational input is reduced mod p first.  The verdict is decomposable
    with the first nontrivial idempotent in canonical coefficient order,
    indecomposable if none exists, inconclusive when p**dim End exceeds
    the budget.
    """
    if isinstance(m.field, Rationals):
        m = reduce_mod(m, p)
    if not isinstance(m.field, PrimeField):
        raise ValueError("oracle needs a prime field")
    gf = m.field
    basis = hom_space(m, m)
    d = len(basis)
    if gf.p**d > budget:
        return OracleVerdict("inconclusive", None, gf.name, d)
    ident = identity_hom(m)
    zero = zero_hom(m, m)
    for coeffs in itertools.product(gf.elements(), repeat=d):
        e = zero
        for c, b in zip(coeffs, basis):
            if c != gf.zero:
                e = e.add(b.scale(c))
        if e.is_zero() or e.equals(ident):
            continue
        if e.compose(e).equals(e):
            return OracleVerdict("decomposable", e, gf.name, d)
    return OracleVerdict("indecomposable", None, gf.name, d)


def decompose_by_idempotent(m: Representation, e: Homomorphism):
    """Dimension vectors of the image and kernel summands cut out by e."""
    if e.source is not m or e.target is not m:
        if e.source.dims != m.dims or e.source.quiver != m.quiver:
            raise ValueError("idempotent does not act on this module")
    if not verify_hom(e):
        raise ValueError("witness is not an endomorphism")
    if not e.compose(e).equals(e):
        raise ValueError("witness is not idempotent")
    image = {}
    kernel = {}
    for v in m.quiver.vertices:
        r = rank(m.field, e.mats[v], ncols=m.dims[v])
        image[v] = r
        kernel[v] = m.dims[v] - r
    return image, kernel
