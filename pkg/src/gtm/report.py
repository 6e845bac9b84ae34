"""Deterministic text reports: stable headers, canonical orderings, exact
rationals printed as p/q."""

from __future__ import annotations

from .graphmap import ModulePair, Subnetwork
from .network import _vkey, vertex_display
from .rep import Homomorphism, support_pairs

SIGN_CONVENTION = (
    "convention: a sign-flip edge pairs (n,m,j) with (n'',m,-j) across a "
    "shared-source fork on the left coordinate, and (n,m,j) with "
    "(n,m'',-j) across a shared-target fork on the right coordinate"
)


def fmt_scalar(x) -> str:
    return str(x)


def describe_hom(h: Homomorphism, left="v", right="w") -> list[str]:
    """One line per source basis vector: 'v1 -> w4 - w5' style."""
    lines = []
    for qv in sorted(h.source.quiver.vertices, key=str):
        cols = h.source.basis[qv]
        rows = h.target.basis[qv]
        m = h.mats[qv]
        for c, nlabel in enumerate(cols):
            terms = []
            for r, mlabel in enumerate(rows):
                x = m[r][c]
                if x == h.field.zero:
                    continue
                if x == h.field.one:
                    terms.append(f"+ {right}{mlabel}")
                elif x == h.field.neg(h.field.one):
                    terms.append(f"- {right}{mlabel}")
                else:
                    terms.append(f"+ {fmt_scalar(x)} {right}{mlabel}")
            if not terms:
                rhs = "0"
            else:
                rhs = " ".join(terms)
                if rhs.startswith("+ "):
                    rhs = rhs[2:]
            lines.append(f"{left}{nlabel} -> {rhs}")
    return lines


def describe_subnetwork(sub: Subnetwork) -> str:
    verts = " ".join(vertex_display(v) for v in sub.sorted_vertices())
    arrows = " ".join(
        vertex_display(a.label)
        for a in sorted(sub.arrows, key=lambda a: (_vkey(a.source), _vkey(a.target)))
    )
    edges = " ".join(
        "{" + ",".join(vertex_display(v) for v in sorted(e, key=_vkey)) + "}"
        for e in sorted(sub.edges, key=lambda e: tuple(sorted(_vkey(x) for x in e)))
    )
    parts = [f"vertices: {verts or '-'}"]
    parts.append(f"arrows: {arrows or '-'}")
    parts.append(f"edges: {edges or '-'}")
    return "; ".join(parts)


def render_hom_report(pair: ModulePair, basis) -> str:
    lines = ["= hom", f"field: {pair.field.name}", f"dimension: {len(basis)}"]
    for i, h in enumerate(basis, start=1):
        lines.append(f"basis {i}: " + "; ".join(describe_hom(h)))
    return "\n".join(lines) + "\n"


def render_ggm_report(pair: ModulePair, maps, hom_dim: int, span_dim: int) -> str:
    lines = [
        "= graph maps",
        SIGN_CONVENTION,
        f"count: {len(maps)}",
        f"span dimension: {span_dim}",
        f"hom dimension: {hom_dim}",
    ]
    for i, g in enumerate(maps, start=1):
        lines.append(f"graph map {i}: " + describe_subnetwork(g.sub))
        lines.append(f"  map: " + "; ".join(describe_hom(g.hom)))
    return "\n".join(lines) + "\n"


def render_ghost_report(pair: ModulePair, ghosts) -> str:
    lines = [
        "= ghosts",
        SIGN_CONVENTION,
        f"ghost-free: {'yes' if not ghosts else 'no'}",
        f"count: {len(ghosts)}",
    ]
    for i, g in enumerate(ghosts, start=1):
        lines.append(f"ghost {i}: " + describe_subnetwork(g.sub))
    return "\n".join(lines) + "\n"


def render_decomposition_report(pair: ModulePair, h, terms) -> str:
    lines = [
        "= decomposition",
        "input: " + "; ".join(describe_hom(h)),
        f"terms: {len(terms)}",
        f"support: {len(support_pairs(h))} pairs",
    ]
    for i, (coeff, g) in enumerate(terms, start=1):
        lines.append(
            f"term {i}: scalar {fmt_scalar(coeff)}; " + describe_subnetwork(g.sub)
        )
    return "\n".join(lines) + "\n"


def render_verdict_report(verdict) -> str:
    lines = ["= classify", f"verdict: {verdict.status}"]
    if verdict.method:
        lines.append(f"method: {verdict.method}")
    for t in verdict.transcript:
        lines.append(f"  {t}")
    if verdict.witness is not None:
        lines.append("idempotent witness: " + "; ".join(describe_hom(verdict.witness, "v", "v")))
    if verdict.oracle is not None:
        lines.append(
            f"oracle: {verdict.oracle.status} "
            f"(End dimension {verdict.oracle.end_dim} over {verdict.oracle.field_name})"
        )
    for n in verdict.notes:
        lines.append(f"note: {n}")
    return "\n".join(lines) + "\n"


def render_catalog_report(report) -> str:
    spec = report.spec
    lines = [
        "= catalog",
        f"type: D{spec.n}",
        f"orientation: {spec.orientation}",
        f"entries: {len(report.entries)}",
        f"all ok: {'yes' if report.all_ok else 'no'}",
    ]
    for e in report.entries:
        root = "(" + ",".join(str(x) for x in e.root) + ")"
        oracle = (
            e.verdict.oracle.status if e.verdict.oracle is not None else "n/a"
        )
        flag = "ok" if e.ok else "FLAGGED"
        lines.append(
            f"{e.kind} {root}: dims {'ok' if e.dims_ok else 'MISMATCH'}; "
            f"verdict {e.verdict.status}; oracle {oracle}; {flag}"
        )
    return "\n".join(lines) + "\n"
