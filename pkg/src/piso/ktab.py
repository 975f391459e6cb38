"""Closed-form K-group tables.

Quillen's groups for finite fields, the G-theory decomposition over simple
modules, the p-adic table for p-isolated groups with Sylow subgroups of order
p, the integral table of F_{p^r} Sigma_p, and reduction reports for larger
Sylow subgroups.  Vector spaces k^m are reported as the abelian groups
(Z/p)^{rm}.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .field import field_make, is_prime
from .modrep import REP_CAP
from .perm import (
    FiniteGroup,
    Subgroup,
    conjugacy_classes,
    is_p_isolated,
    is_trivial_intersection,
    sylow_subgroup,
    weyl_group,
)
from .smith import FgAbelianGroup

__all__ = [
    "KRow",
    "KTable",
    "HypothesisError",
    "quillen_k",
    "g_theory_table",
    "sylp_table",
    "sylp_exponent",
    "sylp_formula",
    "integral_sigma_p_table",
    "sigma_p_regular_classes",
    "reduction_report",
    "describe_group",
    "DEFAULT_N_MAX",
]

DEFAULT_N_MAX = 20
SCHEMA_VERSION = 1
TAG_GTHEORY = "[formula:g-theory-devissage]"
TAG_SYLP = "[formula:sylow-order-p]"
TAG_SIGMA_P = "[formula:integral-sigma-p]"
TAG_COMPUTED = "[computed]"
HEADER = "k^m is reported as the additive group (Z/p)^(r*m)"


class HypothesisError(ValueError):
    """The group does not satisfy the hypotheses of the requested formula."""


def quillen_k(q: int, n: int) -> FgAbelianGroup:
    """K_n of the field with q elements."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return FgAbelianGroup(1, ())
    if n % 2 == 0:
        return FgAbelianGroup.trivial()
    i = (n + 1) // 2
    return FgAbelianGroup.from_orders(0, [q**i - 1])


@dataclass
class KRow:
    n: int
    group: FgAbelianGroup
    expression: str
    provenance: str


@dataclass
class KTable:
    subject: str
    p: int
    r: int
    n_max: int
    rows: list[KRow]
    kind: str
    formula: str | None = None
    notes: list[str] = field(default_factory=list)
    seed: int | None = None

    @property
    def entries(self) -> list[FgAbelianGroup]:
        return [row.group for row in self.rows]

    def __getitem__(self, n: int) -> FgAbelianGroup:
        return self.rows[n].group

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "kind": self.kind,
            "subject": self.subject,
            "p": self.p,
            "r": self.r,
            "n_max": self.n_max,
            "formula": self.formula,
            "header": HEADER,
            "notes": list(self.notes),
            "seed": self.seed,
            "rows": [
                {"n": row.n, "group": row.group.to_json(), "text": str(row.group), "expression": row.expression, "provenance": row.provenance}
                for row in self.rows
            ],
        }

    def to_text(self) -> str:
        head = f"{self.kind} table for {self.subject} over F_{self.p}^{self.r}"
        lines = [head, HEADER]
        if self.formula:
            lines.append(f"formula: K_(2i-1) = {self.formula}")
        for note in self.notes:
            lines.append(f"note: {note}")
        w1 = max(len("n"), *(len(str(row.n)) for row in self.rows))
        w2 = max(len("group"), *(len(str(row.group)) for row in self.rows))
        w3 = max(len("expression"), *(len(row.expression) for row in self.rows))
        lines.append(f"{'n':>{w1}}  {'group':<{w2}}  {'expression':<{w3}}  provenance")
        for row in self.rows:
            lines.append(f"{row.n:>{w1}}  {str(row.group):<{w2}}  {row.expression:<{w3}}  {row.provenance}")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "invariant_factors", "provenance"])
        for row in self.rows:
            inv = ["0"] * row.group.free_rank + [str(d) for d in row.group.torsion]
            w.writerow([row.n, " ".join(inv), row.provenance])
        return buf.getvalue()


def _rows(n_max: int) -> range:
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    return range(n_max + 1)


def _power_str(d: int, k: int) -> str:
    return f"(Z/{d})^{k}" if k > 1 else f"Z/{d}"


def _sum_expr(parts: list[str]) -> str:
    return " + ".join(parts) if parts else "0"


def g_theory_table(data, n_max: int = DEFAULT_N_MAX) -> KTable:
    """G_n(kG) as a sum of K_n(End(V)) over the simple modules V."""
    F = data.field
    rows = []
    degs = list(data.endo_degrees)
    for n in _rows(n_max):
        g = FgAbelianGroup.trivial()
        parts = []
        for d in degs:
            g = g + quillen_k(F.q**d, n)
        if n == 0:
            parts = [f"Z^{len(degs)}"] if len(degs) > 1 else ["Z"]
        elif n % 2:
            i = (n + 1) // 2
            by_q: dict[int, int] = {}
            for d in degs:
                by_q[F.q**d] = by_q.get(F.q**d, 0) + 1
            for q, c in sorted(by_q.items()):
                parts.append(_power_str(q**i - 1, c))
        rows.append(KRow(n, g, _sum_expr(parts), TAG_GTHEORY))
    return KTable(data.group.label, F.p, F.r, n_max, rows, "G-theory", seed=data.seed)


def sylp_exponent(G: FiniteGroup, p: int) -> int:
    """(p - 1)/|W| after checking the hypotheses of the order-p Sylow formula."""
    if not is_prime(p):
        raise HypothesisError(f"{p} is not prime")
    S = sylow_subgroup(G, p)
    if S.order != p:
        raise HypothesisError(f"Sylow {p}-subgroup has order {S.order}; use reduction_report")
    iso = is_p_isolated(G, p)
    if not iso:
        raise HypothesisError(f"group is not {p}-isolated; use reduction_report")
    W = weyl_group(G, S)
    if (p - 1) % W.order:
        raise AssertionError("Weyl group order does not divide p - 1")
    return (p - 1) // W.order


def sylp_formula(m: int) -> str:
    return "k^{i}" if m == 1 else f"k^{{{m}i}}"


def _sylp_gate(G: FiniteGroup, p: int, r: int, seed: int) -> str:
    """The S_k-level identity S_k(G) = Z/p, checked when representations are in reach."""
    if G.order > REP_CAP:
        return f"S_k gate skipped: |G| = {G.order} exceeds the representation cap {REP_CAP}"
    from .green import GreenContext

    ctx = GreenContext(G, field_make(p, r), seed)
    sk = ctx.sk(G.whole()).group
    if sk != FgAbelianGroup.from_orders(0, [p]):
        raise AssertionError(f"S_k(G) = {sk}, expected Z/{p}")
    return f"S_k gate passed: S_k(G) = Z/{p}"


def sylp_table(G: FiniteGroup, p: int, r: int, n_max: int = DEFAULT_N_MAX, seed: int = 0, gate: bool = True) -> KTable:
    """p-adic K-groups of kG for p-isolated G with Sylow subgroups of order p."""
    m = sylp_exponent(G, p)
    notes = [_sylp_gate(G, p, r, seed)] if gate else []
    rows = []
    tag = TAG_SYLP
    for n in _rows(n_max):
        if n % 2:
            i = (n + 1) // 2
            e = r * m * i
            g = FgAbelianGroup.from_orders(0, [p] * e)
            rows.append(KRow(n, g, f"k^{m * i}", tag))
        else:
            rows.append(KRow(n, FgAbelianGroup.trivial(), "0", tag))
    return KTable(G.label, p, r, n_max, rows, "p-adic", formula=sylp_formula(m), notes=notes, seed=seed)


def _partitions(n: int) -> int:
    table = [1] + [0] * n
    for part in range(1, n + 1):
        for s in range(part, n + 1):
            table[s] += table[s - part]
    return table[n]


def sigma_p_regular_classes(p: int, use_group: bool | None = None) -> int:
    """Number of p-regular conjugacy classes of Sigma_p.

    Counted on the enumerated group for small p; otherwise from cycle types,
    where only the p-cycle is p-singular.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if use_group is None:
        use_group = p <= 7
    if use_group:
        from .named import symmetric

        G = symmetric(p)
        cc = conjugacy_classes(G)
        orders = G.orders[list(cc.reps)]
        return int(sum(1 for o in orders if int(o) % p))
    return _partitions(p) - 1


def integral_sigma_p_table(p: int, r: int, n_max: int = DEFAULT_N_MAX) -> KTable:
    """Integral K-groups of F_{p^r} Sigma_p."""
    c = sigma_p_regular_classes(p)
    rows = []
    for n in _rows(n_max):
        if n == 0:
            rows.append(KRow(0, FgAbelianGroup(c, ()), f"Z^{c}", TAG_SIGMA_P))
        elif n % 2:
            i = (n + 1) // 2
            d = p ** (r * i) - 1
            g = FgAbelianGroup.from_orders(0, [d] * c + [p] * (r * i))
            expr = _sum_expr([_power_str(d, c), _power_str(p, r * i)])
            rows.append(KRow(n, g, expr, TAG_SIGMA_P))
        else:
            rows.append(KRow(n, FgAbelianGroup.trivial(), "0", TAG_SIGMA_P))
    return KTable(f"Sigma_{p}", p, r, n_max, rows, "integral", notes=[f"c = {c} p-regular classes"])


def describe_group(H: Subgroup | FiniteGroup) -> str:
    """A short structural name for small groups (cyclic, elementary abelian, order 8)."""
    if isinstance(H, FiniteGroup):
        G, els = H, list(range(H.order))
    else:
        G, els = H.parent, [int(x) for x in H.elements]
    n = len(els)
    if n == 1:
        return "e"
    orders = [int(G.orders[x]) for x in els]
    if max(orders) == n:
        return f"C_{n}"
    from .field import prime_factors

    ps = prime_factors(n)
    if len(ps) == 1 and max(orders) == ps[0]:
        k = 0
        m = n
        while m > 1:
            m //= ps[0]
            k += 1
        return f"C_{ps[0]}^{k}"
    if n == 8:
        inv = sum(1 for o in orders if o == 2)
        if inv == 1:
            return "Q_8"
        if inv == 5 and max(orders) == 4:
            return "D_4"
    if n == 6 and max(orders) == 3:
        return "Sigma_3"
    return f"H_{n}"


def _weyl_name(G: FiniteGroup, S: Subgroup) -> tuple[str, int]:
    W = weyl_group(G, S)
    if W.order == 1:
        return "e", 1
    return describe_group(W.regular_rep), W.order


def reduction_report(G: FiniteGroup, p: int, r: int, n_max: int = DEFAULT_N_MAX, seed: int = 0) -> dict:
    """The K-theory shape for G at p: a closed table, or a symbolic colimit over a reduced category."""
    iso = is_p_isolated(G, p)
    S = sylow_subgroup(G, p)
    out: dict = {"schema": SCHEMA_VERSION, "group": G.label, "order": G.order, "p": p, "r": r, "seed": seed, "sylow_order": S.order}
    if not iso:
        out["applicable"] = False
        out["reason"] = f"group is not {p}-isolated"
        out["fallback"] = "colimit over the family of hyperelementary subgroups"
        return out
    out["applicable"] = True
    if S.order == 1:
        out["shape"] = "p'-group: p-adic K-theory vanishes"
        return out
    if S.order == p:
        out["shape"] = "closed form"
        out["table"] = sylp_table(G, p, r, n_max, seed).to_json()
        return out

    from .orbitcolim import OrbitCategory, cofinal_collection

    coll = cofinal_collection(G, p)
    cat = OrbitCategory(G, coll)
    names = [describe_group(H) for H in coll]
    nodes = [{"subgroup": nm, "order": H.order, "value": f"K_n(k{nm};Z_{p})", "symbolic": True} for nm, H in zip(names, coll)]
    edges = []
    for i in range(len(coll)):
        for j in range(len(coll)):
            count = len(cat.hom(i, j))
            if count == 0:
                continue
            e = {"source": names[i], "target": names[j], "morphisms": count}
            if i == j:
                e["kind"] = "endomorphisms"
                W = weyl_group(G, coll[i])
                e["automorphism_group"] = describe_group(W.regular_rep) if W.order > 1 else "e"
            else:
                e["kind"] = "parallel arrows" if count > 1 else "arrow"
            edges.append(e)
    out["shape"] = "colimit"
    out["nodes"] = nodes
    out["edges"] = edges
    ti = is_trivial_intersection(G, S)
    out["trivial_intersection"] = ti
    if ti:
        wname, word = _weyl_name(G, S)
        out["coinvariants"] = f"K_n(k{describe_group(S)};Z_{p})/{wname}"
        out["weyl_order"] = word
    if G.order <= REP_CAP:
        from .green import GreenContext
        from .orbitcolim import colimit, sk_diagram

        ctx = GreenContext(G, field_make(p, r), seed)
        full = colimit(sk_diagram(ctx, OrbitCategory.p_subgroups(G, p)))
        red = colimit(sk_diagram(ctx, cat))
        sk = ctx.sk(G.whole()).group
        out["evidence"] = {
            "sk": str(sk),
            "colimit": str(full.group),
            "reduced_colimit": str(red.group),
            "match": sk == full.group == red.group,
        }
    else:
        out["evidence"] = None
    return out


def report_text(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
