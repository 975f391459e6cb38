"""The built-in group list and the per-(group, prime) check matrix."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .cartan import cartan_determinant
from .field import field_make, prime_factors
from .green import GreenContext, induction_surjectivity
from .ktab import HypothesisError, sylp_exponent, sylp_formula
from .modrep import REP_CAP
from .named import parse_group_spec
from .orbitcolim import NotTrivialIntersection, OrbitCategory, cofinal_reduction, colimit, sk_diagram, weyl_coinvariants
from .perm import is_p_isolated, is_trivial_intersection, sylow_subgroup, weyl_group
from .subgroups import p_subgroup_classes

__all__ = ["ZooEntry", "ZOO", "zoo_entries", "run_entry", "run_zoo", "HEADLINE", "NEGATIVE"]


@dataclass(frozen=True)
class ZooEntry:
    spec: str
    primes: tuple[int, ...] | None = None  # None: every prime dividing |G|
    r: int = 1
    role: str = "zoo"


def _zoo() -> list[ZooEntry]:
    out = []
    for n in range(2, 16):
        out.append(ZooEntry(f"cyclic:{n}"))
    for n in range(2, 16):
        out.append(ZooEntry(f"dihedral:{n}"))
    for n in range(3, 7):
        out.append(ZooEntry(f"symmetric:{n}"))
    for n in range(4, 7):
        out.append(ZooEntry(f"alternating:{n}"))
    out.append(ZooEntry("quaternion8"))
    for p in (3, 5, 7):
        out.append(ZooEntry(f"agl1:{p}"))
    for p in (3, 5, 7):
        out.append(ZooEntry(f"psl2:{p}"))
    out.append(ZooEntry("m9"))
    out.append(ZooEntry("cyclic:2xcyclic:4"))
    # negative controls: not p-isolated, the colimit misses S_k(G)
    out.append(ZooEntry("cyclic:6", (2,), r=2, role="negative"))
    out.append(ZooEntry("cyclic:3xcyclic:2xcyclic:4", (2,), role="negative"))
    return out


ZOO = _zoo()

# (group, p) pairs required to satisfy the colimit identity
HEADLINE = [
    ("symmetric:3", 3), ("symmetric:4", 2), ("symmetric:5", 5), ("alternating:4", 2),
    ("alternating:5", 2), ("alternating:5", 5), ("alternating:6", 3), ("dihedral:5", 5),
    ("dihedral:7", 7), ("dihedral:5", 2), ("dihedral:7", 2), ("agl1:5", 5), ("agl1:7", 7),
    ("psl2:5", 5), ("psl2:7", 7), ("m9", 2),
]
NEGATIVE = [("cyclic:6", 2, 2), ("cyclic:3xcyclic:2xcyclic:4", 2, 1)]


def zoo_entries(entries: list[ZooEntry] | None = None) -> list[tuple[str, int, int, str]]:
    """Expand entries into (spec, p, r, role) jobs, deterministically ordered."""
    jobs = []
    for e in entries if entries is not None else ZOO:
        G = parse_group_spec(e.spec)
        primes = e.primes if e.primes is not None else tuple(prime_factors(G.order))
        for p in primes:
            jobs.append((e.spec, p, e.r, e.role))
    return jobs


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def run_entry(spec: str, p: int, r: int = 1, seed: int = 0, role: str = "zoo") -> dict:
    """All checks that apply to (G, p) over F_{p^r}; a plain dict of results."""
    G = parse_group_spec(spec)
    out: dict = {"group": spec, "label": G.label, "order": G.order, "p": p, "r": r, "seed": seed, "role": role}
    iso = is_p_isolated(G, p)
    out["p_isolated"] = bool(iso)
    S = sylow_subgroup(G, p)
    out["sylow_order"] = S.order
    ti = is_trivial_intersection(G, S)
    out["trivial_intersection"] = ti
    out["weyl_order"] = weyl_group(G, S).order
    if iso and S.order == p:
        try:
            out["sylp_formula"] = sylp_formula(sylp_exponent(G, p))
        except HypothesisError as exc:  # pragma: no cover - guarded above
            out["sylp_formula"] = f"refused: {exc}"
    if G.order > REP_CAP:
        out["representations"] = "skipped: above cap"
        return out
    F = field_make(p, r)
    ctx = GreenContext(G, F, seed)
    data = ctx.data(G.whole())
    d = cartan_determinant(data)
    out["cartan"] = data.cartan.tolist()
    out["cartan_det"] = d
    out["cartan_det_p_power"] = _is_p_power(abs(d), p)
    sk = ctx.sk(G.whole()).group
    out["sk"] = str(sk)
    diag = sk_diagram(ctx, OrbitCategory.p_subgroups(G, p))
    col = colimit(diag).group
    out["colimit"] = str(col)
    out["match"] = col == sk
    fam = p_subgroup_classes(G, p).reps
    surj = induction_surjectivity(ctx, fam, check_closure=False)
    out["surjective"] = surj.surjective
    out["surjectivity_cokernel"] = str(surj.cokernel)
    if ti:
        out["weyl_coinvariants"] = str(weyl_coinvariants(ctx, p, S))
    else:
        try:
            weyl_coinvariants(ctx, p, S)
            out["weyl_coinvariants"] = "not refused"
        except NotTrivialIntersection:
            out["weyl_coinvariants"] = "refused"
    out["reduced_colimit"] = str(cofinal_reduction(ctx, p).group)
    return out


def _run(args) -> dict:
    return run_entry(*args)


def run_zoo(seed: int = 0, jobs: int = 1, entries: list[ZooEntry] | None = None) -> list[dict]:
    todo = [(spec, p, r, seed, role) for spec, p, r, role in zoo_entries(entries)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run, todo))
    return [_run(t) for t in todo]
