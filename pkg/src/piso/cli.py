"""Command-line entry point: ``piso <command> --group SPEC --p P [--r R] ...``.

Exit codes: 0 success, 2 malformed input, 3 cap exceeded, 4 hypothesis
refused, 5 internal consistency failure, 1 anything else.  Errors print one
line ``error: kind=<kind> reason=<text>`` on stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass

from .cartan import CACHE_ENV, cartan_determinant, cartan_matrix
from .field import field_make, is_prime
from .green import GreenContext, defect_base, induction_surjectivity, mackey_check
from .ktab import (
    DEFAULT_N_MAX,
    HypothesisError,
    g_theory_table,
    integral_sigma_p_table,
    reduction_report,
    sylp_table,
)
from .modrep import REP_CAP, trivial_module
from .named import parse_group_spec
from .orbitcolim import colimit_report
from .perm import (
    CapExceeded,
    ConsistencyError,
    is_p_isolated,
    is_trivial_intersection,
    prime_graph,
    sylow_subgroup,
    weyl_action_is_free,
    weyl_group,
)
from .subgroups import p_subgroup_classes, subgroup_classes
from .zoo import run_zoo

__all__ = ["JobSpec", "main", "build_parser", "EXIT"]

SCHEMA_VERSION = 1
COMMANDS = ("prime-graph", "isolate", "sylow", "cartan", "sk", "green-check", "colimit-check", "k-table", "reduce", "zoo")
EXIT = {"ok": 0, "other": 1, "malformed": 2, "cap": 3, "hypothesis": 4, "consistency": 5}


class Malformed(ValueError):
    pass


@dataclass
class JobSpec:
    command: str
    group: str | None
    p: int | None
    r: int
    seed: int
    n_max: int
    format: str
    cache_dir: str | None
    kind: str = "sylp"
    jobs: int = 1

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise Malformed(f"unknown command {self.command}")
        needs_group = self.command not in ("zoo",) and not (self.command == "k-table" and self.kind == "sigma-p")
        if needs_group and not self.group:
            raise Malformed("--group is required")
        needs_p = self.command not in ("prime-graph", "zoo")
        if needs_p and self.p is None:
            raise Malformed("--p is required")
        if self.p is not None and not is_prime(self.p):
            raise Malformed(f"p={self.p} is not prime")
        if self.r < 1:
            raise Malformed("r must be at least 1")
        if self.n_max < 0:
            raise Malformed("n-max must be non-negative")
        if self.format not in ("json", "text", "csv"):
            raise Malformed(f"unknown format {self.format}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="piso", description="K-theory shadows of modular group algebras of p-isolated groups")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--group", help="e.g. symmetric:4, cyclic:3xcyclic:2, m9, or a .json file")
        sp.add_argument("--p", type=int)
        sp.add_argument("--r", type=int, default=1)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
        sp.add_argument("--format", default="text", choices=["json", "text", "csv"])
        sp.add_argument("--cache-dir", default=None)
        sp.add_argument("--output", default=None, help="write to a file instead of stdout")
        if name == "k-table":
            sp.add_argument("--kind", default="sylp", choices=["sylp", "gtheory", "sigma-p"])
        if name == "zoo":
            sp.add_argument("--jobs", type=int, default=1)
    return ap


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _wrap(job: JobSpec, result: dict) -> dict:
    return {"schema": SCHEMA_VERSION, "job": asdict(job) | {"cache_dir": None}, "result": result}


def _ctx(job: JobSpec):
    G = parse_group_spec(job.group)
    return G, GreenContext(G, field_make(job.p, job.r), job.seed)


def _need_reps(G) -> None:
    if G.order > REP_CAP:
        raise CapExceeded(f"|G| = {G.order} exceeds the representation cap {REP_CAP}")


def cmd_prime_graph(job: JobSpec) -> tuple[dict, str]:
    G = parse_group_spec(job.group)
    pg = prime_graph(G)
    res = pg.to_json() | {"group": G.label, "order": G.order}
    edges = ", ".join(f"{a}-{b}" for a, b in pg.edges) or "none"
    return res, f"{G.label}: primes {list(pg.vertices)}, edges {edges}\n"


def cmd_isolate(job: JobSpec) -> tuple[dict, str]:
    G = parse_group_spec(job.group)
    iso = is_p_isolated(G, job.p)
    res = {"group": G.label, "p": job.p, "p_isolated": bool(iso), "routines": list(iso.routines), "degenerate": iso.degenerate}
    return res, ("true" if iso else "false") + "\n"


def cmd_sylow(job: JobSpec) -> tuple[dict, str]:
    G = parse_group_spec(job.group)
    S = sylow_subgroup(G, job.p)
    W = weyl_group(G, S)
    res = {
        "group": G.label,
        "p": job.p,
        "sylow_order": S.order,
        "trivial_intersection": is_trivial_intersection(G, S),
        "weyl_order": W.order,
        "weyl_action_free": weyl_action_is_free(G, S) if S.order > 1 else True,
    }
    text = f"Sylow {job.p}-subgroup of order {S.order}; |W| = {W.order}; TI = {res['trivial_intersection']}\n"
    return res, text


def cmd_cartan(job: JobSpec) -> tuple[dict, str]:
    G = parse_group_spec(job.group)
    _need_reps(G)
    D = cartan_matrix(G, field_make(job.p, job.r), job.seed)
    res = {
        "group": G.label,
        "p": job.p,
        "r": job.r,
        "dims": list(D.dims),
        "endo_degrees": list(D.endo_degrees),
        "cartan": D.cartan.tolist(),
        "determinant": cartan_determinant(D),
    }
    rows = "\n".join("  " + " ".join(f"{x:3d}" for x in row) for row in D.cartan.tolist())
    text = f"simple dims {res['dims']}, endomorphism degrees {res['endo_degrees']}\n{rows}\ndet = {res['determinant']}\n"
    return res, text


def cmd_sk(job: JobSpec) -> tuple[dict, str]:
    G, ctx = _ctx(job)
    _need_reps(G)
    sk = ctx.sk(G.whole()).group
    return {"group": G.label, "p": job.p, "r": job.r, "sk": str(sk), "sk_json": sk.to_json()}, f"{sk}\n"


def cmd_green_check(job: JobSpec) -> tuple[dict, str]:
    G, ctx = _ctx(job)
    _need_reps(G)
    fam = p_subgroup_classes(G, job.p).reps
    surj = induction_surjectivity(ctx, fam, check_closure=False)
    mackey = None
    if G.order <= 48:
        classes = subgroup_classes(G).reps
        ok = True
        for H in classes:
            M = trivial_module(H.group, ctx.F)
            for K in classes:
                ok = ok and mackey_check(ctx, H, K, M)
        mackey = ok
    res = {
        "group": G.label,
        "p": job.p,
        "r": job.r,
        "surjective_from_p_subgroups": surj.surjective,
        "cokernel": str(surj.cokernel),
        "mackey": mackey,
    }
    if len(subgroup_classes(G).reps) <= 40:
        res["defect_base_orders"] = [H.order for H in defect_base(ctx)]
    text = f"induction from {job.p}-subgroups surjective: {surj.surjective} (cokernel {surj.cokernel})\n"
    if mackey is not None:
        text += f"mackey: {'pass' if mackey else 'FAIL'}\n"
    if "defect_base_orders" in res:
        text += f"defect base orders: {res['defect_base_orders']}\n"
    return res, text


def cmd_colimit_check(job: JobSpec) -> tuple[dict, str]:
    G, ctx = _ctx(job)
    _need_reps(G)
    rep = colimit_report(ctx, job.p)
    rep["p_isolated"] = bool(is_p_isolated(G, job.p))
    if rep["p_isolated"] and not rep["agree"]:
        raise ConsistencyError(f"colimit {rep['colimit']} differs from S_k(G) {rep['sk']} on a p-isolated group")
    verdict = "MATCH" if rep["agree"] else "MISMATCH"
    rep["verdict"] = verdict
    return rep, f"{verdict} (colimit {rep['colimit']}, S_k(G) {rep['sk']})\n"


def cmd_k_table(job: JobSpec):
    if job.kind == "sigma-p":
        T = integral_sigma_p_table(job.p, job.r, job.n_max)
    elif job.kind == "gtheory":
        G = parse_group_spec(job.group)
        _need_reps(G)
        T = g_theory_table(cartan_matrix(G, field_make(job.p, job.r), job.seed), job.n_max)
    else:
        G = parse_group_spec(job.group)
        T = sylp_table(G, job.p, job.r, job.n_max, job.seed)
    return T


def cmd_reduce(job: JobSpec) -> tuple[dict, str]:
    G = parse_group_spec(job.group)
    rep = reduction_report(G, job.p, job.r, job.n_max, job.seed)
    if rep.get("evidence") and not rep["evidence"]["match"]:
        raise ConsistencyError("reduced colimit disagrees with S_k(G)")
    if rep["applicable"] is False:
        text = f"not applicable: {rep['reason']}; fallback: {rep['fallback']}\n"
    elif rep.get("shape") == "colimit":
        lines = [f"colimit over {', '.join(n['subgroup'] for n in rep['nodes'])}"]
        for e in rep["edges"]:
            extra = f" ({e['automorphism_group']})" if "automorphism_group" in e else ""
            lines.append(f"  {e['source']} -> {e['target']}: {e['morphisms']} {e['kind']}{extra}")
        if rep.get("coinvariants"):
            lines.append(f"coinvariants: {rep['coinvariants']}")
        if rep.get("evidence"):
            ev = rep["evidence"]
            lines.append(f"S_k evidence: colimit {ev['colimit']}, S_k(G) {ev['sk']}")
        text = "\n".join(lines) + "\n"
    else:
        text = f"{rep.get('shape')}\n"
    return rep, text


def cmd_zoo(job: JobSpec) -> tuple[dict, str]:
    rows = run_zoo(seed=job.seed, jobs=job.jobs)
    lines = []
    for row in rows:
        bits = [f"{row['label']:<12} p={row['p']:<2} isolated={str(row['p_isolated']):<5}"]
        if "sk" in row:
            bits.append(f"S_k={row['sk']:<12} colim={row['colimit']:<8} match={row['match']}")
        if "sylp_formula" in row:
            bits.append(f"K_(2i-1)={row['sylp_formula']}")
        lines.append("  ".join(bits))
    return {"entries": rows}, "\n".join(lines) + "\n"


def _emit(job: JobSpec, result, text: str | None, out) -> None:
    if hasattr(result, "to_json"):
        T = result
        if job.format == "json":
            payload = _dump(_wrap(job, T.to_json()))
        elif job.format == "csv":
            payload = T.to_csv()
        else:
            payload = T.to_text()
    elif job.format == "json":
        payload = _dump(_wrap(job, result))
    elif job.format == "csv":
        payload = _csv(result)
    else:
        payload = text
    out.write(payload)


def _csv(result: dict) -> str:
    import csv
    import io

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if "entries" in result:
        keys = sorted({k for row in result["entries"] for k in row})
        w.writerow(keys)
        for row in result["entries"]:
            w.writerow([_cell(row.get(k)) for k in keys])
    else:
        w.writerow(["key", "value"])
        for k in sorted(result):
            w.writerow([k, _cell(result[k])])
    return buf.getvalue()


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    return str(v)


HANDLERS = {
    "prime-graph": cmd_prime_graph,
    "isolate": cmd_isolate,
    "sylow": cmd_sylow,
    "cartan": cmd_cartan,
    "sk": cmd_sk,
    "green-check": cmd_green_check,
    "colimit-check": cmd_colimit_check,
    "k-table": cmd_k_table,
    "reduce": cmd_reduce,
    "zoo": cmd_zoo,
}


def _fail(kind: str, reason: str) -> int:
    reason = " ".join(str(reason).split())
    print(f"error: kind={kind} reason={reason}", file=sys.stderr)
    return EXIT[kind]


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    job = JobSpec(
        command=args.command,
        group=args.group,
        p=args.p,
        r=args.r,
        seed=args.seed,
        n_max=args.n_max,
        format=args.format,
        cache_dir=args.cache_dir,
        kind=getattr(args, "kind", "sylp"),
        jobs=getattr(args, "jobs", 1),
    )
    try:
        job.validate()
        if job.cache_dir:
            os.environ[CACHE_ENV] = job.cache_dir
        res = HANDLERS[job.command](job)
        result, text = (res, None) if hasattr(res, "to_json") else res
        if args.output:
            with open(args.output, "w", newline="\n") as fh:
                _emit(job, result, text, fh)
        else:
            _emit(job, result, text, sys.stdout)
    except Malformed as exc:
        return _fail("malformed", exc)
    except CapExceeded as exc:
        return _fail("cap", exc)
    except HypothesisError as exc:
        return _fail("hypothesis", exc)
    except (ConsistencyError, AssertionError) as exc:
        return _fail("consistency", exc)
    except (ValueError, KeyError, FileNotFoundError) as exc:
        return _fail("malformed", exc)
    except Exception as exc:  # noqa: BLE001
        return _fail("other", f"{type(exc).__name__}: {exc}")
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
