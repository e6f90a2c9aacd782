"""Command-line front end: ``goodfilt <subcommand> ...``.

Weights are comma-separated integers in fundamental coordinates.  For a
product subsystem the component weights are concatenated in the order of
the type label (so "D5xA3" takes 5 + 3 entries).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from sympy import isprime

from . import budget
from .budget import BudgetError
from .charring import (
    Character,
    CharacterError,
    decompose,
    exterior_power_decompose,
    irreducible_character,
    sym_power_decompose,
    tensor_decompose,
    weyl_dimension,
)
from .linkage import (
    CONVENTIONS,
    linkage_witness,
    low_alcove_min_prime,
    order_compare,
    wp_conjugacy_primes,
    wp_dot_conjugate,
)
from .rootsys import RootSystem, RootSystemError, build_root_system, is_dominant
from .sl2data import (
    OrbitDataError,
    find_orbit,
    grading_profile,
    load_distinguished_orbits,
    optimal_prime_threshold,
    orbit_dimension,
    sl2_restrict,
    spin_threshold,
)
from .subsys import enumerate_subsystems, involution_centralizer_test, type_key
from .verifier import (
    E7_REFERENCE_CHAIN,
    READINGS,
    exceptional_protocol,
    replay,
    sl2_orbit_report,
    subsystem_prime_report,
    weight_name,
)

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- argument helpers -------------------------------------------------------

def parse_weight(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        bad = next(t for t in text.split(",") if not _is_int(t))
        raise UsageError(f"malformed weight literal {text!r}: token {bad!r} is not an integer") from None


def _is_int(t: str) -> bool:
    try:
        int(t)
        return True
    except ValueError:
        return False


def _system(label: str) -> RootSystem:
    try:
        return build_root_system(label)
    except RootSystemError as exc:
        raise RootSystemError(f"unknown type {label!r}: {exc}") from None


def _weight_for(rs: RootSystem, text: str, dominant: bool = True) -> tuple[int, ...]:
    w = parse_weight(text)
    if len(w) != rs.rank:
        raise RootSystemError(f"weight {text!r} has {len(w)} entries but {rs.name} has rank {rs.rank}")
    if dominant and not is_dominant(w):
        raise RootSystemError(f"weight {text!r} is not dominant")
    return w


def _embedding(host: RootSystem, label: str, index: int):
    want = type_key(label)
    found = [e for e in enumerate_subsystems(host, 1) if tuple(sorted(e.components)) == want]
    if not found:
        raise RootSystemError(f"no subsystem of type {label!r} in {host.name}")
    if not 0 <= index < len(found):
        raise RootSystemError(f"index {index} out of range: {len(found)} embedding(s) of {label} in {host.name}")
    return found[index]


def _emit(args, data, text: str) -> None:
    if args.json:
        print(json.dumps(data, separators=(",", ":")))
    else:
        print(text)


def _decomp_text(d) -> str:
    return " + ".join((f"{d.terms[w]}*" if d.terms[w] != 1 else "") + f"chi({weight_name(w)})" for w in d.support) or "0"


# -- subcommands ------------------------------------------------------------

def cmd_roots(args):
    rs = _system(args.type)
    data = {
        "type": rs.name,
        "rank": rs.rank,
        "cartan": [list(r) for r in rs.cartan],
        "positive_roots": [list(r) for r in rs.positive_roots],
        "highest_roots": [list(r) for r in rs.highest_roots],
        "weyl_order": rs.weyl_order,
        "dim": rs.dim,
    }
    lines = [f"{rs.name}: rank {rs.rank}, {len(rs.positive_roots)} positive roots, |W| = {rs.weyl_order}, dim {rs.dim}"]
    lines += [" ".join(map(str, r)) for r in rs.positive_roots]
    _emit(args, data, "\n".join(lines))


def cmd_char(args):
    rs = _system(args.type)
    lam = _weight_for(rs, args.weight)
    ch = irreducible_character(rs, lam)
    rows = sorted(ch.dom_mult.items(), key=lambda t: (-sum(t[0]), t[0]))
    data = {
        "weight": list(lam),
        "dimension": ch.dimension,
        "dominant": [{"weight": list(w), "mult": m, "orbit": rs.orbit_size(w)} for w, m in rows],
    }
    text = "\n".join([f"dim {ch.dimension}"] + [f"{weight_name(w):>16}  mult {m}  orbit {rs.orbit_size(w)}" for w, m in rows])
    _emit(args, data, text)


def cmd_dim(args):
    rs = _system(args.type)
    d = weyl_dimension(rs, _weight_for(rs, args.weight))
    _emit(args, d, str(d))


def cmd_tensor(args):
    rs = _system(args.type)
    d = tensor_decompose(rs, _weight_for(rs, args.left), _weight_for(rs, args.right))
    _emit(args, d.to_json(), _decomp_text(d))


def _power(args, fn):
    if args.m < 0:
        raise UsageError(f"power {args.m} must be nonnegative")
    rs = _system(args.type)
    d = fn(args.m, rs, _weight_for(rs, args.weight))
    _emit(args, d.to_json(), _decomp_text(d))


def cmd_ext(args):
    _power(args, exterior_power_decompose)


def cmd_sym(args):
    _power(args, sym_power_decompose)


def cmd_decompose(args):
    rs = _system(args.type)
    dom = {}
    for term in args.terms:
        w_text, _, m_text = term.partition(":")
        if m_text and not _is_int(m_text):
            raise UsageError(f"malformed multiplicity {m_text!r} in term {term!r}")
        w = _weight_for(rs, w_text)
        dom[w] = dom.get(w, 0) + (int(m_text) if m_text else 1)
    d = decompose(Character(rs, dom))
    _emit(args, d.to_json(), _decomp_text(d))


def cmd_linkage(args):
    rs = _system(args.type)
    mu, nu = _weight_for(rs, args.mu, False), _weight_for(rs, args.nu, False)
    if args.prime is not None:
        if not isprime(args.prime):
            raise UsageError(f"--prime {args.prime} is not a prime")
        ok = wp_dot_conjugate(rs, mu, nu, args.prime, args.convention)
        _emit(args, {"prime": args.prime, "linked": ok}, "linked" if ok else "not linked")
        return
    cond = wp_conjugacy_primes(rs, mu, nu, args.convention, args.method)
    oc = order_compare(rs, mu, nu)
    data = {"linked_primes": cond.to_json(), "text": str(cond),
            "mu_leq_nu": oc.leq_root, "mu_prec_nu": oc.prec_rational}
    _emit(args, data, f"linked for {cond}" if not cond.is_empty else "never linked")


def cmd_alcove(args):
    rs = _system(args.type)
    b = low_alcove_min_prime(rs, _weight_for(rs, args.weight))
    _emit(args, {"bound": b.bound, "least_prime": b.least_prime},
          f"max <lam+rho, alpha^vee> = {b.bound}; low alcove for p >= {b.least_prime}")


def cmd_minimal(args):
    rs = _system(args.type)
    if not isprime(args.p):
        raise UsageError(f"{args.p} is not a prime")
    lam = _weight_for(rs, args.weight)
    wit = linkage_witness(rs, lam, args.p, args.convention)
    data = {"weight": list(lam), "p": args.p, "minimal": wit is None, "witness": list(wit) if wit else None}
    _emit(args, data, "minimal" if wit is None else f"not minimal: linked to {weight_name(wit)}")


def cmd_subsystems(args):
    rs = _system(args.type)
    embs = enumerate_subsystems(rs, args.depth)
    if args.maximal_rank:
        embs = [e for e in embs if e.maximal_rank]
    data = [e.to_json() | {"chosen_roots": [list(r) for r in e.chosen_roots]} for e in embs]
    text = "\n".join(
        f"{e.sub_type:<16} removed {list(e.removed_nodes)}" + ("  [involution centralizer]" if involution_centralizer_test(e) else "")
        for e in embs
    )
    _emit(args, data, text)


def cmd_branch(args):
    host = _system(args.host)
    emb = _embedding(host, args.sub, args.index)
    from .subsys import branch_decompose

    d = branch_decompose(emb, _weight_for(host, args.weight))
    _emit(args, d.to_json() | {"sub_type": emb.sub_type}, f"[{emb.sub_type}] " + _decomp_text(d))


def cmd_orbits(args):
    rs = _system(args.host)
    rows = []
    for od in load_distinguished_orbits(rs.name, args.data):
        prof = grading_profile(rs, od)
        th = optimal_prime_threshold(prof)
        rows.append(od.to_json() | {"dim": orbit_dimension(rs, od.labels), "max_grade": prof.max_grade,
                                    "grades": {str(k): v for k, v in prof.dims.items() if k >= 0},
                                    "threshold": th.to_json()})
    text = "\n".join(f"{r['label']:<10} {''.join(map(str, r['labels']))}  dim {r['dim']}  max grade {r['max_grade']}"
                     for r in rows)
    _emit(args, rows, text)


def cmd_sl2(args):
    rs = _system(args.host)
    od = find_orbit(rs.name, args.label)
    sc = sl2_restrict(irreducible_character(rs, _weight_for(rs, args.weight)), od.labels)
    _emit(args, sc.to_json(), str(sc))


def cmd_spin(args):
    st = spin_threshold(args.dim_v)
    text = f"dim V = {st.dim_v}: p >= {st.least_prime}"
    if st.table_value is not None:
        text += f" (table: p >= {st.table_value}{'' if st.agrees_with_table else ', differs'})"
    _emit(args, st.to_json(), text)


def cmd_certify(args):
    if args.replay:
        try:
            data = json.loads(Path(args.replay).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read certificate {args.replay}: {exc}") from None
        res = replay(data)
        _emit(args, {"replayed": True, "result": res.to_json()}, f"replay ok: {res}")
        return
    if not args.host:
        raise UsageError("certify needs a host type or --replay FILE")
    rs = _system(args.host)
    seeds = [_weight_for(rs, s) for s in args.seed] if args.seed else None
    chain = None
    if args.reference_chain:
        if rs.name != "E7":
            raise RootSystemError("the reference chain is defined for E7 only")
        chain = E7_REFERENCE_CHAIN
    cert, res = exceptional_protocol(rs, seeds, work_budget=args.work_budget, convention=args.convention,
                                     saturate=args.saturate, constructions=chain)
    if args.out:
        Path(args.out).write_text(cert.dumps())
    _emit(args, cert.to_json(), cert.transcript())


def cmd_report_subsystem(args):
    host = _system(args.host)
    emb = _embedding(host, args.sub, args.index)
    rep = subsystem_prime_report(host, emb, convention=args.convention)
    lines = [f"{rep.host} > {rep.sub_type}: condition {rep.condition}",
             f"alcove prime {rep.alcove_prime}; accepted below it by linkage: {rep.accepted_below or 'none'}"]
    for a in rep.weights:
        fails = [p for p, ok in sorted(a.linkage.items()) if not ok]
        lines.append(f"  {','.join(map(str, a.weight)):<24} bounds {a.component_bounds}  alcove p >= {a.least_prime}"
                     + (f"  linked below at {fails}" if fails else ""))
    _emit(args, rep.to_json(), "\n".join(lines))


def cmd_report_sl2(args):
    rs = _system(args.host)
    od = find_orbit(rs.name, args.label)
    rep = sl2_orbit_report(rs, od, args.reading)
    th = rep.threshold
    lines = [f"{rs.name} orbit {od.bala_carter_label}: condition {rep.condition}",
             f"max grade {th.max_grade}; threshold {th.vanish_above_2p} (max grade <= 2p) / "
             f"{th.vanish_from_2p} (max grade < 2p)"]
    lines += [f"  {weight_name(w)}: {sc}" for w, sc in rep.restrictions.items()]
    _emit(args, rep.to_json(), "\n".join(lines))


# -- parser -----------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="emit compact deterministic JSON")
    p.add_argument("--convention", choices=CONVENTIONS, default="rho",
                   help="dot action: w(mu+rho)-rho (default) or w(mu-rho)+rho")
    for name in ("orbit", "dominant", "weight", "scan"):
        p.add_argument(f"--{name}-budget", type=int, default=None, metavar="N",
                       help=f"override the {name} budget (env {budget.ENV_PREFIX}{name.upper()}_BUDGET)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="goodfilt", description="Good filtrations, linkage and subsystem checks.")
    sub = ap.add_subparsers(dest="cmd", required=True, metavar="SUBCOMMAND")

    def add(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(fn=fn)
        return p

    p = add("roots", cmd_roots, "Positive roots and Cartan data of a root system.")
    p.add_argument("type")
    p = add("char", cmd_char, "Dominant weight multiplicities of H0(lam) (Freudenthal's formula).")
    p.add_argument("type"); p.add_argument("weight")
    p = add("dim", cmd_dim, "Weyl dimension formula for H0(lam).")
    p.add_argument("type"); p.add_argument("weight")
    p = add("tensor", cmd_tensor, "Good filtration layers of H0(lam) (x) H0(mu) via Brauer-Klimyk.")
    p.add_argument("type"); p.add_argument("left"); p.add_argument("right")
    p = add("ext", cmd_ext, "Layers of the m-th exterior power of H0(lam), good for p > m.")
    p.add_argument("m", type=int); p.add_argument("type"); p.add_argument("weight")
    p = add("sym", cmd_sym, "Layers of the m-th symmetric power of H0(lam), good for p > m.")
    p.add_argument("m", type=int); p.add_argument("type"); p.add_argument("weight")
    p = add("decompose", cmd_decompose,
            "Write a character in the Weyl-character basis (layers of a good filtration from its character).")
    p.add_argument("type")
    p.add_argument("terms", nargs="+", metavar="WEIGHT[:MULT]", help="dominant weights with multiplicities")
    p = add("linkage", cmd_linkage, "Primes p for which mu and nu lie in one W_p dot-orbit (linkage principle).")
    p.add_argument("type"); p.add_argument("mu"); p.add_argument("nu")
    p.add_argument("--prime", type=int, default=None, help="decide a single prime")
    p.add_argument("--method", choices=("alcove", "scan"), default="alcove")
    p = add("alcove", cmd_alcove, "Jantzen low-alcove bound: least prime with H0(lam) simple by the alcove criterion.")
    p.add_argument("type"); p.add_argument("weight")
    p = add("minimal", cmd_minimal, "Is lam the least dominant weight of its linkage class (so H0(lam) is simple)?")
    p.add_argument("type"); p.add_argument("weight"); p.add_argument("p", type=int)
    p = add("subsystems", cmd_subsystems,
            "Subsystems by node removal from extended Dynkin diagrams (Borel-de Siebenthal).")
    p.add_argument("type")
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--maximal-rank", action="store_true")
    p = add("branch", cmd_branch, "Restriction of H0(lam) to a subsystem subgroup, in Weyl characters.")
    p.add_argument("host"); p.add_argument("sub"); p.add_argument("weight")
    p.add_argument("--index", type=int, default=0, help="which embedding of that type (default 0)")
    p = add("orbits", cmd_orbits, "Bundled distinguished nilpotent orbits with their gradings.")
    p.add_argument("host")
    p.add_argument("--data", default=None, help="alternative orbit data file")
    p = add("sl2", cmd_sl2, "Restriction of H0(lam) to the optimal SL2 of a distinguished orbit.")
    p.add_argument("host"); p.add_argument("label"); p.add_argument("weight")
    p = add("spin", cmd_spin, "Prime bound for an optimal SL2 acting on a spin module of SO(V).")
    p.add_argument("dim_v", type=int)
    p = add("certify", cmd_certify,
            "Fundamental-weight protocol for exceptional groups via van der Kallen's lemma; prints a certificate.")
    p.add_argument("host", nargs="?")
    p.add_argument("--seed", action="append", help="seed weight (repeatable); defaults to the standard seeds")
    p.add_argument("--work-budget", type=int, default=None)
    p.add_argument("--saturate", action="store_true", help="keep improving after all fundamentals are certified")
    p.add_argument("--reference-chain", action="store_true", help="E7 only: use the classical eight constructions")
    p.add_argument("--out", help="write the certificate JSON here")
    p.add_argument("--replay", metavar="FILE", help="re-check a certificate file instead")
    p = add("report-subsystem", cmd_report_subsystem,
            "Good filtration subgroup test for a subsystem of an exceptional group (alcove plus linkage).")
    p.add_argument("host"); p.add_argument("sub")
    p.add_argument("--index", type=int, default=0)
    p = add("report-sl2", cmd_report_sl2,
            "Good filtration test for the optimal SL2 of a distinguished orbit (grading bound plus restriction).")
    p.add_argument("host"); p.add_argument("label")
    p.add_argument("--reading", choices=READINGS, default="vanish_above_2p")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    over = {k: v for k, v in (("orbit", args.orbit_budget), ("dominant", args.dominant_budget),
                              ("weights", args.weight_budget), ("scan", args.scan_budget)) if v is not None}
    try:
        with budget.override(**over):
            args.fn(args)
    except UsageError as exc:
        print(f"goodfilt: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetError as exc:
        print(f"goodfilt: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (RootSystemError, CharacterError, OrbitDataError, ValueError) as exc:
        print(f"goodfilt: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
