import logging
import time
from argparse import Namespace
from math import comb
from plane_matroids.cli import reports
from plane_matroids.core import embed, families, formats, orientability
from plane_matroids.core.matroid import LineMatroid

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INCONCLUSIVE = 1

def _group_pair(args:Namespace):
    G = families.GroupSpec.parse(args.group)
    g0 = G.parse_element(args.g0) if args.g0 is not None else G.elements()[0]
    g1 = G.parse_element(args.g1) if args.g1 is not None else G.elements()[1]
    return G, g0, g1

def _group_inputs(G, g0, g1) -> dict:
    return {"group": str(G), "g0": G.label(g0), "g1": G.label(g1)}

#===============================================#
#-------------------- build --------------------#
#===============================================#

def run_build(args:Namespace) -> int:
    if args.family == "sigma":
        M = families.build_m_sigma(args.n, families.Permutation.parse(args.n, args.perm))
    elif args.family == "group":
        M = families.build_group_matroid(*_group_pair(args))
    else:
        M = families.build_m_prime(args.n)
    reports.emit(formats.matroid_to_record(M))
    return EXIT_OK

#===============================================#
#-------------------- orient -------------------#
#===============================================#

def run_orient_criterion(args:Namespace) -> int:
    if args.group is not None:
        G, g0, g1 = _group_pair(args)
        verdict = orientability.criterion_group(G, g0, g1)
        inputs = _group_inputs(G, g0, g1)
        result = {"r": verdict.r, "orientable": verdict.orientable}
        orientable = verdict.orientable
    else:
        if args.n is None:
            raise ValueError("--perm needs --n")
        sigma = families.Permutation.parse(args.n, args.perm)
        orientable = orientability.criterion_sigma(sigma)
        inputs = {"n": args.n, "perm": sigma.cycle_notation()}
        result = {
            "cycle_lengths": list(families.sigma_graph(sigma).cycle_lengths),
            "orientable": orientable,
        }
    reports.emit(reports.make_report(
        "orient criterion",
        inputs,
        "orientable" if orientable else "non-orientable",
        result=result,
    ))
    return EXIT_OK

def run_orient_brute(args:Namespace) -> int:
    M = formats.load_matroid(args.matroid)
    result = orientability.find_chirotope(M, budget=args.budget, workers=args.workers)
    reports.emit(reports.make_report(
        "orient brute",
        {"matroid": str(args.matroid), "budget": args.budget},
        reports.orientability_verdict(result),
        certificates={"search": reports.search_section(result)},
        counters={"nodes": result.nodes},
        wall_time=result.wall_time,
    ))
    return EXIT_INCONCLUSIVE if result.outcome == "budget-exhausted" else EXIT_OK

#===============================================#
#------------------- minimal -------------------#
#===============================================#

def run_minimal(args:Namespace) -> int:
    M = formats.load_matroid(args.matroid)
    report = orientability.certify_minimal_nonorientable(M, budget=args.budget, workers=args.workers)
    found = sum(result.outcome == "found" for result in report.deletions.values())
    reports.emit(reports.make_report(
        "minimal",
        {"matroid": str(args.matroid), "budget": args.budget},
        report.verdict,
        certificates=reports.minimality_sections(report),
        counters={"nodes": report.nodes, "deletion_certificates": found},
        wall_time=report.wall_time,
    ))
    return EXIT_INCONCLUSIVE if report.verdict == "inconclusive" else EXIT_OK

#===============================================#
#-------------------- embed --------------------#
#===============================================#

def _embedding_construction(args:Namespace):
    if args.prime is not None:
        return {"prime": args.prime}, embed.psi_prime(args.prime)
    try:
        m, p, t = (int(part) for part in args.subgroup.split(","))
    except ValueError:
        raise ValueError(f"--subgroup expects M,P,T: {args.subgroup!r}") from None
    return {"subgroup": [m, p, t]}, embed.psi_subgroup(m, p, t)

def run_embed_verify(args:Namespace) -> int:
    start = time.perf_counter()
    inputs, (M, img, spec) = _embedding_construction(args)
    diagnosis = embed.verify_embedding(M, img, spec)
    reports.emit(reports.make_report(
        "embed verify",
        inputs,
        "embeds" if diagnosis else "does not embed",
        result={"field": str(spec), "violation": None if diagnosis else reports.diagnosis_section(diagnosis)},
        certificates={"matroid": formats.matroid_to_record(M), "map": formats.element_map_to_record(img)},
        counters={"triples_scanned": comb(len(M), 3)},
        wall_time=time.perf_counter() - start,
    ))
    return EXIT_OK

def run_embed_table(args:Namespace) -> int:
    start = time.perf_counter()
    table = embed.ziegler_table(args.max_q)
    reports.emit(reports.make_report(
        "embed table",
        {"max_q": args.max_q},
        "embeds" if table["embeds"].all() else "does not embed",
        result={"rows": reports.table_records(table)},
        wall_time=time.perf_counter() - start,
    ))
    return EXIT_OK

def run_embed_obstruction(args:Namespace) -> int:
    if args.matroid is not None:
        M: LineMatroid = formats.load_matroid(args.matroid)
        inputs = {"matroid": str(args.matroid)}
    else:
        G, g0, g1 = _group_pair(args)
        M = families.build_group_matroid(G, g0, g1)
        inputs = _group_inputs(G, g0, g1)
    inputs["q"] = args.q
    reason = embed.obstruction(M, args.q)
    reports.emit(reports.make_report(
        "embed obstruction",
        inputs,
        "obstructed" if reason else "unobstructed",
        result={"reason": reason},
    ))
    return EXIT_OK

def run_embed_complex(args:Namespace) -> int:
    start = time.perf_counter()
    result = embed.complex_check(args.n, tol_zero=args.tol_zero, tol_nonzero=args.tol_nonzero)
    reports.emit(reports.make_report(
        "embed complex",
        {"n": args.n, "tol_zero": args.tol_zero, "tol_nonzero": args.tol_nonzero},
        "embeds" if result else "does not embed",
        result={
            "worst_dependent": result.worst_dependent,
            "smallest_independent": result.smallest_independent,
            "witness": list(result.witness),
        },
        counters={"triples_scanned": comb(2 * args.n + 2, 3)},
        wall_time=time.perf_counter() - start,
    ))
    return EXIT_OK

#===============================================#
#----------------- sweep, groups ---------------#
#===============================================#

def run_sweep(args:Namespace) -> int:
    start = time.perf_counter()
    table = orientability.sweep(args.max_n, budget=args.budget, workers=args.workers, min_n=args.min_n)
    decided = table["agree"].dropna()
    if not decided.all():
        verdict = "disagree"
    elif len(decided) < len(table):
        verdict = "inconclusive"
    else:
        verdict = "agree"
    reports.emit(reports.make_report(
        "sweep",
        {"min_n": args.min_n, "max_n": args.max_n, "budget": args.budget},
        verdict,
        result={"rows": reports.table_records(table)},
        counters={"rows": len(table), "nodes": int(table["nodes"].sum()) if len(table) else 0},
        wall_time=time.perf_counter() - start,
    ))
    return EXIT_INCONCLUSIVE if verdict == "inconclusive" else EXIT_OK

def run_groups(args:Namespace) -> int:
    start = time.perf_counter()
    table = orientability.group_consistency_table(args.max_order)
    reports.emit(reports.make_report(
        "groups",
        {"max_order": args.max_order},
        "agree" if table["agree"].all() else "disagree",
        result={"rows": reports.table_records(table)},
        counters={"rows": len(table)},
        wall_time=time.perf_counter() - start,
    ))
    return EXIT_OK

#===============================================#
#------------------- realize -------------------#
#===============================================#

def run_realize(args:Namespace) -> int:
    if args.four_cycles:
        sigma = families.Permutation.parse(args.n, args.perm)
        arr = families.realize_four_cycles(args.n, sigma)
        expected = families.build_m_sigma(args.n, sigma)
        inputs = {"construction": "four-cycles", "n": args.n, "perm": sigma.cycle_notation()}
    else:
        tau = families.Permutation.parse(args.n, args.tau)
        arr = families.realize_f(args.n, tau)
        expected = families.build_m_prime(args.n)
        inputs = {"construction": "F", "n": args.n, "tau": tau.cycle_notation()}

    chi = orientability.chirotope_of_arrangement(arr)
    diagnosis = orientability.check_certificate(expected, chi)
    reports.emit(reports.make_report(
        "realize",
        inputs,
        "exact" if diagnosis else "inexact",
        result={"mismatch": None if diagnosis else reports.diagnosis_section(diagnosis)},
        certificates={
            "arrangement": formats.arrangement_to_records(arr),
            "matroid": formats.matroid_to_record(expected),
        },
        counters={"triples_scanned": comb(len(arr), 3)},
    ))
    return EXIT_OK
