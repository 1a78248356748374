"""The bundled corpus: fixture files, the manifest, and the runner that
replays every case through the command line."""
import os
import time
from concurrent.futures import ProcessPoolExecutor

from . import catalog
from .algstruct import (
    augmentation, compose_maps, dual_numbers, free_bimodule, ground, ideal_coring_kxk, outer_bimodule,
    product_algebra, projection_map, set_map_coalgebra_map, grouplike_coalgebra, trivial_coring, unit_map,
    bimodule_of_map,
)
from .hopf import cyclic_group, monoid_bialgebra, sweedler_h4
from .io import InputError, adjunction_doc, category_doc, check, functor_doc, read_json, with_header
from .schemas import SCHEMA_VERSION, dumps

HERE = os.path.join(os.path.dirname(os.path.abspath(__file__)), "corpus")


def bundled_manifest():
    return os.path.join(HERE, "manifest.json")


def _doc(kind, obj):
    if kind == "category":
        d = category_doc(obj)
    elif kind == "functor":
        d = functor_doc(obj)
    elif kind == "adjunction":
        d = adjunction_doc(obj)
    elif kind == "triple":
        d = {"left": adjunction_doc(obj.left), "right": adjunction_doc(obj.right)}
    else:
        d = obj.to_dict()
    d = {k: v for k, v in d.items() if v is not None}
    return with_header(kind, d)


def fixtures():
    """``{filename: document}`` for every bundled input."""
    D, P = dual_numbers(), product_algebra(2)
    k = ground()
    A = grouplike_coalgebra(["a", "b"])
    out = {
        "split_pair.json": ("category", catalog.split_pair()),
        "collapse.json": ("functor", catalog.collapse()),
        "monoid_e_to_terminal.json": ("functor", catalog.to_terminal(catalog.monoid_e())),
        "split_pair_to_terminal.json": ("functor", catalog.to_terminal(catalog.split_pair())),
        "pick_B.json": ("functor", catalog.pick_B()),
        "galois_chain.json": ("adjunction", catalog.galois_chain()),
        "closure_top.json": ("adjunction", catalog.closure_top()),
        "split_triple.json": ("triple", catalog.split_triple()),
        "unit_k_to_dual.json": ("algebra_map", unit_map(D)),
        "aug_dual_to_k.json": ("algebra_map", augmentation(D)),
        "proj_kxk_to_k.json": ("algebra_map", projection_map(P)),
        "unit_kxk_via_k.json": ("algebra_map", compose_maps(unit_map(D), projection_map(P))),
        "unit_k_to_kxk.json": ("algebra_map", unit_map(P)),
        "merge_ab_to_x.json": ("coalgebra_map", set_map_coalgebra_map(A, grouplike_coalgebra(["x"]),
                                                                      {"a": "x", "b": "x"})),
        "include_a_in_xy.json": ("coalgebra_map", set_map_coalgebra_map(
            grouplike_coalgebra(["a"]), grouplike_coalgebra(["x", "y"]), {"a": "x"})),
        "identity_ab.json": ("coalgebra_map", set_map_coalgebra_map(A, A, {"a": "a", "b": "b"})),
        "trivial_coring_dual.json": ("coring", trivial_coring(D)),
        "ideal_coring_kxk.json": ("coring", ideal_coring_kxk()),
        "free_k3.json": ("bimodule", free_bimodule(3)),
        "k_kxk_first.json": ("bimodule", outer_bimodule(k, P, [[[1]]], [[[1]], [[0]]])),
        "dual_over_k.json": ("bimodule", bimodule_of_map(unit_map(D), side="right")),
        "kC2.json": ("bialgebra", cyclic_group(2)),
        "H4.json": ("bialgebra", sweedler_h4()),
        "monoid_1a.json": ("bialgebra", monoid_bialgebra(["1", "a"], [[0, 1], [1, 1]])),
    }
    return {name: _doc(kind, obj) for name, (kind, obj) in out.items()}


def _case(cid, files, command, expected, provenance):
    return {"id": cid, "files": files, "command": command, "expected": expected, "provenance": provenance}


def cases():
    c = []

    def add(cid, command, expected, provenance="hand-derived"):
        files = [a for a in command if a.endswith(".json")]
        c.append(_case(cid, files, command, expected, provenance))

    add("validate_split_pair", ["cat", "validate", "--category", "split_pair.json"], "holds", "immediate")
    add("decide_collapse_ssep", ["cat", "decide", "--functor", "collapse.json", "--mode", "semiseparable"], "fails")
    add("decide_collapse_full", ["cat", "property", "--functor", "collapse.json", "--property", "full"], "holds")
    add("decide_monoid_e_ssep", ["cat", "decide", "--functor", "monoid_e_to_terminal.json"], "holds")
    add("decide_monoid_e_sep", ["cat", "decide", "--functor", "monoid_e_to_terminal.json",
                                "--mode", "separable"], "fails")
    add("idempotent_monoid_e", ["cat", "idempotent", "--functor", "monoid_e_to_terminal.json"], "holds")
    add("coidentifier_monoid_e", ["cat", "coidentifier", "--functor", "monoid_e_to_terminal.json"], "holds")
    add("coidentifier_split_pair", ["cat", "coidentifier", "--functor", "split_pair_to_terminal.json"], "holds")
    add("decide_pick_B_nfull", ["cat", "decide", "--functor", "pick_B.json", "--mode", "naturally_full"], "holds")
    add("decide_pick_B_sep", ["cat", "decide", "--functor", "pick_B.json", "--mode", "separable"], "holds")
    add("galois_left", ["cat", "adjunction", "--adjunction", "galois_chain.json", "--side", "left"], "holds")
    add("galois_right", ["cat", "adjunction", "--adjunction", "galois_chain.json", "--side", "right"], "fails")
    add("closure_left", ["cat", "adjunction", "--adjunction", "closure_top.json", "--side", "left"], "fails")
    add("closure_right", ["cat", "adjunction", "--adjunction", "closure_top.json", "--side", "right"], "holds")
    add("split_triple", ["cat", "triple", "--triple", "split_triple.json"], "holds")
    add("ring_unit_dual_sep", ["ring-ext", "--map", "unit_k_to_dual.json", "--mode", "separable"], "holds",
        "published-example")
    add("ring_aug_ssep", ["ring-ext", "--map", "aug_dual_to_k.json"], "fails", "published-example")
    add("ring_proj_ssep", ["ring-ext", "--map", "proj_kxk_to_k.json"], "holds", "published-example")
    add("ring_proj_nfull", ["ring-ext", "--map", "proj_kxk_to_k.json", "--mode", "naturally_full"], "holds",
        "published-example")
    add("ring_composite_ssep", ["ring-ext", "--map", "unit_kxk_via_k.json"], "holds", "published-example")
    add("ring_composite_sep", ["ring-ext", "--map", "unit_kxk_via_k.json", "--mode", "separable"], "fails",
        "published-example")
    add("coalg_merge_ssep", ["coalg-map", "--map", "merge_ab_to_x.json"], "holds")
    add("coalg_merge_sep", ["coalg-map", "--map", "merge_ab_to_x.json", "--mode", "separable"], "holds")
    add("coalg_merge_nfull", ["coalg-map", "--map", "merge_ab_to_x.json", "--mode", "naturally_full"], "fails")
    add("coalg_include_ssep", ["coalg-map", "--map", "include_a_in_xy.json"], "holds")
    add("coalg_include_sep", ["coalg-map", "--map", "include_a_in_xy.json", "--mode", "separable"], "fails")
    add("coalg_identity_nfull", ["coalg-map", "--map", "identity_ab.json", "--mode", "naturally_full"], "holds")
    add("coring_trivial_cosplit", ["coring", "--coring", "trivial_coring_dual.json", "--mode", "cosplit"],
        "holds", "immediate")
    add("coring_ideal_semicosplit", ["coring", "--coring", "ideal_coring_kxk.json"], "holds",
        "published-example")
    add("coring_ideal_cosplit", ["coring", "--coring", "ideal_coring_kxk.json", "--mode", "cosplit"], "fails",
        "published-example")
    add("coring_sweedler_dual", ["coring", "--sweedler", "unit_k_to_dual.json"], "fails", "published-example")
    add("coring_sweedler_kxk", ["coring", "--sweedler", "unit_k_to_kxk.json"], "holds")
    add("bimodule_free_k3_sep", ["bimodule", "--bimodule", "free_k3.json", "--mode", "separable"], "holds")
    add("bimodule_k_kxk", ["bimodule", "--bimodule", "k_kxk_first.json"], "holds")
    add("bimodule_dual_over_k", ["bimodule", "--bimodule", "dual_over_k.json"], "fails")
    add("hopf_kC2", ["hopf", "verdict", "--bialgebra", "kC2.json"], "holds", "immediate")
    add("hopf_H4", ["hopf", "verdict", "--bialgebra", "H4.json"], "holds", "published-example")
    add("hopf_monoid_1a", ["hopf", "verdict", "--bialgebra", "monoid_1a.json"], "fails")
    return sorted(c, key=lambda x: x["id"])


def build(out=HERE):
    """Write every fixture and the manifest into ``out``; returns the paths."""
    os.makedirs(out, exist_ok=True)
    written = []
    for name, doc in sorted(fixtures().items()):
        path = os.path.join(out, name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dumps(doc))
        written.append(path)
    manifest = {"schema_version": SCHEMA_VERSION, "kind": "manifest", "cases": cases()}
    path = os.path.join(out, "manifest.json")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(manifest))
    written.append(path)
    return written


def run_case(case, base):
    from .cli import invoke, verify_report
    report = invoke(case["command"], base=base)
    if report is None:
        report = {"status": "error", "witness": None}
    verified = True
    if report.get("status") == "holds" and report.get("witness") is not None:
        verified = verify_report(report)["ok"]
    fragment = case.get("witness_fragment")
    if fragment is not None:
        w = report.get("witness") or {}
        verified = verified and all(w.get(k) == v for k, v in fragment.items())
    return case["id"], report, verified


def run_manifest(path, budget=600.0, jobs=1):
    """Replay every case; returns ``(summary, {case id: report})``."""
    manifest = read_json(path)
    check(manifest, "manifest", path)
    base = os.path.dirname(os.path.abspath(path))
    todo = sorted(manifest["cases"], key=lambda c: c["id"])
    ids = [c["id"] for c in todo]
    if len(set(ids)) != len(ids):
        raise InputError("duplicate case ids", path, "/cases")
    start = time.monotonic()
    results = {}
    exceeded = False
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(run_case, c, base) for c in todo]
            for f in futures:
                cid, rep, ok = f.result()
                results[cid] = (rep, ok)
        exceeded = time.monotonic() - start > budget
    else:
        for c in todo:
            if time.monotonic() - start > budget:
                exceeded = True
                break
            cid, rep, ok = run_case(c, base)
            results[cid] = (rep, ok)
    rows = []
    for c in todo:
        if c["id"] not in results:
            rows.append({"id": c["id"], "expected": c["expected"], "status": "indeterminate",
                         "verified": False, "ok": False, "provenance": c["provenance"]})
            continue
        rep, verified = results[c["id"]]
        status = rep.get("status")
        rows.append({"id": c["id"], "expected": c["expected"], "status": status, "verified": verified,
                     "ok": status == c["expected"] and verified, "provenance": c["provenance"]})
    summary = {"cases": rows, "total": len(rows), "passed": sum(r["ok"] for r in rows),
               "failed": sum(not r["ok"] for r in rows), "budget_exceeded": exceeded}
    return summary, {cid: rep for cid, (rep, _) in results.items()}
