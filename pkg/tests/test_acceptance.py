"""One test per acceptance criterion. Each prints a single pass/fail line
(shown in the terminal summary) and fails if the criterion does not hold or
runs past the time limit."""
import filecmp
import json
import os
import time

from click.testing import CliRunner

import battery
from corpus_data import adjunctions, functors
from oracles import count_retractions
from randgen import random_bimodules
from test_sepcheck import first_projection_module, ring_maps, sweedler_cases
from semisep import verify
from semisep.adjunction import idempotent_corollary, rafael_regularity, ssep_monad_theorem
from semisep.algstruct import (
    dual_numbers, free_bimodule, ideal_coring_kxk, trace_ideal_and_fgp, trivial_coring, unit_map,
    validate_structure,
)
from semisep.cli import main
from semisep.corpus import cases
from semisep.fincat import MODES, blind_retractions, decide_retraction
from semisep.hopf import (
    coalgebra_map_verify, coinvariant_verdict, cyclic_group, h4_coalgebra_map, monoid_bialgebra, sweedler_h4,
    verify_antipode_properties,
)
from semisep.io import functor_doc
from semisep.linalg import GF
from semisep.sepcheck import (
    bimodule_analyze, comatrix_coring, coring_analyze, endo_ring_analyze, ring_ext_analyze,
    separability_idempotent, sweedler_analyze,
)

LIMIT = 60.0  # seconds per criterion
LINES = {}


def record(n, started, problems, detail):
    elapsed = time.perf_counter() - started
    if elapsed >= LIMIT:
        problems.append("took %.1f s" % elapsed)
    ok = not problems
    line = "criterion %d: %s (%s; %.1f s)" % (n, "pass" if ok else "fail", detail, elapsed)
    if problems:
        line += " " + "; ".join(problems[:5])
    LINES[n] = line
    print(line)
    assert ok, line


def test_criterion_1_oracle_equivalence():
    t = time.perf_counter()
    bad = []
    fs = [F for F in functors() if F.source.size() + F.target.size() <= 12]
    for F in fs:
        counts = count_retractions(functor_doc(F))
        for m in MODES:
            blind = blind_retractions(F, m)
            if not (decide_retraction(F, m)[0] == bool(blind) == (counts[m] > 0)) or len(blind) != counts[m]:
                bad.append("%s/%s" % (F.name, m))
    if len(fs) < 15:
        bad.append("only %d functors" % len(fs))
    record(1, t, bad, "%d functors, %d disagreements" % (len(fs), len(bad)))


def test_criterion_2_equivalence_battery():
    t = time.perf_counter()
    n, pairs, violations = battery.run()
    bad = list(violations)
    if n < 15:
        bad.append("only %d functors" % n)
    record(2, t, bad, "%d functors, %d composites, %d violations" % (n, pairs, len(violations)))


def test_criterion_3_rafael_cross_check():
    t = time.perf_counter()
    bad = []
    adjs = adjunctions()
    for a in adjs:
        for side in ("left", "right"):
            r = rafael_regularity(a, side)
            if not r["agree"]:
                bad.append("%s/%s disagrees" % (a.name, side))
            if r["regular"] and not (r["retraction_valid"] and r["idempotent_matches"]):
                bad.append("%s/%s idempotent" % (a.name, side))
    names = {a.name for a in adjs}
    if len(adjs) < 8 or "closure_top" not in names:
        bad.append("corpus too small or missing the closure case")
    record(3, t, bad, "%d adjunctions" % len(adjs))


def test_criterion_4_monad_biconditionals():
    t = time.perf_counter()
    bad = []
    n_idem = 0
    for a in adjunctions():
        r = ssep_monad_theorem(a)
        if not r["holds"]:
            bad.append(a.name)
        res = idempotent_corollary(a)
        if res is not None:
            n_idem += 1
            if not res[0]:
                bad.append("%s corollary" % a.name)
    record(4, t, bad, "%d adjunctions, %d idempotent" % (len(adjunctions()), n_idem))


def test_criterion_5_ring_extensions():
    t = time.perf_counter()
    bad = []
    expected = {
        "unit_k_to_dual": (True, True, False),
        "aug_dual_to_k": (False, False, False),
        "proj_kxk_to_k": (True, False, True),
        "unit_kxk_via_k": (True, False, False),
    }
    maps = ring_maps()
    for name, want in expected.items():
        phi = maps[name]
        r = ring_ext_analyze(phi)
        if tuple(getattr(r, m) for m in MODES) != want:
            bad.append("%s verdicts" % name)
        for mode, E in r.E.items():
            if not verify.ring_ext_witness(phi, E, mode):
                bad.append("%s %s witness" % (name, mode))
        if r.semiseparable and not r.certificates.get("z_unique"):
            bad.append("%s z not unique" % name)
    if tuple(ring_ext_analyze(maps["proj_kxk_to_k"]).z) != (1, 0):
        bad.append("z for the projection")
    record(5, t, bad, "%d ring extensions" % len(expected))


def test_criterion_6_corings():
    t = time.perf_counter()
    bad = []
    r = coring_analyze(trivial_coring(dual_numbers()))
    if not r.cosplit:
        bad.append("trivial coring not cosplit")
    Cr = ideal_coring_kxk()
    r = coring_analyze(Cr)
    if not (r.semicosplit and not r.cosplit and tuple(Cr.counit(r.z["semicosplit"])) == (1, 0)):
        bad.append("ideal coring")
    if sweedler_analyze(unit_map(dual_numbers()))["report"].semicosplit:
        bad.append("dual numbers Sweedler coring semicosplit")
    sw = sweedler_cases()
    for name, (phi, want) in sw.items():
        out = sweedler_analyze(phi)
        feasible = separability_idempotent(phi) is not None
        if out["report"].semicosplit != feasible or feasible != want or validate_structure(out["coring"]):
            bad.append(name)
    if not sw["k_to_kxk"][1]:
        bad.append("k to kxk should be feasible")
    record(6, t, bad, "%d Sweedler corings" % len(sw))


def test_criterion_7_bimodules():
    t = time.perf_counter()
    bad = []
    r = bimodule_analyze(free_bimodule(3))
    if not r.M_sep:
        bad.append("k^3 not M-separable")
    r = bimodule_analyze(first_projection_module())
    if not (r.M_semisep and not r.M_sep and tuple(r.z) == (1, 0)):
        bad.append("(k, kxk) case")
    ms = random_bimodules(20, seed=1)
    fgp = 0
    for i, M in enumerate(ms + [free_bimodule(2), first_projection_module()]):
        r = bimodule_analyze(M)
        if not (r.certificates["three_way"] and r.certificates["sep_iff_semisep_and_generator"]):
            bad.append("bimodule %d equivalence" % i)
        if r.M_semisep and not verify.bimodule_tensor(M, r.terms)[0]:
            bad.append("bimodule %d witness" % i)
        if r.fgp:
            fgp += 1
            Cr = comatrix_coring(M, trace_ideal_and_fgp(M)["dual_basis"])
            if coring_analyze(Cr).semicosplit != r.M_semisep:
                bad.append("bimodule %d comatrix" % i)
            if not endo_ring_analyze(M)["agrees"]:
                bad.append("bimodule %d endo ring" % i)
    if not all(M.field == GF(5) for M in ms):
        bad.append("random bimodules not over F_5")
    record(7, t, bad, "%d bimodules, %d fgp" % (len(ms) + 2, fgp))


def test_criterion_8_hopf():
    t = time.perf_counter()
    bad = []
    for name, B in (("kC2", cyclic_group(2)), ("H4", sweedler_h4())):
        v = coinvariant_verdict(B)
        if v.coinvariant_semiseparable != "holds" or verify_antipode_properties(B, v.antipode.S) != (True,) * 3:
            bad.append(name)
    v = coinvariant_verdict(monoid_bialgebra(["1", "a"], [[0, 1], [1, 1]]))
    if v.coinvariant_semiseparable != "fails" or not v.infeasibility["rank_A"] < v.infeasibility["rank_Ab"]:
        bad.append("monoid bialgebra")
    H = sweedler_h4().coalgebra
    maps = [h4_coalgebra_map(k) for k in (0, 1, 2)]
    for k, f in enumerate(maps):
        if f.validate() or not coalgebra_map_verify(f.matrix, H, f.target):
            bad.append("f_%d" % k)
    if len({f.matrix for f in maps}) != 3:
        bad.append("f_k not distinct")
    record(8, t, bad, "kC2, H4, monoid, 3 maps")


def test_criterion_9_determinism(tmp_path):
    t = time.perf_counter()
    bad = []
    outs = []
    for name in ("a", "b"):
        out = tmp_path / name
        res = CliRunner().invoke(main, ["corpus", "run", "--out", str(out)])
        if res.exit_code != 0:
            bad.append("corpus run %s exit %d" % (name, res.exit_code))
        outs.append(out)
    names = sorted(os.listdir(outs[0]))
    _, mismatch, errors = filecmp.cmpfiles(outs[0], outs[1], names, shallow=False)
    bad += ["%s differs" % n for n in mismatch + errors]
    held = 0
    for n in names:
        if json.loads((outs[0] / n).read_text())["status"] != "holds":
            continue
        held += 1
        if CliRunner().invoke(main, ["--verify-only", str(outs[0] / n)]).exit_code != 0:
            bad.append("%s does not re-verify" % n)
    if len(names) != len(cases()):
        bad.append("missing reports")
    record(9, t, bad, "%d reports, %d holds re-verified" % (len(names), held))
