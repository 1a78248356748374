"""Command-line front end.

Every command prints one JSON report with ``status``, the canonical
``input``, a ``result`` block, the ``witness`` and the outcome of
re-checking that witness through :mod:`semisep.verify`.  Exit codes:
0 holds, 1 fails, 2 input or usage error, 3 indeterminate or bound exceeded.
"""
import os
import sys

import click

from . import verify
from .adjunction import adjoint_triple, idempotent_corollary, rafael_regularity, ssep_monad_theorem
from .algstruct import Bialgebra
from .coident import factorize_semiseparable, split_idempotent
from .fincat import (
    DEFAULT_BOUND, FUNCTOR_PROPERTIES, MODES, SearchBoundExceeded, associated_idempotent,
    decide_retraction, functor_property,
)
from .hopf import FAILS, HOLDS, INDETERMINATE, SCAN_LIMIT, build_named, coinvariant_verdict
from .io import (
    InputError, Loader, StructureError, adjunction_doc, category_doc, functor_doc, read_json, with_header,
)
from .linalg import Field, QQ
from .schemas import SCHEMA_VERSION, dumps, export
from .sepcheck import (
    bimodule_analyze, coalg_map_analyze, coring_analyze, coring_factorize, ring_ext_analyze, sweedler_analyze,
    sweedler_coring,
)

EXIT = {HOLDS: 0, FAILS: 1, "error": 2, INDETERMINATE: 3}
CORING_MODES = ("semicosplit", "cosplit", "natfull_G")


def _status(flag):
    return HOLDS if flag else FAILS


def _mat(field, M):
    return [[field.serialize(x) for x in r] for r in M]


def _vec(field, v):
    return [field.serialize(x) for x in v]


def _parse_mat(field, M):
    return tuple(tuple(field(x) for x in r) for r in M)


def _maps(F):
    return {"obj_map": dict(F.obj_map), "mor_map": dict(F.mor_map)}


def _retraction_table(P):
    return {k: dict(sorted(v.items())) for k, v in sorted(P.to_dict().items())}


class Outcome:
    """What a runner returns before the report is assembled."""

    def __init__(self, status, result, witness=None):
        self.status = status
        self.result = result
        self.witness = witness


# ---------------------------------------------------------------- runners
#
# A runner takes the built input objects and the options and returns an
# Outcome; a checker re-verifies a witness from the report alone.

def run_validate(obj, opts):
    return Outcome(HOLDS, {"kind": opts["kind"], "violations": []})


def run_property(F, opts):
    ok, cx = functor_property(F, opts["property"])
    return Outcome(_status(ok), {"property": opts["property"],
                                 "counterexample": list(cx) if isinstance(cx, tuple) else cx})


def run_decide(F, opts):
    ok, P = decide_retraction(F, opts["mode"], opts["bound"])
    result = {"mode": opts["mode"], "search": "exhaustive backtracking over binatural families"}
    if not ok:
        faithful, pair = functor_property(F, "faithful")
        if not faithful:
            result["identified_pair"] = list(pair)
            result["identified_image"] = F.mor(pair[0])
        return Outcome(FAILS, result)
    return Outcome(HOLDS, result, {"P": _retraction_table(P)})


def check_decide(inp, witness, opts):
    f = inp["functor"]
    return {"retraction": verify.retraction(f["source"], f["target"], f["obj_map"], f["mor_map"],
                                            witness["P"], opts["mode"])}


def run_idempotent(F, opts):
    ok, P = decide_retraction(F, "semiseparable", opts["bound"])
    if not ok:
        return Outcome(FAILS, {"reason": "not semiseparable"})
    e = associated_idempotent(F, P)
    w = split_idempotent(F.source, e)
    result = {"identity": e.is_identity(), "splits": w is not None,
              "splitting": w.to_dict() if w is not None else None}
    return Outcome(HOLDS, result, {"e": dict(sorted(e.components.items())), "P": _retraction_table(P)})


def check_idempotent(inp, witness, opts):
    f = inp["functor"]
    return {"retraction": verify.retraction(f["source"], f["target"], f["obj_map"], f["mor_map"],
                                            witness["P"], "semiseparable"),
            "idempotent": verify.associated_idempotent(f["source"], f["target"], f["obj_map"],
                                                       f["mor_map"], witness["e"])}


def run_coidentifier(F, opts):
    ok, _ = decide_retraction(F, "semiseparable", opts["bound"])
    if not ok:
        return Outcome(FAILS, {"reason": "not semiseparable"})
    fac = factorize_semiseparable(F, opts["bound"])
    Q = fac["quotient"]
    result = {"certificate": dict(sorted(fac["certificate"].items())),
              "classes": {r: list(Q.classes[r]) for r in sorted(Q.classes)}}
    witness = {"e": dict(sorted(fac["e"].components.items())), "quotient": category_doc(Q.category),
               "H": _maps(fac["H"]), "F_e": _maps(fac["F_e"])}
    return Outcome(_status(fac["holds"]), result, witness)


def check_coidentifier(inp, witness, opts):
    f = inp["functor"]
    obj, mor = verify.functor_composite(witness["H"], witness["F_e"])
    Q = Loader().load_inline("category", witness["quotient"])
    return {"idempotent": verify.associated_idempotent(f["source"], f["target"], f["obj_map"],
                                                       f["mor_map"], witness["e"]),
            "composite_is_F": obj == f["obj_map"] and mor == f["mor_map"],
            "quotient_valid": not Q.validate()}


def run_adjunction(adj, opts):
    side = opts["side"]
    r = rafael_regularity(adj, side, opts["bound"])
    result = {"side": side, "direct": r["direct"], "agree": r["agree"],
              "retraction_valid": r.get("retraction_valid"),
              "idempotent_matches": r.get("idempotent_matches")}
    mt = ssep_monad_theorem(adj, opts["bound"], opts["bound"])
    result["monad_theorem"] = mt
    ic = idempotent_corollary(adj, opts["bound"])
    result["idempotent_adjunction"] = ic is not None
    result["idempotent_corollary"] = ic[0] if ic is not None else None
    if not r["agree"]:
        raise AssertionError("regularity and direct search disagree")
    if not r["regular"]:
        return Outcome(FAILS, result)
    return Outcome(HOLDS, result, {"nu" if side == "left" else "gamma": dict(sorted(r["witness"].items())),
                                   "idempotent": dict(sorted(r["idempotent"].items()))})


def _raw_adj(a):
    return {"C": a["F"]["source"], "D": a["F"]["target"], "F": a["F"], "G": a["G"],
            "eta": a["eta"], "eps": a["eps"]}


def check_adjunction(inp, witness, opts):
    a = _raw_adj(inp["adjunction"])
    side = opts["side"]
    w = witness["nu"] if side == "left" else witness["gamma"]
    out = {"regular": verify.regular_unit(a, w, side)}
    # the idempotent is nu o eta (resp. eps o gamma), an idempotent of the identity
    C = verify._RawCat(a["C"] if side == "left" else a["D"])
    unit = a["eta"] if side == "left" else a["eps"]
    e = {x: C.c(w[x], unit[x]) if side == "left" else C.c(unit[x], w[x]) for x in C.objects}
    out["idempotent_formula"] = e == witness["idempotent"]
    functor = a["F"] if side == "left" else a["G"]
    out["idempotent_fixed_by_functor"] = verify.associated_idempotent(
        functor["source"], functor["target"], functor["obj_map"], functor["mor_map"], e)
    return out


def run_triple(T, opts):
    rep = adjoint_triple(T, opts["bound"])
    if not rep["holds"]:
        raise AssertionError("adjoint triple checks disagree")
    f_ssep = rep["modes"]["semiseparable"]["F"]
    result = {k: v for k, v in rep.items() if k not in ("nu", "gamma")}
    if not f_ssep:
        return Outcome(FAILS, result)
    return Outcome(HOLDS, result, {"nu": dict(sorted(rep["nu"].items())),
                                   "gamma": dict(sorted(rep["gamma"].items()))})


def check_triple(inp, witness, opts):
    t = inp["triple"]
    return {"nu_regular": verify.regular_unit(_raw_adj(t["left"]), witness["nu"], "left"),
            "gamma_regular": verify.regular_unit(_raw_adj(t["right"]), witness["gamma"], "right")}


def run_ring_ext(phi, opts):
    mode = opts["mode"]
    rep = ring_ext_analyze(phi)
    F = phi.source.field
    result = rep.to_dict()
    result["mode"] = mode
    if not getattr(rep, mode):
        return Outcome(FAILS, result)
    return Outcome(HOLDS, result, {"E": _mat(F, rep.E[mode]), "z": _vec(F, rep.z)})


def check_ring_ext(inp, witness, opts, phi):
    F = phi.source.field
    E = _parse_mat(F, witness["E"])
    out = {"E": verify.ring_ext_witness(phi, E, opts["mode"])}
    z = tuple(F(x) for x in witness["z"])
    out["z_is_E_of_one"] = verify._eq(verify._apply(E, phi.target.unit), z)
    return out


def run_coalg_map(psi, opts):
    mode = opts["mode"]
    r = coalg_map_analyze(psi)
    F = psi.source.field
    result = {m: r[m] for m in MODES}
    result["mode"] = mode
    result["infeasibility"] = dict(sorted(r["infeasibility"].items()))
    if not r[mode]:
        return Outcome(FAILS, result)
    return Outcome(HOLDS, result, {"chi": _mat(F, r["witness"][mode])})


def check_coalg_map(inp, witness, opts, psi):
    return {"chi": verify.coalg_witness(psi, _parse_mat(psi.source.field, witness["chi"]), opts["mode"])}


def run_coring(Cr, opts, sweedler_of=None):
    mode = opts["mode"]
    F = Cr.field
    if sweedler_of is not None:
        sw = sweedler_analyze(sweedler_of)
        rep = sw["report"]
        extra = {"sweedler": {"separability_idempotent": (_vec(F, sw["separability_idempotent"])
                                                          if sw["separability_idempotent"] is not None else None),
                              "semicosplit_iff_idempotent": sw["semicosplit_iff_idempotent"],
                              "E_condition_agrees": sw["E_condition_agrees"]}}
    else:
        rep = coring_analyze(Cr)
        extra = {}
    result = rep.to_dict(F)
    result.update(extra)
    result["mode"] = mode
    if rep.semicosplit:
        fac = coring_factorize(Cr, rep)
        result["factorization"] = {"certificate": dict(sorted(fac["certificate"].items())),
                                   "zhat": _vec(F, fac["zhat"]), "holds": fac["holds"]}
    if not getattr(rep, mode):
        return Outcome(FAILS, result)
    return Outcome(HOLDS, result, {"z": _vec(F, rep.z[mode])})


def check_coring(inp, witness, opts, Cr):
    z = tuple(Cr.field(x) for x in witness["z"])
    return {"z": verify.coring_z(Cr, z, opts["mode"])}


def run_bimodule(M, opts):
    mode = opts["mode"]
    F = M.field
    rep = bimodule_analyze(M)
    result = rep.to_dict(F)
    result["mode"] = mode
    ok = rep.M_semisep if mode == "semiseparable" else rep.M_sep
    if not ok:
        return Outcome(FAILS, result)
    terms = rep.terms if mode == "semiseparable" else rep.sep_terms
    return Outcome(HOLDS, result, {"terms": [{"f": _mat(F, f), "m": _vec(F, m)} for f, m in terms]})


def check_bimodule(inp, witness, opts, M):
    F = M.field
    terms = [(_parse_mat(F, t["f"]), tuple(F(x) for x in t["m"])) for t in witness["terms"]]
    ok, z = verify.bimodule_tensor(M, terms)
    out = {"central_tensor": ok}
    if opts["mode"] == "separable":
        out["z_is_one"] = z is not None and verify._eq(z, M.S.unit)
    return out


def run_hopf(B, opts):
    v = coinvariant_verdict(B, opts.get("scan_limit", SCAN_LIMIT))
    F = B.field
    result = v.to_dict()
    result["antipode"] = None
    if v.coinvariant_semiseparable != HOLDS:
        if v.antipode is not None:
            result["candidate"] = _mat(F, v.antipode.S)
        return Outcome(v.coinvariant_semiseparable, result)
    return Outcome(HOLDS, result, {"S": _mat(F, v.antipode.S)})


def check_hopf(inp, witness, opts, B):
    right, mult, comult = verify.antipode(B, _parse_mat(B.field, witness["S"]))
    return {"right_antipode": right, "anti_multiplicative": mult, "anti_comultiplicative": comult}


# command name -> (input kind, input key, runner, checker, checker wants built object)
COMMANDS = {
    "cat property": ("functor", run_property, None),
    "cat decide": ("functor", run_decide, check_decide),
    "cat idempotent": ("functor", run_idempotent, check_idempotent),
    "cat coidentifier": ("functor", run_coidentifier, check_coidentifier),
    "cat adjunction": ("adjunction", run_adjunction, check_adjunction),
    "cat triple": ("triple", run_triple, check_triple),
    "ring-ext": ("algebra_map", run_ring_ext, check_ring_ext),
    "coalg-map": ("coalgebra_map", run_coalg_map, check_coalg_map),
    "coring": ("coring", run_coring, check_coring),
    "bimodule": ("bimodule", run_bimodule, check_bimodule),
    "hopf verdict": ("bialgebra", run_hopf, check_hopf),
}
_BUILT_CHECKERS = {"ring-ext", "coalg-map", "coring", "bimodule", "hopf verdict"}


def input_doc(kind, obj):
    if kind == "functor":
        return functor_doc(obj)
    if kind == "adjunction":
        return adjunction_doc(obj)
    if kind == "triple":
        return {"left": adjunction_doc(obj.left), "right": adjunction_doc(obj.right)}
    if kind == "category":
        return category_doc(obj)
    return obj.to_dict()


def check_witness(command, inp, witness, opts, obj=None):
    """Re-verify ``witness``; returns ``{"checks": ..., "ok": bool}``."""
    checker = COMMANDS[command][2] if command in COMMANDS else None
    if checker is None or witness is None:
        return {"checks": {}, "ok": witness is None}
    if command in _BUILT_CHECKERS:
        if obj is None:
            obj = rebuild(command, inp, opts)
        checks = checker(inp, witness, opts, obj)
    else:
        checks = checker(inp, witness, opts)
    return {"checks": dict(sorted(checks.items())), "ok": all(checks.values())}


def rebuild(command, inp, opts):
    kind = COMMANDS[command][0]
    field = Field.parse(opts["field"]) if opts.get("field") else None
    return Loader(field).load_inline(kind, inp[kind])


def make_report(command, status, inp, opts, result, witness, verification):
    return {"schema_version": SCHEMA_VERSION, "kind": "report", "command": command, "status": status,
            "input": inp, "options": opts, "result": result, "witness": witness,
            "verification": verification}


def execute(command, obj, opts, sweedler_of=None):
    """Run ``command`` on a built input object and assemble its report."""
    kind, runner, _ = COMMANDS[command]
    if command == "coring":
        out = runner(obj, opts, sweedler_of)
    else:
        out = runner(obj, opts)
    if sweedler_of is not None:
        inp = {kind: input_doc(kind, obj), "sweedler_of": sweedler_of.to_dict()}
    else:
        inp = {kind: input_doc(kind, obj)}
    verification = check_witness(command, inp, out.witness, opts, obj)
    if out.status == HOLDS and not verification["ok"]:
        raise AssertionError("emitted witness does not re-verify")
    return make_report(command, out.status, inp, opts, out.result, out.witness, verification)


def verify_report(report):
    """Re-check a stored report: the witness through the verifier and the
    status by re-running the decision on the stored input."""
    command = report.get("command")
    if command == "cat validate":
        kind = report["options"]["kind"]
        if report["status"] == HOLDS:
            Loader().load_inline(kind, report["input"][kind])
        return {"witness_verified": True, "checks": {}, "status_reproduced": True,
                "witness_reproduced": True, "ok": True}
    if command not in COMMANDS:
        raise InputError("report command %r cannot be re-verified" % (command,), None, "/command")
    opts = report.get("options", {})
    inp = report["input"]
    obj = rebuild(command, inp, opts)
    witness = report.get("witness")
    if report["status"] == HOLDS and witness is None and COMMANDS[command][2] is not None:
        return {"witness_verified": False, "status_reproduced": False, "ok": False}
    w = check_witness(command, inp, witness, opts, obj)
    sweedler_of = None
    if "sweedler_of" in inp:
        sweedler_of = Loader(obj.field).load_inline("algebra_map", inp["sweedler_of"])
    again = execute(command, obj, opts, sweedler_of)
    out = {"witness_verified": w["ok"], "checks": w["checks"],
           "status_reproduced": again["status"] == report["status"],
           "witness_reproduced": again["witness"] == witness}
    out["ok"] = out["witness_verified"] and out["status_reproduced"]
    return out


# ---------------------------------------------------------------- click plumbing

def _field_option(f):
    return click.option("--field", "field", default=None, metavar="Q|Fp:<p>",
                        help="Override the field of algebraic inputs.")(f)


def _bound_option(f):
    return click.option("--bound", type=click.IntRange(min=1), default=None,
                        help="Search bound (morphism count, EM size or scan size).")(f)


def _witness_option(f):
    return click.option("--witness-out", type=click.Path(dir_okay=False), default=None,
                        help="Also write the witness block to this file.")(f)


def common(f):
    return _field_option(_bound_option(_witness_option(f)))


def _path(ctx, p):
    base = ctx.obj.get("base") if ctx.obj else None
    return os.path.join(base, p) if base and not os.path.isabs(p) else p


def emit(ctx, report, witness_out=None):
    if ctx.obj.get("capture"):
        return report
    click.echo(dumps(report), nl=False)
    if witness_out and report.get("witness") is not None:
        with open(witness_out, "w", encoding="utf-8") as fh:
            fh.write(dumps({"schema_version": SCHEMA_VERSION, "command": report["command"],
                            "status": report["status"], "witness": report["witness"]}))
    ctx.exit(EXIT[report["status"]])


def error_report(command, err, code_status="error"):
    return make_report(command, code_status, {}, {}, {"error": err}, None, {"checks": {}, "ok": False})


def guarded(command, ctx, fn, witness_out=None):
    """Run ``fn`` mapping input errors to exit 2 and exceeded bounds to 3."""
    try:
        report = fn()
    except StructureError as e:
        if command == "cat validate":
            report = make_report(command, FAILS, {}, {}, {"violations": [e.to_dict()]}, None,
                                 {"checks": {}, "ok": True})
        else:
            report = error_report(command, e.to_dict())
            click.echo(str(e), err=True)
    except InputError as e:
        report = error_report(command, e.to_dict())
        click.echo(str(e), err=True)
    except SearchBoundExceeded as e:
        report = error_report(command, {"message": str(e)}, INDETERMINATE)
        report["result"] = {"bound_exceeded": str(e)}
    return emit(ctx, report, witness_out)


def _opts(field, bound, **extra):
    d = {"field": field, "bound": bound if bound is not None else DEFAULT_BOUND}
    d.update(extra)
    return d


def _field(field):
    if field is None:
        return None
    try:
        return Field.parse(field)
    except ValueError as e:
        raise InputError(str(e), None, "")


def _load(ctx, kind, path, field):
    return Loader(_field(field)).load(kind, _path(ctx, path))


@click.group(invoke_without_command=True)
@click.option("--verify-only", "verify_only", type=click.Path(dir_okay=False), default=None,
              help="Re-check the witness of a previously emitted report.")
@click.pass_context
def main(ctx, verify_only):
    """Decide semiseparability questions with re-checkable witnesses."""
    ctx.ensure_object(dict)
    if verify_only:
        try:
            report = read_json(_path(ctx, verify_only))
            out = verify_report(report)
        except (InputError, KeyError, TypeError) as e:
            msg = e.to_dict() if isinstance(e, InputError) else {"message": "malformed report: %s" % e}
            click.echo(dumps({"verify_only": msg, "ok": False}), nl=False)
            ctx.exit(2)
        if ctx.obj.get("capture"):
            return out
        click.echo(dumps(out), nl=False)
        ctx.exit(0 if out["ok"] else 1)
    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())
        ctx.exit(2)


@main.group("cat")
def cat():
    """Functors between finite categories."""


@cat.command("validate")
@click.option("--category", "kind", flag_value="category")
@click.option("--functor", "kind", flag_value="functor")
@click.option("--adjunction", "kind", flag_value="adjunction")
@click.option("--triple", "kind", flag_value="triple")
@click.argument("file", type=click.Path(dir_okay=False))
@click.pass_context
def cat_validate(ctx, kind, file):
    """Validate FILE as a category, functor, adjunction or adjoint triple.

    Without a kind flag the ``kind`` field of the file decides."""
    def go():
        nonlocal kind
        if kind is None:
            kind = read_json(_path(ctx, file)).get("kind")
            if kind not in ("category", "functor", "adjunction", "triple"):
                raise InputError("cannot tell what to validate; pass --category, --functor, "
                                 "--adjunction or --triple", file, "/kind")
        obj = _load(ctx, kind, file, None)
        opts = {"kind": kind}
        return make_report("cat validate", HOLDS, {kind: input_doc(kind, obj)}, opts,
                           run_validate(obj, opts).result, None, {"checks": {}, "ok": True})
    return guarded("cat validate", ctx, go)


@cat.command("property")
@click.option("--functor", "file", required=True, type=click.Path(dir_okay=False))
@click.option("--property", "prop", required=True, type=click.Choice(FUNCTOR_PROPERTIES))
@common
@click.pass_context
def cat_property(ctx, file, prop, field, bound, witness_out):
    """Faithful, full, conservative, Maschke and dual Maschke checks."""
    def go():
        F = _load(ctx, "functor", file, None)
        return execute("cat property", F, _opts(None, bound, property=prop))
    return guarded("cat property", ctx, go, witness_out)


def _functor_command(name, help_text, extra=None):
    def cmd(ctx, file, field, bound, witness_out, **kw):
        def go():
            F = _load(ctx, "functor", file, None)
            return execute("cat " + name, F, _opts(None, bound, **kw))
        return guarded("cat " + name, ctx, go, witness_out)
    cmd.__doc__ = help_text
    cmd = click.pass_context(cmd)
    cmd = common(cmd)
    for opt in extra or []:
        cmd = opt(cmd)
    cmd = click.option("--functor", "file", required=True, type=click.Path(dir_okay=False))(cmd)
    return cat.command(name)(cmd)


_functor_command("decide", "Decide a retraction mode by exhaustive search.",
                 [click.option("--mode", default="semiseparable", type=click.Choice(MODES))])
_functor_command("idempotent", "The associated idempotent of a semiseparable functor.")
_functor_command("coidentifier", "The coidentifier factorization of a semiseparable functor.")


@cat.command("adjunction")
@click.option("--adjunction", "file", required=True, type=click.Path(dir_okay=False))
@click.option("--side", default="left", type=click.Choice(["left", "right"]))
@common
@click.pass_context
def cat_adjunction(ctx, file, side, field, bound, witness_out):
    """Unit (left) or counit (right) regularity, with the monad checks."""
    def go():
        adj = _load(ctx, "adjunction", file, None)
        return execute("cat adjunction", adj, _opts(None, bound, side=side))
    return guarded("cat adjunction", ctx, go, witness_out)


@cat.command("triple")
@click.option("--triple", "file", required=True, type=click.Path(dir_okay=False))
@common
@click.pass_context
def cat_triple(ctx, file, field, bound, witness_out):
    """Adjoint triple: the outer functors and the transported witnesses."""
    def go():
        T = _load(ctx, "triple", file, None)
        return execute("cat triple", T, _opts(None, bound))
    return guarded("cat triple", ctx, go, witness_out)


@main.command("ring-ext")
@click.option("--map", "file", required=True, type=click.Path(dir_okay=False))
@click.option("--mode", default="semiseparable", type=click.Choice(MODES))
@common
@click.pass_context
def ring_ext(ctx, file, mode, field, bound, witness_out):
    """Induction functor of an algebra map."""
    def go():
        phi = _load(ctx, "algebra_map", file, field)
        return execute("ring-ext", phi, _opts(field, bound, mode=mode))
    return guarded("ring-ext", ctx, go, witness_out)


@main.command("coalg-map")
@click.option("--map", "file", required=True, type=click.Path(dir_okay=False))
@click.option("--mode", default="semiseparable", type=click.Choice(MODES))
@common
@click.pass_context
def coalg_map(ctx, file, mode, field, bound, witness_out):
    """Coinduction functor of a coalgebra map."""
    def go():
        psi = _load(ctx, "coalgebra_map", file, field)
        return execute("coalg-map", psi, _opts(field, bound, mode=mode))
    return guarded("coalg-map", ctx, go, witness_out)


@main.command("coring")
@click.option("--coring", "file", default=None, type=click.Path(dir_okay=False))
@click.option("--sweedler", "map_file", default=None, type=click.Path(dir_okay=False),
              help="Use the Sweedler coring of this algebra map.")
@click.option("--mode", default="semicosplit", type=click.Choice(CORING_MODES))
@common
@click.pass_context
def coring(ctx, file, map_file, mode, field, bound, witness_out):
    """Semicosplit, cosplit and naturally full corings."""
    def go():
        if (file is None) == (map_file is None):
            raise InputError("give exactly one of --coring and --sweedler")
        if map_file is not None:
            phi = _load(ctx, "algebra_map", map_file, field)
            Cr, _ = sweedler_coring(phi)
            return execute("coring", Cr, _opts(field, bound, mode=mode), sweedler_of=phi)
        Cr = _load(ctx, "coring", file, field)
        return execute("coring", Cr, _opts(field, bound, mode=mode))
    return guarded("coring", ctx, go, witness_out)


@main.command("bimodule")
@click.option("--bimodule", "file", required=True, type=click.Path(dir_okay=False))
@click.option("--mode", default="semiseparable", type=click.Choice(["semiseparable", "separable"]))
@common
@click.pass_context
def bimodule(ctx, file, mode, field, bound, witness_out):
    """Semiseparability of the coinduction functor of a bimodule."""
    def go():
        M = _load(ctx, "bimodule", file, field)
        return execute("bimodule", M, _opts(field, bound, mode=mode))
    return guarded("bimodule", ctx, go, witness_out)


@main.group("hopf")
def hopf():
    """Bialgebras and right antipodes."""


@hopf.command("verdict")
@click.option("--bialgebra", "file", required=True, type=click.Path(dir_okay=False))
@common
@click.pass_context
def hopf_verdict(ctx, file, field, bound, witness_out):
    """Semiseparability of the coinvariant functor."""
    def go():
        B = _load(ctx, "bialgebra", file, field)
        opts = _opts(field, None, scan_limit=bound if bound is not None else SCAN_LIMIT)
        opts.pop("bound")
        return execute("hopf verdict", B, opts)
    return guarded("hopf verdict", ctx, go, witness_out)


@hopf.command("build")
@click.option("--kind", required=True,
              type=click.Choice(["group_algebra", "monoid_bialgebra", "sweedler_h4", "grouplike_coalgebra"]))
@click.option("--elements", default=None, help="Comma separated element names, unit first.")
@click.option("--table", default=None, help="Multiplication table as JSON rows of indices.")
@click.option("--out", "out", required=True, type=click.Path(dir_okay=False))
@_field_option
@click.pass_context
def hopf_build(ctx, kind, elements, table, out, field):
    """Write a named structure file."""
    import json

    def go():
        F = _field(field) or QQ
        params = {}
        if kind in ("group_algebra", "monoid_bialgebra"):
            if not elements or not table:
                raise InputError("--elements and --table are required for %s" % kind)
            try:
                params = {"elements": elements.split(","), "table": json.loads(table)}
            except json.JSONDecodeError as e:
                raise InputError("table is not JSON: %s" % e.msg, None, "")
        elif kind == "grouplike_coalgebra":
            if not elements:
                raise InputError("--elements is required for grouplike_coalgebra")
            params = {"labels": elements.split(",")}
        try:
            X = build_named(kind, F, **params)
        except (ValueError, KeyError, TypeError, IndexError) as e:
            raise InputError(str(e))
        doc_kind = "bialgebra" if isinstance(X, Bialgebra) else "coalgebra"
        doc = with_header(doc_kind, X.to_dict())
        with open(_path(ctx, out), "w", encoding="utf-8") as fh:
            fh.write(dumps(doc))
        return make_report("hopf build", HOLDS, {"kind": kind, "params": params}, {"field": F.tag},
                           {"written": out, "kind": doc_kind}, None, {"checks": {}, "ok": True})
    return guarded("hopf build", ctx, go)


@main.command("schemas")
@click.option("--out", "out", required=True, type=click.Path(file_okay=False))
def schemas_cmd(out):
    """Export the JSON schemas."""
    for path in export(out):
        click.echo(path)


@main.group("corpus")
def corpus():
    """The bundled acceptance corpus."""


@corpus.command("run")
@click.option("--manifest", default=None, type=click.Path(dir_okay=False),
              help="Manifest file (default: the bundled corpus).")
@click.option("--out", "out", default=None, type=click.Path(file_okay=False),
              help="Directory for the per-case reports.")
@click.option("--budget", default=600.0, show_default=True, type=float,
              help="Wall-clock budget in seconds for the whole run.")
@click.option("--jobs", default=1, show_default=True, type=click.IntRange(min=1))
@click.pass_context
def corpus_run(ctx, manifest, out, budget, jobs):
    """Replay every case and compare statuses with the manifest."""
    from .corpus import bundled_manifest, run_manifest
    path = manifest or bundled_manifest()
    try:
        summary, reports = run_manifest(path, budget=budget, jobs=jobs)
    except InputError as e:
        click.echo(str(e), err=True)
        click.echo(dumps({"error": e.to_dict()}), nl=False)
        ctx.exit(2)
    if out:
        os.makedirs(out, exist_ok=True)
        for cid, rep in sorted(reports.items()):
            with open(os.path.join(out, "%s.json" % cid), "w", encoding="utf-8") as fh:
                fh.write(dumps(rep))
    if not summary["cases"]:
        click.echo("warning: the manifest has no cases", err=True)
    for c in summary["cases"]:
        if not c["ok"]:
            click.echo("case %s: expected %s, got %s%s" % (
                c["id"], c["expected"], c["status"], "" if c["verified"] else " (witness did not re-verify)"),
                err=True)
    click.echo(dumps(summary), nl=False)
    if summary["budget_exceeded"]:
        ctx.exit(3)
    ctx.exit(0 if summary["failed"] == 0 else 1)


@corpus.command("build")
@click.option("--out", "out", default=None, type=click.Path(file_okay=False),
              help="Target directory (default: the bundled corpus directory).")
def corpus_build(out):
    """Regenerate the fixture files and the manifest."""
    from .corpus import HERE, build
    for path in build(out or HERE):
        click.echo(path)


def invoke(args, base=None):
    """Run a command line in-process and return its report (no printing)."""
    try:
        rv = main.main(list(args), prog_name="semisep", standalone_mode=False,
                       obj={"capture": True, "base": base})
    except click.UsageError as e:
        return error_report(" ".join(args[:2]), {"message": e.format_message()})
    return rv


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
