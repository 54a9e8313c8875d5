"""Command-line front end.

Exit codes: 0 when the property holds, 1 when it fails or the verdict is
false, 2 for unusable input.  ``--json`` prints a report whose bytes depend
only on the inputs and the seed.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import __version__
from .constructions import (char_p_slp, decomposition_tensor, extension_decomposition,
                            monomial_ci)
from .core.fields import FieldSpec
from .core.ideals import MonomialIdeal
from .core.modules import (GradedModule, as_form, extend_module, hilbert_series,
                           module_from_ideal, tensor_module)
from .errors import InputError, NotSLP, NotTotallyOrdered, SLPError
from .formats import load_input, parse_ideal_file, render_diagram
from .harness import run_harness
from .lefschetz import (PowerRanks, cyclic_decomposition, decomposition_from_table,
                        find_slp_element, is_totally_ordered, rank_table, slp_check, wlp_check)
from .structure import (class_h_membership, extension_failure, extension_form,
                        is_almost_centered, is_symmetric, theorem_310_report)


class Outcome:
    def __init__(self, code: int, report: dict, text: str):
        self.code, self.report, self.text = code, report, text


def _ideal_json(ideal: MonomialIdeal) -> dict:
    return {"vars": ideal.num_vars, "gens": [list(g) for g in ideal.generators]}


def _pairs(decomp) -> list:
    return [[s.shift, s.length] for s in decomp]


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, default=str).encode()).hexdigest()


class Context:
    """Loaded inputs plus the report fields every command shares."""

    def __init__(self, args, paths):
        self.args = args
        self.field = FieldSpec(getattr(args, "char", 0) or 0)
        self.inputs = []
        self.modules = []
        for path in paths:
            try:
                obj = load_input(path, self.field)
            except OSError as exc:
                raise InputError(f"cannot read {path}: {exc.strerror}") from None
            if isinstance(obj, MonomialIdeal):
                self.inputs.append(_ideal_json(obj))
                self.modules.append(module_from_ideal(obj, self.field))
            else:
                self.inputs.append({"module_sha256": _digest(Path(path).read_text())})
                self.modules.append(obj)
        self.report = {
            "command": args.command,
            "version": __version__,
            "field": str(self.field),
            "inputs": self.inputs,
            "seed": getattr(args, "seed", None),
        }

    def finish(self, code: int, text: str, **fields) -> Outcome:
        self.report.update(fields)
        self.report["inputs_digest"] = _digest({"inputs": self.inputs, "argv": _stable_args(self.args)})
        return Outcome(code, self.report, text)

    def form_for(self, module: GradedModule, require_slp: bool = False):
        """(form, note) from --form or a seeded search; form None if none usable."""
        args = self.args
        if args.form:
            try:
                coeffs = [self.field.element(c) for c in args.form.split(",")]
            except (ValueError, ZeroDivisionError) as exc:
                raise InputError(f"bad --form: {exc}") from None
            form = as_form(coeffs, module)
            self.report["form"] = [str(c) for c in form.coefficients]
            self.report["form_source"] = "given"
            return form, None
        search = find_slp_element(module, trials=args.trials, seed=args.seed)
        self.report["search"] = {"trials": search.trials, "found": search.found}
        form = search.witness if search.found else (None if require_slp else search.best_form)
        self.report["form_source"] = "auto"
        self.report["form"] = [str(c) for c in form.coefficients] if form is not None else None
        note = None if search.found else (
            f"no strong Lefschetz element among {search.trials} sampled forms (not a proof)")
        return form, note


def _stable_args(args) -> dict:
    # file paths are left out: the inputs are hashed by content instead
    skip = {"json", "timings", "func", "input", "left", "right"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _fmt_form(form) -> str:
    return ",".join(str(c) for c in form.coefficients)


# ---------------------------------------------------------------- commands

def cmd_hilbert(args) -> Outcome:
    ctx = Context(args, [args.input])
    h = hilbert_series(ctx.modules[0])
    text = f"Hilbert series: {' '.join(map(str, h.coeffs))}\nsocle degree: {h.socle_degree}\n"
    return ctx.finish(0, text, hilbert=list(h.coeffs), socle_degree=h.socle_degree,
                      shift=h.shift, total_dim=h.total())


def cmd_decompose(args) -> Outcome:
    ctx = Context(args, [args.input])
    M = ctx.modules[0]
    form, note = ctx.form_for(M)
    decomp = cyclic_decomposition(M, form)
    order = is_totally_ordered(decomp)
    lines = [f"form: {_fmt_form(form)}", f"decomposition (shift, length): {decomp}",
             f"totally ordered: {'yes' if order else 'no'}"]
    if note:
        lines.append(note)
    witnesses = {"incomparable_pair": [list(x) for x in order.witness] if order.witness else None}
    return ctx.finish(0, "\n".join(lines) + "\n", decomposition=_pairs(decomp),
                      hilbert=list(M.dims), verdicts={"totally_ordered": order.holds},
                      witnesses=witnesses)


def _slp_outcome(ctx: Context, M: GradedModule, form, note, label="SLP") -> Outcome:
    if form is None:
        return ctx.finish(1, f"{label}: {note}\n", verdicts={"slp": None},
                          witnesses={"failure": None})
    v = slp_check(M, form)
    if v.holds:
        text = f"{label} holds for form {_fmt_form(form)}\n"
    else:
        a, d = v.failure
        text = (f"{label} fails for form {_fmt_form(form)}: l^{a} from degree {d} to {d + a} "
                f"has rank {v.rank}, full rank is {v.expected}\n")
    if note:
        text += note + "\n"
    return ctx.finish(0 if v.holds else 1, text, hilbert=list(M.dims),
                      verdicts={"slp": v.holds},
                      witnesses={"failure": {"a": v.failure[0], "d": v.failure[1], "rank": v.rank,
                                             "full_rank": v.expected} if v.failure else None})


def cmd_slp(args) -> Outcome:
    ctx = Context(args, [args.input])
    M = ctx.modules[0]
    form, note = ctx.form_for(M, require_slp=True)
    return _slp_outcome(ctx, M, form, note)


def cmd_char_p(args) -> Outcome:
    args.char = args.p
    return cmd_slp(args)


def cmd_wlp(args) -> Outcome:
    ctx = Context(args, [args.input])
    M = ctx.modules[0]
    form, _ = ctx.form_for(M)
    ok = wlp_check(M, form)
    text = f"WLP {'holds' if ok else 'fails'} for form {_fmt_form(form)}\n"
    return ctx.finish(0 if ok else 1, text, verdicts={"wlp": ok}, hilbert=list(M.dims))


def cmd_class_h(args) -> Outcome:
    ctx = Context(args, [args.input])
    h = hilbert_series(ctx.modules[0])
    v = class_h_membership(h)
    text = (f"Hilbert series {' '.join(map(str, h.coeffs))}: "
            f"{'in' if v.member else 'not in'} class H (chain: {v.chain.value})\n")
    if not v.member:
        text += f"first chain breaks at i={v.first_violation}, second at i={v.second_violation}\n"
    return ctx.finish(0 if v.member else 1, text, hilbert=list(h.coeffs),
                      verdicts={"class_h": v.member, "symmetric": is_symmetric(h)},
                      witnesses={"chain": v.chain.value, "first_violation": v.first_violation,
                                 "second_violation": v.second_violation})


def _slp_pair(ctx: Context, M: GradedModule):
    form, note = ctx.form_for(M, require_slp=True)
    if form is None:
        raise NotSLP(note)
    v = slp_check(M, form)
    if not v.holds:
        raise NotSLP(f"form {_fmt_form(form)} is not a strong Lefschetz element "
                     f"(fails at a={v.failure[0]}, d={v.failure[1]})")
    return form


def cmd_almost_centered(args) -> Outcome:
    ctx = Context(args, [args.input])
    M = ctx.modules[0]
    form = _slp_pair(ctx, M)
    decomp = cyclic_decomposition(M, form)
    ac = is_almost_centered(decomp)
    text = f"decomposition {decomp} is {'' if ac else 'not '}almost centered\n"
    if ac.witness:
        a, b = ac.witness
        text += f"centers {a.center} of {tuple(a)} and {b.center} of {tuple(b)} differ by more than 1\n"
    return ctx.finish(0 if ac else 1, text, decomposition=_pairs(decomp),
                      verdicts={"almost_centered": ac.holds},
                      witnesses={"pair": [list(x) for x in ac.witness] if ac.witness else None})


def cmd_diagram(args) -> Outcome:
    ctx = Context(args, [args.input])
    M = ctx.modules[0]
    form, note = ctx.form_for(M)
    var = "l"
    if args.m:
        form = extension_form(M, form)
        M = extend_module(M, args.m)
        var = "z"
    decomp = cyclic_decomposition(M, form)
    text = render_diagram(decomp, hilbert_series(M), var=var)
    if note:
        text += note + "\n"
    return ctx.finish(0, text, diagram=text, decomposition=_pairs(decomp), hilbert=list(M.dims))


def cmd_extend(args) -> Outcome:
    ctx = Context(args, [args.input])
    M = ctx.modules[0]
    form, note = ctx.form_for(M)
    E = extend_module(M, args.m)
    ext_form = as_form(extension_form(M, form), E)
    pr = PowerRanks(E, ext_form)
    v = slp_check(E, pr)
    decomp = decomposition_from_table(rank_table(E, pr))
    predicted = extension_decomposition(cyclic_decomposition(M, form), args.m)
    lines = [f"M (x) k[y]/(y^{args.m}): Hilbert series {' '.join(map(str, E.dims))}",
             f"form l+y: {_fmt_form(ext_form)}", f"decomposition: {decomp}",
             f"formula prediction agrees: {'yes' if predicted == decomp else 'no'}",
             f"SLP {'holds' if v.holds else 'fails'}" +
             ("" if v.holds else f" at a={v.failure[0]}, d={v.failure[1]}")]
    if note:
        lines.append(note)
    return ctx.finish(0 if v.holds else 1, "\n".join(lines) + "\n", hilbert=list(E.dims),
                      decomposition=_pairs(decomp), m=args.m,
                      verdicts={"slp": v.holds, "formula_agrees": predicted == decomp},
                      witnesses={"failure": list(v.failure) if v.failure else None})


def cmd_tensor(args) -> Outcome:
    ctx = Context(args, [args.left, args.right])
    A, B = ctx.modules
    if args.form:
        T = tensor_module(A, B)
        form, _ = ctx.form_for(T)
        fa = as_form(form.coefficients[:A.num_vars], A)
        fb = as_form(form.coefficients[A.num_vars:], B)
    else:
        fa = find_slp_element(A, trials=args.trials, seed=args.seed)
        fb = find_slp_element(B, trials=args.trials, seed=args.seed)
        fa = fa.witness or fa.best_form
        fb = fb.witness or fb.best_form
        T = tensor_module(A, B)
        form = as_form(fa.coefficients + fb.coefficients, T)
        ctx.report["form"] = [str(c) for c in form.coefficients]
        ctx.report["form_source"] = "sum of factor witnesses"
    pr = PowerRanks(T, form)
    v = slp_check(T, pr)
    decomp = decomposition_from_table(rank_table(T, pr))
    plan = decomposition_tensor(cyclic_decomposition(A, fa), cyclic_decomposition(B, fb))
    order = is_totally_ordered(decomp)
    lines = [f"tensor Hilbert series: {' '.join(map(str, T.dims))}",
             f"form: {_fmt_form(form)}", f"decomposition: {decomp}",
             f"formula prediction agrees: {'yes' if plan.result == decomp else 'no'}",
             f"SLP {'holds' if v.holds else 'fails'}" +
             ("" if v.holds else f" at a={v.failure[0]}, d={v.failure[1]}")]
    if order.witness:
        lines.append(f"incomparable pair: {tuple(order.witness[0])}, {tuple(order.witness[1])}")
    return ctx.finish(0 if v.holds else 1, "\n".join(lines) + "\n", hilbert=list(T.dims),
                      decomposition=_pairs(decomp),
                      verdicts={"slp": v.holds, "formula_agrees": plan.result == decomp,
                                "symmetric": is_symmetric(hilbert_series(T))},
                      witnesses={"failure": list(v.failure) if v.failure else None,
                                 "incomparable_pair": [list(x) for x in order.witness]
                                 if order.witness else None})


def cmd_minimal_failing_m(args) -> Outcome:
    ctx = Context(args, [args.input])
    M = ctx.modules[0]
    form = _slp_pair(ctx, M)
    m_max = args.m_max if args.m_max is not None else M.socle_degree + 2
    found = extension_failure(M, form, m_max)
    if found is None:
        text = f"l+y is a strong Lefschetz element for every m in 1..{m_max}\n"
    else:
        m, a, d = found
        text = f"minimal failing m = {m} (l+y to the power {a} from degree {d} to {d + a})\n"
    return ctx.finish(0 if found is None else 1, text, m_max=m_max,
                      verdicts={"extensions_all_pass": found is None},
                      witnesses={"failure": {"m": found[0], "a": found[1], "d": found[2]}
                                 if found else None})


def cmd_theorem_310(args) -> Outcome:
    ctx = Context(args, [args.input])
    M = ctx.modules[0]
    form = _slp_pair(ctx, M)
    rep = theorem_310_report(M, form, args.m_max)
    triple = (rep.in_h, rep.almost_centered, rep.extensions_all_pass)
    lines = [f"(i)   Hilbert series in class H: {rep.in_h}",
             f"(ii)  l+y Lefschetz for m = 1..{rep.m_max}: {rep.extensions_all_pass}",
             f"(iii) decomposition almost centered: {rep.almost_centered}",
             f"consistent: {rep.consistent}"]
    if rep.extension_failure:
        m, a, d = rep.extension_failure
        lines.append(f"failing extension: m={m}, a={a}, d={d}")
    code = 0 if rep.consistent and all(triple) else 1
    return ctx.finish(code, "\n".join(lines) + "\n", decomposition=_pairs(rep.decomposition),
                      hilbert=list(M.dims), m_max=rep.m_max,
                      verdicts={"class_h": rep.in_h, "almost_centered": rep.almost_centered,
                                "extensions_all_pass": rep.extensions_all_pass,
                                "consistent": rep.consistent},
                      witnesses={"failure": {"m": rep.extension_failure[0], "a": rep.extension_failure[1],
                                             "d": rep.extension_failure[2]}
                                 if rep.extension_failure else None,
                                 "center_pair": [list(x) for x in rep.center_witness]
                                 if rep.center_witness else None,
                                 "class_h_violations": [rep.class_h.first_violation,
                                                        rep.class_h.second_violation]})


def cmd_monomial_ci(args) -> Outcome:
    try:
        exps = [int(x) for x in args.exps.split(",")]
    except ValueError:
        raise InputError(f"bad --exps {args.exps!r}") from None
    ideal = monomial_ci(exps)
    field = FieldSpec(args.char)
    M = module_from_ideal(ideal, field)
    form = as_form((1,) * M.num_vars, M)
    v = slp_check(M, form)
    report = {"command": args.command, "version": __version__, "field": str(field),
              "inputs": [_ideal_json(ideal)], "seed": None, "hilbert": list(M.dims),
              "form": [str(c) for c in form.coefficients], "verdicts": {"slp": v.holds},
              "witnesses": {"failure": list(v.failure) if v.failure else None},
              "inputs_digest": _digest({"exps": exps, "char": args.char})}
    text = (f"ideal {ideal}\nHilbert series: {' '.join(map(str, M.dims))}\n"
            f"SLP with the all-ones form: {'holds' if v.holds else 'fails'}\n")
    return Outcome(0 if v.holds else 1, report, text)


def cmd_harness(args) -> Outcome:
    inject = [parse_ideal_file(p) for p in (args.inject or [])]
    report = run_harness(seed=args.seed, trials=args.trials, max_vars=args.max_vars,
                         max_socle=args.max_socle, inject=inject)
    lines = [f"instances: {report['instances']} (attempts {report['attempts']}, "
             f"skipped without witness {report['skipped_no_witness']})"]
    width = max(len(k) for k in report["properties"])
    for name, c in report["properties"].items():
        status = "ok" if c["checked"] == c["passed"] else "VIOLATED"
        lines.append(f"{name:<{width}}  {c['passed']:>5}/{c['checked']:<5} {status}")
    lines.append(f"violations: {len(report['violations'])}")
    return Outcome(0 if report["ok"] else 1, report, "\n".join(lines) + "\n")


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="slpkit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the structured report")
    common.add_argument("--timings", action="store_true",
                        help="add wall-clock timings to the report (breaks byte-identity)")
    field = argparse.ArgumentParser(add_help=False)
    field.add_argument("--char", type=int, default=0, help="0 for QQ, or a prime p for F_p")
    form = argparse.ArgumentParser(add_help=False)
    group = form.add_mutually_exclusive_group()
    group.add_argument("--form", help="comma-separated coefficients, e.g. 0,1 or 1/2,3")
    group.add_argument("--auto", action="store_true", help="search for a witness (default)")
    form.add_argument("--seed", type=int, default=0)
    form.add_argument("--trials", type=int, default=20)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, parents, help_):
        p = sub.add_parser(name, parents=parents, help=help_)
        p.set_defaults(func=func)
        return p

    add("hilbert", cmd_hilbert, [common, field], "Hilbert series").add_argument("input")
    add("decompose", cmd_decompose, [common, field, form], "cyclic decomposition").add_argument("input")
    add("slp", cmd_slp, [common, field, form], "strong Lefschetz check").add_argument("input")
    add("wlp", cmd_wlp, [common, field, form], "weak Lefschetz check").add_argument("input")
    add("class-h", cmd_class_h, [common, field], "class H membership").add_argument("input")
    add("almost-centered", cmd_almost_centered, [common, field, form],
        "almost-centered check").add_argument("input")
    p = add("diagram", cmd_diagram, [common, field, form], "decomposition diagram")
    p.add_argument("input")
    p.add_argument("--m", type=int, default=0, help="draw M (x) k[y]/(y^m) under l+y instead")
    p = add("tensor", cmd_tensor, [common, field, form], "tensor product of two inputs")
    p.add_argument("left")
    p.add_argument("right")
    p = add("extend", cmd_extend, [common, field, form], "M (x) k[y]/(y^m)")
    p.add_argument("input")
    p.add_argument("--m", type=int, required=True)
    p = add("minimal-failing-m", cmd_minimal_failing_m, [common, field, form],
            "smallest m whose extension fails")
    p.add_argument("input")
    p.add_argument("--m-max", type=int, default=None)
    p = add("theorem-310", cmd_theorem_310, [common, field, form],
            "class H / extension / almost-centered equivalence")
    p.add_argument("input")
    p.add_argument("--m-max", type=int, default=None)
    p = add("char-p", cmd_char_p, [common, form], "SLP over F_p")
    p.add_argument("input")
    p.add_argument("--p", type=int, required=True)
    p = add("monomial-ci", cmd_monomial_ci, [common, field], "monomial complete intersection")
    p.add_argument("--exps", required=True, help="comma-separated exponents")
    p = add("harness", cmd_harness, [common], "random-instance property harness")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--max-vars", type=int, default=3)
    p.add_argument("--max-socle", type=int, default=8)
    p.add_argument("--inject", action="append", help="ideal file to check first (repeatable)")
    return parser


def run_command(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        outcome = args.func(args)
    except (NotSLP, NotTotallyOrdered) as exc:
        err.write(f"slpkit: {exc}\n")
        return 1
    except InputError as exc:
        err.write(f"slpkit: {exc}\n")
        return 2
    except (SLPError, ValueError) as exc:
        err.write(f"slpkit: {exc}\n")
        return 2
    if args.json:
        report = dict(outcome.report)
        if args.timings:
            report["timings"] = {"seconds": round(time.perf_counter() - start, 6)}
        out.write(json.dumps(report, indent=2, sort_keys=True, default=str) + "\n")
    else:
        out.write(outcome.text)
    return outcome.code


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
