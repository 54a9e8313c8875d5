"""Seeded random-instance harness checking the structural theorems in bulk.

Every instance is an Artinian monomial quotient with a found Lefschetz
witness ``l``.  Each property below is evaluated on every instance it applies
to; a failure is recorded as a violation, never raised.
"""
from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from itertools import combinations

from . import __version__
from .constructions import decomposition_tensor, extension_decomposition
from .core.fields import FieldSpec
from .core.ideals import MonomialIdeal, quotient_basis
from .core.modules import (GradedModule, as_form, extend_module, hilbert_series,
                           module_from_ideal, tensor_module)
from .lefschetz import (CyclicDecomposition, PowerRanks, compare_summands, decomposition_from_table,
                        find_slp_element, is_totally_ordered, rank_table, slp_check, summand_module)
from .structure import (center_profile, class_h_membership, extension_form, is_almost_centered,
                        is_symmetric)

PROPERTIES = (
    "hilbert_reconstruction",
    "order_iff_slp",
    "sub_multisets_slp",
    "witness_independence",
    "equivalence_agreement",
    "failing_m_exists",
    "centered_extensions",
    "center_window",
    "class_h_chains",
    "symmetric_iff_centers",
    "no_late_failure",
    "extension_oracle",
    "tensor_oracle",
    "symmetric_times_centered",
    "symmetric_tensor",
)


def random_ideal(rng: random.Random, max_vars: int, max_socle: int) -> MonomialIdeal:
    """Pure powers of every variable plus a few random extra generators.

    The number of variables is drawn once; exponents and extra generators
    are redrawn until the quotient has socle degree <= max_socle.
    """
    n = rng.randint(1, max_vars)
    while True:
        powers = [rng.randint(1, max_socle + 1) for _ in range(n)]
        gens = [tuple(a if k == i else 0 for k in range(n)) for i, a in enumerate(powers)]
        for _ in range(rng.randint(0, 2 * n)):
            g = tuple(rng.randint(0, a - 1) for a in powers)
            if sum(g) > 0:
                gens.append(g)
        ideal = MonomialIdeal(n, gens)
        if len(quotient_basis(ideal)) - 1 <= max_socle:
            return ideal


@dataclass
class Tally:
    checked: dict = field(default_factory=lambda: {k: 0 for k in PROPERTIES})
    passed: dict = field(default_factory=lambda: {k: 0 for k in PROPERTIES})
    violations: list = field(default_factory=list)

    def record(self, name: str, ok: bool, **detail) -> bool:
        self.checked[name] += 1
        if ok:
            self.passed[name] += 1
        else:
            self.violations.append({"property": name, **detail})
        return ok


@dataclass
class Instance:
    ideal: MonomialIdeal
    module: GradedModule
    form: tuple
    decomp: CyclicDecomposition
    almost_centered: bool


def _ideal_json(ideal: MonomialIdeal) -> dict:
    return {"vars": ideal.num_vars, "gens": [list(g) for g in ideal.generators]}


def _ext_data(module, form, m):
    """SLP verdict and module-level decomposition of M (x) k[y]/(y^m) under l + y."""
    ext = extend_module(module, m)
    pr = PowerRanks(ext, extension_form(module, form))
    verdict = slp_check(ext, pr)
    return verdict, pr, ext


def check_instance(inst: Instance, idx: int, tally: Tally, stats: dict, seed: int) -> None:
    M, l, decomp = inst.module, inst.form, inst.decomp
    h = hilbert_series(M)
    p = M.socle_degree
    tag = {"instance": idx, "ideal": _ideal_json(inst.ideal), "form": list(l)}

    tally.record("hilbert_reconstruction", decomp.cover_counts(p) == M.dims, **tag)

    # slp verdict vs total order, on the witness and every coordinate form x_i
    forms = [l] + [tuple(int(k == i) for k in range(M.num_vars)) for i in range(M.num_vars)]
    for f in forms:
        pr = PowerRanks(M, f)
        holds = slp_check(M, pr).holds
        ordered = is_totally_ordered(decomposition_from_table(rank_table(M, pr))).holds
        if f is not l and not holds:
            stats["non_slp_forms"] += 1
        tally.record("order_iff_slp", holds == ordered, form_checked=list(f), **tag)

    for a, b in combinations(decomp.summands, 2):
        sub = summand_module([a, b], M.field)
        tally.record("sub_multisets_slp", slp_check(sub, (1,)).holds,
                     pair=[list(a), list(b)], **tag)

    # a second, random witness must give the same decomposition
    rng = random.Random(seed * 104729 + idx)
    for _ in range(5):
        cand = tuple(rng.randint(-10, 10) for _ in range(M.num_vars))
        if any(cand) and cand != tuple(l) and slp_check(M, cand).holds:
            same = decomposition_from_table(rank_table(M, cand)) == decomp
            tally.record("witness_independence", same, other_form=list(cand), **tag)
            break

    ac = inst.almost_centered
    in_h = class_h_membership(h).member
    if class_h_membership(h, from_zero=False).member != in_h:
        stats["class_h_index_one_disagreements"] += 1
    m_max = p + 2
    failing = None
    for m in range(1, max(m_max + 2, 6) + 1):
        need_decomp = m <= 6 or (ac and m <= m_max)
        late = ac and m > m_max
        if m > m_max and not (need_decomp or late):
            break
        verdict, pr, ext = _ext_data(M, l, m)
        if late:
            # the default bound p + 2 should not hide a failure just past it
            tally.record("no_late_failure", verdict.holds, m=m, **tag)
        if m <= m_max and not verdict.holds and failing is None:
            failing = (m,) + verdict.failure
        if need_decomp:
            ext_decomp = decomposition_from_table(rank_table(ext, pr))
            if m <= 6:
                tally.record("extension_oracle", extension_decomposition(decomp, m) == ext_decomp,
                             m=m, **tag)
            if ac and m <= m_max:
                tally.record("centered_extensions", is_almost_centered(ext_decomp).holds, m=m, **tag)
        if failing is not None and m >= 6:
            break
    ext_pass = failing is None
    tally.record("equivalence_agreement", in_h == ac == ext_pass,
                 verdicts=[in_h, ac, ext_pass], failure=failing, **tag)
    if not ac:
        tally.record("failing_m_exists", failing is not None, **tag)
        if failing is not None:
            predicted = min(min(v.left_gap, v.right_gap) + 2
                            for a, b in combinations(decomp.summands, 2)
                            for v in [compare_summands(a, b)]
                            if v.comparable and abs(v.left_gap - v.right_gap) >= 2)
            stats["failing_m_observed"].append(failing[0])
            stats["failing_m_closed_form_agree"] += int(predicted == failing[0])
    else:
        stats["almost_centered"] += 1
        tally.record("center_window", center_profile(decomp, p).in_window, **tag)
        ok = all((h[i - 1] <= h[p - i] <= h[i]) or (h[p - i + 1] <= h[i] <= h[p - i])
                 for i in range(0, p // 2 + 1))
        tally.record("class_h_chains", ok, **tag)
    centers_all = all(s.center == p + 1 for s in decomp)
    tally.record("symmetric_iff_centers", is_symmetric(h) == centers_all, **tag)


def check_pair(a: Instance, b: Instance, idx: tuple, tally: Tally) -> None:
    T = tensor_module(a.module, b.module)
    form = tuple(a.form) + tuple(b.form)
    pr = PowerRanks(T, form)
    module_decomp = decomposition_from_table(rank_table(T, pr))
    plan = decomposition_tensor(a.decomp, b.decomp)
    tag = {"pair": list(idx), "ideals": [_ideal_json(a.ideal), _ideal_json(b.ideal)]}
    tally.record("tensor_oracle", plan.result == module_decomp, **tag)
    slp = slp_check(T, pr).holds
    sym_a = is_symmetric(hilbert_series(a.module))
    sym_b = is_symmetric(hilbert_series(b.module))
    if (sym_a and b.almost_centered) or (sym_b and a.almost_centered):
        tally.record("symmetric_times_centered", slp and is_almost_centered(module_decomp).holds, **tag)
    if sym_a and sym_b:
        tally.record("symmetric_tensor", slp and is_symmetric(hilbert_series(T)), **tag)


def run_harness(seed: int = 1, trials: int = 200, max_vars: int = 3, max_socle: int = 8,
                inject: list[MonomialIdeal] | None = None, max_attempts: int | None = None,
                tensor_cap: int = 400, search_trials: int = 10) -> dict:
    """Collect ``trials`` SLP instances and evaluate every property on them.

    Ideals in ``inject`` are used first, before random draws.  Instances with
    no witness among ``search_trials`` sampled forms are skipped and counted.
    Tensor properties run on consecutive instance pairs whose product has
    dimension at most ``tensor_cap``.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    field_ = FieldSpec(0)
    max_attempts = max_attempts or 20 * trials
    tally = Tally()
    stats = {"non_slp_forms": 0, "almost_centered": 0, "failing_m_observed": [],
             "failing_m_closed_form_agree": 0, "class_h_index_one_disagreements": 0}
    instances: list[Instance] = []
    attempts = skipped = 0
    queue = list(inject or [])
    while len(instances) < trials and attempts < max_attempts:
        attempts += 1
        ideal = queue.pop(0) if queue else random_ideal(rng, max_vars, max_socle)
        M = module_from_ideal(ideal, field_)
        search = find_slp_element(M, trials=search_trials, seed=seed * 1000003 + attempts)
        if not search.found:
            skipped += 1
            continue
        form = tuple(search.witness.coefficients)
        pr = PowerRanks(M, form)
        decomp = decomposition_from_table(rank_table(M, pr))
        inst = Instance(ideal, M, form, decomp, is_almost_centered(decomp).holds)
        check_instance(inst, len(instances), tally, stats, seed)
        if instances:
            prev = instances[-1]
            if prev.module.total_dim * M.total_dim <= tensor_cap:
                check_pair(prev, inst, (len(instances) - 1, len(instances)), tally)
        instances.append(inst)
    params = {"seed": seed, "trials": trials, "max_vars": max_vars, "max_socle": max_socle,
              "inject": [_ideal_json(i) for i in (inject or [])], "tensor_cap": tensor_cap,
              "search_trials": search_trials}
    digest = hashlib.sha256(json.dumps(params, sort_keys=True).encode()).hexdigest()
    observed = stats.pop("failing_m_observed")
    return {
        "command": "harness",
        "version": __version__,
        "seed": seed,
        "inputs_digest": digest,
        "params": params,
        "instances": len(instances),
        "attempts": attempts,
        "skipped_no_witness": skipped,
        "properties": {k: {"checked": tally.checked[k], "passed": tally.passed[k]} for k in PROPERTIES},
        "violations": tally.violations,
        "stats": {**stats, "failing_m_histogram": {str(k): observed.count(k) for k in sorted(set(observed))},
                  "not_almost_centered": len(observed)},
        "ok": not tally.violations and len(instances) == trials,
    }
