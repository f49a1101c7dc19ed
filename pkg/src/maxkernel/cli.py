"""Command-line front end: ``maxkernel <subcommand> [flags]``.

Exit status: 0 all checks pass, 1 counterexample found, 2 usage or
configuration error, 3 scan budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field as dc_field
from typing import Callable

from . import _core, codes, linpoly, trinomial as tr
from .errors import BudgetExceeded, MaxKernelError, UnknownTarget
from .gf import Field, field_new

SCHEMA = "maxkernel/1"

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class Report:
    checked: int = 0
    counterexamples: list = dc_field(default_factory=list)
    message: str = ""
    details: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


# ---------------------------------------------------------------------------
# helpers


def _field(cfg) -> Field:
    return field_new(cfg.p, cfg.h, cfg.n, cfg.s)


def _config(cfg) -> dict:
    # worker count lives under "runtime" with the timing: it must not change payload bytes
    return {"p": cfg.p, "h": cfg.h, "n": cfg.n, "s": cfg.s, "d": cfg.d,
            "budget": cfg.budget, "seed": cfg.seed, "format": cfg.format}


def _repro(cfg, target: str, F: Field, a: int, b: int) -> str:
    return (f"maxkernel verify {target} --p {cfg.p} --h {cfg.h} --n {cfg.n} --s {cfg.s} "
            f"--d {cfg.d} --a {F.element_to_hex(a)} --b {F.element_to_hex(b)}")


def _suite_repro(cfg) -> str:
    """Command line rerunning a seeded suite."""
    line = (f"maxkernel verify {cfg.target} --p {cfg.p} --h {cfg.h} --n {cfg.n} --s {cfg.s} "
            f"--d {cfg.d} --seed {cfg.seed}")
    return line + (f" --sample {cfg.sample}" if cfg.sample else "")


def _need_d(cfg, default: int | None = None) -> int:
    if cfg.d is None:
        if default is None:
            raise argparse.ArgumentTypeError("--d is required for this command")
        cfg.d = default
    return cfg.d


def _parse_element(F: Field, text: str | None) -> int | None:
    return None if text is None else F.element_from_hex(text)


def _pairs(cfg, F: Field):
    """Pairs to scan: the single --a/--b pair, a seeded sample, or all of them."""
    a, b = _parse_element(F, cfg.a), _parse_element(F, cfg.b)
    if a is not None or b is not None:
        return [(a or 0, b or 0)], "single"
    if cfg.sample:
        rng = random.Random(cfg.seed)
        return [(rng.randrange(F.order), rng.randrange(F.order)) for _ in range(cfg.sample)], "sample"
    required = F.order * F.order
    if required > cfg.budget:
        raise BudgetExceeded(required, cfg.budget)
    return None, "exhaustive"


def _oracle(F: Field, d: int, pairs):
    """kernel_dim(a x + b x^σ - x^{σ^d}) for each pair, or for all pairs if None."""
    ctx = F.ctx
    plan = ctx.plan(F, d)
    if pairs is None:
        for a in range(F.order):
            for b, v in enumerate(_core.impl.trinomial_nullities(ctx, plan, a)):
                yield a, b, int(v) // F.h
    else:
        avals = [a for a, _ in pairs]
        bvals = [b for _, b in pairs]
        for (a, b), v in zip(pairs, _core.impl.pair_nullities(ctx, plan, avals, bvals)):
            yield a, b, int(v) // F.h


def _pair_suite(cfg, target: str, predicate: Callable, describe: str) -> Report:
    """Run ``predicate(F, d, a, b, kdim) -> bool`` over the configured pairs."""
    F = _field(cfg)
    d = cfg.d
    pairs, mode = _pairs(cfg, F)
    rep = Report(details={"mode": mode})
    maxk = 0
    for a, b, kd in _oracle(F, d, pairs):
        rep.checked += 1
        maxk += kd == d
        if not predicate(F, d, a, b, kd):
            rep.counterexamples.append({"a": F.element_to_hex(a), "b": F.element_to_hex(b),
                                        "kernel_dim": kd,
                                        "repro": _repro(cfg, target, F, a, b)})
    rep.details["max_kernel_instances"] = maxk
    rep.message = f"{rep.checked} instances, " + (describe if rep.ok else "COUNTEREXAMPLE found")
    return rep


# ---------------------------------------------------------------------------
# verify targets


def _v_companion(cfg) -> Report:
    _need_d(cfg)

    def pred(F, d, a, b, kd):
        f = linpoly.trinomial(F, a, b, d)
        return linpoly.has_max_kernel_companion(f) == linpoly.has_max_kernel_vector(f) == (kd == d)
    return _pair_suite(cfg, "companion", pred, "equivalence holds")


def _v_cor34(cfg) -> Report:
    _need_d(cfg)

    def pred(F, d, a, b, kd):
        return linpoly.first_column_criterion(F, a, b, d) == (kd == d)
    return _pair_suite(cfg, "cor34", pred, "first-column criterion matches kernel dimension")


def _verdict_suite(cfg, target, classify, describe) -> Report:
    def pred(F, d, a, b, kd):
        return classify(tr.TrinomialInstance(F, d, a, b)).is_max == (kd == d)
    return _pair_suite(cfg, target, pred, describe)


def _v_main_system(cfg) -> Report:
    _need_d(cfg)
    return _verdict_suite(cfg, "main-system", tr.main_system_check, "system matches kernel dimension")


def _v_mcg_abc(cfg) -> Report:
    d = _need_d(cfg)
    if cfg.n > d * (d - 1) + 1:
        raise tr.RangeError("cases (a)-(c) need n <= d(d-1)+1")
    return _verdict_suite(cfg, "mcg-abc", tr.classify, "cases (a)-(c) match kernel dimension")


def _v_d3(cfg) -> Report:
    cfg.d = 3
    return _verdict_suite(cfg, "d3", lambda i: tr.d3_characterize(i.field, i.a, i.b),
                          "d=3 characterization matches kernel dimension")


def _v_d4(cfg) -> Report:
    cfg.d = 4
    return _verdict_suite(cfg, "d4", lambda i: tr.d4_characterize(i.field, i.a, i.b),
                          "d=4 characterization matches kernel dimension")


def _v_neccond(cfg) -> Report:
    _need_d(cfg)

    def pred(F, d, a, b, kd):
        return kd != d or tr.necessary_conditions(tr.TrinomialInstance(F, d, a, b))
    return _pair_suite(cfg, "neccond", pred, "necessary conditions hold on every maximum-kernel pair")


def _v_gow(cfg) -> Report:
    """Random σ-polynomials of σ-degree d: kernel bound and norm condition."""
    d = _need_d(cfg)
    F = _field(cfg)
    if d > F.n - 1:
        raise tr.RangeError("the bound needs σ-degree <= n-1")
    rng = random.Random(cfg.seed)
    rep = Report(details={"mode": "sample"})
    for _ in range(cfg.sample or 1000):
        coeffs = [F.random_element(rng) for _ in range(d)] + [F.random_nonzero(rng)]
        f = linpoly.SigmaPoly(F, tuple(coeffs))
        kd = linpoly.kernel_dim(f)
        rep.checked += 1
        if kd > d or (kd == d and not linpoly.gow_norm_condition(f)):
            rep.counterexamples.append({"coeffs": [F.element_to_hex(c) for c in coeffs],
                                        "kernel_dim": kd})
    rep.message = f"{rep.checked} instances, " + ("bound and norm condition hold" if rep.ok
                                                  else "COUNTEREXAMPLE found")
    return rep


def _v_even_family(cfg) -> Report:
    d = _need_d(cfg, 4)
    F = _field(cfg)
    tr.family_even(F, d, 1)  # field-level preconditions before any enumeration
    if F.order - 1 > cfg.budget:
        raise BudgetExceeded(F.order - 1, cfg.budget)
    members = [a for a in F.nonzero() if F.norm(a, 1) == 1]
    if cfg.sample:
        members = sorted(random.Random(cfg.seed).sample(members, min(cfg.sample, len(members))))
    if len(members) > cfg.budget:
        raise BudgetExceeded(len(members), cfg.budget)
    insts = [tr.family_even(F, d, a) for a in members]
    ctx = F.ctx
    nul = _core.impl.pair_nullities(ctx, ctx.plan(F, d), [i.a for i in insts], [i.b for i in insts])
    rep = Report(checked=len(insts), details={"mode": "sample" if cfg.sample else "exhaustive"})
    for inst, v in zip(insts, nul):
        if int(v) // F.h != d:
            rep.counterexamples.append({"a": F.element_to_hex(inst.a), "b": F.element_to_hex(inst.b),
                                        "kernel_dim": int(v) // F.h,
                                        "repro": _repro(cfg, "even-family", F, inst.a, inst.b)})
    rep.message = f"{rep.checked} members, " + (f"all kernel dim {d}" if rep.ok
                                                 else "COUNTEREXAMPLE found")
    return rep


def _random_instances(cfg, F: Field, count: int):
    rng = random.Random(cfg.seed)
    for _ in range(count):
        yield F.random_element(rng), F.random_element(rng)


def _v_prop33(cfg) -> Report:
    d = _need_d(cfg)
    F = _field(cfg)
    rep = Report(details={"mode": "sample"})
    zeros = linpoly.m1_zero_indices(d)
    for a, b in _random_instances(cfg, F, cfg.sample or 200):
        M = linpoly.MEntryTable(F, a, b, d)
        ok = all(M(l, k) == linpoly.m_entry_small_k(F, a, b, d, l, k)
                 for l in range(2, d + 1) for k in range(-d, d))
        ok = ok and all(M(1, j) == 0 for j in zeros)
        rep.checked += 1
        if not ok:
            rep.counterexamples.append({"a": F.element_to_hex(a), "b": F.element_to_hex(b)})
    rep.message = f"{rep.checked} instances, " + ("entry table matches" if rep.ok
                                                  else "COUNTEREXAMPLE found")
    return rep


def _v_pascal(cfg) -> Report:
    """Closed-form coefficients against the recursion, and c = binom * z."""
    d = _need_d(cfg)
    F = _field(cfg)
    k = F.n - d + 1
    count = cfg.sample or 200
    rep = Report(details={"mode": "sample"})
    rng = random.Random(cfg.seed)
    expansion = binomial = skipped = 0
    for _ in range(count):
        a, b = F.random_element(rng), F.random_element(rng)
        jmax = max(1, min(d - 1, (k - 1) // d + 1))
        ok = all(linpoly.c_coeff_recursive(F, a, b, d, j, k)
                 == [linpoly.c_coeff_closed(F, a, b, d, j, t, k) for t in range(j + 1)]
                 and linpoly.expansion_holds(F, a, b, d, j, k)
                 for j in range(1, jmax + 1))
        expansion += 1
        rep.checked += 1
        if not ok:
            rep.counterexamples.append({"kind": "expansion", "a": F.element_to_hex(a),
                                        "b": F.element_to_hex(b)})
        a = F.random_nonzero(rng)
        b = tr.even_family_b(F, a, d)
        if k < d + 1 or not linpoly.commutation_holds(F, a, b, d):
            skipped += 1
            continue
        ok = True
        for j in range(1, jmax + 1):
            c = linpoly.c_coeff_recursive(F, a, b, d, j, k)
            for i in range(j + 1):
                z1 = linpoly.z_recursion(F, a, b, d, j, i, k, "a")
                z2 = linpoly.z_recursion(F, a, b, d, j, i, k, "b")
                ok &= z1 == z2 and c[i] == F.mul(F.scalar(linpoly.binom_mod_p(j, i, F.p)), z1)
        binomial += 1
        rep.checked += 1
        if not ok:
            rep.counterexamples.append({"kind": "binomial", "a": F.element_to_hex(a),
                                        "b": F.element_to_hex(b)})
    rep.details.update(expansion=expansion, binomial=binomial, skipped=skipped)
    rep.message = (f"{expansion} expansion and {binomial} binomial instances, "
                   + ("identities hold" if rep.ok else "COUNTEREXAMPLE found"))
    return rep


TARGETS: dict[str, Callable] = {
    "gow": _v_gow,
    "companion": _v_companion,
    "main-system": _v_main_system,
    "mcg-abc": _v_mcg_abc,
    "even-family": _v_even_family,
    "d3": _v_d3,
    "d4": _v_d4,
    "neccond": _v_neccond,
    "pascal": _v_pascal,
    "prop33": _v_prop33,
    "cor34": _v_cor34,
}


# ---------------------------------------------------------------------------
# subcommands; each returns (payload, exit code)


def cmd_verify(cfg):
    if cfg.target not in TARGETS:
        raise UnknownTarget(f"unknown target {cfg.target!r}; choose from {', '.join(TARGETS)}")
    rep = TARGETS[cfg.target](cfg)
    for ce in rep.counterexamples:
        ce.setdefault("repro", _suite_repro(cfg))
    result = {"target": cfg.target, "checked": rep.checked, "pass": rep.ok,
              "message": rep.message, "counterexamples": rep.counterexamples, **rep.details}
    return result, EXIT_OK if rep.ok else EXIT_COUNTEREXAMPLE


def cmd_enumerate(cfg):
    d = _need_d(cfg)
    F = _field(cfg)
    pairs = tr.max_kernel_pairs(F, d, budget=cfg.budget, workers=cfg.workers)
    return {"d": d, "count": len(pairs),
            "pairs": [[F.element_to_hex(a), F.element_to_hex(b)] for a, b in pairs]}, EXIT_OK


def cmd_census(cfg):
    d = _need_d(cfg)
    F = _field(cfg)
    census = codes.weight_census(F, d, budget=cfg.budget, workers=cfg.workers)
    summary = census.summary()
    return {"counts": {str(w): c for w, c in census.counts.items()},
            "total": census.total, "summary": summary}, \
        EXIT_COUNTEREXAMPLE if summary["agree"] is False else EXIT_OK


def _default_instance(cfg, F: Field) -> tr.TrinomialInstance:
    """--a/--b if given, else a canonical maximum-kernel trinomial."""
    d = cfg.d
    a, b = _parse_element(F, cfg.a), _parse_element(F, cfg.b)
    if a is not None and b is None:
        return tr.family_even(F, d, a)
    if a is not None:
        return tr.TrinomialInstance(F, d, a, b)
    try:
        return tr.family_even(F, d, 1)
    except tr.PreconditionFailed:
        pass
    pairs = tr.max_kernel_pairs(F, d, budget=cfg.budget)
    if not pairs:
        raise tr.RangeError("no maximum-kernel trinomial for these parameters")
    return tr.TrinomialInstance(F, d, *pairs[0])


def cmd_build_code(cfg):
    _need_d(cfg)
    F = _field(cfg)
    inst = _default_instance(cfg, F)
    if inst.kernel_dim() != inst.d:
        raise tr.RangeError("the trinomial does not have maximum kernel")
    V = codes.kernel_subspace(inst.poly)
    code = codes.build_orbit_code(V, certify=cfg.certify, budget=cfg.budget)
    out = code.to_dict()
    out.update(a=F.element_to_hex(inst.a), b=F.element_to_hex(inst.b), k=V.k)
    if cfg.s == 1:
        out["gap"] = codes.gap(codes.subspace_polynomial(V))
    return out, EXIT_OK


def cmd_quasi(cfg):
    _need_d(cfg)
    F = _field(cfg)
    inst = _default_instance(cfg, F)
    report = codes.quasi_subfield_check(inst.poly)
    out = report.to_dict()
    out.update(a=F.element_to_hex(inst.a), b=F.element_to_hex(inst.b))
    return out, EXIT_OK if report else EXIT_COUNTEREXAMPLE


def cmd_field_info(cfg):
    F = _field(cfg)
    info = F.to_dict()
    info.update(q=F.q, m=F.m, order=F.order, generator=F.element_to_hex(F.generator),
                backend=_core.BACKEND,
                cube_roots_of_unity=[F.element_to_hex(x) for x in F.cube_roots_of_unity()])
    return info, EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
    "census": cmd_census,
    "build-code": cmd_build_code,
    "quasi": cmd_quasi,
    "field-info": cmd_field_info,
}


# ---------------------------------------------------------------------------
# argument parsing and rendering


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("field and run configuration")
    g.add_argument("--p", type=int, default=2, help="characteristic")
    g.add_argument("--h", type=int, default=1, help="q = p^h")
    g.add_argument("--n", type=int, required=True, help="extension degree over F_q")
    g.add_argument("--s", type=int, default=1, help="σ = x^(q^s)")
    g.add_argument("--d", type=int, default=None, help="σ-degree of the trinomial")
    g.add_argument("--format", choices=("json", "csv", "text"), default="text")
    g.add_argument("--budget", type=int, default=tr.DEFAULT_BUDGET,
                   help="maximum number of kernel computations")
    g.add_argument("--seed", type=int, default=1)
    g.add_argument("--workers", type=int, default=1)
    g.add_argument("--out", default=None, help="write the payload here instead of stdout")

    parser = argparse.ArgumentParser(prog="maxkernel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("target", help=", ".join(TARGETS))
    v.add_argument("--sample", type=int, default=0, help="seeded random instances instead of a full scan")
    v.add_argument("--a", default=None, help="single instance: hex element a")
    v.add_argument("--b", default=None, help="single instance: hex element b")

    sub.add_parser("enumerate", parents=[common], help="list all maximum-kernel trinomials")
    sub.add_parser("census", parents=[common], help="weight distribution of <x, x^σ, x^σ^d>")
    for name, help_ in (("build-code", "cyclic orbit code from a trinomial kernel"),
                        ("quasi", "quasi-subfield polynomial check")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--a", default=None, help="hex element a")
        p.add_argument("--b", default=None, help="hex element b (default: the even-family b)")
        if name == "build-code":
            p.add_argument("--certify", action="store_true", help="compute the minimum distance")
    sub.add_parser("field-info", parents=[common], help="modulus, generator and backend")
    return parser


def _render_text(command: str, payload: dict) -> str:
    res = payload["result"]
    lines = [f"# {command} p={payload['config']['p']} h={payload['config']['h']} "
             f"n={payload['config']['n']} s={payload['config']['s']} d={payload['config']['d']}"]
    if command == "verify":
        lines.append(("PASS " if res["pass"] else "FAIL ") + res["message"])
        for ce in res["counterexamples"][:20]:
            lines.append("  counterexample: " + json.dumps(ce, sort_keys=True))
    elif command == "census":
        lines += [f"weight {w}: {c}" for w, c in res["counts"].items()]
        lines.append("summary: " + json.dumps(res["summary"], sort_keys=True))
    elif command == "enumerate":
        lines.append(f"{res['count']} maximum-kernel pairs")
        lines += [f"{a} {b}" for a, b in res["pairs"]]
    else:
        lines += [f"{k}: {json.dumps(v)}" for k, v in res.items()]
    return "\n".join(lines) + "\n"


def _render_csv(command: str, payload: dict) -> str:
    res = payload["result"]
    if command == "census":
        census_rows = ["weight,count"] + [f"{w},{c}" for w, c in res["counts"].items()]
        return "\n".join(census_rows) + "\n"
    if command == "enumerate":
        return "\n".join(["a,b"] + [f"{a},{b}" for a, b in res["pairs"]]) + "\n"
    return "\n".join(["key,value"] + [f"{k},{json.dumps(v)}" for k, v in res.items()
                                      if not isinstance(v, (list, dict))]) + "\n"


def render(command: str, payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        return _render_csv(command, payload)
    return _render_text(command, payload)


def run(argv=None) -> tuple[int, dict | None]:
    """Parse, execute and emit; returns (exit code, payload)."""
    parser = build_parser()
    cfg = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        result, code = COMMANDS[cfg.command](cfg)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET, None
    except (MaxKernelError, argparse.ArgumentTypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE, None
    payload = {"schema": SCHEMA, "command": cfg.command, "config": _config(cfg), "result": result,
               "runtime": {"seconds": round(time.perf_counter() - start, 3), "workers": cfg.workers}}
    text = render(cfg.command, payload, cfg.format)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
        if cfg.command == "census" and cfg.format == "csv":
            with open(cfg.out + ".summary.json", "w") as fh:
                json.dump(result["summary"], fh, sort_keys=True, indent=2)
    else:
        sys.stdout.write(text)
    return code, payload


def main(argv=None) -> int:
    return run(argv)[0]


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
