"""Command-line entry point."""

from __future__ import annotations

import argparse
import sys

from .algebra import NonHomogeneousError, QQ, format_element, parse_field
from .families import DegenerateFamilyError, FamilySpec, build_extremal_ideal, closed_forms, sample_family
from .gin import GinInstabilityError, gin_of, is_borel_fixed
from .groebner import Submodule
from .homology import cohomology_profile, ends_and_rk, hdeg, minimal_free_resolution
from .invariants import (
    FilterRegularError,
    bdeg_of_borel,
    cohomology_summary,
    cm_deviation_h,
    invariants,
)
from .parser import Command, ParseError, parse_input, parse_polynomial
from .report import (
    betti_rows,
    generators_text,
    key_values,
    numerator_text,
    series_record,
    structured,
    text_cohomology,
    text_invariants,
)
from .verifier import DEGS, SUITES, StreamProfile, run_suite


class UsageError(ValueError):
    pass


def _ring_text(ring) -> str:
    return f"{ring.field.name}[x0..x{ring.nvars - 1}]"


def _warn_characteristic(M: Submodule):
    p = M.ring.field.characteristic
    if not p:
        return
    top = max((g.degree() for g in M.gens if g.terms), default=0)
    if p <= top:
        print(
            f"warning: characteristic {p} does not exceed the generator degree {top}; "
            "gin and Borel-fixedness are not guaranteed",
            file=sys.stderr,
        )


# --------------------------------------------------------------------------
# commands on a named module


def cmd_invariants(M: Submodule, source: str, seed: int):
    _warn_characteristic(M)
    rep = invariants(M, seed)
    res = minimal_free_resolution(M)
    rec = {
        "command": "invariants",
        "ring": _ring_text(M.ring),
        "input": source,
        "reg": rep.reg,
        "r1": rep.r1,
        "e_plus": rep.e_plus,
        "depth": rep.depth,
        "dim": rep.dim,
        "deg": rep.deg,
        "bdeg": rep.bdeg,
        "hdeg": rep.hdeg,
        "I_bdeg": rep.I_bdeg,
        "I_hdeg": rep.I_hdeg,
        "I_h": rep.I_h,
        "bdeg_axioms": rep.bdeg_axioms,
        "hilbert_numerator": rep.hilbert.numerator(min(0, rep.hilbert.shift)) if rep.hilbert.coeffs else [],
        "betti": betti_rows(res),
        "cohomology": rep.cohomology,
        "gin": repr(rep.gin) if rep.gin is not None else None,
        "seeds": list(rep.seeds),
    }
    text = text_invariants(rec, None if res.is_zero() else res, rep.hilbert)
    return rec, text, 0


def cmd_gin(M: Submodule, source: str, seed: int):
    _warn_characteristic(M)
    g = gin_of(M, (seed, seed + 1))
    try:
        borel = is_borel_fixed(g.module)
    except ValueError:
        borel = None
    rec = {
        "command": "gin",
        "ring": _ring_text(M.ring),
        "input": source,
        "gin": repr(g.module),
        "seeds": list(g.seeds),
        "stable": g.stable,
        "escalated": g.escalated,
        "borel_fixed": borel,
        "bdeg": bdeg_of_borel(g.module) if not M.hilbert_series.is_zero() else 0,
    }
    text = key_values([(k, rec[k]) for k in ("ring", "input", "gin", "seeds", "escalated", "borel_fixed", "bdeg")]) + "\n"
    return rec, text, 0


def cmd_hilbert(M: Submodule, source: str, seed: int):
    H = M.hilbert_series
    dim, deg = H.dim_deg()
    lo = min(0, H.shift) if H.coeffs else 0
    values = {j: H.at(j) for j in range(lo, lo + 10)}
    rec = {
        "command": "hilbert",
        "ring": _ring_text(M.ring),
        "input": source,
        "series": series_record(H),
        "dim": dim,
        "deg": deg,
        "values": values,
    }
    text = key_values(
        [
            ("ring", rec["ring"]),
            ("input", source),
            ("numerator", f"{numerator_text(H)}  over (1-z)^{H.nvars}"),
            ("dim", dim),
            ("deg", deg),
            ("values", [f"{j}:{v}" for j, v in values.items()]),
        ]
    )
    return rec, text + "\n", 0


def cmd_resolve(M: Submodule, source: str, seed: int):
    res = minimal_free_resolution(M)
    rec = {
        "command": "resolve",
        "ring": _ring_text(M.ring),
        "input": source,
        "betti": betti_rows(res),
        "projective_dimension": res.length,
        "reg": res.regularity(),
        "maps": [generators_text(m) for m in res.maps],
    }
    lines = [key_values([("ring", rec["ring"]), ("input", source), ("pd", res.length), ("reg", rec["reg"])]), ""]
    lines.append(res.betti_grid())
    for i, m in enumerate(rec["maps"]):
        lines.append(f"d{i + 1}: " + ", ".join(m))
    return rec, "\n".join(lines) + "\n", 0


def cmd_cohomology(M: Submodule, source: str, seed: int):
    prof = cohomology_profile(M)
    coh = cohomology_summary(prof)
    rec = {
        "command": "cohomology",
        "ring": _ring_text(M.ring),
        "input": source,
        "dim": prof.dim,
        "cohomology": coh,
        "r0": ends_and_rk(prof, 0),
        "r1": ends_and_rk(prof, 1),
        "I_h": cm_deviation_h(prof),
    }
    head = key_values([(k, rec[k]) for k in ("ring", "input", "dim", "r0", "r1", "I_h")])
    return rec, head + "\n\n" + text_cohomology(coh) + "\n", 0


MODULE_COMMANDS = {
    "invariants": cmd_invariants,
    "gin": cmd_gin,
    "hilbert": cmd_hilbert,
    "resolve": cmd_resolve,
    "cohomology": cmd_cohomology,
}


# --------------------------------------------------------------------------
# family and verify


def _int_flag(flags: dict, key: str, default=None) -> int:
    if key not in flags:
        if default is None:
            raise UsageError(f"missing --{key}")
        return default
    try:
        return int(flags[key])
    except ValueError:
        raise UsageError(f"--{key} expects an integer, got {flags[key]!r}") from None


def _explicit_forms(spec: FamilySpec, text: str):
    """``"f2=x0^2+x1^2; f1=x1; l0=x0"``; missing ``l_k`` default to ``x_k``."""
    ring = spec.ring
    f, l = {}, {}
    for part in filter(None, (p.strip() for p in text.split(";"))):
        if "=" not in part:
            raise UsageError(f"explicit form {part!r} needs the shape f<i>=... or l<k>=...")
        key, poly = (s.strip() for s in part.split("=", 1))
        if len(key) < 2 or key[0] not in "fl" or not key[1:].isdigit():
            raise UsageError(f"unknown explicit form {key!r}")
        (f if key[0] == "f" else l)[int(key[1:])] = parse_polynomial(ring, poly)
    for k in range(spec.n - spec.t):
        l.setdefault(k, ring.var(k))
    missing = [i for i in range(spec.t, spec.n + 1) if i not in f]
    if missing:
        raise UsageError("explicit forms missing for " + ", ".join(f"f{i}" for i in missing))
    return f, l


def cmd_family(flags: dict, seed: int, field_):
    n = _int_flag(flags, "n")
    t = _int_flag(flags, "t")
    if "degs" not in flags:
        raise UsageError("missing --degs")
    try:
        degs = tuple(int(x) for x in flags["degs"].split(","))
    except ValueError:
        raise UsageError(f"--degs expects integers d_t,...,d_n, got {flags['degs']!r}") from None
    try:
        spec = FamilySpec(n, t, degs, field=field_)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if "explicit" in flags:
        f, l = _explicit_forms(spec, flags["explicit"])
        spec = FamilySpec(n, t, degs, f, l, field_)
        I = build_extremal_ideal(spec)
    else:
        spec, I = sample_family(spec, seed)
    pred = closed_forms(spec)
    H = I.hilbert_series
    res = minimal_free_resolution(I)
    g = gin_of(I, (seed, seed + 1))
    computed = {
        "reg": res.regularity(),
        "bdeg": bdeg_of_borel(g.module),
        "hdeg": hdeg(I),
        "deg": H.dim_deg()[1],
        "dim": H.dim_deg()[0],
        "depth": I.ring.nvars - res.length,
    }
    predicted = {k: getattr(pred, k) for k in computed}
    checks = {k: computed[k] == predicted[k] for k in computed}
    checks["hilbert"] = H == pred.hilbert
    checks["gin"] = g.module == pred.gin
    checks["hdeg_borderline"] = (computed["reg"] == computed["hdeg"] - 1) == pred.hdeg_equality
    agree = all(checks.values())
    rec = {
        "command": "family",
        "spec": spec.label(),
        "ring": _ring_text(I.ring),
        "generators": generators_text(I.gens),
        "forms": {f"f{i}": format_element(p) for i, p in sorted(spec.f.items())}
        | {f"l{k}": format_element(p) for k, p in sorted(spec.l.items())},
        "computed": computed,
        "predicted": predicted,
        "hilbert_numerator": H.numerator(0),
        "gin": repr(g.module),
        "predicted_gin": repr(pred.gin),
        "seeds": list(g.seeds),
        "checks": checks,
        "agree": agree,
    }
    rows = [("spec", rec["spec"]), ("ring", rec["ring"]), ("ideal", "(" + ", ".join(rec["generators"]) + ")")]
    for k in computed:
        rows.append((k, f"{computed[k]} (predicted {predicted[k]})"))
    rows.append(("hilbert", numerator_text(H) + f"  over (1-z)^{H.nvars}"))
    rows.append(("gin", f"{rec['gin']} (predicted {rec['predicted_gin']})"))
    rows.append(("agree", agree))
    return rec, key_values(rows) + "\n", 0 if agree else 1


def cmd_verify(flags: dict, seed: int, samples: int, field_):
    suite = flags.get("suite", "all")
    if suite != "all" and suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    which = flags.get("deg")
    if which is not None and which not in DEGS:
        raise UsageError(f"unknown --deg {which!r}; choose bdeg or hdeg")
    kind = flags.get("kind", "mixed")
    rank = _int_flag(flags, "rank", 1)
    try:
        profile = StreamProfile(kind=kind, rank=rank, field=field_)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = run_suite(suite, which, seed, samples, profile)
    fails = rep.failures
    rec = {
        "command": "verify",
        "suite": suite,
        "deg": which or "both",
        "seed": seed,
        "samples": samples,
        "counts": rep.counts(),
        "equality": rep.equality_stats(),
        "failures": [f.as_dict() for f in fails],
        "ok": not fails,
    }
    lines = [f"verify suite={suite} deg={rec['deg']} seed={seed} samples={samples}"]
    w = max((len(k) for k in rec["counts"]), default=0)
    for name, c in rec["counts"].items():
        eq = rec["equality"].get(name)
        tail = f"  sharp {eq}" if eq else ""
        lines.append(f"  {name:<{w}}  pass {c['pass']:>4}  fail {c['fail']:>3}  skip {c['skip']:>3}{tail}")
    for f in fails:
        lines.append("")
        lines.append(f"FAIL {f.name} seed {f.seed}")
        lines.append("  witness " + ", ".join(f"{k}={v}" for k, v in f.witness.items()))
        lines.append("  replay: " + f.instance)
    lines.append("ok" if not fails else f"{len(fails)} failing checks")
    return rec, "\n".join(lines) + "\n", 0 if not fails else 1


# --------------------------------------------------------------------------
# driver


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="regbound",
        description="Regularity, extended degrees and local cohomology of graded modules.",
        epilog="Input is a program such as 'ring Q[x0..x1]; ideal I = (x0^2, x0*x1); invariants I'. "
        "The commands family and verify may also be given directly as arguments.",
    )
    ap.add_argument("words", nargs="*", help="input file ('-' for stdin), or family/verify")
    ap.add_argument("-e", "--expr", help="program text given inline")
    ap.add_argument("--field", help="coefficient field, Q or Fp(p) (default Q)")
    ap.add_argument("--seed", type=int, help="random seed (default 0)")
    ap.add_argument("--samples", type=int, help="random instances per suite (default 100)")
    ap.add_argument("--format", choices=("text", "structured"), default="text")
    ap.add_argument("--suite", help="verify: " + ", ".join(SUITES + ("all",)))
    ap.add_argument("--deg", help="verify: bdeg or hdeg (default both)")
    ap.add_argument("--kind", help="verify: monomial, binomial or mixed random ideals")
    ap.add_argument("--rank", type=int, help="verify: rank of the random submodules (default 1, ideals)")
    ap.add_argument("--n", help="family: n")
    ap.add_argument("--t", help="family: t")
    ap.add_argument("--degs", help="family: d_t,...,d_n")
    ap.add_argument("--explicit", help="family: forms like 'f1=x0+x1; f0=x1; l0=x0'")
    return ap


COMMAND_FLAGS = ("suite", "deg", "kind", "rank", "n", "t", "degs", "explicit", "seed", "samples")


def _run(args) -> int:
    field_override = None
    if args.field is not None:
        try:
            field_override = parse_field(args.field)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    words = args.words
    if words and words[0] in ("family", "verify"):
        if len(words) > 1:
            raise UsageError(f"unexpected arguments {' '.join(words[1:])!r}")
        flags = {k: str(getattr(args, k)) for k in COMMAND_FLAGS if getattr(args, k) is not None}
        program = None
        commands = [Command(words[0], flags=flags)]
    else:
        if args.expr is not None:
            if words:
                raise UsageError("give either --expr or an input file")
            text = args.expr
        elif not words or words == ["-"]:
            text = sys.stdin.read()
        elif len(words) == 1:
            try:
                with open(words[0]) as fh:
                    text = fh.read()
            except OSError as exc:
                raise UsageError(f"cannot read {words[0]}: {exc.strerror}") from None
        else:
            raise UsageError("expected a single input file")
        program = parse_input(text, field_override)
        commands = program.commands
        if not commands:
            raise UsageError("the input contains no command")
    status = 0
    outputs = []
    for cmd in commands:
        flags = dict(cmd.flags)
        for k in COMMAND_FLAGS:
            if k not in flags and getattr(args, k) is not None:
                flags[k] = str(getattr(args, k))
        seed = _int_flag(flags, "seed", 0)
        samples = _int_flag(flags, "samples", 100)
        if samples < 0:
            raise UsageError("--samples must be nonnegative")
        field_ = field_override or QQ
        if cmd.name in MODULE_COMMANDS:
            M = program.names[cmd.target]
            rec, text, code = MODULE_COMMANDS[cmd.name](M, program.sources[cmd.target], seed)
        elif cmd.name == "family":
            rec, text, code = cmd_family(flags, seed, field_)
        else:
            rec, text, code = cmd_verify(flags, seed, samples, field_)
        status = max(status, code)
        outputs.append(structured(rec) if args.format == "structured" else text)
    sys.stdout.write("\n".join(outputs) if args.format == "text" else "".join(outputs))
    return status


def main(argv=None) -> int:
    ap = build_arg_parser()
    args = ap.parse_args(argv)
    try:
        return _run(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, NonHomogeneousError, DegenerateFamilyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GinInstabilityError, FilterRegularError) as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
