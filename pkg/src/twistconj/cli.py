"""Command-line front end ``tc``.

Exit status is 0 on success, 1 when the mathematics does not apply (the map
is not an automorphism, the group is too large for the oracle, ...) and 2
for malformed input.  An infinite Reidemeister number is a normal result.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .errors import InputError, PresentationError, TwistConjError
from .freenil import build_free_nilpotent
from .intlat import INFINITE
from .oracle import DEFAULT_BOUND, brute_force_reidemeister
from .pc.io import format_presentation, load_automorphism_images, load_presentation
from .pc.maps import check_map, complete_images
from .pc.presentation import PcPresentation
from .twisted import (InfinityWitness, ReidemeisterResult, decide, fix_subgroup, formanek_fixed,
                      infinity_witness_uc, reidemeister, spectrum_sample, theorem2_rinf)


@dataclass
class CommandResult:
    exit_code: int
    text: str
    data: dict = field(default_factory=dict)


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.prog}: error: {message}")


def _count_str(n) -> str:
    return "infinite" if n == INFINITE else str(n)


def _witness_data(G: PcPresentation, w: InfinityWitness | None):
    if w is None:
        return None
    return {"kind": w.kind, "layer": w.layer, "vector": list(w.vector),
            "element": G.word(w.element) if w.element is not None else None,
            "description": w.describe()}


def _report(G: PcPresentation, res: ReidemeisterResult) -> tuple[str, dict]:
    if res.is_finite:
        text = f"R = {res.count}"
        data = {"result": "finite", "count": res.count,
                "representatives": [G.word(x) for x in res.representatives], "witness": None}
    else:
        text = f"R = infinite ({res.witness.describe()})"
        data = {"result": "infinite", "count": "infinite", "representatives": [],
                "witness": _witness_data(G, res.witness)}
    return text, data


def _load_group(path: str, check: bool = True) -> PcPresentation:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return load_presentation(text, check=check)


def _load_aut(G: PcPresentation, path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    name, partial = load_automorphism_images(text, G)
    return name, check_map(G, complete_images(G, partial), "auto")


# ---------------------------------------------------------------------------
# subcommands


def _cmd_check(a) -> CommandResult:
    G = _load_group(a.group, check=False)
    G.check_consistency()
    text = f"{G.name}: consistent, {G.n} generators, Hirsch length {G.hirsch_length}"
    if G.is_finite:
        text += f", order {G.order}"
    return CommandResult(0, text, {"result": "consistent", "generators": G.n,
                                   "hirsch_length": G.hirsch_length})


def _cmd_freenil(a) -> CommandResult:
    G = build_free_nilpotent(a.r, a.c)
    out = format_presentation(G)
    data = {"result": "built", "generators": G.n}
    if a.output:
        Path(a.output).write_text(out)
        return CommandResult(0, f"wrote {G.name} ({G.n} generators) to {a.output}", data)
    return CommandResult(0, out.rstrip("\n"), data)


def _cmd_aut_check(a) -> CommandResult:
    G = _load_group(a.group)
    name, phi = _load_aut(G, a.aut)
    lines = [f"{name} is an automorphism of {G.name}"]
    lines += [f"  {G.names[k]} -> {G.word(img)}" for k, img in enumerate(phi.images)]
    return CommandResult(0, "\n".join(lines), {"aut": name, "result": "automorphism",
                                               "images": [G.word(x) for x in phi.images]})


def _cmd_reidemeister(a) -> CommandResult:
    G = _load_group(a.group)
    name, phi = _load_aut(G, a.aut)
    res = reidemeister(G, phi, use_shortcut=a.shortcut)
    text, data = _report(G, res)
    if a.reps and res.is_finite:
        text += "\nrepresentatives:\n" + "\n".join(f"  {r}" for r in data["representatives"])
    data["aut"] = name
    return CommandResult(0, text, data)


def _cmd_fix(a) -> CommandResult:
    G = _load_group(a.group)
    name, phi = _load_aut(G, a.aut)
    F = fix_subgroup(G, phi)
    gens = [G.word(x) for x in F.gens]
    text = "Fix = 1" if not gens else "Fix = <" + ", ".join(gens) + ">"
    return CommandResult(0, text, {"aut": name, "result": "trivial" if not gens else "nontrivial",
                                   "generators": gens})


def _cmd_decide(a) -> CommandResult:
    G = _load_group(a.group)
    name, phi = _load_aut(G, a.aut)
    g, f = G.parse_word(a.g), G.parse_word(a.f)
    x = decide(G, phi, g, f)
    if x is None:
        return CommandResult(0, "not twisted conjugate", {"aut": name, "result": "no", "witness": None})
    return CommandResult(0, f"twisted conjugate, x = {G.word(x)}",
                         {"aut": name, "result": "yes", "witness": G.word(x)})


def _cmd_rinf(a) -> CommandResult:
    G = _load_group(a.group)
    name, phi = _load_aut(G, a.aut)
    w = infinity_witness_uc(G, phi)
    if w is None:
        return CommandResult(0, "no fixed vector on any upper central factor",
                             {"aut": name, "result": "none", "witness": None})
    return CommandResult(0, f"R = infinite ({w.describe()})",
                         {"aut": name, "result": "infinite", "count": "infinite",
                          "witness": _witness_data(G, w)})


def _cmd_rinf_formanek(a) -> CommandResult:
    ff, t2 = formanek_fixed(a.r, a.c), theorem2_rinf(a.r, a.c)
    text = (f"N({a.r},{a.c}): elements fixed by all automorphisms: {'yes' if ff else 'no'}\n"
            f"N({a.r},{a.c}): R-infinity by the rank/class criterion: {'yes' if t2 else 'not decided'}")
    return CommandResult(0, text, {"result": {"formanek_fixed": ff, "rinf": t2}})


def _cmd_spectrum(a) -> CommandResult:
    G = _load_group(a.group)
    counts, samples = spectrum_sample(G, a.samples, a.seed)
    keys = sorted(counts, key=lambda v: (v == INFINITE, v))
    lines = [f"{len(samples)} sampled automorphisms of {G.name} (seed {a.seed})"]
    lines += [f"  R = {_count_str(k)}: {counts[k]}" for k in keys]
    data = {"result": "spectrum",
            "counts": {_count_str(k): counts[k] for k in keys},
            "samples": [{"images": [G.word(x) for x in s.images], "count": _count_str(s.result.count)}
                        for s in samples]}
    return CommandResult(0, "\n".join(lines), data)


def _cmd_oracle(a) -> CommandResult:
    G = _load_group(a.group)
    name, phi = _load_aut(G, a.aut)
    brute = brute_force_reidemeister(G, phi, bound=a.bound)
    res = reidemeister(G, phi)
    orbits = {brute.orbit_of(r) for r in res.representatives}
    agree = res.count == brute.count and len(orbits) == len(res.representatives)
    text = (f"brute force: R = {brute.count}\nlayered:     R = {_count_str(res.count)}\n"
            + ("agree" if agree else "DISAGREE"))
    return CommandResult(0 if agree else 1, text,
                         {"aut": name, "result": "agree" if agree else "disagree",
                          "count": _count_str(res.count), "oracle_count": brute.count,
                          "representatives": [G.word(x) for x in res.representatives]})


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tc", description="Twisted conjugacy in finitely generated nilpotent groups.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help, group=True, aut=True):
        s = sub.add_parser(name, help=help)
        if group:
            s.add_argument("group", help="pc presentation file")
        if aut:
            s.add_argument("aut", help="automorphism file")
        s.add_argument("--json", action="store_true", help="print a JSON report")
        s.set_defaults(func=func)
        return s

    add("check", _cmd_check, "check consistency of a presentation", aut=False)
    s = add("freenil", _cmd_freenil, "build the free nilpotent group N(r, c)", group=False, aut=False)
    s.add_argument("r", type=_positive)
    s.add_argument("c", type=_positive)
    s.add_argument("-o", "--output", help="write the presentation here instead of stdout")
    add("aut-check", _cmd_aut_check, "validate an automorphism")
    s = add("reidemeister", _cmd_reidemeister, "Reidemeister number and class representatives")
    s.add_argument("--reps", action="store_true", help="list class representatives")
    s.add_argument("--shortcut", action="store_true",
                   help="try the upper central certificate first (torsion-free groups)")
    add("fix", _cmd_fix, "fixed subgroup of an automorphism")
    s = add("decide", _cmd_decide, "decide twisted conjugacy of two elements")
    s.add_argument("g", help="word, e.g. 'a b^-1'")
    s.add_argument("f", help="word")
    add("rinf", _cmd_rinf, "look for a fixed vector on the upper central factors")
    s = add("rinf-formanek", _cmd_rinf_formanek, "fixed-point and R-infinity predicates for N(r, c)",
            group=False, aut=False)
    s.add_argument("r", type=int)
    s.add_argument("c", type=int)
    s = add("spectrum", _cmd_spectrum, "Reidemeister numbers of random automorphisms", aut=False)
    s.add_argument("--samples", type=_positive, default=50)
    s.add_argument("--seed", type=int, required=True)
    s = add("oracle", _cmd_oracle, "compare with brute-force orbit counting (finite groups)")
    s.add_argument("--bound", type=_positive, default=DEFAULT_BOUND)
    return p


def run(argv: list[str]) -> CommandResult:
    try:
        args = build_parser().parse_args(argv)
    except _Usage as exc:
        return CommandResult(2, str(exc), {"result": "error", "error": str(exc)})
    except SystemExit as exc:  # --help
        return CommandResult(int(exc.code or 0), "")
    try:
        res = args.func(args)
    except (InputError, PresentationError, ValueError) as exc:
        res = CommandResult(2, f"error: {exc}", {"result": "error", "error": str(exc)})
    except TwistConjError as exc:
        res = CommandResult(1, f"not applicable: {exc}",
                            {"result": "not-applicable", "error": f"{type(exc).__name__}: {exc}"})
    base = {"command": args.command, "group": getattr(args, "group", None),
            "aut": None, "result": None, "count": None, "representatives": None,
            "witness": None, "seed": getattr(args, "seed", None)}
    base.update(res.data)
    res.data = base
    if args.json:
        res.text = json.dumps(base, sort_keys=True)
    return res


def main(argv: list[str] | None = None) -> int:
    res = run(sys.argv[1:] if argv is None else argv)
    if res.text:
        print(res.text, file=sys.stderr if res.exit_code == 2 else sys.stdout)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
