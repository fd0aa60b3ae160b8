"""Command-line interface: ``lawforge <command> ...``.

Exit status: 0 positive verdict, 1 negative verdict, 2 usage or parse
error, 3 cap or budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import spectra, verify, walks
from .config import CapExceeded, get_caps, parse_caps, set_caps
from .freeword import Word
from .groups import GroupError, parse_group
from .lawkit import constructors as ctor
from .lawkit.tables import LieTypeTag, TagError

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read_words(args) -> list[Word]:
    texts = list(args.word or [])
    if args.word_file:
        with open(args.word_file) as fh:
            texts.extend(line.strip() for line in fh if line.strip() and not line.startswith("#"))
    if not texts:
        raise UsageError("give --word or --word-file")
    return [Word.parse(t) for t in texts]


def _emit(args, payload, text: str | None = None) -> None:
    if args.format == "text" and text is not None:
        out = text.rstrip("\n") + "\n"
    elif isinstance(payload, str):
        out = payload
    else:
        out = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _config(args) -> dict:
    skip = {"func", "output"}
    cfg = {k: v for k, v in vars(args).items() if k not in skip}
    cfg["resolved_caps"] = get_caps().to_dict()
    return cfg


def _random_generating_pair(ig, seed: int):
    rng = np.random.default_rng(seed)
    for _ in range(100_000):
        g, h = (int(x) for x in rng.integers(ig.n, size=2))
        if ig.is_generating_pair(g, h):
            return g, h
    raise UsageError(f"no generating pair found for {ig.name}")


# -- commands ------------------------------------------------------------------------


def cmd_construct(args) -> int:
    r = args.recipe
    if r == "psl2-law":
        rec = ctor.psl2_law(_need(args, "q"))
    elif r == "solvable":
        rec = ctor.solvable_recipe(_need(args, "d"))
    elif r == "max-order":
        rec = ctor.max_order_recipe(_need(args, "m"))
    elif r == "small-field":
        rec = ctor.small_field_law(LieTypeTag.parse(_need(args, "family")), _need(args, "N"))
    elif r in ("union", "product"):
        ws = _read_words(args)
        w = ctor.union_combine(ws) if r == "union" else ctor.product_law(ws)
        m = len(ws)
        rec = ctor.LawRecipe(r, {"words": [str(x) for x in ws]}, w, 16 * m * m * max(x.length for x in ws))
    elif r == "extension":
        ws = _read_words(args)
        if len(ws) != 2:
            raise UsageError("extension takes exactly two words: kernel law then quotient law")
        w = ctor.extension_combine(ws[0], ws[1])
        rec = ctor.LawRecipe(r, {"kernel": str(ws[0]), "quotient": str(ws[1])}, w, ws[0].length * ws[1].length)
    else:
        raise UsageError(f"unknown recipe {r!r}")
    payload = rec.to_dict()
    payload["config"] = _config(args)
    _emit(args, payload, f"{rec.word}\nlength {rec.length} <= bound {rec.claimed_bound}")
    return EXIT_OK


def _need(args, name):
    v = getattr(args, name, None)
    if v is None:
        raise UsageError(f"--{name} is required for this recipe")
    return v


def cmd_verify(args) -> int:
    G = parse_group(args.group)
    certs = []
    for w in _read_words(args):
        if args.mode == "generating-pairs":
            c = verify.check_on_generating_pairs(w, G)
        else:
            c = verify.check_law(w, G, mode=args.mode, samples=args.samples, seed=args.seed,
                                 fallback=args.fallback)
        certs.append(c)
    payload = {"certificates": [c.to_dict(with_time=False) for c in certs], "config": _config(args)}
    _emit(args, payload, "\n".join(f"{c.word}: {c.verdict}" for c in certs))
    return EXIT_OK if all(c.holds for c in certs) else EXIT_NEGATIVE


def cmd_vanishing(args) -> int:
    G = parse_group(args.group)
    w = _read_words(args)[0]
    mask = verify.vanishing_mask(w, G)
    ig = G.indexed()
    pairs = [[ig.format_element(int(g)), ig.format_element(int(h))] for g, h in zip(*np.nonzero(mask))]
    n = ig.n
    payload = {"word": str(w), "group": G.name, "size": len(pairs), "pairs_total": n * n,
               "is_law": len(pairs) == n * n, "config": _config(args)}
    if args.list_pairs:
        payload["pairs"] = pairs
    _emit(args, payload, f"|Z| = {len(pairs)} of {n * n}")
    return EXIT_OK


def cmd_shortest(args) -> int:
    G = parse_group(args.group)
    res = verify.shortest_law_search(G, args.max_length, seed=args.seed)
    payload = res.to_dict(with_time=False)
    payload["config"] = _config(args)
    found = res.found is not None
    _emit(args, payload, f"found {res.found}" if found else f"no law up to length {res.frontier}")
    return EXIT_OK if found else EXIT_NEGATIVE


def cmd_spectrum(args) -> int:
    G = parse_group(args.group)
    fam = LieTypeTag.parse(args.family) if args.family else None
    rep = spectra.order_census(G, fam, args.q, regular=args.regular)
    if args.format == "csv":
        _emit(args, rep.to_csv())
    else:
        payload = rep.summary()
        payload["config"] = _config(args)
        _emit(args, payload, rep.to_csv())
    return EXIT_OK


def cmd_density(args) -> int:
    G = parse_group(args.group)
    fam = LieTypeTag.parse(args.family)
    rep = spectra.order_census(G, fam, args.q)
    dens = rep.e_g_density
    payload = rep.summary()
    payload["e_g_fraction"] = f"{rep.e_g_count}/{rep.order}"
    if G.name.startswith("SL(") and args.family.upper().startswith("A"):
        n = int(G.name[3:].split(",")[0])
        bound = spectra.torus_density_bound(n)
        payload["bound"] = str(bound)
        payload["hypothesis_holds"] = spectra.density_hypothesis_holds(n, args.q)
        payload["meets_bound"] = dens >= bound
    payload["config"] = _config(args)
    _emit(args, payload, f"{rep.e_g_count}/{rep.order} = {dens}")
    return EXIT_OK


def cmd_tuple_count(args) -> int:
    exact, bound = spectra.cyclic_tuple_count(args.n, args.d)
    payload = {"n": args.n, "d": args.d, "exact": exact, "bound": bound,
               "holds": bound < 0 or exact >= bound, "config": _config(args)}
    _emit(args, payload, f"exact {exact}, bound {bound}")
    return EXIT_OK


def _generators(args, ig):
    if args.gens:
        idx = [int(s) for s in args.gens.split(",")]
        if any(not 0 <= i < ig.n for i in idx):
            raise UsageError("generator indices out of range")
        return idx
    return list(_random_generating_pair(ig, args.seed))


def cmd_diameter(args) -> int:
    G = parse_group(args.group)
    ig = G.indexed()
    gens = _generators(args, ig)
    d = walks.cayley_diameter(ig, gens)
    payload = {"group": G.name, "generators": [ig.format_element(g) for g in gens],
               "generator_indices": gens, "diameter": d, "config": _config(args)}
    _emit(args, payload, str(d))
    return EXIT_OK


def cmd_mixing(args) -> int:
    G = parse_group(args.group)
    ig = G.indexed()
    gens = _generators(args, ig)
    S = sorted(set(gens) | {int(ig.inverse[g]) for g in gens})
    rep = walks.empirical_mixing_check(ig, S, walks.torus_mask(ig, LieTypeTag.parse(args.family), args.q),
                                       L=args.L, trials=args.trials, seed=args.seed)
    payload = rep.to_dict()
    payload["group"] = G.name
    payload["config"] = _config(args)
    _emit(args, payload, f"hit rate {rep.hit_rate} vs threshold {rep.threshold}: {'pass' if rep.passed else 'fail'}")
    return EXIT_OK if rep.passed else EXIT_NEGATIVE


def cmd_almost_law(args) -> int:
    G = parse_group(args.group)
    res = walks.almost_law_search(G, LieTypeTag.parse(args.family), args.q, m=args.m, L=args.L,
                                  seed=args.seed, attempts=args.attempts)
    payload = res.to_dict(with_time=False)
    payload["config"] = _config(args)
    _emit(args, payload, f"{'success' if res.success else 'budget exhausted'} after {res.attempts_used} attempt(s)")
    return EXIT_OK if res.success else EXIT_CAP


def config_to_argv(cfg: dict) -> list[str]:
    """Command line that reproduces a report from its embedded ``config``."""
    parser = build_parser()
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    command = cfg.get("command")
    if command not in sub.choices or command == "replay":
        raise UsageError(f"config names no replayable command ({command!r})")
    argv = ["--caps", cfg["caps"]] if cfg.get("caps") else []
    argv.append(command)
    for action in sub.choices[command]._actions:
        value = cfg.get(action.dest)
        if action.dest in ("help", "output") or value is None:
            continue
        if not action.option_strings:
            argv.append(str(value))
        elif isinstance(action, argparse._StoreTrueAction):
            if value:
                argv.append(action.option_strings[-1])
        elif isinstance(action, argparse._AppendAction):
            for v in value:
                argv += [action.option_strings[-1], str(v)]
        else:
            argv += [action.option_strings[-1], str(value)]
    return argv


def cmd_replay(args) -> int:
    with open(args.report) as fh:
        try:
            cfg = json.load(fh)["config"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise UsageError(f"{args.report} is not a JSON report with an embedded config") from exc
    argv = config_to_argv(cfg)
    if args.output:
        argv += ["--output", args.output]
    return main(argv)


# -- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lawforge", description="Build and check short laws in finite groups.")
    p.add_argument("--caps", help="cap overrides, e.g. pairs=2000,enumeration=500000")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--output", "-o", help="write the report here instead of stdout")
        sp.add_argument("--format", choices=("json", "csv", "text"), default="json")
        sp.set_defaults(func=func)
        return sp

    def words(sp):
        sp.add_argument("--word", action="append", help="word such as 'x^3 y^-1' or 'xyXY' (repeatable)")
        sp.add_argument("--word-file", help="file with one word per line")

    sp = add("construct", cmd_construct, "build a law from a recipe")
    sp.add_argument("recipe", choices=("psl2-law", "solvable", "max-order", "small-field", "union",
                                       "product", "extension"))
    sp.add_argument("--q", type=int)
    sp.add_argument("--d", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--N", type=int)
    sp.add_argument("--family")
    words(sp)

    sp = add("verify", cmd_verify, "check words against a group")
    sp.add_argument("--group", required=True)
    sp.add_argument("--mode", choices=("exhaustive", "sampled", "generating-pairs"), default="exhaustive")
    sp.add_argument("--samples", type=int, default=verify.DEFAULT_SAMPLES)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--fallback", action="store_true", help="sample instead of failing over the pair cap")
    words(sp)

    sp = add("vanishing-set", cmd_vanishing, "size (and optionally members) of Z(G, w)")
    sp.add_argument("--group", required=True)
    sp.add_argument("--list-pairs", action="store_true")
    words(sp)

    sp = add("shortest-law", cmd_shortest, "search reduced words for a law")
    sp.add_argument("--group", required=True)
    sp.add_argument("--max-length", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("spectrum", cmd_spectrum, "element order census")
    sp.add_argument("--group", required=True)
    sp.add_argument("--family")
    sp.add_argument("--q", type=int)
    sp.add_argument("--regular", action="store_true", help="also count regular diagonalizable elements")

    sp = add("density", cmd_density, "fraction of elements with order dividing b(X, q)")
    sp.add_argument("--group", required=True)
    sp.add_argument("--family", required=True)
    sp.add_argument("--q", type=int, required=True)

    sp = add("tuple-count", cmd_tuple_count, "distinct zero-sum tuples in Z/n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)

    sp = add("diameter", cmd_diameter, "Cayley graph diameter")
    sp.add_argument("--group", required=True)
    sp.add_argument("--gens", help="comma separated element indices; default is a random generating pair")
    sp.add_argument("--seed", type=int, default=0)

    sp = add("mixing-check", cmd_mixing, "lazy random walk hit rate on E_G")
    sp.add_argument("--group", required=True)
    sp.add_argument("--family", required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--gens")
    sp.add_argument("--L", type=int)
    sp.add_argument("--trials", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("almost-law", cmd_almost_law, "randomized law search on generating pairs")
    sp.add_argument("--group", required=True)
    sp.add_argument("--family", required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--m", type=int)
    sp.add_argument("--L", type=int)
    sp.add_argument("--attempts", type=int, default=32)
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("replay", help="rerun the command embedded in a JSON report")
    sp.add_argument("report")
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_replay)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        if args.caps:
            set_caps(parse_caps(args.caps, get_caps()))
        return args.func(args)
    except CapExceeded as exc:
        print(f"lawforge: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, GroupError, TagError, ValueError, OSError) as exc:
        print(f"lawforge: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if args.caps:
            set_caps(None)


if __name__ == "__main__":
    sys.exit(main())
