"""Command line: compute, verify, export and chart.

Exit status is 0 on success, 1 when a check fails and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import replace
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import chart, cohomology, picard, resolution, specseq, verify
from .graded import BigradedModule, Window

DEFAULTS = {"stem_min": -60, "stem_max": 230, "s_max": 40, "output_dir": ".", "d5_sign": 1}


class UsageError(Exception):
    pass


def load_config(path) -> dict:
    cfg = dict(DEFAULTS)
    if path is None:
        return cfg
    try:
        data = tomllib.loads(Path(path).read_text())
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}")
    flat = dict(data)
    flat.update(data.get("window", {}) if isinstance(data.get("window"), dict) else {})
    flat.pop("window", None)
    unknown = set(flat) - set(DEFAULTS)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    if flat.get("d5_sign", 1) not in (1, -1):
        raise UsageError("d5_sign must be 1 or -1")
    cfg.update(flat)
    return cfg


def _settings(args) -> dict:
    cfg = load_config(args.config)
    for key in ("stem_min", "stem_max", "s_max", "output_dir"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if cfg["stem_min"] > cfg["stem_max"]:
        raise UsageError(f"empty stem range {cfg['stem_min']}..{cfg['stem_max']}")
    return cfg


def _window(cfg) -> Window:
    return Window(cfg["stem_min"], cfg["stem_max"], 0, cfg["s_max"])


def _emit(args, payload: dict, lines: list[str]):
    if args.json:
        print(json.dumps(payload, indent=1, ensure_ascii=False, default=str))
    else:
        print("\n".join(lines))


def _signed(rules, sign: int):
    if sign == 1:
        return rules
    out = []
    for r in rules:
        if r.page == 5:
            coeff, factors = r.target
            r = replace(r, target=(-coeff, factors), text=r.text + "  [d5 sign flipped]")
        out.append(r)
    return out


# cohomology ------------------------------------------------------------------------

def cmd_cohomology(args) -> int:
    if args.subgroup not in cohomology.SUBGROUPS:
        raise UsageError(f"unknown subgroup {args.subgroup!r}; choose from {', '.join(cohomology.SUBGROUPS)}")
    tmin, tmax = args.t_range
    window = Window(None, None, 0, args.s_max if args.s_max is not None else 8, tmin, tmax)
    rep = cohomology.check_against_expected(args.subgroup, window)
    module = cohomology.expected_module(args.subgroup, Window(None, None, 0, window.s_max, tmin, tmax))
    lines = [f"H*({args.subgroup}, F9[u+-1]) for s <= {window.s_max}, {tmin} <= t <= {tmax}",
             f"{'PASS' if rep['ok'] else 'FAIL'}: computed invariants "
             f"{'equal' if rep['ok'] else 'differ from'} the free-module description"
             + ("" if rep["ok"] else f" at bucket {rep['bucket']} (dims {rep['dims']})")]
    by_s: dict[int, int] = {}
    for (s, t) in module.keys():
        by_s[s] = by_s.get(s, 0) + module.f3_dim((s, t))
    lines += [f"  s={s}: F3-dimension {d}" for s, d in sorted(by_s.items())]
    _emit(args, {"check": rep, "module": module.to_json()}, lines)
    return 0 if rep["ok"] else 1


# specseq ---------------------------------------------------------------------------

def _load_e2(spec: str, window: Window) -> tuple[BigradedModule, str | None]:
    path = Path(spec)
    if path.suffix == ".json" or path.exists():
        try:
            mod = BigradedModule.from_json(json.loads(path.read_text()))
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot load E2 page {spec}: {exc}")
        mod.window = window
        return mod, None
    try:
        group = specseq.canonical_group(spec)
    except KeyError as exc:
        raise UsageError(str(exc.args[0]))
    return specseq.e2_page(group, window), group


def _load_rules(spec: str):
    if spec in specseq.RULESETS or Path(spec).exists():
        try:
            return specseq.load_rules(spec)
        except ValueError as exc:
            raise UsageError(str(exc))
    raise UsageError(f"unknown rule set {spec!r}; use one of {', '.join(specseq.RULESETS)} or a path")


def cmd_specseq(args) -> int:
    cfg = _settings(args)
    window = _window(cfg)
    rules = _signed(_load_rules(args.rules), cfg["d5_sign"])
    e2, group = _load_e2(args.e2, window)
    if args.action == "validate":
        rep = specseq.validate_rules(rules, e2)
        _emit(args, rep.to_json(), [rep.summary()] + [f"  {d}" for d in rep.details])
        return 0 if rep.ok else 1
    if group is not None:
        period = specseq.E2_SPECS[group][4]
        res = specseq.run(e2, rules, window, name=f"E^h{group} ^ V(1)", period=period)
    else:
        res = specseq.run(e2, rules, None, name=e2.name)
    table = res.table
    dims = table.dims()
    lines = [f"{table.name}: stems {table.stem_range[0]}..{table.stem_range[1]}, "
             f"{sum(dims.values())} classes"]
    for n in table.stems():
        if dims[n]:
            labels = ", ".join(c.label for c in table.at(n))
            lines.append(f"  {n:>5}  {dims[n]}  {labels}")
    lines += [f"warning: {w}" for w in res.warnings]
    _emit(args, {"table": table.to_json(), "einf": res.einf.to_json(), "warnings": res.warnings}, lines)
    return 0


# resolution ------------------------------------------------------------------------

def cmd_resolution(args) -> int:
    if args.tower not in resolution.TOWERS:
        raise UsageError(f"unknown tower {args.tower!r}; choose from {', '.join(resolution.TOWERS)}")
    window = None
    if args.stem_min is not None or args.stem_max is not None or args.s_max is not None:
        base = {"algebraic-G2^1": Window(-20, 120, 0, 12), "algebraic-G2": Window(-20, 120, 0, 12),
                "topological-sphere": Window(-30, 100, 0, 4), "topological-N": Window(-10, 140, 0, 2)}
        w = base[args.tower]
        window = Window(args.stem_min if args.stem_min is not None else w.stem_min,
                        args.stem_max if args.stem_max is not None else w.stem_max, 0,
                        args.s_max if args.s_max is not None else w.s_max)
    rep = resolution.tower_report(args.tower, window)
    lines = [rep.summary()]
    res = rep.result
    payload = rep.to_json()
    if res is not None:
        by_s: dict[int, dict] = {}
        for c in res.table.classes:
            by_s.setdefault(c.filtration, {}).setdefault(c.stem, 0)
            by_s[c.filtration][c.stem] += c.f3dim
        payload["pages"] = {str(s): {str(n): d for n, d in sorted(v.items())} for s, v in sorted(by_s.items())}
        for s, v in sorted(by_s.items()):
            lines.append(f"  filtration {s}: {sum(v.values())} classes in {len(v)} stems")
    _emit(args, payload, lines)
    return 0 if rep.ok else 1


# picard ----------------------------------------------------------------------------

_CLASS = re.compile(r"^(?:P(?:\^(\d+))?)?\s*\*?\s*(?:Q(?:\^(\d+))?)?$")


def parse_exotic(text: str) -> picard.ExoticClass:
    """'a,b', 'P', 'Q^2', 'P*Q' or '1'."""
    text = text.strip()
    if text in ("1", "S^0", ""):
        return picard.TRIVIAL
    if "," in text:
        try:
            a, b = (int(x) for x in text.split(","))
        except ValueError:
            raise UsageError(f"cannot parse exotic class {text!r}")
        return picard.ExoticClass(a, b)
    m = _CLASS.match(text)
    if not m or not text:
        raise UsageError(f"cannot parse exotic class {text!r}")
    a = (int(m.group(1) or 1) if "P" in text else 0)
    b = (int(m.group(2) or 1) if "Q" in text else 0)
    return picard.ExoticClass(a, b)


def cmd_picard(args) -> int:
    load_config(args.config)
    if args.verb == "smash":
        xs = [parse_exotic(t) for t in args.classes]
        out = picard.TRIVIAL
        for x in xs:
            out = picard.smash(out, x)
        lines = [" ^ ".join(str(x) for x in xs) + f" = {out}",
                 f"g24 shift {picard.g24_shift(out)} (mod 72); "
                 f"{'truly exotic' if out.is_truly_exotic() else 'not truly exotic'}"]
        _emit(args, {"result": [out.a, out.b], "text": str(out), "g24_shift": picard.g24_shift(out),
                     "truly_exotic": out.is_truly_exotic()}, lines)
        return 0
    if args.verb == "solve":
        word = picard.solve_brown_comenetz()
        cands = picard.candidates()
        lines = picard.solution_text(word) + ["candidates:"]
        lines += [f"  a={c['a']} b={c['b']}: {c['reason']}" for c in cands]
        _emit(args, {"a": word.a, "b": word.b, "m": word.m, "d": word.d, "text": str(word),
                     "v1_shift": picard.v1_shift(word), "candidates": cands}, lines)
        return 0
    if args.verb == "shift":
        word = picard.PicardWord(args.m, args.d, args.a, args.b)
        try:
            k = picard.v1_shift(word)
        except picard.NotASuspension as exc:
            _emit(args, {"word": str(word), "error": str(exc)}, [str(exc)])
            return 1
        _emit(args, {"word": str(word), "v1_shift": k}, [f"{word} ^ V(1) = Sigma^{k} V(1) (mod 144)"])
        return 0
    if args.verb == "check-det":
        rep = picard.det_twist_invariance_check()
        _emit(args, rep.to_json(), [rep.summary(),
                                    f"  {len(rep.data['units'])} units x exponents {rep.data['exponents']}"])
        return 0 if rep.ok else 1
    raise UsageError(f"unknown picard verb {args.verb!r}")


# chart -----------------------------------------------------------------------------

def cmd_chart(args) -> int:
    cfg = _settings(argparse.Namespace(config=args.config, output_dir=args.output_dir))
    if args.target not in chart.TARGETS:
        raise UsageError(f"unknown chart {args.target!r}; choose from {', '.join(chart.TARGETS)}")
    try:
        spec = chart.chart_spec(args.target, args.start, args.stop)
    except ValueError as exc:
        raise UsageError(str(exc))
    doc = chart.render(spec, args.format)
    if args.output or args.output_dir:
        out = Path(args.output or f"{args.target}.{args.format}")
        if not out.is_absolute():
            out = Path(cfg["output_dir"]) / out
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(doc)
        dots = sum(spec.table.dims().get(n, 0) for n in range(spec.lo, spec.hi + 1))
        _emit(args, {"target": args.target, "file": str(out), "dots": dots},
              [f"wrote {out} ({dots} dots, stems {spec.lo}..{spec.hi})"])
    elif args.json:
        print(json.dumps({"target": args.target, "table": spec.table.to_json()}, indent=1))
    else:
        sys.stdout.write(doc)
    return 0


# verify ----------------------------------------------------------------------------

def cmd_verify(args) -> int:
    if args.what != "all":
        try:
            selected = [int(x) for x in args.what.split(",")]
        except ValueError:
            raise UsageError("verify takes 'all' or a comma-separated list of criterion numbers")
        if any(k not in verify.CRITERIA for k in selected):
            raise UsageError(f"criteria are numbered 1..{len(verify.CRITERIA)}")
    else:
        selected = None
    rows, ok = [], True
    for k, rep, secs in verify.run_all(selected):
        ok &= rep.ok
        rows.append((k, rep, secs))
    lines = [f"{'#':>3}  {'result':<6} {'time':>6}  criterion"]
    for k, rep, secs in rows:
        lines.append(f"{k:>3}  {'PASS' if rep.ok else 'FAIL':<6} {secs:>5.1f}s  {rep.name}")
        if not rep.ok:
            lines += [f"       {d}" for d in rep.details[:3]]
            if len(rep.details) > 3:
                lines.append(f"       (+{len(rep.details) - 3} more)")
    passed = sum(r.ok for _, r, _ in rows)
    lines.append(f"{passed}/{len(rows)} criteria pass")
    _emit(args, {"ok": ok, "criteria": {str(k): {**r.to_json(), "seconds": round(s, 2)}
                                        for k, r, s in rows}}, lines)
    return 0 if ok else 1


# parser ----------------------------------------------------------------------------

def _range(text: str) -> tuple[int, int]:
    m = re.match(r"^\s*(-?\d+)\s*(?:\.\.|:)\s*(-?\d+)\s*$", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {lo}..{hi}")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--config", help="TOML file with window bounds, d5_sign and output_dir")

    win = argparse.ArgumentParser(add_help=False)
    win.add_argument("--stem-min", dest="stem_min", type=int)
    win.add_argument("--stem-max", dest="stem_max", type=int)
    win.add_argument("--s-max", dest="s_max", type=int)

    p = argparse.ArgumentParser(prog="bcdual", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cohomology", parents=[common], help="invariants of a finite subgroup")
    c.add_argument("subgroup", help=", ".join(cohomology.SUBGROUPS))
    c.add_argument("--s-max", dest="s_max", type=int)
    c.add_argument("--t-range", dest="t_range", type=_range, default=(-48, 48), help="LO..HI (default -48..48)")
    c.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("specseq", help="spectral sequences from rule files")
    ssub = s.add_subparsers(dest="action", required=True)
    for action, text in (("run", "compute all pages and print the homotopy table"),
                         ("validate", "check bidegrees, d o d = 0 and periodicities")):
        a = ssub.add_parser(action, parents=[common, win], help=text)
        a.add_argument("rules", help="g24, g20, resolution, resolution-zeta or a rule file")
        a.add_argument("e2", help="G24, G12, SD16, G2^0, G2^1, G2 or a module JSON file")
        a.set_defaults(func=cmd_specseq, output_dir=None)

    r = sub.add_parser("resolution", parents=[common, win], help="centralizer resolution towers")
    r.add_argument("tower", help=", ".join(resolution.TOWERS))
    r.set_defaults(func=cmd_resolution)

    k = sub.add_parser("picard", help="exotic Picard group arithmetic")
    ksub = k.add_subparsers(dest="verb", required=True)
    sm = ksub.add_parser("smash", parents=[common], help="smash exotic classes (a,b or P^a*Q^b)")
    sm.add_argument("classes", nargs="+")
    ksub.add_parser("solve", parents=[common], help="solve for the Brown-Comenetz dual")
    ksub.add_parser("check-det", parents=[common], help="determinant twist invariance")
    sh = ksub.add_parser("shift", parents=[common], help="V(1) shift of S^m ^ S<det>^d ^ P^a ^ Q^b")
    for name in ("m", "d", "a", "b"):
        sh.add_argument(name, type=int)
    k.set_defaults(func=cmd_picard)

    ch = sub.add_parser("chart", parents=[common], help="text or SVG chart of a homotopy table")
    ch.add_argument("target", help=", ".join(chart.TARGETS))
    ch.add_argument("--format", choices=("text", "svg"), default="text")
    ch.add_argument("-o", "--output")
    ch.add_argument("--output-dir", dest="output_dir")
    ch.add_argument("--from", dest="start", type=int)
    ch.add_argument("--to", dest="stop", type=int)
    ch.set_defaults(func=cmd_chart)

    v = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    v.add_argument("what", nargs="?", default="all", help="'all' or e.g. 4,7")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"bcdual: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
