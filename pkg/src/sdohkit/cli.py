"""Command-line entry point.

Exit status: 0 success, 1 domain finding (inconsistent knowledge base),
2 usage, parse or validation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import coverage, encoder, measures, ofn, reasoner, verbalize
from .kb import KnowledgeBase, KnowledgeBaseError

ENV_ONTOLOGY = "SDOHO_ONTOLOGY"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    ontology: Optional[str] = None
    strict: bool = True
    mode: str = "unanimous"
    radius_km: float = measures.DEFAULT_RFEI_RADIUS_KM
    fmt: str = "text"
    output: Optional[str] = None


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load(path: str, layers: Sequence[str], strict: bool) -> KnowledgeBase:
    kb = ofn.load_file(path, strict=strict)
    for layer in layers:
        doc = ofn.parse_file(layer)
        kb = kb.overlay(doc.axioms, doc.prefixes, strict=strict)
    return kb


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _ontology_and(args, what: str) -> tuple[str, str]:
    files = args.files
    if len(files) == 2:
        return files[0], files[1]
    if len(files) == 1 and os.environ.get(ENV_ONTOLOGY):
        return os.environ[ENV_ONTOLOGY], files[0]
    raise UsageError(f"expected <ontology> <{what}> (or set {ENV_ONTOLOGY})")


def _ontology(args) -> str:
    if args.file:
        return args.file
    if os.environ.get(ENV_ONTOLOGY):
        return os.environ[ENV_ONTOLOGY]
    raise UsageError(f"no ontology file given and {ENV_ONTOLOGY} is unset")


def _home(text: str) -> tuple[float, float]:
    try:
        lat, lon = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("home must be 'lat,lon'") from None
    return lat, lon


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, stdout text)


def cmd_parse(args, cfg: RunConfig):
    doc = ofn.parse_file(_ontology(args))
    ofn.load(doc, strict=cfg.strict)
    return 0, f"{len(doc.axioms)} axioms\n"


def cmd_stats(args, cfg: RunConfig):
    st = ofn.load_file(_ontology(args), strict=cfg.strict).stats()
    rows = st.as_rows()
    if cfg.fmt == "csv":
        return 0, _csv([("metric", "value"), *rows])
    lines = [f"{k}: {v}" for k, v in rows]
    lines.append("top_level: " + ", ".join(c.display for c in st.top_level))
    return 0, "\n".join(lines) + "\n"


def cmd_check(args, cfg: RunConfig):
    report = reasoner.check_consistency(_load(_ontology(args), args.layers, cfg.strict))
    if cfg.fmt == "csv":
        rows = [("property", "subject", "object")]
        rows += [(c.prop.display, c.subject.display, c.object.display) for c in report.clashes]
        return (0 if report.consistent else 1), _csv(rows)
    if report.consistent:
        return 0, "consistent\n"
    lines = [f"inconsistent: {len(report.clashes)} clash(es)"]
    lines += [f"clash: {c}" for c in report.clashes]
    return 1, "\n".join(lines) + "\n"


def cmd_reason(args, cfg: RunConfig):
    kb = _load(_ontology(args), args.layers, cfg.strict)
    index = reasoner.classify(kb)
    result = reasoner.realize(kb, index)
    for w in result.warnings:
        print(f"warning: {w}", file=sys.stderr)
    rows = []
    for ind in sorted(result.types):
        for cls, tag in sorted(result.types[ind].items()):
            rows.append((ind.display, cls.display, tag))
    if cfg.fmt == "csv":
        return 0, _csv([("individual", "class", "provenance"), *rows])
    out = [f"{i} : {c} [{'asserted' if t == reasoner.ASSERTED else 'inferred'}]" for i, c, t in rows]
    return 0, "".join(line + "\n" for line in out)


def cmd_verbalize(args, cfg: RunConfig):
    stmts = verbalize.verbalize_all(ofn.load_file(_ontology(args), strict=cfg.strict))
    if cfg.fmt == "csv":
        return 0, verbalize.statements_csv(stmts)
    return 0, verbalize.statements_tsv(stmts)


def cmd_agree(args, cfg: RunConfig):
    matrix = verbalize.read_verdicts(_read(args.verdicts))
    s = verbalize.score_agreement(matrix, cfg.mode)
    if cfg.fmt == "csv":
        return 0, _csv([("mode", "statements", "evaluators", "inter_evaluator", "rational"),
                        (s.mode, s.statements, s.evaluators, f"{s.inter_evaluator:.4f}",
                         f"{s.rational:.4f}")])
    return 0, (f"mode: {s.mode}\nstatements: {s.statements}\nevaluators: {s.evaluators}\n"
               f"inter_evaluator: {s.inter_evaluator:.4f}\nrational: {s.rational:.4f}\n")


def cmd_encode(args, cfg: RunConfig):
    onto, record_path = _ontology_and(args, "record")
    kb = ofn.load_file(onto, strict=cfg.strict)
    bundle = encoder.encode(encoder.parse_record(_read(record_path)), kb, base=args.base)
    for w in bundle.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return 0, bundle.to_ofn(kb.prefixes)


def _fmt_ratio(r: measures.RfeiResult) -> str:
    return r.status if r.ratio is None or r.status == "infinite" else f"{r.ratio:.4f}"


def cmd_measure(args, cfg: RunConfig):
    shops = measures.read_establishments(_read(args.establishments))
    if args.measure == "rfei":
        r = measures.rfei(args.home, shops, cfg.radius_km)
        if cfg.fmt == "csv":
            return 0, _csv([("unhealthy", "healthy", "ratio", "radius_km"),
                            (r.unhealthy, r.healthy, _fmt_ratio(r), r.radius_km)])
        return 0, (f"unhealthy: {r.unhealthy}\nhealthy: {r.healthy}\n"
                   f"rfei: {_fmt_ratio(r)}\nradius_km: {r.radius_km}\n")
    v = measures.classify_food_swamp(args.home, shops, measures.SwampConfig(cfg.radius_km))
    if cfg.fmt == "csv":
        return 0, _csv([("food_swamp", "rfei", "corner_stores", "triggered"),
                        (int(v.is_food_swamp), _fmt_ratio(v.rfei), v.corner_stores,
                         ";".join(v.triggered))])
    return 0, (f"food_swamp: {'yes' if v.is_food_swamp else 'no'}\n"
               f"rfei: {_fmt_ratio(v.rfei)} ({v.rfei.unhealthy} unhealthy / {v.rfei.healthy} healthy "
               f"within {v.rfei.radius_km} km)\n"
               f"corner_stores_within_{measures.CORNER_RADIUS_KM}_km: {v.corner_stores}\n"
               f"triggered: {', '.join(v.triggered) or 'none'}\n")


def cmd_coverage(args, cfg: RunConfig):
    onto, ann_path = _ontology_and(args, "annotations")
    kb = ofn.load_file(onto, strict=cfg.strict)
    report = coverage.match_annotations(kb, coverage.read_annotations(_read(ann_path)))
    return 0, coverage.render_report(report, cfg.fmt, kb)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv"), default="text", dest="fmt")
    common.add_argument("-o", "--output", help="write results here instead of stdout")
    common.add_argument("--lax", action="store_true", help="skip declaration checks")

    p = argparse.ArgumentParser(prog="sdohkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    for name, func, help_ in (("parse", cmd_parse, "validate a .ofn file and count axioms"),
                              ("stats", cmd_stats, "ontology statistics"),
                              ("verbalize", cmd_verbalize, "render logical axioms as sentences")):
        add(name, func, help_).add_argument("file", nargs="?")
    for name, func, help_ in (("check", cmd_check, "negative-assertion consistency"),
                              ("reason", cmd_reason, "print asserted and inferred types")):
        sp = add(name, func, help_)
        sp.add_argument("file", nargs="?")
        sp.add_argument("--with", action="append", default=[], dest="layers", metavar="BUNDLE",
                        help="overlay an instance bundle (repeatable)")

    sp = add("agree", cmd_agree, "agreement scores for a verdict matrix")
    sp.add_argument("verdicts")
    sp.add_argument("--mode", choices=("unanimous", "majority"), default="unanimous")

    sp = add("encode", cmd_encode, "encode a patient record as a .ofn bundle")
    sp.add_argument("files", nargs="+", metavar="ontology record")
    sp.add_argument("--base", type=int, default=1, help="first identification number")

    sp = add("measure", cmd_measure, "food environment measures")
    sp.add_argument("measure", choices=("rfei", "swamp"))
    sp.add_argument("establishments")
    sp.add_argument("--home", type=_home, required=True, metavar="LAT,LON")
    sp.add_argument("--radius", type=float, default=measures.DEFAULT_RFEI_RADIUS_KM,
                    help="RFEI radius in km (default %(default)s)")

    sp = add("coverage", cmd_coverage, "coverage of an annotation set")
    sp.add_argument("files", nargs="+", metavar="ontology annotations")
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = RunConfig(
        ontology=getattr(args, "file", None),
        strict=not args.lax,
        mode=getattr(args, "mode", "unanimous"),
        radius_km=getattr(args, "radius", measures.DEFAULT_RFEI_RADIUS_KM),
        fmt=args.fmt,
        output=args.output,
    )
    logging.basicConfig(level=logging.ERROR, format="%(levelname)s: %(message)s")
    try:
        code, text = args.func(args, cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"sdohkit: error: {exc}", file=sys.stderr)
        return 2
    except (ofn.ParseError, encoder.RecordError, encoder.EncodeError,
            verbalize.VerdictError, KnowledgeBaseError, ValueError, OSError) as exc:
        print(f"sdohkit: error: {exc}", file=sys.stderr)
        return 2
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
