"""
The ``forestcalc`` command.

Results go to stdout, diagnostics to stderr. Exit status is 0 on success,
2 on malformed or out-of-domain input, 1 when ``selftest`` finds a failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .applications import (AwReport, a_w, a_w_table, bilabeled_to_lbs, bilabeled_trees,
                           mixed_eulerian_parking_count, multivariate_mixed_eulerian)
from .bases import (BASES, BasisExpansion, dual_forest_polynomial, expand_in_basis,
                    forest_polynomial, schubert, slide_polynomial)
from .combinatorics import NVector, ParseError, Permutation, format_word, parse_word, reduced_words
from .correspondence import (format_support, format_trace, insertion_trace, omega_parking,
                             partition_classes, wf_correspondence)
from .forest import IndexedForest
from .polynomial import Polynomial
from .quotient import AbbRepresentative, divided_symmetrization, reduce_mod_qsym

CATALOG = """\
subcommands:
  schubert --perm W                    Schubert polynomial
  forest --c LIST [--route R]          forest polynomial of the forest with code LIST
  slide (--c LIST | --word W)          slide polynomial
  dual-forest --c LIST --n N           dual forest polynomial in x1..xN
  expand --basis {forest,slide,schubert,monomial} INPUT
  reduce --n N INPUT [--route R]       ABB representative modulo QSym+_N
  ds --n N INPUT [--route R]           divided symmetrization of a degree N-1 input
  aw (--perm W | --table N) [--route {parking,ds,forest,all}]
  parking --word W [--trace]           parking support of a word
  insert --word W [--trace]            forest insertion, P and Q symbols
  classes --perm W                     reduced words of W^-1 grouped by P-symbol
  mixed-eulerian --c LIST [--at-ones | --q Q]
  bilabeled --c LIST                   bilabeled trees and their LBS images
  selftest --max-n N                   bundled invariant suites

INPUT is one of --poly P, --forest LIST, --perm W, --slide LIST.
Every subcommand accepts --format {text,json}.
"""


class UsageError(ValueError):
    pass


# -- input helpers -----------------------------------------------------------

def _code(text: str) -> NVector:
    return NVector.parse(text)


def _forest(text: str) -> IndexedForest:
    return IndexedForest.from_code(_code(text))


def _perm(text: str) -> Permutation:
    return Permutation.parse(text)


def _content(text: str) -> tuple[int, ...]:
    # a content keeps its trailing zeros, so count the parts literally
    c = _code(text)
    if not c.is_positive():
        raise UsageError("content must be indexed from 1")
    body = text.strip().strip("[]()")
    if "{" in body or not body:
        return c.as_tuple()
    return c.as_tuple(len(body.split(",")))


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(text, 0, "a rational number p or p/q") from None


def _poly_input(args) -> Polynomial:
    given = [k for k in ("poly", "forest", "perm", "slide") if getattr(args, k, None) is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --poly, --forest, --perm, --slide")
    k = given[0]
    if k == "poly":
        return Polynomial.parse(args.poly)
    if k == "forest":
        return forest_polynomial(_forest(args.forest))
    if k == "perm":
        return schubert(_perm(args.perm))
    return slide_polynomial(_code(args.slide))


def _value_json(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def _value_text(x) -> str:
    return str(Fraction(x))


def _labeled_json(P) -> dict:
    return {"forest": list(P.forest.code().as_tuple()),
            "labels": [str(x) for x in P.labels]}


# -- subcommands -------------------------------------------------------------
# each returns (text lines, json payload)

def cmd_schubert(args):
    p = schubert(_perm(args.perm))
    return [str(p)], {"kind": "polynomial", **p.to_json()}


def cmd_forest(args):
    p = forest_polynomial(_forest(args.c), args.route)
    return [str(p)], {"kind": "polynomial", **p.to_json()}


def cmd_slide(args):
    if (args.c is None) == (args.word is None):
        raise UsageError("give exactly one of --c, --word")
    p = slide_polynomial(_code(args.c) if args.c is not None else parse_word(args.word))
    return [str(p)], {"kind": "polynomial", **p.to_json()}


def cmd_dual_forest(args):
    p = dual_forest_polynomial(_forest(args.c), args.n)
    return [str(p)], {"kind": "polynomial", **p.to_json()}


def cmd_expand(args):
    e = expand_in_basis(_poly_input(args), args.basis)
    return [str(e)], {"kind": "expansion", **e.to_json()}


def cmd_reduce(args):
    r = reduce_mod_qsym(_poly_input(args), args.n, args.route)
    return [str(r)], {"kind": "abb", **r.to_json()}


def cmd_ds(args):
    v = divided_symmetrization(_poly_input(args), args.n, args.route)
    return [_value_text(v)], {"kind": "value", **_value_json(v)}


def cmd_aw(args):
    if (args.perm is None) == (args.table is None):
        raise UsageError("give exactly one of --perm, --table")
    if args.table is not None:
        if args.route != "all":
            raise UsageError("--table always runs all routes")
        rows = a_w_table(args.table)
        head = "\t".join(["w", "a_w", "parking", "ds", "forest", "witnesses"])
        return [head] + [r.tsv() for r in rows], {"kind": "aw-table",
                                                  "rows": [r.to_json() for r in rows]}
    r = a_w(_perm(args.perm), args.route, args.n)
    lines = [str(r.value),
             "witnesses\t" + " ".join(format_word(x) for x in r.witnesses),
             "routes\t" + " ".join(f"{k}={v}" for k, v in r.routes.items())]
    return lines, {"kind": "aw", **r.to_json()}


def cmd_parking(args):
    word = parse_word(args.word)
    support = omega_parking(word)
    status = "parking" if support == frozenset(range(1, len(word) + 1)) else "not-parking"
    lines = []
    steps = []
    if args.trace:
        for k in range(1, len(word) + 1):
            s = format_support(omega_parking(word[:k]))
            lines.append(f"{word[k - 1]}\t{s}")
            steps.append(s)
    lines.append(f"{format_support(support)} {status}")
    payload = {"kind": "parking", "word": format_word(word), "support": sorted(support),
               "parking": status == "parking"}
    if args.trace:
        payload["trace"] = steps
    return lines, payload


def cmd_insert(args):
    word = parse_word(args.word)
    P, Q = wf_correspondence(word)
    lines = format_trace(insertion_trace(word)) if args.trace else []
    lines += [f"P\t{P.forest.code()}\t" + " ".join(map(str, P.labels)),
              f"Q\t{Q.forest.code()}\t" + " ".join(map(str, Q.labels))]
    payload = {"kind": "insertion", "word": format_word(word), "P": _labeled_json(P),
               "Q": _labeled_json(Q)}
    if args.trace:
        payload["trace"] = [{"letter": str(s.letter), "case": s.case,
                             "support": sorted(s.support)} for s in insertion_trace(word)]
    return lines, payload


def cmd_classes(args):
    w = _perm(args.perm)
    classes = partition_classes(reduced_words(w.inverse()))
    lines = []
    out = []
    for P, ws in classes.items():
        words = [format_word(x) for x in ws]
        lines.append(f"{P.forest.code()}\t" + " ".join(map(str, P.labels)) + "\t" + " ".join(words))
        out.append({"P": _labeled_json(P), "words": words})
    return lines, {"kind": "classes", "perm": str(w), "classes": out}


def cmd_mixed_eulerian(args):
    c = _content(args.c)
    m = multivariate_mixed_eulerian(c, args.route)
    payload = {"kind": "mixed-eulerian", **m.to_json()}
    if args.at_ones:
        return [str(m.value_at_ones())], payload
    if args.q is not None:
        v = m.at_q(_fraction(args.q))
        payload["at_q"] = {"q": str(_fraction(args.q)), **_value_json(v)}
        return [_value_text(v)], payload
    return [str(m.poly)], payload


def cmd_bilabeled(args):
    c = _content(args.c)
    trees = bilabeled_trees(c)
    lines = []
    out = []
    for t in trees:
        P = bilabeled_to_lbs(t, c)
        lines.append(f"{t}\t->\t" + " ".join(map(str, P.labels)))
        out.append({"labels": list(t.labels), "lbs": _labeled_json(P)})
    if args.check:
        count = mixed_eulerian_parking_count(c)
        lines.append(f"count {len(trees)}, parking words {count}")
    return lines, {"kind": "bilabeled", "c": list(c), "trees": out}


def cmd_selftest(args):
    from . import selftest
    lines: list[str] = []
    ok = selftest.run(args.max_n, out=lines.append)
    args._status = 0 if ok else 1
    return lines, {"kind": "selftest", "ok": ok, "suites": lines}


# -- JSON loading --------------------------------------------------------------

def load_json(data):
    """Rebuild the object behind a JSON payload emitted by this command."""
    if isinstance(data, str):
        data = json.loads(data)
    kind = data.get("kind")
    if kind == "polynomial":
        return Polynomial.from_json(data)
    if kind == "expansion":
        return BasisExpansion.from_json(data)
    if kind == "abb":
        return AbbRepresentative.from_json(data)
    if kind == "value":
        return Fraction(data["num"], data["den"])
    if kind == "aw":
        return AwReport.from_json(data)
    if kind == "aw-table":
        return [AwReport.from_json(r) for r in data["rows"]]
    return data


def dump_json(kind: str, obj) -> dict:
    """Inverse of :func:`load_json` for the typed kinds."""
    if kind == "value":
        return {"kind": kind, **_value_json(obj)}
    if kind == "aw-table":
        return {"kind": kind, "rows": [r.to_json() for r in obj]}
    if isinstance(obj, dict):
        return obj
    return {"kind": kind, **obj.to_json()}


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="forestcalc", description="Forest polynomials, "
                                "quasisymmetric coinvariants and the coefficients a_w.",
                                epilog=CATALOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--version", action="version", version=f"forestcalc {__version__}")
    sub = p.add_subparsers(dest="command", metavar="SUBCOMMAND")

    def add(name, fn, help):
        sp = sub.add_parser(name, parents=[fmt], help=help)
        sp.set_defaults(fn=fn)
        return sp

    def add_input(sp):
        sp.add_argument("--poly", help="polynomial such as '2*x1^2*x3 - 1/3*x2'")
        sp.add_argument("--forest", help="forest polynomial of the forest with this code")
        sp.add_argument("--perm", help="Schubert polynomial of this permutation")
        sp.add_argument("--slide", help="slide polynomial of this code")

    sp = add("schubert", cmd_schubert, "Schubert polynomial")
    sp.add_argument("--perm", required=True)

    sp = add("forest", cmd_forest, "forest polynomial")
    sp.add_argument("--c", "--forest", dest="c", required=True, help="forest code")
    sp.add_argument("--route", choices=("definition", "slides", "recurrence"), default="recurrence")

    sp = add("slide", cmd_slide, "slide polynomial")
    sp.add_argument("--c")
    sp.add_argument("--word")

    sp = add("dual-forest", cmd_dual_forest, "dual forest polynomial")
    sp.add_argument("--c", "--forest", dest="c", required=True)
    sp.add_argument("--n", type=int, required=True)

    sp = add("expand", cmd_expand, "change of basis")
    sp.add_argument("--basis", choices=BASES, required=True)
    add_input(sp)

    sp = add("reduce", cmd_reduce, "reduce modulo QSym+_n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--route", choices=("forest", "linear"), default="forest")
    add_input(sp)

    sp = add("ds", cmd_ds, "divided symmetrization")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--route", choices=("direct", "quotient"), default="direct")
    add_input(sp)

    sp = add("aw", cmd_aw, "permutahedral Schubert coefficient a_w")
    sp.add_argument("--perm")
    sp.add_argument("--table", type=int, metavar="N")
    sp.add_argument("--n", type=int)
    sp.add_argument("--route", choices=("parking", "ds", "forest", "all"), default="all")

    sp = add("parking", cmd_parking, "parking support of a word")
    sp.add_argument("--word", required=True)
    sp.add_argument("--trace", action="store_true")

    sp = add("insert", cmd_insert, "forest insertion")
    sp.add_argument("--word", required=True)
    sp.add_argument("--trace", action="store_true")

    sp = add("classes", cmd_classes, "insertion classes of Red(w^-1)")
    sp.add_argument("--perm", required=True)

    sp = add("mixed-eulerian", cmd_mixed_eulerian, "multivariate mixed Eulerian number")
    sp.add_argument("--c", required=True)
    sp.add_argument("--route", choices=("forest", "linear", "lbs"), default="forest")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--at-ones", action="store_true")
    g.add_argument("--q")

    sp = add("bilabeled", cmd_bilabeled, "bilabeled trees")
    sp.add_argument("--c", required=True)
    sp.add_argument("--check", action="store_true", help="also count parking words")

    sp = add("selftest", cmd_selftest, "run the bundled invariant suites")
    sp.add_argument("--max-n", type=int, default=4)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        print("forestcalc: error: a subcommand is required", file=sys.stderr)
        return 2
    try:
        lines, payload = args.fn(args)
    except ValueError as exc:
        # ParseError subclasses ValueError and carries position and expectation
        print(f"forestcalc {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        sys.stdout.write("".join(line + "\n" for line in lines))
    return getattr(args, "_status", 0)


if __name__ == "__main__":
    sys.exit(main())
