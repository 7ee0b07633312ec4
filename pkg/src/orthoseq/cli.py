"""Command line interface.

Subcommands
-----------
generate   construct a certified collection for a family
verify     run the brute-force oracle on given words, report pass/fail
enumerate  list all circular words covering a small language exactly once
export     write a word graph as DOT or JSON

Exit codes: 0 success, 1 a verified property does not hold, 2 usage or
parameter errors (including exceeded search guards), 3 internal certification
failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from .alphabet import (
    Alphabet,
    LanguageSpec,
    Word,
    default_alphabet,
    dna_alphabet,
    expand_language,
)
from .constructions import ConstructionResult, OrthogonalCollectionRequest, construct
from .errors import CertificationError, OrthoseqError, ParameterOutOfRange
from .graphs import build_restricted_graph
from . import verify as verify_mod

FAMILIES = (
    "de-bruijn",
    "kautz",
    "balanced-de-bruijn",
    "balanced-kautz",
    "fixed-weight-de-bruijn",
    "fixed-weight-kautz",
)

# short spellings accepted on the command line
FAMILY_ALIASES = {
    "ortho-db": "de-bruijn",
    "ortho-kautz": "kautz",
    "balanced-db": "balanced-de-bruijn",
    "fw-db": "fixed-weight-de-bruijn",
    "fw-kautz": "fixed-weight-kautz",
}

PROPERTIES = (
    "de-bruijn",
    "kautz",
    "balanced",
    "balanced-kautz",
    "self-orthogonal",
    "orthogonal",
    "fixed-weight",
    "fixed-weight-kautz",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orthoseq",
        description="Construct and verify orthogonal de Bruijn and Kautz sequence collections.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    alpha = argparse.ArgumentParser(add_help=False)
    alpha.add_argument("--sigma", type=int, help="alphabet size (digits 0-9a-z)")
    alpha.add_argument("--alphabet", help="explicit alphabet, one character per symbol")
    alpha.add_argument("--dna", action="store_true", help="alphabet ATCG with W = {C, G}")
    alpha.add_argument("--weighted", help="characters forming the weighted class W")

    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--output", "-o", help="write to this file instead of stdout")

    gen = sub.add_parser("generate", parents=[alpha, out], help="construct a collection")
    gen.add_argument("--family", choices=FAMILIES + tuple(FAMILY_ALIASES), required=True)
    gen.add_argument("-k", type=int, default=2, help="window order k (default 2)")
    gen.add_argument("--ell", type=int, default=1, help="orthogonality level (default 1)")
    gen.add_argument("-c", type=int, help="number of sequences (balanced families)")
    gen.add_argument("-b", type=int, help="occurrences of each k-word (balanced families)")
    gen.add_argument("--weight", type=int, help="target weight w (fixed-weight family)")
    gen.add_argument(
        "--band", type=int, nargs=2, metavar=("MIN", "MAX"), help="weight band (fixed-weight Kautz)"
    )
    gen.add_argument("--format", choices=("text", "json", "csv", "fasta"), default="text")
    gen.set_defaults(func=cmd_generate)

    ver = sub.add_parser("verify", parents=[alpha, out], help="check properties of given words")
    ver.add_argument("--property", choices=PROPERTIES, required=True)
    ver.add_argument("-k", type=int, default=2, help="window order k (default 2)")
    ver.add_argument("--ell", type=int, help="also check ell-orthogonality of the collection")
    ver.add_argument("-b", type=int, help="balance parameter")
    ver.add_argument("--weight", type=int, help="target weight w (fixed-weight)")
    ver.add_argument("--band", type=int, nargs=2, metavar=("MIN", "MAX"))
    ver.add_argument("--word", action="append", default=[], help="a word (repeatable)")
    ver.add_argument("--words-file", help="file with one word per line, # comments allowed")
    ver.add_argument("--format", choices=("text", "json"), default="text")
    ver.set_defaults(func=cmd_verify)

    enu = sub.add_parser(
        "enumerate", parents=[alpha, out], help="list all coverings of a small language"
    )
    enu.add_argument("-k", type=int, required=True, help="word length of the language")
    enu.add_argument("--kautz", action="store_true", help="no two adjacent equal symbols")
    enu.add_argument("--band", type=int, nargs=2, metavar=("MIN", "MAX"), help="weight band")
    enu.add_argument("--max-results", type=int, default=10_000)
    enu.add_argument("--format", choices=("text", "json", "csv", "fasta"), default="text")
    enu.set_defaults(func=cmd_enumerate)

    exp = sub.add_parser("export", parents=[alpha, out], help="write the word graph")
    exp.add_argument("-k", type=int, required=True, help="word length (arcs are k-words)")
    exp.add_argument("--kautz", action="store_true")
    exp.add_argument("--band", type=int, nargs=2, metavar=("MIN", "MAX"))
    exp.add_argument("--format", choices=("dot", "json"), default="dot")
    exp.set_defaults(func=cmd_export)

    return parser


# ----------------------------------------------------------------------
# shared argument handling


def _alphabet_from_args(args, required: bool = True) -> Optional[Alphabet]:
    if args.dna and (args.sigma not in (None, 4)):
        raise ParameterOutOfRange("--dna fixes sigma = 4")
    if args.alphabet is not None and args.sigma is not None and len(args.alphabet) != args.sigma:
        raise ParameterOutOfRange("--sigma disagrees with --alphabet length")
    if args.dna:
        base = dna_alphabet()
        tokens = base.tokens
        weighted = base.weighted
    elif args.alphabet is not None:
        tokens = tuple(args.alphabet)
        weighted = frozenset()
    elif args.sigma is not None:
        tokens = default_alphabet(args.sigma).tokens
        weighted = frozenset()
    else:
        if required:
            raise ParameterOutOfRange("specify an alphabet via --sigma, --alphabet, or --dna")
        return None
    if args.weighted is not None:
        index = {t: i for i, t in enumerate(tokens)}
        try:
            weighted = frozenset(index[ch] for ch in args.weighted)
        except KeyError as exc:
            raise ParameterOutOfRange(f"weighted symbol {exc.args[0]!r} not in alphabet") from None
    return Alphabet(tokens, weighted)


def _emit(text: str, args) -> None:
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _read_words(args, alphabet: Alphabet) -> list[tuple[int, ...]]:
    words = [alphabet.parse(w) for w in args.word]
    if args.words_file:
        for line in Path(args.words_file).read_text().splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                words.append(alphabet.parse(line))
    if not words:
        raise ParameterOutOfRange("no words given; use --word or --words-file")
    return words


def _render_result(result: ConstructionResult, args) -> str:
    alphabet = result.alphabet
    rendered = [alphabet.render(w) for w in result.words]
    if args.format == "text":
        return "".join(w + "\n" for w in rendered)
    if args.format == "csv":
        lines = ["index,length,word"]
        lines += [f"{i},{len(w)},{r}" for i, (w, r) in enumerate(zip(result.words, rendered))]
        return "\n".join(lines) + "\n"
    if args.format == "fasta":
        # circular sequences are linearized at their canonical rotation
        meta = " ".join(f"{k}={v}" for k, v in sorted(result.parameters.items()))
        caveat = "circular; linearized at canonical rotation"
        return "".join(
            ">{}_{} {} [{}]\n{}\n".format(
                result.family,
                i,
                meta,
                caveat,
                alphabet.render(Word(tuple(w), circular=True).canonical()),
            )
            for i, w in enumerate(result.words)
        )
    doc = {
        "family": result.family,
        "parameters": {k: v for k, v in sorted(result.parameters.items())},
        "sigma": result.sigma,
        "k": result.k,
        "alphabet": list(alphabet.tokens),
        "weighted": sorted(alphabet.weighted),
        "count": len(result.words),
        "lengths": [len(w) for w in result.words],
        "words": rendered,
        "info": result.info,
        "certificate": [r.to_json_dict(alphabet) for r in result.certificate],
        "provenance": result.provenance,
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ----------------------------------------------------------------------
# subcommands


def cmd_generate(args) -> int:
    args.family = FAMILY_ALIASES.get(args.family, args.family)
    fixed = args.family in ("fixed-weight-de-bruijn", "fixed-weight-kautz")
    alphabet = _alphabet_from_args(args, required=fixed or args.family in ("de-bruijn", "kautz"))
    if fixed and (alphabet is None or not alphabet.weighted or not alphabet.unweighted):
        raise ParameterOutOfRange(
            "fixed-weight families need an alphabet with a weighted class (--dna or --weighted)"
        )
    request = OrthogonalCollectionRequest(
        family=args.family,
        sigma=alphabet.sigma if alphabet else None,
        k=args.k,
        ell=args.ell,
        c=args.c,
        b=args.b,
        weight=args.weight,
        weight_band=tuple(args.band) if args.band else None,
        alphabet=alphabet,
    )
    result = construct(request)
    _emit(_render_result(result, args), args)
    return 0


def cmd_verify(args) -> int:
    alphabet = _alphabet_from_args(args)
    sigma = alphabet.sigma
    k = args.k
    words = _read_words(args, alphabet)
    reports = []
    prop = args.property
    if prop in ("fixed-weight", "fixed-weight-kautz"):
        if prop == "fixed-weight":
            if args.weight is None:
                raise ParameterOutOfRange("--weight is required for fixed-weight")
            band = (args.weight - 1, args.weight)
            kind = "full"
        else:
            if args.band is None:
                raise ParameterOutOfRange("--band is required for fixed-weight-kautz")
            band = tuple(args.band)
            kind = "kautz"
        if not alphabet.weighted:
            raise ParameterOutOfRange("weight properties need a weighted class")
        spec = LanguageSpec(kind, k, min_weight=band[0], max_weight=band[1])
        language = expand_language(spec, alphabet)
        reports += [verify_mod.is_fixed_weight_db(w, language) for w in words]
    elif prop == "de-bruijn":
        reports += [verify_mod.is_de_bruijn(w, sigma, k) for w in words]
    elif prop == "kautz":
        reports += [verify_mod.is_kautz_word(w, sigma, k) for w in words]
    elif prop == "balanced":
        if args.b is None:
            raise ParameterOutOfRange("-b is required for balanced")
        reports += [verify_mod.is_b_balanced(w, sigma, k, args.b) for w in words]
        reports += [verify_mod.is_self_orthogonal(w, k) for w in words]
    elif prop == "balanced-kautz":
        if args.b is None:
            raise ParameterOutOfRange("-b is required for balanced-kautz")
        reports += [verify_mod.is_b_balanced_kautz(w, sigma, k, args.b) for w in words]
        reports += [verify_mod.is_self_orthogonal(w, k) for w in words]
    elif prop == "self-orthogonal":
        reports += [verify_mod.is_self_orthogonal(w, k) for w in words]
    if prop == "orthogonal" or args.ell is not None:
        reports.append(verify_mod.is_l_orthogonal(words, k, args.ell or 1))

    if args.format == "json":
        doc = [r.to_json_dict(alphabet) for r in reports]
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args)
    else:
        lines = []
        for r in reports:
            status = "PASS" if r.holds else "FAIL"
            extra = "" if r.holds else f"  witness={r.to_json_dict(alphabet).get('witness')!r}"
            lines.append(f"{status}  {r.property}{extra}")
        _emit("".join(line + "\n" for line in lines), args)
    return 0 if all(r.holds for r in reports) else 1


def _language_from_args(args, alphabet: Alphabet):
    kind = "kautz" if args.kautz else "full"
    band = tuple(args.band) if args.band else (None, None)
    spec = LanguageSpec(kind, args.k, min_weight=band[0], max_weight=band[1])
    language = expand_language(spec, alphabet)
    if not language:
        raise ParameterOutOfRange("the requested language is empty")
    return language


def cmd_enumerate(args) -> int:
    alphabet = _alphabet_from_args(args)
    language = _language_from_args(args, alphabet)
    found = verify_mod.enumerate_db_words(language, max_results=args.max_results)
    rendered = [alphabet.render(w) for w in found]
    if args.format == "json":
        doc = {
            "k": args.k,
            "language_size": len(language),
            "count": len(found),
            "words": rendered,
        }
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args)
    elif args.format == "csv":
        lines = ["index,length,word"]
        lines += [f"{i},{len(w)},{r}" for i, (w, r) in enumerate(zip(found, rendered))]
        _emit("\n".join(lines) + "\n", args)
    elif args.format == "fasta":
        header = f"k={args.k} [circular; linearized at canonical rotation]"
        _emit(
            "".join(
                f">covering_{i} {header}\n{alphabet.render(w.canonical())}\n"
                for i, w in enumerate(found)
            ),
            args,
        )
    else:
        _emit("".join(r + "\n" for r in rendered), args)
    return 0


def cmd_export(args) -> int:
    alphabet = _alphabet_from_args(args)
    language = _language_from_args(args, alphabet)
    kind = "kautz" if args.kautz else "de_bruijn"
    graph = build_restricted_graph(language, kind=kind, sigma=alphabet.sigma)
    if args.format == "json":
        _emit(json.dumps(graph.to_json_dict(alphabet), indent=2, sort_keys=True) + "\n", args)
    else:
        _emit(graph.to_dot(alphabet, name=f"{kind}_k{args.k}"), args)
    return 0


# ----------------------------------------------------------------------


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CertificationError as exc:
        print(f"error: internal certification failure: {exc}", file=sys.stderr)
        return 3
    except OrthoseqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
