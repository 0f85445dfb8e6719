"""Command-line front end.

Commands (``<query>`` is an ``a |~ b`` string with the KB-file syntax)::

    ratclosure check <kb> "<query>"            rational-closure membership
    ratclosure pref <kb> "<query>"             preferential entailment
    ratclosure rank <kb> "<formula>"           rank of a formula
    ratclosure partition <kb>                  the chain C0 ... Ck
    ratclosure model <kb>                      the closure's ranked world model
    ratclosure witness <kb> "<query>"          a verified non-entailment witness
    ratclosure eps <kb> --epsilon P/Q "<query>" exact conditional probability

``check`` and ``pref`` exit 0 when the answer is yes and 1 when it is no;
every command exits 2 on errors (bad syntax, missing files, resource guards,
zero-probability antecedents).  ``--json`` prints a single JSON object
instead of the plain-text rendering; for ``check``/``pref`` its fields mirror
the query result.  All configuration is via flags, never the environment.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .closure import (
    find_witness,
    in_rational_closure,
    pref_entails_result,
    verify_witness,
)
from .formulas import ParseError, parse_formula
from .kb import KnowledgeBase, load_kb, parse_assertion
from .models import (
    EmptyModelError,
    ZeroProbabilityError,
    build_closure_model,
    conditional_probability,
    epsilon_distribution,
    format_model,
)
from .ranks import partition, rank
from .sat import ResourceLimitError


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratclosure",
        description="Reason about defeasible conditional knowledge bases.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, payload: str | None):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("kb", help="path to a knowledge-base file")
        if payload:
            p.add_argument("payload", help=payload)
        p.add_argument(
            "--json", action="store_true", help="emit a single JSON object"
        )
        p.add_argument(
            "--enum-cap",
            type=int,
            default=2 ** 24,
            metavar="N",
            help="refuse queries that would enumerate more than N worlds",
        )
        return p

    add("check", "is the assertion in the rational closure?", "assertion 'a |~ b'")
    add("pref", "is the assertion preferentially entailed?", "assertion 'a |~ b'")
    add("rank", "rank of a formula", "formula")
    add("partition", "print the chain C0 ... Ck", None)
    add("model", "print the closure's ranked world model", None)
    add("witness", "find a witness of non-entailment", "assertion 'a |~ b'")
    eps = add("eps", "exact conditional probability", "assertion 'a |~ b'")
    eps.add_argument(
        "--epsilon",
        required=True,
        metavar="P/Q",
        help="rank decay ratio, an exact rational strictly between 0 and 1",
    )
    return parser


def _rank_json(r) -> int | None:
    return r.value


def _run(args: argparse.Namespace) -> int:
    kb = load_kb(args.kb)

    if args.command == "check" or args.command == "pref":
        assertion = parse_assertion(args.payload)
        if args.command == "check":
            result = in_rational_closure(kb, assertion)
        else:
            result = pref_entails_result(kb, assertion)
        if args.json:
            print(
                json.dumps(
                    {
                        "answer": result.answer,
                        "rank_antecedent": _rank_json(result.rank_antecedent),
                        "rank_refuter": _rank_json(result.rank_refuter),
                        "sat_calls": result.sat_calls,
                    }
                )
            )
        else:
            print("yes" if result.answer else "no")
        return 0 if result.answer else 1

    if args.command == "rank":
        formula = parse_formula(args.payload)
        r = rank(partition(kb), formula)
        if args.json:
            print(json.dumps({"rank": _rank_json(r)}))
        else:
            print(f"rank: {r}")
        return 0

    if args.command == "partition":
        part = partition(kb)
        if args.json:
            print(
                json.dumps(
                    {"levels": [[str(a) for a in level] for level in part.levels]}
                )
            )
        else:
            for i, level in enumerate(part.levels):
                print(f"C{i}:")
                for a in level:
                    print(f"  {a}")
        return 0

    if args.command == "model":
        model = build_closure_model(kb, cap=args.enum_cap)
        if args.json:
            print(
                json.dumps(
                    {
                        "levels": [
                            [
                                {k: int(v) for k, v in w.as_dict().items()}
                                for w in level
                            ]
                            for level in model.levels
                        ]
                    }
                )
            )
        else:
            print(format_model(model))
        return 0

    if args.command == "witness":
        assertion = parse_assertion(args.payload)
        witness = find_witness(kb, assertion, cap=args.enum_cap)
        if witness is None:
            if args.json:
                print(json.dumps({"entailed": True, "steps": None}))
            else:
                print("entailed")
            return 0
        if not verify_witness(kb, assertion, witness):
            raise AssertionError("search produced an invalid witness")
        if args.json:
            print(
                json.dumps(
                    {
                        "entailed": False,
                        "steps": [
                            {
                                "indices": sorted(indices),
                                "world": {
                                    k: int(v) for k, v in world.as_dict().items()
                                },
                            }
                            for indices, world in witness.steps
                        ],
                    }
                )
            )
        else:
            for k, (indices, world) in enumerate(witness.steps):
                index_text = ",".join(str(j) for j in sorted(indices))
                print(f"step {k}: I={{{index_text}}} world: {world}")
        return 0

    if args.command == "eps":
        assertion = parse_assertion(args.payload)
        eps = Fraction(args.epsilon)
        sig = kb.working_signature(assertion.antecedent, assertion.consequent)
        working = KnowledgeBase(kb.assertions, sig)
        model = build_closure_model(working, cap=args.enum_cap)
        dist = epsilon_distribution(model, eps)
        p = conditional_probability(dist, assertion.consequent, assertion.antecedent)
        if args.json:
            print(json.dumps({"probability": str(p), "epsilon": str(eps)}))
        else:
            print(p)
        return 0

    raise AssertionError(f"unhandled command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except (
        ParseError,
        ResourceLimitError,
        ZeroProbabilityError,
        EmptyModelError,
        OSError,
        ValueError,
        ZeroDivisionError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
