"""Command-line surface: component-file ingestion, index-expression parsing
and canonicalization, and the subcommands that wire the library together.

Component files are JSON documents with fields ``n`` and ``components``
(records ``{"idx": [a, b, c, d], "value": x}``, lowered-index convention,
omitted components zero). Expressions follow the grammar

    expr  := ['+'|'-'] term (('+'|'-') term)*   |  '0'
    term  := [coeff '*'] name '_' '{' idx idx idx idx '}'
    coeff := int ['/' int]
    idx   := 'i' | 'k' | 'l' | 'm' | '0'..'3'

whitespace-insensitive, letters mapped through i,k,l,m -> 0,1,2,3.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import fuzzy as fuzzy_mod
from . import graphana, petrov, symcore
from .graphana import STANDARD_SPEC, enumerate_variants, export_graph
from .symcore import PairBasis, RiemannComponents

_INDEX_CHARS = {"i": 0, "k": 1, "l": 2, "m": 3, "0": 0, "1": 1, "2": 2, "3": 3}


class ExpressionSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"at position {position}: {message}")
        self.position = position


class UnknownIndexLetter(ExpressionSyntaxError):
    pass


@dataclass(frozen=True)
class Term:
    coefficient: Fraction
    name: str
    quad: tuple[int, int, int, int]


@dataclass(frozen=True)
class IndexExpression:
    terms: tuple[Term, ...]


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> Optional[str]:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else None

    def take(self) -> str:
        ch = self.peek()
        if ch is None:
            raise ExpressionSyntaxError("unexpected end of input", self.pos)
        self.pos += 1
        return ch

    def expect(self, ch: str):
        got = self.peek()
        if got != ch:
            raise ExpressionSyntaxError(f"expected {ch!r}, got {got!r}", self.pos)
        self.pos += 1

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ExpressionSyntaxError("expected an integer", start)
        return int(self.text[start:self.pos])


def _parse_term(sc: _Scanner, sign: int) -> Term:
    coeff = Fraction(sign)
    ch = sc.peek()
    if ch is not None and ch.isdigit():
        num = sc.integer()
        den = 1
        if sc.peek() == "/":
            sc.take()
            den = sc.integer()
            if den == 0:
                raise ExpressionSyntaxError("zero denominator", sc.pos)
        coeff *= Fraction(num, den)
        sc.expect("*")
    ch = sc.peek()
    if ch is None or not ch.isalpha():
        raise ExpressionSyntaxError("expected a tensor name", sc.pos)
    start = sc.pos
    sc.pos += 1
    while sc.pos < len(sc.text) and sc.text[sc.pos].isalnum():
        sc.pos += 1
    name = sc.text[start:sc.pos]
    sc.expect("_")
    sc.expect("{")
    quad = []
    for _ in range(4):
        ch = sc.peek()
        if ch is None or ch == "}":
            raise ExpressionSyntaxError("expected 4 index characters", sc.pos)
        if ch not in _INDEX_CHARS:
            raise UnknownIndexLetter(f"unknown index letter {ch!r}", sc.pos)
        sc.take()
        quad.append(_INDEX_CHARS[ch])
    sc.expect("}")
    return Term(coeff, name, tuple(quad))


def parse_expression(text: str) -> IndexExpression:
    """Parse the expression grammar into a term list; '0' is the empty sum."""
    if not text.strip():
        raise ExpressionSyntaxError("empty expression", 0)
    sc = _Scanner(text)
    if sc.peek() == "0":
        sc.take()
        if sc.peek() is not None:
            raise ExpressionSyntaxError("trailing input after '0'", sc.pos)
        return IndexExpression(())
    terms = []
    sign = 1
    ch = sc.peek()
    if ch in ("+", "-"):
        sc.take()
        sign = -1 if ch == "-" else 1
    while True:
        terms.append(_parse_term(sc, sign))
        ch = sc.peek()
        if ch is None:
            break
        if ch not in ("+", "-"):
            raise ExpressionSyntaxError(f"expected '+' or '-', got {ch!r}", sc.pos)
        sc.take()
        sign = -1 if ch == "-" else 1
    return IndexExpression(tuple(terms))


def format_expression(e: IndexExpression) -> str:
    """Canonical text form; reparses to the identical term list."""
    if not e.terms:
        return "0"
    parts = []
    for i, t in enumerate(e.terms):
        mag = abs(t.coefficient)
        body = "" if mag == 1 else f"{mag}*"
        body += f"{t.name}_{{{''.join(str(v) for v in t.quad)}}}"
        if i == 0:
            parts.append(("-" if t.coefficient < 0 else "") + body)
        else:
            parts.append(("- " if t.coefficient < 0 else "+ ") + body)
    return " ".join(parts)


def _sign_orbit(quad):
    a, b, c, d = quad
    return (
        ((a, b, c, d), 1),
        ((b, a, c, d), -1),
        ((a, b, d, c), -1),
        ((b, a, d, c), 1),
        ((c, d, a, b), 1),
        ((d, c, a, b), -1),
        ((c, d, b, a), -1),
        ((d, c, b, a), 1),
    )


def canonical_quad(quad) -> Optional[tuple[tuple[int, int, int, int], int]]:
    """Lexicographically smallest quad of the 8-element sign orbit, plus the
    sign relating it to the input; None when the component vanishes
    identically."""
    a, b, c, d = quad
    if a == b or c == d:
        return None
    return min(_sign_orbit(quad))


def _combine(terms) -> tuple[Term, ...]:
    acc: dict[tuple[str, tuple], Fraction] = {}
    for t in terms:
        key = (t.name, t.quad)
        acc[key] = acc.get(key, Fraction(0)) + t.coefficient
    return tuple(
        Term(coeff, name, quad)
        for (name, quad), coeff in sorted(acc.items())
        if coeff != 0
    )


def canonicalize_expression(e: IndexExpression, assume_bianchi: bool = False) -> IndexExpression:
    """Rewrite every term to its canonical orbit representative and combine.

    With ``assume_bianchi`` the cyclic identity eliminates the dependent
    representative per distinct-index support: for support a<b<c<d the quad
    (a,d,b,c) rewrites as (a,c,b,d) - (a,b,c,d).
    """
    rewritten = []
    for t in e.terms:
        canon = canonical_quad(t.quad)
        if canon is None:
            continue
        quad, sign = canon
        rewritten.append(Term(t.coefficient * sign, t.name, quad))
    combined = _combine(rewritten)
    if assume_bianchi:
        expanded = []
        for t in combined:
            a, b, c, d = t.quad
            support = sorted(t.quad)
            if len(set(t.quad)) == 4 and (a, b, c, d) == (
                support[0],
                support[3],
                support[1],
                support[2],
            ):
                sa, sb, sc, sd = support
                expanded.append(Term(t.coefficient, t.name, (sa, sc, sb, sd)))
                expanded.append(Term(-t.coefficient, t.name, (sa, sb, sc, sd)))
            else:
                expanded.append(t)
        combined = _combine(expanded)
    return IndexExpression(combined)


def evaluate_expression(e: IndexExpression, R: RiemannComponents) -> float:
    """Numeric value of the expression against a component store; every term
    name is read with the same curvature symmetries."""
    return sum(float(t.coefficient) * symcore.get_component(R, t.quad) for t in e.terms)


# --- component documents ----------------------------------------------------

class DocumentError(ValueError):
    pass


def parse_component_document(text: str):
    """Parse a component document into (n, entries, metadata)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise DocumentError("document must be an object")
    if "n" not in doc or not isinstance(doc["n"], int):
        raise DocumentError("field 'n' must be an integer")
    comps = doc.get("components", [])
    if not isinstance(comps, list):
        raise DocumentError("field 'components' must be an array")
    entries = []
    for rec_no, rec in enumerate(comps):
        if not isinstance(rec, dict) or "idx" not in rec or "value" not in rec:
            raise DocumentError(f"components[{rec_no}]: need 'idx' and 'value'")
        idx = rec["idx"]
        if not isinstance(idx, list) or len(idx) != 4:
            raise DocumentError(f"components[{rec_no}]: 'idx' must list 4 indices")
        value = rec["value"]
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise DocumentError(f"components[{rec_no}]: 'value' must be a number")
        entries.append((tuple(idx), float(value)))
    return doc["n"], entries, doc.get("metadata")


def ingest(text: str, tol: float = 1e-12, enforce_bianchi: bool = False) -> RiemannComponents:
    """Component document -> RiemannComponents; projection only on request."""
    n, entries, _ = parse_component_document(text)
    R = symcore.from_component_list(n, entries, tol=tol)
    if enforce_bianchi:
        R = symcore.project_bianchi(R)
    return R


def dump_component_document(R: RiemannComponents, metadata=None) -> str:
    """Upper-triangle slot components as a document; zeros omitted."""
    pairs = symcore.basis_pairs(R.basis)
    comps = []
    for s in range(symcore.NUM_SLOTS):
        for t in range(s, symcore.NUM_SLOTS):
            v = float(R.matrix[s, t])
            if v != 0.0:
                comps.append({"idx": [*pairs[s], *pairs[t]], "value": v})
    doc = {"n": R.n, "components": comps}
    if metadata is not None:
        doc["metadata"] = metadata
    return json.dumps(doc, indent=2) + "\n"


# --- subcommands -------------------------------------------------------------

_VALIDATION_ERRORS = (
    symcore.ConflictingEntry,
    symcore.DegenerateNonzero,
    graphana.OddParityError,
    fuzzy_mod.BridgeMismatch,
    petrov.BlockInconsistency,
    petrov.NotSymmetric,
    petrov.NotTraceless,
    ExpressionSyntaxError,
    DocumentError,
    ValueError,
)


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _ingest_args(args) -> RiemannComponents:
    return ingest(
        _read_input(args.input),
        tol=getattr(args, "tol", 1e-12) or 1e-12,
        enforce_bianchi=getattr(args, "enforce_bianchi", False),
    )


def _emit_json(payload, out):
    json.dump(payload, out, indent=2)
    out.write("\n")


def _cmd_count(args, out):
    if args.r is not None:
        print(symcore.generalized_count(args.n, args.r), file=out)
    else:
        print(symcore.independent_component_count(args.n), file=out)
    return 0


def _cmd_canon(args, out):
    expr = parse_expression(args.expr)
    print(format_expression(canonicalize_expression(expr, args.bianchi)), file=out)
    return 0


def _cmd_check(args, out):
    R = _ingest_args(args)
    six = petrov.assemble_six_matrix(R)
    ric = symcore.ricci_matrix(R)
    _emit_json(
        {
            "n": R.n,
            "bianchi_enforced": R.bianchi_enforced,
            "bianchi_residual": abs(symcore.cyclic_sum(R, (0, 1, 2, 3))),
            "trace_b": petrov.trace_b(six),
            "ricci": ric.tolist(),
            "ricci_max_abs": float(np.abs(ric).max()),
        },
        out,
    )
    return 0


def _cmd_matrix(args, out):
    R = _ingest_args(args)
    if args.basis == "lex":
        matrix = symcore.pair_matrix(R, PairBasis.LEX)
        payload = {"basis": "lex", "mixed": False, "matrix": matrix.tolist()}
    else:
        six = petrov.assemble_six_matrix(R)
        payload = {"basis": "duad", "mixed": True, "matrix": six.entries.tolist()}
    _emit_json(payload, out)
    return 0


def _cmd_classify(args, out):
    R = _ingest_args(args)
    _emit_json(petrov.classification_report(R, tol=args.tol), out)
    return 0


def _cmd_graph(args, out):
    if args.kind == "k6":
        if args.input is None:
            raise DocumentError("--input is required for the k6 graph")
        g = graphana.k6_structure(_ingest_args(args))
    else:
        variants = {v.label: v for v in enumerate_variants(STANDARD_SPEC)}
        g = graphana.variant_graph(STANDARD_SPEC, variants[args.label])
    out.write(export_graph(g, args.format))
    return 0


def _cmd_fuzzy(args, out):
    fg = fuzzy_mod.fuzzy_riemann_graph(STANDARD_SPEC)
    if args.union:
        bridge = STANDARD_SPEC.permuting[0]
        eps = fuzzy_mod.epsilon_loop(STANDARD_SPEC.fixed_vertex, bridge)
        fg = fuzzy_mod.fuzzy_union(eps, fg, args.alpha)
    out.write(export_graph(fuzzy_mod.fuzzy_to_graph(fg), args.format))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="curvgraph",
        description="Curvature-component symmetry algebra, graph analogs, and "
        "eigenstructure classification.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="independent component counts")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--r", type=int, default=None,
                   help="permuting-index count for the generalized formula")
    c.set_defaults(func=_cmd_count)

    c = sub.add_parser("canon", help="canonicalize an index expression")
    c.add_argument("--expr", required=True)
    c.add_argument("--bianchi", action="store_true",
                   help="also eliminate the cyclic-identity-dependent quads")
    c.set_defaults(func=_cmd_canon)

    def add_input(cmd):
        cmd.add_argument("--input", required=True, help="component document ('-' for stdin)")
        cmd.add_argument("--enforce-bianchi", action="store_true",
                         help="project onto the cyclic-identity subspace after ingest")

    c = sub.add_parser("check", help="symmetry / cyclic / contraction residual report")
    add_input(c)
    c.set_defaults(func=_cmd_check)

    c = sub.add_parser("matrix", help="emit the 6x6 pair matrix")
    add_input(c)
    c.add_argument("--basis", choices=("lex", "duad"), default="lex",
                   help="lex: covariant storage order; duad: mixed matrix with the "
                        "first pair raised")
    c.set_defaults(func=_cmd_matrix)

    c = sub.add_parser("classify", help="eigenstructure classification report")
    add_input(c)
    c.add_argument("--tol", type=float, default=petrov.DEFAULT_TOL)
    c.set_defaults(func=_cmd_classify)

    c = sub.add_parser("graph", help="emit variant or K6 graphs")
    c.add_argument("--kind", choices=("variant", "k6"), default="variant")
    c.add_argument("--label", choices=[f"G{i}" for i in range(1, 7)], default="G1")
    c.add_argument("--input", default=None, help="component document (k6 weights)")
    c.add_argument("--enforce-bianchi", action="store_true")
    c.add_argument("--format", choices=("dot", "structured"), default="dot")
    c.set_defaults(func=_cmd_graph)

    c = sub.add_parser("fuzzy", help="emit the fuzzy analog graph")
    c.add_argument("--union", action="store_true",
                   help="apply the loop union at the bridge vertex")
    c.add_argument("--alpha", type=int, default=3)
    c.add_argument("--format", choices=("dot", "structured"), default="dot")
    c.set_defaults(func=_cmd_fuzzy)
    return p


def run(argv=None, out=None, err=None) -> int:
    """Dispatch a command line; returns the exit code instead of raising.

    0 on success, 1 on validation failure, 2 on usage errors.
    """
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args, out)
    except _VALIDATION_ERRORS as exc:
        print(f"curvgraph: error: {exc}", file=err)
        return 1
    except OSError as exc:
        print(f"curvgraph: error: {exc}", file=err)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
