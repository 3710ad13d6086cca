"""Command-line front door.

Subcommands mirror the library modules: padic, series, hahn, hensel,
forms, ake, tree. Every command assembles a Report whose JSON form is
deterministic (sorted keys; elapsed_ms excluded from any golden
comparison); the default output is a small human-readable table. Exit
codes: 0 success, 1 domain outcome (PrecisionLoss, Unresolved,
DomainTooLarge, ...), 2 usage error. The environment variable HF_BUDGET
overrides enumeration budgets.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .errors import ParseError, ToolkitError, TooWide
from .fields import GF, QQ
from .forms import (
    COUNT_GUARD,
    LEVEL_GUARD,
    Unresolved,
    chevalley_warning_check,
    count_zeros_ff,
    padic_zero_search,
    terjanian_certificate,
)
from .hensel import simple_zero_lift
from .hahn import LEX_EXP, Q_EXP, Z_EXP, hahn_invert, parse_hahn
from .local_rings import DEFAULT_BUDGET, ake_compare
from .poly import parse_form, parse_polynomial, parse_unipoly
from .valuation import (
    DEFAULT_PRECISION,
    PadicNumber,
    parse_laurent,
    parse_padic,
)


@dataclass
class Report:
    command: str
    inputs: dict
    payload: dict
    elapsed_ms: float

    def to_json(self) -> str:
        body = {
            "command": self.command,
            "inputs": self.inputs,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "version": __version__,
            **self.payload,
        }
        return json.dumps(body, sort_keys=True, default=str)

    def to_text(self) -> str:
        lines = [f"[{self.command}]"]
        for key, value in self.inputs.items():
            lines.append(f"  {key}: {value}")
        lines.append("  ---")
        for key, value in self.payload.items():
            if isinstance(value, list) and value and isinstance(value[0], dict):
                lines.append(f"  {key}:")
                for row in value:
                    cells = "  ".join(f"{k}={v}" for k, v in row.items())
                    lines.append(f"    {cells}")
            else:
                lines.append(f"  {key}: {value}")
        return "\n".join(lines)


def _budget(default: int) -> int:
    env = os.environ.get("HF_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ToolkitError(f"HF_BUDGET must be an integer, got {env!r}")
    return default


# --- a tiny exact-rational expression grammar for `padic eval` -----------


def parse_rational_expression(text: str) -> Fraction:
    tokens = _rational_tokens(text)
    value, i = _rat_expr(tokens, 0)
    if tokens[i][0] != "end":
        raise ParseError("trailing input", tokens[i][2], ("end of input",))
    return value


def _rational_tokens(text: str):
    import re

    out = []
    pos = 0
    pat = re.compile(r"\s*(?:(?P<int>\d+)|(?P<op>[-+*/^()]))")
    while pos < len(text):
        m = pat.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos]!r}", pos, ("digit", "operator"))
            break
        if m.group("int"):
            out.append(("int", int(m.group("int")), m.start()))
        else:
            out.append(("op", m.group("op"), m.start()))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def _rat_expr(toks, i):
    value, i = _rat_term(toks, i)
    while toks[i][0] == "op" and toks[i][1] in "+-":
        op = toks[i][1]
        rhs, i = _rat_term(toks, i + 1)
        value = value + rhs if op == "+" else value - rhs
    return value, i


def _rat_term(toks, i):
    value, i = _rat_power(toks, i)
    while toks[i][0] == "op" and toks[i][1] in "*/":
        op = toks[i][1]
        rhs, i = _rat_power(toks, i + 1)
        value = value * rhs if op == "*" else value / rhs
    return value, i


def _rat_power(toks, i):
    value, i = _rat_atom(toks, i)
    if toks[i][0] == "op" and toks[i][1] == "^":
        kind, e, pos = toks[i + 1]
        if kind != "int":
            raise ParseError("exponent must be an integer literal", pos, ("integer",))
        return value**e, i + 2
    return value, i


def _rat_atom(toks, i):
    kind, val, pos = toks[i]
    if kind == "int":
        return Fraction(val), i + 1
    if kind == "op" and val == "-":
        inner, i = _rat_atom(toks, i + 1)
        return -inner, i
    if kind == "op" and val == "(":
        value, i = _rat_expr(toks, i + 1)
        if toks[i][0] == "op" and toks[i][1] == ")":
            return value, i + 1
        raise ParseError("expected ')'", toks[i][2], (")",))
    raise ParseError(f"unexpected token {val!r}", pos, ("integer", "(", "-"))


# --- tree rendering -------------------------------------------------------


def render_tree(p: int, depth: int, elements) -> str:
    """ASCII rendering of p-adic integers as branches; pairwise meets are
    marked at level v(a - b)."""
    if p > 5:
        raise TooWide("tree rendering supports p <= 5")
    if depth > 6:
        raise TooWide("tree rendering supports depth <= 6")
    elements = list(elements)
    if len(elements) > 8:
        raise TooWide("tree rendering supports at most 8 elements")
    if not elements:
        raise ToolkitError("nothing to render")
    mod = p**depth
    paths = []
    for e in elements:
        x = int(e) % mod
        digits = []
        for _ in range(depth):
            x, d = divmod(x, p)
            digits.append(d)
        paths.append(digits)
    header = f"Z_{p} to depth {depth}; elements: " + ", ".join(str(e) for e in elements)
    lines = [header, "root"]

    def walk(indices, level, prefix):
        if level == depth:
            return
        groups: dict[int, list[int]] = {}
        for i in indices:
            groups.setdefault(paths[i][level], []).append(i)
        if len(groups) >= 2:
            pairs = []
            for a in range(len(indices)):
                for b in range(a + 1, len(indices)):
                    i, j = indices[a], indices[b]
                    if paths[i][level] != paths[j][level]:
                        pairs.append(f"v({elements[i]}-{elements[j]})={level}")
            lines.append(prefix + f"* meet at level {level}: " + ", ".join(pairs))
        ordered = sorted(groups)
        for pos, d in enumerate(ordered):
            members = groups[d]
            last = pos == len(ordered) - 1
            connector = "`-" if last else "|-"
            suffix = ""
            if level == depth - 1:
                suffix = "  <- " + ", ".join(str(elements[i]) for i in members)
            lines.append(prefix + f"{connector} digit {d} (p^{level})" + suffix)
            walk(members, level + 1, prefix + ("   " if last else "|  "))

    walk(list(range(len(elements))), 0, "")
    return "\n".join(lines)


# --- subcommand handlers ---------------------------------------------------


def _cmd_padic_eval(args) -> Report:
    start = time.perf_counter()
    value = parse_rational_expression(args.expr)
    x = PadicNumber.from_rational(value.numerator, value.denominator, args.prime, args.prec)
    payload = {
        "digits": list(x.unit_digits),
        "valuation": None if x.is_zero else x.valuation.finite,
        "rendering": str(x),
    }
    return Report(
        "padic eval",
        {"prime": args.prime, "expr": args.expr, "prec": args.prec},
        payload,
        (time.perf_counter() - start) * 1000,
    )


def _cmd_padic_parse(args) -> Report:
    start = time.perf_counter()
    x = parse_padic(args.text, args.prime)
    payload = {
        "digits": list(x.unit_digits),
        "valuation": None if x.is_zero else x.valuation.finite,
        "rendering": str(x),
    }
    return Report(
        "padic parse",
        {"text": args.text},
        payload,
        (time.perf_counter() - start) * 1000,
    )


def _series_field(args):
    return GF(args.prime) if args.prime else QQ


def _cmd_series_parse(args) -> Report:
    start = time.perf_counter()
    s = parse_laurent(args.text, _series_field(args))
    payload = {
        "valuation": None if s.is_zero else s.offset,
        "cap": s.cap,
        "rendering": str(s),
    }
    return Report(
        "series parse",
        {"text": args.text, "field": str(_series_field(args))},
        payload,
        (time.perf_counter() - start) * 1000,
    )


def _cmd_series_invert(args) -> Report:
    start = time.perf_counter()
    s = parse_laurent(args.text, _series_field(args))
    inv = s.invert(args.prec)
    payload = {"rendering": str(inv), "check": str(s * inv)}
    return Report(
        "series invert",
        {"text": args.text, "field": str(_series_field(args)), "prec": args.prec},
        payload,
        (time.perf_counter() - start) * 1000,
    )


_HAHN_GROUPS = {"z": Z_EXP, "q": Q_EXP, "zz": LEX_EXP}


def _cmd_hahn_parse(args) -> Report:
    start = time.perf_counter()
    group = _HAHN_GROUPS[args.group]
    field = GF(args.prime) if args.prime else QQ
    h = parse_hahn(args.text, field, group)
    payload = {
        "valuation": str(h.valuation),
        "cap": None if h.cap is None else str(h.cap),
        "rendering": str(h),
    }
    return Report(
        "hahn parse",
        {"text": args.text, "group": args.group, "field": str(field)},
        payload,
        (time.perf_counter() - start) * 1000,
    )


def _cmd_hahn_invert(args) -> Report:
    start = time.perf_counter()
    group = _HAHN_GROUPS[args.group]
    field = GF(args.prime) if args.prime else QQ
    h = parse_hahn(args.text, field, group)
    cap = _parse_hahn_cap(args.cap, group)
    inv = hahn_invert(h, cap)
    payload = {"rendering": str(inv), "check": str(h * inv)}
    return Report(
        "hahn invert",
        {"text": args.text, "group": args.group, "cap": args.cap},
        payload,
        (time.perf_counter() - start) * 1000,
    )


def _parse_hahn_cap(raw: str, group):
    if "," in raw:
        a, b = raw.strip("() ").split(",")
        return group.coerce((int(a), int(b)))
    return group.coerce(Fraction(raw))


def _cmd_hensel_lift(args) -> Report:
    start = time.perf_counter()
    poly = parse_unipoly(args.poly)
    result = simple_zero_lift(poly, args.prime, args.seed, args.prec)
    root = result.root
    payload = {
        "root_digits": list(root.unit_digits),
        "valuation": None if root.is_zero else root.valuation.finite,
        "checked": True,
    }
    return Report(
        "hensel lift",
        {"poly": args.poly, "prime": args.prime, "seed": args.seed, "prec": args.prec},
        payload,
        (time.perf_counter() - start) * 1000,
    )


def _cmd_forms_count(args) -> Report:
    start = time.perf_counter()
    poly, _ = parse_polynomial(args.poly)
    zc = count_zeros_ff(poly, args.prime, _budget(COUNT_GUARD))
    payload = {
        "count": zc.count,
        "nontrivial_zero": list(zc.nontrivial_zero) if zc.nontrivial_zero else None,
    }
    try:
        cw = chevalley_warning_check(poly, args.prime, _budget(COUNT_GUARD))
        payload["chevalley_warning"] = {
            "divisor_exponent": cw.divisor_exponent,
            "divisible": cw.divisible,
        }
    except ToolkitError:
        pass
    return Report(
        "forms count",
        {"poly": args.poly, "prime": args.prime},
        payload,
        (time.perf_counter() - start) * 1000,
    )


def _cmd_forms_solve(args) -> Report:
    start = time.perf_counter()
    form = parse_form(args.form)
    outcome = padic_zero_search(form, args.prime, args.prec, args.depth, _budget(LEVEL_GUARD))
    if isinstance(outcome, Unresolved):
        raise ToolkitError(
            f"Unresolved: {outcome.reason} after {outcome.levels_searched} levels "
            "(bounded search cannot prove insolubility)"
        )
    payload = {
        "certificate": {
            "vector": [str(x) for x in outcome.vector],
            "integer_representatives": list(outcome.integer_representatives),
            "precision": outcome.precision,
            "pivot_index": outcome.pivot_index,
            "pivot_valuation": outcome.pivot_valuation,
        }
    }
    return Report(
        "forms solve",
        {"form": args.form, "prime": args.prime, "prec": args.prec},
        payload,
        (time.perf_counter() - start) * 1000,
    )


def _cmd_forms_terjanian(args) -> Report:
    start = time.perf_counter()
    rep = terjanian_certificate()
    payload = {
        "lemma_checks": {
            "mod4_cases": rep.mod4_cases,
            "mod4_ok": rep.mod4_ok,
            "scaling_ok": rep.scaling_ok,
        }
    }
    if args.reject:
        vector = [int(x) for x in args.reject.split(",")]
        rej = rep.reject(vector, args.prec)
        payload["rejection"] = {
            "valuation": rej.valuation,
            "common_valuation": rej.common_valuation,
            "odd_blocks_first": rej.odd_blocks_first,
            "odd_blocks_last": rej.odd_blocks_last,
        }
    return Report(
        "forms terjanian",
        {"reject": args.reject, "prec": args.prec},
        payload,
        (time.perf_counter() - start) * 1000,
    )


def _parse_primes(spec: str) -> list[int]:
    from .local_rings import primes_up_to

    spec = spec.strip()
    if ".." in spec:
        lo, hi = spec.split("..")
        lo = int(lo) if lo else 2
        return [p for p in primes_up_to(int(hi)) if p >= lo]
    return [int(x) for x in spec.split(",") if x.strip()]


def _cmd_ake_compare(args) -> Report:
    start = time.perf_counter()
    primes = _parse_primes(args.primes)
    report = ake_compare(args.sentence, args.n, primes, _budget(args.budget))
    payload = {
        "sentence": report.sentence,
        "n": report.nil_index,
        "results": [
            {"p": r.prime, "zmod": r.zmod_truth, "trunc": r.trunc_truth}
            for r in report.results
        ],
        "disagreement": list(report.disagreement),
        "skipped": list(report.skipped),
    }
    return Report(
        "ake compare",
        {"sentence": args.sentence, "n": args.n, "primes": args.primes},
        payload,
        (time.perf_counter() - start) * 1000,
    )


def _cmd_tree(args) -> Report:
    start = time.perf_counter()
    elements = [int(x) for x in args.elements.split(",") if x.strip()]
    text = render_tree(args.prime, args.depth, elements)
    return Report(
        "tree",
        {"prime": args.prime, "depth": args.depth, "elements": args.elements},
        {"rendering": text},
        (time.perf_counter() - start) * 1000,
    )


def _json_flag(leaf: argparse.ArgumentParser) -> argparse.ArgumentParser:
    # SUPPRESS keeps a leaf-level omission from clobbering a top-level --json
    leaf.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    return leaf


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vfk", description="desk-scale valued-field toolkit"
    )
    parser.add_argument("--json", action="store_true", help="emit a JSON report")
    sub = parser.add_subparsers(dest="command", required=True)

    padic = sub.add_parser("padic", help="p-adic arithmetic").add_subparsers(
        dest="sub", required=True
    )
    pe = padic.add_parser("eval", help="expand an exact rational expression")
    pe.add_argument("--prime", type=int, required=True)
    pe.add_argument("--expr", required=True)
    pe.add_argument("--prec", type=int, default=DEFAULT_PRECISION)
    _json_flag(pe)
    pe.set_defaults(func=_cmd_padic_eval)
    pp = padic.add_parser("parse", help="round-trip the canonical rendering")
    pp.add_argument("--text", required=True)
    pp.add_argument("--prime", type=int, default=None)
    _json_flag(pp)
    pp.set_defaults(func=_cmd_padic_parse)

    series = sub.add_parser("series", help="Laurent series").add_subparsers(
        dest="sub", required=True
    )
    sp = series.add_parser("parse")
    sp.add_argument("--text", required=True)
    sp.add_argument("--prime", type=int, default=None, help="coefficients in F_p (default Q)")
    _json_flag(sp)
    sp.set_defaults(func=_cmd_series_parse)
    si = series.add_parser("invert")
    si.add_argument("--text", required=True)
    si.add_argument("--prime", type=int, default=None)
    si.add_argument("--prec", type=int, default=16)
    _json_flag(si)
    si.set_defaults(func=_cmd_series_invert)

    hahn = sub.add_parser("hahn", help="generalized series").add_subparsers(
        dest="sub", required=True
    )
    hp = hahn.add_parser("parse")
    hp.add_argument("--text", required=True)
    hp.add_argument("--group", choices=sorted(_HAHN_GROUPS), default="q")
    hp.add_argument("--prime", type=int, default=None)
    _json_flag(hp)
    hp.set_defaults(func=_cmd_hahn_parse)
    hi = hahn.add_parser("invert")
    hi.add_argument("--text", required=True)
    hi.add_argument("--cap", required=True)
    hi.add_argument("--group", choices=sorted(_HAHN_GROUPS), default="q")
    hi.add_argument("--prime", type=int, default=None)
    _json_flag(hi)
    hi.set_defaults(func=_cmd_hahn_invert)

    hensel = sub.add_parser("hensel", help="Hensel lifting").add_subparsers(
        dest="sub", required=True
    )
    hl = hensel.add_parser("lift")
    hl.add_argument("--poly", required=True)
    hl.add_argument("--prime", type=int, required=True)
    hl.add_argument("--seed", type=int, required=True)
    hl.add_argument("--prec", type=int, required=True)
    _json_flag(hl)
    hl.set_defaults(func=_cmd_hensel_lift)

    forms = sub.add_parser("forms", help="form solubility").add_subparsers(
        dest="sub", required=True
    )
    fc = forms.add_parser("count")
    fc.add_argument("--poly", required=True)
    fc.add_argument("--prime", type=int, required=True)
    _json_flag(fc)
    fc.set_defaults(func=_cmd_forms_count)
    fs = forms.add_parser("solve")
    fs.add_argument("--form", required=True)
    fs.add_argument("--prime", type=int, required=True)
    fs.add_argument("--prec", type=int, default=8)
    fs.add_argument("--depth", type=int, default=4)
    _json_flag(fs)
    fs.set_defaults(func=_cmd_forms_solve)
    ft = forms.add_parser("terjanian")
    ft.add_argument("--reject", default=None, help="comma-separated 18 coordinates")
    ft.add_argument("--prec", type=int, default=12)
    _json_flag(ft)
    ft.set_defaults(func=_cmd_forms_terjanian)

    ake = sub.add_parser("ake", help="finite transfer experiment").add_subparsers(
        dest="sub", required=True
    )
    ac = ake.add_parser("compare")
    ac.add_argument("--sentence", required=True)
    ac.add_argument("--n", type=int, required=True)
    ac.add_argument("--primes", required=True, help="e.g. 2..50 or 3,5,7")
    ac.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    _json_flag(ac)
    ac.set_defaults(func=_cmd_ake_compare)

    tree = sub.add_parser("tree", help="branching picture of Z_p")
    tree.add_argument("--prime", type=int, required=True)
    tree.add_argument("--depth", type=int, required=True)
    tree.add_argument("--elements", required=True, help="comma-separated integers")
    _json_flag(tree)
    tree.set_defaults(func=_cmd_tree)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except ToolkitError as exc:
        error = {"error": type(exc).__name__, "message": str(exc)}
        if args.json:
            print(json.dumps(error, sort_keys=True))
        else:
            print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(report.to_json())
    elif report.command == "tree":
        print(report.payload["rendering"])
    else:
        print(report.to_text())
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
