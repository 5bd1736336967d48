"""Text grammar for forms.

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)* | factor factor ...  (juxtaposition not allowed)
    factor := ('+'|'-') factor | atom ('^' integer)?
    atom   := number | name | '(' expr ')'

Identifiers are either form variables or parameters. A parameter bound to a
rational is substituted; a parameter bound to None becomes the indeterminate
of a rational function field.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping, Sequence

from ..scalarfield import MPoly, RatFunc, UniPoly
from ..symtensor import MultiIndex
from .form import Form

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class FormSyntaxError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FormSyntaxError(f"unexpected character at position {pos}: {text[pos:pos + 10]!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise FormSyntaxError(f"expected {op!r}, found {val!r}")

    def parse(self) -> MPoly:
        e = self.expr()
        if self.i != len(self.toks):
            raise FormSyntaxError(f"unexpected token {self.peek()[1]!r}")
        return e

    def expr(self) -> MPoly:
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> MPoly:
        acc = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            f = self.factor()
            if op == "*":
                acc = acc * f
            else:
                if not f.is_constant() or f.is_zero():
                    raise FormSyntaxError("division is only allowed by nonzero numbers")
                acc = acc / f.constant_term()
        return acc

    def factor(self) -> MPoly:
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            f = self.factor()
            return -f if val == "-" else f
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or not val.isdigit():
                raise FormSyntaxError("exponents must be nonnegative integers")
            base = base ** int(val)
        return base

    def atom(self) -> MPoly:
        kind, val = self.take()
        if kind == "num":
            if "." in val:
                return MPoly.const(Fraction(val))
            return MPoly.const(Fraction(val))
        if kind == "name":
            return MPoly.var(val)
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect(")")
            return e
        raise FormSyntaxError(f"unexpected token {val!r}")


def parse_poly(text: str) -> MPoly:
    return _Parser(_tokenize(text)).parse()


def _var_key(name: str):
    m = re.fullmatch(r"([A-Za-z_]+)(\d*)", name)
    if m:
        return (m.group(1), int(m.group(2)) if m.group(2) else -1)
    return (name, -1)


def sort_varnames(names) -> list[str]:
    return sorted(names, key=_var_key)


def parse_form(
    text: str,
    variables: Sequence[str] | None = None,
    params: Mapping[str, object] | None = None,
    degree: int | None = None,
) -> Form:
    """Parse text into a homogeneous Form.

    `variables` fixes the variable list and order; otherwise every
    identifier that is not a parameter is a variable, ordered by name.
    """
    params = dict(params or {})
    poly = parse_poly(text)
    names = poly.variables()
    if variables is None:
        variables = sort_varnames(n for n in names if n not in params)
    variables = list(variables)
    unknown = sorted(n for n in names if n not in params and n not in variables)
    if unknown:
        raise FormSyntaxError(f"unknown variable(s) {', '.join(unknown)}")

    symbolic = [k for k, v in params.items() if v is None and k in names]
    if len(symbolic) > 1:
        raise FormSyntaxError("at most one symbolic parameter is supported")
    numeric = {k: Fraction(v) for k, v in params.items() if v is not None}
    poly = poly.subs(numeric)

    n = len(variables)
    terms: dict = {}
    for mono, c in poly.terms.items():
        exps = [0] * n
        coeff = c
        for v, e in mono:
            if v in variables:
                exps[variables.index(v)] += e
            else:
                coeff = coeff * RatFunc(UniPoly.monomial(e), var=v)
        key = MultiIndex(exps)
        terms[key] = terms[key] + coeff if key in terms else coeff
    if symbolic:
        var = symbolic[0]
        terms = {
            k: (c if isinstance(c, RatFunc) else RatFunc(UniPoly([c]), var=var))
            for k, c in terms.items()
        }
    terms = {k: c for k, c in terms.items() if c}
    degrees = {k.order for k in terms}
    if len(degrees) > 1:
        by_deg: dict = {}
        for k in terms:
            by_deg.setdefault(k.order, []).append(k)
        detail = "; ".join(
            f"degree {d}: "
            + ", ".join(_mono_text(k, variables) for k in sorted(by_deg[d], reverse=True))
            for d in sorted(by_deg)
        )
        raise FormSyntaxError(f"mixed degrees in form ({detail})")
    if not terms:
        if degree is None:
            degree = 0
        return Form.zero(max(n, 1), degree, tuple(variables) if variables else ())
    d = degrees.pop()
    if degree is not None and degree != d:
        raise FormSyntaxError(f"form has degree {d}, expected {degree}")
    return Form(n, d, terms, tuple(variables))


def _mono_text(k, variables) -> str:
    s = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(variables, k) if e)
    return s or "1"


def read_form_file(path: str, params: Mapping[str, object] | None = None) -> list[Form]:
    """One form per line; '#' comments; optional 'vars: a,b,c' and 'params: g=1/2' lines."""
    with open(path, encoding="utf-8") as fh:
        return parse_form_lines(fh.read().splitlines(), params)


def parse_form_lines(lines, params: Mapping[str, object] | None = None) -> list[Form]:
    variables = None
    prm = dict(params or {})
    out = []
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        low = line.lower()
        if low.startswith("vars:"):
            variables = [v.strip() for v in line[5:].split(",") if v.strip()]
            continue
        if low.startswith("params:"):
            for item in line[7:].split(","):
                item = item.strip()
                if not item:
                    continue
                if "=" in item:
                    k, v = item.split("=", 1)
                    prm.setdefault(k.strip(), Fraction(v.strip()))
                else:
                    prm.setdefault(item, None)
            continue
        out.append(parse_form(line, variables, prm))
    if variables is None and out:
        # align all forms on the union of their variables
        names = set()
        for f in out:
            names.update(f.varnames)
        allv = sort_varnames(names)
        out = [
            f if list(f.varnames) == allv else f.embed(len(allv), [allv.index(v) for v in f.varnames], allv)
            for f in out
        ]
    return out
