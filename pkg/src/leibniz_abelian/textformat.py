"""Text documents for algebras and extension specs.

Grammar (blank lines and ``#`` comments are ignored)::

    kind: algebra            kind: spec
    basis: e1, e2, e3        r: 2
    [e1,e2] = 1/2*e3 - e1    s: 1
                             [x,n1] = n1 + 2*n2

Unlisted brackets are zero. Spec documents use the labels n1..nr, x1..xs
(``n`` and ``x`` when r or s is 1).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import LeibnizAlgebra
from .errors import ParseError
from .extension import ExtensionSpec, build_algebra, labels_for, spec_from_algebra

_RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?")
_LABEL = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_HEADER = re.compile(r"([a-z]+)\s*:\s*(.*)$")
_BRACKET = re.compile(r"\[\s*([^,\]\s]+)\s*,\s*([^,\]\s]+)\s*\]\s*=\s*(.*)$")


def parse_rational(text: str, line: int | None = None, column: int | None = None) -> Fraction:
    """Exact literal ``p`` or ``p/q`` with q > 0; floats are rejected."""
    text = text.strip()
    if not _RATIONAL.fullmatch(text):
        raise ParseError(f"malformed rational {text!r}", line, column)
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {text!r}", line, column) from None


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*(\*)?\s*)?([A-Za-z_][A-Za-z0-9_]*)?\s*")


def _parse_rhs(text: str, line: int, col0: int, labels: dict) -> dict:
    """Linear combination ``c1*k1 + c2*k2 - k3``, or ``0``."""
    out: dict = {}
    pos = 0
    while True:
        m = _TERM.match(text, pos)
        sign, num, star, label = m.groups()
        col = col0 + pos
        if pos and sign is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        if num is None and label is None:
            raise ParseError("expected a term", line, col0 + m.end())
        if star and label is None:
            raise ParseError("expected a basis label after '*'", line, col0 + m.end())
        if num is not None and label is not None and not star:
            raise ParseError("expected '*' between coefficient and label", line, col)
        coef = parse_rational(num, line, col) if num is not None else Fraction(1)
        if sign == "-":
            coef = -coef
        if label is None:
            if coef != 0:
                raise ParseError("a bare nonzero scalar is not a basis combination", line, col)
        elif label not in labels:
            raise ParseError(f"unknown basis label {label!r}", line, col)
        else:
            out[label] = out.get(label, Fraction(0)) + coef
        pos = m.end()
        if pos >= len(text):
            return out


def parse_document(text: str):
    """Parse one document into a :class:`LeibnizAlgebra` or :class:`ExtensionSpec`."""
    headers: dict = {}
    brackets = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        indent = len(body) - len(body.lstrip())
        stripped = body.strip()
        if stripped.startswith("["):
            m = _BRACKET.match(stripped)
            if not m:
                raise ParseError("malformed bracket line", lineno, indent + 1)
            brackets.append((lineno, m, indent + m.start(3) + 1))
            continue
        m = _HEADER.match(stripped)
        if not m:
            raise ParseError("expected 'key: value' or a bracket line", lineno, indent + 1)
        key = m.group(1)
        if key in headers:
            raise ParseError(f"duplicate header {key!r}", lineno, indent + 1)
        headers[key] = (lineno, m.group(2).strip())
    if "kind" not in headers:
        raise ParseError("missing 'kind:' header", 1, 1)
    kind_line, kind = headers["kind"]
    if kind == "algebra":
        allowed = {"kind", "basis"}
        if "basis" not in headers:
            raise ParseError("algebra documents need a 'basis:' header", kind_line, 1)
        bline, btext = headers["basis"]
        labels = [t.strip() for t in btext.split(",")] if btext else []
        for lab in labels:
            if not _LABEL.fullmatch(lab):
                raise ParseError(f"invalid basis label {lab!r}", bline, 1)
        if len(set(labels)) != len(labels):
            raise ParseError("repeated basis label", bline, 1)
    elif kind == "spec":
        allowed = {"kind", "r", "s"}
        dims = {}
        for key in ("r", "s"):
            if key not in headers:
                raise ParseError(f"spec documents need an '{key}:' header", kind_line, 1)
            ln, val = headers[key]
            if not re.fullmatch(r"\d+", val) or int(val) < 1:
                raise ParseError(f"{key} must be a positive integer", ln, 1)
            dims[key] = int(val)
        labels = labels_for(dims["r"], dims["s"])
    else:
        raise ParseError(f"unknown kind {kind!r} (expected algebra or spec)", kind_line, 1)
    extra = set(headers) - allowed
    if extra:
        key = sorted(extra, key=lambda k: headers[k][0])[0]
        raise ParseError(f"unexpected header {key!r}", headers[key][0], 1)
    index = {lab: i for i, lab in enumerate(labels)}
    table: dict = {}
    for lineno, m, col in brackets:
        a, b = m.group(1), m.group(2)
        for lab in (a, b):
            if lab not in index:
                raise ParseError(f"unknown basis label {lab!r}", lineno, 1)
        if (a, b) in table:
            raise ParseError(f"bracket [{a},{b}] given twice", lineno, 1)
        rhs = _parse_rhs(m.group(3), lineno, col, index)
        if kind == "spec":
            r = dims["r"]
            if index[a] < r and index[b] < r and any(rhs.values()):
                raise ParseError(f"[{a},{b}] must vanish: the n's span an abelian ideal", lineno, 1)
            if any(index[lab] >= r and c for lab, c in rhs.items()):
                raise ParseError("spec brackets take values in span(n)", lineno, col)
        table[(a, b)] = rhs
    alg = LeibnizAlgebra.from_brackets(labels, table)
    if kind == "algebra":
        return alg
    return spec_from_algebra(alg, dims["r"])


def combination_text(vector, labels) -> str:
    terms = []
    for lab, c in zip(labels, vector):
        if c == 0:
            continue
        mag = abs(c)
        body = lab if mag == 1 else f"{format_rational(mag)}*{lab}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(("+ " if c > 0 else "- ") + body)
    return " ".join(terms)


def emit_algebra(alg: LeibnizAlgebra) -> str:
    lines = ["kind: algebra", "basis: " + ", ".join(alg.basis_labels)]
    lines += _bracket_lines(alg)
    return "\n".join(lines) + "\n"


def emit_spec(spec: ExtensionSpec) -> str:
    lines = ["kind: spec", f"r: {spec.r}", f"s: {spec.s}"]
    lines += _bracket_lines(build_algebra(spec))
    return "\n".join(lines) + "\n"


def emit(value) -> str:
    if isinstance(value, ExtensionSpec):
        return emit_spec(value)
    return emit_algebra(value)


def _bracket_lines(alg: LeibnizAlgebra) -> list[str]:
    labels = alg.basis_labels
    out = []
    for i in range(alg.dim):
        for j in range(alg.dim):
            v = alg.c[i][j]
            if any(v):
                out.append(f"[{labels[i]},{labels[j]}] = {combination_text(v, labels)}")
    return out


def parse_file(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())
