"""Command-line front end.

Exit codes: 0 success or verified, 1 the check ran and found violations or
discrepancies, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from .algebra import (
    LeibnizAlgebra,
    Subspace,
    antisymmetry_failures,
    check_left_leibniz,
    left_annihilator,
    nilradical_check,
    series,
)
from .errors import LeibnizError, LieTypeAlgebra, NoMatch, ParseError
from .extension import ExtensionSpec, build_algebra, validate_spec
from .textformat import combination_text, emit_spec, parse_document, parse_rational

EXIT_OK, EXIT_FOUND, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> tuple[str, str]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return text, hashlib.sha256(text.encode()).hexdigest()[:16]


def _load(path: str, digests: list):
    text, digest = _read(path)
    digests.append(digest)
    return parse_document(text)


def _as_algebra(value) -> LeibnizAlgebra:
    return build_algebra(value) if isinstance(value, ExtensionSpec) else value


def _as_spec(value) -> ExtensionSpec:
    if not isinstance(value, ExtensionSpec):
        raise UsageError("this command needs a 'kind: spec' document")
    return value


def _vec_text(alg: LeibnizAlgebra, v) -> str:
    return combination_text(v, alg.basis_labels) or "0"


def _msg(exc: Exception) -> str:
    # KeyError subclasses quote their message in str()
    return str(exc.args[0]) if exc.args else str(exc)


def _params(text: str | None) -> dict:
    out: dict = {}
    if not text:
        return out
    for item in text.split(","):
        if "=" not in item:
            raise UsageError(f"parameter {item!r} is not name=value")
        name, val = item.split("=", 1)
        try:
            out[name.strip()] = parse_rational(val)
        except ParseError as exc:
            raise UsageError(_msg(exc)) from None
    return out


def _grid(text: str) -> tuple:
    try:
        return tuple(parse_rational(t) for t in text.split(","))
    except ParseError as exc:
        raise UsageError(_msg(exc)) from None


# ---------------------------------------------------------------------------
# Commands: each returns (findings, exit code)
# ---------------------------------------------------------------------------


def cmd_check(args, digests):
    alg = _as_algebra(_load(args.file, digests))
    viol = check_left_leibniz(alg)
    labels = alg.basis_labels
    findings = {
        "dim": alg.dim,
        "leibniz_identity": "pass" if not viol else "fail",
        "violations": [
            {"triple": [labels[i] for i in v.triple], "residual": _vec_text(alg, v.residual)} for v in viol
        ],
        "antisymmetry_failures": [[labels[i], labels[j]] for i, j in antisymmetry_failures(alg)],
    }
    findings["is_lie"] = not viol and not findings["antisymmetry_failures"]
    return findings, EXIT_OK if not viol else EXIT_FOUND


def cmd_series(args, digests):
    alg = _as_algebra(_load(args.file, digests))
    rep = series(alg, args.kind)
    return {
        "kind": rep.kind,
        "dims": list(rep.dims),
        "terminates_at_zero": rep.terminates_at_zero,
        "stabilized": rep.stabilized,
        "terms": [[_vec_text(alg, v) for v in t.basis] for t in rep.terms],
    }, EXIT_OK


def cmd_annihilator(args, digests):
    alg = _as_algebra(_load(args.file, digests))
    ann = left_annihilator(alg)
    return {"dim": ann.dim, "basis": [_vec_text(alg, v) for v in ann.basis]}, EXIT_OK


def cmd_nilradical(args, digests):
    alg = _as_algebra(_load(args.file, digests))
    labels = [t.strip() for t in args.candidate.split(",") if t.strip()]
    index = {lab: i for i, lab in enumerate(alg.basis_labels)}
    for lab in labels:
        if lab not in index:
            raise UsageError(f"unknown basis label {lab!r}")
    vecs = [tuple(Fraction(int(index[lab] == j)) for j in range(alg.dim)) for lab in labels]
    res = nilradical_check(alg, Subspace.span(alg.dim, vecs))
    return {"candidate": labels, "is_nilradical": res.is_nilradical, "reason": res.reason}, (
        EXIT_OK if res.is_nilradical else EXIT_FOUND
    )


def cmd_validate_spec(args, digests):
    spec = _as_spec(_load(args.file, digests))
    res = validate_spec(spec)
    rep = res.report
    return {
        "valid": res.valid,
        "constraints": {
            "eq5a": not rep.eq5a,
            "eq5b": not rep.eq5b,
            "eq5c": not rep.eq5c,
            "sigma": not rep.eq6,
            "bounds": rep.bounds_ok,
            "nilindependent": rep.nilindependent,
        },
        "nilradical": None if res.nilradical is None else res.nilradical.is_nilradical,
        "reasons": list(res.reasons),
    }, EXIT_OK if res.valid else EXIT_FOUND


def _match(args, digests, with_audit: bool):
    from .classifier.canonical import canonical_match

    spec = _as_spec(_load(args.file, digests))
    try:
        m = canonical_match(spec)
    except LieTypeAlgebra as exc:
        return {"matched": False, "lie": True, "reason": str(exc)}, EXIT_FOUND
    except NoMatch as exc:
        return {"matched": False, "reason": str(exc)}, EXIT_FOUND
    data = m.to_json()
    findings = {"matched": True, "entry": data["entry"], "params": data["params"], "trail": data["trail"]}
    if with_audit:
        findings["audit"] = data["audit"]
        findings["canonical_spec"] = emit_spec(m.canonical).splitlines()
    return findings, EXIT_OK


def cmd_canonicalize(args, digests):
    return _match(args, digests, with_audit=False)


def cmd_match(args, digests):
    return _match(args, digests, with_audit=True)


def cmd_catalog(args, digests):
    from .classifier.catalog import catalog, get_entry, instantiate

    if args.entry is None:
        if args.params:
            raise UsageError("--params needs --entry")
        rows = [
            {"entry": e.id, "r": e.r, "params": list(e.params), "sigma": e.printed_sigma,
             "restrictions": e.printed_restrictions}
            for e in catalog()
        ]
        return {"entries": rows}, EXIT_OK
    try:
        entry = get_entry(args.entry)
    except LeibnizError as exc:
        raise UsageError(_msg(exc)) from None
    findings = {
        "entry": entry.id,
        "r": entry.r,
        "params": list(entry.params),
        "sigma": entry.printed_sigma,
        "restrictions": entry.printed_restrictions,
    }
    if args.params is not None:
        params = _params(args.params)
        unknown = sorted(set(params) - set(entry.params))
        if unknown:
            raise UsageError(f"entry ({entry.id}) has no parameter {unknown[0]}")
        try:
            spec = instantiate(entry, params)
        except LeibnizError as exc:
            raise UsageError(_msg(exc)) from None
        findings["spec"] = emit_spec(spec).splitlines()
    return findings, EXIT_OK


def cmd_audit(args, digests):
    from .classifier.audit import audit_all, audit_entry
    from .classifier.catalog import get_entry

    if args.entry is not None:
        try:
            reports = [audit_entry(get_entry(args.entry))]
        except LeibnizError as exc:
            raise UsageError(_msg(exc)) from None
    else:
        reports = audit_all()
    flagged = [r.entry_id for r in reports if r.discrepancy]
    return {
        "flagged": flagged,
        "reports": [r.to_json() for r in reports],
    }, EXIT_FOUND if flagged else EXIT_OK


def cmd_verify_empty(args, digests):
    from .classifier.empty_cases import verify_empty_case

    try:
        cert = verify_empty_case(args.case, parse_rational(args.lam))
    except (LeibnizError, ValueError) as exc:
        if isinstance(exc, AssertionError):
            raise
        raise UsageError(_msg(exc)) from None
    return {"verified": True, "certificate": cert.to_json()}, EXIT_OK


def cmd_verify_l22(args, digests):
    from .classifier.l22 import l22_verify

    rep = l22_verify(_grid(args.grid), jobs=args.jobs)
    return rep.to_json(), EXIT_OK if rep.ok else EXIT_FOUND


def cmd_fingerprint(args, digests):
    from .classifier.fingerprint import compare, invariant_fingerprint

    values = [_as_algebra(_load(p, digests)) for p in args.files]
    findings = {"fingerprints": [invariant_fingerprint(a).to_json() for a in values]}
    if len(values) == 2:
        findings["comparison"] = compare(*values)
    elif len(values) > 2:
        raise UsageError("fingerprint takes one or two files")
    return findings, EXIT_OK


def cmd_orbit_test(args, digests):
    from .classifier.canonical import orbit_test
    from .classifier.catalog import get_entry

    try:
        entry = get_entry(args.entry)
    except LeibnizError as exc:
        raise UsageError(_msg(exc)) from None
    if entry.r > 3:
        raise UsageError("orbit tests cover r <= 3")
    res = orbit_test(entry.id, args.seeds)
    return res.to_json(), EXIT_OK if res.ok else EXIT_FOUND


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="leibniz-abelian", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="emit the report as JSON")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers where supported")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        return sp

    add("check", cmd_check, "Leibniz identity and antisymmetry").add_argument("file")
    sp = add("series", cmd_series, "derived or lower central series")
    sp.add_argument("file")
    sp.add_argument("--kind", choices=["derived", "lower"], default="derived")
    add("annihilator", cmd_annihilator, "left annihilator").add_argument("file")
    sp = add("nilradical", cmd_nilradical, "certify a candidate nilradical")
    sp.add_argument("file")
    sp.add_argument("--candidate", required=True, help="comma-separated basis labels")
    add("validate-spec", cmd_validate_spec, "validate an extension spec").add_argument("file")
    add("canonicalize", cmd_canonicalize, "canonical table form of an L(r,1) spec").add_argument("file")
    add("match", cmd_match, "table entry of an L(r,1) spec with audit data").add_argument("file")
    sp = add("catalog", cmd_catalog, "list or instantiate table rows")
    sp.add_argument("--entry")
    sp.add_argument("--params", help="name=value,... e.g. a=2,sigma=1")
    sp = add("audit", cmd_audit, "audit table rows against the sigma constraint")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--entry")
    g.add_argument("--all", action="store_true")
    sp = add("verify-empty", cmd_verify_empty, "emptiness certificates")
    sp.add_argument("case")
    sp.add_argument("--lam", default="1", help="eigenvalue for l22_nondiagonal")
    sp = add("verify-l22", cmd_verify_l22, "exhaustive L(2,2) grid check")
    sp.add_argument("--grid", default="-1,0,1")
    sp = add("fingerprint", cmd_fingerprint, "isomorphism invariants")
    sp.add_argument("files", nargs="+")
    sp = add("orbit-test", cmd_orbit_test, "random orbit round-trips for a table row")
    sp.add_argument("--entry", required=True)
    sp.add_argument("--seeds", type=int, default=100)
    return p


def _fix_negative_values(argv: list[str]) -> list[str]:
    # argparse takes "-1,0,1" for an option; glue it to its flag
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--grid", "--lam", "--params") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def render_text(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if _flat_list(v):
                lines.append(f"{pad}{k}: [" + ", ".join(_scalar(x) for x in v) + "]")
            elif isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, dict) and v:
                sub = render_text(v, indent + 1)
                sub[0] = f"{pad}- " + sub[0].lstrip()
                lines.extend(sub)
            elif _flat_list(v):
                lines.append(f"{pad}- [" + ", ".join(_scalar(x) for x in v) + "]")
            elif isinstance(v, list) and v:
                lines.append(f"{pad}-")
                lines.extend(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(value))
    return lines


def _flat_list(v) -> bool:
    return isinstance(v, list) and bool(v) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if v == [] or v == {}:
        return "[]" if isinstance(v, list) else "{}"
    return str(v)


def run_command(argv: list[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    digests: list = []
    try:
        args = parser.parse_args(_fix_negative_values(list(argv)))
        if args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        findings, code = args.func(args, digests)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_USAGE
    except LeibnizError as exc:
        print(f"error: {_msg(exc)}", file=err)
        return EXIT_USAGE
    report = {
        "command": args.command,
        "inputs_digest": digests,
        "findings": findings,
        "exit_status": code,
    }
    if args.json:
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        out.write("\n".join(render_text(report)) + "\n")
    return code


def main(argv=None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
