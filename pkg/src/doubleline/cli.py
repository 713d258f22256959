"""Command-line driver: verify, theorem-check, identity-check, claim-check, example.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage or
parse error.  Reports are deterministic functions of flags, files and seed;
wall time is printed to stderr so that stdout is byte-identical across runs.
Rationals are serialized as strings of the shape ``p`` or ``p/q`` and never
as floating-point numbers.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, TextIO

from .engine import (
    AnalysisReport,
    WaringDecomposition,
    analyze,
    generate_six_term_family,
    generate_tangent_instance,
    line_x2,
    six_term_vanishing_check,
    tangency_defect,
    two_value_collapse_check,
    verify_identity_slice,
)
from .errors import (
    DegenerateNodesError,
    GenerationFailureError,
    InvalidInputError,
    TheoremViolationError,
)
from .forms import (
    HomogeneousForm,
    content_normalize,
    embed_in_plane,
    parse_form,
    render_form,
)

RATIONAL_PATTERN = r"-?\d+(/\d+)?"


def parse_rational(text: str) -> Fraction:
    if not re.fullmatch(RATIONAL_PATTERN, text):
        raise ValueError(f"not a rational string: {text!r}")
    if "/" in text and int(text.split("/")[1]) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(text)


def format_rational(value: Fraction) -> str:
    return str(value)


# decomposition documents


@dataclass(frozen=True)
class DecompositionDocument:
    """JSON-serializable decomposition: variables, line, weighted lines."""

    variables: tuple[str, str, str]
    line: tuple[Fraction, Fraction, Fraction]
    terms: tuple[tuple[Fraction, tuple[Fraction, Fraction, Fraction]], ...]


class DocumentError(ValueError):
    pass


def _rational_triple(values, what: str) -> tuple[Fraction, Fraction, Fraction]:
    if not isinstance(values, list) or len(values) != 3:
        raise DocumentError(f"{what} must be a list of 3 rational strings")
    out = []
    for v in values:
        if not isinstance(v, str):
            raise DocumentError(f"{what} entries must be strings, got {v!r}")
        try:
            out.append(parse_rational(v))
        except ValueError as exc:
            raise DocumentError(str(exc)) from exc
    return tuple(out)


def parse_document(text: str) -> DecompositionDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise DocumentError("document must be a JSON object")
    for key in ("variables", "line", "terms"):
        if key not in raw:
            raise DocumentError(f"missing field {key!r}")
    variables = raw["variables"]
    if (
        not isinstance(variables, list)
        or len(variables) != 3
        or not all(isinstance(v, str) for v in variables)
        or len(set(variables)) != 3
    ):
        raise DocumentError("variables must be a list of 3 distinct names")
    line = _rational_triple(raw["line"], "line")
    if not isinstance(raw["terms"], list) or not raw["terms"]:
        raise DocumentError("terms must be a non-empty list")
    terms = []
    for i, term in enumerate(raw["terms"]):
        if not isinstance(term, dict) or set(term) != {"alpha", "linear"}:
            raise DocumentError(f"term {i} must have exactly the fields alpha and linear")
        if not isinstance(term["alpha"], str):
            raise DocumentError(f"term {i}: alpha must be a rational string")
        try:
            alpha = parse_rational(term["alpha"])
        except ValueError as exc:
            raise DocumentError(str(exc)) from exc
        terms.append((alpha, _rational_triple(term["linear"], f"term {i} linear")))
    return DecompositionDocument(
        variables=tuple(variables), line=line, terms=tuple(terms)
    )


def render_document(doc: DecompositionDocument) -> str:
    payload = {
        "variables": list(doc.variables),
        "line": [format_rational(c) for c in doc.line],
        "terms": [
            {
                "alpha": format_rational(alpha),
                "linear": [format_rational(c) for c in linear],
            }
            for alpha, linear in doc.terms
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def document_to_parts(doc: DecompositionDocument) -> tuple[WaringDecomposition, HomogeneousForm]:
    dec = WaringDecomposition(
        tuple((alpha, HomogeneousForm.linear(linear)) for alpha, linear in doc.terms)
    )
    return dec, HomogeneousForm.linear(doc.line)


# run reports


@dataclass
class RunReport:
    command: str
    seed: int | None = None
    fields: list[tuple[str, str]] = field(default_factory=list)
    checks: list[tuple[str, str, str | None]] = field(default_factory=list)

    def add(self, key: str, value) -> None:
        self.fields.append((key, str(value)))

    def check(self, name: str, ok: bool, witness: str | None = None) -> None:
        self.checks.append((name, "pass" if ok else "fail", witness))

    def error(self, name: str, witness: str | None = None) -> None:
        self.checks.append((name, "error", witness))

    @property
    def result(self) -> str:
        statuses = [status for _, status, _ in self.checks]
        if "error" in statuses:
            return "error"
        if "fail" in statuses:
            return "fail"
        return "pass"

    @property
    def exit_code(self) -> int:
        return 0 if self.result == "pass" else 1

    def render_text(self) -> str:
        lines = [f"command: {self.command}"]
        if self.seed is not None:
            lines.append(f"seed: {self.seed}")
        lines.extend(f"{key}: {value}" for key, value in self.fields)
        for name, status, witness in self.checks:
            suffix = f" ({witness})" if witness else ""
            lines.append(f"check {name}: {status}{suffix}")
        lines.append(f"result: {self.result}")
        return "\n".join(lines) + "\n"

    def render_json(self) -> str:
        payload = {
            "command": self.command,
            "seed": self.seed,
            "fields": {key: value for key, value in self.fields},
            "checks": [
                {"name": name, "status": status, "witness": witness}
                for name, status, witness in self.checks
            ],
            "result": self.result,
        }
        return json.dumps(payload, indent=2) + "\n"

    def render(self, as_json: bool) -> str:
        return self.render_json() if as_json else self.render_text()


def _format_vector(values) -> str:
    return " ".join(format_rational(Fraction(v)) for v in values)


def _add_analysis(report: RunReport, analysis: AnalysisReport, line: HomogeneousForm) -> None:
    report.add("input", analysis.summary)
    report.check("divisible-by-line-squared", analysis.divisible)
    if not analysis.divisible:
        report.add("remainder", render_form(analysis.remainder))
        return
    cofactor = analysis.cofactor
    report.add("cofactor", render_form(cofactor))
    factor, primitive = content_normalize(cofactor)
    if factor != 1 and not cofactor.is_zero():
        report.add("cofactor-normalized", f"{format_rational(factor)} * ({render_form(primitive)})")
    report.add("conic-rank", analysis.conic_rank)
    if analysis.tangent is None:
        report.add("tangent", "undefined (zero cofactor)")
    else:
        report.add("tangent", "true" if analysis.tangent else "false")
    if analysis.tangency_point is not None:
        report.add("tangency-point", _format_vector(analysis.tangency_point))
        report.add(
            "tangency-point-in-plane",
            _format_vector(embed_in_plane(line, analysis.tangency_point)),
        )
    cert = analysis.certificate
    if cert is not None:
        report.add("certificate-annihilator", _format_vector(cert.annihilator))
        report.add("certificate-contact-vector", _format_vector(cert.contact_vector))
        report.add("certificate-transversal-point", _format_vector(cert.transversal_point))
        report.add("certificate-line-values", _format_vector(cert.line_values))
        report.add("certificate-bridge", render_form(cert.bridge))
        report.add("certificate-restricted-conic", render_form(cert.restricted_conic.to_form()))
        report.check("certificate-verified", True)


# commands


def cmd_verify(args) -> RunReport:
    report = RunReport(command="verify")
    report.add("file", args.file)
    with open(args.file, encoding="utf-8") as handle:
        doc = parse_document(handle.read())
    dec, doc_line = document_to_parts(doc)
    line = HomogeneousForm.linear(args.line) if args.line else doc_line
    report.add("line", _format_vector(line.linear_coefficients()))
    try:
        analysis = analyze(dec, line)
    except TheoremViolationError as exc:
        report.error("internal-consistency", str(exc))
        return report
    _add_analysis(report, analysis, line)
    return report


def cmd_example(args) -> RunReport:
    report = RunReport(command="example")
    lines = [
        (2, (1, 0, 0)),
        (-1, (1, 0, 1)),
        (-1, (1, 0, -1)),
        (2, (1, 1, 0)),
        (-1, (1, 1, 1)),
        (-1, (1, 1, -1)),
    ]
    dec = WaringDecomposition(
        tuple((Fraction(w), HomogeneousForm.linear(coeffs)) for w, coeffs in lines)
    )
    value = dec.value()
    conic = parse_form("6*x0^2 + 6*x0*x1 + 3*x1^2 + x2^2", 3)
    expected = Fraction(-4) * conic * HomogeneousForm.variable(3, 2) ** 2
    report.add("value", render_form(value))
    report.check("value-identity", value == expected)
    analysis = analyze(dec, line_x2())
    _add_analysis(report, analysis, line_x2())
    report.check("conic-rank-3", analysis.conic_rank == 3)
    report.check("not-tangent", analysis.tangent is False)
    return report


def _node_pool(max_abs: int) -> list[Fraction]:
    pool = {Fraction(n, d) for d in (1, 2, 3) for n in range(-max_abs, max_abs + 1)}
    return sorted(pool)


def cmd_theorem_check(args) -> RunReport:
    report = RunReport(command="theorem-check", seed=args.seed)
    report.add("trials", args.trials)
    report.add("nodes-range", args.nodes_range)
    pool = _node_pool(args.nodes_range)
    tangent = degenerate = retries = 0
    failures: list[str] = []
    for trial in range(args.trials):
        rng = random.Random(f"theorem:{args.seed}:{trial}")
        slopes = tuple(rng.sample(pool, 7))
        params = tuple(
            Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(3)
        )
        try:
            generated = generate_tangent_instance(
                slopes, params, seed=args.seed * 1_000_003 + trial
            )
        except GenerationFailureError:
            failures.append(f"trial {trial}: weight sampling exhausted")
            continue
        retries += generated.weight_retries
        if generated.quartic.cofactor.is_zero():
            degenerate += 1
            continue
        defect = tangency_defect(generated.instance)
        analysis = analyze(generated.instance.to_decomposition(), line_x2())
        ok = (
            defect == 0
            and analysis.tangent is True
            and analysis.certificate is not None
        )
        if ok:
            tangent += 1
        else:
            failures.append(f"trial {trial}: defect={defect}")
    report.add("tangent", tangent)
    report.add("q-zero-degenerate", degenerate)
    report.add("weight-retries", retries)
    report.check(
        "all-nonzero-cofactors-tangent-with-certificate",
        not failures,
        "; ".join(failures) if failures else None,
    )
    return report


def cmd_identity_check(args) -> RunReport:
    report = RunReport(command="identity-check")
    report.add("h", ",".join(format_rational(h) for h in args.h))
    try:
        slice_report = verify_identity_slice(args.h)
    except DegenerateNodesError as exc:
        report.check("distinct-nodes", False, str(exc))
        return report
    report.check("distinct-nodes", True)
    report.add("alpha-dim", slice_report.alpha_dim)
    report.add("beta-dim", slice_report.beta_dim)
    report.add("expanded-monomials", slice_report.expanded_monomials)
    report.add("node-difference-product", format_rational(slice_report.node_difference_product))
    report.check("zero-polynomial", slice_report.is_zero)
    return report


def cmd_claim_check(args) -> RunReport:
    report = RunReport(command="claim-check", seed=args.seed if args.random else None)
    if args.h is not None:
        report.add("h", ",".join(format_rational(h) for h in args.h))
        try:
            result = six_term_vanishing_check(args.h)
        except DegenerateNodesError as exc:
            report.check("distinct-nodes", False, str(exc))
            return report
        report.check("distinct-nodes", True)
        report.add("annihilator", _format_vector(result.annihilator))
        report.check("annihilator-nonzero", result.all_weights_nonzero)
        report.check("lift-family-is-translations", result.family_is_translations)
        report.check(
            "quartic-identically-zero",
            result.quartic_vanishes,
            "quartic identically zero" if result.quartic_vanishes else None,
        )
        return report

    report.add("random-trials", args.random)
    pool = _node_pool(6)
    vanishing_ok = families_ok = 0
    failures: list[str] = []
    for trial in range(args.random):
        rng = random.Random(f"claim:{args.seed}:{trial}")
        slopes = tuple(rng.sample(pool, 6))
        result = six_term_vanishing_check(slopes)
        if result.passed:
            vanishing_ok += 1
        else:
            failures.append(f"trial {trial}: vanishing failed")
        pair = tuple(rng.sample(pool, 2))
        inst = generate_six_term_family(pair, seed=args.seed * 1_000_003 + trial + 1)
        try:
            two_value = two_value_collapse_check(inst)
        except TheoremViolationError as exc:
            failures.append(f"trial {trial}: {exc}")
            continue
        if two_value.applicable:
            families_ok += 1
        else:
            failures.append(f"trial {trial}: generated family not applicable")
    report.add("vanishing-pass", vanishing_ok)
    report.add("two-value-pass", families_ok)
    report.check("all-trials", not failures, "; ".join(failures) if failures else None)
    return report


# argument parsing


def _rational_list(text: str, count: int) -> tuple[Fraction, ...]:
    parts = text.split(",")
    if len(parts) != count:
        raise argparse.ArgumentTypeError(f"expected {count} comma-separated rationals")
    try:
        return tuple(parse_rational(p.strip()) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="doubleline",
        description="Exact decomposition checks for double-line plane quartics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="verify a decomposition document")
    p_verify.add_argument("file")
    p_verify.add_argument("--line", type=lambda s: _rational_list(s, 3), default=None)
    p_verify.add_argument("--json", action="store_true")

    p_theorem = sub.add_parser("theorem-check", help="randomized seven-term tangency suite")
    p_theorem.add_argument("--trials", type=_positive_int, default=20)
    p_theorem.add_argument("--seed", type=_seed, default=0)
    p_theorem.add_argument("--nodes-range", type=_positive_int, default=9)
    p_theorem.add_argument("--json", action="store_true")

    p_identity = sub.add_parser("identity-check", help="symbolic identity on a slope slice")
    p_identity.add_argument("--h", type=lambda s: _rational_list(s, 7), required=True)
    p_identity.add_argument("--json", action="store_true")

    p_claim = sub.add_parser("claim-check", help="six-term collapse checks")
    group = p_claim.add_mutually_exclusive_group(required=True)
    group.add_argument("--h", type=lambda s: _rational_list(s, 6), default=None)
    group.add_argument("--random", type=_positive_int, default=None)
    p_claim.add_argument("--seed", type=_seed, default=0)
    p_claim.add_argument("--json", action="store_true")

    p_example = sub.add_parser("example", help="built-in six-term reference identity")
    p_example.add_argument("--json", action="store_true")

    return parser


_COMMANDS = {
    "verify": cmd_verify,
    "theorem-check": cmd_theorem_check,
    "identity-check": cmd_identity_check,
    "claim-check": cmd_claim_check,
    "example": cmd_example,
}


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    stream = out if out is not None else sys.stdout
    started = time.perf_counter()
    try:
        report = _COMMANDS[args.command](args)
    except (OSError, DocumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvalidInputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TheoremViolationError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 1
    stream.write(report.render(as_json=getattr(args, "json", False)))
    print(f"wall-time: {time.perf_counter() - started:.3f}s", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
