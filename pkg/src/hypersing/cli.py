"""Command-line front end.

Each job is one key-value document::

    # E6 invariants
    command = invariants
    vars = x, y
    f = x^3 + y^4

Keys: ``command``, ``vars``, ``f``, ``trunc``, ``phi`` (one component per
coordinate), ``v`` (vector field components), ``omega``, ``omega_prime``,
``alpha``.  Indented lines continue the previous value; ``[section]``
headers and ``#`` comments are ignored.

Exit codes: 0 success, 1 soundness alarm (a claimed-equivalent pair whose
primitive has nonzero class), 2 input error, 3 non-isolated germ,
4 truncation too low.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .cohomology import givental_class_is_zero, restriction_vanishes, stabilized_truncation, verify_ses1
from .converse import VolumeForm, verify_converse
from .errors import (HypersingError, NonIsolatedError, NotEquivalent, NotIsotropy, NotIsotropyFamily,
                     NotTangentToIdentity, NotVolume, ParseError, TruncationTooLow)
from .forms import PForm, VectorField, format_form
from .interp import (FormalDiffeo, exp_at, exp_field, interpolate, interpolate_unit, log_diffeo,
                     validate_isotropy)
from .parsing import parse_components, parse_form, parse_poly, parse_variables
from .poly import Poly, RingSpec, format_poly
from .singularity import analyze

SCHEMA = 1
COMMANDS = ("invariants", "cohomology", "interpolate", "class", "verify-converse")
KEYS = ("command", "vars", "f", "trunc", "phi", "v", "omega", "omega_prime", "alpha")
REQUIRED = {
    "invariants": ("f",),
    "cohomology": ("f",),
    "interpolate": (),
    "class": ("f", "alpha"),
    "verify-converse": ("f", "omega", "omega_prime"),
}
DEFAULT_TRUNCATION = 8

EXIT_OK, EXIT_ALARM, EXIT_INPUT, EXIT_NONISOLATED, EXIT_TRUNCATION = 0, 1, 2, 3, 4


@dataclass
class JobSpec:
    command: str
    ring: RingSpec
    trunc: int
    f: Poly | None = None
    phi: FormalDiffeo | None = None
    v: VectorField | None = None
    omega: PForm | None = None
    omega_prime: PForm | None = None
    alpha: PForm | None = None

    def echo(self) -> dict:
        out = {"command": self.command, "vars": list(self.ring.variables), "trunc": self.trunc}
        if self.f is not None:
            out["f"] = format_poly(self.f)
        if self.phi is not None:
            out["phi"] = [format_poly(c) for c in self.phi.components]
        if self.v is not None:
            out["v"] = [format_poly(c) for c in self.v.components]
        for key in ("omega", "omega_prime", "alpha"):
            value = getattr(self, key)
            if value is not None:
                out[key] = format_form(value)
        return out


def _split_document(text: str) -> dict[str, tuple[str, int, int]]:
    entries: dict[str, tuple[str, int, int]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if body[0] in " \t" and current is not None:
            value, line, col = entries[current]
            entries[current] = (value + "\n" + body, line, col)
            continue
        stripped = body.strip()
        if stripped.startswith("[") and stripped.endswith("]"):
            current = None
            continue
        if "=" not in body:
            raise ParseError("expected 'key = value'", lineno, 1)
        key, value = body.split("=", 1)
        key = key.strip()
        if key == "omega'":
            key = "omega_prime"
        if key not in KEYS:
            raise ParseError(f"unknown key {key!r}", lineno, 1)
        if key in entries:
            raise ParseError(f"duplicate key {key!r}", lineno, 1)
        col = len(body) - len(value) + 1
        lead = len(value) - len(value.lstrip())
        entries[key] = (value.lstrip(), lineno, col + lead)
        current = key
    return entries


def parse_job(document: str, command: str | None = None) -> JobSpec:
    entries = _split_document(document)
    doc_command = entries.get("command", (None,))[0]
    doc_command = doc_command.strip() if doc_command else None
    if command and doc_command and command != doc_command:
        raise ParseError(f"document is a {doc_command!r} job, not {command!r}")
    command = command or doc_command
    if command not in COMMANDS:
        raise ParseError(f"unknown or missing command {command!r}")
    if "vars" not in entries:
        raise ParseError("missing required field 'vars'")
    try:
        ring = RingSpec(parse_variables(entries["vars"][0]))
    except ValueError as exc:
        raise ParseError(str(exc), entries["vars"][1], entries["vars"][2]) from exc
    for key in REQUIRED[command]:
        if key not in entries:
            raise ParseError(f"missing required field {key!r} for command {command!r}")
    if command in ("interpolate", "verify-converse") and "phi" not in entries and "v" not in entries:
        raise ParseError(f"command {command!r} needs 'phi' or 'v'")

    trunc = DEFAULT_TRUNCATION
    if "trunc" in entries:
        text, line, col = entries["trunc"]
        if not text.strip().isdigit():
            raise ParseError("trunc must be a non-negative integer", line, col)
        trunc = int(text)

    job = JobSpec(command, ring, trunc)
    if "f" in entries:
        text, line, col = entries["f"]
        job.f = parse_poly(text, ring, line, col)
    if "phi" in entries:
        text, line, col = entries["phi"]
        comps = parse_components(text, ring, line, col)
        job.phi = FormalDiffeo(tuple(comps), trunc)
    if "v" in entries:
        text, line, col = entries["v"]
        job.v = VectorField(parse_components(text, ring, line, col), ring)
    for key, degree in (("omega", ring.nvars), ("omega_prime", ring.nvars), ("alpha", ring.n)):
        if key in entries:
            text, line, col = entries[key]
            form = parse_form(text, ring, line, col)
            if form.degree != degree:
                raise ParseError(f"{key} must be a {degree}-form", line, col)
            setattr(job, key, form)
    return job


@dataclass
class Report:
    command: str
    input: dict
    result: dict = field(default_factory=dict)
    exit_code: int = 0
    error: str | None = None
    timing: dict = field(default_factory=dict)
    schema: int = SCHEMA

    def to_dict(self, timing: bool = True) -> dict:
        out = {"schema": self.schema, "command": self.command, "input": self.input,
               "result": self.result, "exit_code": self.exit_code, "error": self.error}
        if timing:
            out["timing"] = self.timing
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        data = json.loads(text)
        return cls(data["command"], data["input"], data["result"], data["exit_code"], data["error"],
                   data.get("timing", {}), data["schema"])


def _diffeo_of(job: JobSpec) -> FormalDiffeo:
    if job.phi is not None:
        return job.phi
    return exp_at(job.v, job.trunc)


def _run_interpolate(job: JobSpec) -> dict:
    phi = _diffeo_of(job)
    N = job.trunc
    family = interpolate(phi, N)
    generator = log_diffeo(phi, N)
    oracle = exp_field(generator, N)
    ring = phi.ring
    result = {
        "phi": [format_poly(c) for c in phi.components],
        "generator": [format_poly(c) for c in generator.components],
        "family": [format_poly(c) for c in family.components],
        "checks": {
            "phi0_identity": family.at(0) == FormalDiffeo.identity(ring, N),
            "phi1_matches": family.at(1).components == phi.components,
            "matches_exp_log": family.components == oracle.components,
            "generator_matches_log": family.generator() == generator,
        },
    }
    if job.f is not None:
        g = validate_isotropy(phi, job.f, N)
        g_t = interpolate_unit(family, job.f, N)
        result["unit"] = format_poly(g)
        result["unit_family"] = format_poly(g_t.g)
        result["checks"]["unit_family_at_1"] = g_t.at(1) == g
    return result


def _run(job: JobSpec) -> tuple[dict, int]:
    if job.command == "invariants":
        report = analyze(job.f)
        if not report.isolated:
            return report.to_dict(), EXIT_NONISOLATED
        return report.to_dict(), EXIT_OK
    if job.command == "cohomology":
        return verify_ses1(job.f).to_dict(), EXIT_OK
    if job.command == "interpolate":
        return _run_interpolate(job), EXIT_OK
    if job.command == "class":
        N = stabilized_truncation(job.f)
        return {
            "f": format_poly(job.f),
            "alpha": format_form(job.alpha),
            "class_zero": givental_class_is_zero(job.f, job.alpha, N),
            "restriction_vanishes": restriction_vanishes(job.f, job.alpha),
            "stabilized_at": N,
            "certificate": "formal/jet-level",
        }, EXIT_OK
    if job.command == "verify-converse":
        omega = VolumeForm.from_form(job.omega, job.trunc)
        omega_prime = VolumeForm.from_form(job.omega_prime, job.trunc)
        report = verify_converse(job.f, omega, omega_prime, _diffeo_of(job), job.trunc)
        code = EXIT_OK if report.class_zero else EXIT_ALARM
        return report.to_dict(), code
    raise ParseError(f"unknown command {job.command!r}")


def run(job: JobSpec) -> tuple[Report, int]:
    start = time.perf_counter()
    report = Report(job.command, job.echo())
    try:
        report.result, report.exit_code = _run(job)
        if job.command == "invariants" and report.exit_code == EXIT_NONISOLATED:
            report.error = "non-isolated"
    except NonIsolatedError as exc:
        report.exit_code, report.error = EXIT_NONISOLATED, f"non-isolated: {exc}"
    except TruncationTooLow as exc:
        report.exit_code, report.error = EXIT_TRUNCATION, f"truncation too low: {exc}"
    except (NotEquivalent, NotIsotropy, NotIsotropyFamily, NotVolume, NotTangentToIdentity, ParseError) as exc:
        report.exit_code, report.error = EXIT_INPUT, f"{type(exc).__name__}: {exc}"
    except (HypersingError, ValueError) as exc:
        report.exit_code, report.error = EXIT_INPUT, f"{type(exc).__name__}: {exc}"
    report.timing = {"seconds": round(time.perf_counter() - start, 6)}
    return report, report.exit_code


def _flatten(prefix: str, value, rows: list):
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else k, value[k], rows)
    elif isinstance(value, list):
        if not value:
            rows.append((prefix, "[]"))
        for i, item in enumerate(value):
            _flatten(f"{prefix}[{i}]", item, rows)
    else:
        rows.append((prefix, "null" if value is None else str(value).lower() if isinstance(value, bool) else str(value)))


def format_table(report: Report) -> str:
    rows = [("command", report.command)]
    _flatten("", report.result, rows)
    if report.error:
        rows.append(("error", report.error))
    rows.append(("exit_code", str(report.exit_code)))
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def run_document(text: str, command: str | None = None) -> Report:
    try:
        job = parse_job(text, command)
    except (ParseError, NotTangentToIdentity, ValueError) as exc:
        report = Report(command or "unknown", {}, exit_code=EXIT_INPUT, error=f"{type(exc).__name__}: {exc}")
        return report
    report, _ = run(job)
    return report


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="hypersing", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS + ("run",):
        p = sub.add_parser(name, help="job taking its command from the document" if name == "run" else f"{name} job")
        p.add_argument("document", help="job document path, or - for stdin")
        p.add_argument("--json", metavar="PATH", help="write the JSON report here")
        p.add_argument("--quiet", action="store_true", help="suppress the table on stdout")
    args = parser.parse_args(argv)

    text = sys.stdin.read() if args.document == "-" else Path(args.document).read_text(encoding="utf-8")
    report = run_document(text, None if args.command == "run" else args.command)
    if not args.quiet:
        print(format_table(report))
    if args.json:
        Path(args.json).write_text(report.to_json(), encoding="utf-8")
    if report.error and args.quiet:
        print(report.error, file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
