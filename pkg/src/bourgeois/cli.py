"""Command-line front end: structured jobs, cited JSON reports, batch runs.

Words are written as bracketed letters, subset curves for planar pages and
vector curves in general, with signed exponents:

    [S{1,3}:+2][v(1,0,-1):-1]

Reports are JSON objects with stable field names and a schema version;
an Obstructed verdict is a successful computation and exits 0.  Exit 2
flags invalid input, exit 3 an internal tolerance failure.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import forms
from .mcg import TwistWord, word
from .openbook import (
    BrieskornPoint,
    bofill_verdict,
    brieskorn_homology,
    chi_orb_cone_points,
    h1_open_book,
    pants_factorization,
    presentation,
)
from .surface import Surface, new_surface
from .verdict import Verdict, analyze, check_stabilization

SCHEMA_VERSION = "1"
REEB_RESIDUAL_BOUND = 1e-9

COMMANDS = (
    "analyze",
    "stabilize",
    "brieskorn",
    "pants-factorize",
    "h1",
    "verify-contact",
    "verify-cobordism",
    "minimal-k",
    "reeb",
)


class InputError(ValueError):
    """Invalid payload; maps to exit code 2."""


class ToleranceError(RuntimeError):
    """Numerical result outside its contract; maps to exit code 3."""


# ---------------------------------------------------------------------------
# Word literals

_LETTER = re.compile(r"\[(?:S\{([0-9,\s]*)\}|v\(([-0-9,\s]*)\)):([+-]?\d+)\]")


def parse_word_literal(surface: Surface, text: str) -> TwistWord:
    text = text.strip()
    if not text:
        return word(surface, [])
    letters = []
    pos = 0
    while pos < len(text):
        match = _LETTER.match(text, pos)
        if match is None:
            raise InputError(f"malformed word literal near {text[pos:pos + 24]!r}")
        subset_body, vector_body, exp_text = match.groups()
        exponent = int(exp_text)
        if exponent == 0:
            raise InputError("twist exponents must be nonzero")
        if subset_body is not None:
            try:
                subset = {int(tok) for tok in subset_body.split(",") if tok.strip()}
            except ValueError:
                raise InputError(f"bad subset letter {match.group(0)!r}") from None
            if not subset:
                raise InputError("empty subset letter")
            letters.append((subset, exponent))
        else:
            try:
                coeffs = tuple(int(tok) for tok in vector_body.split(",") if tok.strip())
            except ValueError:
                raise InputError(f"bad vector letter {match.group(0)!r}") from None
            if len(coeffs) != surface.rank:
                raise InputError(
                    f"vector letter length {len(coeffs)} does not match rank {surface.rank}"
                )
            letters.append((coeffs, exponent))
        pos = match.end()
    try:
        return word(surface, letters)
    except ValueError as err:
        raise InputError(str(err)) from None


def format_word(w: TwistWord) -> str:
    parts = []
    for curve, exponent in w.letters:
        if curve.planar_subset is not None:
            body = "S{" + ",".join(str(j) for j in sorted(curve.planar_subset)) + "}"
        else:
            body = "v(" + ",".join(str(c) for c in curve.coeffs) + ")"
        parts.append(f"[{body}:{exponent:+d}]")
    return "".join(parts)


# ---------------------------------------------------------------------------
# Job specifications


@dataclass(frozen=True)
class JobSpec:
    command: str
    payload: dict = field(default_factory=dict)
    output_format: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if self.output_format not in ("json", "text"):
            raise InputError(f"unknown output format {self.output_format!r}")

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "payload": self.payload,
            "format": self.output_format,
            "seed": self.seed,
        }

    def serialize(self) -> str:
        return canonical_json(self.to_json())

    @classmethod
    def from_json(cls, doc: dict) -> "JobSpec":
        if not isinstance(doc, dict):
            raise InputError("a job must be a JSON object")
        unknown = set(doc) - {"command", "payload", "format", "seed"}
        if unknown:
            raise InputError(f"unknown job fields {sorted(unknown)}")
        if "command" not in doc:
            raise InputError("job is missing the field 'command'")
        return cls(
            command=doc["command"],
            payload=doc.get("payload", {}),
            output_format=doc.get("format", "json"),
            seed=int(doc.get("seed", 0)),
        )


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# Command implementations


def _surface_from(payload) -> Surface:
    try:
        genus = int(payload["genus"])
        boundary = int(payload["boundary"])
    except KeyError as err:
        raise InputError(f"missing field {err.args[0]!r}") from None
    except (TypeError, ValueError):
        raise InputError("fields 'genus' and 'boundary' must be integers") from None
    if genus < 0:
        raise InputError("field 'genus' must be nonnegative")
    if boundary < 1:
        raise InputError("field 'boundary' must be a positive integer")
    return new_surface(genus, boundary)


def _word_from(surface: Surface, payload) -> TwistWord:
    return parse_word_literal(surface, str(payload.get("word", "")))


def _verdict_result(v: Verdict) -> tuple[dict, list[str], dict]:
    citations = []
    witnesses = {}
    for c in v.criteria:
        if c.citation not in citations:
            citations.append(c.citation)
        if c.witness is not None:
            witnesses[c.name] = c.witness
    result = dict(v.to_json())
    result["headline"] = v.headline()
    return result, citations, witnesses


def _cmd_analyze(payload) -> tuple[dict, list[str], dict]:
    surface = _surface_from(payload)
    w = _word_from(surface, payload)
    return _verdict_result(analyze(surface, w))


def _cmd_stabilize(payload) -> tuple[dict, list[str], dict]:
    surface = _surface_from(payload)
    w = _word_from(surface, payload)
    join = payload.get("join")
    if (
        not isinstance(join, (list, tuple))
        or len(join) != 2
        or not all(isinstance(x, int) for x in join)
    ):
        raise InputError("field 'join' must be a pair of boundary indices")
    i, j = join
    if not (1 <= i <= surface.boundary_count and 1 <= j <= surface.boundary_count):
        raise InputError(
            f"field 'join' indices must lie in 1..{surface.boundary_count}"
        )
    result, citations, witnesses = _verdict_result(
        check_stabilization(surface, w, i, j)
    )
    from .mcg import positive_stabilization

    stab_surface, stab_word = positive_stabilization(surface, w, i, j)
    result["stabilized"] = {
        "genus": stab_surface.genus,
        "boundary": stab_surface.boundary_count,
        "word": format_word(stab_word),
    }
    return result, citations, witnesses


def _cmd_brieskorn(payload) -> tuple[dict, list[str], dict]:
    try:
        n = int(payload["n"])
        k = int(payload["k"])
    except KeyError as err:
        raise InputError(f"missing field {err.args[0]!r}") from None
    except (TypeError, ValueError):
        raise InputError("fields 'n' and 'k' must be integers") from None
    if n < 1:
        raise InputError("field 'n' must be at least 1")
    point = BrieskornPoint(n, k)
    group = brieskorn_homology(point)
    verdict = bofill_verdict(point)
    result, citations, witnesses = _verdict_result(verdict)
    group_text = str(group)
    if n % 2 == 0 and k != 0 and k % 2 == 0:
        group_text += " (torsion unspecified by source)"
    result["middle_homology"] = group_text
    result["n"], result["k"] = n, k
    return result, citations, witnesses


def _cmd_pants_factorize(payload) -> tuple[dict, list[str], dict]:
    a = payload.get("a")
    if not isinstance(a, (list, tuple)) or len(a) != 3:
        raise InputError("field 'a' must be a list of three integers")
    try:
        a1, a2, a3 = (int(x) for x in a)
    except (TypeError, ValueError):
        raise InputError("field 'a' must be a list of three integers") from None
    n, f_word, g_word, chi_f, chi_g = pants_factorization(a1, a2, a3)
    cone_f = chi_orb_cone_points(a1, a2, a3, n)
    cone_g = chi_orb_cone_points(0, 0, 0, -n)
    result = {
        "N": n,
        "F": format_word(f_word),
        "G": format_word(g_word),
        "chi_orb_F": str(chi_f),
        "chi_orb_G": str(chi_g),
        # The printed multiplicity convention above differs from the
        # standard cone-point convention; both are reported, with a flag
        # when they disagree about the sign.
        "chi_orb_F_cone_points": str(cone_f),
        "chi_orb_G_cone_points": str(cone_g),
        "sign_disagreement": {
            "F": (chi_f < 0) != (cone_f < 0),
            "G": (chi_g < 0) != (cone_g < 0),
        },
        "surgery_coefficients": [
            str(Fraction(-1, n + ai)) for ai in (a1, a2, a3)
        ],
    }
    citation = (
        "Lemma 5.2 / Factorization Lemma: the pants monodromy splits as "
        "F o G with F = prod tau_i^(N+a_i), G = tau^(-N), both of "
        "negative orbifold Euler characteristic"
    )
    return result, [citation], {}


def _cmd_h1(payload) -> tuple[dict, list[str], dict]:
    surface = _surface_from(payload)
    w = _word_from(surface, payload)
    pres = presentation(surface, w)
    group = pres.homology()
    result = {
        "group": str(group),
        "free_rank": group.free_rank,
        "torsion": list(group.torsion),
        "relations": pres.relations.to_lists(),
    }
    return result, [], {}


def _resolution_from(payload):
    res = payload.get("resolution")
    if res is None or isinstance(res, int):
        return res
    if isinstance(res, dict):
        return {str(k): int(v) for k, v in res.items()}
    if isinstance(res, list):
        return tuple(int(x) for x in res)
    raise InputError("field 'resolution' must be an int, list, or axis map")


def _model_from(payload) -> forms.Model:
    name = payload.get("model")
    if not isinstance(name, str) or not name:
        raise InputError("field 'model' must name a built-in model or a JSON file")
    try:
        return forms.builtin_model(name)
    except KeyError:
        if os.path.exists(name):
            try:
                return forms.load_model(name)
            except (ValueError, KeyError, json.JSONDecodeError) as err:
                raise InputError(f"bad model file {name!r}: {err}") from None
        raise InputError(
            f"field 'model': unknown model {name!r} and no such file"
        ) from None


def _cmd_verify_contact(payload) -> tuple[dict, list[str], dict]:
    model = _model_from(payload)
    resolution = _resolution_from(payload)
    if resolution is None and model.resolution is not None:
        resolution = model.resolution
    try:
        report = forms.verify_contact_form(model.beta, resolution)
    except ValueError as err:
        raise InputError(str(err)) from None
    result = report.to_json()
    result["model"] = model.name
    result["contact_at_samples"] = report.sign_definite
    citation = (
        "Thm 2.1: the Bourgeois 1-form alpha + Phi_1 dq1 - Phi_2 dq2 is "
        "contact; checked as sign-definiteness of beta ^ (d beta)^n at the "
        "sample grid"
    )
    return result, [citation], {}


def _cmd_verify_cobordism(payload) -> tuple[dict, list[str], dict]:
    kwargs = {}
    for key in ("amplitude", "sphere_area", "cap"):
        if key in payload:
            kwargs[key] = float(payload[key])
    for key in ("chi_knots", "rho_knots", "h_support"):
        if key in payload:
            kwargs[key] = tuple(float(x) for x in payload[key])
    try:
        density, chart = forms.cobordism_density(**kwargs)
    except ValueError as err:
        raise InputError(str(err)) from None
    resolution = _resolution_from(payload)
    if resolution is None:
        resolution = 8
    report = forms.scan_density(density, chart, resolution)
    result = report.to_json()
    result["parameters"] = {k: list(v) if isinstance(v, tuple) else v for k, v in kwargs.items()}
    if report.verdict != "Positive":
        result["flag"] = (
            "NonPositive sample found; outside the paper-shaped parameter "
            "regime? argmin recorded above"
        )
    citation = (
        "Lemma 6.2: d[e^t(alpha + chi(t) rho dH)] + omega_S is symplectic "
        "on the slab; the top density reduces to (d lambda)^n ^ dt ^ dx ^ "
        "omega_S"
    )
    return result, [citation], {}


def _cmd_minimal_k(payload) -> tuple[dict, list[str], dict]:
    amplitude = float(payload.get("amplitude", 0.0))
    k_range = payload.get("k_range", [0.01, 64.0])
    if not isinstance(k_range, (list, tuple)) or len(k_range) != 2:
        raise InputError("field 'k_range' must be [lo, hi]")
    chart, beta_of_k = forms.large_k_model(amplitude=amplitude)
    resolution = _resolution_from(payload)
    try:
        report = forms.minimal_positive_parameter(
            lambda k: forms.contact_density(beta_of_k(k)),
            chart,
            (float(k_range[0]), float(k_range[1])),
            resolution,
        )
    except ValueError as err:
        raise InputError(str(err)) from None
    result = report.to_json()
    result["amplitude"] = amplitude
    citation = (
        "the mapping-torus form K d(theta) + lambda is contact for large "
        "K; bisection locates the smallest grid-positive K"
    )
    return result, [citation], {}


def _cmd_reeb(payload) -> tuple[dict, list[str], dict]:
    model = _model_from(payload)
    point = payload.get("point")
    if not isinstance(point, dict):
        raise InputError("field 'point' must map coordinate names to values")
    try:
        point = {str(k): float(v) for k, v in point.items()}
        report = forms.reeb_solve(model.beta, point)
    except (TypeError, ValueError) as err:
        raise InputError(str(err)) from None
    if max(report.residual_pairing, report.residual_contraction) > REEB_RESIDUAL_BOUND:
        raise ToleranceError(
            f"Reeb residuals exceed {REEB_RESIDUAL_BOUND:g}: "
            f"{report.residual_pairing:g}, {report.residual_contraction:g}"
        )
    result = report.to_json()
    result["model"] = model.name
    citation = (
        "Obs 2.4 context: the Reeb field is the unique solution of "
        "beta(R) = 1, iota_R d(beta) = 0"
    )
    return result, [citation], {}


_IMPLS = {
    "analyze": _cmd_analyze,
    "stabilize": _cmd_stabilize,
    "brieskorn": _cmd_brieskorn,
    "pants-factorize": _cmd_pants_factorize,
    "h1": _cmd_h1,
    "verify-contact": _cmd_verify_contact,
    "verify-cobordism": _cmd_verify_cobordism,
    "minimal-k": _cmd_minimal_k,
    "reeb": _cmd_reeb,
}


def run(job: JobSpec) -> tuple[int, str]:
    """Execute one job; returns (exit code, rendered report)."""
    try:
        result, citations, witnesses = _IMPLS[job.command](job.payload)
    except InputError as err:
        return 2, render_error(job, 2, str(err))
    except ToleranceError as err:
        return 3, render_error(job, 3, str(err))
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": job.command,
        "input_echo": job.to_json(),
        "result": result,
        "citations": citations,
        "witnesses": witnesses,
    }
    if job.output_format == "text":
        return 0, render_text(report)
    return 0, canonical_json(report)


def render_error(job: JobSpec, code: int, message: str) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": job.command,
        "input_echo": job.to_json(),
        "error": {"exit_code": code, "message": message},
    }
    if job.output_format == "text":
        return f"error ({job.command}): {message}"
    return canonical_json(doc)


def render_text(report: dict) -> str:
    lines = [f"command: {report['command']}"]
    result = report["result"]
    lead = [k for k in ("summary", "headline") if k in result]
    rest = sorted(k for k in result if k not in lead)
    for key in lead + rest:
        val = result[key]
        if key == "criteria":
            for c in val:
                lines.append(f"  [{c['status']}] {c['name']}")
        elif key == "min_density":
            lines.append(
                f"density range: [{result['min_density']}, {result['max_density']}] "
                f"at {result['samples']} samples"
            )
        elif key in ("max_density", "samples", "relations", "argmin", "resolution"):
            continue
        elif isinstance(val, (str, int, float, bool)):
            lines.append(f"{key}: {val}")
        elif isinstance(val, (list, dict)) and key in ("vector", "point", "tested",
                                                       "torsion", "stabilized",
                                                       "surgery_coefficients"):
            lines.append(f"{key}: {val}")
    for cite in report.get("citations", []):
        lines.append(f"cite: {cite}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Batch runs


def _classify(result: dict) -> str:
    summary = result.get("summary")
    if summary in ("NotStronglyFillable", "WeaklyFillableOnly"):
        return "obstructed"
    if summary == "SteinFillable":
        return "passed"
    if summary == "NoObstructionFound":
        return "unknown"
    if "contact_at_samples" in result:
        return "passed" if result["contact_at_samples"] else "unknown"
    if result.get("verdict") == "Positive":
        return "passed"
    if "verdict" in result:
        return "unknown"
    return "passed"


def batch(lines, threads: int | None = None) -> dict:
    """Run newline-delimited JSON jobs; per-line errors do not stop the run."""
    jobs = []
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        jobs.append((lineno, line))

    def run_one(item):
        lineno, text = item
        try:
            job = JobSpec.from_json(json.loads(text))
        except (json.JSONDecodeError, InputError) as err:
            return {"line": lineno, "error": str(err)}
        code, rendered = run(
            JobSpec(job.command, job.payload, "json", job.seed)
        )
        doc = json.loads(rendered)
        doc["line"] = lineno
        doc["exit_code"] = code
        return doc

    if threads is None:
        threads = int(os.environ.get("BOURGEOIS_THREADS", "1"))
    if threads > 1 and len(jobs) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(run_one, jobs))
    else:
        reports = [run_one(item) for item in jobs]

    tally = {"obstructed": 0, "passed": 0, "unknown": 0, "errors": 0}
    for doc in reports:
        if "error" in doc:
            tally["errors"] += 1
        else:
            tally[_classify(doc["result"])] += 1
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "batch",
        "reports": reports,
        "tally": tally,
    }


# ---------------------------------------------------------------------------
# argparse front end


def _add_surface_args(sub):
    sub.add_argument("--genus", type=int, required=True)
    sub.add_argument("--boundary", type=int, required=True)
    sub.add_argument("--word", type=str, default="")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bourgeois",
        description="homological fillability obstructions for Bourgeois "
        "contact manifolds, plus numerical checks of the coordinate models",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser(
        "analyze", parents=[common], help="run the obstruction battery on an open book"
    )
    _add_surface_args(p)

    p = subs.add_parser(
        "stabilize", parents=[common], help="positively stabilize, then analyze"
    )
    _add_surface_args(p)
    p.add_argument("--join", type=int, nargs=2, required=True, metavar=("I", "J"))

    p = subs.add_parser(
        "brieskorn", parents=[common], help="twist powers on the sphere cotangent page"
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = subs.add_parser(
        "pants-factorize", parents=[common], help="split a pants monodromy"
    )
    p.add_argument("--a", type=int, nargs=3, required=True, metavar=("A1", "A2", "A3"))

    p = subs.add_parser(
        "h1", parents=[common], help="first homology of the open book"
    )
    _add_surface_args(p)

    p = subs.add_parser(
        "verify-contact", parents=[common], help="grid-check a contact form"
    )
    p.add_argument("--model", type=str, required=True)
    p.add_argument("--resolution", type=int, default=None)

    p = subs.add_parser(
        "verify-cobordism", parents=[common], help="grid-check the cobordism slab"
    )
    p.add_argument("--amplitude", type=float, default=0.1)
    p.add_argument("--sphere-area", type=float, default=1.0)
    p.add_argument("--resolution", type=int, default=8)

    p = subs.add_parser(
        "minimal-k", parents=[common], help="smallest grid-positive K"
    )
    p.add_argument("--amplitude", type=float, default=0.0)
    p.add_argument("--k-range", type=float, nargs=2, default=(0.01, 64.0))
    p.add_argument("--resolution", type=int, default=None)

    p = subs.add_parser(
        "reeb", parents=[common], help="solve the Reeb equations at a point"
    )
    p.add_argument("--model", type=str, required=True)
    p.add_argument(
        "--point",
        type=str,
        required=True,
        help="comma-separated name=value pairs",
    )

    p = subs.add_parser(
        "batch", parents=[common], help="run newline-delimited jobs from a file"
    )
    p.add_argument("corpus", type=str)

    return parser


def _payload_from_args(args) -> dict:
    cmd = args.command
    if cmd in ("analyze", "h1"):
        return {"genus": args.genus, "boundary": args.boundary, "word": args.word}
    if cmd == "stabilize":
        return {
            "genus": args.genus,
            "boundary": args.boundary,
            "word": args.word,
            "join": list(args.join),
        }
    if cmd == "brieskorn":
        return {"n": args.n, "k": args.k}
    if cmd == "pants-factorize":
        return {"a": list(args.a)}
    if cmd == "verify-contact":
        payload = {"model": args.model}
        if args.resolution is not None:
            payload["resolution"] = args.resolution
        return payload
    if cmd == "verify-cobordism":
        return {
            "amplitude": args.amplitude,
            "sphere_area": args.sphere_area,
            "resolution": args.resolution,
        }
    if cmd == "minimal-k":
        payload = {"amplitude": args.amplitude, "k_range": list(args.k_range)}
        if args.resolution is not None:
            payload["resolution"] = args.resolution
        return payload
    if cmd == "reeb":
        point = {}
        for item in args.point.split(","):
            if not item.strip():
                continue
            if "=" not in item:
                raise InputError(f"bad point entry {item!r}; use name=value")
            name, _, value = item.partition("=")
            try:
                point[name.strip()] = float(value)
            except ValueError:
                raise InputError(f"bad point value in {item!r}") from None
        return {"model": args.model, "point": point}
    raise InputError(f"unknown command {cmd!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "batch":
        try:
            with open(args.corpus, "r", encoding="utf-8") as fh:
                lines = fh.readlines()
        except OSError as err:
            print(f"error: cannot read corpus: {err}", file=sys.stderr)
            return 2
        doc = batch(lines)
        print(canonical_json(doc))
        return 0

    try:
        payload = _payload_from_args(args)
        job = JobSpec(args.command, payload, args.format, args.seed)
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    code, rendered = run(job)
    print(rendered)
    return code


if __name__ == "__main__":
    sys.exit(main())
