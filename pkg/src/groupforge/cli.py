"""Batch command line interface.

One job per invocation: parse an input document, run the requested
construction, write the canonical serialization.  Exit codes: 0 success,
1 parse/domain error, 2 resource-limit error (the message names the cap
that was hit).  Identical input yields byte-identical output.

Input documents are either a JSON matrix document
``{"n": 2, "matrices": [[["0","1"],["-1","0"]]]}`` with every entry an
exact "p/q" string, or a serialized group (header line ``n=<size>``
followed by one canonical polynomial per line).  The polynomial grammar:
terms joined by ``+``/``-``; a term is ``coeff*var^e*...``; variables are
``T0``..``Tt`` (parameters), ``x_i_j`` (matrix entries, 1-based) and
``y`` (reserved inverse-determinant auxiliary).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, ForgeError, ParseError, ResourceLimitError
from .groebner import GroebnerLimits, reduced_groebner
from .groups import (AlgebraicGroup, generated_group, group_from_generators,
                     group_of_lie_algebra, nilpotent_group,
                     reductive_group_parts, semisimple_group,
                     tangent_space_at_identity, x_ring)
from .lie import structure_constants
from .linalg import MatrixQ
from .mpoly import parse_poly, parse_rational
from .numfield import FieldTower  # noqa: F401  (re-exported for callers)

COMMANDS = ("nilpotent-group", "semisimple-group", "generated-group",
            "group-from-lie-algebra", "reductive-decomposition",
            "reductive-group-parts", "tangent-space")


@dataclass(frozen=True)
class JobSpec:
    command: str
    inputs: tuple
    degree_cap: int = 64
    max_rounds: int = 50
    max_spairs: int = 2_000_000
    max_degree: int = 100
    trace: bool = False
    out: str = None

    def limits(self):
        return GroebnerLimits(max_spairs=self.max_spairs,
                              max_degree=self.max_degree)


def parse_input(data):
    """Parse an input document into matrices or a group ideal.

    Returns ``("matrices", n, [MatrixQ, ...])`` for a JSON matrix
    document and ``("group", AlgebraicGroup)`` for a serialized group.
    """
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _parse_matrix_doc(text)
    if stripped.startswith("n="):
        return _parse_group_doc(text)
    raise ParseError("unrecognized input document: expected a JSON matrix "
                     "document or a serialized group starting with 'n='")


def _parse_matrix_doc(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}")
    if not isinstance(doc, dict):
        raise ParseError("top-level JSON value must be an object")
    if "n" not in doc or "matrices" not in doc:
        raise ParseError("matrix document needs fields 'n' and 'matrices'")
    n = doc["n"]
    if not isinstance(n, int) or n <= 0:
        raise ParseError("field 'n' must be a positive integer")
    matrices = doc["matrices"]
    if not isinstance(matrices, list) or not matrices:
        raise ParseError("field 'matrices' must be a nonempty list")
    out = []
    for mi, mat in enumerate(matrices):
        if not isinstance(mat, list) or len(mat) != n:
            raise ParseError(f"matrices[{mi}]: expected {n} rows")
        rows = []
        for ri, row in enumerate(mat):
            if not isinstance(row, list) or len(row) != n:
                raise ParseError(f"matrices[{mi}][{ri}]: expected {n} entries")
            entries = []
            for ci, cell in enumerate(row):
                if not isinstance(cell, str):
                    raise ParseError(
                        f"matrices[{mi}][{ri}][{ci}]: entries must be exact "
                        f"\"p/q\" strings, got {type(cell).__name__}")
                try:
                    entries.append(parse_rational(cell))
                except ParseError as e:
                    raise ParseError(f"matrices[{mi}][{ri}][{ci}]: {e}")
            rows.append(entries)
        out.append(MatrixQ(rows))
    return ("matrices", n, out)


def _parse_group_doc(text):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    header = lines[0].strip()
    try:
        n = int(header[2:])
    except ValueError:
        raise ParseError(f"malformed group header {header!r}")
    if n <= 0:
        raise ParseError("group header size must be positive")
    vars = x_ring(n)
    gens = []
    for ln_no, line in enumerate(lines[1:], start=2):
        try:
            gens.append(parse_poly(line.strip(), vars))
        except ParseError as e:
            raise ParseError(f"line {ln_no}: {e}")
    return ("group", group_from_generators(n, gens, provenance="parsed"))


def _want_matrices(parsed, command):
    if parsed[0] != "matrices":
        raise ParseError(f"{command} expects a JSON matrix document")
    return parsed[1], parsed[2]


def _want_group(parsed, command):
    if parsed[0] != "group":
        raise ParseError(f"{command} expects a serialized group document")
    return parsed[1]


def _serialize_matrices(n, mats):
    body = [[[_frac(m.entries[i][j]) for j in range(n)] for i in range(n)]
            for m in mats]
    return json.dumps({"n": n, "matrices": body}, separators=(",", ":")) + "\n"


def _frac(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def run_job(spec):
    """Execute a job; returns (exit_code, output_text, error_text)."""
    limits = spec.limits()
    trace_lines = []

    def trace(round_no, stage, G):
        trace_lines.append(f"# round {round_no} {stage}")
        trace_lines.append(G.serialize().rstrip("\n"))

    tracer = trace if spec.trace else None
    try:
        docs = []
        for path in spec.inputs:
            try:
                with open(path, "rb") as fh:
                    docs.append(parse_input(fh.read()))
            except OSError as e:
                raise ParseError(f"cannot read {path}: {e.strerror}")
        cmd = spec.command
        if cmd == "nilpotent-group":
            _, mats = _want_matrices(docs[0], cmd)
            G = nilpotent_group(mats, limits=limits)
            output = G.serialize()
        elif cmd == "semisimple-group":
            _, mats = _want_matrices(docs[0], cmd)
            if len(mats) != 1:
                raise ParseError("semisimple-group expects exactly one matrix")
            G = semisimple_group(mats[0], degree_cap=spec.degree_cap, limits=limits)
            output = G.serialize()
        elif cmd == "generated-group":
            G1 = _want_group(docs[0], cmd)
            G2 = _want_group(docs[1], cmd)
            G = generated_group(G1, G2, max_rounds=spec.max_rounds,
                                limits=limits, trace=tracer)
            output = G.serialize()
        elif cmd == "group-from-lie-algebra":
            _, mats = _want_matrices(docs[0], cmd)
            algebra = structure_constants(mats)
            G = group_of_lie_algebra(algebra, max_rounds=spec.max_rounds,
                                     degree_cap=spec.degree_cap, limits=limits,
                                     trace=tracer)
            output = G.serialize()
        elif cmd == "reductive-decomposition":
            from .lie import reductive_decomposition
            n, mats = _want_matrices(docs[0], cmd)
            algebra = structure_constants(mats)
            split = reductive_decomposition(algebra)
            doc = {"ambient": n}
            for key, part in (("levi", split.l), ("toral", split.d),
                              ("nilpotent", split.n)):
                doc[key] = [[[_frac(b.entries[i][j]) for j in range(n)]
                             for i in range(n)] for b in part.basis]
            output = json.dumps(doc, separators=(",", ":")) + "\n"
        elif cmd == "reductive-group-parts":
            _, mats = _want_matrices(docs[0], cmd)
            algebra = structure_constants(mats)
            H, U = reductive_group_parts(algebra, max_rounds=spec.max_rounds,
                                         degree_cap=spec.degree_cap, limits=limits)
            output = ("[reductive]\n" + H.serialize()
                      + "[unipotent]\n" + U.serialize())
        elif cmd == "tangent-space":
            G = _want_group(docs[0], cmd)
            basis = tangent_space_at_identity(G)
            output = _serialize_matrices(G.n, basis)
        else:
            raise ParseError(f"unknown command {cmd!r}")
        return 0, output, "\n".join(trace_lines)
    except ResourceLimitError as e:
        return 2, "", "\n".join(trace_lines + [f"error: {e}"])
    except (ParseError, DomainError) as e:
        return 1, "", "\n".join(trace_lines + [f"error: {e}"])


def _env_limits():
    """Defaults from FORGE_LIMITS, e.g. 'max_spairs=10000,degree_cap=32'."""
    raw = os.environ.get("FORGE_LIMITS", "")
    out = {}
    if not raw.strip():
        return out
    for item in raw.split(","):
        if not item.strip():
            continue
        if "=" not in item:
            raise ParseError(f"FORGE_LIMITS entry {item!r} is not key=value")
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in ("degree_cap", "max_rounds", "max_spairs", "max_degree"):
            raise ParseError(f"FORGE_LIMITS has unknown key {key!r}")
        try:
            out[key] = int(value)
        except ValueError:
            raise ParseError(f"FORGE_LIMITS value for {key!r} is not an integer")
        if out[key] <= 0:
            raise ParseError(f"FORGE_LIMITS value for {key!r} must be positive")
    return out


def build_spec(argv):
    parser = argparse.ArgumentParser(
        prog="forge",
        description="Construct defining equations for connected algebraic "
                    "matrix groups from Lie-algebra data.")
    sub = parser.add_subparsers(dest="command", required=True)
    arity = {"generated-group": 2}
    for name in COMMANDS:
        p = sub.add_parser(name)
        for k in range(arity.get(name, 1)):
            p.add_argument(f"input{k + 1}" if arity.get(name, 1) > 1 else "input",
                           help="input document path")
        p.add_argument("--degree-cap", type=int, default=None,
                       help="splitting-field degree cap (default 64)")
        p.add_argument("--max-rounds", type=int, default=None,
                       help="closure-iteration round cap (default 50)")
        p.add_argument("--max-spairs", type=int, default=None,
                       help="Groebner S-pair reduction cap")
        p.add_argument("--max-degree", type=int, default=None,
                       help="Groebner intermediate degree cap")
        p.add_argument("--trace", action="store_true",
                       help="dump per-round ideals of the closure iteration to stderr")
        p.add_argument("--out", default=None, help="write output to this path")
    ns = parser.parse_args(argv)
    env = _env_limits()
    defaults = JobSpec(command="", inputs=())
    values = {}
    for key in ("degree_cap", "max_rounds", "max_spairs", "max_degree"):
        flag = getattr(ns, key)
        if flag is not None:
            if flag <= 0:
                raise ParseError(f"--{key.replace('_', '-')} must be positive")
            values[key] = flag
        elif key in env:
            values[key] = env[key]
        else:
            values[key] = getattr(defaults, key)
    inputs = [ns.input1, ns.input2] if ns.command == "generated-group" else [ns.input]
    return JobSpec(command=ns.command, inputs=tuple(inputs), trace=ns.trace,
                   out=ns.out, **values)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        spec = build_spec(argv)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    code, output, err = run_job(spec)
    if err:
        print(err, file=sys.stderr)
    if code == 0:
        if spec.out:
            with open(spec.out, "w") as fh:
                fh.write(output)
        else:
            sys.stdout.write(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
