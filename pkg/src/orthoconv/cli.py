"""Command line entry point.

Conversion::

    orthoconv --direction expand --family chebyshev-t --input req.json
    echo '{"coeffs": ["0", "0", "0", "1"]}' | orthoconv --direction expand --family legendre

Benchmark::

    orthoconv bench --op decomp --min-log-n 10 --max-log-n 14 --reps 5

Request and result documents are JSON objects; field elements are always
unsigned decimal strings. Errors go to stderr as ``{"error": {"field", "message"}}``
with exit status 2, and nothing is written to the result stream.
"""

from __future__ import annotations

import argparse
import io
import json
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .bench import OPS, write_csv, run_bench
from .decomp import decomp, moment_series
from .expand import expand, expand_transposed
from .field import DEFAULT_MODULUS, FieldError, PrimeField, is_ntt_friendly
from .recurrence import InvalidFamilyError, RecurrenceFamily, preset, sample

DIRECTIONS = ("expand", "decomp", "texpand", "moments")
_DECIMAL = re.compile(r"0|[1-9][0-9]*")


class RequestError(ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message


def _parse_residue(text: Any, p: int, where: str) -> int:
    if not isinstance(text, str) or not _DECIMAL.fullmatch(text):
        raise RequestError(where, f"expected an unsigned decimal string, got {text!r}")
    value = int(text)
    if value >= p:
        raise RequestError(where, f"{value} is not reduced modulo {p}")
    return value


@dataclass(frozen=True)
class ConversionRequest:
    direction: str
    family: RecurrenceFamily
    family_label: str
    field: PrimeField
    coeffs: list[int]
    n: int

    @classmethod
    def from_document(cls, doc: dict) -> ConversionRequest:
        if not isinstance(doc, dict):
            raise RequestError("document", "request must be a JSON object")
        direction = doc.get("direction")
        if direction not in DIRECTIONS:
            raise RequestError("direction", f"expected one of {list(DIRECTIONS)}, got {direction!r}")

        modulus = doc.get("modulus", str(DEFAULT_MODULUS))
        if isinstance(modulus, int):
            modulus = str(modulus)
        if not isinstance(modulus, str) or not _DECIMAL.fullmatch(modulus):
            raise RequestError("modulus", f"expected a decimal string, got {modulus!r}")
        if not is_ntt_friendly(int(modulus)):
            raise RequestError("modulus", f"{modulus} is not an NTT-friendly prime below 2**62")
        field = PrimeField(int(modulus))

        raw = doc.get("coeffs", [])
        if not isinstance(raw, list):
            raise RequestError("coeffs", "expected an array of decimal strings")
        coeffs = [_parse_residue(v, field.p, f"coeffs[{i}]") for i, v in enumerate(raw)]

        n = doc.get("n", len(coeffs))
        if isinstance(n, str) and n.isdigit():
            n = int(n)
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise RequestError("n", f"expected a positive integer, got {n!r}")
        if len(coeffs) > n:
            raise RequestError("coeffs", f"{len(coeffs)} coefficients exceed n = {n}")

        family, label = _family_from(doc.get("family"), field)
        avail = family.available_length
        if avail is not None and avail < n - 1:
            raise RequestError("family", f"custom family has {avail} terms, size {n} needs {n - 1}")
        # moments and decomp also read index n (padded for finite families)
        check = n if direction in ("moments", "decomp") else n - 1
        try:
            sample(family, check if avail is None else min(check, avail))
        except InvalidFamilyError as exc:
            raise RequestError("family", str(exc)) from None
        return cls(direction, family, label, field, coeffs, n)

    def run(self) -> list[int]:
        fam, n, f = self.family, self.n, self.field
        vec = f.array(self.coeffs, n)
        if self.direction == "expand":
            out = expand(fam, vec)
        elif self.direction == "decomp":
            out = decomp(fam, vec)
        elif self.direction == "texpand":
            out = expand_transposed(fam, vec)
        else:
            out = moment_series(fam, n).moments
        return [int(v) for v in out]


def _family_from(entry: Any, field: PrimeField) -> tuple[RecurrenceFamily, Any]:
    if entry is None:
        raise RequestError("family", "missing family (preset name or {a, b, c} arrays)")
    if isinstance(entry, str):
        try:
            return preset(entry, field), entry
        except InvalidFamilyError as exc:
            raise RequestError("family", str(exc)) from None
    if isinstance(entry, dict):
        arrays = []
        for key in ("a", "b", "c"):
            vals = entry.get(key)
            if not isinstance(vals, list):
                raise RequestError(f"family.{key}", "expected an array of decimal strings")
            arrays.append([_parse_residue(v, field.p, f"family.{key}[{i}]") for i, v in enumerate(vals)])
        if not len(arrays[0]) == len(arrays[1]) == len(arrays[2]):
            raise RequestError("family", "arrays a, b, c must have equal length")
        label = {k: [str(v) for v in arr] for k, arr in zip("abc", arrays)}
        return RecurrenceFamily.from_arrays(*arrays, field=field), label
    raise RequestError("family", f"expected a preset name or an object, got {type(entry).__name__}")


def run_convert(doc: dict) -> dict:
    """Validate a request document and return the result document."""
    req = ConversionRequest.from_document(doc)
    try:
        out = req.run()
    except InvalidFamilyError as exc:
        raise RequestError("family", str(exc)) from None
    return {
        "direction": req.direction,
        "family": req.family_label,
        "modulus": str(req.field.p),
        "n": req.n,
        "coeffs": [str(v) for v in out],
    }


# --- argument handling -------------------------------------------------------


def _convert_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orthoconv", description="Convert between an orthogonal basis and monomials.")
    ap.add_argument("--direction", choices=DIRECTIONS)
    fam = ap.add_mutually_exclusive_group()
    fam.add_argument("--family", help="preset name: chebyshev-t, chebyshev-u, legendre, hermite, laguerre")
    fam.add_argument("--family-file", type=Path, help="JSON file with arrays a, b, c (a[0] is a_1)")
    ap.add_argument("--modulus", help="NTT-friendly prime (decimal)")
    ap.add_argument("--n", type=int)
    ap.add_argument("--input", default="-", help="request document path, '-' for stdin")
    ap.add_argument("--output", default="-", help="result path, '-' for stdout")
    return ap


def _bench_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orthoconv bench", description="Time conversions over n = 2**k.")
    ap.add_argument("--op", choices=sorted(OPS), default="expand")
    ap.add_argument("--min-log-n", type=int, default=10)
    ap.add_argument("--max-log-n", type=int, default=14)
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--family", default="random")
    ap.add_argument("--modulus", type=int, default=DEFAULT_MODULUS)
    ap.add_argument("--output", default="-")
    return ap


def _read_document(path: str) -> dict:
    if path == "-":
        text = "" if sys.stdin is None or sys.stdin.isatty() else sys.stdin.read()
    else:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise RequestError("input", str(exc)) from None
    if not text.strip():
        return {}
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise RequestError("input", f"malformed JSON: {exc}") from None


def _emit(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _fail(field: str, message: str) -> int:
    sys.stderr.write(json.dumps({"error": {"field": field, "message": message}}) + "\n")
    return 2


def convert_main(argv: list[str]) -> int:
    args = _convert_parser().parse_args(argv)
    try:
        doc = _read_document(args.input)
        if not isinstance(doc, dict):
            raise RequestError("input", "request must be a JSON object")
        if args.direction:
            doc["direction"] = args.direction
        if args.family:
            doc["family"] = args.family
        if args.family_file:
            try:
                doc["family"] = json.loads(args.family_file.read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise RequestError("family-file", str(exc)) from None
        if args.modulus:
            doc["modulus"] = args.modulus
        if args.n is not None:
            doc["n"] = args.n
        result = run_convert(doc)
    except RequestError as exc:
        return _fail(exc.field, exc.message)
    except (FieldError, ValueError) as exc:
        return _fail("request", str(exc))
    _emit(json.dumps(result) + "\n", args.output)
    return 0


def bench_main(argv: list[str]) -> int:
    args = _bench_parser().parse_args(argv)
    try:
        field = PrimeField(args.modulus)
        records = list(run_bench(args.op, (args.min_log_n, args.max_log_n), args.reps,
                                 args.seed, family=args.family, field=field))
    except (FieldError, ValueError) as exc:
        return _fail("bench", str(exc))
    buf = io.StringIO()
    write_csv(records, buf, args.seed)
    _emit(buf.getvalue(), args.output)
    return 0


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    if argv and argv[0] == "bench":
        return bench_main(argv[1:])
    return convert_main(argv)


if __name__ == "__main__":
    sys.exit(main())
