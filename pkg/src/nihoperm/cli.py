"""Command-line front end: ``nihoperm verify | sweep | lemma {2,3,4,5}``.

Exit codes are a fixed contract: 0 pass, 1 verification failure, 2 usage or
configuration error, 3 the exponents are not invertible for the requested m.
JSON and CSV output are deterministic for a fixed configuration once timing is
switched off with ``--no-timing``.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import random
import sys
from dataclasses import dataclass
from typing import Iterable, TextIO

from .circle import UnitCircle
from .errors import FieldTooSmall, NihoPermError, NotInvertible
from .field import BinaryField, FieldSpec, default_field, make_field
from .lemmas import (
    REPORT_COLUMNS,
    G_poly,
    eq11_bridge_formal,
    eq11_residual,
    lemma2_reports,
    lemma3_uv,
    lemma4_product,
    lemma5_search,
    relation_dividing_triples,
)
from .niho import PROVED, NihoTrinomial, conjecture_exponents, eq4_root_counts, regime
from .perm import is_permutation_bruteforce, is_permutation_lemma1

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_NOT_INVERTIBLE = 3

DEFAULT_CAP = 1 << 24
SWEEP_M_CAP = 14
LEMMA2_M_CAP = 5
LEMMA3_M_CAP = 10
LEMMA5_M_CAP = 14

VERIFY_COLUMNS = [
    "command", "m", "s", "t", "field", "regime", "method", "verdict",
    "witness", "domain_size", "elapsed_ms", "note",
]
SWEEP_COLUMNS = ["m", "regime", "s", "t", "eq4_max", "bruteforce", "lemma1", "asserted"]
LEMMA3_COLUMNS = [
    "lemma", "m", "formal_identity", "samples", "sample_mismatches",
    "relation_divisors", "nonzero_residuals", "case12_hits", "holds",
]
LEMMA4_COLUMNS = ["lemma", "m_ext", "field", "H", "slots", "identity_holds"]
LEMMA5_COLUMNS = ["lemma", "m", "field", "solutions", "expected", "witnesses", "holds"]


class ConfigError(Exception):
    """Bad flags or parameters; maps to exit code 2."""


@dataclass
class RunConfig:
    command: str
    fmt: str = "human"
    field: FieldSpec | None = None
    parallelism: int = 1
    cap: int = DEFAULT_CAP
    timing: bool = True


def _cell(v):
    if v is True:
        return "true"
    if v is False:
        return "false"
    if v is None:
        return ""
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    return v


class Emitter:
    """Writes records as JSON lines, CSV rows or ``key=value`` lines."""

    def __init__(self, fmt: str, columns: list[str], out: TextIO):
        self.fmt = fmt
        self.columns = columns
        self.out = out
        self._csv = None

    def emit(self, record: dict) -> None:
        if self.fmt == "json":
            self.out.write(json.dumps(record, sort_keys=True) + "\n")
        elif self.fmt == "csv":
            if self._csv is None:
                self._csv = csv.writer(self.out, lineterminator="\n")
                self._csv.writerow(self.columns)
            self._csv.writerow([_cell(record.get(c)) for c in self.columns])
        else:
            parts = []
            for c in self.columns:
                v = record.get(c)
                if v is None:
                    continue
                parts.append(f"{c}={_cell(v)}")
            self.out.write("  ".join(parts) + "\n")

    def note(self, text: str) -> None:
        """Free-form line: shown in human output, sent to stderr otherwise."""
        if self.fmt == "human":
            self.out.write(text + "\n")
        else:
            sys.stderr.write(text + "\n")


def _field_for(cfg: RunConfig, degree: int) -> BinaryField:
    if cfg.field is None:
        return default_field(degree)
    if cfg.field.degree != degree:
        raise ConfigError(f"--field has degree {cfg.field.degree}, this run needs degree {degree}")
    return make_field(cfg.field)


def _check_m(m: int, cap: int | None = None, flag: str = "--m") -> None:
    if m < 1:
        raise ConfigError(f"{flag} must be >= 1, got {m}")
    if cap is not None and m > cap:
        raise ConfigError(f"{flag}={m} is above the cap of {cap}")


# ---------------------------------------------------------------- verify


def cmd_verify(cfg: RunConfig, m: int, out: TextIO) -> int:
    _check_m(m)
    em = Emitter(cfg.fmt, VERIFY_COLUMNS, out)
    base = {"command": "verify", "m": m, "regime": regime(m)}
    try:
        s, t = conjecture_exponents(m)
    except NotInvertible as exc:
        em.emit({**base, "note": str(exc)})
        return EXIT_NOT_INVERTIBLE
    field = _field_for(cfg, 2 * m)
    f = NihoTrinomial(m, s, t)
    base.update(s=s, t=t, field=str(field.spec))

    reports = []
    if field.order <= cfg.cap:
        reports.append(is_permutation_bruteforce(f, field, cap=cfg.cap, workers=cfg.parallelism))
    else:
        em.emit({**base, "method": "bruteforce", "domain_size": field.order,
                 "note": f"skipped: domain exceeds cap {cfg.cap}"})
    reports.append(is_permutation_lemma1(*f.lemma1_form(field), field))

    verdicts = [r.verdict for r in reports]
    asserted = base["regime"] == PROVED
    note = None if asserted else "theorem does not cover this m; reported without asserting"
    if len(set(verdicts)) > 1:
        note = "methods disagree"
    for r in reports:
        em.emit({**base, **r.to_dict(cfg.timing), "note": note})
    if len(set(verdicts)) > 1:
        return EXIT_FAIL
    if not asserted:
        return EXIT_OK
    return EXIT_OK if all(verdicts) else EXIT_FAIL


# ---------------------------------------------------------------- sweep


def sweep_row(cfg: RunConfig, m: int) -> dict:
    """One summary row: regime, largest F_t root count on the circle, verdicts."""
    row = {"m": m, "regime": regime(m), "asserted": regime(m) == PROVED}
    try:
        s, t = conjecture_exponents(m)
    except NotInvertible:
        return row
    field = default_field(2 * m)
    row.update(s=s, t=t)
    row["eq4_max"] = int(eq4_root_counts(UnitCircle(field, m), workers=cfg.parallelism).max())
    f = NihoTrinomial(m, s, t)
    if field.order <= cfg.cap:
        row["bruteforce"] = is_permutation_bruteforce(f, field, cap=cfg.cap, workers=cfg.parallelism).verdict
    row["lemma1"] = is_permutation_lemma1(*f.lemma1_form(field), field).verdict
    return row


def _row_ok(row: dict) -> bool:
    if not row["asserted"]:
        return True
    verdicts = [row[k] for k in ("bruteforce", "lemma1") if row.get(k) is not None]
    return row["eq4_max"] == 1 and all(verdicts)


def cmd_sweep(cfg: RunConfig, m_max: int, out: TextIO) -> int:
    _check_m(m_max, SWEEP_M_CAP, "--m-max")
    if cfg.field is not None:
        raise ConfigError("--field names one field and cannot be used with sweep")
    em = Emitter(cfg.fmt, SWEEP_COLUMNS, out)
    ok = True
    for m in range(1, m_max + 1):
        row = sweep_row(cfg, m)
        ok &= _row_ok(row)
        em.emit(row)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------- lemmas


def cmd_lemma2(cfg: RunConfig, m: int, exhaustive: bool, out: TextIO) -> int:
    _check_m(m, LEMMA2_M_CAP)
    field = _field_for(cfg, 2 * m)
    em = Emitter(cfg.fmt, REPORT_COLUMNS, out)
    total = dividing = violations = 0
    for rep in lemma2_reports(m, field, only_dividing=not exhaustive):
        total += 1
        if rep.divides:
            dividing += 1
            violations += not rep.classified
        em.emit(dict(zip(REPORT_COLUMNS, rep.row())))
    if not exhaustive:
        total = (field.order - 1) ** 2 * ((1 << m) + 1)
    em.note(f"lemma 2, m={m}: {total} triples, {dividing} dividing quadratics, {violations} violations")
    return EXIT_OK if violations == 0 else EXIT_FAIL


def cmd_lemma3(cfg: RunConfig, m: int, samples: int, seed: int, out: TextIO) -> int:
    _check_m(m, LEMMA3_M_CAP)
    big = _field_for(cfg, 2 * m)
    small = default_field(m)
    rng = random.Random(seed)
    # residual(u, v) against G(v, u^2) on random pairs of GF(2^m)
    G = G_poly(small)
    mismatches = 0
    for _ in range(samples):
        u, v = small.random_element(rng), small.random_element(rng)
        if eq11_residual(u, v).value != G.eval_int(v.value, small.sqr(u.value)):
            mismatches += 1
    # the chain through every relation pair that actually divides some F_t
    triples = relation_dividing_triples(m, big)
    nonzero = case12 = 0
    for a, b, _t, c1, c2 in triples:
        case12 += c1 or c2
        if lemma3_uv(big(a), big(b), m).residual:
            nonzero += 1
    formal = eq11_bridge_formal(small)
    holds = formal and mismatches == 0 and nonzero == 0 and case12 == 0
    Emitter(cfg.fmt, LEMMA3_COLUMNS, out).emit({
        "lemma": 3, "m": m, "formal_identity": formal, "samples": samples,
        "sample_mismatches": mismatches, "relation_divisors": len(triples),
        "nonzero_residuals": nonzero, "case12_hits": case12, "holds": holds,
    })
    return EXIT_OK if holds else EXIT_FAIL


def cmd_lemma4(cfg: RunConfig, m_ext: int, out: TextIO) -> int:
    _check_m(m_ext, flag="--m-ext")
    field = _field_for(cfg, m_ext)
    try:
        H, prod = lemma4_product(field)
    except FieldTooSmall as exc:
        raise ConfigError(f"{exc}; --m-ext must be a multiple of 5") from exc
    G = G_poly(field)
    slots = [(i, j) for i in range(6) for j in range(6)]
    holds = all(prod.coeff(i, j) == G.coeff(i, j) for i, j in slots)
    Emitter(cfg.fmt, LEMMA4_COLUMNS, out).emit({
        "lemma": 4, "m_ext": m_ext, "field": str(field.spec), "H": [h.hex() for h in H],
        "slots": len(slots), "identity_holds": holds,
    })
    return EXIT_OK if holds else EXIT_FAIL


def cmd_lemma5(cfg: RunConfig, m: int, out: TextIO) -> int:
    _check_m(m, LEMMA5_M_CAP)
    field = _field_for(cfg, m)
    zeros = sorted((x.value, y.value) for x, y in lemma5_search(m, field, workers=cfg.parallelism))
    expect_empty = math.gcd(m, 5) == 1
    holds = not zeros if expect_empty else bool(zeros)
    Emitter(cfg.fmt, LEMMA5_COLUMNS, out).emit({
        "lemma": 5, "m": m, "field": str(field.spec), "solutions": len(zeros),
        "expected": "empty: gcd(m, 5) = 1" if expect_empty else "expected: 5 | m",
        "witnesses": [[f"{x:#x}", f"{y:#x}"] for x, y in zeros], "holds": holds,
    })
    return EXIT_OK if holds else EXIT_FAIL


# ---------------------------------------------------------------- parsing


def _positive(text: str) -> int:
    v = int(text, 0)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _field_spec(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=["human", "json", "csv"], default="human")
    common.add_argument("--field", type=_field_spec, default=None,
                        help="reduction polynomial override, e.g. k=6,poly=0x43")
    common.add_argument("--parallelism", type=_positive, default=1, help="worker processes")
    common.add_argument("--cap", type=_positive, default=DEFAULT_CAP,
                        help="largest field size checked by brute force")
    common.add_argument("--no-timing", dest="timing", action="store_false",
                        help="leave elapsed_ms empty so output is byte-reproducible")

    p = argparse.ArgumentParser(prog="nihoperm", description="Niho trinomial permutation checks over GF(2^{2m}).")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="check the trinomial for one m")
    v.add_argument("--m", type=int, required=True)

    s = sub.add_parser("sweep", parents=[common], help="summary row for every m up to --m-max")
    s.add_argument("--m-max", type=int, required=True)

    lem = sub.add_parser("lemma", parents=[common], help="run one of the structural checks")
    lem.add_argument("which", type=int, choices=[2, 3, 4, 5])
    lem.add_argument("--m", type=int, default=None)
    lem.add_argument("--exhaustive", action="store_true", help="lemma 2: emit every triple, not only divisors")
    lem.add_argument("--samples", type=int, default=10_000, help="lemma 3: random (u, v) pairs")
    lem.add_argument("--seed", type=int, default=0)
    lem.add_argument("--m-ext", type=int, default=5, help="lemma 4: degree of the field holding H")
    return p


def dispatch(args: argparse.Namespace, out: TextIO) -> int:
    cfg = RunConfig(args.command, args.fmt, args.field, args.parallelism, args.cap, args.timing)
    if args.command == "verify":
        return cmd_verify(cfg, args.m, out)
    if args.command == "sweep":
        return cmd_sweep(cfg, args.m_max, out)
    if args.which != 4 and args.m is None:
        raise ConfigError(f"lemma {args.which} needs --m")
    if args.which == 2:
        return cmd_lemma2(cfg, args.m, args.exhaustive, out)
    if args.which == 3:
        if args.samples < 0:
            raise ConfigError("--samples must be >= 0")
        return cmd_lemma3(cfg, args.m, args.samples, args.seed, out)
    if args.which == 4:
        return cmd_lemma4(cfg, args.m_ext, out)
    return cmd_lemma5(cfg, args.m, out)


def main(argv: Iterable[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(None if argv is None else list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return dispatch(args, out)
    except (ConfigError, NihoPermError, ValueError) as exc:
        sys.stderr.write(f"nihoperm: error: {exc}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())
