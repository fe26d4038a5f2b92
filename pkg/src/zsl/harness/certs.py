"""Re-checking and summarizing scan JSONL files."""

from __future__ import annotations

import csv
import io
import json
import warnings
from dataclasses import dataclass, field

from ..cyclic import CyclicSet, sumset
from ..errors import UsageError
from ..progressions import ApCover, Certificate, check_certificate, conjecture_conclusion, ell
from ..trios import complement_trio
from . import scan as _scan

REQUIRED = ("p", "A", "B", "C", "r", "d", "covers", "ok", "mode", "canonical_key", "verdict")
VERDICTS = ("holds", "violation", "not-applicable")


class CertificateFormatError(UsageError):
    pass


@dataclass
class VerifyResult:
    path: str
    records: int = 0
    problems: list = field(default_factory=list)  # (line, message)

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self) -> bool:
        return self.ok


def _load(path: str):
    try:
        fh = open(path)
    except OSError as e:
        raise OSError(f"{path}: {e.strerror or e}") from e
    with fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as e:
                raise CertificateFormatError(f"{path}:{lineno}: not JSON ({e.msg})") from None
            if not isinstance(rec, dict):
                raise CertificateFormatError(f"{path}:{lineno}: record is not an object")
            missing = [k for k in REQUIRED if k not in rec]
            if missing:
                raise CertificateFormatError(f"{path}:{lineno}: missing fields {missing}")
            if rec["verdict"] not in VERDICTS:
                raise CertificateFormatError(f"{path}:{lineno}: unknown verdict {rec['verdict']!r}")
            yield lineno, rec


def _mario1_hyp_at(A, B, d: int) -> bool:
    import itertools

    T = complement_trio(A, B)
    r = T.r
    for X, Y, Z in itertools.permutations(T.sets()):
        h = ell(X, d) - len(X)
        a, b, c = len(X), len(Y), len(Z)
        if a >= r + 3 + h and b >= r + 3 + 2 * h and c >= r + 3 and (a > r + 3 + h or b > r + 3 + 2 * h):
            return True
    return False


def check_record(rec: dict) -> list[str]:
    """Everything wrong with one record, recomputed from its sets."""
    p = int(rec["p"])
    A = CyclicSet.of(p, rec["A"])
    B = CyclicSet.of(p, rec["B"])
    if not A or not B:
        return ["empty set in record"]
    if len(sumset(A, B)) == p:
        return ["A + B = G"]
    mode, verdict = rec["mode"], rec["verdict"]
    problems = []
    T = complement_trio(A, B)
    if list(T.C.elems()) != sorted(rec["C"]):
        problems.append("C != -(A+B)^c")
    if T.r != rec["r"]:
        problems.append(f"r mismatch: recorded {rec['r']}, actual {T.r}")
    d = rec["d"]
    if d is not None:
        if len(rec["covers"]) != 3:
            return problems + ["a record with d needs three covers"]
        try:
            cert = Certificate(p, A, B, T.C, T.r, int(d),
                               tuple(ApCover.from_json(c, p) for c in rec["covers"]), bool(rec["ok"]))
        except (UsageError, KeyError, TypeError, ValueError) as e:
            return problems + [f"malformed cover: {e}"]
        problems += [x for x in check_certificate(cert) if x not in problems]
    elif rec["covers"] or rec["ok"]:
        problems.append("record without d carries covers or ok=true")
    if mode not in _scan.PAIR_MODES:
        return problems + [f"unknown mode {mode!r}"]
    v = _scan.evaluate_pair(mode, A, B)
    if verdict == "not-applicable":
        if v.applicable:
            problems.append(f"hypotheses of {mode} hold, record says not applicable")
        return problems
    if mode == "mario1":
        if d is None or not _mario1_hyp_at(A, B, int(d)):
            problems.append("reduction hypotheses fail at the recorded d")
        if verdict == "holds" and not rec["ok"]:
            problems.append("verdict holds but ok=false")
        if verdict == "violation" and rec["ok"]:
            problems.append("verdict violation but the covers satisfy the bound")
        return problems
    if not v.applicable:
        problems.append(f"hypotheses of {mode} fail, record says applicable")
    if verdict == "holds" and not rec["ok"]:
        problems.append("verdict holds without a valid certificate")
    if verdict == "violation" and conjecture_conclusion(A, B) is not None:
        problems.append("violation recorded but a covering d exists")
    if "proven" in rec and rec["proven"] != _scan.proven_regime(A, B) and verdict != "not-applicable":
        problems.append("proven flag disagrees")
    return problems


def verify_certificate_file(path: str) -> VerifyResult:
    """Re-check every record; the result is truthy iff all pass."""
    res = VerifyResult(path)
    for lineno, rec in _load(path):
        res.records += 1
        for msg in check_record(rec):
            res.problems.append((lineno, msg))
    if res.records == 0:
        warnings.warn(f"{path}: no records, verification is vacuous", stacklevel=2)
    return res


COLUMNS = ("p", "r", "orbits", "applicable", "holds", "violations")


def summarize(*paths: str) -> str:
    """Per-(p, r) counts over the records of one or more scan files, as CSV."""
    seen = {}
    dupes = 0
    for path in paths:
        for lineno, rec in _load(path):
            key = (rec["mode"], rec["p"], rec["canonical_key"])
            if key in seen:
                dupes += 1
                continue
            seen[key] = rec
    if dupes:
        warnings.warn(f"{dupes} duplicate instance(s) dropped by canonical key", stacklevel=2)
    modes = {k[0] for k in seen}
    if len(modes) > 1:
        raise UsageError(f"cannot merge records of different modes: {sorted(modes)}")
    rows: dict[tuple[int, int], list[int]] = {}
    for rec in seen.values():
        row = rows.setdefault((rec["p"], rec["r"]), [0, 0, 0, 0])
        row[0] += 1
        if rec["verdict"] != "not-applicable":
            row[1] += 1
            row[2] += rec["verdict"] == "holds"
            row[3] += rec["verdict"] == "violation"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for (p, r), row in sorted(rows.items()):
        w.writerow([p, r, *row])
    return buf.getvalue()
