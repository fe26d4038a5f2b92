"""Command line: ``zsl <subcommand> ...`` (also ``python -m zsl``).

Exit codes: 0 ok, 1 internal inconsistency, 2 usage, 3 capacity.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings
from fractions import Fraction

from ..cyclic import CyclicSet, IntSet, is_prime
from ..errors import CapacityError, UsageError, ZslError

EXIT_OK, EXIT_INCONSISTENT, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


def _dump(obj) -> None:
    print(json.dumps(obj, indent=2, default=str))


def _primes(text: str) -> list[int]:
    """'5,7,11' as given; a range '5-13' keeps only its primes."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = (int(x) for x in part.split("-", 1))
            out.extend(q for q in range(lo, hi + 1) if is_prime(q))
        elif part:
            out.append(int(part))
    return out


def cmd_scan(args) -> int:
    from .certs import verify_certificate_file
    from .scan import ScanConfig, scan

    primes = _primes(args.primes) if args.primes else None
    cfg = ScanConfig(
        mode=args.mode, primes=primes, max_prime=args.max_prime, jobs=args.jobs,
        output=args.out, emit_all=args.emit_all, cap=args.cap, samples=args.samples,
        seed=args.seed, theorem=args.theorem, delta=args.delta,
    )
    rep = scan(cfg)
    _dump(rep.to_json())
    if not rep.consistent():
        return EXIT_INCONSISTENT
    if args.strict and args.out and args.mode not in ("prop7", "feasibility"):
        res = verify_certificate_file(args.out)
        for line, msg in res.problems:
            print(f"{args.out}:{line}: {msg}", file=sys.stderr)
        if not res.ok:
            return EXIT_INCONSISTENT
    return EXIT_OK


def cmd_cover(args) -> int:
    from ..progressions import ell_cover, min_cover, rectification_witness

    A = CyclicSet.parse(args.n, args.set)
    if args.d is not None:
        cov = ell_cover(A, args.d)
        _dump({"d": args.d, "ell": None if cov is None else cov.length,
               "cover": None if cov is None else cov.to_json()})
        return EXIT_OK
    d, L = min_cover(A)
    out = {"min_cover": {"d": d, "len": L, "cover": ell_cover(A, d).to_json()}}
    if args.with_set:
        B = CyclicSet.parse(args.n, args.with_set)
        w = rectification_witness(A, B)
        out["rectification"] = None if w is None else dict(zip(("d", "ell_A", "ell_B"), w))
    _dump(out)
    return EXIT_OK


def cmd_atoms(args) -> int:
    from ..isoperimetry import check_atom_theorems, kappa_atoms

    B = CyclicSet.parse(args.n, args.set)
    if args.check:
        rep = check_atom_theorems(B, args.k)
        _dump({
            "atoms": None if rep.atoms is None else rep.atoms.to_json(),
            "checks": {k: vars(v) for k, v in rep.checks.items()},
            "violations": rep.violations,
        })
        return EXIT_INCONSISTENT if rep.violations else EXIT_OK
    rep = kappa_atoms(B, args.k, full=args.full)
    _dump(None if rep is None else rep.to_json())
    return EXIT_OK


def cmd_verify_z(args) -> int:
    from ..progressions import verify_3k4_integers

    v = verify_3k4_integers(IntSet.parse(args.A), IntSet.parse(args.B))
    out = {"applicable": v.applicable, "delta": v.delta, "r": v.r, "swapped": v.swapped}
    if v.applicable:
        out.update(g=v.g, P_A=v.cover_a.to_json(), P_B=v.cover_b.to_json(),
                   P_AB=v.inner.to_json(), bounds=v.bounds)
    _dump(out)
    return EXIT_INCONSISTENT if v.applicable and not v.bounds_ok else EXIT_OK


def cmd_trio(args) -> int:
    from ..progressions import prop7_trio
    from ..trios import Trio, complement_trio, delta_flags, is_trio_saturated, saturate, translate_flags

    A = CyclicSet.parse(args.n, args.A)
    B = CyclicSet.parse(args.n, args.B)
    T = Trio(A, B, CyclicSet.parse(args.n, args.C)) if args.C else complement_trio(A, B)
    out = {"trio": T.to_json(), "saturated": is_trio_saturated(T),
           "delta_conjecture": delta_flags(T).as_tuple(), "delta_translate": translate_flags(T).as_tuple()}
    if args.saturate:
        out["saturation"] = saturate(T, args.z).to_json()
    if args.equivalence:
        out["statements"] = vars(prop7_trio(T, args.delta))
    _dump(out)
    return EXIT_OK


# inputs, outputs
_WHICH = {
    "c1": (("alpha",), ("c1",)),
    "cbeta": (("alpha", "beta"), ("c_beta",)),
    "lev": (("K", "s"), ("c_levshkredov",)),
    "gammas": (("a", "b", "ell"), ("gamma_A", "gamma_B")),
}


def cmd_constants(args) -> int:
    from ..analytic import constants_report, numeric_lemma_suite

    if args.lemmas or args.which == "lemmas":
        rep = numeric_lemma_suite(args.rmax)
        _dump({k: {"ok": v.ok, "detail": v.detail, **v.data} for k, v in rep.results.items()})
        return EXIT_OK if rep.ok else EXIT_INCONSISTENT
    if args.which:
        missing = [f for f in _WHICH[args.which][0] if getattr(args, f) is None]
        if missing:
            raise UsageError(f"--which {args.which} needs " + ", ".join("--" + f for f in missing))
    out = constants_report(args.alpha, args.beta, args.K, args.s, args.a, args.b, args.ell).to_json()
    if args.which:
        keep = _WHICH[args.which][0] + _WHICH[args.which][1]
        out = {k: v for k, v in out.items() if k in keep}
    _dump(out)
    return EXIT_OK


def cmd_fourier(args) -> int:
    from ..analytic import circle_bound, exp_sum, max_half_arc

    A = CyclicSet.parse(args.p, args.set)
    xs = [args.x] if args.x is not None else list(range(1, args.p))
    rows = []
    for x in xs:
        v = exp_sum(A, x)
        cb = circle_bound(A, x)
        rows.append({"x": x, "re": v.re, "im": v.im, "abs": v.magnitude,
                     "half_arc": max_half_arc(A, x), "bound": cb.bound, "slack": cb.slack})
    _dump(rows)
    return EXIT_OK


def cmd_example(args) -> int:
    from .constructions import ExampleSpec, generate_example

    inst = generate_example(ExampleSpec(args.id, args.r, m=args.m, n=args.n, M=args.M, p=args.p,
                                        size=args.size, s1=args.s1))
    _dump(inst.to_json())
    return EXIT_OK if inst.ok else EXIT_INCONSISTENT


def cmd_verify_certs(args) -> int:
    from .certs import verify_certificate_file

    bad = False
    for path in args.paths:
        res = verify_certificate_file(path)
        for line, msg in res.problems:
            print(f"{path}:{line}: {msg}", file=sys.stderr)
        print(f"{path}: {res.records} records, {'ok' if res.ok else 'FAILED'}")
        bad |= not res.ok
    return EXIT_INCONSISTENT if bad else EXIT_OK


def cmd_summarize(args) -> int:
    from .certs import summarize

    sys.stdout.write(summarize(*args.paths))
    return EXIT_OK


def _frac(text: str) -> Fraction:
    return Fraction(text)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="zsl", description="3k-4 modulo p workbench")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("scan", help="exhaustive scan over canonical orbits")
    s.add_argument("--mode", default="conjecture",
                   choices=("conjecture", "prop12", "mario1", "smallr", "prop7", "feasibility"))
    s.add_argument("--primes", help="e.g. 5,7,11 or 5-13")
    s.add_argument("--max-prime", type=int, default=7)
    s.add_argument("--jobs", type=int, help="worker processes (default $ZSL_JOBS or 1)")
    s.add_argument("--out", help="JSONL output path")
    s.add_argument("--emit-all", action="store_true")
    s.add_argument("--cap", type=int, default=19)
    s.add_argument("--samples", type=int, default=0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--theorem", choices=("thm2", "thm3", "thm15", "thm19"))
    s.add_argument("--delta", default="translate", choices=("translate", "conjecture"))
    s.add_argument("--strict", action="store_true", help="re-verify output, exit 1 on failure")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("cover", help="ell_d, minimal covers, rectification")
    s.add_argument("--modulus", "--n", dest="n", type=int, required=True)
    s.add_argument("--set", required=True)
    s.add_argument("--d", type=int)
    s.add_argument("--with-set", help="second set for a rectification witness")
    s.set_defaults(func=cmd_cover)

    s = sub.add_parser("atoms", help="k-atoms and fragments of B")
    s.add_argument("--modulus", "--n", dest="n", type=int, required=True)
    s.add_argument("--set", required=True)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--full", action="store_true", help="list every fragment")
    s.add_argument("--check", action="store_true", help="evaluate the atom bounds")
    s.set_defaults(func=cmd_atoms)

    s = sub.add_parser("verify-z", help="3k-4 verifier over the integers")
    s.add_argument("--a", "--A", dest="A", required=True)
    s.add_argument("--b", "--B", dest="B", required=True)
    s.set_defaults(func=cmd_verify_z)

    s = sub.add_parser("trio", help="additive trio facts")
    s.add_argument("--modulus", "--n", dest="n", type=int, required=True)
    s.add_argument("--a", "--A", dest="A", required=True)
    s.add_argument("--b", "--B", dest="B", required=True)
    s.add_argument("--c", "--C", dest="C", help="default: -(A+B)^c")
    s.add_argument("--saturate", action="store_true")
    s.add_argument("--z", type=int)
    s.add_argument("--equivalence", action="store_true", help="statements 1-3")
    s.add_argument("--delta", default="translate", choices=("translate", "conjecture"))
    s.set_defaults(func=cmd_trio)

    s = sub.add_parser("constants", help="density constants and the numeric lemmas")
    s.add_argument("--which", choices=tuple(_WHICH) + ("lemmas",))
    s.add_argument("--alpha", type=_frac)
    s.add_argument("--beta", type=_frac)
    s.add_argument("--K", type=_frac)
    s.add_argument("--s", type=_frac)
    s.add_argument("--a", type=int)
    s.add_argument("--b", type=int)
    s.add_argument("--ell", type=int)
    s.add_argument("--lemmas", action="store_true", help="same as --which lemmas")
    s.add_argument("--rmax", type=int, default=10**6)
    s.set_defaults(func=cmd_constants)

    s = sub.add_parser("fourier", help="exponential sums and half-arc counts")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--set", required=True)
    s.add_argument("--x", type=int)
    s.set_defaults(func=cmd_fourier)

    s = sub.add_parser("example", help="build one of the constructions")
    s.add_argument("--id", required=True)
    s.add_argument("--r", type=int, required=True)
    for name in ("m", "n", "M", "p", "size", "s1"):
        s.add_argument(f"--{name}", type=int)
    s.set_defaults(func=cmd_example)

    s = sub.add_parser("verify-certs", help="re-check scan output from scratch")
    s.add_argument("paths", nargs="+")
    s.set_defaults(func=cmd_verify_certs)

    s = sub.add_parser("summarize", help="per-(p, r) CSV over scan files")
    s.add_argument("paths", nargs="+")
    s.set_defaults(func=cmd_summarize)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    warnings.simplefilter("default")
    try:
        return args.func(args)
    except CapacityError as e:
        print(f"zsl: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ZslError, ValueError) as e:
        print(f"zsl: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"zsl: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
