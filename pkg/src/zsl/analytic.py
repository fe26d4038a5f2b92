"""Exponential sums, half-arc counts and the closed-form constants.

Rational inputs (``Fraction``, ``int``, decimal strings) are evaluated exactly;
floats go through double precision.  Inequalities involving a square root are
squared into integer comparisons so that near-ties cannot flip.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from math import comb, isqrt
from typing import Union

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .cyclic import CyclicSet, require_prime
from .errors import RangeError, UsageError

Number = Union[int, float, Fraction, str, Decimal]


# ---------------------------------------------------------------------------
# exponential sums


@dataclass(frozen=True)
class ExpSumValue:
    re: float
    im: float
    p: int
    x: int

    @property
    def magnitude(self) -> float:
        return math.hypot(self.re, self.im)

    def __abs__(self) -> float:
        return self.magnitude


def exp_sum(A: CyclicSet, x: int) -> ExpSumValue:
    """S_A(x) = sum of exp(2 pi i a x / p), real and imaginary parts fsum'd."""
    p = A.n
    require_prime(p)
    ts = [(a * x) % p for a in A]
    re = math.fsum(math.cos(2 * math.pi * t / p) for t in ts)
    im = math.fsum(math.sin(2 * math.pi * t / p) for t in ts)
    return ExpSumValue(re, im, p, x)


def max_half_arc(A: CyclicSet, x: int) -> int:
    """Most points exp(ax/p) inside one open half-circle.

    Two residues fit in an open half-arc iff their circular distance is
    below p/2, i.e. a window of ceil(p/2) consecutive residues.
    """
    p = A.n
    require_prime(p)
    if x % p == 0:
        raise UsageError("x must be nonzero mod p")
    if not A:
        return 0
    marks = np.zeros(p, dtype=np.int64)
    for a in A:
        marks[(a * x) % p] = 1
    w = (p + 1) // 2  # residues per open half-arc
    ext = np.concatenate([marks, marks[: w - 1]]) if w > 1 else marks
    csum = np.concatenate([[0], np.cumsum(ext)])
    return int((csum[w : w + p] - csum[:p]).max())


@dataclass(frozen=True)
class CircleSlack:
    slack: float
    bound: int  # 2n - N
    magnitude: float
    bound_negative: bool


def circle_bound(A: CyclicSet, x: int) -> CircleSlack:
    n = max_half_arc(A, x)
    bound = 2 * n - len(A)
    mag = exp_sum(A, x).magnitude
    return CircleSlack(bound - mag, bound, mag, bound < 0)


def circle_bound_slack(A: CyclicSet, x: int) -> float:
    """(2 * max_half_arc - |A|) - |S_A(x)|; never below -1e-9."""
    return circle_bound(A, x).slack


# ---------------------------------------------------------------------------
# constants


def _as_exact(v: Number):
    if isinstance(v, bool):
        raise UsageError("boolean is not a number")
    if isinstance(v, (Fraction, int)):
        return Fraction(v)
    if isinstance(v, (str, Decimal)):
        return Fraction(str(v))
    if isinstance(v, float):
        return v
    raise UsageError(f"unsupported numeric type {type(v).__name__}")


def c1_parts(alpha):
    a = alpha
    return 5 - 18 * a - 24 * a**2 - 8 * a**3, 14 - 9 * a - 24 * a**2 - 8 * a**3


def const_c1(alpha: Number):
    a = _as_exact(alpha)
    if not (0 < a <= Fraction(212, 1000)):
        raise RangeError(f"alpha={alpha} outside (0, 0.212]")
    num, den = c1_parts(a)
    return num / den


def cbeta_parts(alpha, beta):
    a, b = alpha, beta
    num = (
        -4
        - (1 + 12 * a) * b
        + 3 * (5 + a - 4 * a**2) * b**2
        + (-1 + 3 * a - 4 * a**3) * b**3
        - 4 * (1 + a) ** 3 * b**4
    )
    den = (
        -4
        + 11 * b**2
        + 11 * b**3
        - 4 * b**5
        - 3 * a * b * (4 - 5 * b**2 + 4 * b**4)
        - 12 * a**2 * (b**2 + b**5)
        - 4 * a**3 * (b**3 + b**5)
    )
    return num, den


def const_cbeta(alpha: Number, beta: Number):
    a, b = _as_exact(alpha), _as_exact(beta)
    if not (0 < a <= Fraction(212, 1000)):
        raise RangeError(f"alpha={alpha} outside (0, 0.212]")
    if not (Fraction(731, 1000) <= b <= 1):
        raise RangeError(f"beta={beta} outside [0.731, 1]")
    num, den = cbeta_parts(a, b)
    return num / den


def const_levshkredov(K: Number, s: Number):
    K, s = _as_exact(K), _as_exact(s)
    if not (2 < K < 3):
        raise RangeError(f"K={K} outside (2, 3)")
    if s < K * K:
        raise RangeError(f"s={s} below K^2")
    num = -27 * K + 9 * K**2 + s * (9 + 9 * K - 9 * K**2 + 12 * K**3 - 4 * K**4)
    return num / (4 * s * (3 - K) * K**4)


def gamma_thresholds(a: int, b: int, ell: int) -> tuple[Fraction, Fraction]:
    if min(a, b, ell) <= 0:
        raise RangeError("a, b, ell must be positive")
    return Fraction(2 * ell + 6 - 3 * a, 3), Fraction(2 * ell + 6 - 3 * b, 3)


@dataclass(frozen=True)
class ConstantsReport:
    alpha: object = None
    beta: object = None
    K: object = None
    s: object = None
    c1: object = None
    c_beta: object = None
    c_levshkredov: object = None
    gamma_A: object = None
    gamma_B: object = None

    def to_json(self) -> dict:
        def enc(v):
            if isinstance(v, Fraction):
                return {"exact": str(v), "float": float(v)}
            return v

        return {k: enc(v) for k, v in self.__dict__.items() if v is not None}


def constants_report(alpha=None, beta=None, K=None, s=None, a=None, b=None, ell=None) -> ConstantsReport:
    alpha, beta, K, s = (None if v is None else _as_exact(v) for v in (alpha, beta, K, s))
    c1 = const_c1(alpha) if alpha is not None else None
    cb = const_cbeta(alpha, beta) if alpha is not None and beta is not None else None
    lev = const_levshkredov(K, s) if K is not None and s is not None else None
    gA = gB = None
    if a is not None and b is not None and ell is not None:
        gA, gB = gamma_thresholds(a, b, ell)
    return ConstantsReport(alpha, beta, K, s, c1, cb, lev, gA, gB)


# (alpha, beta, threshold) for the three explicit size/density cases
DENSITY_CASES = (
    (Fraction(21, 1000), Fraction(4, 5), Fraction(1, 3)),
    (Fraction(105, 1000), Fraction(4, 5), Fraction(1, 5)),
    (Fraction(1, 9), Fraction(8484, 10000), Fraction(1963, 9253)),
)

# (K, threshold) pairs used with s = 11
LEV_CASES = (
    ("2.572", "0.0111"),
    ("2.552", "0.0289"),
    ("2.515", "0.0588"),
    ("2.578", "0.00561"),
    ("2.564", "0.01845"),
    ("2.541", "0.0382"),
)


def c1_real_roots(lo: float = -3.0, hi: float = 1.0, steps: int = 40_001) -> dict[str, list[float]]:
    """Real zeros of the numerator and denominator of c1 by sign changes."""
    out = {}
    for which, idx in (("zeros", 0), ("poles", 1)):

        def f(a, idx=idx):
            return c1_parts(a)[idx]

        grid = np.linspace(lo, hi, steps)
        vals = f(grid)
        roots = []
        for i in np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]:
            roots.append(brentq(f, grid[i], grid[i + 1], xtol=1e-14))
        roots += [float(g) for g, v in zip(grid, vals) if v == 0.0]
        out[which] = sorted(roots)
    return out


def cbeta_denominator_min(step: float = 1e-3) -> float:
    """Smallest c_beta denominator on the (alpha, beta) grid."""
    a = np.arange(1, int(round(0.212 / step)) + 1) * step
    b = np.arange(int(round(0.731 / step)), int(round(1 / step)) + 1) * step
    A, Bm = np.meshgrid(a, b, indexing="ij")
    return float(cbeta_parts(A, Bm)[1].min())


# ---------------------------------------------------------------------------
# numeric lemma suite

R9253 = Fraction(9253, 1963)


@dataclass
class LemmaResult:
    ok: bool
    detail: str = ""
    data: dict = field(default_factory=dict)


@dataclass
class LemmaSuiteReport:
    results: dict[str, LemmaResult]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results.values())

    def failures(self) -> list[str]:
        return [k for k, v in self.results.items() if not v.ok]


def sqrt_linear_bound(r: int) -> bool:
    """sqrt(2r + 17/4) <= 10/3 + 0.16797 r, exactly."""
    rhs = 10**6 + 50391 * r  # 300000 * (10/3 + 0.16797 r)
    return rhs >= 0 and (8 * r + 17) * 22_500_000_000 <= rhs * rhs


def sqrt_linear_margin(r: float) -> float:
    return 10 / 3 + 0.16797 * r - math.sqrt(2 * r + 17 / 4)


def rprime_bound(r: int) -> bool:
    """9253/1963 (10r + 26.5 + sqrt(2r + 17/4)) <= 48.3 r + 136.937, exactly."""
    N = (48300 * r + 136937) * 1963 - 9253 * (10000 * r + 26500)
    return N >= 0 and (8 * r + 17) * 9_253_000**2 <= 4 * N * N


def atom_upper(r: int) -> int:
    """floor(2r + 2.5 + sqrt(2r + 17/4)) + r."""
    return 3 * r + (5 + isqrt(8 * r + 17)) // 2


# name -> exact integer test of atom_upper(r) against the stated linear bound
XR_BOUNDS = {
    "283/92(r+3)": lambda U, r: 92 * U <= 283 * (r + 3),
    "3.143(r+2)": lambda U, r: 1000 * U <= 3143 * (r + 2),
    "3.1(r+2.5)": lambda U, r: 20 * U <= 31 * (2 * r + 5),
    "3.0885(r+2.7)": lambda U, r: 100000 * U <= 30885 * (10 * r + 27),
}


def xr_real_ratio(r: float) -> float:
    return (3 * r + 2.5 + math.sqrt(2 * r + 17 / 4)) / (r + 3)


def _stillness_tail(n: int, z: Fraction) -> Fraction:
    """(1 + nz + 0.466 n^2 z^2 - (1+z)^n) / z^2, decreasing in z >= 0."""
    c = Fraction(466, 1000) * n * n - comb(n, 2)
    return c - sum(comb(n, k) * z ** (k - 2) for k in range(3, n + 1))


def stillness_check(
    nmax: int = 8, zmax: Fraction = Fraction(313, 10000), grid: int = 100_000, pieces: int = 64
) -> LemmaResult:
    """(1+z)^n <= 1 + nz + 0.466 n^2 z^2 on [0, zmax] for 2 <= n <= nmax.

    Grid check in floats, then an exact bound per subinterval [a, b]: the
    difference is z^2 times a decreasing function, so it is at least
    a^2 * tail(b) whenever tail(b) >= 0.
    """
    z = np.linspace(0.0, float(zmax), grid)
    worst = {}
    ok = True
    for n in range(2, nmax + 1):
        diff = 1 + n * z + 0.466 * n * n * z * z - (1 + z) ** n
        worst[n] = float(diff.min())
        if worst[n] < -1e-15:
            ok = False
        for i in range(pieces):
            b = zmax * (i + 1) / pieces
            if _stillness_tail(n, b) < 0:
                ok = False
    n2 = _stillness_tail(2, Fraction(1)) == Fraction(864, 1000)
    return LemmaResult(ok and n2, data={"grid_min": worst, "n2_coeff_is_0.864": n2})


def derivation_checks() -> dict[str, bool]:
    a = Fraction(527, 10000)
    lem = Fraction(1016797, 100000)
    tail = Fraction(53, 2) + Fraction(10, 3)
    return {
        "2/alpha+10": 2 / a + 10 >= R9253 * lem,
        "27+6/alpha": 27 + 6 / a >= R9253 * tail,
        "48": 48 >= R9253 * lem,
        "141": 141 >= R9253 * tail,
    }


# (a, b, density): a r + b < density * p whenever p >= 202 r + 603, r >= 2
CLAIM_D_DENSITIES = {
    "D1": (
        ("2.143", "6.286", "0.01061"),
        ("5.741", "17.051", "0.02843"),
        ("11.757", "34.443", "0.05821"),
        ("24.689", "76.767", "0.128"),
    ),
    "D3": (
        ("1", "3", "0.00498"),
        ("3.704", "8.255", "0.0184"),
        ("7.614", "14.12", "0.0377"),
        ("16.053", "26.78", "0.0795"),
    ),
}


def claim_d_checks() -> dict[str, bool]:
    """Lev-Shkredov applications: c(K, 11) beats the threshold, the
    threshold covers the proven density, and the density follows from
    p >= 202 r + 603."""
    out = {}
    s = 11
    for (K, thr), (case, dens) in zip(
        LEV_CASES, [("D1", d) for d in CLAIM_D_DENSITIES["D1"][:3]] + [("D3", d) for d in CLAIM_D_DENSITIES["D3"][:3]]
    ):
        c = const_levshkredov(K, s)
        a, b, rho = (Fraction(v) for v in dens)
        out[f"{case} K={K}: c>{thr}"] = c > Fraction(thr)
        out[f"{case} K={K}: density {dens[2]}<={thr}"] = rho <= Fraction(thr)
        out[f"{case} K={K}: {dens[0]}r+{dens[1]}<{dens[2]}p"] = a <= 202 * rho and b < 603 * rho
    for case, rows in CLAIM_D_DENSITIES.items():
        a, b, rho = (Fraction(v) for v in rows[3])
        out[f"{case} |8X| density"] = a <= 202 * rho and b < 603 * rho
    return out


def numeric_lemma_suite(rmax: int = 10**6) -> LemmaSuiteReport:
    res: dict[str, LemmaResult] = {}

    bad = [r for r in range(-1, rmax + 1) if not sqrt_linear_bound(r)]
    margin16 = sqrt_linear_margin(16)
    res["sqrt-linear"] = LemmaResult(
        not bad and 0 <= margin16 < 1e-4,
        f"first failure {bad[:1]}" if bad else "",
        {"margin_r16": margin16},
    )

    res["stillness"] = stillness_check()

    bad = [r for r in range(-1, rmax + 1) if not rprime_bound(r)]
    res["rprime"] = LemmaResult(not bad, f"first failure {bad[:1]}" if bad else "")

    for name, test in XR_BOUNDS.items():
        bad = []
        tight = []
        for r in range(2, rmax + 1):
            U = atom_upper(r)
            if not test(U, r):
                bad.append(r)
            elif name.startswith("283") and 92 * U == 283 * (r + 3):
                tight.append(r)
        res[f"X+r<={name}"] = LemmaResult(not bad, f"failures {bad[:5]}" if bad else "", {"equality_at": tight})

    opt = minimize_scalar(lambda r: -xr_real_ratio(r), bounds=(2, 1000), method="bounded", options={"xatol": 1e-9})
    branch = list(range(2, 80)) + list(range(89, 2000))
    int_arg = max(branch, key=xr_real_ratio)
    res["X+r-maximizer"] = LemmaResult(
        round(opt.x) == 84 and int_arg == 89, data={"real_argmax": float(opt.x), "branch_int_argmax": int_arg}
    )

    roots = c1_real_roots()
    expect_zero, expect_poles = [0.2129], [-2.0, -1.56, 0.56]
    ok = len(roots["zeros"]) == 1 and abs(roots["zeros"][0] - expect_zero[0]) < 1e-3
    ok = ok and len(roots["poles"]) == 3
    ok = ok and all(abs(x - y) < 1e-2 for x, y in zip(roots["poles"], expect_poles))
    res["c1-roots"] = LemmaResult(ok, data=roots)

    dmin = cbeta_denominator_min()
    res["cbeta-denominator"] = LemmaResult(dmin > 0, data={"min": dmin})

    cases = {}
    for a, b, thr in DENSITY_CASES:
        cases[f"alpha={a}"] = min(const_c1(a), const_cbeta(a, b)) >= thr
    res["density-cases"] = LemmaResult(all(cases.values()), data=cases)

    der = derivation_checks()
    res["derivations"] = LemmaResult(all(der.values()), data=der)

    cd = claim_d_checks()
    res["claim-D"] = LemmaResult(all(cd.values()), data=cd)
    return LemmaSuiteReport(res)
