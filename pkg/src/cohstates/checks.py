"""Named verification checks behind the `verify` command.

Each check returns the worst measured residual over its sweep together with
the tolerance it is held to.  Identity residuals are normalized by the
largest operator scale participating in the identity: the generator weights
grow like e^{j}, so "equal to 1e-12" is a statement about the forward
stability of each composition, not about absolute amplitudes that no finite
arithmetic could resolve.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .circle import (CirclePhasePoint, circle_coherent, circle_eigen_residual,
                     circle_expect_J, circle_expect_U,
                     circle_uncertainty_report)
from .logdomain import LogComplex
from .repspace import (RepParams, apply_J, apply_X, apply_Z,
                       apply_Z_vector_form, basis_state, relative_residual,
                       state_scale, state_sum)
from .repspace import _diag_mul_logs, _jsq_scalar_logs
from .specfun import gegenbauer, hyp2f1_terminating, log_factorial
from .spinor import (SpinorState, apply_K, apply_V, apply_Z_from_matrix,
                     apply_Z_matrix, spinor_basis, spinor_relative_residual,
                     spinor_scale, spinor_sum)
from .sphere import (SpherePhasePoint, coherent_closed_form,
                     coherent_ladder_generated, coherent_state,
                     coherent_triple_sum, eigen_residual,
                     max_amplitude_rel_diff, phase_to_z, uncertainty_J)

__all__ = ["CheckResult", "run_all", "ALL_CHECKS"]

IDENTITY_TOL = 1e-12
SERIES_TOL = 1e-10
PATH_TOL = 1e-10
RESIDUAL_TOL = 1e-8

_EPS = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1,
        (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1}
_JN = ("J1", "J2", "J3")
_XN = ("X1", "X2", "X3")
_ZN = ("Z1", "Z2", "Z3")


@dataclass(frozen=True, slots=True)
class CheckResult:
    name: str
    measured: float
    tolerance: float

    def __post_init__(self):
        object.__setattr__(self, "measured", float(self.measured))
        object.__setattr__(self, "tolerance", float(self.tolerance))

    @property
    def passed(self) -> bool:
        return self.measured <= self.tolerance


def _cart_J(which: str, s):
    if which == "J3":
        return apply_J("J3", s)
    p, m = apply_J("Jplus", s), apply_J("Jminus", s)
    if which == "J1":
        return state_sum([state_scale(p, 0.5 + 0j), state_scale(m, 0.5 + 0j)])
    return state_sum([state_scale(p, -0.5j), state_scale(m, 0.5j)])


def _cart(which: str, s):
    return _cart_J(which, s) if which.startswith("J") else apply_X(which, s)


def _interior_vectors(j_cut: int, j_step: int = 1):
    rep = RepParams()
    for j in range(0, j_cut - 1, j_step):
        for m in range(-j, j + 1):
            yield j, m, basis_state(j, m, j_cut, rep)


def check_e3_commutators(j_cut: int = 30) -> CheckResult:
    """[J,J], [J,X] close on the structure constants; [X,X] vanishes."""
    interior = j_cut - 2
    worst = 0.0
    for j, m, s in _interior_vectors(j_cut):
        for i, k in itertools.combinations(range(3), 2):
            for fam_a, fam_b, fam_rhs in (( _JN, _JN, _JN), (_JN, _XN, _XN)):
                ab = _cart(fam_a[i], _cart(fam_b[k], s))
                ba = _cart(fam_b[k], _cart(fam_a[i], s))
                lhs = state_sum([ab, state_scale(ba, -1 + 0j)])
                l = 3 - i - k
                rhs = state_scale(_cart(fam_rhs[l], s),
                                  complex(0, _EPS[(i, k, l)]))
                worst = max(worst, relative_residual(
                    lhs.restricted(interior), rhs.restricted(interior), s, ab))
            ab = _cart(_XN[i], _cart(_XN[k], s))
            ba = _cart(_XN[k], _cart(_XN[i], s))
            lhs = state_sum([ab, state_scale(ba, -1 + 0j)])
            worst = max(worst, relative_residual(
                lhs.restricted(interior), state_scale(s, 0j), s, ab))
        # mixed commutators with equal indices must vanish: [J_i, X_i] = 0
        for i in range(3):
            ab = _cart(_JN[i], _cart(_XN[i], s))
            ba = _cart(_XN[i], _cart(_JN[i], s))
            lhs = state_sum([ab, state_scale(ba, -1 + 0j)])
            worst = max(worst, relative_residual(
                lhs.restricted(interior), state_scale(s, 0j), s, ab))
    return CheckResult("e3_commutators", worst, IDENTITY_TOL)


def check_casimirs(j_cut: int = 30) -> CheckResult:
    """X.X = r^2 and J.X = 0 on interior basis vectors."""
    interior = j_cut - 2
    worst = 0.0
    for j, m, s in _interior_vectors(j_cut):
        r2 = s.rep.r ** 2
        parts = [_cart(x, _cart(x, s)) for x in _XN]
        xsq = state_sum(parts)
        worst = max(worst, relative_residual(
            xsq.restricted(interior), state_scale(s, complex(r2)), s, *parts))
        parts = [_cart(_JN[i], _cart(_XN[i], s)) for i in range(3)]
        jx = state_sum(parts)
        worst = max(worst, relative_residual(
            jx.restricted(interior), state_scale(s, 0j), s, *parts))
    return CheckResult("casimirs", worst, IDENTITY_TOL)


def _spinor_vectors(j_cut: int):
    rep = RepParams()
    for j in range(0, j_cut - 1):
        for m in range(-j, j + 1):
            for comp in ("up", "down"):
                yield spinor_basis(j, m, j_cut, comp, rep)


def _spinor_restrict(sp: SpinorState, j_max: int) -> SpinorState:
    return SpinorState(sp.up.restricted(j_max), sp.down.restricted(j_max))


def check_v_squared(j_cut: int = 30) -> CheckResult:
    """V^2 = I blockwise (V Hermitian and unitary on the interior)."""
    interior = j_cut - 2
    worst = 0.0
    for sp in _spinor_vectors(j_cut):
        v2 = apply_V(apply_V(sp))
        worst = max(worst, spinor_relative_residual(
            _spinor_restrict(v2, interior), _spinor_restrict(sp, interior), sp))
    return CheckResult("v_squared", worst, IDENTITY_TOL)


def check_kv_anticommutator(j_cut: int = 30) -> CheckResult:
    """K V + V K = 0 at zero twist."""
    interior = j_cut - 2
    worst = 0.0
    for sp in _spinor_vectors(j_cut):
        kv = apply_K(apply_V(sp))
        vk = apply_V(apply_K(sp))
        acom = spinor_sum([kv, vk])
        worst = max(worst, spinor_relative_residual(
            _spinor_restrict(acom, interior), spinor_scale(sp, 0j), sp, kv))
    return CheckResult("kv_anticommutator", worst, IDENTITY_TOL)


def check_z_commutativity(j_cut: int = 30) -> CheckResult:
    worst = 0.0
    interior = j_cut - 2
    for j, m, s in _interior_vectors(j_cut):
        for i, k in itertools.combinations(range(3), 2):
            ab = apply_Z(_ZN[i], apply_Z(_ZN[k], s))
            ba = apply_Z(_ZN[k], apply_Z(_ZN[i], s))
            lhs = state_sum([ab, state_scale(ba, -1 + 0j)])
            worst = max(worst, relative_residual(
                lhs.restricted(interior), state_scale(s, 0j), s, ab))
    return CheckResult("z_commutativity", worst, IDENTITY_TOL)


def check_z_normalization(j_cut: int = 30) -> CheckResult:
    """Z1^2 + Z2^2 + Z3^2 = I on interior basis vectors."""
    worst = 0.0
    interior = j_cut - 2
    for j, m, s in _interior_vectors(j_cut):
        parts = [apply_Z(z, apply_Z(z, s)) for z in _ZN]
        zsq = state_sum(parts)
        worst = max(worst, relative_residual(
            zsq.restricted(interior), s, s, *parts))
    return CheckResult("z_normalization", worst, IDENTITY_TOL)


def check_z_routes(j_cut: int = 30) -> CheckResult:
    """Ladder-form Z equals the J^2-function route and the matrix route."""
    worst = 0.0
    interior = j_cut - 2
    for j, m, s in _interior_vectors(j_cut):
        empty = replace(s, amplitudes={})
        col_u = apply_Z_matrix(SpinorState(s, empty))
        col_d = apply_Z_matrix(SpinorState(empty, s))
        for idx, z in enumerate(_ZN):
            a = apply_Z(z, s)
            b = apply_Z_vector_form(z, s)
            t1 = _diag_mul_logs(apply_X(_XN[idx], s),
                                lambda jj: _jsq_scalar_logs(jj)[0])
            worst = max(worst, relative_residual(
                a.restricted(interior), b.restricted(interior), s, t1))
            c = apply_Z_from_matrix(z, s)
            worst = max(worst, relative_residual(
                a.restricted(interior), c.restricted(interior), s,
                col_u.up, col_u.down, col_d.up, col_d.down))
    return CheckResult("z_route_equality", worst, IDENTITY_TOL)


class _QC:
    """Gaussian-rational complex: exact add/mul over Fractions.

    The series oracles below have rational coefficients (the parameters are
    half-integers, so every Pochhammer symbol is an integer) and exact binary
    inputs, so the "independent side" of each identity can be summed with no
    rounding at all.  That keeps the checks measuring the production code
    rather than the oracle's own cancellation.
    """

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def from_complex(cls, z: complex) -> "_QC":
        z = complex(z)
        return cls(Fraction(z.real), Fraction(z.imag))

    def __add__(self, o: "_QC") -> "_QC":
        return _QC(self.re + o.re, self.im + o.im)

    def __mul__(self, o: "_QC") -> "_QC":
        return _QC(self.re * o.re - self.im * o.im,
                   self.re * o.im + self.im * o.re)

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))


def check_hyp2f1_identity() -> CheckResult:
    """Factorial-sum form against the terminating 2F1 on the stated grid.

    sum_s (s+k)!/((s+m)! s! (n-s)!) z^s  ==  k!/(m! n!) 2F1(-n, k+1, m+1; -z)
    for n, k, m <= 8 and z in {-0.5, 0.7, 1+1j}.  The left side is summed in
    exact rational arithmetic; the residual is normalized by the largest
    term of the defining sum because the sum itself vanishes identically at
    scattered grid points.
    """
    worst = 0.0
    for n in range(0, 9):
        for k in range(0, 9):
            for m in range(0, 9):
                for z in (-0.5, 0.7, 1 + 1j):
                    zq = _QC.from_complex(z)
                    lhs = _QC(0)
                    zpow = _QC(1)
                    term_scale = 0.0
                    for s_ in range(n + 1):
                        coef = Fraction(
                            math.factorial(s_ + k),
                            math.factorial(s_ + m) * math.factorial(s_)
                            * math.factorial(n - s_))
                        t = _QC(coef) * zpow
                        term_scale = max(term_scale, abs(t.to_complex()))
                        lhs = lhs + t
                        zpow = zpow * zq
                    pref = LogComplex.from_polar(
                        log_factorial(k) - log_factorial(m) - log_factorial(n))
                    rhs = (pref * hyp2f1_terminating(n, k + 1.0, m + 1.0, -z)
                           ).to_complex()
                    lhs_c = lhs.to_complex()
                    scale = max(abs(lhs_c), abs(rhs), term_scale)
                    worst = max(worst, abs(lhs_c - rhs) / scale)
    return CheckResult("hyp2f1_identity_grid", worst, IDENTITY_TOL)


def check_gegenbauer_recurrence() -> CheckResult:
    """Recurrence values against the terminating-series form of the polynomial.

    C_n^a(x) = Gamma(n+2a) / (Gamma(n+1) Gamma(2a)) 2F1(-n, n+2a, a+1/2; (1-x)/2)
    over n <= 20, a in {1/2, 3/2, 9/2}, x in {0.3, 1, 2+5j}, with the series
    side summed exactly (2a is an integer on this grid, so every coefficient
    is rational).
    """
    worst = 0.0
    for n in range(0, 21):
        for alpha in (0.5, 1.5, 4.5):
            two_a = int(round(2 * alpha))
            c_int = (two_a + 1) // 2  # alpha + 1/2 is an integer on this grid
            for x in (0.3, 1.0, 2 + 5j):
                rec = gegenbauer(n, alpha, x).to_complex()
                wq = _QC.from_complex((1 - complex(x)) / 2)
                acc = _QC(0)
                term = _QC(Fraction(
                    math.factorial(n + two_a - 1),
                    math.factorial(n) * math.factorial(two_a - 1)))
                for s_ in range(n + 1):
                    acc = acc + term
                    ratio = Fraction((-n + s_) * (n + two_a + s_),
                                     (c_int + s_) * (s_ + 1))
                    term = term * _QC(ratio) * wq
                ser = acc.to_complex()
                worst = max(worst, abs(rec - ser) / abs(ser))
    return CheckResult("gegenbauer_recurrence_vs_series", worst, SERIES_TOL)


def _random_tangent_point(rng: np.random.Generator,
                          l_norm: float) -> SpherePhasePoint:
    x = rng.normal(size=3)
    x /= np.linalg.norm(x)
    v = rng.normal(size=3)
    v -= (v @ x) * x
    n = np.linalg.norm(v)
    while n < 1e-6:
        v = rng.normal(size=3)
        v -= (v @ x) * x
        n = np.linalg.norm(v)
    return SpherePhasePoint(x, l_norm * (v / n))


def check_three_paths(seed: int = 0) -> CheckResult:
    """Closed form vs triple sum vs ladder generation, amplitude-wise.

    Ten phase points: two generic orientations at each momentum magnitude in
    {0, 1, 5, 10, 12}.
    """
    rng = np.random.default_rng(seed)
    rep = RepParams()
    worst = 0.0
    for l_norm in (0.0, 1.0, 5.0, 10.0, 12.0):
        for _ in range(2):
            p = _random_tangent_point(rng, l_norm)
            zl = phase_to_z(p)
            cut = max(math.ceil(2 * l_norm) + 20, 40)
            a = coherent_closed_form(zl, rep, cut)
            b = coherent_triple_sum(zl, rep, cut)
            c = coherent_ladder_generated(zl, rep, cut)
            worst = max(worst, max_amplitude_rel_diff(a, b),
                        max_amplitude_rel_diff(a, c))
    return CheckResult("three_path_equality", worst, PATH_TOL)


def check_eigen_residuals(seed: int = 0) -> CheckResult:
    """Generator eigenvalue equation on adaptively truncated states."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for l_norm in (0.0, 5.0, 10.0, 12.0):
        p = _random_tangent_point(rng, l_norm)
        s = coherent_state(p)
        worst = max(worst, eigen_residual(s, phase_to_z(p)))
    return CheckResult("eigen_residuals", worst, RESIDUAL_TOL)


def check_label_constraint(seed: int = 0) -> CheckResult:
    """z.z = 1 (relative to label size) for 100 random tangent points."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(100):
        l_norm = rng.uniform(0.0, 12.0)
        p = _random_tangent_point(rng, l_norm)
        z = phase_to_z(p).z
        scale = max(1.0, float(np.sum(np.abs(z) ** 2)))
        worst = max(worst, abs(z @ z - 1.0) / scale)
    return CheckResult("label_constraint", worst, IDENTITY_TOL)


def check_circle_expectations() -> CheckResult:
    """|<J> - l| on the 0.05-spaced grid over [0, 3] (claimed < 1e-3)."""
    worst = 0.0
    for i in range(61):
        l = 0.05 * i
        worst = max(worst, abs(circle_expect_J(CirclePhasePoint(0.0, l)) - l))
    return CheckResult("circle_expect_J_grid", worst, 1e-3)


def check_circle_u_modulus() -> CheckResult:
    """| |<U>| - e^{-1/4} | on the same grid (claimed < 5e-3)."""
    worst = 0.0
    target = math.exp(-0.25)
    for i in range(61):
        l = 0.05 * i
        u = circle_expect_U(CirclePhasePoint(0.0, l))
        worst = max(worst, abs(abs(u) - target))
    return CheckResult("circle_u_modulus_grid", worst, 5e-3)


def check_circle_eigen() -> CheckResult:
    worst = 0.0
    for phi, l in ((0.0, 0.0), (1.0, 2.5), (2.1, 3.7), (-2.0, 1.2)):
        worst = max(worst,
                    circle_eigen_residual(circle_coherent(
                        CirclePhasePoint(phi, l))))
    return CheckResult("circle_eigen_residual", worst, 1e-12)


def check_uncertainty(seed: int = 0) -> CheckResult:
    """Variance bounds on circle and sphere states; measured = worst deficit."""
    worst = 0.0
    for l in (0.0, 0.25, 0.5, 1.0, 2.0):
        rep = circle_uncertainty_report(CirclePhasePoint(0.3, l))
        worst = max(worst, rep.bound - rep.var_j)
    rng = np.random.default_rng(seed)
    for l_norm in (0.0, 5.0, 11.0):
        p = _random_tangent_point(rng, l_norm)
        u = uncertainty_J(coherent_state(p))
        worst = max(worst, u.bound - u.var_j)
    return CheckResult("uncertainty_inequalities", max(worst, 0.0), 0.0)


def check_truncation_tail(j_cut="auto", tail_tol: float = 1e-24) -> CheckResult:
    """Tail mass of the reference figure state under the configured cut."""
    p = SpherePhasePoint([0.412, 0.412, 0.812], [8.124, -8.124, 0.0])
    if j_cut == "auto":
        s = coherent_state(p, tail_tol=tail_tol)
    else:
        s = coherent_state(p, j_cut=int(j_cut))
    return CheckResult("truncation_tail", s.tail_fraction(bands=2), tail_tol)


ALL_CHECKS = (
    "e3_commutators",
    "casimirs",
    "v_squared",
    "kv_anticommutator",
    "z_commutativity",
    "z_normalization",
    "z_route_equality",
    "hyp2f1_identity_grid",
    "gegenbauer_recurrence_vs_series",
    "three_path_equality",
    "eigen_residuals",
    "label_constraint",
    "circle_expect_J_grid",
    "circle_u_modulus_grid",
    "circle_eigen_residual",
    "uncertainty_inequalities",
    "truncation_tail",
)


def run_all(seed: int = 0, j_cut: int = 30, tail_j_cut="auto",
            tail_tol: float = 1e-24,
            tolerances: dict | None = None) -> list[CheckResult]:
    """Every check at its pinned tolerance; deterministic for a fixed seed.

    `tolerances` maps check names to override values for callers that want
    to tighten (or, for exploratory runs, relax) individual checks; unnamed
    checks keep their defaults.
    """
    results = [
        check_e3_commutators(j_cut),
        check_casimirs(j_cut),
        check_v_squared(j_cut),
        check_kv_anticommutator(j_cut),
        check_z_commutativity(j_cut),
        check_z_normalization(j_cut),
        check_z_routes(j_cut),
        check_hyp2f1_identity(),
        check_gegenbauer_recurrence(),
        check_three_paths(seed),
        check_eigen_residuals(seed),
        check_label_constraint(seed),
        check_circle_expectations(),
        check_circle_u_modulus(),
        check_circle_eigen(),
        check_uncertainty(seed),
        check_truncation_tail(tail_j_cut, tail_tol),
    ]
    if tolerances:
        results = [CheckResult(r.name, r.measured,
                               tolerances.get(r.name, r.tolerance))
                   for r in results]
    return results
