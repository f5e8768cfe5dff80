"""Coherent states for a quantum particle on the sphere.

A classical phase point (x, l) with x on the sphere of radius r and l
tangent to it is mapped to a complex label z with z.z = 1 through
cosh/sinh weights; the coherent state is the joint eigenvector of the three
commuting generators Z_i with eigenvalues z_i.  Three independent
constructions are provided:

  * closed form: a single Gegenbauer-polynomial expression per amplitude
    (the production path, fully log-domain);
  * triple sum: the raw expansion of the group-element generation;
  * ladder generation: exponentials of J+/J3/J- applied to the rest state
    at the north pole.

Agreement of the three routes, the eigenvalue residual, and the expectation
values of J and X against the classical labels are the module's testable
claims.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .logdomain import LogComplex, ONE, ZERO, log_complex_sum
from .repspace import (BasisIndex, RepParams, StateVector, apply_J, apply_Z,
                       expectation, state_scale, state_sum)
from .specfun import gegenbauer_column, log_factorial

__all__ = [
    "ConstraintError",
    "SpherePhasePoint",
    "ZLabel",
    "phase_to_z",
    "axis_reference_label",
    "north_pole_state",
    "coherent_closed_form",
    "coherent_triple_sum",
    "coherent_ladder_generated",
    "coherent_state",
    "default_j_cut",
    "generation_params",
    "eigen_residual",
    "expect_J",
    "expect_X",
    "relative_X",
    "uncertainty_J",
    "SphereUncertainty",
    "apply_rotation",
    "max_amplitude_rel_diff",
]

TANGENCY_TOL = 1e-9
RADIUS_REPAIR_LIMIT = 1e-2
LABEL_TOL = 1e-9
DEFAULT_TAIL_TOL = 1e-24


class ConstraintError(ValueError):
    """A phase point violates the sphere or tangency constraints."""


def _vec(v) -> np.ndarray:
    a = np.asarray(v, dtype=float)
    if a.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {a.shape}")
    return a


@dataclass(frozen=True)
class SpherePhasePoint:
    """Classical phase point: position x with |x| = r and tangent momentum l.

    Positions off the sphere by up to 1% (typical of values quoted to a few
    decimals) are rescaled onto it at construction, so the stored x always
    satisfies the radius constraint to machine precision.  Tangency is only
    repaired on request via project_tangent, since projecting l genuinely
    changes the label.
    """

    x: np.ndarray
    l: np.ndarray
    r: float = 1.0

    def __init__(self, x, l, r: float = 1.0, project_tangent: bool = False):
        x = _vec(x)
        l = _vec(l)
        if not r > 0:
            raise ConstraintError(f"radius must be positive, got {r}")
        dev = abs(x @ x - r * r) / (r * r)
        if dev > RADIUS_REPAIR_LIMIT:
            raise ConstraintError(
                f"|x|^2 = {x @ x:.6g} is too far from r^2 = {r * r:.6g}")
        if dev > 0:
            x = x * (r / math.sqrt(x @ x))
        lnorm = math.sqrt(l @ l)
        if lnorm > 0:
            tang = abs(l @ x) / (lnorm * r)
            if tang > TANGENCY_TOL:
                if not project_tangent:
                    raise ConstraintError(
                        f"l.x/(|l| r) = {tang:.3g} exceeds {TANGENCY_TOL}; "
                        "pass project_tangent=True to project l onto the "
                        "tangent plane")
                l = l - (l @ x) / (r * r) * x
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "r", float(r))

    @property
    def l_norm(self) -> float:
        return math.sqrt(self.l @ self.l)


@dataclass(frozen=True)
class ZLabel:
    """Complex 3-vector label with the bilinear constraint z.z = 1.

    The constraint check is relative to the Hermitian size sum |z_i|^2: the
    bilinear sum cancels terms of order cosh^2|l| down to 1, so an absolute
    comparison would reject exact labels on roundoff alone once |l| exceeds
    about 8.
    """

    z: np.ndarray
    checked: bool = True

    def __init__(self, z, *, check: bool = True):
        z = np.asarray(z, dtype=complex)
        if z.shape != (3,):
            raise ValueError(f"expected a complex 3-vector, got {z.shape}")
        if check:
            scale = max(1.0, float(np.sum(np.abs(z) ** 2)))
            dev = abs(z @ z - 1.0) / scale
            if dev > LABEL_TOL:
                raise ConstraintError(
                    f"|z.z - 1| = {dev:.3g} of the label size exceeds {LABEL_TOL}")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "checked", bool(check))

    @classmethod
    def unchecked(cls, z) -> "ZLabel":
        """Bypass the bilinear check (used for axis reference labels only)."""
        return cls(z, check=False)


def _sinhc(t: float) -> float:
    return math.sinh(t) / t if t != 0.0 else 1.0


def phase_to_z(p: SpherePhasePoint) -> ZLabel:
    """z = cosh|l| x/r + i (sinh|l|/|l|) (l cross x)/r; z.z = 1 exactly."""
    ln = p.l_norm
    real = math.cosh(ln) * p.x / p.r
    imag = _sinhc(ln) * np.cross(p.l, p.x) / p.r
    return ZLabel(real + 1j * imag)


def axis_reference_label(l, k: int) -> ZLabel:
    """Label built from the k-th coordinate axis with an arbitrary l.

    Used for relative position averages.  Since l is generally not tangent
    to the axis vector, the bilinear constraint fails by sinh^2|l| (l.n_k)^2
    / |l|^2; the label is therefore constructed unchecked and the caller is
    expected to treat the resulting state as a reference, not as a proper
    coherent state.
    """
    l = _vec(l)
    n = np.zeros(3)
    n[k] = 1.0
    ln = math.sqrt(l @ l)
    z = math.cosh(ln) * n + 1j * _sinhc(ln) * np.cross(l, n)
    return ZLabel.unchecked(z)


def default_j_cut(l_norm: float) -> int:
    """Coefficients peak near j = |l| and die off super-exponentially."""
    return max(math.ceil(2.0 * l_norm) + 20, 40)


def north_pole_state(rep: RepParams, j_cut: int) -> StateVector:
    """Rest state at the north pole: sum_j e^{-j(j+1)/2} sqrt(2j+1) |j, 0>."""
    if j_cut < 10:
        raise ValueError(f"j_cut={j_cut} too small for a faithful rest state")
    amps = {
        BasisIndex(j, 0): LogComplex.from_polar(
            -0.5 * j * (j + 1) + 0.5 * math.log(2 * j + 1))
        for j in range(j_cut + 1)
    }
    return StateVector(amps, j_cut=j_cut, rep=rep)


def coherent_closed_form(zl: ZLabel, rep: RepParams, j_cut: int) -> StateVector:
    """Amplitudes from the single-sum Gegenbauer expression.

    <j, m| state> combines e^{-j(j+1)/2} sqrt(2j+1), a factorial weight in
    |m|, the |m|-th power of (-sign(m) z1 + i z2)/2, and the Gegenbauer
    polynomial of degree j - |m| with parameter |m| + 1/2 at z3.  Everything
    is assembled in the log domain; one recurrence sweep per |m| yields the
    whole column of polynomial values.
    """
    z1, z2, z3 = zl.z
    cols = {}
    amps = {}
    for am in range(j_cut + 1):
        cols[am] = gegenbauer_column(j_cut - am, am + 0.5, z3)
    w_pos = LogComplex.from_complex((-z1 + 1j * z2) / 2.0)
    w_neg = LogComplex.from_complex((z1 + 1j * z2) / 2.0)
    for j in range(j_cut + 1):
        for m in range(-j, j + 1):
            am = abs(m)
            lmag = (-0.5 * j * (j + 1) + 0.5 * math.log(2 * j + 1)
                    + log_factorial(2 * am) - log_factorial(am)
                    + 0.5 * (log_factorial(j - am) - log_factorial(j + am)))
            base = LogComplex.from_polar(lmag)
            w = w_pos if m > 0 else w_neg
            val = base * (w ** am if m != 0 else ONE) * cols[am][j - am]
            if not val.is_zero:
                amps[BasisIndex(j, m)] = val
    return StateVector(amps, j_cut=j_cut, rep=rep)


def generation_params(zl: ZLabel) -> tuple[complex, complex, complex]:
    """(mu, nu, gamma) of the lowering/diagonal/raising generation product.

    Singular exactly at z3 = -1 (the antipodal coordinate singularity of the
    parametrization); callers must reject that configuration rather than
    pick an arbitrary branch around it.
    """
    z1, z2, z3 = zl.z
    if abs(1.0 + z3) < 1e-12:
        raise ConstraintError("generation parameters are singular at z3 = -1")
    mu = (z1 + 1j * z2) / (1.0 + z3)
    nu = (-z1 + 1j * z2) / (1.0 + z3)
    gamma = cmath.log((1.0 + z3) / 2.0)
    return mu, nu, gamma


def coherent_triple_sum(zl: ZLabel, rep: RepParams, j_cut: int) -> StateVector:
    """Raw expansion over (j, m, k); agrees with the closed form.

    Kept as an independent verification path: it shares no code with the
    Gegenbauer route beyond the log-domain carrier.
    """
    mu, nu, gamma = generation_params(zl)
    mu_l = LogComplex.from_complex(mu)
    nu_l = LogComplex.from_complex(nu)
    contribs: dict = {}
    for j in range(j_cut + 1):
        base = LogComplex.from_polar(-0.5 * j * (j + 1)
                                     + 0.5 * math.log(2 * j + 1))
        for m in range(0, j + 1):
            fm = (base * (nu_l ** m)
                  * LogComplex.from_polar(-log_factorial(m)
                                          + log_factorial(j + m)
                                          - log_factorial(j - m))
                  * LogComplex.from_polar(m * gamma.real, m * gamma.imag))
            if fm.is_zero:
                continue
            for k in range(0, j + m + 1):
                mk = m - k
                if abs(mk) > j:
                    continue
                term = (fm * (mu_l ** k)
                        * LogComplex.from_polar(
                            -log_factorial(k)
                            + 0.5 * (log_factorial(j - m + k)
                                     - log_factorial(j + m - k))))
                if not term.is_zero:
                    contribs.setdefault(BasisIndex(j, mk), []).append(term)
    amps = {}
    for key, terms in contribs.items():
        t = log_complex_sum(terms)
        if not t.is_zero:
            amps[key] = t
    return StateVector(amps, j_cut=j_cut, rep=rep)


def _exp_ladder(which: str, coef: complex, s: StateVector) -> StateVector:
    """exp(coef * Jpm) as the ladder series.

    Jpm is nilpotent inside each multiplet, so the series is an exact finite
    sum that terminates on its own by 2 j_cut + 1 applications.  No
    norm-based early cut is applied: a later diagonal stage can reweight
    amplitudes by factors as large as e^{|Re gamma| j_cut}, which would turn
    any "negligible now" judgement into a real error downstream.
    """
    if coef == 0:
        return s
    terms = [s]
    term = s
    k = 0
    while True:
        k += 1
        term = state_scale(apply_J(which, term), coef / k)
        if term.is_zero():
            break
        terms.append(term)
        if k > 2 * s.j_cut + 2:
            raise RuntimeError("ladder series failed to terminate")
    return state_sum(terms)


def _diag_exp_J3(gamma: complex, s: StateVector) -> StateVector:
    amps = {k: (a * LogComplex.from_polar(k.m * gamma.real, k.m * gamma.imag))
            for k, a in s.amplitudes.items()}
    return replace(s, amplitudes=amps)


def coherent_ladder_generated(zl: ZLabel, rep: RepParams,
                              j_cut: int) -> StateVector:
    """Generate from the north-pole rest state by ladder exponentials."""
    mu, nu, gamma = generation_params(zl)
    s = north_pole_state(rep, j_cut)
    s = _exp_ladder("Jplus", nu, s)
    s = _diag_exp_J3(gamma, s)
    s = _exp_ladder("Jminus", mu, s)
    return s


def apply_rotation(s: StateVector, axis, angle: float) -> StateVector:
    """Unitary rotation exp(-i angle axis.J) via its Gauss decomposition.

    The 2x2 spin matrix of the rotation factors as
    exp(a J-) exp(b J3) exp(c J+), and the same parameters implement the
    rotation in every multiplet, which lets the ladder-series machinery be
    reused verbatim.  Fails when the matrix corner alpha vanishes (rotation
    by pi about an equatorial axis); tests avoid that measure-zero set.
    """
    n = _vec(axis)
    n = n / math.sqrt(n @ n)
    ch, sh = math.cos(angle / 2.0), math.sin(angle / 2.0)
    alpha = complex(ch, -n[2] * sh)
    beta = complex(-n[1] * sh, -n[0] * sh)
    gamma_e = complex(n[1] * sh, -n[0] * sh)
    if abs(alpha) < 1e-12:
        raise ValueError("rotation is singular for this decomposition")
    a = gamma_e / alpha
    b = 2.0 * cmath.log(alpha)
    c = beta / alpha
    out = _exp_ladder("Jplus", c, s)
    out = _diag_exp_J3(b, out)
    out = _exp_ladder("Jminus", a, out)
    return out


def coherent_state(p: SpherePhasePoint, j_cut: int | str = "auto",
                   tail_tol: float = DEFAULT_TAIL_TOL,
                   rep: RepParams | None = None) -> StateVector:
    """Closed-form coherent state with adaptive truncation.

    With j_cut='auto' the level starts at the default for |l| and doubles
    until the squared-norm fraction in the top two j bands drops below
    tail_tol.  An explicit integer disables the adaptive loop.
    """
    rep = rep or RepParams(r=p.r)
    zl = phase_to_z(p)
    if j_cut != "auto":
        return coherent_closed_form(zl, rep, int(j_cut))
    cut = default_j_cut(p.l_norm)
    for _ in range(5):
        s = coherent_closed_form(zl, rep, cut)
        if s.tail_fraction(bands=2) <= tail_tol:
            return s
        cut *= 2
    raise RuntimeError(f"truncation did not converge below {tail_tol}")


def eigen_residual(s: StateVector, zl: ZLabel) -> float:
    """max_i ||(Z_i - z_i)|s>|| on the truncation interior, |s> normalized."""
    sn = s.normalized()
    interior = s.j_cut - 2
    worst = 0.0
    for which, zi in zip(("Z1", "Z2", "Z3"), zl.z):
        t = apply_Z(which, sn)
        diff = state_sum([t, state_scale(sn, -complex(zi))]).restricted(interior)
        worst = max(worst, diff.norm())
    return worst


def _expect_pair(plus: str, minus: str, s: StateVector) -> tuple[float, float]:
    """Real (1st, 2nd) Cartesian components from a ladder pair of operators."""
    ep = expectation(plus, s)
    em = expectation(minus, s)
    herm = abs(em - ep.conjugate())
    scale = max(1.0, abs(ep))
    if herm > 1e-9 * scale:
        raise AssertionError(f"hermiticity residue {herm} too large")
    c1 = (ep + em) / 2.0
    c2 = (ep - em) / 2j
    return c1.real, c2.real


def _assert_real(v: complex) -> float:
    if abs(v.imag) > 1e-9 * max(1.0, abs(v)):
        raise AssertionError(f"expected a real expectation, got {v}")
    return v.real


def expect_J(s: StateVector) -> np.ndarray:
    """Componentwise <J>; tracks the classical l up to a 1/(2|l|) deficit."""
    j1, j2 = _expect_pair("Jplus", "Jminus", s)
    j3 = _assert_real(expectation("J3", s))
    return np.array([j1, j2, j3])


def expect_X(s: StateVector) -> np.ndarray:
    """Componentwise <X>; tracks e^{-1/4} x at large |l|."""
    x1, x2 = _expect_pair("Xplus", "Xminus", s)
    x3 = _assert_real(expectation("X3", s))
    return np.array([x1, x2, x3])


def relative_X(s: StateVector, p: SpherePhasePoint,
               j_cut: int | None = None) -> np.ndarray:
    """<X_k> normalized by the same average in the k-axis reference state.

    The ratio cancels the universal e^{-1/4} contraction and lands near the
    classical x.  Components whose reference average is below 1e-6 r are
    reported as NaN (undefined), never as a huge ratio.
    """
    cut = j_cut if j_cut is not None else s.j_cut
    num = expect_X(s)
    out = np.empty(3)
    for k in range(3):
        ref_label = axis_reference_label(p.l, k)
        ref_state = coherent_closed_form(ref_label, s.rep, cut)
        den = expect_X(ref_state)[k]
        out[k] = num[k] / den if abs(den) >= 1e-6 * p.r else math.nan
    return out


@dataclass(frozen=True, slots=True)
class SphereUncertainty:
    var_j: float
    bound: float


def uncertainty_J(s: StateVector) -> SphereUncertainty:
    """(Delta J)^2 against its position-controlled lower bound.

    The bound is T/2 / (1 - T) with T = |<X>|^2 / r^2, the spinor-trace form
    of the position average; it degenerates to 0 >= 0 on basis states.
    """
    ej = expect_J(s)
    jsq = _assert_real(expectation("Jsq", s))
    var_j = jsq - float(ej @ ej)
    ex = expect_X(s)
    t = float(ex @ ex) / (s.rep.r ** 2)
    bound = 0.5 * t / (1.0 - t) if t < 1.0 else math.inf
    if not var_j >= bound - 1e-9 * max(1.0, abs(bound)):
        raise AssertionError(
            f"uncertainty bound violated: var={var_j} < bound={bound}")
    return SphereUncertainty(var_j, bound)


def max_amplitude_rel_diff(a: StateVector, b: StateVector) -> float:
    """max_k |a_k - b_k| over max_k |a_k|, computed in the log domain.

    The scale is taken from `a` (the reference construction); a global
    normalization mismatch between the two states shows up rather than
    cancelling.
    """
    if not a.amplitudes:
        raise ValueError("reference state has no amplitudes")
    ref = max(v.log_mag for v in a.amplitudes.values())
    worst = -math.inf
    for key in set(a.amplitudes) | set(b.amplitudes):
        va = a.amplitudes.get(key, ZERO)
        vb = b.amplitudes.get(key, ZERO)
        d = log_complex_sum([va, -vb])
        if d.log_mag > worst:
            worst = d.log_mag
    if worst == -math.inf:
        return 0.0
    return math.exp(worst - ref)
