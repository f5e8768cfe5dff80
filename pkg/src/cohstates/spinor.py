"""Two-component spinor layer over the representation space.

The position matrix V = sigma.X / r, the Dirac-type operator
K = -(sigma.J + 1), the exact exponential e^{-K}, and their composition
e^{-K} V give a third, fully independent route to the coherent-state
generators: the i-th generator is recovered as (1/2) Tr(sigma_i e^{-K} V).

sigma.J leaves each (j, total-m) pair of basis vectors invariant, so e^{-K}
is evaluated block by block from the two exact eigenvalues j and -(j+1); no
series truncation is involved anywhere in this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .logdomain import LogComplex, log_complex_sum, log_sum_exp
from .repspace import (BasisIndex, RepParams, StateVector, apply_J,
                       apply_X, basis_state, inner_log, state_scale,
                       state_sum)

__all__ = [
    "SpinorState",
    "spinor_basis",
    "apply_V",
    "apply_K",
    "apply_sigma_dot_J",
    "apply_exp_minus_K",
    "apply_Z_matrix",
    "apply_Z_from_matrix",
    "spinor_inner",
    "spinor_sum",
    "spinor_scale",
    "spinor_relative_residual",
]


@dataclass(frozen=True)
class SpinorState:
    """Pair of representation-space components against auxiliary spin up/down."""

    up: StateVector
    down: StateVector

    def __post_init__(self):
        if self.up.rep != self.down.rep or self.up.j_cut != self.down.j_cut:
            raise ValueError("spinor components must share rep params and j_cut")

    def log_norm_sq(self) -> float:
        return log_sum_exp([self.up.log_norm_sq(), self.down.log_norm_sq()])


def spinor_basis(j: int, m: int, j_cut: int, component: str = "up",
                 rep=None) -> SpinorState:
    rep = rep or RepParams()
    full = basis_state(j, m, j_cut, rep)
    empty = replace(full, amplitudes={})
    if component == "up":
        return SpinorState(full, empty)
    return SpinorState(empty, full)


def apply_V(s: SpinorState) -> SpinorState:
    """(1/r) [[X3, X-], [X+, -X3]] acting blockwise."""
    r = s.up.rep.r
    inv = complex(1.0 / r)
    up = state_scale(state_sum([apply_X("X3", s.up),
                                apply_X("Xminus", s.down)]), inv)
    down = state_scale(state_sum([apply_X("Xplus", s.up),
                                  state_scale(apply_X("X3", s.down), -1 + 0j)]),
                       inv)
    return SpinorState(up, down)


def apply_sigma_dot_J(s: SpinorState) -> SpinorState:
    """[[J3, J-], [J+, -J3]] acting blockwise."""
    up = state_sum([apply_J("J3", s.up), apply_J("Jminus", s.down)])
    down = state_sum([apply_J("Jplus", s.up),
                      state_scale(apply_J("J3", s.down), -1 + 0j)])
    return SpinorState(up, down)


def apply_K(s: SpinorState) -> SpinorState:
    """-(sigma.J + 1)."""
    sj = apply_sigma_dot_J(s)
    up = state_scale(state_sum([sj.up, s.up]), -1 + 0j)
    down = state_scale(state_sum([sj.down, s.down]), -1 + 0j)
    return SpinorState(up, down)


def _expk_entries(j: int, mu: int) -> tuple:
    """2x2 block of e^{-K} = e * e^{sigma.J} on span{|j,mu> up, |j,mu+1> down}.

    The block of sigma.J is [[mu, c], [c, -(mu+1)]] with
    c = sqrt((j-mu)(j+mu+1)); its eigenvalues are j and -(j+1), so the
    exponential follows from the two spectral projectors.  Every entry is a
    two-term sum of e^{j+1} and e^{-j} weights, assembled in log form.
    """
    den = 2 * j + 1

    def entry(w_plus: float, w_minus: float) -> LogComplex:
        terms = []
        if w_plus != 0.0:
            terms.append(LogComplex.from_real(w_plus / den).scaled_log(j + 1.0))
        if w_minus != 0.0:
            terms.append(LogComplex.from_real(w_minus / den).scaled_log(-float(j)))
        return log_complex_sum(terms)

    c = math.sqrt((j - mu) * (j + mu + 1))
    e_uu = entry(j + 1 + mu, j - mu)
    e_ud = entry(c, -c)
    e_dd = entry(j - mu, j + 1 + mu)
    return e_uu, e_ud, e_dd


def apply_exp_minus_K(s: SpinorState) -> SpinorState:
    """Exact e^{-K} via the invariant 2x2 blocks of sigma.J."""
    up_contribs: list = []
    down_contribs: list = []
    for (j, m), a in s.up.amplitudes.items():
        e_uu, e_ud, _ = _expk_entries(j, m)
        up_contribs.append((BasisIndex(j, m), a * e_uu))
        if m + 1 <= j:
            down_contribs.append((BasisIndex(j, m + 1), a * e_ud))
    for (j, m), a in s.down.amplitudes.items():
        mu = m - 1
        _, e_ud, e_dd = _expk_entries(j, mu)
        down_contribs.append((BasisIndex(j, m), a * e_dd))
        if mu >= -j:
            up_contribs.append((BasisIndex(j, mu), a * e_ud))

    def build(contribs, template: StateVector) -> StateVector:
        buckets: dict = {}
        for key, amp in contribs:
            if not amp.is_zero:
                buckets.setdefault(key, []).append(amp)
        amps = {k: (v[0] if len(v) == 1 else log_complex_sum(v))
                for k, v in buckets.items()}
        amps = {k: v for k, v in amps.items() if not v.is_zero}
        return replace(template, amplitudes=amps)

    return SpinorState(build(up_contribs, s.up), build(down_contribs, s.down))


def apply_Z_matrix(s: SpinorState) -> SpinorState:
    """The polar-decomposed generator matrix e^{-K} V."""
    return apply_exp_minus_K(apply_V(s))


def apply_Z_from_matrix(which: str, phi: StateVector) -> StateVector:
    """Extract the component generator (1/2) Tr(sigma_i e^{-K} V) action.

    Feeding (phi, 0) and (0, phi) through the matrix route exposes the four
    operator-valued entries A, B, C, D of e^{-K} V; the Pauli traces then
    give Z1 = (B + C)/2, Z2 = i(B - C)/2, Z3 = (A - D)/2.
    """
    empty = replace(phi, amplitudes={})
    col_up = apply_Z_matrix(SpinorState(phi, empty))
    col_down = apply_Z_matrix(SpinorState(empty, phi))
    a, c = col_up.up, col_up.down
    b, d = col_down.up, col_down.down
    if which == "Z1":
        return state_scale(state_sum([b, c]), complex(0.5))
    if which == "Z2":
        return state_scale(state_sum([b, state_scale(c, -1 + 0j)]),
                           complex(0, 0.5))
    if which == "Z3":
        return state_scale(state_sum([a, state_scale(d, -1 + 0j)]),
                           complex(0.5))
    raise ValueError(f"unknown Z component {which!r}")


def spinor_inner(a: SpinorState, b: SpinorState) -> complex:
    terms = [inner_log(a.up, b.up), inner_log(a.down, b.down)]
    return log_complex_sum(terms).to_complex()


def spinor_sum(states: list[SpinorState]) -> SpinorState:
    return SpinorState(state_sum([s.up for s in states]),
                       state_sum([s.down for s in states]))


def spinor_scale(s: SpinorState, c: complex) -> SpinorState:
    return SpinorState(state_scale(s.up, c), state_scale(s.down, c))


def spinor_relative_residual(lhs: SpinorState, rhs: SpinorState,
                             *scales: SpinorState) -> float:
    """Norm of (lhs - rhs) over the largest participating spinor norm."""
    diff_up = state_sum([lhs.up, state_scale(rhs.up, -1 + 0j)])
    diff_down = state_sum([lhs.down, state_scale(rhs.down, -1 + 0j)])
    d = log_sum_exp([diff_up.log_norm_sq(), diff_down.log_norm_sq()])
    ref = max(x.log_norm_sq() for x in (lhs, rhs, *scales))
    if d == -math.inf:
        return 0.0
    if ref == -math.inf:
        return math.inf
    return math.exp(0.5 * (d - ref))
