"""Special functions feeding the coherent-state amplitudes.

Everything returns LogComplex (or a plain log for log_factorial) so callers
can keep composing without ever leaving the log domain.
"""

from __future__ import annotations

import math

from .logdomain import LogComplex, ONE, log_complex_sum

__all__ = [
    "log_factorial",
    "hyp2f1_terminating",
    "gegenbauer",
    "gegenbauer_column",
]


def log_factorial(n: int) -> float:
    """ln(n!) via lgamma."""
    if n < 0:
        raise ValueError(f"factorial of negative integer {n}")
    return math.lgamma(n + 1)


def hyp2f1_terminating(n: int, b: float, c: float, z: complex) -> LogComplex:
    """2F1(-n, b, c; z) as the exact finite sum of n + 1 terms.

    The first parameter -n makes the series terminate.  Terms are built by
    the ratio recurrence and accumulated with log_complex_sum, so mixed-sign
    parameters and complex z are handled uniformly.

    Raises ValueError when c is a nonpositive integer hit by the Pochhammer
    denominator before the series terminates (c = 0, -1, ..., -(n-1)).
    """
    if n < 0:
        raise ValueError(f"series order must be nonnegative, got {n}")
    if c <= 0 and c == int(c) and -int(c) < n:
        raise ValueError(f"c={c} makes 2F1(-{n}, {b}, {c}; z) undefined")
    terms = [ONE]
    term = ONE
    zl = LogComplex.from_complex(z)
    for s in range(n):
        ratio = (-n + s) * (b + s) / ((c + s) * (s + 1))
        term = term * LogComplex.from_real(ratio) * zl
        terms.append(term)
    return log_complex_sum(terms)


def gegenbauer(n: int, alpha: float, x: complex) -> LogComplex:
    """Gegenbauer polynomial C_n^alpha(x) for complex x.

    Computed by the ascending three-term recurrence
        n C_n = 2x(n + alpha - 1) C_{n-1} - (n + 2 alpha - 2) C_{n-2}
    with every value carried as LogComplex, so arguments with |x| far beyond
    the overflow threshold of plain doubles are fine.  Ascending recursion is
    benign here because the dominant solution grows monotonically.
    """
    return gegenbauer_column(n, alpha, x)[n]


def gegenbauer_column(n_max: int, alpha: float, x: complex) -> list[LogComplex]:
    """All of C_0^alpha(x) .. C_{n_max}^alpha(x) in one recurrence sweep."""
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if n_max < 0:
        raise ValueError(f"degree must be nonnegative, got {n_max}")
    xl = LogComplex.from_complex(x)
    col = [ONE]
    if n_max >= 1:
        col.append(LogComplex.from_real(2.0 * alpha) * xl)
    for n in range(2, n_max + 1):
        t1 = LogComplex.from_real(2.0 * (n + alpha - 1) / n) * xl * col[n - 1]
        t2 = LogComplex.from_real(-(n + 2.0 * alpha - 2.0) / n) * col[n - 2]
        col.append(log_complex_sum([t1, t2]))
    return col
