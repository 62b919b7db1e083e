"""Exact rational scalar type and small combinatorial helpers.

All symbolic modules use the scalar alias ``Q``. gmpy2's ``mpq`` is used
when available (it is much faster for the exact Gram-Schmidt work);
``fractions.Fraction`` is the drop-in fallback.
"""

import math

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Q

QZERO = Q(0)
QONE = Q(1)


def qstr(q):
    """Canonical string form of a rational: '3', '-1/2', ..."""
    return str(q)


def qparse(s):
    if "/" in s:
        num, den = s.split("/")
        return Q(int(num), int(den))
    return Q(int(s))


def binomial(n, k):
    return math.comb(n, k)


def factorial(n):
    return math.factorial(n)


def double_factorial_odd(m):
    """(2m)! / (4^m m!) as an exact rational; equals (2m-1)!!/2^m."""
    return Q(math.factorial(2 * m), 4**m * math.factorial(m))
