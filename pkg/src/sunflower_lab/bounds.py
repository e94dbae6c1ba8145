"""Exact calculators for the closed-form sunflower bounds, and comparison tables.

Everything is integer/rational arithmetic; the only decimal output is the
rendering of the growth constant 3/2^(2/3), done with integer cube roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class BoundReport:
    """One computed bound with its parameters and rounding notes."""

    name: str
    parameters: dict
    value: object
    notes: tuple = ()


def _floor_note(n):
    return () if n % 3 == 0 else (f"n/3 rounded down to {n // 3} inside the binomial",)


def erdos_rado_bound(k, t):
    """k!(t-1)^k (1 - sum_{s=1}^{k-1} s/((s+1)!(t-1)^s)), exact."""
    if k < 1 or t < 2:
        raise ValueError("need k >= 1 and t >= 2")
    s_sum = sum(
        Fraction(s, math.factorial(s + 1) * (t - 1) ** s) for s in range(1, k)
    )
    return math.factorial(k) * (t - 1) ** k * (1 - s_sum)


def naslund_sawin_bound(n, ceil_sum=False):
    """3n * sum_{i=0}^{n/3} C(n,i); the sum limit defaults to floor(n/3)."""
    if n < 1:
        raise ValueError("need n >= 1")
    limit = -(-n // 3) if ceil_sum else n // 3
    return 3 * n * sum(math.comb(n, i) for i in range(limit + 1))


def main_bound(n):
    """3 * C(n, floor(n/3))."""
    if n < 1:
        raise ValueError("need n >= 1")
    return 3 * math.comb(n, n // 3)


def stratified_bound(n):
    """3*ceil(n/3)*C(n, floor(n/3)) + 2*sum_{i=0}^{ceil(n/3)} C(n,i)."""
    if n < 1:
        raise ValueError("need n >= 1")
    ceil_third = -(-n // 3)
    return 3 * ceil_third * math.comb(n, n // 3) + 2 * sum(
        math.comb(n, i) for i in range(ceil_third + 1)
    )


def conditional_bound(k, c):
    """3 * C(Ck, floor(Ck/3)) for the conjecture-conditional regime."""
    m = c * k
    if m < 1:
        raise ValueError("need C*k >= 1")
    return 3 * math.comb(m, m // 3)


def erdos_rado_report(k, t):
    v = erdos_rado_bound(k, t)
    notes = (f"exact value {v}; integer threshold {math.ceil(v)}",)
    return BoundReport("erdos_rado", {"k": k, "t": t}, v, notes)


def naslund_sawin_report(n):
    notes = () if n % 3 == 0 else (f"sum limit n/3 rounded down to {n // 3}",)
    return BoundReport("naslund_sawin", {"n": n}, naslund_sawin_bound(n), notes)


def main_bound_report(n):
    return BoundReport("main", {"n": n}, main_bound(n), _floor_note(n))


def stratified_report(n):
    return BoundReport("stratified", {"n": n}, stratified_bound(n), _floor_note(n))


def conditional_report(k, c):
    return BoundReport("conditional", {"k": k, "C": c}, conditional_bound(k, c), _floor_note(c * k))


# ---------------------------------------------------------------------------
# the growth constant 3 / 2^(2/3)


def _icbrt(x):
    """Integer cube root: the largest r with r^3 <= x."""
    if x < 0:
        raise ValueError("negative argument")
    if x == 0:
        return 0
    r = 1 << ((x.bit_length() + 2) // 3 + 1)
    while True:
        nr = (2 * r + x // (r * r)) // 3
        if nr >= r:
            break
        r = nr
    while r * r * r > x:
        r -= 1
    while (r + 1) ** 3 <= x:
        r += 1
    return r


@dataclass(frozen=True)
class GrowthConstant:
    """The symbolic value coeff * base^(-exp_num/exp_den)."""

    coeff: int = 3
    base: int = 2
    exp_num: int = 2
    exp_den: int = 3

    def cubed(self):
        """Exact cube: (3/2^(2/3))^3 = 27/4."""
        assert self.exp_den == 3
        return Fraction(self.coeff**3, self.base**self.exp_num)

    def decimal(self, digits=5):
        """Decimal rendering rounded half-up, via exact integer cube roots."""
        if digits < 0:
            raise ValueError("digits must be >= 0")
        guard = digits + 10
        # 3/2^(2/3) = 3*2^(1/3)/2; c approximates 2^(1/3)*10^guard from below
        c = _icbrt(2 * 10 ** (3 * guard))
        scaled = (3 * c * 10**digits * 2 + 2 * 10**guard) // (4 * 10**guard)
        if digits == 0:
            return str(scaled)
        return f"{scaled // 10**digits}.{scaled % 10**digits:0{digits}d}"

    def __str__(self):
        return f"{self.coeff}/{self.base}^({self.exp_num}/{self.exp_den})"


def beta3_constant():
    """The published upper bound for the growth constant of 3-petal-free families."""
    return GrowthConstant()


# ---------------------------------------------------------------------------
# comparison tables


@dataclass(frozen=True)
class TableRow:
    n: int
    naslund_sawin: int
    main: int
    stratified: int
    pow2: int
    main_over_ns: Fraction
    stratified_over_pow2: Fraction
    notes: tuple = field(default=())


def bounds_table(n_range):
    """One row per n: the three bounds, 2^n, and exact ratio columns."""
    rows = []
    for n in n_range:
        ns = naslund_sawin_bound(n)
        mb = main_bound(n)
        sb = stratified_bound(n)
        rows.append(
            TableRow(
                n=n,
                naslund_sawin=ns,
                main=mb,
                stratified=sb,
                pow2=2**n,
                main_over_ns=Fraction(mb, ns),
                stratified_over_pow2=Fraction(sb, 2**n),
                notes=_floor_note(n),
            )
        )
    return rows


def _ratio_str(q, places=4):
    scaled = (q.numerator * 10**places + q.denominator // 2) // q.denominator
    return f"{scaled // 10**places}.{scaled % 10**places:0{places}d}"


def format_table(rows, csv=False):
    header = ["n", "naslund_sawin", "main", "stratified", "pow2", "main/ns", "strat/2^n"]
    body = [
        [
            str(r.n),
            str(r.naslund_sawin),
            str(r.main),
            str(r.stratified),
            str(r.pow2),
            _ratio_str(r.main_over_ns),
            _ratio_str(r.stratified_over_pow2),
        ]
        for r in rows
    ]
    if csv:
        return "\n".join(",".join(row) for row in [header] + body) + "\n"
    widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
    lines = ["  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in [header] + body]
    return "\n".join(lines) + "\n"
