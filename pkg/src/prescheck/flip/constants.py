"""Constant schedule for the flip-flat preservation argument."""

from __future__ import annotations

from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class ConstantSchedule:
    rho: int
    s: int
    gamma: int
    ell: int
    p: int
    q: int
    d: int
    n: int
    m: int
    r: int

    def to_json(self) -> dict:
        return asdict(self)

    def equations_hold(self) -> bool:
        return (
            self.q == self.gamma + 3 * self.rho + 3
            and self.d == 2 * (self.rho + 1) * (self.ell + 1) * self.s + 6 * self.rho + 2
            and self.n == (self.ell + 2) * self.s
            and self.m == max(self.n - 1, 0) * self.q + self.s + self.ell * self.s + 1
            and self.r == 4 * self.d * self.p + 2 * self.rho + 1
        )


def theorem_constants(rho: int, s: int, gamma: int, ell: int, p: int) -> ConstantSchedule:
    """Derive q, d, n, m, r. ``n - 1`` is truncated at zero (natural-number subtraction)."""
    for name, val in (("rho", rho), ("s", s), ("gamma", gamma), ("ell", ell), ("p", p)):
        if val < 0:
            raise ValueError(f"{name} must be non-negative")
    q = gamma + 3 * rho + 3
    d = 2 * (rho + 1) * (ell + 1) * s + 6 * rho + 2
    n = (ell + 2) * s
    m = max(n - 1, 0) * q + s + ell * s + 1
    r = 4 * d * p + 2 * rho + 1
    return ConstantSchedule(rho, s, gamma, ell, p, q, d, n, m, r)
