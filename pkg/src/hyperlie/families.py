"""Indexed polynomial families with a three-term recursion and a radical ledger."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .exact_algebra import LaurentPoly, ParamFrac

RADICALS = ("mu", "nu", "rho")


@dataclass(frozen=True)
class Scaling:
    """published member = stored entry * const * mu^mu * nu^nu * rho^rho."""

    const: Fraction = Fraction(1)
    mu: int = 0
    nu: int = 0
    rho: int = 0

    def as_dict(self) -> dict:
        return {"mu": self.mu, "nu": self.nu, "rho": self.rho}

    def value(self, mu, nu, rho):
        return self.const * Fraction(mu) ** self.mu * Fraction(nu) ** self.nu * Fraction(rho) ** self.rho


@dataclass
class PolynomialFamily:
    """entries[n] with x_{n+1} = A(n) x_n + B(n) x_{n-1} for the stored range.

    ``recurrence(n)`` returns (A, B); ``scaling(n)`` returns the ledger entry
    relating the stored radical-free entry to the intended family member.
    """

    name: str
    entries: dict = field(default_factory=dict)
    recurrence: Callable | None = None
    scaling: Callable[[int], Scaling] = lambda n: Scaling()
    description: str = ""

    def __getitem__(self, n: int):
        return self.entries[n]

    def __len__(self):
        return len(self.entries)

    def indices(self) -> list[int]:
        return sorted(self.entries)

    def recursion_residuals(self) -> dict[int, object]:
        """x_{n+1} - A x_n - B x_{n-1} at every n with all three entries present."""
        out = {}
        if self.recurrence is None:
            return out
        for n in self.indices():
            if n - 1 in self.entries and n + 1 in self.entries:
                a, b = self.recurrence(n)
                out[n] = self.entries[n + 1] - a * self.entries[n] - b * self.entries[n - 1]
        return out

    def recursion_holds(self) -> bool:
        return all(_is_zero(v) for v in self.recursion_residuals().values())

    def specialize(self, mapping: dict) -> PolynomialFamily:
        return PolynomialFamily(
            self.name,
            {n: e.subs(mapping) for n, e in self.entries.items()},
            None,
            self.scaling,
            self.description,
        )

    def dump(self, beta: str = "symbolic") -> list[dict]:
        return [
            {
                "family": self.name,
                "beta": beta,
                "n": n,
                "scaled": str(self.entries[n]),
                "ledger": self.scaling(n).as_dict(),
                "const": str(self.scaling(n).const),
            }
            for n in self.indices()
        ]


def _is_zero(v) -> bool:
    if isinstance(v, (LaurentPoly, ParamFrac)):
        return v.is_zero()
    return v == 0


__all__ = ["PolynomialFamily", "Scaling", "RADICALS"]
