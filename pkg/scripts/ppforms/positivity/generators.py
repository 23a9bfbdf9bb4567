"""Trusted positive (2,2)-forms on C^4.

Two recipes, both exact and reproducible from ``(seed, index)``:

- ``decomposable``: ``sum_t c_t i γ_t∧γ̄_t ∧ i δ_t∧δ̄_t`` with 1-6 terms and
  positive rational weights ``c_t``
- ``alpha_basis``: the boundary family ``α_a`` with ``|a|^2 <= 4`` written in a
  random exact basis

The second recipe reaches forms that are positive but not strongly positive;
neither claims to cover the whole positive cone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from ..exterior import Form, decomposable_pp
from ..gallery import alpha_a
from ..ppmatrix import BasisChange, change_basis, from_omega6, to_exterior
from ..sampling import instance_rng, random_covector, random_exact_scalar, random_invertible
from ..scalars import exact

Recipe = Literal["decomposable", "alpha_basis"]
RECIPES: tuple[Recipe, ...] = ("decomposable", "alpha_basis")


@dataclass(frozen=True)
class TrustedPositive:
    """A generated positive form together with how to regenerate it."""

    form: Form
    recipe: Recipe
    seed: int
    index: int

    def to_json(self) -> dict[str, object]:
        return {"recipe": self.recipe, "seed": self.seed, "index": self.index}


def decomposable_sum(seed: int, index: int, max_terms: int = 6) -> Form:
    rng = instance_rng(seed, index)
    terms = int(rng.integers(1, max_terms + 1))
    total = Form.zero(4)
    for _ in range(terms):
        gammas = [random_covector(rng, 4, bound=2), random_covector(rng, 4, bound=2)]
        weight = Fraction(int(rng.integers(1, 5)), int(rng.integers(1, 4)))
        total = total + decomposable_pp(gammas).scale(exact(weight))
    return total


def alpha_in_random_basis(seed: int, index: int) -> Form:
    """``α_a`` with ``|a| <= 2`` rewritten through a random exact basis change."""
    rng = instance_rng(seed, index)
    while True:
        a = random_exact_scalar(rng, bound=2)
        if a.abs2() <= 4:
            break
    M = BasisChange(random_invertible(rng, 4))
    return to_exterior(change_basis(from_omega6(alpha_a(a)), M))


def trusted_positive(seed: int, index: int, recipe: Recipe | None = None) -> TrustedPositive:
    """Instance ``index`` of the trusted-positive stream; recipes alternate by default."""
    chosen: Recipe = recipe or RECIPES[index % len(RECIPES)]
    if chosen == "decomposable":
        form = decomposable_sum(seed, index)
    else:
        form = alpha_in_random_basis(seed, index)
    return TrustedPositive(form, chosen, seed, index)
