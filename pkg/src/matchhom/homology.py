"""Homology of free and presented chain complexes over the integers.

Finitely generated abelian groups are reported as a free rank plus the
list of invariant factors (each >= 2, each dividing the next).  Integral
homology of a free complex comes from the invariant factors of the two
adjacent boundary matrices; mod-p Betti numbers come from ranks over the
p-element field and never touch big integers.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from matchhom.chains import Chain, FreeChainComplex, boundary_chain
from matchhom.snf import (
    DEFAULT_CAPS,
    ResourceCaps,
    SparseIntMatrix,
    cokernel_torsion_basis,
    invariant_factors,
    rank_mod_p,
    reduce_against_image,
)

# Large prime used for the cheap modular rank prediction that cross-checks
# every exact elimination; torsion divisible by it never occurs here.
_CHECK_PRIME = 2_147_483_647


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group in invariant-factor form.

    >>> str(AbelianGroup(2, (3, 3)))
    'Z^2 + (Z/3)^2'
    >>> AbelianGroup.from_factors((1, 1, 2, 6), free_rank=0).invariant_factors
    (2, 6)
    """

    free_rank: int
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        for d in self.invariant_factors:
            if d < 2:
                raise ValueError("invariant factors must be >= 2")
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")

    @classmethod
    def from_factors(cls, factors: Iterable[int], free_rank: int) -> "AbelianGroup":
        return cls(free_rank, tuple(d for d in factors if d > 1))

    @classmethod
    def from_elementary_divisors(
        cls, divisors: Iterable[int], free_rank: int
    ) -> "AbelianGroup":
        """Recombine prime powers into the invariant-factor chain."""
        by_prime: dict[int, list[int]] = {}
        for q in divisors:
            for p, e in _factorize(q).items():
                by_prime.setdefault(p, []).append(p**e)
        for v in by_prime.values():
            v.sort(reverse=True)
        width = max((len(v) for v in by_prime.values()), default=0)
        factors = []
        for i in range(width):
            f = 1
            for p, v in by_prime.items():
                if i < len(v):
                    f *= v[i]
            factors.append(f)
        return cls(free_rank, tuple(sorted(factors)))

    def elementary_divisors(self) -> tuple[int, ...]:
        out: list[int] = []
        for d in self.invariant_factors:
            for p, e in _factorize(d).items():
                out.append(p**e)
        return tuple(sorted(out))

    def direct_sum(self, other: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup.from_elementary_divisors(
            self.elementary_divisors() + other.elementary_divisors(),
            self.free_rank + other.free_rank,
        )

    def torsion_part(self) -> "AbelianGroup":
        return AbelianGroup(0, self.invariant_factors)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def torsion_factor_count(self, p: int) -> int:
        """Number of invariant factors divisible by p."""
        return sum(1 for d in self.invariant_factors if d % p == 0)

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        groups: dict[int, int] = {}
        for d in self.invariant_factors:
            groups[d] = groups.get(d, 0) + 1
        for d in sorted(groups):
            k = groups[d]
            parts.append(f"Z/{d}" if k == 1 else f"(Z/{d})^{k}")
        return " + ".join(parts) if parts else "0"


TRIVIAL_GROUP = AbelianGroup(0, ())


@dataclass
class HomologySummary:
    """Per-degree homology of one complex, with provenance."""

    complex_id: str
    coefficients: str  # "Z" or "F_p"
    groups: dict[int, AbelianGroup]
    elapsed_seconds: float = 0.0
    mod_p_dimensions: dict[int, int] | None = None

    def group(self, d: int) -> AbelianGroup:
        return self.groups.get(d, TRIVIAL_GROUP)

    def degrees(self) -> list[int]:
        return sorted(self.groups)

    def nonzero_degrees(self) -> list[int]:
        return [d for d in self.degrees() if not self.groups[d].is_trivial()]

    def to_dict(self, include_elapsed: bool = False) -> dict:
        out = {
            "complex": self.complex_id,
            "coefficients": self.coefficients,
            "groups": [
                {
                    "degree": d,
                    "free_rank": g.free_rank,
                    "invariant_factors": list(g.invariant_factors),
                }
                for d, g in sorted(self.groups.items())
            ],
        }
        if self.mod_p_dimensions is not None:
            out["dimensions"] = [
                {"degree": d, "dimension": v}
                for d, v in sorted(self.mod_p_dimensions.items())
            ]
        if include_elapsed:
            out["elapsed_seconds"] = self.elapsed_seconds
        return out


def homology_from_boundaries(
    ranks: Sequence[int],
    boundaries: Sequence[SparseIntMatrix],
    first_degree: int,
    caps: ResourceCaps = DEFAULT_CAPS,
    cross_check: bool = True,
) -> dict[int, AbelianGroup]:
    """Homology of a free complex given by consecutive boundary matrices.

    ``ranks[i]`` is the rank of the chain group in degree first_degree+i;
    ``boundaries[i]`` maps degree first_degree+i+1 into degree
    first_degree+i (so there is one fewer matrix than chain groups; the
    boundary out of the lowest degree and into the highest are zero).
    """
    assert len(boundaries) == len(ranks) - 1 or (not ranks and not boundaries)
    factor_lists: list[tuple[int, ...]] = []
    for m in boundaries:
        factors = invariant_factors(m, caps)
        if cross_check:
            predicted = rank_mod_p(m, _CHECK_PRIME, caps)
            assert predicted == len(factors) or any(
                d % _CHECK_PRIME == 0 for d in factors
            ), "modular rank prediction disagrees with exact elimination"
        factor_lists.append(factors)
    out: dict[int, AbelianGroup] = {}
    for i, n in enumerate(ranks):
        rank_out = len(factor_lists[i - 1]) if i > 0 else 0
        rank_in = len(factor_lists[i]) if i < len(boundaries) else 0
        free = n - rank_out - rank_in
        torsion = factor_lists[i] if i < len(boundaries) else ()
        out[first_degree + i] = AbelianGroup.from_factors(torsion, free)
    return out


def homology_free(
    fcc: FreeChainComplex,
    caps: ResourceCaps = DEFAULT_CAPS,
    cross_check: bool = True,
) -> HomologySummary:
    """Reduced integral homology in all degrees from -1 to the top."""
    start = time.monotonic()
    top = fcc.top_dimension()
    ranks = [fcc.rank(d) for d in range(-1, top + 1)]
    boundaries = [fcc.boundary_matrix(d) for d in range(0, top + 1)]
    groups = homology_from_boundaries(ranks, boundaries, -1, caps, cross_check)
    return HomologySummary(
        str(fcc.spec), "Z", groups, elapsed_seconds=time.monotonic() - start
    )


def betti_mod_p(
    fcc: FreeChainComplex, p: int, caps: ResourceCaps = DEFAULT_CAPS
) -> HomologySummary:
    """Dimensions of reduced homology with coefficients in the p-element
    field, from ranks over that field."""
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    start = time.monotonic()
    top = fcc.top_dimension()
    rank_p: dict[int, int] = {}
    for d in range(0, top + 1):
        rank_p[d] = rank_mod_p(fcc.boundary_matrix(d), p, caps)
    dims: dict[int, int] = {}
    for d in range(-1, top + 1):
        dims[d] = fcc.rank(d) - rank_p.get(d, 0) - rank_p.get(d + 1, 0)
    groups = {d: AbelianGroup(v) for d, v in dims.items()}
    return HomologySummary(
        str(fcc.spec),
        f"F_{p}",
        groups,
        elapsed_seconds=time.monotonic() - start,
        mod_p_dimensions=dims,
    )


def universal_coefficients_ok(
    integral: HomologySummary, mod_p: HomologySummary, p: int
) -> bool:
    """dim_p H_d = free rank + #p-torsion factors in degrees d and d-1."""
    degrees = set(integral.groups) | set(mod_p.groups)
    for d in degrees:
        g = integral.group(d)
        expected = (
            g.free_rank
            + g.torsion_factor_count(p)
            + integral.group(d - 1).torsion_factor_count(p)
        )
        if mod_p.group(d).free_rank != expected:
            return False
    return True


def class_order(
    z: Chain,
    fcc: FreeChainComplex,
    d: int | None = None,
    caps: ResourceCaps = DEFAULT_CAPS,
) -> int | None:
    """Order of the homology class of the cycle z; None means infinite.

    The order is the least k >= 1 with k*z in the integer column span of
    the next boundary matrix, read off from the carried Smith reduction.
    """
    if d is None:
        d = z.degree
    if d != z.degree:
        raise ValueError("degree mismatch")
    if not fcc.is_cycle(z):
        raise ValueError("class_order requires a cycle")
    vec = fcc.chain_vector(z)
    red = reduce_against_image(fcc.boundary_matrix(d + 1), [vec], caps)
    return red.order_in_cokernel(0)


def extract_torsion_generators(
    fcc: FreeChainComplex, d: int, caps: ResourceCaps = DEFAULT_CAPS
) -> list[tuple[Chain, int]]:
    """Cycles whose classes generate the torsion subgroup in degree d,
    paired with their exact orders (the invariant factors > 1)."""
    out = []
    for vec, order in cokernel_torsion_basis(fcc.boundary_matrix(d + 1), caps):
        chain = fcc.vector_chain(d, vec)
        assert fcc.is_cycle(chain), "torsion generator is not a cycle"
        out.append((chain, order))
    return out


def euler_characteristic_ok(fcc: FreeChainComplex, summary: HomologySummary) -> bool:
    """Reduced Euler characteristic from face counts equals the
    alternating sum of homology free ranks."""
    top = fcc.top_dimension()
    chi_faces = sum((-1) ** d * fcc.rank(d) for d in range(-1, top + 1))
    chi_hom = sum((-1) ** d * g.free_rank for d, g in summary.groups.items())
    return chi_faces == chi_hom
