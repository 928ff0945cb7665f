"""Bundles: complete sets of 2^n + 1 mutually nonintersecting curves.

The nonzero points of the curves in a bundle partition the 2^{2n} - 1
nonzero phase-space points, so each bundle labels a maximal collection of
d + 1 mutually unbiased bases.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import EmptyResult, InputError, NotCommutative
from .curves import (
    ParametricCurve,
    PointSet,
    all_nonintersecting,
    assert_admissible,
    commutativity_symmetric,
    curve_from_phi,
    enumerate_curves,
    nonintersecting,
    point_set,
)
from .field import GF2n


@dataclass(frozen=True)
class Bundle:
    """2^n + 1 pairwise nonintersecting admissible curves, sorted canonically."""

    curves: tuple[PointSet, ...]

    def __len__(self) -> int:
        return len(self.curves)


def make_bundle(F: GF2n, curves: Iterable[PointSet]) -> Bundle:
    """Validate and canonically order a complete bundle."""
    cs = sorted({assert_admissible(F, c) for c in curves}, key=sorted)
    if len(cs) != F.order + 1:
        raise InputError(f"a bundle needs {F.order + 1} distinct curves, got {len(cs)}")
    if not all_nonintersecting(cs):
        raise InputError("bundle curves intersect away from the origin")
    covered = sum(len(c) - 1 for c in cs)
    if covered != F.order * F.order - 1:  # pragma: no cover - implied by the above
        raise InputError("bundle does not partition the nonzero phase-space points")
    return Bundle(tuple(cs))


def vertical_ray(F: GF2n) -> PointSet:
    return frozenset((0, b) for b in F.elements())


def horizontal_ray(F: GF2n) -> PointSet:
    return frozenset((a, 0) for a in F.elements())


def build_regular_bundle(F: GF2n, tail: Sequence[int] = (),
                         orientation: str = "alpha_form") -> Bundle:
    """Sweep the linear coefficient over the field above a fixed tail.

    The 2^n curves beta = phi_0 alpha + sum_{m>=1} tail[m-1] alpha^(2^m)
    are pairwise nonintersecting; the complementary ray (alpha = 0, or
    beta = 0 for the mirrored orientation) completes the bundle.  An empty
    tail gives the ray bundle.
    """
    tail = list(tail) if tail else [0] * (F.n - 1)
    if len(tail) != F.n - 1:
        raise InputError(f"tail needs {F.n - 1} coefficients, got {len(tail)}")
    if not commutativity_symmetric(F, [0] + tail):
        raise NotCommutative(f"tail {tuple(tail)} violates the symmetry constraint")
    if orientation not in ("alpha_form", "beta_form"):
        raise InputError(f"unknown orientation {orientation!r}")
    curves = []
    for phi0 in F.elements():
        pts = point_set(F, curve_from_phi(F, [phi0] + tail))
        if orientation == "beta_form":
            pts = frozenset((b, a) for a, b in pts)
        curves.append(pts)
    curves.append(vertical_ray(F) if orientation == "alpha_form" else horizontal_ray(F))
    return make_bundle(F, curves)


def ray_bundle(F: GF2n) -> Bundle:
    """The 2^n + 1 rays beta = lambda alpha plus alpha = 0."""
    return build_regular_bundle(F)


def closure_bundle(F: GF2n, seeds: Sequence[Sequence[int]]) -> Bundle:
    """Close three explicit regular curves under coefficientwise addition.

    Given n three coefficient tuples phi (full length n, symmetric), the
    pairwise and triple sums give four further curves; the rays beta = 0
    and alpha = 0 complete the bundle.  The seeds must already be pairwise
    nonintersecting for the result to validate.
    """
    if len(seeds) != 3:
        raise InputError(f"closure needs exactly 3 seed coefficient tuples, got {len(seeds)}")
    phis = {tuple(s) for s in seeds}
    for a, b in itertools.combinations(sorted(phis), 2):
        phis = phis | {tuple(x ^ y for x, y in zip(a, b))}
    phis.add(tuple(x ^ y ^ z for x, y, z in zip(*sorted(seeds))))
    phis.add((0,) * F.n)  # the ray beta = 0
    curves = [point_set(F, curve_from_phi(F, list(p))) for p in sorted(phis)]
    curves.append(vertical_ray(F))
    return make_bundle(F, curves)


def search_bundles(F: GF2n, seed_curves: Optional[Sequence[PointSet]] = None,
                   limit: int = 1) -> list[Bundle]:
    """Backtracking completion of seeds to full bundles over the curve atlas.

    Curves are tried in a fixed lexicographic order, so the output is
    deterministic.  Raises EmptyResult when no completion exists.
    """
    if limit < 1:
        raise InputError("limit must be positive")
    atlas = enumerate_curves(F)
    seeds = [assert_admissible(F, c) for c in (seed_curves or [])]
    if not all_nonintersecting(seeds):
        raise InputError("seed curves intersect away from the origin")
    need = F.order + 1
    found: list[Bundle] = []

    def extend(chosen: list[PointSet], start: int) -> bool:
        if len(chosen) == need:
            found.append(make_bundle(F, chosen))
            return len(found) >= limit
        for i in range(start, len(atlas)):
            cand = atlas[i]
            if all(nonintersecting(cand, c) for c in chosen):
                if extend(chosen + [cand], i + 1):
                    return True
        return False

    extend(seeds, 0)
    if not found:
        raise EmptyResult("no bundle completes the given seeds")
    return found


def orphan_curves(F: GF2n, bundles: Sequence[Bundle]) -> list[PointSet]:
    """Curves of the atlas not covered by any of the given bundles."""
    covered = {c for b in bundles for c in b.curves}
    return [c for c in enumerate_curves(F) if c not in covered]
