"""Coincidence site lattices, index diagrams, and colour coincidences.

Everything here reduces to exact lattice algebra.  For an invertible
rational map A with |det A| = 1 and a lattice L, the coincidence site
lattice is L meet A(L); its index in L is the coincidence index.  For a
colouring of a parent lattice by the cosets of a sublattice, `analyze`
assembles the full diagram of intermediate lattices between the
sublattice, its image, the parent CSL, and the sublattice CSL, and
decides colour coincidence through a single lattice equality: A is a
colour coincidence exactly when it maps sub meet csl(A^-1) onto
sub meet csl(A), i.e. when the zero colour is fixed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, isqrt
from typing import Callable, Optional, Sequence

from cslcolour.errors import (
    DimensionMismatch,
    InternalInvariantViolation,
    NotCoincidence,
    NotColourCoincidence,
)
from cslcolour.lattice import (
    Colouring,
    Lattice,
    _hermite,
    _relative_basis,
    _residue,
    colour_of,
    coset_meets_lattice,
    index,
    intersect,
    transform,
)
from cslcolour.ratmat import (
    RatMatrix,
    clear_denominators,
    det_rat,
    identity,
    mat_mul,
    rat_inverse,
    rat_matrix,
    snf,
    transpose,
    vec_mat,
)


@dataclass(frozen=True)
class CommensurableMap:
    """Invertible rational map acting on row vectors as v -> v . A^T.

    Carries its exact inverse and determinant.  Build through
    :func:`commensurable_map`, which validates invertibility.
    """

    matrix: RatMatrix
    inverse: RatMatrix
    det: Fraction

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @property
    def inverse_map(self) -> "CommensurableMap":
        return CommensurableMap(
            matrix=self.inverse, inverse=self.matrix, det=1 / self.det
        )

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        vec = tuple(Fraction(x) for x in v)
        if len(vec) != self.dim:
            raise DimensionMismatch("point dimension differs from map")
        return vec_mat(vec, transpose(self.matrix))

    def is_orthogonal(self) -> bool:
        """A^T . A = identity; meaningful for the standard embedding only."""
        return mat_mul(transpose(self.matrix), self.matrix) == rat_matrix(
            identity(self.dim)
        )


def commensurable_map(rows: Sequence[Sequence]) -> CommensurableMap:
    """Validate and wrap a square invertible rational matrix."""
    m = rat_matrix(rows)
    det = det_rat(m)
    inv = rat_inverse(m)
    return CommensurableMap(matrix=m, inverse=inv, det=det)


def is_coincidence(lat: Lattice, amap: CommensurableMap) -> bool:
    """True iff the map intersects `lat` with finite index both ways.

    For rational maps that is exactly |det| = 1: the intersection is
    then full rank and has equal index in the lattice and its image.
    """
    if amap.dim != lat.dim:
        raise DimensionMismatch("map and lattice dimensions differ")
    return abs(amap.det) == 1


def csl(lat: Lattice, amap: CommensurableMap) -> Lattice:
    """The coincidence site lattice: `lat` meet A(`lat`)."""
    if not is_coincidence(lat, amap):
        raise NotCoincidence(f"|det| = {abs(amap.det)} != 1")
    return intersect(lat, transform(lat, amap.matrix))


def sigma(lat: Lattice, amap: CommensurableMap) -> int:
    """Coincidence index [lat : csl]; cross-checked against the image side."""
    inter = csl(lat, amap)
    from_lat = index(lat, inter)
    from_image = index(transform(lat, amap.matrix), inter)
    if from_lat != from_image:
        raise InternalInvariantViolation(
            f"two-sided index mismatch: {from_lat} vs {from_image}"
        )
    return from_lat


@dataclass(frozen=True)
class ColouringAnalysis:
    """Complete index diagram of one colouring under one map.

    m is the number of colours; sigma1/sigma2 the coincidence indices
    of parent and sublattice; s, t, u, v the four intermediate indices
    (s and t count the colours present in the colourings of csl1_inv
    and csl1); set_I/set_J list those colours; the permutation is
    present exactly for colour coincidences.
    """

    m: int
    sigma1: int
    sigma2: int
    s: int
    t: int
    u: int
    v: int
    csl1: Lattice
    csl1_inv: Lattice
    csl2: Lattice
    colour_coincidence: bool
    permutation: Optional[tuple[tuple[int, int], ...]]
    set_I: tuple[int, ...]
    set_J: tuple[int, ...]


def _check_analysis(a: ColouringAnalysis) -> None:
    """Every structural identity the diagram must satisfy; failures are bugs."""
    checks = [
        (a.sigma2 * a.m == a.t * a.u * a.sigma1, "index formula (t.u form)"),
        (a.sigma2 * a.m == a.s * a.v * a.sigma1, "index formula (s.v form)"),
        (a.m % a.s == 0, "s divides m"),
        (a.m % a.t == 0, "t divides m"),
        (a.s % a.u == 0, "u divides s"),
        (a.t % a.v == 0, "v divides t"),
        (a.t * a.u == a.s * a.v, "t.u = s.v"),
        (len(a.set_I) == a.s, "|I| = s"),
        (len(a.set_J) == a.t, "|J| = t"),
        ((a.s == a.t) == (a.u == a.v), "s = t iff u = v"),
        ((a.m * a.sigma2) % a.sigma1 == 0, "sigma1 divides m.sigma2"),
        ((a.m * a.sigma1) % a.sigma2 == 0, "sigma2 divides m.sigma1"),
        (a.set_I[0] == 0 and a.set_J[0] == 0, "colour 0 appears on both sides"),
        (
            (a.permutation is not None) == a.colour_coincidence,
            "permutation present iff colour coincidence",
        ),
    ]
    if a.colour_coincidence:
        checks.append((a.sigma1 % a.sigma2 == 0, "sigma2 divides sigma1"))
    if a.s == a.t == a.m:
        checks.append(
            (
                a.colour_coincidence == (a.sigma1 == a.sigma2),
                "full-colour case: coincidence iff equal indices",
            )
        )
    if a.permutation is not None:
        sources = tuple(i for i, _ in a.permutation)
        images = tuple(j for _, j in a.permutation)
        checks += [
            (sources == a.set_I, "permutation domain is I"),
            (sorted(images) == list(a.set_J), "permutation image is J"),
            (dict(a.permutation).get(0) == 0, "permutation fixes colour 0"),
        ]
    for ok, label in checks:
        if not ok:
            raise InternalInvariantViolation(f"analysis invariant failed: {label}")


def _colours_meeting(colouring: Colouring, lat: Lattice) -> tuple[int, ...]:
    """Colours whose cosets intersect `lat`, in rep order."""
    out = []
    for i, rep in enumerate(colouring.reps):
        if coset_meets_lattice(rep, colouring.sub, lat) is not None:
            out.append(i)
    return tuple(out)


def is_colour_coincidence(colouring: Colouring, amap: CommensurableMap) -> bool:
    """Decide colour coincidence by the zero-colour-fixing criterion.

    The map is a colour coincidence exactly when it carries
    sub meet csl(parent, A^-1) onto sub meet csl(parent, A); that single
    lattice equality is equivalent to the partition-bijection
    definition, and the window census cross-checks the equivalence.
    """
    fwd = csl(colouring.parent, amap)
    inv = csl(colouring.parent, amap.inverse_map)
    lhs = transform(intersect(colouring.sub, inv), amap.matrix)
    rhs = intersect(colouring.sub, fwd)
    return lhs == rhs


def colour_permutation(
    colouring: Colouring, amap: CommensurableMap
) -> tuple[tuple[int, int], ...]:
    """The colour bijection induced by a colour coincidence.

    For each colour i present in csl1_inv, a witness point of the coset
    inside csl1_inv is mapped and its image classified.  Two distinct
    witnesses are used per colour and must classify identically; the
    pair list must be a bijection onto the colours of csl1 fixing 0.
    """
    if not is_colour_coincidence(colouring, amap):
        raise NotColourCoincidence("map does not fix the zero colour")
    inv = csl(colouring.parent, amap.inverse_map)
    fwd = csl(colouring.parent, amap)
    meet = intersect(colouring.sub, inv)
    offset = meet.basis[0]
    pairs = []
    for i, rep in enumerate(colouring.reps):
        witness = coset_meets_lattice(rep, colouring.sub, inv)
        if witness is None:
            continue
        second = tuple(x + y for x, y in zip(witness, offset))
        j1 = colour_of(colouring, amap.apply(witness))
        j2 = colour_of(colouring, amap.apply(second))
        if j1 != j2:
            raise InternalInvariantViolation(
                f"image colour depends on the witness for colour {i}"
            )
        pairs.append((i, j1))
    images = [j for _, j in pairs]
    expected_images = _colours_meeting(colouring, fwd)
    if sorted(images) != list(expected_images):
        raise InternalInvariantViolation("permutation image is not the J colour set")
    if pairs[0] != (0, 0):
        raise InternalInvariantViolation("permutation does not fix colour 0")
    return tuple(pairs)


def analyze(colouring: Colouring, amap: CommensurableMap) -> ColouringAnalysis:
    """Compute the complete index diagram for one colouring and one map.

    All reported numbers come from pure lattice algebra; every identity
    that must relate them is verified before returning.
    """
    parent = colouring.parent
    sub = colouring.sub
    if not is_coincidence(parent, amap):
        raise NotCoincidence(f"|det| = {abs(amap.det)} != 1")
    csl1 = csl(parent, amap)
    csl1_inv = csl(parent, amap.inverse_map)
    csl2 = csl(sub, amap)
    sigma1 = sigma(parent, amap)
    sigma2 = sigma(sub, amap)
    image_sub = transform(sub, amap.matrix)
    sub_in_csl = intersect(sub, csl1)
    image_sub_in_csl = intersect(image_sub, csl1)
    t = index(csl1, sub_in_csl)
    s = index(csl1, image_sub_in_csl)
    u = index(sub_in_csl, csl2)
    v = index(image_sub_in_csl, csl2)
    set_i = _colours_meeting(colouring, csl1_inv)
    set_j = _colours_meeting(colouring, csl1)
    cc = is_colour_coincidence(colouring, amap)
    perm = colour_permutation(colouring, amap) if cc else None
    analysis = ColouringAnalysis(
        m=colouring.m,
        sigma1=sigma1,
        sigma2=sigma2,
        s=s,
        t=t,
        u=u,
        v=v,
        csl1=csl1,
        csl1_inv=csl1_inv,
        csl2=csl2,
        colour_coincidence=cc,
        permutation=perm,
        set_I=set_i,
        set_J=set_j,
    )
    _check_analysis(analysis)
    return analysis


def enumerate_square_rotations(max_den: int) -> list[CommensurableMap]:
    """Deterministic duplicate-free corpus of rational rotations of Z^2.

    Walks denominators n = 1..max_den and coprime pairs (a, b) with
    a^2 + b^2 = n^2, emitting (1/n).[[a, -b], [b, a]].  Coprimality
    makes every (a, b, n) triple primitive, so no rotation repeats.
    """
    maps = []
    for n in range(1, max_den + 1):
        for a in range(n, -n - 1, -1):
            b2 = n * n - a * a
            b = isqrt(b2)
            if b * b != b2:
                continue
            for signed_b in ((b, -b) if b else (0,)):
                if gcd(abs(a), abs(signed_b)) != 1:
                    continue
                maps.append(
                    commensurable_map(
                        [
                            [Fraction(a, n), Fraction(-signed_b, n)],
                            [Fraction(signed_b, n), Fraction(a, n)],
                        ]
                    )
                )
    return maps


class _ResidueMemo:
    """Memoized function of integer parent coordinates.

    Membership in a sublattice of the parent, and colour, are both
    periodic in every coordinate with period the quotient exponent, so
    values are cached keyed by the coordinates mod that period.
    """

    def __init__(self, period: int, fn: Callable[[tuple[int, ...]], object]):
        self.period = max(1, period)
        self.fn = fn
        self.cache: dict = {}

    def __call__(self, coords: Sequence[int]):
        key = tuple(x % self.period for x in coords)
        hit = self.cache.get(key)
        if hit is None:
            hit = self.cache[key] = self.fn(key)
        return hit


def _membership_memo(parent: Lattice, sub: Lattice) -> _ResidueMemo:
    rel = _relative_basis(parent, sub)
    rel_h, _, rank = _hermite(rel)
    if rank != parent.dim:
        raise InternalInvariantViolation("relative basis lost rank")
    rel_h = tuple(tuple(r) for r in rel_h)
    d, _, _ = snf(rel)
    period = d[-1][-1]
    zero = (0,) * parent.dim
    return _ResidueMemo(period, lambda c: _residue(rel_h, c) == zero)


def _colour_memo(colouring: Colouring) -> _ResidueMemo:
    d, _, _ = snf(_relative_basis(colouring.parent, colouring.sub))
    return _ResidueMemo(d[-1][-1], colouring.colour_of_coords)


def window_census(
    colouring: Colouring, amap: CommensurableMap, radius: int
) -> dict:
    """Brute-force window survey, the independent oracle for `analyze`.

    Enumerates every point of the parent with integer basis coordinates
    in [-radius, radius]^d, records which lie in csl1 / csl1_inv with
    their colours, and for csl1_inv points the colour of the image.
    Pure integer arithmetic end to end.
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    parent = colouring.parent
    d = parent.dim
    fwd = csl(parent, amap)
    inv = csl(parent, amap.inverse_map)
    in_fwd = _membership_memo(parent, fwd)
    in_inv = _membership_memo(parent, inv)
    colour_at = _colour_memo(colouring)
    # the map in parent coordinates: x -> x . T with T = B . A^T . B^-1
    t_rat = mat_mul(
        mat_mul(parent.basis, transpose(amap.matrix)), rat_inverse(parent.basis)
    )
    t_num, t_den = clear_denominators(t_rat)
    observed_i: set[int] = set()
    observed_j: set[int] = set()
    transfer: dict[int, set[int]] = {}
    count_fwd = 0
    count_inv = 0
    box = range(-radius, radius + 1)
    for coords in product(box, repeat=d):
        if in_fwd(coords):
            count_fwd += 1
            observed_j.add(colour_at(coords))
        if in_inv(coords):
            count_inv += 1
            ci = colour_at(coords)
            observed_i.add(ci)
            image = []
            for val in vec_mat(coords, t_num):
                q, r = divmod(val, t_den)
                if r:
                    raise InternalInvariantViolation(
                        "image of a csl-inv point left the parent lattice"
                    )
                image.append(q)
            cj = colour_at(tuple(image))
            transfer.setdefault(ci, set()).add(cj)
    return {
        "radius": radius,
        "points_scanned": (2 * radius + 1) ** d,
        "count_csl": count_fwd,
        "count_csl_inv": count_inv,
        "observed_I": sorted(observed_i),
        "observed_J": sorted(observed_j),
        "transfer": [[i, sorted(js)] for i, js in sorted(transfer.items())],
    }


def census_contradictions(analysis: ColouringAnalysis, census: dict) -> list[str]:
    """Ways the window census can disprove the lattice-algebra analysis.

    A finite window can only see a subset of each colour set and of the
    transfer relation, so the checks are one-sided: observed colours
    must be among the predicted ones, and under a colour coincidence
    every observed image colour must match the permutation.
    """
    problems = []
    extra_i = set(census["observed_I"]) - set(analysis.set_I)
    if extra_i:
        problems.append(f"colours {sorted(extra_i)} observed in csl1_inv but not predicted")
    extra_j = set(census["observed_J"]) - set(analysis.set_J)
    if extra_j:
        problems.append(f"colours {sorted(extra_j)} observed in csl1 but not predicted")
    if analysis.colour_coincidence:
        perm = dict(analysis.permutation)
        for i, js in census["transfer"]:
            if js != [perm[i]]:
                problems.append(
                    f"colour {i} observed mapping to {js}, permutation says {perm[i]}"
                )
    return problems
