"""Exact dense-matrix verification of MUB atlases built from curves.

Operators are 2^n x 2^n integer matrices over the Gaussian integers
(stored as separate real and imaginary numpy int64 matrices, though for
the monomials used here every entry is real and in {0, +1, -1}).  The
common eigenbasis of a curve's commuting set is computed by exact
projector splitting over Gaussian rationals, so unbiasedness checks are
exact equalities of `fractions.Fraction` values, never float comparisons.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import InputError, NotCommutative
from .curves import Point, PointSet, all_nonintersecting, assert_admissible
from .field import GF2n
from .pauli import PauliMonomial, commuting_set, monomial

# -- dense operators ---------------------------------------------------------------


def basis_index(F: GF2n, c: int) -> int:
    """Computational-basis index of field element c: qubit 1 is the most
    significant bit of the selfdual-coordinate word."""
    bits = F.coords(c)
    idx = 0
    for b in bits:
        idx = (idx << 1) | b
    return idx


def dense_monomial(F: GF2n, alpha: int, beta: int) -> np.ndarray:
    """Z_alpha X_beta as a signed permutation matrix:
    Z_alpha X_beta |c> = chi((c + beta) alpha) |c + beta>."""
    d = F.order
    M = np.zeros((d, d), dtype=np.int64)
    for c in F.elements():
        M[basis_index(F, c ^ beta), basis_index(F, c)] = F.character(F.mul(c ^ beta, alpha))
    return M


def dense_z(F: GF2n, alpha: int) -> np.ndarray:
    return dense_monomial(F, alpha, 0)


def dense_x(F: GF2n, beta: int) -> np.ndarray:
    return dense_monomial(F, 0, beta)


_SZ = np.array([[1, 0], [0, -1]], dtype=np.int64)
_SX = np.array([[0, 1], [1, 0]], dtype=np.int64)


def dense_from_bits(z_bits: Sequence[int], x_bits: Sequence[int]) -> np.ndarray:
    """Tensor product of per-qubit sigma_z^a sigma_x^b factors (no i phases)."""
    M = np.array([[1]], dtype=np.int64)
    for zb, xb in zip(z_bits, x_bits):
        f = np.eye(2, dtype=np.int64)
        if zb:
            f = f @ _SZ
        if xb:
            f = f @ _SX
        M = np.kron(M, f)
    return M


def monomial_square_sign(F: GF2n, alpha: int, beta: int) -> int:
    """(Z_alpha X_beta)^2 = chi(alpha beta) * identity."""
    return F.character(F.mul(alpha, beta))


def tensor_phase(F: GF2n, alpha: int, beta: int) -> int:
    """Sign s with Z_alpha X_beta = s * (tensor product of per-qubit factors).

    Both sides are real signed permutations, so the only possible global
    phases are +1 and -1.
    """
    m = monomial(F, alpha, beta)
    M1 = dense_monomial(F, alpha, beta)
    M2 = dense_from_bits(m.z_bits, m.x_bits)
    if np.array_equal(M1, M2):
        return 1
    if np.array_equal(M1, -M2):
        return -1
    raise InputError(f"monomial {(alpha, beta)} is not proportional to its tensor form")


# -- exact Gaussian-rational vectors -----------------------------------------------


GVec = tuple[tuple[Fraction, Fraction], ...]          # (real, imag) per entry


def _gv_zero(d: int) -> GVec:
    return tuple((Fraction(0), Fraction(0)) for _ in range(d))


def _gv_basis(d: int, i: int) -> GVec:
    return tuple((Fraction(1 if j == i else 0), Fraction(0)) for j in range(d))


def _gv_add(u: GVec, v: GVec) -> GVec:
    return tuple((a + c, b + d) for (a, b), (c, d) in zip(u, v))


def _gv_scale(u: GVec, re: Fraction, im: Fraction) -> GVec:
    return tuple((re * a - im * b, re * b + im * a) for a, b in u)


def _gv_is_zero(u: GVec) -> bool:
    return all(a == 0 and b == 0 for a, b in u)


def _gv_apply(M: np.ndarray, u: GVec) -> GVec:
    d = len(u)
    out = []
    for r in range(d):
        re = Fraction(0)
        im = Fraction(0)
        row = M[r]
        for c in range(d):
            m = int(row[c])
            if m:
                re += m * u[c][0]
                im += m * u[c][1]
        out.append((re, im))
    return tuple(out)


@dataclass(frozen=True)
class ExactVector:
    """An integer Gaussian vector plus binary norm exponent: norm^2 = 2^e.

    The normalised state is this vector divided by 2^(e/2); keeping the
    exponent instead of the root keeps every later overlap rational.
    """

    re: tuple[int, ...]
    im: tuple[int, ...]
    norm_exp: int

    def overlap_sq(self, other: "ExactVector") -> Fraction:
        """|<self|other>|^2 as an exact Fraction."""
        re = im = 0
        for a, b, c, d in zip(self.re, self.im, other.re, other.im):
            re += a * c + b * d
            im += a * d - b * c
        return Fraction(re * re + im * im, 1 << (self.norm_exp + other.norm_exp))

    def to_complex(self) -> np.ndarray:
        scale = 2.0 ** (-self.norm_exp / 2)
        return (np.array(self.re) + 1j * np.array(self.im)) * scale


def _normalise(u: GVec) -> ExactVector:
    denom = 1
    for a, b in u:
        denom = denom * a.denominator // _gcd(denom, a.denominator)
        denom = denom * b.denominator // _gcd(denom, b.denominator)
    re = [int(a * denom) for a, _ in u]
    im = [int(b * denom) for _, b in u]
    g = 0
    for v in itertools.chain(re, im):
        g = _gcd(g, abs(v))
    re = [v // g for v in re]
    im = [v // g for v in im]
    norm2 = sum(a * a + b * b for a, b in zip(re, im))
    e = norm2.bit_length() - 1
    if norm2 != 1 << e:
        raise InputError(f"eigenvector norm^2 = {norm2} is not a power of 2")
    return ExactVector(tuple(re), tuple(im), e)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# -- eigenbasis construction -------------------------------------------------------


@dataclass(frozen=True)
class MubBasis:
    """An orthonormal eigenbasis of one curve's commuting monomial set."""

    points: PointSet
    vectors: tuple[ExactVector, ...]
    # per column: eigenvalue exponent tuple, one i-power per generator monomial
    labels: tuple[tuple[int, ...], ...]


def eigenbasis(F: GF2n, points: Iterable[Point]) -> MubBasis:
    """Exact common eigenbasis of the curve's nonidentity monomials.

    The basis is built by splitting with one generator monomial at a time:
    for D with D^2 = I the split is v +- D v, for D^2 = -I it is v -+ i D v.
    Columns are sorted by their tuple of eigenvalue exponents, so the
    result is deterministic.
    """
    pts = assert_admissible(F, points)
    gens = _point_generators(pts)
    d = F.order
    spaces: list[tuple[tuple[int, ...], list[GVec]]] = [
        ((), [_gv_basis(d, i) for i in range(d)])]
    for g in gens:
        D = dense_monomial(F, *g)
        sq = monomial_square_sign(F, *g)
        new_spaces = []
        for label, vecs in spaces:
            plus: list[GVec] = []
            minus: list[GVec] = []
            for v in vecs:
                Dv = _gv_apply(D, v)
                if sq == 1:
                    # D^2 = I: v + Dv has eigenvalue +1, v - Dv has -1
                    w_plus = _gv_add(v, Dv)
                    w_minus = _gv_add(v, _gv_scale(Dv, Fraction(-1), Fraction(0)))
                else:
                    # D^2 = -I: v + iDv has eigenvalue -i, v - iDv has +i
                    w_plus = _gv_add(v, _gv_scale(Dv, Fraction(0), Fraction(1)))
                    w_minus = _gv_add(v, _gv_scale(Dv, Fraction(0), Fraction(-1)))
                for w, bucket in ((w_plus, plus), (w_minus, minus)):
                    if not _gv_is_zero(w):
                        _append_independent(bucket, w)
            exps = (0, 2) if sq == 1 else (3, 1)
            for exp, bucket in zip(exps, (plus, minus)):
                if bucket:
                    new_spaces.append((label + (exp,), bucket))
        spaces = new_spaces
    columns: list[tuple[tuple[int, ...], ExactVector]] = []
    for label, vecs in spaces:
        if len(vecs) != 1:
            raise NotCommutative(
                f"common eigenspace of dimension {len(vecs)}; generators do not split fully")
        columns.append((label, _normalise(vecs[0])))
    columns.sort(key=lambda c: c[0])
    _check_orthonormal(columns)
    return MubBasis(pts, tuple(c[1] for c in columns), tuple(c[0] for c in columns))


def _point_generators(pts: PointSet) -> list[Point]:
    gens: list[Point] = []
    span = {(0, 0)}
    for p in sorted(pts):
        if p != (0, 0) and p not in span:
            gens.append(p)
            span |= {(p[0] ^ a, p[1] ^ b) for a, b in span}
    return gens


def _append_independent(bucket: list[GVec], w: GVec) -> None:
    """Gaussian elimination against the bucket; append if independent."""
    v = list(w)
    for b in bucket:
        piv = next(i for i, (a, c) in enumerate(b) if a or c)
        pr, pi = b[piv]
        vr, vi = v[piv]
        if vr == 0 and vi == 0:
            continue
        # factor = v[piv] / b[piv]
        den = pr * pr + pi * pi
        fr = (vr * pr + vi * pi) / den
        fi = (vi * pr - vr * pi) / den
        scaled = _gv_scale(tuple(b), -fr, -fi)
        v = list(_gv_add(tuple(v), scaled))
    if not _gv_is_zero(tuple(v)):
        bucket.append(tuple(v))


def _check_orthonormal(columns: Sequence[tuple[tuple[int, ...], ExactVector]]) -> None:
    for (_, u), (_, v) in itertools.combinations(columns, 2):
        if u.overlap_sq(v) != 0:
            raise NotCommutative("eigenbasis columns are not orthogonal")


def eigenphase_exponent(F: GF2n, vec: ExactVector, p: Point) -> int:
    """The exponent e in 0..3 with Z_alpha X_beta v = i^e v."""
    D = dense_monomial(F, *p)
    re = np.asarray(vec.re, dtype=object)
    im = np.asarray(vec.im, dtype=object)
    wre = D @ re
    wim = D @ im
    for e, (fr, fi) in enumerate(((1, 0), (0, 1), (-1, 0), (0, -1))):
        if (np.array_equal(wre, fr * re - fi * im)
                and np.array_equal(wim, fr * im + fi * re)):
            return e
    raise NotCommutative(f"vector is not an eigenvector of monomial {p}")


# -- MUB checks --------------------------------------------------------------------


def check_trace_orthogonality(F: GF2n,
                              curves: Sequence[PointSet]) -> list[tuple[Point, Point]]:
    """Hilbert-Schmidt orthogonality of all monomials, within and across sets.

    Tr(D D'^dag) must equal d exactly when the two labels coincide and 0
    otherwise; the returned list holds the violating label pairs (empty on
    success).  Since the monomials here are real signed permutations,
    D'^dag = D'^T.
    """
    d = F.order
    labelled = [(i, p) for i, c in enumerate(curves)
                for p in sorted(c) if p != (0, 0)]
    dense = {p: dense_monomial(F, *p) for _, p in labelled}
    bad = []
    for (i, p), (j, q) in itertools.combinations_with_replacement(labelled, 2):
        t = int(np.trace(dense[p] @ dense[q].T))
        same = (i, p) == (j, q)
        if t != (d if same else 0):
            bad.append((p, q))
    return bad


def unbiasedness_overlaps(b1: MubBasis, b2: MubBasis) -> list[Fraction]:
    return [u.overlap_sq(v) for u in b1.vectors for v in b2.vectors]


def check_unbiased(F: GF2n, b1: MubBasis, b2: MubBasis) -> bool:
    """Every cross overlap |<u|v>|^2 must equal exactly 1/2^n."""
    want = Fraction(1, F.order)
    return all(o == want for o in unbiasedness_overlaps(b1, b2))


@dataclass(frozen=True)
class VerificationReport:
    n: int
    num_bases: int
    disjoint: bool
    unbiased: bool
    failures: tuple[tuple[int, int], ...]   # pairs of basis indices

    @property
    def ok(self) -> bool:
        return self.disjoint and self.unbiased


@dataclass(frozen=True)
class BundleReport:
    n: int
    nonintersecting: bool
    commuting_sets_valid: bool
    trace_orthogonal: bool
    unbiased: bool
    structure: tuple[int, ...]
    operator_table: tuple[tuple[str, ...], ...]   # (2^n - 1) rows x (2^n + 1) cols

    @property
    def ok(self) -> bool:
        return (self.nonintersecting and self.commuting_sets_valid
                and self.trace_orthogonal and self.unbiased)


def verify_bundle(F: GF2n, curves: Sequence[PointSet]) -> BundleReport:
    """Full verification of a complete bundle: geometry, algebra, unbiasedness.

    The operator table lists, column per curve, the glyph labels of its
    2^n - 1 nonidentity monomials in point order.
    """
    from .pauli import bundle_structure, commutes, commuting_set

    curves = [assert_admissible(F, c) for c in curves]
    disjoint = all_nonintersecting(curves)
    sets = [commuting_set(F, c) for c in curves]
    commuting_ok = all(commutes(F, a, b)
                       for mons in sets
                       for a, b in itertools.combinations(mons, 2))
    trace_ok = not check_trace_orthogonality(F, curves)
    report = verify_atlas(F, curves)
    table = tuple(tuple(m.label() for m in mons) for mons in sets)
    # transpose: one row per monomial slot, one column per curve
    table = tuple(zip(*table)) if table else ()
    return BundleReport(F.n, disjoint, commuting_ok, trace_ok,
                        report.unbiased, bundle_structure(F, curves),
                        tuple(tuple(r) for r in table))


def verify_atlas(F: GF2n, curves: Sequence[PointSet],
                 include_computational: bool = False) -> VerificationReport:
    """Build every eigenbasis exactly and check pairwise unbiasedness.

    With `include_computational` the standard basis is checked against each
    curve basis as well (it is the eigenbasis of the ray beta = 0, so this
    is redundant when that ray is among the curves).
    """
    curves = [assert_admissible(F, c) for c in curves]
    disjoint = not check_trace_orthogonality(F, curves)
    bases = [eigenbasis(F, c) for c in curves]
    if include_computational:
        d = F.order
        comp = MubBasis(
            frozenset((a, 0) for a in F.elements()),
            tuple(ExactVector(tuple(1 if j == i else 0 for j in range(d)),
                              (0,) * d, 0) for i in range(d)),
            tuple((i,) for i in range(d)))
        bases.append(comp)
    failures = []
    for i, j in itertools.combinations(range(len(bases)), 2):
        if bases[i].points == bases[j].points:
            continue
        if not check_unbiased(F, bases[i], bases[j]):
            failures.append((i, j))
    return VerificationReport(F.n, len(bases), disjoint, not failures, tuple(failures))
