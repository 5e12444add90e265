"""Finite point schemes in the projective plane.

Interpolation ideals come from exact evaluation matrices; symbolic powers
are cut out degree by degree as kernels of per-point vanishing conditions.
The conditions for one point are obtained by a linear change of coordinates
moving the point to [0:0:1], where membership in the m-th power of the point
ideal reads off the coefficients whose z0/z1-degree is below m.  This is the
complete-intersection span description of the symbolic power in kernel form,
with no derivatives anywhere, so nothing depends on the characteristic.  A
direct subspace-intersection route is kept alongside as a cross-check
oracle.

Genericity of random samples is never assumed: it is certified a posteriori
by comparing Hilbert functions of the ideal and of its symbolic square with
the generic values, and the certificate travels with the point set.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .gradedideal import GradedIdeal, SdefectReport, _complete_in_subspace, sdefect as lab_sdefect
from .linalg import Field, PrimeField, Subspace, kernel_basis, rank
from .poly import (
    HomogPoly,
    basis_exponents,
    basis_size,
    coefficient_vector,
    multiply,
    poly_from_vector,
    power,
    rank_exponents,
)

RETRY_CAP = 40


# ---------------------------------------------------------------------------
# seeded sampling
# ---------------------------------------------------------------------------

def splitmix64(seed: int):
    """The splitmix64 stream: 64-bit state, stable across platforms."""
    state = seed & 0xFFFFFFFFFFFFFFFF
    mask = 0xFFFFFFFFFFFFFFFF
    while True:
        state = (state + 0x9E3779B97F4A7C15) & mask
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
        yield (z ^ (z >> 31)) & mask


def normalize_point(coords, field: PrimeField) -> tuple[int, int, int]:
    c = [field.of(x) for x in coords]
    if all(x == 0 for x in c):
        raise ValueError("projective point cannot be all zero")
    k = next(i for i, x in enumerate(c) if x != 0)
    inv = field.inv(c[k])
    return tuple(x * inv % field.p for x in c)


@dataclass(frozen=True)
class PointSet:
    """Duplicate-free points of P^2 over a prime field, with sampling metadata."""

    points: tuple[tuple[int, int, int], ...]
    field: PrimeField
    seed: int | None = None
    certificate: dict | None = None

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise ValueError("points must be pairwise distinct")

    def __len__(self):
        return len(self.points)


def make_point_set(coord_rows, field: PrimeField, seed=None, certificate=None) -> PointSet:
    pts = tuple(normalize_point(row, field) for row in coord_rows)
    return PointSet(pts, field, seed, certificate)


def point_linear_forms(point, field: PrimeField) -> tuple[HomogPoly, HomogPoly]:
    """Two canonical independent linear forms vanishing at the point.

    They are the reduced-echelon kernel basis of the evaluation functional,
    so they generate the full point ideal.
    """
    pt = normalize_point(point, field)
    row = field.matrix([list(pt)])
    K = kernel_basis(row, field)
    l1 = poly_from_vector(K[0], 3, 1, field)
    l2 = poly_from_vector(K[1], 3, 1, field)
    return l1, l2


# ---------------------------------------------------------------------------
# evaluation and Hilbert functions
# ---------------------------------------------------------------------------

def evaluation_matrix(X: PointSet, d: int) -> np.ndarray:
    """Row per point: values of the degree-d monomial basis at the point."""
    p = X.field.p
    exps = basis_exponents(3, d)
    rows = np.empty((len(X), basis_size(3, d)), dtype=np.int64)
    for i, pt in enumerate(X.points):
        vals = np.ones(exps.shape[0], dtype=np.int64)
        for v in range(3):
            powers = np.empty(d + 1, dtype=np.int64)
            powers[0] = 1
            for e in range(1, d + 1):
                powers[e] = powers[e - 1] * pt[v] % p
            vals = vals * powers[exps[:, v]] % p
        rows[i] = vals
    return rows


def hilbert_function_points(X: PointSet, d: int) -> int:
    """HF of R/I_X at degree d: the rank of the evaluation matrix."""
    return rank(evaluation_matrix(X, d), X.field)


def sigma_points(X: PointSet) -> int:
    """Least degree where the Hilbert function reaches |X|."""
    s = len(X)
    d = 0
    while hilbert_function_points(X, d) < s:
        d += 1
        if d > 3 * s + 3:
            raise RuntimeError("Hilbert function failed to stabilize (duplicate points?)")
    return d


def regularity_points(X: PointSet) -> int:
    """reg(I_X) for points in the plane: one past the HF stabilization degree."""
    return sigma_points(X) + 1


@dataclass(frozen=True)
class PointsProfile:
    alpha: int
    regularity: int
    hf: tuple[int, ...]  # HF of R/I_X for degrees 0..sigma+1
    is_generic_hf: bool


def points_profile(X: PointSet) -> PointsProfile:
    s = len(X)
    sigma = sigma_points(X)
    hf = tuple(hilbert_function_points(X, d) for d in range(sigma + 2))
    alpha = next(d for d, v in enumerate(hf) if v < basis_size(3, d))
    generic = all(v == min(basis_size(3, d), s) for d, v in enumerate(hf))
    return PointsProfile(alpha, sigma + 1, hf, generic)


# ---------------------------------------------------------------------------
# interpolation ideals and symbolic powers
# ---------------------------------------------------------------------------

def _gens_from_pieces(pieces: dict[int, Subspace], field: Field, degree_bound: int) -> list[HomogPoly]:
    """Nakayama representatives across cached pieces 0..degree_bound."""
    carrier = GradedIdeal(3, [], field)
    carrier.warm_cache(pieces)
    gens: list[HomogPoly] = []
    for d in range(degree_bound + 1):
        piece = pieces[d]
        if piece.dim == 0:
            continue
        if d == 0 or pieces[d - 1].dim == 0:
            wrows = field.zeros((0, basis_size(3, d)))
        else:
            wrows = carrier._shift_rows(pieces[d - 1].basis, d - 1)
        for q in _complete_in_subspace(piece, wrows, field):
            gens.append(poly_from_vector(piece.basis[q], 3, d, field))
    return gens


def ideal_of_points(X: PointSet, degree_bound: int | None = None) -> GradedIdeal:
    """The interpolation ideal I_X with pieces and generators up to reg(I_X).

    The degree bound, when given, must be at least reg(I_X) (the generator
    degree ceiling for plane points); the default is exactly that.
    """
    reg = regularity_points(X)
    if degree_bound is None:
        degree_bound = reg
    if degree_bound < reg:
        raise ValueError(f"degree bound {degree_bound} is below the generator ceiling {reg}")
    field = X.field
    pieces: dict[int, Subspace] = {}
    for d in range(degree_bound + 1):
        K = kernel_basis(evaluation_matrix(X, d), field)
        pieces[d] = Subspace(field, basis_size(3, d), K, _rref_pivots(K))
    gens = _gens_from_pieces(pieces, field, degree_bound)
    J = GradedIdeal(3, gens, field)
    J.warm_cache(pieces)
    return J


def _rref_pivots(R: np.ndarray) -> tuple[int, ...]:
    out = []
    for i in range(R.shape[0]):
        nz = np.nonzero(R[i])[0]
        out.append(int(nz[0]))
    return tuple(out)


def _adapted_frame(point, field: PrimeField) -> np.ndarray:
    """Invertible 3x3 matrix whose last column is the point.

    Substituting x = A z moves the point to [0:0:1], so the point ideal
    becomes <z0, z1> and order-m vanishing is a condition on z-coefficients.
    """
    pt = normalize_point(point, field)
    k = next(i for i, x in enumerate(pt) if x != 0)
    others = [i for i in range(3) if i != k]
    A = field.zeros((3, 3))
    A[others[0], 0] = 1
    A[others[1], 1] = 1
    for i in range(3):
        A[i, 2] = pt[i]
    return A


class _PointConditions:
    """Vanishing-order conditions for one point, built degree by degree.

    Row (i, j) of the degree-d table holds, for every degree-d x-monomial,
    the coefficient of z0^i z1^j z2^(d-i-j) in its image under x = A z.
    Membership of a form in I_P^m is the vanishing of all rows with
    i + j <= m - 1.
    """

    def __init__(self, point, m: int, field: PrimeField):
        self.field = field
        self.m = m
        self.A = _adapted_frame(point, field)
        self.rows = [(i, j) for i in range(m) for j in range(m - i)]
        self.row_index = {ij: r for r, ij in enumerate(self.rows)}
        table0 = field.zeros((len(self.rows), 1))
        table0[self.row_index[(0, 0)], 0] = 1
        self._tables: dict[int, np.ndarray] = {0: table0}

    def table(self, d: int) -> np.ndarray:
        if d in self._tables:
            return self._tables[d]
        p = self.field.p
        prev = self.table(d - 1)
        exps = basis_exponents(3, d)
        first_var = np.argmax(exps > 0, axis=1)
        parent = exps.copy()
        parent[np.arange(len(exps)), first_var] -= 1
        from .poly import rank_exponents

        parent_idx = rank_exponents(parent)
        out = self.field.zeros((len(self.rows), basis_size(3, d)))
        for v in range(3):
            sel = np.nonzero(first_var == v)[0]
            if sel.size == 0:
                continue
            par = parent_idx[sel]
            a0, a1, a2 = (int(self.A[v, t]) for t in range(3))
            for r, (i, j) in enumerate(self.rows):
                acc = prev[r, par] * a2 % p
                if i > 0:
                    acc = (acc + prev[self.row_index[(i - 1, j)], par] * a0) % p
                if j > 0:
                    acc = (acc + prev[self.row_index[(i, j - 1)], par] * a1) % p
                out[r, sel] = acc
        self._tables[d] = out
        return out


def symbolic_power_pieces(X: PointSet, m: int, degree_bound: int) -> dict[int, Subspace]:
    """Graded pieces of the m-th symbolic power, degree by degree."""
    field = X.field
    conds = [_PointConditions(pt, m, field) for pt in X.points]
    pieces: dict[int, Subspace] = {}
    for d in range(degree_bound + 1):
        C = np.concatenate([c.table(d) for c in conds], axis=0)
        K = kernel_basis(C, field)
        pieces[d] = Subspace(field, basis_size(3, d), K, _rref_pivots(K))
    return pieces


def symbolic_power_points(X: PointSet, m: int, degree_bound: int | None = None) -> GradedIdeal:
    """I_X^(m) as a graded ideal, with certified-complete generators.

    The degree bound must be at least m * reg(I_X); beyond that degree the
    symbolic and ordinary powers agree and the module of new generators is
    exhausted, so the Nakayama generators computed below generate the whole
    symbolic power.
    """
    if m < 1:
        raise ValueError("symbolic power needs m >= 1")
    reg = regularity_points(X)
    certified = m * reg
    if degree_bound is None:
        degree_bound = certified
    if degree_bound < certified:
        raise ValueError(
            f"degree bound {degree_bound} is below the certified bound {certified} = m*reg"
        )
    pieces = symbolic_power_pieces(X, m, degree_bound)
    gens = _gens_from_pieces(pieces, X.field, degree_bound)
    J = GradedIdeal(3, gens, X.field)
    J.warm_cache(pieces)
    return J


def symbolic_piece_by_intersection(X: PointSet, m: int, d: int) -> Subspace:
    """Oracle route: intersect per-point spans of l1^a l2^(m-a) R_{d-m}."""
    field = X.field
    N = basis_size(3, d)
    if d < m:
        return Subspace.zero(N, field)
    out: Subspace | None = None
    for pt in X.points:
        l1, l2 = point_linear_forms(pt, field)
        rows = []
        for a in range(m + 1):
            f = multiply(power(l1, a), power(l2, m - a))
            carrier = GradedIdeal(3, [f], field)
            rows.append(carrier._gen_rows(d))
        span = Subspace.from_rows(np.concatenate(rows, axis=0), field, N)
        out = span if out is None else out.intersect(span)
    return out


def power_ideal(I: GradedIdeal, m: int) -> GradedIdeal:
    """I^m generated by all m-fold products of the given generators."""
    if m < 0:
        raise ValueError("negative power")
    field = I.field
    if m == 0:
        one = HomogPoly(I.num_vars, 0, {(0,) * I.num_vars: field.of(1)}, field)
        return GradedIdeal(I.num_vars, [one], field)
    from itertools import combinations_with_replacement

    gens = []
    for combo in combinations_with_replacement(I.gens, m):
        f = combo[0]
        for g in combo[1:]:
            f = multiply(f, g)
        gens.append(f)
    return GradedIdeal(I.num_vars, gens, field)


def sdefect_points(X: PointSet, m: int) -> SdefectReport:
    """Symbolic defect of the point ideal, with the certified degree bound.

    Uses D = m*reg(I_X) + 1: regularity bounds both the saturation degree of
    I_X^m and every generator degree in sight, so the per-degree counts are
    complete and the total is exact.
    """
    if m < 0:
        raise ValueError("negative power")
    if m == 0:
        return SdefectReport(m=0, per_degree={}, total=0, degree_bound_used=0)
    reg = regularity_points(X)
    D = m * reg + 1
    isym = symbolic_power_points(X, m, D)
    base = ideal_of_points(X)
    ipow = power_ideal(base, m)
    return lab_sdefect(isym, ipow, D, m=m)


# ---------------------------------------------------------------------------
# generic points and certification
# ---------------------------------------------------------------------------

def generic_double_hf(s: int, d: int) -> int:
    """Expected HF of R/I_X^(2) for s general double points in the plane.

    s = 2 has no closed form here and is rejected; s = 5 carries the
    exceptional value 14 in degree 4.
    """
    if s < 1:
        raise ValueError("need at least one point")
    if s == 2:
        raise ValueError("no generic formula for s = 2; compute directly")
    if s == 5 and d == 4:
        return 14
    return min(basis_size(3, d), 3 * s)


def _certify_generic(X: PointSet) -> dict | None:
    """Hilbert-function certificates for 'general position', or None on failure."""
    s = len(X)
    # (a) generic HF of the points themselves
    sigma_expected = next(d for d in range(3 * s + 4) if basis_size(3, d) >= s)
    hf = []
    for d in range(sigma_expected + 2):
        v = hilbert_function_points(X, d)
        hf.append(v)
        if v != min(basis_size(3, d), s):
            return None
    cert = {"hf_points": hf, "hf_generic": True}
    # (b) double points against the interpolation count (skip s = 2: no formula)
    if s != 2:
        d2 = next(d for d in range(3 * s + 4) if basis_size(3, d) >= 3 * s)
        pieces = symbolic_power_pieces(X, 2, d2 + 1)
        hf2 = []
        for d in range(d2 + 2):
            v = basis_size(3, d) - pieces[d].dim
            hf2.append(v)
            if v != generic_double_hf(s, d):
                return None
        cert["hf_double"] = hf2
        cert["hf_double_generic"] = True
    return cert


def random_general_points(s: int, seed: int, prime: int = 32003) -> PointSet:
    """Seeded pseudo-random points certified to be in general position.

    Sampling is deterministic in (s, seed, prime); if a sample fails the
    Hilbert-function certificates the seed is bumped by one and the sample
    is redrawn, up to a retry cap.
    """
    if s < 1:
        raise ValueError("need at least one point")
    field = PrimeField(prime)
    for attempt in range(RETRY_CAP):
        used = seed + attempt
        stream = splitmix64(used)
        pts: list[tuple[int, int, int]] = []
        seen = set()
        draws = 0
        while len(pts) < s:
            coords = tuple(next(stream) % prime for _ in range(3))
            draws += 1
            if draws > 100 * s + 100:
                break
            if all(c == 0 for c in coords):
                continue
            pt = normalize_point(coords, field)
            if pt in seen:
                continue
            seen.add(pt)
            pts.append(pt)
        if len(pts) < s:
            continue
        X = PointSet(tuple(pts), field, seed=used)
        cert = _certify_generic(X)
        if cert is not None:
            cert["seed"] = used
            cert["prime"] = prime
            return PointSet(tuple(pts), field, seed=used, certificate=cert)
    raise RuntimeError(
        f"could not certify {s} general points over GF({prime}) after {RETRY_CAP} attempts"
    )


# ---------------------------------------------------------------------------
# star configurations of points from line arrangements
# ---------------------------------------------------------------------------

def star_points_from_lines(lines: list[HomogPoly]) -> PointSet:
    """Pairwise intersection points of a generic line arrangement.

    Requires every pair independent and no three concurrent (every triple of
    coefficient rows has rank 3).
    """
    from itertools import combinations

    if len(lines) < 2:
        raise ValueError("need at least two lines")
    field = lines[0].field
    rows = np.concatenate([coefficient_vector(l).reshape(1, -1) for l in lines], axis=0)
    for i, j in combinations(range(len(lines)), 2):
        if rank(rows[[i, j]], field) != 2:
            raise ValueError(f"lines {i} and {j} are dependent")
    for i, j, k in combinations(range(len(lines)), 3):
        if rank(rows[[i, j, k]], field) != 3:
            raise ValueError(f"lines {i}, {j}, {k} are concurrent")
    pts = []
    for i, j in combinations(range(len(lines)), 2):
        K = kernel_basis(rows[[i, j]], field)
        pts.append(normalize_point(tuple(int(x) for x in K[0]), field))
    return PointSet(tuple(pts), field)


def random_general_lines(s: int, seed: int, prime: int = 32003) -> list[HomogPoly]:
    """Seeded generic line arrangement: pairwise independent, no 3 concurrent."""
    field = PrimeField(prime)
    for attempt in range(RETRY_CAP):
        stream = splitmix64(seed + attempt)
        lines = []
        for _ in range(s):
            coords = [next(stream) % prime for _ in range(3)]
            if all(c == 0 for c in coords):
                break
            lines.append(poly_from_vector(np.array(coords, dtype=np.int64), 3, 1, field))
        if len(lines) < s:
            continue
        try:
            star_points_from_lines(lines)
        except ValueError:
            continue
        return lines
    raise RuntimeError(f"could not sample {s} generic lines after {RETRY_CAP} attempts")


# ---------------------------------------------------------------------------
# theorem checks
# ---------------------------------------------------------------------------

def verify_power_identity(lines: list[HomogPoly], m: int) -> bool:
    """I^(2m) = (I^(2))^m for the codimension-2 star of a line arrangement."""
    from .stargeneral import StarConfig, symbolic_power_star_general

    cfg = StarConfig.build(3, 2, lines)
    lhs = symbolic_power_star_general(cfg, 2 * m)
    sym2 = symbolic_power_star_general(cfg, 2)
    rhs = power_ideal(sym2, m)
    from .gradedideal import ideals_equal

    return ideals_equal(lhs, rhs)


def verify_general_points_classification(s_max: int, seed: int = 1, prime: int = 32003) -> list[dict]:
    """Computed sdefect(I_X, 2) classes for s = 1..s_max vs the known split.

    Expected: 0 exactly for s in {1,2,4}; 1 exactly for s in {3,5,7,8};
    > 1 otherwise (with >= 3 at s = 6 and s = 9).
    """
    out = []
    for s in range(1, s_max + 1):
        X = random_general_points(s, seed, prime)
        total = sdefect_points(X, 2).total
        if s in (1, 2, 4):
            ok = total == 0
        elif s in (3, 5, 7, 8):
            ok = total == 1
        else:
            ok = total > 1
            if s in (6, 9):
                ok = ok and total >= 3
        out.append({"s": s, "sdefect2": total, "ok": ok, "seed": X.seed})
    return out


def generator_count_check(X: PointSet) -> bool:
    """At most alpha + 1 minimal generators in the initial degree."""
    prof = points_profile(X)
    I = ideal_of_points(X)
    counts = I.min_gens_counts(prof.regularity)
    return counts.get(prof.alpha, 0) <= prof.alpha + 1


def linear_resolution_check(X: PointSet) -> bool:
    """Linear resolution detected three independent ways, cross-asserted.

    (a) all minimal generators sit in the initial degree alpha and there are
    alpha + 1 of them; (b) |X| = binom(alpha+1, 2) with generic HF; (c) the
    first syzygies are concentrated in degree alpha + 1 with rank alpha.
    The three answers must agree.
    """
    from .gradedideal import graded_betti

    prof = points_profile(X)
    alpha = prof.alpha
    I = ideal_of_points(X)
    counts = I.min_gens_counts(prof.regularity)
    cond_a = counts == {alpha: alpha + 1}
    cond_b = len(X) == comb(alpha + 1, 2) and prof.is_generic_hf
    table = graded_betti(I, 1, prof.regularity + 1)
    cond_c = table.row(0) == {alpha: alpha + 1} and table.row(1) == {alpha + 1: alpha}
    if not (cond_a == cond_b == cond_c):
        raise ArithmeticError(
            f"linear-resolution detections disagree: gens={cond_a}, count/HF={cond_b}, betti={cond_c}"
        )
    return cond_a
