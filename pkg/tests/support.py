"""Shared builders for the test suite.

Houses the deliberately broken structures, the generators of validated
random variants (coefficient scalings and rational coframe changes), and
the brute-force harness producing random double-differential complexes
directly as matrices.
"""

from fractions import Fraction
from itertools import combinations
from random import Random
from typing import Dict, List, Sequence, Tuple

from quatcohom import AlgebraSpec, GaussianRational, MatrixComplex
from quatcohom.exterior import Form
from quatcohom.linalg import Mat, inverse
from quatcohom.model import instantiate


def skew_pairs(dim: int, pairs: Sequence[Tuple[int, int, int]]) -> List[List[int]]:
    """Endomorphism table sending e^a to s*e^b for each (a, b, s)."""
    rows = [[0] * dim for _ in range(dim)]
    for a, b, s in pairs:
        rows[b - 1][a - 1] = s
        rows[a - 1][b - 1] = -s
    return rows


I4 = skew_pairs(4, [(1, 2, 1), (3, 4, 1)])
J4 = skew_pairs(4, [(1, 3, 1), (4, 2, 1)])


def jacobi_broken_spec() -> AlgebraSpec:
    # d(e^34) = e^124 != 0, so d fails to square to zero
    return AlgebraSpec.create(
        4,
        {3: [(1, 2, 1)], 4: [(3, 4, 1)]},
        I4, J4,
        name="jacobi-broken",
    )


def relation_broken_spec() -> AlgebraSpec:
    # J sends both e^1 to e^3 and e^2 to +e^4: J^2 != -Id on e^2
    bad_j = skew_pairs(4, [(1, 3, 1), (2, 4, 1)])
    bad_j[3][1] = 1
    bad_j[1][3] = -1
    return AlgebraSpec.create(4, {}, I4, bad_j, name="relation-broken")


def nonintegrable_spec() -> AlgebraSpec:
    # quaternion relations hold, I is integrable, J is not:
    # d e^4 = e^12 acquires a (0,2)-component in the J eigenbasis
    return AlgebraSpec.create(
        4,
        {4: [(1, 2, 1)]},
        I4, J4,
        name="nonintegrable",
    )


def affine_complex_spec() -> AlgebraSpec:
    # the complex affine group: hypercomplex and integrable but not
    # nilpotent, and its invariant volume form is not holomorphic
    return AlgebraSpec.create(
        4,
        {3: [(1, 3, 1), (2, 4, 1)], 4: [(1, 4, 1), (2, 3, -1)]},
        I4, J4,
        name="affine-complex",
    )


# ---------------------------------------------------------------------------
# Validated variants of a constant-coefficient spec.
# ---------------------------------------------------------------------------


def _constant_matrix(spec: AlgebraSpec, which: str, bindings=None) -> List[List[Fraction]]:
    inst = instantiate(spec, bindings)
    mat = inst.mat_i if which == "i" else inst.mat_j
    return [[Fraction(x.re) for x in row] for row in mat.data]


def scaled_variant(spec: AlgebraSpec, factor: Fraction,
                   bindings=None) -> AlgebraSpec:
    """Multiply every structure constant by a nonzero rational.

    Any declared parameters must be bound here; the result is a
    parameter-free structure with the bindings baked in.
    """
    assert factor != 0
    structure = {
        k: [(i, j, Fraction(c.evaluate(bindings or {}).re) * factor)
            for i, j, c in terms]
        for k, terms in spec.structure
    }
    return AlgebraSpec.create(
        spec.dimension, structure,
        _constant_matrix(spec, "i", bindings),
        _constant_matrix(spec, "j", bindings),
        name=f"{spec.name}-scaled",
    )


def random_gl(rng: Random, m: int, ops: int = 6) -> Mat:
    """Product of elementary row operations; invertible by construction."""
    rows = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    lambdas = [Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(2)]
    for _ in range(ops):
        i = rng.randrange(m)
        j = rng.randrange(m)
        if i == j:
            continue
        lam = rng.choice(lambdas)
        for c in range(m):
            rows[i][c] += lam * rows[j][c]
    if rng.random() < 0.5:
        i, j = rng.randrange(m), rng.randrange(m)
        rows[i], rows[j] = rows[j], rows[i]
    return Mat.from_rows(rows)


def coframe_variant(spec: AlgebraSpec, p_mat: Mat,
                    name: str = "") -> AlgebraSpec:
    """The same structure written in the coframe f^a = sum_b P[a][b] e^b.

    Endomorphism tables conjugate as M' = (P^-1)^T M P^T for the column
    convention (A f^a) = sum_c M'[c][a] f^c; the structure constants are
    pushed through the substitution e = P^-1 f of the exterior algebra.
    """
    m = spec.dimension
    p_inv = inverse(p_mat)
    e_in_f = [
        Form.from_terms({(a,): p_inv.data[b][a] for a in range(m)})
        for b in range(m)
    ]

    structure: Dict[int, List[Tuple[int, int, Fraction]]] = {}
    old = {k: terms for k, terms in spec.structure}
    for a in range(m):
        df = Form.zero()
        for b in range(m):
            coeff = p_mat.data[a][b]
            if coeff.is_zero() or (b + 1) not in old:
                continue
            for i, j, c in old[b + 1]:
                val = GaussianRational(c.constant_value().re) * coeff
                df = df + e_in_f[i - 1].wedge(e_in_f[j - 1]).scale(val)
        terms = []
        for (u, v), val in sorted(df.terms.items()):
            terms.append((u + 1, v + 1, Fraction(val.re)))
        if terms:
            structure[a + 1] = terms

    def transform(which: str) -> List[List[Fraction]]:
        mat = Mat.from_rows(_constant_matrix(spec, which))
        out = p_inv.transpose() @ mat @ p_mat.transpose()
        return [[Fraction(x.re) for x in row] for row in out.data]

    return AlgebraSpec.create(
        m, structure, transform("i"), transform("j"),
        name=name or f"{spec.name}-coframe",
    )


# ---------------------------------------------------------------------------
# Random double complexes, generated directly as matrices.
# ---------------------------------------------------------------------------


def _random_scalar(rng: Random) -> GaussianRational:
    pool = [0, 0, 1, -1, 2, Fraction(1, 2), -Fraction(1, 2)]
    re = rng.choice(pool)
    im = rng.choice(pool) if rng.random() < 0.4 else 0
    return GaussianRational(re, im)


def _wedge_matrices(k: int, one_form: Form) -> List[Mat]:
    """Left wedge by a one-form on each graded piece of a k-generator algebra."""
    bases = [list(combinations(range(k), p)) for p in range(k + 1)]
    mats = []
    for p in range(k):
        rows = []
        for target in bases[p + 1]:
            row = []
            for source in bases[p]:
                wedged = one_form.wedge(Form.monomial(source))
                row.append(wedged.coefficient(target))
            rows.append(row)
        mats.append(Mat.from_rows(rows, ncols=len(bases[p])))
    return mats


def random_double_complex(rng: Random, k: int = 4,
                          conjugate: bool = False) -> MatrixComplex:
    """Two anticommuting square-zero differentials on a k-generator algebra.

    Left multiplication by one-forms u and v squares to zero and
    anticommutes identically, for any choice of u and v; an optional
    basis conjugation per degree hides the monomial structure without
    changing any dimension.
    """
    u = Form.from_terms({(g,): _random_scalar(rng) for g in range(k)})
    v = Form.from_terms({(g,): _random_scalar(rng) for g in range(k)})
    dims = [len(list(combinations(range(k), p))) for p in range(k + 1)]
    del_mats = _wedge_matrices(k, u)
    delj_mats = _wedge_matrices(k, v)
    if conjugate:
        basis = [random_gl(rng, d, ops=4) for d in dims]
        basis_inv = [inverse(b) for b in basis]
        del_mats = [basis[p + 1] @ del_mats[p] @ basis_inv[p]
                    for p in range(k)]
        delj_mats = [basis[p + 1] @ delj_mats[p] @ basis_inv[p]
                     for p in range(k)]
    return MatrixComplex(dims, del_mats, delj_mats)


def direct_sum_complex(a: MatrixComplex, b: MatrixComplex) -> MatrixComplex:
    assert a.top == b.top
    dims = [a.dims[p] + b.dims[p] for p in range(a.top + 1)]

    def block(x: Mat, y: Mat) -> Mat:
        rows = []
        for r in x.data:
            rows.append(list(r) + [0] * y.ncols)
        for r in y.data:
            rows.append([0] * x.ncols + list(r))
        return Mat.from_rows(rows, ncols=x.ncols + y.ncols)

    del_mats = [block(a.delta(p), b.delta(p)) for p in range(a.top)]
    delj_mats = [block(a.delta_j(p), b.delta_j(p)) for p in range(a.top)]
    return MatrixComplex(dims, del_mats, delj_mats)
