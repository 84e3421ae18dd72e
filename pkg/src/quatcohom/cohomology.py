"""Cohomological invariants of a pair of anticommuting differentials.

The object of study is a graded space with two degree-one operators del
and del_J satisfying del^2 = del_J^2 = del del_J + del_J del = 0, given
concretely as exact matrices per degree.  Everything downstream (the four
cohomology theories, the six Varouchas spaces, the spectral sequence
pages) is subspace arithmetic over Q(i).

A MatrixComplex built from a hypercomplex structure carries the extra
Jbar symmetry between del and del_J; the symmetry-dependent identities
are only enforced in that case, so the class can also host arbitrary
anticommuting pairs (useful for stress-testing the E2 computations).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Dict, List, Optional, Sequence, Tuple

from .errors import InternalInconsistency, TheoremViolation
from .linalg import (
    Mat,
    Subspace,
    complement_representatives,
    rank,
    solve,
)

if TYPE_CHECKING:
    from .quaternionic import QuaternionicComplex


class MatrixComplex:
    """Two anticommuting differentials presented degree by degree.

    `dims[p]` is the dimension of the degree-p space for p in 0..top;
    `del_mats[p]` and `delj_mats[p]` map degree p to p+1 (the map out of
    the top degree is synthesized as zero).
    """

    def __init__(self, dims: Sequence[int], del_mats: Sequence[Mat],
                 delj_mats: Sequence[Mat],
                 quaternionic_dim: Optional[int] = None,
                 has_jbar_symmetry: bool = False,
                 check: bool = True):
        self.dims = tuple(dims)
        self.top = len(self.dims) - 1
        if len(del_mats) != self.top or len(delj_mats) != self.top:
            raise ValueError("expected one matrix per degree 0..top-1")
        self._del = list(del_mats)
        self._delj = list(delj_mats)
        self.quaternionic_dim = quaternionic_dim
        self.has_jbar_symmetry = has_jbar_symmetry
        self._subspaces: Dict[Tuple[str, int], Subspace] = {}
        self._pages: Optional[List[int]] = None
        self._table: Optional["CohomologyTable"] = None
        if check:
            self._check_shapes()

    def _check_shapes(self) -> None:
        for p in range(self.top):
            for name, mats in (("del", self._del), ("del_J", self._delj)):
                mat = mats[p]
                if (mat.nrows, mat.ncols) != (self.dims[p + 1], self.dims[p]):
                    raise ValueError(
                        f"{name} at degree {p} has shape {mat.nrows}x{mat.ncols}, "
                        f"expected {self.dims[p + 1]}x{self.dims[p]}"
                    )
        for p in range(self.top):
            if not (self.delta(p + 1) @ self.delta(p)).is_zero():
                raise ValueError(f"del^2 != 0 out of degree {p}")
            if not (self.delta_j(p + 1) @ self.delta_j(p)).is_zero():
                raise ValueError(f"del_J^2 != 0 out of degree {p}")
            anti = self.delta(p + 1) @ self.delta_j(p) + self.delta_j(p + 1) @ self.delta(p)
            if not anti.is_zero():
                raise ValueError(f"del and del_J do not anticommute out of degree {p}")

    @classmethod
    def from_quaternionic(cls, cx: "QuaternionicComplex") -> "MatrixComplex":
        top = cx.half
        dims = [len(cx.hol_basis(p)) for p in range(top + 1)]
        dels = [cx.partial_matrix(p) for p in range(top)]
        deljs = [cx.partial_j_matrix(p) for p in range(top)]
        return cls(dims, dels, deljs, quaternionic_dim=cx.n,
                   has_jbar_symmetry=True)

    # -- degree-indexed access, zero-padded outside 0..top ------------------

    def dim(self, p: int) -> int:
        return self.dims[p] if 0 <= p <= self.top else 0

    def delta(self, p: int) -> Mat:
        if 0 <= p < self.top:
            return self._del[p]
        return Mat.zeros(self.dim(p + 1), self.dim(p))

    def delta_j(self, p: int) -> Mat:
        if 0 <= p < self.top:
            return self._delj[p]
        return Mat.zeros(self.dim(p + 1), self.dim(p))

    def ddj(self, p: int) -> Mat:
        return self.delta(p + 1) @ self.delta_j(p)

    # -- the six building-block subspaces -----------------------------------

    def _space(self, name: str, p: int) -> Subspace:
        key = (name, p)
        if key in self._subspaces:
            return self._subspaces[key]
        if p < 0 or p > self.top:
            space = Subspace.zero(self.dim(p))
        elif name == "ker_del":
            space = Subspace.kernel(self.delta(p))
        elif name == "ker_delj":
            space = Subspace.kernel(self.delta_j(p))
        elif name == "ker_ddj":
            space = Subspace.kernel(self.ddj(p))
        elif name == "im_del":
            space = Subspace.column_space(self.delta(p - 1))
        elif name == "im_delj":
            space = Subspace.column_space(self.delta_j(p - 1))
        elif name == "im_ddj":
            space = Subspace.column_space(self.ddj(p - 2))
        else:
            raise KeyError(name)
        self._subspaces[key] = space
        return space

    def ker_del(self, p: int) -> Subspace:
        return self._space("ker_del", p)

    def ker_delj(self, p: int) -> Subspace:
        return self._space("ker_delj", p)

    def ker_ddj(self, p: int) -> Subspace:
        return self._space("ker_ddj", p)

    def im_del(self, p: int) -> Subspace:
        return self._space("im_del", p)

    def im_delj(self, p: int) -> Subspace:
        return self._space("im_delj", p)

    def im_ddj(self, p: int) -> Subspace:
        return self._space("im_ddj", p)

    # -- cohomology dimensions ----------------------------------------------

    def h_del(self, p: int) -> int:
        return self.ker_del(p).quotient_dim(self.im_del(p))

    def h_delj(self, p: int) -> int:
        return self.ker_delj(p).quotient_dim(self.im_delj(p))

    def h_bc(self, p: int) -> int:
        closed = self.ker_del(p).intersect(self.ker_delj(p))
        return closed.quotient_dim(self.im_ddj(p))

    def h_ae(self, p: int) -> int:
        exact = self.im_del(p).sum(self.im_delj(p))
        return self.ker_ddj(p).quotient_dim(exact)

    def varouchas(self, p: int) -> Tuple[int, int, int, int, int, int]:
        """The six defect dimensions (a, b, c, d, e, f) at degree p."""
        im_ddj = self.im_ddj(p)
        ker_ddj = self.ker_ddj(p)
        a = self.im_del(p).intersect(self.im_delj(p)).quotient_dim(im_ddj)
        b = self.ker_del(p).intersect(self.im_delj(p)).quotient_dim(im_ddj)
        c = ker_ddj.quotient_dim(self.ker_del(p).sum(self.im_delj(p)))
        d = self.im_del(p).intersect(self.ker_delj(p)).quotient_dim(im_ddj)
        e = ker_ddj.quotient_dim(self.im_del(p).sum(self.ker_delj(p)))
        f = ker_ddj.quotient_dim(self.ker_del(p).sum(self.ker_delj(p)))
        return a, b, c, d, e, f

    # -- the spectral sequence, both routes ---------------------------------

    def e2_formula(self, p: int) -> int:
        """dim E2 from the closed subspace description.

        Numerator: del-closed v with del_J v del-exact.  Denominator:
        del-exact forms plus del_J of del-closed forms one degree down.
        """
        dp = self.dim(p)
        top_block = self.delta(p).hstack(Mat.zeros(self.dim(p + 1), dp))
        bottom_block = self.delta_j(p).hstack(-self.delta(p))
        stacked = top_block.vstack(bottom_block)
        numerator = Subspace.from_vectors(
            [vec[:dp] for vec in Subspace.kernel(stacked).rows], dp
        )
        pushed = [self.delta_j(p - 1).apply(v) for v in self.ker_del(p - 1).rows]
        denominator = self.im_del(p).sum(Subspace.from_vectors(pushed, dp))
        return numerator.quotient_dim(denominator)

    def _class_coords(self, vector, p: int,
                      reps: Dict[int, List]) -> Tuple:
        """Coordinates of a del-closed vector in the page-one basis at p."""
        rep_list = reps.get(p, [])
        columns = list(rep_list) + list(self.im_del(p).rows)
        if not columns:
            if any(x for x in vector):
                raise InternalInconsistency(
                    "nonzero del-closed vector with no page-one expansion"
                )
            return ()
        mat = Mat.from_rows(columns, ncols=self.dim(p)).transpose()
        solution = solve(mat, vector)
        if solution is None:
            raise InternalInconsistency(
                "del_J image failed to land in ker del at the page-one level"
            )
        return solution[: len(rep_list)]

    def e2_pages_all(self) -> List[int]:
        """dim E2 for every degree, by explicit page iteration.

        Page one is modeled on complement representatives of Im del inside
        ker del; the induced differential is del_J followed by reduction to
        those representatives.  Page two is the homology of that matrix.
        This route shares no subspace formulas with e2_formula, which is
        the point: the two must agree.
        """
        if self._pages is not None:
            return self._pages
        reps: Dict[int, List] = {
            p: complement_representatives(self.ker_del(p), self.im_del(p))
            for p in range(self.top + 1)
        }
        d1: Dict[int, Mat] = {}
        for p in range(self.top + 1):
            src = reps[p]
            tgt = reps.get(p + 1, [])
            cols = [self._class_coords(self.delta_j(p).apply(v), p + 1, reps)
                    for v in src]
            rows = [[cols[c][r] for c in range(len(src))] for r in range(len(tgt))]
            d1[p] = Mat.from_rows(rows, ncols=len(src)) if rows else Mat.zeros(0, len(src))
        pages = []
        for p in range(self.top + 1):
            incoming = rank(d1[p - 1]) if p - 1 in d1 else 0
            outgoing = rank(d1[p])
            pages.append(len(reps[p]) - outgoing - incoming)
        self._pages = pages
        return pages

    def e2(self, p: int) -> int:
        by_formula = self.e2_formula(p)
        by_pages = self.e2_pages_all()[p] if 0 <= p <= self.top else 0
        if by_formula != by_pages:
            raise InternalInconsistency(
                f"E2 at degree {p}: subspace formula gives {by_formula}, "
                f"page iteration gives {by_pages}"
            )
        return by_formula

    # -- the full table ------------------------------------------------------

    def table(self) -> "CohomologyTable":
        if self._table is not None:
            return self._table
        degrees = range(self.top + 1)
        h_del = [self.h_del(p) for p in degrees]
        h_delj = [self.h_delj(p) for p in degrees]
        h_bc = [self.h_bc(p) for p in degrees]
        h_ae = [self.h_ae(p) for p in degrees]
        var = [self.varouchas(p) for p in degrees]
        e2 = [self.e2(p) for p in degrees]

        for p in degrees:
            a, b, c, d, e, f = var[p]
            if a - b + h_del[p] - h_ae[p] + c != 0:
                raise InternalInconsistency(
                    f"first exactness sum fails at degree {p}: "
                    f"{a}-{b}+{h_del[p]}-{h_ae[p]}+{c} != 0"
                )
            if d - h_bc[p] + h_del[p] - e + f != 0:
                raise InternalInconsistency(
                    f"second exactness sum fails at degree {p}: "
                    f"{d}-{h_bc[p]}+{h_del[p]}-{e}+{f} != 0"
                )
            if e2[p] > h_del[p]:
                raise InternalInconsistency(
                    f"dim E2 exceeds dim E1 at degree {p}"
                )
        if self.has_jbar_symmetry:
            if h_del != h_delj:
                raise InternalInconsistency(
                    f"h_del {h_del} and h_delJ {h_delj} differ on a "
                    "Jbar-symmetric complex"
                )
            for p in degrees:
                a, b, c, d, e, f = var[p]
                if b != d or c != e:
                    raise InternalInconsistency(
                        f"Jbar pairing b=d, c=e fails at degree {p}: {var[p]}"
                    )
                if p + 1 <= self.top:
                    if e != var[p + 1][1] or c != var[p + 1][3]:
                        raise InternalInconsistency(
                            f"degree-shift identities e(p)=b(p+1), c(p)=d(p+1) "
                            f"fail at degree {p}"
                        )
        self._table = CohomologyTable(
            top_degree=self.top,
            quaternionic_dim=self.quaternionic_dim,
            h_del=tuple(h_del),
            h_delj=tuple(h_delj),
            h_bc=tuple(h_bc),
            h_ae=tuple(h_ae),
            a=tuple(v[0] for v in var),
            b=tuple(v[1] for v in var),
            c=tuple(v[2] for v in var),
            d=tuple(v[3] for v in var),
            e=tuple(v[4] for v in var),
            f=tuple(v[5] for v in var),
            dim_e1=tuple(h_del),
            dim_e2=tuple(e2),
            delta=tuple(h_bc[p] + h_ae[p] - 2 * e2[p] for p in degrees),
        )
        return self._table


@dataclass(frozen=True)
class CohomologyTable:
    """All computed dimensions, indexed by degree 0..top_degree."""

    top_degree: int
    quaternionic_dim: Optional[int]
    h_del: Tuple[int, ...]
    h_delj: Tuple[int, ...]
    h_bc: Tuple[int, ...]
    h_ae: Tuple[int, ...]
    a: Tuple[int, ...]
    b: Tuple[int, ...]
    c: Tuple[int, ...]
    d: Tuple[int, ...]
    e: Tuple[int, ...]
    f: Tuple[int, ...]
    dim_e1: Tuple[int, ...]
    dim_e2: Tuple[int, ...]
    delta: Tuple[int, ...]

    @property
    def degrees(self) -> range:
        return range(self.top_degree + 1)

    def varouchas_row(self, p: int) -> Tuple[int, int, int, int, int, int]:
        return (self.a[p], self.b[p], self.c[p], self.d[p], self.e[p], self.f[p])


def frolicher_degenerate(table: CohomologyTable) -> bool:
    """Whether the spectral sequence degenerates at page one."""
    return table.dim_e1 == table.dim_e2


def non_hkt_degrees(table: CohomologyTable) -> Tuple[int, ...]:
    """The defect degrees h_BC + h_AE - 2 dim E2, with sanity enforcement.

    Nonnegativity holds in complete generality; for quaternionic dimension
    two the degrees in odd degree vanish and the middle one is 0 or 2.  A
    violation means the input was not what it claimed to be, or the engine
    is wrong, and either way it must not pass silently.
    """
    for p in table.degrees:
        if table.delta[p] < 0:
            raise TheoremViolation(
                f"negative defect degree {table.delta[p]} at degree {p}"
            )
    if table.quaternionic_dim == 2:
        if table.delta[1] != 0 or table.delta[3] != 0:
            raise TheoremViolation(
                f"odd defect degrees must vanish in quaternionic dimension 2, "
                f"got {table.delta[1]} and {table.delta[3]}"
            )
        if table.delta[2] not in (0, 2):
            raise TheoremViolation(
                f"middle defect degree must be 0 or 2, got {table.delta[2]}"
            )
    return table.delta


def ddj_lemma_holds(table: CohomologyTable) -> bool:
    """Whether every del-closed del_J-exact form is del del_J-exact.

    Two equivalent characterizations are evaluated: vanishing of all the
    B spaces, and the equality h_BC + h_AE = 2 dim E2 in every degree.
    """
    by_b = all(x == 0 for x in table.b)
    by_equality = all(
        table.h_bc[p] + table.h_ae[p] == 2 * table.dim_e2[p]
        for p in table.degrees
    )
    if by_b != by_equality:
        raise TheoremViolation(
            "the two characterizations of the del del_J lemma disagree: "
            f"B-spaces trivial={by_b}, dimension equality={by_equality}"
        )
    return by_b
