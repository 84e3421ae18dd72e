"""Exterior algebra over Q(i) with a differential.

A form is a sparse map from strictly increasing generator-index tuples to
nonzero Gaussian rational coefficients.  Generators are indexed from zero;
labels for display are the caller's business.  The differential is stored
by its values on generators and extended as an antiderivation, and any
algebra map can be applied through `map_gens`, optionally conjugating
coefficients first (that is how antilinear operators act).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Mapping, Sequence, Tuple

from .scalars import ONE, ZERO, GaussianRational, ScalarLike

Mono = Tuple[int, ...]


def merge_monomials(a: Mono, b: Mono) -> Tuple[int, Mono]:
    """Sorted concatenation with the sign of the sorting permutation.

    Returns (0, ()) when the two monomials share a generator.  The sign is
    the parity of the number of transpositions needed, counted by how many
    elements of `a` each element of `b` must pass.
    """
    if set(a) & set(b):
        return 0, ()
    sign = 1
    merged = list(a)
    for x in b:
        pos = len(merged)
        while pos > 0 and merged[pos - 1] > x:
            pos -= 1
        if (len(merged) - pos) % 2:
            sign = -sign
        merged.insert(pos, x)
    return sign, tuple(merged)


@dataclass(frozen=True)
class Form:
    """A finite Q(i)-combination of wedge monomials."""

    terms: Mapping[Mono, GaussianRational] = field(default_factory=dict)

    @classmethod
    def from_terms(cls, terms: Mapping[Mono, ScalarLike]) -> "Form":
        clean: Dict[Mono, GaussianRational] = {}
        for mono, coeff in terms.items():
            coeff = GaussianRational._coerce(coeff)
            if coeff is NotImplemented:
                raise TypeError(f"bad coefficient {terms[mono]!r}")
            if tuple(sorted(set(mono))) != tuple(mono):
                raise ValueError(f"monomial {mono!r} is not strictly increasing")
            if not coeff.is_zero():
                clean[tuple(mono)] = coeff
        return cls(clean)

    @classmethod
    def zero(cls) -> "Form":
        return cls({})

    @classmethod
    def generator(cls, index: int) -> "Form":
        return cls({(index,): ONE})

    @classmethod
    def monomial(cls, indices: Sequence[int], coeff: ScalarLike = 1) -> "Form":
        return cls.from_terms({tuple(indices): coeff})

    @classmethod
    def unit(cls) -> "Form":
        return cls({(): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        return len({len(m) for m in self.terms}) <= 1

    def degree(self) -> int:
        """Degree of a homogeneous form; zero for the zero form."""
        degrees = {len(m) for m in self.terms}
        if len(degrees) > 1:
            raise ValueError("form is not homogeneous")
        return degrees.pop() if degrees else 0

    def coefficient(self, mono: Sequence[int]) -> GaussianRational:
        return self.terms.get(tuple(mono), ZERO)

    def __add__(self, other: "Form") -> "Form":
        acc = dict(self.terms)
        for mono, coeff in other.terms.items():
            new = acc.get(mono, ZERO) + coeff
            if new.is_zero():
                acc.pop(mono, None)
            else:
                acc[mono] = new
        return Form(acc)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __neg__(self) -> "Form":
        return Form({m: -c for m, c in self.terms.items()})

    def scale(self, factor: ScalarLike) -> "Form":
        factor = GaussianRational._coerce(factor)
        if factor.is_zero():
            return Form.zero()
        return Form({m: factor * c for m, c in self.terms.items()})

    def __mul__(self, factor: ScalarLike) -> "Form":
        return self.scale(factor)

    __rmul__ = __mul__

    def wedge(self, other: "Form") -> "Form":
        acc: Dict[Mono, GaussianRational] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                sign, merged = merge_monomials(ma, mb)
                if not sign:
                    continue
                new = acc.get(merged, ZERO) + ca * cb * sign
                if new.is_zero():
                    acc.pop(merged, None)
                else:
                    acc[merged] = new
        return Form(acc)

    def __xor__(self, other: "Form") -> "Form":
        return self.wedge(other)

    def conj_coefficients(self) -> "Form":
        return Form({m: c.conjugate() for m, c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms):
            coeff = self.terms[mono]
            label = "1" if not mono else "e" + "".join(str(k + 1) for k in mono)
            parts.append(f"({coeff})*{label}" if mono else f"({coeff})")
        return " + ".join(parts)


class ExteriorAlgebra:
    """Lambda(V) for an n-dimensional space with a fixed differential.

    `d_images[k]` is d of generator k.  The differential is extended by
    d(a ^ b) = da ^ b + (-1)^|a| a ^ db, so on a monomial each slot
    contributes with the sign of its position.
    """

    def __init__(self, ngens: int, d_images: Sequence[Form]):
        if len(d_images) != ngens:
            raise ValueError("one differential image per generator is required")
        self.ngens = ngens
        self.d_images = [Form(dict(img.terms)) for img in d_images]

    def basis(self, degree: int) -> List[Mono]:
        """Strictly increasing index tuples, lexicographic order."""
        if degree < 0 or degree > self.ngens:
            return []
        return [tuple(c) for c in combinations(range(self.ngens), degree)]

    def d(self, form: Form) -> Form:
        total = Form.zero()
        for mono, coeff in form.terms.items():
            for pos, gen in enumerate(mono):
                rest = Form.monomial(mono[:pos] + mono[pos + 1:])
                sign = -1 if pos % 2 else 1
                total = total + (self.d_images[gen].wedge(rest)).scale(coeff * sign)
        return total

    def map_gens(self, form: Form, images: Sequence[Form],
                 conjugate_coeffs: bool = False) -> Form:
        """Extend generator -> images[generator] as an algebra map.

        With `conjugate_coeffs` the scalar coefficients are conjugated too,
        which is exactly the action of an antilinear algebra map.
        """
        if len(images) != self.ngens:
            raise ValueError("one image per generator is required")
        total = Form.zero()
        for mono, coeff in form.terms.items():
            acc = Form.unit()
            for gen in mono:
                acc = acc.wedge(images[gen])
                if acc.is_zero():
                    break
            if conjugate_coeffs:
                coeff = coeff.conjugate()
            total = total + acc.scale(coeff)
        return total

    def coords(self, form: Form, degree: int) -> Tuple[GaussianRational, ...]:
        """Coefficient vector of a degree-homogeneous form on `basis(degree)`."""
        for mono in form.terms:
            if len(mono) != degree:
                raise ValueError(f"term {mono!r} does not have degree {degree}")
        return tuple(form.coefficient(m) for m in self.basis(degree))

    def from_coords(self, coords: Sequence[ScalarLike], degree: int) -> Form:
        basis = self.basis(degree)
        if len(coords) != len(basis):
            raise ValueError("coordinate vector has the wrong length")
        return Form.from_terms(dict(zip(basis, coords)))
