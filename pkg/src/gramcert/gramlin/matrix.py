"""Representation matrices: symmetric matrices indexed by degree-p multi-indices.

Convention: the matrix M represents the form  f(x) = sum_{a,b} M[a][b] x^(a+b),
i.e. M is the usual Gram matrix in the monomial basis. Under it

    (sum_a c_a E_a)^(tensor 2)  ->  c c^T
    E_a (x)_s E_b               ->  1 at (a,b) and (b,a)   (2 on the diagonal if a == b)

and M . s t = mu(s)^T M mu(t) where mu(t)_a = (a!/p!) t_a.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..forms import Form, SosExpression
from ..symtensor import BasisOrder, MultiIndex, SymCoords, enumerate_basis
from . import linalg


@dataclass(frozen=True)
class RepMatrix:
    order: BasisOrder
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        d = len(self.order)
        if len(rows) != d or any(len(r) != d for r in rows):
            raise ValueError(f"matrix must be {d}x{d} for this basis order")
        for i in range(d):
            for j in range(i + 1, d):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"matrix is not symmetric at ({i + 1},{j + 1})")

    # -- construction -------------------------------------------------------

    @classmethod
    def zero(cls, order: BasisOrder) -> "RepMatrix":
        d = len(order)
        return cls(order, linalg.zeros(d, d))

    @classmethod
    def from_rows(cls, order: BasisOrder, rows) -> "RepMatrix":
        return cls(order, rows)

    @classmethod
    def sym_pair(cls, order: BasisOrder, alpha, beta, coeff=Fraction(1)) -> "RepMatrix":
        """coeff * E_alpha (x)_s E_beta."""
        d = len(order)
        m = linalg.zeros(d, d)
        i, j = order.index(alpha), order.index(beta)
        if i == j:
            m[i][i] = 2 * coeff
        else:
            m[i][j] = m[j][i] = coeff
        return cls(order, m)

    @classmethod
    def outer(cls, t: SymCoords, coeff=Fraction(1)) -> "RepMatrix":
        """coeff * t (x) t with t in E-coordinates."""
        c = t.coords
        return cls(t.order, [[coeff * a * b for b in c] for a in c])

    # -- basic operations -------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.order)

    def rows(self) -> list[list]:
        return [list(r) for r in self.entries]

    def entry(self, alpha, beta):
        return self.entries[self.order.index(alpha)][self.order.index(beta)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def _same(self, other: "RepMatrix"):
        if self.order.sequence != other.order.sequence:
            raise ValueError("matrices use different basis orders")

    def __add__(self, other: "RepMatrix") -> "RepMatrix":
        self._same(other)
        return RepMatrix(
            self.order,
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
        )

    def __sub__(self, other: "RepMatrix") -> "RepMatrix":
        self._same(other)
        return RepMatrix(
            self.order,
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
        )

    def __neg__(self):
        return self.scale(Fraction(-1))

    def scale(self, c) -> "RepMatrix":
        return RepMatrix(self.order, [[c * a for a in r] for r in self.entries])

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, RepMatrix):
            return NotImplemented
        return self.order.sequence == other.order.sequence and all(
            a == b for r, s in zip(self.entries, other.entries) for a, b in zip(r, s)
        )

    def __hash__(self):
        return hash((self.order.sequence, self.dim))

    def map_entries(self, fn) -> "RepMatrix":
        return RepMatrix(self.order, [[fn(a) for a in r] for r in self.entries])

    def reorder(self, order: BasisOrder) -> "RepMatrix":
        if set(order.sequence) != set(self.order.sequence):
            raise ValueError("new order is not a permutation of the old one")
        idx = [self.order.index(a) for a in order]
        return RepMatrix(order, [[self.entries[i][j] for j in idx] for i in idx])

    def is_zero(self) -> bool:
        return all(not a for r in self.entries for a in r)

    # -- pairing with tensors -------------------------------------------------

    def pair(self, s: SymCoords, t: SymCoords):
        """M . s t."""
        return linalg.dot(s.monomial_vector(), linalg.matvec(self.rows(), t.monomial_vector()))

    def apply(self, t: SymCoords) -> SymCoords:
        """The contraction M t in E-coordinates, namely M mu(t)."""
        mv = linalg.matvec(self.rows(), t.monomial_vector())
        return SymCoords(self.order, tuple(mv))

    def principal(self, idx: Sequence[int]) -> list[list]:
        """Principal submatrix on 0-based indices."""
        return [[self.entries[i][j] for j in idx] for i in idx]

    def __str__(self):
        width = max(len(str(a)) for r in self.entries for a in r)
        lines = [" ".join(str(a).rjust(width) for a in r) for r in self.entries]
        return "\n".join(lines)


def rep_to_form(m: RepMatrix, varnames=()) -> Form:
    """The degree-2p form sum M[a][b] x^(a+b)."""
    order = m.order
    terms: dict = {}
    for i, a in enumerate(order):
        for j, b in enumerate(order):
            v = m.entries[i][j]
            if v:
                k = a + b
                terms[k] = terms[k] + v if k in terms else v
    return Form(order.n, 2 * order.p, terms, varnames)


def sym_coords_of(f: Form, order: BasisOrder | None = None) -> SymCoords:
    """The tensor g with g . x^(tensor p) = f(x): coefficient c_a on E_a."""
    order = order or enumerate_basis(f.n, f.degree)
    zero = Fraction(0)
    return SymCoords(order, tuple(f.terms.get(a, zero) for a in order))


def gram_from_sos(e: SosExpression, order: BasisOrder | None = None) -> RepMatrix:
    order = order or enumerate_basis(e.n, e.p)
    out = None
    for w, q in zip(e.weights, e.squares):
        g = RepMatrix.outer(sym_coords_of(q, order), w)
        out = g if out is None else out + g
    return out if out is not None else RepMatrix.zero(order)


def identity_matrix(order: BasisOrder) -> RepMatrix:
    return RepMatrix(order, linalg.identity(len(order)))


def s_a_matrix(a) -> RepMatrix:
    """(E20 + E02)^2 + a (E20 (x)_s E02 - 2 E11^2) in the order (2,0), (0,2), (1,1)."""
    order = BasisOrder(2, 2, (MultiIndex((2, 0)), MultiIndex((0, 2)), MultiIndex((1, 1))))
    one = Fraction(1)
    zero = Fraction(0)
    return RepMatrix(
        order,
        [[one, one + a, zero], [one + a, one, zero], [zero, zero, -2 * a]],
    )
