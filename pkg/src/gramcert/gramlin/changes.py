"""The change subspace: representation matrices of the zero form.

For each multi-index kappa of order 2p the unordered pairs {a, b} with
a + b = kappa form a class. A matrix represents the zero form exactly
when, in every class, the "pair coordinates" sum to zero, where the pair
coordinate of {a, b} is M[a][b] off the diagonal and M[a][a]/2 on it.
Fixing the least pair of each class as distinguished, the differences
E_a0 (x)_s E_b0 - E_ak (x)_s E_bk give a basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from ..symtensor import BasisOrder, MultiIndex, enumerate_basis, multi_indices
from .matrix import RepMatrix


def change_count(n: int, p: int) -> int:
    d = comb(n + p - 1, p)
    return comb(d + 1, 2) - comb(n + 2 * p - 1, 2 * p)


def pair_classes(order: BasisOrder) -> list[tuple[MultiIndex, list[tuple[int, int]]]]:
    """(kappa, [(i, j), ...]) with i <= j basis positions, pairs sorted."""
    classes: dict = {}
    for i, a in enumerate(order):
        for j in range(i, len(order)):
            k = a + order[j]
            classes.setdefault(k, []).append((i, j))
    out = []
    for kappa in multi_indices(order.n, 2 * order.p):
        if kappa in classes:
            out.append((kappa, sorted(classes[kappa])))
    return out


@dataclass(frozen=True)
class ChangeLabel:
    kappa: MultiIndex
    first: tuple  # (alpha0, beta0)
    other: tuple  # (alphak, betak)

    def __str__(self):
        a0, b0 = self.first
        a1, b1 = self.other
        return f"E{a0.label()}*E{b0.label()} - E{a1.label()}*E{b1.label()}"


@dataclass(frozen=True)
class ChangeBasis:
    n: int
    p: int
    order: BasisOrder
    elements: tuple
    labels: tuple

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, k):
        return self.elements[k]

    def combine(self, coeffs: Sequence) -> RepMatrix:
        """sum_k coeffs[k] * Delta_k, built directly from pair positions."""
        d = len(self.order)
        zero = Fraction(0)
        m = [[zero] * d for _ in range(d)]
        for c, lab in zip(coeffs, self.labels):
            if not c:
                continue
            for (a, b), s in ((lab.first, 1), (lab.other, -1)):
                i, j = self.order.index(a), self.order.index(b)
                if i == j:
                    m[i][i] = m[i][i] + 2 * s * c
                else:
                    m[i][j] = m[i][j] + s * c
                    m[j][i] = m[i][j]
        return RepMatrix(self.order, m)


def change_basis(n: int, p: int, order: BasisOrder | None = None) -> ChangeBasis:
    order = order or enumerate_basis(n, p)
    elems, labels = [], []
    for kappa, pairs in pair_classes(order):
        i0, j0 = pairs[0]
        first = (order[i0], order[j0])
        for i, j in pairs[1:]:
            other = (order[i], order[j])
            m = RepMatrix.sym_pair(order, *first) - RepMatrix.sym_pair(order, *other)
            elems.append(m)
            labels.append(ChangeLabel(kappa, first, other))
    return ChangeBasis(n, p, order, tuple(elems), tuple(labels))


class DecompositionError(ValueError):
    def __init__(self, message: str, monomial: MultiIndex | None = None, difference=None):
        super().__init__(message)
        self.monomial = monomial
        self.difference = difference


def decompose_into_changes(m1: RepMatrix, m2: RepMatrix, basis: ChangeBasis | None = None) -> list:
    """Coefficients c with m2 = m1 + sum c_k Delta_k.

    Raises DecompositionError naming a monomial whose coefficients differ
    when the two matrices represent different forms.
    """
    if m1.order.sequence != m2.order.sequence:
        m2 = m2.reorder(m1.order)
    order = m1.order
    basis = basis or change_basis(order.n, order.p, order)
    if basis.order.sequence != order.sequence:
        raise ValueError("change basis uses a different basis order")
    diff = m2 - m1
    zero = Fraction(0)
    coeffs = []
    for kappa, pairs in pair_classes(order):
        xs = []
        for i, j in pairs:
            v = diff[i, j]
            xs.append(v / 2 if i == j else v)
        total = zero
        for x in xs:
            total = total + x
        if total:
            raise DecompositionError(
                f"forms differ on monomial {kappa.label()} (difference {2 * total})",
                kappa,
                2 * total,
            )
        coeffs.extend(-x for x in xs[1:])
    return coeffs
