"""Irreducible characters of symmetric groups and the class-function algebra.

Character values are computed by the classical border-strip recursion,
implemented on first-column beta numbers: removing a border strip of length
r from the diagram is the same as replacing one beta number b by b - r
(provided b - r is not already a beta number), and the height of the strip
is the number of beta numbers strictly between the two.  All arithmetic is
exact integers; rational coefficients enter only through class functions.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .partitions import Partition, partitions_of, even_partitions_of


def character_value(lam: Partition, mu: Partition) -> int:
    """Value of the irreducible character labeled lam on the class mu.

    Both must be partitions of the same k.  chi_(k)(mu) = 1 (trivial) and
    chi_(1^k)(mu) = sgn(mu) fall out of the recursion rather than being
    special-cased.
    """
    if lam.weight != mu.weight:
        raise ValueError(
            f"label {lam} and class {mu} have different weights "
            f"({lam.weight} vs {mu.weight})"
        )
    return _strip_recursion(lam.parts, mu.parts)


@lru_cache(maxsize=None)
def _strip_recursion(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    total = 0
    for stripped, height in _border_strip_removals(lam, r):
        term = _strip_recursion(stripped, rest)
        total += -term if height % 2 else term
    return total


def _border_strip_removals(lam: tuple[int, ...], r: int):
    """All ways to remove a border strip of length r, as (smaller shape, height)."""
    ell = len(lam)
    beta = [lam[i] + ell - 1 - i for i in range(ell)]
    beta_set = set(beta)
    out = []
    for b in beta:
        nb = b - r
        if nb < 0 or nb in beta_set:
            continue
        height = sum(1 for c in beta if nb < c < b)
        new_beta = sorted((beta_set - {b}) | {nb}, reverse=True)
        parts = tuple(new_beta[j] - (ell - 1 - j) for j in range(ell))
        out.append((tuple(p for p in parts if p > 0), height))
    return out


class CharacterTable:
    """Exact character table of the symmetric group on k points.

    Rows are irreducible labels and columns are class types, both in the
    canonical reverse lexicographic order, so values[0] is the trivial
    character and the last column (identity class) holds the dimensions.
    """

    __slots__ = ("k", "labels", "values", "_index")

    def __init__(self, k: int, labels, values):
        self.k = k
        self.labels: tuple[Partition, ...] = tuple(labels)
        self.values: tuple[tuple[int, ...], ...] = tuple(tuple(row) for row in values)
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    @classmethod
    def build(cls, k: int) -> "CharacterTable":
        labels = partitions_of(k)
        values = [
            tuple(character_value(lam, mu) for mu in labels) for lam in labels
        ]
        return cls(k, labels, values)

    @property
    def classes(self) -> tuple[Partition, ...]:
        # Class types of S_k are the same partitions as the labels.
        return self.labels

    def value(self, lam: Partition, mu: Partition) -> int:
        return self.values[self._index[lam]][self._index[mu]]

    def row(self, lam: Partition) -> tuple[int, ...]:
        return self.values[self._index[lam]]

    def dimension(self, lam: Partition) -> int:
        return self.values[self._index[lam]][-1]

    def __eq__(self, other):
        if isinstance(other, CharacterTable):
            return (
                self.k == other.k
                and self.labels == other.labels
                and self.values == other.values
            )
        return NotImplemented

    def __repr__(self):
        return f"CharacterTable(k={self.k}, {len(self.labels)} irreducibles)"


_TABLE_MEMO: dict[int, CharacterTable] = {}


def character_table(k: int, *, cache_dir=None) -> CharacterTable:
    """Character table for S_k, memoized per process and optionally on disk.

    A corrupt or stale disk file is ignored and rebuilt, never trusted.
    """
    table = _TABLE_MEMO.get(k)
    if table is not None:
        return table
    if cache_dir is not None:
        from . import tablecache

        table = tablecache.load_table(k, cache_dir)
    if table is None:
        table = CharacterTable.build(k)
        if cache_dir is not None:
            from . import tablecache

            tablecache.save_table(table, cache_dir)
    _TABLE_MEMO[k] = table
    return table


class ClassFunction:
    """Class function on the symmetric group on k points, stored by its exact
    coordinates in the irreducible-character basis.

    Coordinates may be ints or Fractions; zeros are dropped on construction.
    """

    __slots__ = ("k", "coeffs")

    def __init__(self, k: int, coeffs: Mapping[Partition, int | Fraction]):
        self.k = k
        cleaned: dict[Partition, int | Fraction] = {}
        for lam, c in coeffs.items():
            if lam.weight != k:
                raise ValueError(f"label {lam} does not have weight {k}")
            if c:
                cleaned[lam] = c
        self.coeffs = dict(sorted(cleaned.items(), key=lambda kv: kv[0].sort_key))

    def coefficient(self, lam: Partition) -> int | Fraction:
        return self.coeffs.get(lam, 0)

    def value_at(self, mu: Partition) -> int | Fraction:
        """Pointwise value on the class mu."""
        return sum(
            c * character_value(lam, mu) for lam, c in self.coeffs.items()
        )

    def __eq__(self, other):
        if isinstance(other, ClassFunction):
            return self.k == other.k and self.coeffs == other.coeffs
        return NotImplemented

    def __repr__(self):
        body = ", ".join(f"{lam}: {c}" for lam, c in self.coeffs.items())
        return f"ClassFunction(k={self.k}, {{{body}}})"


def irreducible(lam: Partition) -> ClassFunction:
    return ClassFunction(lam.weight, {lam: 1})


def power_sum_expansion(lam: Partition) -> ClassFunction:
    """Expansion of the power-sum symmetric function p_lam in irreducible
    characters: the coordinate of chi_mu is chi_mu(lam)."""
    k = lam.weight
    coeffs = {}
    for mu in partitions_of(k):
        v = character_value(mu, lam)
        if v:
            coeffs[mu] = v
    return ClassFunction(k, coeffs)


def inner_product(a: ClassFunction, b: ClassFunction) -> int | Fraction:
    """Standard inner product of class functions; the irreducible basis is
    orthonormal, so this is a plain dot product of coordinates."""
    if a.k != b.k:
        raise ValueError(f"degree mismatch: {a.k} vs {b.k}")
    small, large = (a, b) if len(a.coeffs) <= len(b.coeffs) else (b, a)
    return sum(c * large.coefficient(lam) for lam, c in small.coeffs.items())


def tensor_sign(a: ClassFunction) -> ClassFunction:
    """Multiply by the sign character: relabels each coordinate to the
    conjugate partition."""
    return ClassFunction(a.k, {lam.conjugate(): c for lam, c in a.coeffs.items()})


def induction_product(a: ClassFunction, b: ClassFunction) -> ClassFunction:
    """Product induced from the direct product of two symmetric groups up to
    the symmetric group on the combined points.

    On the character basis this is bilinear with structure constants given by
    the Littlewood-Richardson coefficients.
    """
    from .lr import schur_product

    k = a.k + b.k
    coeffs: dict[Partition, int | Fraction] = {}
    for lam1, c1 in a.coeffs.items():
        for lam2, c2 in b.coeffs.items():
            c12 = c1 * c2
            for nu, m in schur_product(lam1, lam2).items():
                coeffs[nu] = coeffs.get(nu, 0) + c12 * m
    return ClassFunction(k, coeffs)


def hyperoctahedral_sum(k: int) -> ClassFunction:
    """Multiplicity-free sum of the irreducibles labeled by partitions of k
    with all parts even.

    This is the character induced from the trivial character of the
    centralizer of a fixed-point-free involution on k points; k must be even.
    """
    if k % 2:
        raise ValueError(f"k must be even, got {k}")
    return ClassFunction(k, {beta: 1 for beta in even_partitions_of(k)})
