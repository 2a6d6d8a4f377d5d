"""Exact sparse linear algebra over the rationals.

Vectors are dicts from hashable labels (words, integers, ...) to nonzero
Fraction entries.  The central tool is an incremental echelon form keyed
by a pivot-priority function; it answers rank, membership, canonical
projection modulo a row space, coordinates in a basis, and kernel
computations via tagged insertions, all in exact arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Hashable, Iterable, List, Mapping, Optional

Vec = Dict[Hashable, Fraction]


def vec_sub_scaled(target: Vec, coeff: Fraction, source: Mapping) -> None:
    """target -= coeff * source, dropping entries that cancel."""
    for key, val in source.items():
        acc = target.get(key, 0) - coeff * val
        if acc:
            target[key] = acc
        else:
            target.pop(key, None)


def vec_scale(vec: Mapping, coeff: Fraction) -> Vec:
    return {k: coeff * v for k, v in vec.items()}


class SparseEchelon:
    """A row space kept in tip-echelon form.

    Every stored row is monic at its pivot label, and the pivot is the
    row's maximal label under the priority key.  Rows are not back-reduced,
    so tails may mention other pivots; `project` still computes the unique
    canonical representative supported off the pivot set.

    Optional tags record how a row combines tagged inputs, which turns
    dying insertions into kernel or dependency certificates.
    """

    def __init__(self, keyfn: Callable[[Hashable], object]):
        self.keyfn = keyfn
        self._rows: Dict[Hashable, Vec] = {}
        self._tags: Dict[Hashable, Vec] = {}

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def pivots(self) -> Iterable[Hashable]:
        return self._rows.keys()

    def row(self, pivot: Hashable) -> Vec:
        return dict(self._rows[pivot])

    def insert(self, vec: Mapping, tag: Optional[Mapping] = None) -> Optional[Vec]:
        """Reduce `vec` against the rows and store it if independent.

        Returns None when a new pivot was created.  When `vec` lies in the
        current row space the accumulated tag is returned: with all inputs
        tagged it is an exact linear dependency among them, with some
        inputs untagged it is a dependency modulo the untagged rows.
        """
        work: Vec = {k: Fraction(v) for k, v in vec.items() if v}
        tg: Vec = {k: Fraction(v) for k, v in (tag or {}).items() if v}
        while work:
            piv = max(work, key=self.keyfn)
            row = self._rows.get(piv)
            if row is None:
                lead = work[piv]
                self._rows[piv] = {k: v / lead for k, v in work.items()}
                self._tags[piv] = {k: v / lead for k, v in tg.items()}
                return None
            coeff = work[piv]
            vec_sub_scaled(work, coeff, row)
            rtag = self._tags[piv]
            if rtag:
                vec_sub_scaled(tg, coeff, rtag)
        return tg

    def residual(self, vec: Mapping) -> Vec:
        """Tip-reduce without storing; empty result means membership."""
        work: Vec = {k: Fraction(v) for k, v in vec.items() if v}
        while work:
            piv = max(work, key=self.keyfn)
            row = self._rows.get(piv)
            if row is None:
                return work
            vec_sub_scaled(work, work[piv], row)
        return work

    def contains(self, vec: Mapping) -> bool:
        return not self.residual(vec)

    def project(self, vec: Mapping) -> Vec:
        """Canonical representative of `vec` modulo the row space.

        Eliminates pivot labels from the support largest first; a row's
        tail only involves labels below its pivot, so this terminates and
        the result is the unique representative off the pivot set.  The
        map vec -> project(vec) is linear.
        """
        work: Vec = {k: Fraction(v) for k, v in vec.items() if v}
        while True:
            hot = [k for k in work if k in self._rows]
            if not hot:
                return work
            piv = max(hot, key=self.keyfn)
            vec_sub_scaled(work, work[piv], self._rows[piv])

    def solve(self, vec: Mapping) -> Optional[Vec]:
        """Coordinates of `vec` over tagged inputs, or None if outside.

        Requires every insertion to have carried a tag (unit tags give
        coordinates in the original input list).
        """
        work: Vec = {k: Fraction(v) for k, v in vec.items() if v}
        coeffs: Vec = {}
        while work:
            piv = max(work, key=self.keyfn)
            row = self._rows.get(piv)
            if row is None:
                return None
            coeff = work[piv]
            vec_sub_scaled(work, coeff, row)
            rtag = self._tags[piv]
            if rtag:
                for k, v in rtag.items():
                    acc = coeffs.get(k, 0) + coeff * v
                    if acc:
                        coeffs[k] = acc
                    else:
                        coeffs.pop(k, None)
        return coeffs


def rank_of_rows(rows: Iterable[Mapping], keyfn=None) -> int:
    """Rank of a list of sparse vectors."""
    ech = SparseEchelon(keyfn or (lambda k: k))
    for row in rows:
        ech.insert(row)
    return ech.rank


def kernel_of_rows(rows: List[Mapping], keyfn=None) -> List[Vec]:
    """Basis of { c : sum_i c[i] * rows[i] = 0 }, coordinates by row index.

    Each dying insertion certifies one kernel vector; together they are a
    basis because every vector has a fresh leading index.
    """
    ech = SparseEchelon(keyfn or (lambda k: k))
    kernel: List[Vec] = []
    for i, row in enumerate(rows):
        dep = ech.insert(row, tag={i: 1})
        if dep is not None:
            kernel.append(dep)
    return kernel
