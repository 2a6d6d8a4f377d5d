"""Finite-cell differential graded algebras.

A finite-cell DG algebra is a free graded algebra with a differential
given on generators, subject to four construction invariants:

* triangularity: d(x_i) only uses generators of index < i;
* grading: d(x_i) is homogeneous of cohomological degree |x_i| + 1;
* weight admissibility: no word of d(x_i) weighs more than x_i, so the
  span of words of weight <= N is a subcomplex for every N;
* d(d(x_i)) = 0 for every generator, hence d^2 = 0 by the Leibniz rule.

The differential extends to words by the graded Leibniz rule with the
Koszul sign (-1)^(degree of the prefix).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Tuple

from .free_algebra import (
    AlgebraError,
    Polynomial,
    Signature,
    SignatureMismatch,
    Word,
)
from .orders import OrderKind, sort_key, tip


class DGAValidationError(AlgebraError):
    """A construction invariant failed; `generator` names the culprit."""

    def __init__(self, generator: str, message: str):
        super().__init__(f"generator {generator!r}: {message}")
        self.generator = generator


class TriangularityViolation(DGAValidationError):
    pass


class DegreeViolation(DGAValidationError):
    pass


class WeightViolation(DGAValidationError):
    pass


class DSquaredNonzero(DGAValidationError):
    pass


@dataclass(frozen=True)
class FiniteCellDGA:
    """A validated finite-cell DG algebra.

    `differential` maps generator indices to d(x_i); indices with zero
    differential may be omitted.  Use `build_dga` to construct.
    """

    sig: Signature
    differential: Tuple[Tuple[int, Polynomial], ...]

    def d_of_generator(self, index: int) -> Polynomial:
        for i, p in self.differential:
            if i == index:
                return p
        return Polynomial.zero(self.sig)

    def d(self, p: Polynomial) -> Polynomial:
        """Leibniz extension of the differential to polynomials."""
        if p.sig != self.sig:
            raise SignatureMismatch("polynomial over a different signature")
        dmap = {i: q for i, q in self.differential}
        degs = [g.cohom_degree for g in self.sig.generators]
        acc: Dict[Word, object] = {}
        for word, coeff in p.terms.items():
            prefix_deg = 0
            for j, letter in enumerate(word):
                dgen = dmap.get(letter)
                if dgen is not None and not dgen.is_zero:
                    sign = -1 if prefix_deg % 2 else 1
                    left, right = word[:j], word[j + 1 :]
                    for mid, c in dgen.terms.items():
                        w = left + mid + right
                        val = acc.get(w, 0) + sign * coeff * c
                        if val:
                            acc[w] = val
                        else:
                            acc.pop(w, None)
                prefix_deg += degs[letter - 1]
        return Polynomial(self.sig, acc)


def build_dga(
    sig: Signature, differential_rules: Mapping[object, Polynomial]
) -> FiniteCellDGA:
    """Validate the rules and assemble a FiniteCellDGA.

    Rules may be keyed by generator name or index; missing generators get
    zero differential.  Raises a DGAValidationError subclass naming the
    offending generator when an invariant fails.
    """
    dmap: Dict[int, Polynomial] = {}
    for key, poly in differential_rules.items():
        index = sig.index_of(key) if isinstance(key, str) else int(key)
        gen = sig.gen(index)
        if poly.sig != sig:
            raise SignatureMismatch(f"d {gen.name}: polynomial over a different signature")
        if poly.is_zero:
            continue
        dmap[index] = poly

    for index in sorted(dmap):
        gen = sig.gen(index)
        poly = dmap[index]
        for word in poly.support():
            if any(letter >= index for letter in word):
                raise TriangularityViolation(
                    gen.name, "differential uses generators of index >= its own"
                )
        deg = poly.homogeneous_degree()
        if deg is None or deg != gen.cohom_degree + 1:
            raise DegreeViolation(
                gen.name,
                f"differential must be homogeneous of degree {gen.cohom_degree + 1}",
            )
        for word in poly.support():
            if sig.weight(word) > gen.weight:
                raise WeightViolation(
                    gen.name,
                    f"word {sig.format_word(word)} outweighs the generator",
                )

    dga = FiniteCellDGA(sig, tuple(sorted(dmap.items())))
    for index in sorted(dmap):
        if not dga.d(dmap[index]).is_zero:
            raise DSquaredNonzero(sig.gen(index).name, "d(d x) != 0")
    return dga


def check_d_squared(
    A: FiniteCellDGA, samples: int = 25, seed: int = 0
) -> Optional[str]:
    """Verify d^2 = 0 on every generator, plus random word spot checks.

    Returns None on success, else the name of an offending generator.
    Leibniz makes the generator check sufficient; the sampled words guard
    the extension code itself.
    """
    for gen in A.sig.generators:
        if not A.d(A.d(Polynomial.generator(A.sig, gen.index))).is_zero:
            return gen.name
    rng = random.Random(seed)
    n = A.sig.n
    for _ in range(samples):
        word = tuple(rng.randint(1, n) for _ in range(rng.randint(0, 6)))
        p = Polynomial.monomial(A.sig, word)
        if not A.d(A.d(p)).is_zero:
            return A.sig.format_word(word)
    return None


def check_tip_decreasing(
    A: FiniteCellDGA, order: OrderKind, weight_bound: int
) -> Optional[Word]:
    """Check tip(d f) < tip(f) for every word f of weight <= the bound.

    Words with d f = 0 are skipped.  Returns None on success, else the
    first violating word.  Checking monomials suffices: d is linear and
    every word of d(f) for a longer f arises inside some such expansion.
    """
    for word in A.sig.words_up_to_weight(weight_bound):
        if not word:
            continue
        df = A.d(Polynomial.monomial(A.sig, word))
        if df.is_zero:
            continue
        t = tip(order, df).word
        if not sort_key(order, A.sig, t) < sort_key(order, A.sig, word):
            return word
    return None
