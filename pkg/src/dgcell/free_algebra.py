"""Exact arithmetic in the free associative algebra Q<x1,...,xn>.

Monomials are words: tuples of 1-based generator indices, with the empty
tuple denoting the unit.  A polynomial maps words to nonzero rational
coefficients.  Generators carry a cohomological degree and a positive
integer weight; both gradings are additive on concatenation.

Everything here is immutable and pure, so values can be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Mapping, Optional, Tuple, Union

Word = Tuple[int, ...]
Scalar = Union[int, Fraction]

EMPTY_WORD: Word = ()


class AlgebraError(ValueError):
    """Base class for errors raised by the algebra layer."""


class SignatureMismatch(AlgebraError):
    """Operands belong to different signatures."""


@dataclass(frozen=True)
class GeneratorSpec:
    """One free generator: name, 1-based index, degree and weight."""

    name: str
    index: int
    cohom_degree: int
    weight: int = 1

    def __post_init__(self):
        if self.index < 1:
            raise AlgebraError(f"generator {self.name!r}: index must be >= 1")
        if self.weight < 1:
            raise AlgebraError(f"generator {self.name!r}: weight must be >= 1")


@dataclass(frozen=True)
class Signature:
    """An ordered list of generators; the list order is x1 < x2 < ... < xn."""

    generators: Tuple[GeneratorSpec, ...]

    def __post_init__(self):
        if not self.generators:
            raise AlgebraError("a signature needs at least one generator")
        names = set()
        for pos, gen in enumerate(self.generators, start=1):
            if gen.index != pos:
                raise AlgebraError(
                    f"generator {gen.name!r} has index {gen.index}, expected {pos}"
                )
            if gen.name in names:
                raise AlgebraError(f"duplicate generator name {gen.name!r}")
            names.add(gen.name)

    @staticmethod
    def make(specs: Iterable[Tuple[str, int, int]]) -> "Signature":
        """Build a signature from (name, cohom_degree, weight) triples."""
        gens = tuple(
            GeneratorSpec(name, i, deg, wt)
            for i, (name, deg, wt) in enumerate(specs, start=1)
        )
        return Signature(gens)

    @property
    def n(self) -> int:
        return len(self.generators)

    def gen(self, index: int) -> GeneratorSpec:
        if not 1 <= index <= self.n:
            raise AlgebraError(f"generator index {index} out of range 1..{self.n}")
        return self.generators[index - 1]

    def index_of(self, name: str) -> int:
        for gen in self.generators:
            if gen.name == name:
                return gen.index
        raise AlgebraError(f"unknown generator {name!r}")

    # ----- word-level gradings -----

    def check_word(self, word: Word) -> None:
        for i in word:
            if not 1 <= i <= self.n:
                raise AlgebraError(f"letter index {i} out of range 1..{self.n}")

    def cohom_degree(self, word: Word) -> int:
        """Sum of the letters' cohomological degrees; 0 for the unit."""
        return sum(self.generators[i - 1].cohom_degree for i in word)

    def weight(self, word: Word) -> int:
        """Sum of the letters' weights; 0 for the unit."""
        return sum(self.generators[i - 1].weight for i in word)

    def degree_vector(self, word: Word) -> Tuple[int, ...]:
        """Occurrence counts (m1, ..., mn) of each generator in the word."""
        counts = [0] * self.n
        for i in word:
            counts[i - 1] += 1
        return tuple(counts)

    def format_word(self, word: Word) -> str:
        """Render a word as x1^2*x2*... ; the unit prints as "1"."""
        if not word:
            return "1"
        parts = []
        k = 0
        while k < len(word):
            j = k
            while j < len(word) and word[j] == word[k]:
                j += 1
            name = self.generators[word[k] - 1].name
            parts.append(name if j - k == 1 else f"{name}^{j - k}")
            k = j
        return "*".join(parts)

    def words_up_to_weight(self, bound: int) -> Iterator[Word]:
        """All words of weight <= bound, by increasing length then letters.

        Every generator has weight >= 1, so lengths are capped by the bound
        and the enumeration is finite and duplicate-free.
        """
        if bound >= 0:
            yield EMPTY_WORD
        indices = range(1, self.n + 1)
        min_wt = min(g.weight for g in self.generators)
        max_len = bound // min_wt if min_wt else bound
        for length in range(1, max_len + 1):
            for word in product(indices, repeat=length):
                if self.weight(word) <= bound:
                    yield word


class Polynomial:
    """A finite Q-linear combination of words over a fixed signature.

    Zero coefficients are never stored; two polynomials are equal iff
    their term mappings agree.  Instances are immutable.
    """

    __slots__ = ("sig", "terms")

    def __init__(self, sig: Signature, terms: Mapping[Word, Scalar]):
        clean = {}
        for word, coeff in terms.items():
            sig.check_word(word)
            c = Fraction(coeff)
            if c:
                clean[word] = c
        object.__setattr__(self, "sig", sig)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # ----- constructors -----

    @staticmethod
    def zero(sig: Signature) -> "Polynomial":
        return Polynomial(sig, {})

    @staticmethod
    def one(sig: Signature) -> "Polynomial":
        return Polynomial(sig, {EMPTY_WORD: 1})

    @staticmethod
    def monomial(sig: Signature, word: Word, coeff: Scalar = 1) -> "Polynomial":
        return Polynomial(sig, {tuple(word): coeff})

    @staticmethod
    def generator(sig: Signature, index: int) -> "Polynomial":
        sig.gen(index)
        return Polynomial(sig, {(index,): 1})

    # ----- ring structure -----

    def _require_same_sig(self, other: "Polynomial") -> None:
        if self.sig != other.sig:
            raise SignatureMismatch("operands live over different signatures")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._require_same_sig(other)
        terms = dict(self.terms)
        for word, coeff in other.terms.items():
            acc = terms.get(word, 0) + coeff
            if acc:
                terms[word] = acc
            else:
                terms.pop(word, None)
        return Polynomial(self.sig, terms)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.sig, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._require_same_sig(other)
        terms: dict = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = u + v
                acc = terms.get(w, 0) + a * b
                if acc:
                    terms[w] = acc
                else:
                    terms.pop(w, None)
        return Polynomial(self.sig, terms)

    def __rmul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, coeff: Scalar) -> "Polynomial":
        c = Fraction(coeff)
        if not c:
            return Polynomial.zero(self.sig)
        return Polynomial(self.sig, {w: c * v for w, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.sig == other.sig
            and self.terms == other.terms
        )

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> Iterator[Word]:
        return iter(self.terms)

    def coeff(self, word: Word) -> Fraction:
        return self.terms.get(tuple(word), Fraction(0))

    # ----- gradings -----

    def homogeneous_degree(self) -> Optional[int]:
        """The common cohomological degree of all terms, or None if mixed.

        The degree of the zero polynomial is undefined; None is returned.
        """
        degs = {self.sig.cohom_degree(w) for w in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def max_weight(self) -> int:
        """Largest word weight occurring; 0 for the zero polynomial."""
        return max((self.sig.weight(w) for w in self.terms), default=0)

    # ----- printing -----

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)})"

    def __str__(self) -> str:
        return format_polynomial(self)


def format_polynomial(p: Polynomial, order=None) -> str:
    """Canonical text form, terms sorted descending by a monomial order.

    The default order is the degree order; the output re-parses to an
    equal polynomial under the expression grammar.
    """
    if p.is_zero:
        return "0"
    from . import orders  # deferred: orders depends on this module

    if order is None:
        order = orders.OrderKind.DEGREE
    words = sorted(
        p.terms, key=lambda w: orders.sort_key(order, p.sig, w), reverse=True
    )
    chunks = []
    for pos, word in enumerate(words):
        coeff = p.terms[word]
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        if not word:
            body = str(mag)
        elif mag == 1:
            body = p.sig.format_word(word)
        else:
            body = f"{mag}*{p.sig.format_word(word)}"
        if pos == 0:
            chunks.append(body if sign == "+" else f"-{body}")
        else:
            chunks.append(f" {sign} {body}")
    return "".join(chunks)
