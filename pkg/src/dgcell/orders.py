"""Linear orders on monomials of a free algebra, and leading terms.

Two orders are provided, both induced by the base order
1 < x1 < x2 < ... < xn:

* right lexicographic: words are compared letter by letter starting from
  the rightmost position, with the shorter word padded on the left by the
  minimal symbol 1;
* degree order: degree vectors (occurrence counts) are compared right
  lexicographically, ties broken by right lex on the words themselves.

Both orders are total and preserved by left multiplication on monomials,
which `check_left_mul_preserved` verifies exhaustively up to a length
bound.  The leading term of a polynomial under an order is its "tip".
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from .free_algebra import AlgebraError, Polynomial, Signature, Word
from .linalg import SparseEchelon


class OrderKind(enum.Enum):
    RIGHT_LEX = "rightlex"
    DEGREE = "degord"


class ZeroPolynomialError(AlgebraError):
    pass


@dataclass(frozen=True)
class TipTerm:
    """Order-maximal word of a polynomial together with its coefficient."""

    word: Word
    coefficient: Fraction


def sort_key(order: OrderKind, sig: Signature, word: Word):
    """A sort key realizing the order: key(u) < key(v) iff u < v.

    Reversing a word turns rightmost-first comparison into ordinary tuple
    comparison; a proper suffix then sorts first, which matches padding
    shorter words on the left with the minimal symbol.
    """
    if order is OrderKind.RIGHT_LEX:
        return word[::-1]
    if order is OrderKind.DEGREE:
        return (sig.degree_vector(word)[::-1], word[::-1])
    raise AlgebraError(f"unknown order {order!r}")


def compare(order: OrderKind, sig: Signature, u: Word, v: Word) -> int:
    """-1, 0 or +1 according to u < v, u == v, u > v."""
    sig.check_word(u)
    sig.check_word(v)
    ku, kv = sort_key(order, sig, u), sort_key(order, sig, v)
    if ku < kv:
        return -1
    if ku > kv:
        return 1
    return 0


def tip(order: OrderKind, f: Polynomial) -> TipTerm:
    """The largest word occurring in f, with its coefficient."""
    if f.is_zero:
        raise ZeroPolynomialError("TIP undefined for 0")
    word = max(f.terms, key=lambda w: sort_key(order, f.sig, w))
    return TipTerm(word, f.terms[word])


def check_left_mul_preserved(
    order: OrderKind, sig: Signature, length_bound: int
) -> Optional[Tuple[Word, Word]]:
    """Verify tip(v) <= tip(u*v) for all monomials with len(u)+len(v) <= bound.

    Returns None on success, else the first violating pair (u, v).
    """
    if length_bound < 1:
        raise AlgebraError("length_bound must be >= 1")
    indices = range(1, sig.n + 1)

    def words_of_length_at_most(k: int):
        from itertools import product

        yield ()
        for length in range(1, k + 1):
            yield from product(indices, repeat=length)

    for u in words_of_length_at_most(length_bound):
        for v in words_of_length_at_most(length_bound - len(u)):
            kv = sort_key(order, sig, v)
            kuv = sort_key(order, sig, u + v)
            if kv > kuv:
                return (u, v)
    return None


def tip_set(order: OrderKind, subspace: Sequence[Polynomial]) -> Set[Word]:
    """Achievable tips { tip(f) : 0 != f in span(subspace) }.

    The spanning set is triangularized against the order; the surviving
    pivot words are exactly the achievable tips, and their number equals
    the dimension of the span.
    """
    ech = echelonize(order, subspace)
    return set(ech.pivots())


def echelonize(order: OrderKind, polys: Sequence[Polynomial]) -> SparseEchelon:
    """Tip-echelon form of the span of `polys`.

    Rows are inserted largest tip first so that most insertions create a
    fresh pivot without any reduction work.
    """
    items: List[Tuple[Polynomial, object]] = []
    sig = None
    for p in polys:
        if p.is_zero:
            continue
        if sig is None:
            sig = p.sig
        elif sig != p.sig:
            raise AlgebraError("mixed signatures in spanning set")
        items.append((p, sort_key(order, sig, tip(order, p).word)))
    items.sort(key=lambda pair: pair[1], reverse=True)
    keyfn = (lambda w: sort_key(order, sig, w)) if sig is not None else (lambda w: w)
    ech = SparseEchelon(keyfn)
    for p, _ in items:
        ech.insert(p.terms)
    return ech


def echelon_basis(
    order: OrderKind, sig: Signature, polys: Sequence[Polynomial]
) -> List[Polynomial]:
    """Triangular basis of the span, sorted by decreasing tip."""
    ech = echelonize(order, polys)
    words = sorted(ech.pivots(), key=lambda w: sort_key(order, sig, w), reverse=True)
    return [Polynomial(sig, ech.row(w)) for w in words]
