"""Compositions, words in x and y, and the duality involution.

A composition is a plain tuple of nonnegative ints.  Duality is available
three ways that must agree: through partial sums (``alpha``/``beta``),
through words (``word_dual``), and through the (a, b) parameterization
(``theorem1_form``).
"""

from __future__ import annotations

import re
from itertools import product
from typing import Iterator, Sequence

Composition = tuple


class CompositionError(ValueError):
    pass


def weight(s: Sequence[int]) -> int:
    return sum(s)


def _require_positive(s: Sequence[int], what: str) -> None:
    if any(x < 1 for x in s):
        raise CompositionError(f"{what} requires entries >= 1, got {tuple(s)}")


def alpha(s: Sequence[int]) -> tuple:
    """Partial sums of a composition."""
    _require_positive(s, "alpha")
    out = []
    total = 0
    for x in s:
        total += x
        out.append(total)
    return tuple(out)


def alpha_inv(t: Sequence[int]) -> Composition:
    """First differences; inverse of :func:`alpha` on strictly increasing sequences."""
    _require_increasing(t)
    return tuple(b - a for a, b in zip((0,) + tuple(t), t))


def _require_increasing(t: Sequence[int]) -> None:
    if not t:
        raise CompositionError("expected a nonempty strictly increasing sequence")
    if t[0] < 1 or any(a >= b for a, b in zip(t, t[1:])):
        raise CompositionError(f"not strictly increasing positive: {tuple(t)}")


def beta(t: Sequence[int]) -> tuple:
    """Complement of t[:-1] in 1..t[-1]; t[-1] stays as the maximum."""
    _require_increasing(t)
    removed = set(t[:-1])
    return tuple(k for k in range(1, t[-1] + 1) if k not in removed)


def dual(s: Sequence[int]) -> Composition:
    if not s:
        raise CompositionError("dual of the empty composition is undefined")
    return alpha_inv(beta(alpha(s)))


def encode_word(s: Sequence[int]) -> str:
    if not s:
        raise CompositionError("the empty composition has no word")
    _require_positive(s, "encode_word")
    return "".join("x" * (x - 1) + "y" for x in s)


def decode_word(w: str) -> Composition:
    if w and w[-1] != "y":
        raise CompositionError(f"word must end in y: {w!r}")
    if set(w) - {"x", "y"}:
        raise CompositionError(f"word must be over {{x, y}}: {w!r}")
    return tuple(len(block) + 1 for block in w.split("y")[:-1])


def word_dual(w: str) -> str:
    """(Jw) x^-1 y: swap letters, drop the trailing x, append y."""
    if not w or w[-1] != "y":
        raise CompositionError(f"word_dual needs a nonempty word ending in y: {w!r}")
    swapped = w.translate(str.maketrans("xy", "yx"))
    return swapped[:-1] + "y"


def coarsenings(s: Sequence[int]) -> list:
    """All compositions obtained by turning some commas of s into plus signs.

    Order is binary over the m-1 comma positions, most significant first,
    with 0 meaning "keep the comma"; the all-commas form comes first.
    """
    if not s:
        raise CompositionError("coarsenings of the empty composition are undefined")
    out = []
    for merges in product((False, True), repeat=len(s) - 1):
        parts = [s[0]]
        for x, merge in zip(s[1:], merges):
            if merge:
                parts[-1] += x
            else:
                parts.append(x)
        out.append(tuple(parts))
    return out


def theorem1_form(a: Sequence[int], b: Sequence[int]):
    """The (left, right) argument lists of the duality theorem for parameters a, b.

    left  = {1}^(a1-1), b1+1, ..., {1}^(a_{r-1}-1), b_{r-1}+1, {1}^(ar-1), br
    right = a1, {1}^(b1-1), a2+1, {1}^(b2-1), ..., ar+1, {1}^(br-1)
    """
    if not a or len(a) != len(b):
        raise CompositionError("a and b must be nonempty and of equal length")
    _require_positive(a, "theorem1_form")
    _require_positive(b, "theorem1_form")
    r = len(a)
    left = []
    for j in range(r):
        left += [1] * (a[j] - 1)
        left.append(b[j] + 1 if j < r - 1 else b[j])
    right = [a[0]] + [1] * (b[0] - 1)
    for j in range(1, r):
        right += [a[j] + 1] + [1] * (b[j] - 1)
    return tuple(left), tuple(right)


def compositions_of(w: int) -> Iterator[Composition]:
    """All compositions of w into positive parts, in binary comma order."""
    if w < 0:
        return
    if w == 0:
        yield ()
        return
    yield from coarsenings((1,) * w)[::-1]


def compositions_up_to(max_weight: int, max_length: int | None = None) -> list:
    out = []
    for w in range(1, max_weight + 1):
        for s in compositions_of(w):
            if max_length is None or len(s) <= max_length:
                out.append(s)
    return out


_TOKEN = re.compile(r"\s*(?:(\d+)|\{\s*(\d+)\s*\}\s*\^\s*(\d+))\s*")


def parse_composition(text: str) -> Composition:
    """Parse '1,1,3,1' or '{1}^3,2'; an empty string is the empty composition."""
    if not text.strip():
        return ()
    out = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].lstrip().startswith("^"):
                raise CompositionError(f"repeat needs a braced item, at position {pos}")
            raise CompositionError(f"syntax error at position {pos} in {text!r}")
        if m.group(1) is not None:
            after = m.end()
            if text[after:after + 1] == "^":
                raise CompositionError(f"repeat needs a braced item, at position {m.start(1)}")
            out.append(int(m.group(1)))
        else:
            out += [int(m.group(2))] * int(m.group(3))
        pos = m.end()
        if pos == len(text):
            return tuple(out)
        if text[pos] != ",":
            raise CompositionError(f"expected ',' at position {pos} in {text!r}")
        pos += 1


def format_composition(s: Sequence[int]) -> str:
    return ",".join(str(x) for x in s)
