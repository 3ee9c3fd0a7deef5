"""
Cyclic words and Koszul signs.

A basis cochain term is read as a word of letters around a disc: the first
output, the inputs of sector 1, the second output, the inputs of sector 2,
and so on. Every letter carries a parity:

- an input t^e is a letter of sA, parity e(n-1) + 1
- an output t^e has parity e(n-1) + n

All signs in the workbench (rotation, gluing, traces) are Koszul signs of
permutations of these letters, plus one twist (-1)^{(n+1)P(a)} on the outer
factor of a gluing, where P(a) is the total letter parity of that factor.

Terms are keyed by ``(outputs, sectors)``: a tuple of l output exponents and a
tuple of l tuples of input exponents, sector j following output j.
"""

from typing import List, Optional, Sequence, Tuple

Key = Tuple[Tuple[int, ...], Tuple[Tuple[int, ...], ...]]
Letter = Tuple[bool, int]
Word = List[Letter]


def letter_parity(letter: Letter, n: int) -> int:
    is_out, exp = letter
    return (exp * (n - 1) + (n if is_out else 1)) % 2


def word_of(key: Key) -> Word:
    outs, sectors = key
    word: Word = []
    for o, sector in zip(outs, sectors):
        word.append((True, o))
        word.extend((False, e) for e in sector)
    return word


def key_of(word: Sequence[Letter]) -> Key:
    """Inverse of word_of; the word must start with an output letter."""
    if not word or not word[0][0]:
        raise ValueError("A cochain word must start with an output letter")
    outs: List[int] = []
    sectors: List[List[int]] = []
    for is_out, exp in word:
        if is_out:
            outs.append(exp)
            sectors.append([])
        else:
            sectors[-1].append(exp)
    return tuple(outs), tuple(tuple(s) for s in sectors)


def is_normalized(key: Key) -> bool:
    """No input equals the unit t^0."""
    return all(e >= 1 for sector in key[1] for e in sector)


# ============================================================================
# GRADINGS
# ============================================================================


def ell(key: Key) -> int:
    return len(key[0])


def n_inputs(key: Key) -> int:
    return sum(len(s) for s in key[1])


def input_total(key: Key) -> int:
    return sum(sum(s) for s in key[1])


def output_total(key: Key) -> int:
    return sum(key[0])


def profile(key: Key) -> Tuple[int, ...]:
    return tuple(len(s) for s in key[1])


def word_parity(key: Key, n: int) -> int:
    """Total letter parity P of the word."""
    m = n - 1
    return (m * (output_total(key) + input_total(key)) + n * ell(key) + n_inputs(key)) % 2


def shifted_parity(key: Key, n: int) -> int:
    """Parity of the convolution degree, P + n + 1."""
    return (word_parity(key, n) + n + 1) % 2


def map_degree(key: Key, n: int) -> int:
    """Homological degree of the multilinear map with inputs in sA."""
    return (n - 1) * (output_total(key) - input_total(key)) - n_inputs(key)


def conv_degree(key: Key, n: int) -> int:
    """Degree in the convolution algebra, with the (n-2)(l-1) shift."""
    return map_degree(key, n) + (n - 2) * (ell(key) - 1) + 1


def weight(key: Key) -> int:
    """Total number of legs minus two."""
    return n_inputs(key) + ell(key) - 2


def level(key: Key) -> int:
    """Filtration level: number of outputs minus one."""
    return ell(key) - 1


# ============================================================================
# KOSZUL SIGNS
# ============================================================================


def inversion_parity(order: Sequence[int], parities: Sequence[int]) -> int:
    """
    Koszul sign exponent of listing letters in ``order``.

    Args:
        order: Letter indices in their new order
        parities: Parity of each letter, indexed by original position

    Returns:
        Number of inversions among odd letters, mod 2
    """
    odd = [i for i in order if parities[i]]
    count = 0
    for x in range(len(odd)):
        ox = odd[x]
        for y in range(x + 1, len(odd)):
            if ox > odd[y]:
                count += 1
    return count % 2


def tau_term(key: Key, n: int) -> Tuple[Key, int]:
    """
    Move the first block (first output and sector 1) to the end.

    Returns:
        (rotated key, sign exponent) where the sign is the Koszul sign of
        moving the block past the rest of the word
    """
    outs, sectors = key
    if len(outs) == 1:
        return key, 0
    first = letter_parity((True, outs[0]), n) + sum(letter_parity((False, e), n) for e in sectors[0])
    first %= 2
    sign = first * ((word_parity(key, n) - first) % 2)
    return (outs[1:] + outs[:1], sectors[1:] + sectors[:1]), sign


def rotate_to_output(word: Sequence[Letter], start: int, n: int) -> Tuple[Word, int]:
    """
    Cyclically rotate a word so that position ``start`` comes first.

    Returns:
        (rotated word, Koszul sign exponent)
    """
    if not word[start][0]:
        raise ValueError("Words must be based at an output letter")
    if start == 0:
        return list(word), 0
    parities = [letter_parity(x, n) for x in word]
    head = sum(parities[:start]) % 2
    tail = sum(parities[start:]) % 2
    return list(word[start:]) + list(word[:start]), head * tail


# ============================================================================
# GLUING
# ============================================================================


def glue(
    a_word: Sequence[Letter],
    p: int,
    b_word: Sequence[Letter],
    q: int,
    n: int,
    start: Optional[int] = None,
) -> Tuple[Optional[Word], int]:
    """
    Plug output q of b into input p of a.

    The letters of the concatenated word a.b are contracted by moving the
    input letter to the front, then the output letter right after it, and
    removing the pair. The remaining letters are listed in splice order
    a[:p], b after q (cyclically), a[p+1:], and finally rotated so that the
    letter at concatenated position ``start`` comes first.

    Args:
        a_word: Outer word
        p: Position of an input letter of a
        b_word: Inner word
        q: Position of an output letter of b
        n: Calabi-Yau dimension
        start: Concatenated position of the output letter to base the result
            at (defaults to the first letter of a)

    Returns:
        (result word, sign exponent), or (None, 0) if the exponents differ
    """
    if a_word[p][0] or not b_word[q][0]:
        raise ValueError("Gluing connects an input of the outer word to an output of the inner word")
    if a_word[p][1] != b_word[q][1]:
        return None, 0

    La, Lb = len(a_word), len(b_word)
    letters = list(a_word) + list(b_word)
    par = [letter_parity(x, n) for x in letters]
    y = La + q

    sign = ((n + 1) * sum(par[:La])) % 2
    sign += par[p] * (sum(par[:p]) % 2)
    sign += par[y] * ((sum(par[:y]) - par[p]) % 2)

    order = (
        list(range(p))
        + [La + i for i in range(q + 1, Lb)]
        + [La + i for i in range(q)]
        + list(range(p + 1, La))
    )
    if start is not None and start != order[0]:
        if start in (p, y) or not letters[start][0]:
            raise ValueError(f"Cannot base the glued word at position {start}")
        k = order.index(start)
        order = order[k:] + order[:k]
    sign += inversion_parity(order, par)
    return [letters[i] for i in order], sign % 2


def trace(
    word: Sequence[Letter], p: int, y: int, n: int, start: Optional[int] = None
) -> Tuple[Optional[Word], int]:
    """
    Contract input p with output y inside a single word.

    The two letters must be cyclically adjacent; the sign follows the same
    contraction rule as ``glue``.

    Returns:
        (result word, sign exponent), or (None, 0) if the exponents differ

    Raises:
        ValueError: If the letters are not adjacent or have the wrong kinds
    """
    L = len(word)
    if word[p][0] or not word[y][0]:
        raise ValueError("A trace connects an input letter to an output letter")
    if (p - y) % L not in (1, L - 1):
        raise ValueError(f"Trace letters {p} and {y} are not adjacent")
    if word[p][1] != word[y][1]:
        return None, 0
    par = [letter_parity(x, n) for x in word]
    sign = par[p] * (sum(par[:p]) % 2)
    sign += par[y] * ((sum(par[:y]) - (par[p] if p < y else 0)) % 2)
    order = [i for i in range(L) if i not in (p, y)]
    if start is not None and start != order[0]:
        if start in (p, y) or not word[start][0]:
            raise ValueError(f"Cannot base the traced word at position {start}")
        k = order.index(start)
        order = order[k:] + order[:k]
    elif not word[order[0]][0]:
        raise ValueError("The traced word must be based at an output letter")
    sign += inversion_parity(order, par)
    return [word[i] for i in order], sign % 2
