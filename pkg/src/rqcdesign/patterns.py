"""Two-qubit gate patterns, cycle sequences, and circuit layouts.

A full pattern assignment is one bit per F1 row (the A layer; B is its
complement), one bit per F2 row (the C layer; D complements), and one swap
bit that exchanges which family pair plays the A/B role in the cycle
sequence.  Bit 0 selects the even-offset bonds of a row, bit 1 the odd ones.
The reference design used on Google-style processors is A all-ones, C
all-zeros, swap 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .errors import CapacityExceededError, InvalidSpec
from .lattice import Family, Lattice

BASE_SEQUENCE = "ABCDCDAB"
LETTERS = "ABCD"

DEFAULT_ENUM_CAP = 40  # max m + n + 1 bits for exhaustive enumeration


class PatternCode(NamedTuple):
    a_bits: tuple[int, ...]
    c_bits: tuple[int, ...]
    order_swap: int

    def text(self) -> str:
        a = "".join(str(b) for b in self.a_bits)
        c = "".join(str(b) for b in self.c_bits)
        return f"A={a or '-'} C={c or '-'} swap={self.order_swap}"


def parse_bits(text: str) -> tuple[int, ...]:
    """Parse a pattern bitstring like '110010' ('-' stands for no rows)."""
    if text in ("", "-"):
        return ()
    if any(ch not in "01" for ch in text):
        raise InvalidSpec(f"pattern bits must be 0/1, got {text!r}")
    return tuple(int(ch) for ch in text)


def baseline_code(lattice: Lattice) -> PatternCode:
    """Google-style reference pattern: A all-ones, C all-zeros, no swap."""
    return PatternCode((1,) * lattice.m, (0,) * lattice.n, 0)


def validate_code(lattice: Lattice, code: PatternCode) -> None:
    if len(code.a_bits) != lattice.m:
        raise InvalidSpec(
            f"a_bits has {len(code.a_bits)} bits, lattice has m={lattice.m} rows"
        )
    if len(code.c_bits) != lattice.n:
        raise InvalidSpec(
            f"c_bits has {len(code.c_bits)} bits, lattice has n={lattice.n} rows"
        )
    if code.order_swap not in (0, 1):
        raise InvalidSpec("order_swap must be 0 or 1")


def pattern_layer(
    lattice: Lattice, family: Family, bits: tuple[int, ...], complement: bool = False
) -> tuple[int, ...]:
    """Bond ids of one layer: per row, the even (bit 0) or odd (bit 1) bonds.

    complement=True flips every row choice, turning A into B and C into D.
    """
    rows = lattice.rows_f1 if family == "F1" else lattice.rows_f2
    if len(bits) != len(rows):
        raise InvalidSpec(
            f"{family} bit vector has {len(bits)} bits for {len(rows)} rows"
        )
    want = {row: bit ^ int(complement) for row, bit in zip(rows, bits)}
    return tuple(
        b.id for b in lattice.bonds if b.family == family and b.parity == want[b.row]
    )


def code_count(lattice: Lattice) -> int:
    return 2 ** (lattice.m + lattice.n + 1)


def code_from_index(lattice: Lattice, index: int) -> PatternCode:
    """Code at a given position of the enumeration order (swap-major, then
    a_bits, then c_bits, each lexicographic)."""
    m, n = lattice.m, lattice.n
    total = code_count(lattice)
    if not 0 <= index < total:
        raise InvalidSpec(f"code index {index} out of range 0..{total - 1}")
    c_val = index & ((1 << n) - 1)
    a_val = (index >> n) & ((1 << m) - 1)
    swap = index >> (m + n)
    a_bits = tuple((a_val >> (m - 1 - i)) & 1 for i in range(m))
    c_bits = tuple((c_val >> (n - 1 - i)) & 1 for i in range(n))
    return PatternCode(a_bits, c_bits, swap)


def code_index(lattice: Lattice, code: PatternCode) -> int:
    validate_code(lattice, code)
    a_val = sum(bit << (lattice.m - 1 - i) for i, bit in enumerate(code.a_bits))
    c_val = sum(bit << (lattice.n - 1 - i) for i, bit in enumerate(code.c_bits))
    return (code.order_swap << (lattice.m + lattice.n)) | (a_val << lattice.n) | c_val


def enumerate_codes(
    lattice: Lattice, cap: int = DEFAULT_ENUM_CAP
) -> Iterator[PatternCode]:
    """Yield all 2^(m+n+1) pattern codes in deterministic lexicographic order."""
    bits = lattice.m + lattice.n + 1
    if bits > cap:
        raise CapacityExceededError(
            f"enumeration needs 2^{bits} codes, above the cap of 2^{cap}"
        )
    # Cache the inner tuples when small; itertools.product per a_bits value
    # would rebuild 2^n tuples for every one of the 2^m outer values.
    if lattice.n <= 16:
        c_values = list(itertools.product((0, 1), repeat=lattice.n))
        for swap in (0, 1):
            for a_bits in itertools.product((0, 1), repeat=lattice.m):
                for c_bits in c_values:
                    yield PatternCode(a_bits, c_bits, swap)
    else:
        for swap in (0, 1):
            for a_bits in itertools.product((0, 1), repeat=lattice.m):
                for c_bits in itertools.product((0, 1), repeat=lattice.n):
                    yield PatternCode(a_bits, c_bits, swap)


@dataclass(frozen=True)
class CycleSequence:
    """Letter sequence of a circuit: a prefix of repeating ABCDCDAB, plus an
    explicit tail word when the depth is not divisible by 4."""

    letters: str

    def __post_init__(self) -> None:
        d = len(self.letters)
        if d < 4:
            raise InvalidSpec("cycle sequences start at depth 4")
        if any(ch not in LETTERS for ch in self.letters):
            raise InvalidSpec(f"invalid letters in sequence {self.letters!r}")
        fixed = 4 * (d // 4)
        if self.letters[:fixed] != _standard(fixed):
            raise InvalidSpec("sequence prefix must follow the ABCDCDAB repetition")
        for i, (x, y) in enumerate(zip(self.letters, self.letters[1:])):
            # a repeat is tolerated only at the prefix/tail junction, for
            # sequences built with allow_junction_repeat
            if x == y and i != fixed - 1:
                raise InvalidSpec(f"repeated letter {x}{y} in sequence")

    @property
    def depth(self) -> int:
        return len(self.letters)

    @property
    def tail(self) -> str:
        return self.letters[4 * (len(self.letters) // 4):]


def _standard(d: int) -> str:
    reps = -(-d // len(BASE_SEQUENCE))
    return (BASE_SEQUENCE * reps)[:d]


def cycle_sequence(depth: int) -> CycleSequence:
    """The standard sequence for a depth divisible by 4 (e.g. 12 -> ABCDCDABABCD)."""
    if depth < 4 or depth % 4:
        raise InvalidSpec(
            f"depth {depth} is not a positive multiple of 4; use tail_sequences"
        )
    return CycleSequence(_standard(depth))


def tail_sequences(depth: int, allow_junction_repeat: bool = False) -> tuple[CycleSequence, ...]:
    """All sequences for a depth with remainder r = depth mod 4 in {1, 2, 3}.

    The first 4*floor(depth/4) cycles are the standard sequence; the last r
    cycles run over every word with no letter equal to its predecessor.  The
    no-repeat rule also applies at the junction with the fixed prefix unless
    allow_junction_repeat is set.
    """
    r = depth % 4
    if depth < 5 or r == 0:
        raise InvalidSpec(f"tail sequences need depth >= 5 with depth mod 4 != 0")
    prefix = _standard(depth - r)
    out = []
    for word in itertools.product(LETTERS, repeat=r):
        if any(x == y for x, y in zip(word, word[1:])):
            continue
        if not allow_junction_repeat and word[0] == prefix[-1]:
            continue
        out.append(CycleSequence(prefix + "".join(word)))
    return tuple(out)


@dataclass(frozen=True)
class CircuitLayout:
    """Materialized circuit: the bond ids gated in each cycle."""

    lattice: Lattice
    code: PatternCode
    sequence: CycleSequence
    cycles: tuple[tuple[int, ...], ...]

    @property
    def depth(self) -> int:
        return len(self.cycles)


def letter_layers(lattice: Lattice, code: PatternCode) -> dict[str, tuple[int, ...]]:
    """Bond ids played when each letter fires, with the swap bit applied
    (swap 1 hands the F2 layers to letters A/B and the F1 layers to C/D)."""
    validate_code(lattice, code)
    f1 = {
        "x": pattern_layer(lattice, "F1", code.a_bits, complement=False),
        "y": pattern_layer(lattice, "F1", code.a_bits, complement=True),
    }
    f2 = {
        "x": pattern_layer(lattice, "F2", code.c_bits, complement=False),
        "y": pattern_layer(lattice, "F2", code.c_bits, complement=True),
    }
    first, second = (f1, f2) if code.order_swap == 0 else (f2, f1)
    return {"A": first["x"], "B": first["y"], "C": second["x"], "D": second["y"]}


def assemble_circuit(
    lattice: Lattice, code: PatternCode, seq: CycleSequence
) -> CircuitLayout:
    layers = letter_layers(lattice, code)
    cycles = tuple(layers[letter] for letter in seq.letters)
    return CircuitLayout(lattice=lattice, code=code, sequence=seq, cycles=cycles)
