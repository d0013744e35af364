"""Linear deterministic broadcast channel and bit-level individual-secrecy codes.

The channel truncates a q-bit input word to its top n1/n2/ne bits for
receiver 1, receiver 2 and the eavesdropper.  Secrecy codes place message
bits, one-time-padded bits (xor of the two messages) and padding bits at
fixed positions of the input word; the placement depends on how the rates
compare to the eavesdropper gain.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional, Sequence

from .errors import GeometryError, InfeasibleCodeError, InputShapeError

Bits = tuple

__all__ = [
    "Bits",
    "bits_from_str",
    "bits_to_str",
    "DeterministicChannelParams",
    "channel_outputs",
    "individual_region_membership",
    "nosecrecy_region_membership",
    "joint_region_membership",
    "Layout",
    "select_layout",
    "CodeInstance",
    "layout_positions",
    "encode",
    "decode_rx1",
    "decode_rx2",
    "code_to_dict",
    "code_from_dict",
    "region_polygon",
    "deterministic_region_polygons",
]


def bits_from_str(s: str) -> Bits:
    """Parse a 0/1 string into a bit word (position 1 is the leftmost bit)."""
    if any(c not in "01" for c in s):
        raise InputShapeError(f"not a 0/1 string: {s!r}")
    return tuple(int(c) for c in s)


def bits_to_str(bits: Sequence[int]) -> str:
    return "".join(str(b) for b in bits)


def _check_bits(bits: Sequence[int], length: int, what: str) -> Bits:
    word = tuple(bits)
    if len(word) != length:
        raise InputShapeError(f"{what} must have length {length}, got {len(word)}")
    if any(b not in (0, 1) for b in word):
        raise InputShapeError(f"{what} must contain only 0/1 values")
    return word


@dataclass(frozen=True)
class DeterministicChannelParams:
    """Integer gains of the truncation channel.

    n1/n2/ne count the input bits seen by receiver 1, receiver 2 and the
    eavesdropper.  Receivers are normalized so that n1 >= n2; callers with
    the opposite ordering swap roles first.
    """

    n1: int
    n2: int
    ne: int

    def __post_init__(self):
        for name in ("n1", "n2", "ne"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"{name} must be a nonnegative integer, got {v!r}")
        if self.n1 < self.n2:
            raise ValueError(f"n1 >= n2 required, got n1={self.n1} < n2={self.n2}")

    @property
    def q(self) -> int:
        """Channel input length: the largest gain."""
        return max(self.n1, self.n2, self.ne)


def channel_outputs(x: Sequence[int], params: DeterministicChannelParams):
    """One channel use: each observer keeps the first bits of the input.

    Returns (y1, y2, z).  A gain of 0 yields the empty word.
    """
    word = _check_bits(x, params.q, "channel input")
    return word[: params.n1], word[: params.n2], word[: params.ne]


def _check_rates(r1: int, r2: int) -> None:
    if r1 < 0 or r2 < 0:
        raise ValueError(f"rates must be nonnegative, got ({r1}, {r2})")


def individual_region_membership(r1: int, r2: int, params: DeterministicChannelParams) -> bool:
    """True iff (r1, r2) is achievable with vanishing per-message leakage."""
    _check_rates(r1, r2)
    p = params
    return (
        r1 <= max(0, p.n1 - p.ne)
        and r2 <= max(0, p.n2 - p.ne)
        and r1 + r2 <= p.n1
    )


def nosecrecy_region_membership(r1: int, r2: int, params: DeterministicChannelParams) -> bool:
    """True iff (r1, r2) is achievable with no secrecy constraint."""
    _check_rates(r1, r2)
    return r2 <= params.n2 and r1 + r2 <= params.n1


def joint_region_membership(r1: int, r2: int, params: DeterministicChannelParams) -> bool:
    """True iff (r1, r2) is achievable with vanishing joint leakage."""
    _check_rates(r1, r2)
    p = params
    return r2 <= max(0, p.n2 - p.ne) and r1 + r2 <= max(0, p.n1 - p.ne)


class Layout(str, Enum):
    """Which codeword placement applies to a feasible rate pair."""

    CASE_A = "CaseA"  # r1 <= r2 <= ne
    CASE_B = "CaseB"  # r2 <= ne and r2 <= r1
    CASE_C = "CaseC"  # r1 <= ne <= r2
    CASE_D = "CaseD"  # r1 >= ne and r2 >= ne
    WIRETAP_RX1_ONLY = "WiretapRx1Only"  # ne >= n2 forces r2 = 0
    EMPTY = "Empty"  # ne >= n1: only the zero-rate code exists


def select_layout(r1: int, r2: int, params: DeterministicChannelParams) -> Layout:
    """Pick the placement case for a feasible rate pair.

    Ties with r1 == r2 <= ne go to CASE_A (the two placements coincide up
    to the empty trailing m1 block).
    """
    p = params
    if p.ne >= p.n1:
        return Layout.EMPTY
    if p.ne >= p.n2:
        return Layout.WIRETAP_RX1_ONLY
    if r1 <= r2 <= p.ne:
        return Layout.CASE_A
    if r2 <= p.ne:
        return Layout.CASE_B
    if r1 <= p.ne:
        return Layout.CASE_C
    return Layout.CASE_D


@dataclass(frozen=True)
class CodeInstance:
    """A concrete one-shot secrecy code for the truncation channel.

    pad chooses how the non-message positions are filled: "random" draws
    fresh uniform bits per codeword, "zero" pins them to 0.  Both choices
    preserve the zero-leakage guarantees (verified by the enumeration
    oracle in :mod:`bcsecrecy.leakage`).
    """

    params: DeterministicChannelParams
    r1: int
    r2: int
    pad: str = "random"

    def __post_init__(self):
        _check_rates(self.r1, self.r2)
        if self.pad not in ("random", "zero"):
            raise ValueError(f"pad must be 'random' or 'zero', got {self.pad!r}")
        if not individual_region_membership(self.r1, self.r2, self.params):
            raise InfeasibleCodeError(
                f"rate pair ({self.r1}, {self.r2}) is outside the achievable "
                f"region of {self.params}"
            )

    @property
    def layout(self) -> Layout:
        return select_layout(self.r1, self.r2, self.params)

    @property
    def random_bit_count(self) -> int:
        """Number of padding positions (codeword length minus message bits)."""
        return self.params.q - self.r1 - self.r2

    @property
    def effective_random_bits(self) -> int:
        """Random bits actually consumed per codeword (0 under zero padding)."""
        return self.random_bit_count if self.pad == "random" else 0


# Per-position descriptors: ("xor", i) carries m1[i] ^ m2[i], ("m1", i) and
# ("m2", i) carry message bits, ("rand", j) is the j-th padding position.


@lru_cache(maxsize=None)
def layout_positions(code: CodeInstance):
    """Position map of the codeword, as a tuple of per-position descriptors."""
    p, r1, r2 = code.params, code.r1, code.r2
    ne, q = p.ne, p.q
    layout = code.layout
    out = []

    def pad_to(limit):
        while len(out) < limit:
            out.append(("rand", None))

    if layout is Layout.EMPTY:
        pad_to(q)
    elif layout is Layout.WIRETAP_RX1_ONLY:
        pad_to(ne)
        out.extend(("m1", i) for i in range(r1))
        pad_to(q)
    elif layout in (Layout.CASE_A, Layout.CASE_C):
        out.extend(("xor", i) for i in range(r1))
        pad_to(ne)
        out.extend(("m2", i) for i in range(r2))
        pad_to(q)
    elif layout is Layout.CASE_B:
        out.extend(("xor", i) for i in range(r2))
        pad_to(ne)
        out.extend(("m2", i) for i in range(r2))
        out.extend(("m1", i) for i in range(r2, r1))
        pad_to(q)
    else:  # CASE_D
        out.extend(("xor", i) for i in range(ne))
        out.extend(("m2", i) for i in range(r2))
        out.extend(("m1", i) for i in range(ne, r1))
        pad_to(q)

    # Number the padding slots left to right.
    j = 0
    for k, (kind, _) in enumerate(out):
        if kind == "rand":
            out[k] = ("rand", j)
            j += 1
    assert j == code.random_bit_count and len(out) == q
    return tuple(out)


def encode_at_positions(
    positions, m1: Sequence[int], m2: Sequence[int], random_bits: Sequence[int]
) -> Bits:
    """Fill a codeword according to an explicit position map."""
    x = []
    for kind, i in positions:
        if kind == "xor":
            x.append(m1[i] ^ m2[i])
        elif kind == "m1":
            x.append(m1[i])
        elif kind == "m2":
            x.append(m2[i])
        else:
            x.append(random_bits[i])
    return tuple(x)


def encode(
    m1: Sequence[int],
    m2: Sequence[int],
    code: CodeInstance,
    random_bits: Optional[Sequence[int]] = None,
    rng: Optional[random.Random] = None,
) -> Bits:
    """Encode a message pair into one q-bit channel input.

    random_bits, when given, must supply exactly the bits the padding
    consumes (`code.effective_random_bits` of them); otherwise they are
    drawn from rng.  Zero padding consumes none.
    """
    m1 = _check_bits(m1, code.r1, "m1")
    m2 = _check_bits(m2, code.r2, "m2")
    needed = code.effective_random_bits
    if random_bits is not None:
        fill = _check_bits(random_bits, needed, "random_bits")
    elif needed == 0:
        fill = ()
    elif rng is not None:
        fill = tuple(rng.getrandbits(1) for _ in range(needed))
    else:
        raise ValueError("pad bits needed: pass random_bits or rng")
    if code.pad == "zero":
        fill = (0,) * code.random_bit_count
    return encode_at_positions(layout_positions(code), m1, m2, fill)


def decode_rx2(y2: Sequence[int], code: CodeInstance) -> Bits:
    """Recover m2 from receiver 2's observation (reads its dedicated block)."""
    if code.r2 == 0:
        return ()
    ne = code.params.ne
    if len(y2) < ne + code.r2:
        raise GeometryError(
            f"y2 has {len(y2)} bits but the m2 block ends at {ne + code.r2}"
        )
    return tuple(y2[ne : ne + code.r2])


def decode_rx1(y1: Sequence[int], code: CodeInstance) -> Bits:
    """Recover m1 from receiver 1's observation.

    Reads m2 first, cancels it from the one-time-padded block, then reads
    any remaining m1 bits directly.
    """
    if code.r1 == 0:
        return ()
    positions = layout_positions(code)
    needed = 1 + max(
        k for k, (kind, _) in enumerate(positions) if kind in ("xor", "m1", "m2")
    )
    if len(y1) < needed:
        raise GeometryError(f"y1 has {len(y1)} bits but the layout needs {needed}")
    m2 = decode_rx2(y1, code) if code.r2 else ()
    m1 = [0] * code.r1
    for k, (kind, i) in enumerate(positions):
        if kind == "xor":
            m1[i] = y1[k] ^ m2[i]
        elif kind == "m1":
            m1[i] = y1[k]
    return tuple(m1)


def code_to_dict(code: CodeInstance) -> dict:
    """Serializable description of a code ({n1, n2, ne, r1, r2, layout, pad})."""
    p = code.params
    return {
        "n1": p.n1,
        "n2": p.n2,
        "ne": p.ne,
        "r1": code.r1,
        "r2": code.r2,
        "layout": code.layout.value,
        "pad": code.pad,
    }


def code_from_dict(doc: dict) -> CodeInstance:
    """Inverse of :func:`code_to_dict`; a stated layout must match the rates."""
    try:
        params = DeterministicChannelParams(int(doc["n1"]), int(doc["n2"]), int(doc["ne"]))
        code = CodeInstance(params, int(doc["r1"]), int(doc["r2"]), doc.get("pad", "random"))
    except KeyError as exc:
        raise InputShapeError(f"missing code field: {exc}") from exc
    stated = doc.get("layout")
    if stated is not None and stated != code.layout.value:
        raise InputShapeError(
            f"stated layout {stated!r} does not match derived {code.layout.value!r}"
        )
    return code


def region_polygon(r1_max, r2_max, sum_max):
    """Vertices of {0 <= R1 <= r1_max, 0 <= R2 <= r2_max, R1+R2 <= sum_max}.

    Counterclockwise from the origin; collapses duplicates for degenerate
    shapes (segments and points).
    """
    top = min(r2_max, sum_max)
    xmax = min(r1_max, sum_max)
    upper = [
        (0, top),
        (min(r1_max, sum_max - top), top),
        (xmax, min(r2_max, sum_max - xmax)),
        (xmax, 0),
    ]
    verts = [(0, 0)]
    for v in upper:
        if v != verts[-1]:
            verts.append(v)
    if len(verts) > 1 and verts[-1] == verts[0]:
        verts.pop()
    return verts


def deterministic_region_polygons(params: DeterministicChannelParams) -> dict:
    """The three capacity regions of the channel as polygon vertex lists."""
    p = params
    a_ind = max(0, p.n1 - p.ne)
    b_ind = max(0, p.n2 - p.ne)
    s_joint = max(0, p.n1 - p.ne)
    return {
        "no_secrecy": region_polygon(p.n1, p.n2, p.n1),
        "individual": region_polygon(a_ind, b_ind, p.n1),
        "joint": region_polygon(s_joint, max(0, p.n2 - p.ne), s_joint),
    }
