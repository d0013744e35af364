"""Exact enumeration oracle for decoding error and eavesdropper leakage.

Every (message pair, padding) tuple of a finite deterministic encoder is
enumerated with its exact rational probability.  Zero leakage is decided
by exact equality of the conditional eavesdropper distributions, never by
a mutual-information tolerance; mutual informations in bits are reported
as floating-point diagnostics alongside.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import EnumerationBudgetError
from .ldbc import Bits, CodeInstance, channel_outputs, encode_at_positions, layout_positions

__all__ = [
    "DEFAULT_BUDGET_BITS",
    "EnumeratedEnsemble",
    "enumerate_encoder",
    "enumerate_code",
    "individual_leakage",
    "joint_leakage",
    "decoding_error_exact",
    "verify_code",
]

DEFAULT_BUDGET_BITS = 24


@dataclass(frozen=True)
class EnumeratedEnsemble:
    """All (m1, m2, padding, z) outcomes of an encoder, each equally likely."""

    r1: int
    r2: int
    random_bits: int
    entries: tuple

    def __post_init__(self):
        assert len(self.entries) == 2 ** (self.r1 + self.r2 + self.random_bits)

    @property
    def entry_probability(self) -> Fraction:
        return Fraction(1, 2 ** (self.r1 + self.r2 + self.random_bits))

    @property
    def z_alphabet(self) -> frozenset:
        return frozenset(z for _, _, _, z in self.entries)


def _all_words(n: int):
    return itertools.product((0, 1), repeat=n)


def enumerate_encoder(
    r1: int,
    r2: int,
    random_bits: int,
    emit_z: Callable[[Bits, Bits, Bits], Bits],
    budget_bits: int = DEFAULT_BUDGET_BITS,
) -> EnumeratedEnsemble:
    """Enumerate an arbitrary deterministic encoder's eavesdropper view."""
    total = r1 + r2 + random_bits
    if total > budget_bits:
        raise EnumerationBudgetError(
            f"enumeration needs {total} bits (> budget {budget_bits})"
        )
    entries = tuple(
        (m1, m2, rand, tuple(emit_z(m1, m2, rand)))
        for m1 in _all_words(r1)
        for m2 in _all_words(r2)
        for rand in _all_words(random_bits)
    )
    return EnumeratedEnsemble(r1, r2, random_bits, entries)


def _padded(code: CodeInstance, rand: Bits) -> Bits:
    if code.pad == "zero":
        return (0,) * code.random_bit_count
    return rand


def enumerate_code(
    code: CodeInstance,
    budget_bits: int = DEFAULT_BUDGET_BITS,
    positions=None,
) -> EnumeratedEnsemble:
    """Enumerate a channel code; positions may override the canonical layout."""
    pos = layout_positions(code) if positions is None else tuple(positions)
    ne = code.params.ne

    def emit_z(m1, m2, rand):
        x = encode_at_positions(pos, m1, m2, _padded(code, rand))
        return x[:ne]

    return enumerate_encoder(code.r1, code.r2, code.effective_random_bits, emit_z, budget_bits)


def _entropy_of_counts(counts: Counter, total: int) -> float:
    h = 0.0
    for c in counts.values():
        if c:
            p = c / total
            h -= p * math.log2(p)
    return h


def _mi_from_groups(groups: dict) -> float:
    """I(key; Z) in bits for equally likely entries grouped by key."""
    total = sum(sum(c.values()) for c in groups.values())
    marginal = Counter()
    for c in groups.values():
        marginal.update(c)
    h_z = _entropy_of_counts(marginal, total)
    h_z_given = 0.0
    for c in groups.values():
        sub = sum(c.values())
        h_z_given += (sub / total) * _entropy_of_counts(c, sub)
    return max(h_z - h_z_given, 0.0)


def _grouped(ens: EnumeratedEnsemble, key: Callable) -> dict:
    groups: dict = {}
    for entry in ens.entries:
        groups.setdefault(key(entry), Counter())[entry[3]] += 1
    return groups


def individual_leakage(ens: EnumeratedEnsemble, which: int):
    """(is_zero, bits) for one message.

    is_zero is exact: the conditional distribution of Z must be identical
    (as counts over a common denominator) for every message value.  bits
    is the floating-point mutual information diagnostic.
    """
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    groups = _grouped(ens, lambda e: e[which - 1])
    dists = list(groups.values())
    is_zero = all(d == dists[0] for d in dists[1:])
    return is_zero, _mi_from_groups(groups)


def joint_leakage(ens: EnumeratedEnsemble) -> float:
    """I(M1, M2; Z) in bits."""
    return _mi_from_groups(_grouped(ens, lambda e: (e[0], e[1])))


def decoding_error_exact(
    code: CodeInstance,
    budget_bits: int = DEFAULT_BUDGET_BITS,
    positions=None,
):
    """Exact (pe1, pe2) under uniform messages and padding.

    With a positions override the decoders read wherever the override puts
    the blocks, substituting 0 for positions the receiver cannot see; a
    broken placement therefore shows up as a positive error rate rather
    than an exception.
    """
    pos = layout_positions(code) if positions is None else tuple(positions)
    p = code.params
    total_bits = code.r1 + code.r2 + code.effective_random_bits
    if total_bits > budget_bits:
        raise EnumerationBudgetError(
            f"enumeration needs {total_bits} bits (> budget {budget_bits})"
        )
    total = 2 ** total_bits
    bad1 = bad2 = 0
    for m1 in _all_words(code.r1):
        for m2 in _all_words(code.r2):
            for rand in _all_words(code.effective_random_bits):
                x = encode_at_positions(pos, m1, m2, _padded(code, rand))
                y1, y2, _ = channel_outputs(x, p)
                if _decode_rx2_at(y2, pos, code.r2) != m2:
                    bad2 += 1
                if _decode_rx1_at(y1, pos, code.r1) != m1:
                    bad1 += 1
    return Fraction(bad1, total), Fraction(bad2, total)


def _read(word, k):
    return word[k] if k < len(word) else 0


def _decode_rx2_at(y2, positions, r2) -> Bits:
    m2 = [0] * r2
    for k, (kind, i) in enumerate(positions):
        if kind == "m2":
            m2[i] = _read(y2, k)
    return tuple(m2)


def _decode_rx1_at(y1, positions, r1) -> Bits:
    m2 = _decode_rx2_at(y1, positions, max(
        (i + 1 for kind, i in positions if kind == "m2"), default=0))
    m1 = [0] * r1
    for k, (kind, i) in enumerate(positions):
        if kind == "m1":
            m1[i] = _read(y1, k)
        elif kind == "xor":
            m1[i] = _read(y1, k) ^ m2[i]
    return tuple(m1)


def verify_code(code: CodeInstance, budget_bits: int = DEFAULT_BUDGET_BITS) -> dict:
    """One-stop report for a code: error rates plus all leakage figures."""
    ens = enumerate_code(code, budget_bits)
    pe1, pe2 = decoding_error_exact(code, budget_bits)
    zero1, bits1 = individual_leakage(ens, 1)
    zero2, bits2 = individual_leakage(ens, 2)
    return {
        "pe1": pe1,
        "pe2": pe2,
        "leak1_zero": zero1,
        "leak2_zero": zero2,
        "leak1_bits": bits1,
        "leak2_bits": bits2,
        "joint_bits": joint_leakage(ens),
    }
