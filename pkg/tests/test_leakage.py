from fractions import Fraction

import pytest

from bcsecrecy.errors import EnumerationBudgetError
from bcsecrecy.ldbc import (
    CodeInstance,
    DeterministicChannelParams,
    individual_region_membership,
    layout_positions,
)
from bcsecrecy.leakage import (
    decoding_error_exact,
    enumerate_code,
    enumerate_encoder,
    individual_leakage,
    joint_leakage,
    verify_code,
)


def code(n1, n2, ne, r1, r2, pad="random"):
    return CodeInstance(DeterministicChannelParams(n1, n2, ne), r1, r2, pad)


class TestEnumeration:
    def test_entry_counts(self):
        assert len(enumerate_code(code(4, 4, 1, 2, 2)).entries) == 16
        assert len(enumerate_code(code(3, 0, 0, 0, 0)).entries) == 8
        assert len(enumerate_code(code(4, 3, 1, 1, 1)).entries) == 16

    def test_probabilities_sum_to_one(self):
        ens = enumerate_code(code(4, 3, 1, 1, 1))
        assert ens.entry_probability * len(ens.entries) == Fraction(1)

    def test_budget_error_names_requirement(self):
        with pytest.raises(EnumerationBudgetError, match="30 bits"):
            enumerate_encoder(10, 10, 10, lambda m1, m2, r: (), budget_bits=24)

    def test_zero_pad_enumerates_messages_only(self):
        ens = enumerate_code(code(4, 3, 1, 1, 1, pad="zero"))
        assert len(ens.entries) == 4


class TestIndividualLeakage:
    def test_one_time_pad_hides_both(self):
        ens = enumerate_code(code(4, 4, 1, 2, 2))
        assert individual_leakage(ens, 1) == (True, 0.0)
        assert individual_leakage(ens, 2) == (True, 0.0)

    def test_exposed_message(self):
        # eavesdropper sees the message verbatim
        ens = enumerate_encoder(2, 0, 0, lambda m1, m2, r: m1)
        is_zero, bits = individual_leakage(ens, 1)
        assert not is_zero and bits == pytest.approx(2.0)

    def test_case_a_instance(self):
        ens = enumerate_code(code(4, 3, 1, 1, 1))
        assert individual_leakage(ens, 1)[0] and individual_leakage(ens, 2)[0]

    def test_which_validated(self):
        ens = enumerate_code(code(2, 1, 0, 1, 1))
        with pytest.raises(ValueError):
            individual_leakage(ens, 3)


class TestJointLeakage:
    def test_xor_bit_is_joint_information(self):
        assert joint_leakage(enumerate_code(code(4, 4, 1, 2, 2))) == pytest.approx(1.0)

    def test_no_messages_no_leakage(self):
        assert joint_leakage(enumerate_code(code(3, 2, 1, 0, 0))) == 0.0

    def test_full_exposure(self):
        ens = enumerate_encoder(2, 1, 0, lambda m1, m2, r: m1 + m2)
        assert joint_leakage(ens) == pytest.approx(3.0)

    def test_individual_joint_separation(self):
        # feasible individually, infeasible jointly: hidden one by one but
        # the xor bit is visible as joint information
        c = code(4, 4, 1, 2, 2)
        assert individual_region_membership(2, 2, c.params)
        rep = verify_code(c)
        assert rep["leak1_zero"] and rep["leak2_zero"]
        assert rep["joint_bits"] >= 1 - 1e-12


class TestDecodingError:
    def test_feasible_codes_are_zero_error(self):
        assert decoding_error_exact(code(5, 4, 2, 3, 1)) == (0, 0)

    def test_trivial_code(self):
        assert decoding_error_exact(code(2, 1, 0, 0, 0)) == (0, 0)

    def test_corrupted_layout_detected(self):
        # m2 block pushed beyond what receiver 2 observes
        c = code(4, 2, 1, 0, 1)
        positions = [("rand", 0), ("rand", 1), ("rand", 2), ("m2", 0)]
        pe1, pe2 = decoding_error_exact(c, positions=positions)
        assert pe1 == 0 and pe2 == Fraction(1, 2)

    def test_budget_checked(self):
        with pytest.raises(EnumerationBudgetError):
            decoding_error_exact(code(5, 4, 2, 3, 1), budget_bits=3)


class TestPaddingChoice:
    def test_zero_fill_preserves_secrecy_verdicts(self):
        for n1, n2, ne, r1, r2 in [(4, 4, 1, 2, 2), (4, 3, 1, 1, 1), (5, 3, 1, 2, 1),
                                   (5, 5, 2, 2, 2), (4, 2, 3, 1, 0)]:
            random_fill = verify_code(code(n1, n2, ne, r1, r2, "random"))
            zero_fill = verify_code(code(n1, n2, ne, r1, r2, "zero"))
            for key in ("pe1", "pe2", "leak1_zero", "leak2_zero"):
                assert random_fill[key] == zero_fill[key], (n1, n2, ne, r1, r2, key)
            assert random_fill["joint_bits"] == pytest.approx(zero_fill["joint_bits"])


# Measured joint-leakage values, frozen as regression fixtures (one per
# placement case).  The visible-xor count min(ne, r1, r2) matches each.
JOINT_LEAKAGE_FIXTURES = {
    (4, 3, 1, 1, 1): 1.0,   # CaseA
    (6, 4, 2, 1, 2): 1.0,   # CaseC
    (5, 3, 1, 2, 1): 1.0,   # CaseB
    (5, 3, 2, 3, 0): 0.0,   # CaseB, r2 = 0
    (4, 4, 1, 2, 2): 1.0,   # CaseD
    (6, 6, 2, 3, 3): 2.0,   # CaseD, two xor bits visible
    (4, 2, 2, 2, 0): 0.0,   # wiretap reduction
    (2, 1, 4, 0, 0): 0.0,   # eavesdropper stronger than both
}


@pytest.mark.parametrize("spec,expected", sorted(JOINT_LEAKAGE_FIXTURES.items()))
def test_joint_leakage_regression(spec, expected):
    n1, n2, ne, r1, r2 = spec
    ens = enumerate_code(code(n1, n2, ne, r1, r2))
    assert joint_leakage(ens) == pytest.approx(expected, abs=1e-12)
    assert joint_leakage(ens) == pytest.approx(min(ne, r1, r2), abs=1e-12)


def test_sweep_visible_xor_count_matches_oracle():
    # the oracle's joint figure equals the number of xor positions the
    # eavesdropper sees, computed structurally from the layout
    for n1 in range(0, 6):
        for n2 in range(0, n1 + 1):
            for ne in range(0, 6):
                params = DeterministicChannelParams(n1, n2, ne)
                for r1 in range(n1 + 1):
                    for r2 in range(n2 + 1):
                        if not individual_region_membership(r1, r2, params):
                            continue
                        c = CodeInstance(params, r1, r2)
                        visible = sum(
                            1 for k, (kind, _) in enumerate(layout_positions(c))
                            if kind == "xor" and k < ne
                        )
                        measured = joint_leakage(enumerate_code(c))
                        assert measured == pytest.approx(visible, abs=1e-12)
