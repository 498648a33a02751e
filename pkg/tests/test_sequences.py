import numpy
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cesnorms.enums import Cone, WeightKind
from cesnorms.sequences import (ListView, PowerView, SeqWindow, Weight,
                                domain_view, dominated_by_envelope_down,
                                dominated_by_envelope_up, envelope_down,
                                envelope_up, is_nondecreasing,
                                is_nonincreasing, quotient_norm_weighted,
                                sup_norm_weighted, target_weight_at,
                                target_weights, weight_at)
from cesnorms.utils import INF

_lists = st.lists(
    st.floats(min_value=0.0, max_value=10.0, allow_nan=False, allow_infinity=False),
    min_size=1,
    max_size=30)


def test_weight_validation():
    with pytest.raises(ValueError):
        Weight.from_values([1.0, -0.5])

    with pytest.raises(ValueError):
        Weight.from_values([1.0, numpy.inf])

    with pytest.raises(ValueError):
        Weight.power(numpy.nan)


def test_weight_dict():
    weight = Weight.from_values([0.5, 0.0, 2.0])
    data = weight.to_dict()

    assert data == {"kind": "list", "values": [0.5, 0.0, 2.0]}
    assert Weight.from_dict(data) == weight
    assert Weight.from_dict({"kind": "power", "alpha": -1}) == Weight.power(-1.0)

    with pytest.raises(ValueError):
        Weight.from_dict({"kind": "geometric"})


def test_weight_properties():
    power = Weight.power(0.5)
    values = Weight.from_values([1.0, 2.0])

    assert power.kind is WeightKind.POWER
    assert power.is_power and power.length is None
    assert values.length == 2 and not values.is_power
    assert hash(Weight.power(0.5)) == hash(power)
    assert power != values


def test_times_index():
    assert Weight.power(1.5).times_index() == Weight.power(0.5)
    numpy.testing.assert_array_equal(
        Weight.from_values([1.0, 2.0, 0.5]).times_index().values, [1.0, 4.0, 1.5])


def test_weight_roles():
    power = Weight.power(2.0)
    values = Weight.from_values([1.0, 2.0])

    assert weight_at(power, 2) == pytest.approx(0.25)
    assert target_weight_at(power, 2) == pytest.approx(4.0)
    assert weight_at(values, 3) == 0.0
    assert target_weight_at(values, 2) == 2.0
    assert target_weight_at(values, 3) == 0.0
    numpy.testing.assert_array_equal(target_weights(values, [1, 2, 3, 4]), [1.0, 2.0, 0.0, 0.0])


def test_envelopes_of_list():
    weight = Weight.from_values([3.0, 1.0, 2.0])

    numpy.testing.assert_array_equal(envelope_down(weight, 5), [3.0, 1.0, 1.0, 0.0, 0.0])
    numpy.testing.assert_array_equal(envelope_up(weight, 5), [1.0, 1.0, 2.0, 2.0, 2.0])
    numpy.testing.assert_array_equal(envelope_up(weight, 5, truncated=False), numpy.zeros(5))


def test_envelopes_of_power():
    numpy.testing.assert_array_equal(envelope_down(Weight.power(-1.0), 4), numpy.ones(4))
    numpy.testing.assert_allclose(envelope_down(Weight.power(1.0), 4), [1.0, 0.5, 1 / 3, 0.25])
    numpy.testing.assert_array_equal(envelope_up(Weight.power(1.0), 4), numpy.zeros(4))
    numpy.testing.assert_allclose(envelope_up(Weight.power(-1.0), 4), [1.0, 2.0, 3.0, 4.0])


@given(_lists)
def test_envelope_down_is_nonincreasing_minorant(values):
    weight = Weight.from_values(values)
    env = envelope_down(weight, len(values))

    assert is_nonincreasing(env)
    assert numpy.all(env <= weight.values)


@given(_lists)
def test_envelope_up_is_nondecreasing_minorant(values):
    weight = Weight.from_values(values)
    env = envelope_up(weight, len(values))

    assert is_nondecreasing(env)
    assert numpy.all(env <= weight.values)


@given(_lists, st.integers(min_value=0, max_value=2 ** 32 - 1))
@settings(max_examples=50)
def test_monotone_minorants_are_dominated(values, seed):
    rng = numpy.random.default_rng(seed)
    weight = Weight.from_values(values)
    draws = rng.uniform(0.0, 10.0, len(values))

    down = numpy.minimum.accumulate(numpy.minimum(draws, weight.values))
    up = numpy.minimum.accumulate(numpy.minimum(draws, weight.values)[::-1])[::-1]

    assert dominated_by_envelope_down(down, weight)
    assert dominated_by_envelope_up(up, weight)


def test_sup_norm_weighted():
    window = SeqWindow([1.0, -3.0, 2.0])

    assert sup_norm_weighted(window, Weight.from_values([1.0, 1.0, 1.0])) == 3.0
    assert sup_norm_weighted(window, Weight.power(1.0)) == pytest.approx(6.0)
    assert sup_norm_weighted(SeqWindow([1.0], tail=1.0), Weight.power(1.0)) == INF
    assert sup_norm_weighted(SeqWindow([1.0], tail=2.0), Weight.from_values([1.0, 0.5, 3.0])) == 6.0


def test_quotient_norm_weighted():
    assert quotient_norm_weighted(SeqWindow([0.0, 1.0]), Weight.from_values([0.0, 2.0])) == 0.5
    assert quotient_norm_weighted(SeqWindow([1.0]), Weight.from_values([0.0])) == INF
    assert quotient_norm_weighted(SeqWindow([1.0], tail=1.0), Weight.power(1.0)) == INF
    assert quotient_norm_weighted(SeqWindow([1.0], tail=1.0), Weight.power(-1.0)) == 1.0


def test_window():
    window = SeqWindow([1.0, 2.0], start=3, tail=0.5)

    assert window.end == 4
    assert len(window) == 2
    numpy.testing.assert_array_equal(window.dense(), [0.0, 0.0, 1.0, 2.0])

    with pytest.raises(ValueError):
        window.values[0] = 5.0


def test_list_view_held():
    view = ListView([1.0, 2.0], held=3.0)

    numpy.testing.assert_array_equal(view.at([0, 1, 2, 3, 9]), [0.0, 1.0, 2.0, 3.0, 3.0])
    numpy.testing.assert_array_equal(view.prefix([0, 2, 4]), [0.0, 3.0, 9.0])
    assert view.tail_harmonic([5])[0] == INF
    assert view.tail_telescoping([3])[0] == pytest.approx(1.0)


def test_list_view_finite():
    view = ListView([1.0, 1.0, 1.0])

    assert view.tail_harmonic([1])[0] == pytest.approx(1.0 + 0.5 + 1.0 / 3.0)
    assert view.tail_telescoping([1])[0] == pytest.approx(0.75)
    assert view.tail_telescoping([4])[0] == 0.0


def test_list_view_batch():
    view = ListView([[1.0, 2.0], [3.0, 4.0]], held=[0.0, 1.0])
    numpy.testing.assert_array_equal(view.prefix([1, 3]), [[1.0, 3.0], [3.0, 8.0]])


def test_power_view():
    view = PowerView(0.0, 10)

    assert view.prefix([10])[0] == 10.0
    assert view.tail_harmonic([1])[0] == INF
    assert view.tail_telescoping([1])[0] == pytest.approx(1.0, rel=1e-12)

    with pytest.raises(ValueError):
        view.prefix([11])


def test_domain_view_nondecreasing_list():
    view = domain_view(Weight.from_values([3.0, 1.0, 2.0]), Cone.NONDECR, 6)
    numpy.testing.assert_array_equal(view.at([1, 2, 3, 4, 5]), [1.0, 1.0, 2.0, 2.0, 2.0])


def test_domain_view_nonincreasing_power():
    view = domain_view(Weight.power(-2.0), Cone.NONINCR, 6)
    numpy.testing.assert_array_equal(view.at([1, 2, 3]), [1.0, 1.0, 1.0])


def test_tail_harmonic_quiet_on_zero_hold():
    with numpy.errstate(all="raise"):
        assert ListView([1.0, 2.0]).tail_harmonic([1])[0] == pytest.approx(2.0)
        assert ListView([1.0, 2.0], held=2.0).tail_harmonic([3])[0] == INF
        assert ListView([[1.0], [1.0]], held=[0.0, -1.0]).tail_harmonic([2])[:, 0].tolist() == [0.0, -INF]
