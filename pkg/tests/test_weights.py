# -*- coding: utf-8 -*-

import io
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loopsoup import weights
from loopsoup.exceptions import BadSubset, NotIntegrable, ParseError
from loopsoup.weights import WeightMatrix


def test_weight_matrix_is_read_only():
    Q = WeightMatrix([[0.1, 0.2], [0.3, 0.4]])
    assert Q.n == 2
    assert Q.entries.dtype == complex
    with pytest.raises(ValueError):
        Q.entries[0, 0] = 1


@pytest.mark.parametrize('entries', [[], [[1, 2]], [1, 2], [[1, 2], [3]]])
def test_weight_matrix_needs_square(entries):
    with pytest.raises(ValueError):
        WeightMatrix(entries)


def test_weight_matrix_equality():
    a = WeightMatrix([[0.5]])
    assert a == WeightMatrix([[0.5 + 0j]])
    assert a != WeightMatrix([[0.25]])
    assert hash(a) == hash(WeightMatrix([[0.5]]))


def test_spectral_radius_uses_moduli(example):
    Q = example('hermitian2')
    assert weights.spectral_radius_abs(Q) == pytest.approx(0.5)
    # Q itself has eigenvalues +-0.5 too; a sign flip leaves |Q| alone.
    flipped = WeightMatrix(-Q.entries)
    assert weights.spectral_radius_abs(flipped) == pytest.approx(0.5)


def test_integrability_boundary():
    assert weights.is_integrable(WeightMatrix([[0.999]]))
    assert not weights.is_integrable(WeightMatrix([[1.0]]))
    assert not weights.is_integrable(WeightMatrix([[0.9999]]), margin=1e-3)
    with pytest.raises(NotIntegrable):
        weights.require_integrable(WeightMatrix([[-1.0]]))
    rho = weights.require_integrable(WeightMatrix([[0.25]]))
    assert rho == pytest.approx(0.25)


def test_green_singleton(example):
    G = weights.green(example('singleton'))
    assert G.entries[0, 0] == pytest.approx(2.0)
    assert G.det_I_minus_Q == pytest.approx(0.5)
    assert G.det == pytest.approx(2.0)


def test_green_hermitian(example):
    Q = example('hermitian2')
    G = weights.green(Q)
    q12 = 0.3 + 0.4j
    expected = np.array([[1, q12], [q12.conjugate(), 1]]) / 0.75
    assert np.allclose(G.entries, expected, rtol=0, atol=1e-14)
    assert G.det_I_minus_Q == pytest.approx(0.75)
    assert G.is_hermitian()


def test_green_residual(example):
    Q = example('substochastic3')
    G = weights.green(Q)
    eye = np.eye(3)
    assert np.allclose((eye - Q.entries) @ G.entries, eye, atol=1e-12)
    assert G.det_I_minus_Q == pytest.approx(np.linalg.det(eye - Q.entries))


def test_green_rejects_non_integrable():
    with pytest.raises(NotIntegrable):
        weights.green(WeightMatrix([[1.0]]))


def test_green_zero_weights(example):
    G = weights.green(example('zero'))
    assert np.array_equal(G.entries, np.eye(3))
    assert G.det_I_minus_Q == 1


def test_hermitian_check(example):
    assert weights.is_hermitian(example('hermitian2'))
    assert weights.is_hermitian(example('singleton'))
    assert not weights.is_hermitian(example('substochastic3'))


def test_samplable(example):
    assert weights.is_samplable(example('substochastic3'))
    assert weights.is_samplable(example('zero'))
    assert not weights.is_samplable(example('hermitian2'))
    assert not weights.is_samplable(WeightMatrix([[0.6, 0.6], [0, 0.1]]))


def test_restrict_keeps_vertex_order(example):
    Q = example('substochastic3')
    R = weights.restrict(Q, [2, 0])
    assert np.array_equal(R.entries, Q.entries[np.ix_([0, 2], [0, 2])])


@pytest.mark.parametrize('vertices', [[], [0, 0], [3], [-1]])
def test_restrict_bad_subset(example, vertices):
    with pytest.raises(BadSubset):
        weights.restrict(example('substochastic3'), vertices)


def test_permuted(example):
    Q = example('substochastic3')
    P = Q.permuted([2, 0, 1])
    assert P[0, 0] == Q[2, 2]
    assert P[0, 1] == Q[2, 0]
    assert P[1, 2] == Q[0, 1]
    with pytest.raises(BadSubset):
        Q.permuted([0, 1])


def test_green_diagonal(example):
    Q = example('hermitian2')
    assert weights.green_diagonal(Q, [0, 1], 0) == pytest.approx(4 / 3)
    assert weights.green_diagonal(Q, [1], 1) == pytest.approx(1.0)
    with pytest.raises(BadSubset):
        weights.green_diagonal(Q, [1], 0)


def test_determinant_chain_hermitian(example):
    chain = weights.determinant_chain(example('hermitian2'))
    assert chain == pytest.approx([4 / 3, 1.0])


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 5), rho=st.floats(0.05, 0.9),
       seed=st.integers(0, 2 ** 32 - 1), hermitian=st.booleans())
def test_determinant_chain_product(n, rho, seed, hermitian):
    rng = np.random.default_rng(seed)
    Q = weights.random_integrable(n, rho, rng, hermitian=hermitian)
    G = weights.green(Q)
    chain = np.prod(weights.determinant_chain(Q))
    assert abs(chain - G.det) <= 1e-10 * abs(G.det)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 5), rho=st.floats(0.05, 0.95),
       seed=st.integers(0, 2 ** 32 - 1), hermitian=st.booleans(),
       mask=st.integers(1, 2 ** 5 - 1))
def test_restrict_lowers_radius(n, rho, seed, hermitian, mask):
    Q = weights.random_integrable(n, rho, np.random.default_rng(seed),
                                  hermitian=hermitian)
    subset = [u for u in range(n) if mask >> u & 1] or [0]
    R = weights.restrict(Q, subset)
    assert R.n == len(subset)
    assert weights.spectral_radius_abs(R) <= \
        weights.spectral_radius_abs(Q) + 1e-12
    assert weights.is_integrable(R)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 5), rho=st.floats(0.05, 0.95),
       seed=st.integers(0, 2 ** 32 - 1))
def test_green_positive_definite_for_hermitian(n, rho, seed):
    Q = weights.random_integrable(n, rho, np.random.default_rng(seed),
                                  hermitian=True)
    G = weights.green(Q)
    assert G.is_hermitian()
    h = (G.entries + G.entries.conj().T) / 2
    assert np.all(np.linalg.eigvalsh(h) > 0)
    assert abs(G.det_I_minus_Q.imag) <= 1e-10 * abs(G.det_I_minus_Q)
    assert G.det_I_minus_Q.real > 0


def test_random_integrable_radius(rng):
    for n in (1, 2, 4):
        Q = weights.random_integrable(n, 0.7, rng, hermitian=True)
        assert weights.spectral_radius_abs(Q) == pytest.approx(0.7)
        assert weights.is_hermitian(Q, atol=1e-12)
    Q = weights.random_integrable(3, 0.4, rng, nonnegative=True)
    assert Q.is_nonnegative()


def test_random_substochastic(rng):
    Q = weights.random_substochastic(4, rng)
    assert weights.is_samplable(Q)
    assert Q.row_sums().real.max() == pytest.approx(0.8)


def test_load_weights_path(datapath):
    Q = weights.load_weights(datapath('hermitian2'))
    assert Q.n == 2
    assert Q[0, 1] == 0.3 + 0.4j
    assert Q[1, 0] == 0.3 - 0.4j


def test_load_weights_entry_forms(filepath):
    Q = weights.load_weights(filepath('complex2.json'))
    assert Q[0, 0] == 0
    assert Q[0, 1] == 0.5 + 0.1j
    assert Q[1, 0] == 0.2
    assert Q[1, 1] == 0.1


def test_load_weights_stream():
    Q = weights.load_weights(io.StringIO(u'{"n": 1, "q": [[[0.25, -0.5]]]}'))
    assert Q[0, 0] == 0.25 - 0.5j


def test_load_weights_without_n():
    Q = weights.load_weights(io.StringIO(u'{"q": [[0.1, 0], [0, 0.2]]}'))
    assert Q.n == 2


def test_dump_weights(example):
    Q = example('hermitian2')
    text = json.dumps(weights.dump_weights(Q))
    assert weights.load_weights(io.StringIO(text)) == Q


def test_parse_error_position(filepath):
    with pytest.raises(ParseError) as excinfo:
        weights.load_weights(filepath('bad_syntax.json'))
    assert excinfo.value.line == 2
    assert excinfo.value.column is not None
    assert '(line 2, column' in str(excinfo.value)


@pytest.mark.parametrize('filename, message', [
    ('short_row.json', 'row 2 must hold 2 entries'),
    ('bool_entry.json', 'row 1, entry 2'),
    ('empty.json', '"n" must be a positive integer'),
])
def test_parse_error_shape(filepath, filename, message):
    with pytest.raises(ParseError) as excinfo:
        weights.load_weights(filepath(filename))
    assert message in str(excinfo.value)


@pytest.mark.parametrize('text', [
    u'[]',
    u'{"n": 2, "q": [[0.1, 0.2]]}',
    u'{"n": 1, "q": [["0.1"]]}',
    u'{"n": 1, "q": [[[0.1, 0.2, 0.3]]]}',
    u'{"n": true, "q": [[0.1]]}',
    u'{"n": 1, "q": [[NaN]]}',
    u'{"n": 1, "q": [[Infinity]]}',
    u'{"n": 1, "q": [[[0.1, -Infinity]]]}',
    u'{"n": 1, "q": [[1e400]]}',
    u'{"n": 1, "q": [[' + u'9' * 400 + u']]}',
])
def test_parse_error_misc(text):
    with pytest.raises(ParseError):
        weights.load_weights(io.StringIO(text))
