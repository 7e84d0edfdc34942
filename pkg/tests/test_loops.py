# -*- coding: utf-8 -*-

import pytest
from hypothesis import given
from hypothesis import strategies as st

from loopsoup import loops
from loopsoup.exceptions import BadInput, NotACurrent, TrivialLoop
from loopsoup.loops import Current, Path, RootedLoop
from loopsoup.weights import WeightMatrix

rooted_loops = st.builds(
    lambda root, middle: RootedLoop((root,) + tuple(middle) + (root,)),
    st.integers(0, 3), st.lists(st.integers(0, 3), max_size=8))


def test_path_basics():
    p = Path((0, 1, 2))
    assert len(p) == 2
    assert p.start == 0 and p.end == 2
    assert list(p.edges()) == [(0, 1), (1, 2)]
    assert p.concat(Path((2, 0))) == Path((0, 1, 2, 0))
    with pytest.raises(BadInput):
        p.concat(Path((1, 0)))


@pytest.mark.parametrize('vertices', [(), (0, -1)])
def test_path_invalid(vertices):
    with pytest.raises(BadInput):
        Path(vertices)


def test_rooted_loop():
    loop = RootedLoop((0, 1, 2, 0))
    assert loop.root == 0
    assert not loop.is_trivial()
    assert RootedLoop((1,)).is_trivial()
    assert loop.rotated(1) == RootedLoop((1, 2, 0, 1))
    assert loop.rotated(3) == loop
    with pytest.raises(BadInput):
        RootedLoop((0, 1))


def test_canonicalize_multiplicity():
    unrooted = loops.canonicalize(RootedLoop((1, 0, 1, 0, 1)))
    assert unrooted.vertices == (0, 1, 0, 1, 0)
    assert unrooted.multiplicity == 2
    assert len(unrooted) == 4
    rotations = loops.distinct_rotations(unrooted)
    assert rotations == [RootedLoop((0, 1, 0, 1, 0)),
                         RootedLoop((1, 0, 1, 0, 1))]


def test_canonicalize_trivial():
    with pytest.raises(TrivialLoop):
        loops.canonicalize(RootedLoop((2,)))


@given(rooted_loops, st.integers(0, 10))
def test_canonicalize_ignores_rotation(loop, i):
    if loop.is_trivial():
        return
    a = loops.canonicalize(loop)
    b = loops.canonicalize(loop.rotated(i))
    assert a == b
    assert a.multiplicity == b.multiplicity
    assert len(loops.distinct_rotations(a)) * a.multiplicity == len(loop)


@given(rooted_loops)
def test_loop_current_matches_local_time(loop):
    current = loops.loop_current(loop, 4)
    assert current.total == len(loop)
    assert current.local_time() == loops.vertex_local_time(loop, 4)


def test_unrooted_order():
    a = loops.canonicalize(RootedLoop((1, 1)))
    b = loops.canonicalize(RootedLoop((0, 1, 0)))
    c = loops.canonicalize(RootedLoop((0, 0, 0)))
    assert sorted([b, c, a]) == [a, c, b]


def test_loop_measure():
    Q = WeightMatrix([[0.5, 0.2], [0.3j, 0]])
    twice = loops.canonicalize(RootedLoop((0, 1, 0, 1, 0)))
    assert loops.loop_measure(Q, twice) == pytest.approx(
        (0.2 * 0.3j) ** 2 / 2)
    self_loop = loops.canonicalize(RootedLoop((0, 0, 0, 0)))
    assert loops.loop_measure(Q, self_loop) == pytest.approx(0.5 ** 3 / 3)


def test_path_weight():
    Q = WeightMatrix([[0.5, 0.2], [0.3j, 0]])
    assert loops.path_weight(Q, RootedLoop((1,))) == 1
    assert loops.path_weight(Q, RootedLoop((1, 0, 0, 1))) == pytest.approx(
        0.3j * 0.5 * 0.2)


def test_current_validation():
    assert loops.is_current([[0, 1], [1, 0]])
    assert not loops.is_current([[0, 1], [0, 0]])
    assert not loops.is_current([[-1, 0], [0, 0]])
    assert not loops.is_current([[0.5, 0], [0, 0]])
    assert not loops.is_current([])
    assert not loops.is_current([[0, 0]])


@pytest.mark.parametrize('entry', [float('nan'), float('inf'), 'x', None,
                                   '1'])
def test_current_rejects_non_numbers(entry):
    with pytest.raises(NotACurrent):
        Current([[entry]])


def test_current_from_triplets():
    c = Current.from_triplets(2, [(1, 2, 1), (2, 1, 1), (1, 1, 2)])
    assert c.entries == ((2, 1), (1, 0))
    assert c.triplets() == [[1, 1, 2], [1, 2, 1], [2, 1, 1]]
    assert Current.from_triplets(1, []) == Current.zero(1)
    with pytest.raises(NotACurrent):
        Current.from_triplets(2, [(1, 3, 1)])


def test_current_local_time():
    c = Current([[1, 1], [1, 0]])
    assert c.total == 3
    assert c.local_time() == (2, 1)
    assert c.local_time().total == 3


def test_current_arithmetic():
    a = Current([[0, 1], [1, 0]])
    b = Current([[2, 0], [0, 0]])
    assert (a + b).entries == ((2, 1), (1, 0))
    assert (a + b) - b == a
    assert a.fits_within(a + b)
    assert not (a + b).fits_within(a)
    with pytest.raises(NotACurrent):
        b - a


def test_current_support_and_permutation():
    c = Current([[0, 0, 0], [0, 1, 2], [0, 2, 0]])
    assert c.supported_on([1, 2])
    assert not c.supported_on([0, 1])
    p = c.permuted([2, 1, 0])
    assert p.entries == ((0, 2, 0), (2, 1, 0), (0, 0, 0))
    assert p.permuted([2, 1, 0]) == c


def test_current_weight_zero_power():
    Q = WeightMatrix([[0, 0.5], [0.5, 0]])
    assert loops.current_weight(Q, Current.zero(2)) == 1
    assert loops.current_weight(Q, Current([[1, 0], [0, 0]])) == 0
    assert loops.current_weight(
        Q, Current([[0, 2], [2, 0]])) == pytest.approx(0.5 ** 4)


def test_multiset_current():
    loop = loops.canonicalize(RootedLoop((0, 1, 0)))
    selfloop = loops.canonicalize(RootedLoop((1, 1)))
    s = {loop: 2, selfloop: 1}
    assert loops.multiset_current(s, 2).entries == ((0, 2), (2, 1))
    assert loops.multiset_local_time(s, 2) == (2, 3)


@pytest.mark.parametrize('n, total, count', [
    (1, 0, 1), (1, 5, 1),
    (2, 0, 1), (2, 1, 2), (2, 2, 4), (2, 3, 6),
    (3, 1, 3),
])
def test_iter_currents_counts(n, total, count):
    found = list(loops.iter_currents(n, total))
    assert len(found) == count
    assert len(set(found)) == count
    assert all(c.total == total for c in found)


@pytest.mark.parametrize('max_total, count', [(0, 1), (1, 1), (2, 4), (3, 6)])
def test_iter_skeletons(max_total, count):
    found = list(loops.iter_skeletons(3, max_total))
    assert len(found) == count
    assert all(c[u, u] == 0 for c in found for u in range(3))


def test_currents_with_local_time():
    found = set(loops.currents_with_local_time((1, 1)))
    assert found == {Current([[1, 0], [0, 1]]), Current([[0, 1], [1, 0]])}
    assert list(loops.currents_with_local_time((0, 0, 0))) == [
        Current.zero(3)]
    for c in loops.currents_with_local_time((2, 1, 1)):
        assert c.local_time() == (2, 1, 1)


small_loops = st.builds(
    lambda root, middle: RootedLoop((root,) + tuple(middle) + (root,)),
    st.integers(0, 1), st.lists(st.integers(0, 1), min_size=1, max_size=4))

paths = st.lists(st.integers(0, 3), min_size=2, max_size=10).filter(
    lambda vertices: vertices[0] != vertices[-1]).map(Path)

# Complex weights with a zero entry, so 0 ** 0 shows up.
MIXED = WeightMatrix([[0.1, 0.2 + 0.1j, 0, 0.3j],
                      [0.05, 0, 0.1 - 0.2j, 0.2],
                      [0.3, 0.1j, 0.2, 0],
                      [0, 0.25, -0.1, 0.1 + 0.1j]])


@given(rooted_loops)
def test_path_weight_is_current_weight(loop):
    current = loops.loop_current(loop, 4)
    assert loops.current_weight(MIXED, current) == pytest.approx(
        loops.path_weight(MIXED, loop), abs=1e-15)


@given(rooted_loops)
def test_loop_measure_sums_rotations(loop):
    if loop.is_trivial():
        return
    unrooted = loops.canonicalize(loop)
    total = sum(loops.path_weight(MIXED, r) / len(r)
                for r in loops.distinct_rotations(unrooted))
    assert loops.loop_measure(MIXED, unrooted) == pytest.approx(
        total, abs=1e-15)


@given(small_loops, small_loops)
def test_canonicalize_separates_orbits(a, b):
    orbit = set(a.rotated(i) for i in range(len(a)))
    same = loops.canonicalize(a) == loops.canonicalize(b)
    assert same == (b in orbit)


@given(paths)
def test_open_path_breaks_conservation_at_ends(path):
    c = loops.edge_local_time(path, 4)
    excess = c.sum(axis=1) - c.sum(axis=0)
    for u in range(4):
        if u == path.start:
            assert excess[u] == 1
        elif u == path.end:
            assert excess[u] == -1
        else:
            assert excess[u] == 0
    assert not loops.is_current(c)


@given(rooted_loops)
def test_loop_edge_local_time_conserves(loop):
    assert loops.is_current(loops.edge_local_time(loop, 4))
