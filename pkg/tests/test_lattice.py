"""Tests for the spin lattice, streaming and observables."""

import numpy as np
import pytest

from src.lattice import Color, LatticeMode, SpinLattice


@pytest.fixture
def chain():
    return SpinLattice(np.array([1.0, -1.0, 1.0, 1.0]))


def random_lattice(shape, seed=0) -> SpinLattice:
    return SpinLattice.from_uniforms(np.random.default_rng(seed).random(shape))


class TestConstruction:
    @pytest.mark.parametrize("shape", [(3, 3), (4, 3), (5,), (1,)])
    def test_odd_sizes_rejected(self, shape):
        with pytest.raises(ValueError, match="even"):
            SpinLattice.ground(shape)

    def test_three_dimensions_rejected(self):
        with pytest.raises(ValueError):
            SpinLattice(np.ones((2, 2, 2)))

    def test_discrete_range(self):
        with pytest.raises(ValueError):
            SpinLattice(np.array([1.0, 0.5]))

    def test_ensemble_range(self):
        SpinLattice(np.array([0.3, -1.0]), LatticeMode.ENSEMBLE)
        with pytest.raises(ValueError):
            SpinLattice(np.array([1.5, 0.0]), LatticeMode.ENSEMBLE)

    def test_mixed(self):
        lattice = SpinLattice.mixed((4, 4))
        assert lattice.mode is LatticeMode.ENSEMBLE
        assert np.all(lattice.values == 0.0)

    def test_copy_is_independent(self, chain):
        clone = chain.copy()
        clone.write_back(0, -1.0)
        assert chain.values[0] == 1.0


class TestStream:
    def test_wraps_at_left_edge(self, chain):
        inputs = chain.stream(0)
        assert inputs.s == 1.0
        assert inputs.neighbors == (1.0, -1.0)

    def test_interior_site(self, chain):
        inputs = chain.stream(2)
        assert inputs.s == 1.0
        assert inputs.neighbors == (-1.0, 1.0)

    def test_uniform_square(self):
        lattice = SpinLattice.ground((4, 4))
        for site in lattice.sites():
            inputs = lattice.stream(site)
            assert inputs.s == 1.0
            assert inputs.neighbors == (1.0, 1.0, 1.0, 1.0)

    def test_square_neighbor_order(self):
        values = np.arange(16, dtype=float).reshape(4, 4)
        lattice = SpinLattice(values / 16, LatticeMode.ENSEMBLE)
        inputs = lattice.stream((1, 2))
        # A = S[i, j+1], B = S[i-1, j], C = S[i, j-1], D = S[i+1, j]
        assert np.array(inputs.neighbors) * 16 == pytest.approx([7, 2, 5, 10])

    def test_read_only(self):
        lattice = random_lattice((6, 6))
        before = lattice.values.copy()
        for site in lattice.sites():
            lattice.stream(site)
        np.testing.assert_array_equal(lattice.values, before)

    def test_out_of_bounds(self, chain):
        with pytest.raises(IndexError):
            chain.stream(4)
        with pytest.raises(IndexError):
            SpinLattice.ground((4, 4)).stream((0, 4))

    def test_neighbor_arrays_match_stream(self):
        lattice = random_lattice((6, 4), seed=3)
        arrays = lattice.neighbor_arrays()
        for site in lattice.sites():
            assert lattice.stream(site).neighbors == tuple(a[site] for a in arrays)


class TestCheckerboard:
    def test_chain_black(self):
        assert SpinLattice.ground((6,)).checkerboard_sites(Color.BLACK) == [0, 2, 4]

    def test_square_black(self):
        sites = SpinLattice.ground((4, 4)).checkerboard_sites(Color.BLACK)
        assert len(sites) == 8
        assert all((i + j) % 2 == 0 for i, j in sites)

    @pytest.mark.parametrize("shape", [(8,), (4, 6)])
    def test_partition(self, shape):
        lattice = SpinLattice.ground(shape)
        black = set(lattice.checkerboard_sites(Color.BLACK))
        white = set(lattice.checkerboard_sites(Color.WHITE))
        assert not black & white
        assert black | white == set(lattice.sites())
        assert len(black) == len(white) == lattice.num_sites // 2

    @pytest.mark.parametrize("shape", [(8,), (4, 6), (2, 2)])
    def test_no_same_color_neighbors(self, shape):
        lattice = SpinLattice.ground(shape)
        for color in Color:
            mask = lattice.checkerboard_mask(color)
            marked = SpinLattice(np.where(mask, 1.0, -1.0))
            for neighbors in marked.neighbor_arrays():
                assert np.all(neighbors[mask] == -1.0)

    def test_hardware_nodes(self):
        assert SpinLattice.ground((8, 8)).hardware_nodes == 32
        assert SpinLattice.ground((10,)).hardware_nodes == 5


class TestWriteBack:
    def test_point_update(self):
        lattice = SpinLattice.ground((8,))
        lattice.write_back(3, -1.0)
        assert lattice.values.tolist() == [1, 1, 1, -1, 1, 1, 1, 1]

    def test_ensemble_value(self):
        lattice = SpinLattice.mixed((4,))
        lattice.write_back(1, 0.0)
        assert lattice.values[1] == 0.0

    def test_discrete_rejects_fraction(self):
        with pytest.raises(ValueError):
            SpinLattice.ground((4,)).write_back(0, 0.3)


class TestObservables:
    def test_all_up(self):
        assert SpinLattice.ground((4, 4)).magnetization() == 1.0

    def test_half_up(self):
        assert SpinLattice(np.array([1.0, -1.0, 1.0, -1.0])).magnetization() == 0.0

    def test_ensemble_mean(self):
        lattice = SpinLattice(np.full((2, 2), 0.5), LatticeMode.ENSEMBLE)
        assert lattice.magnetization() == 0.5

    def test_chain_energy(self):
        assert SpinLattice.ground((8,)).total_energy() == -16

    def test_alternating_chain_energy(self):
        lattice = SpinLattice(np.array([1.0, -1.0] * 4))
        assert lattice.total_energy() == 16

    def test_square_energy(self):
        lattice = SpinLattice.ground((4, 4))
        assert lattice.total_energy() == -64
        assert lattice.energy_per_site() == -4

    def test_energy_needs_discrete(self):
        with pytest.raises(ValueError):
            SpinLattice.mixed((4, 4)).total_energy()

    def test_global_flip(self):
        lattice = random_lattice((6, 6), seed=5)
        flipped = SpinLattice(-lattice.values)
        assert flipped.total_energy() == lattice.total_energy()
        assert flipped.magnetization() == -lattice.magnetization()


class TestSnapshot:
    def test_discrete(self):
        lattice = SpinLattice(np.array([[1.0, -1.0], [-1.0, -1.0]]))
        assert lattice.snapshot() == "+-\n--\n"

    def test_chain_is_one_line(self, chain):
        assert chain.snapshot() == "+-++\n"

    def test_ensemble(self):
        lattice = SpinLattice(np.array([[0.25, -1.0], [0.0, 1.0]]), LatticeMode.ENSEMBLE)
        assert lattice.snapshot(decimals=2) == "+0.25 -1.00\n+0.00 +1.00\n"
