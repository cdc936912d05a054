"""Core model: validation, adjacency mapping, row exchange, reductions."""

import cmath
import math

import numpy as np
import pytest

from lqngraph.designers import design_dicke2, preset_beamsplitter, preset_tritter
from lqngraph.errors import (
    DuplicateEdge,
    IndexOutOfRange,
    RowNotNormalized,
    SuperposedInternalState,
    ZeroAmplitude,
)
from lqngraph.model import (
    Color,
    Statistics,
    exchange_rows,
    is_unitary,
    reduce_general_transform,
    to_adjacency,
    to_bipartite,
    to_general_transform,
    validate_general_transform,
    validate_network,
)

from conftest import random_network

BS_AMPS = (0.6, 0.8j, 1 / math.sqrt(2), -1 / math.sqrt(2))


def beamsplitter_edges(a1=BS_AMPS[0], b1=BS_AMPS[1], a2=BS_AMPS[2], b2=BS_AMPS[3]):
    return [
        (1, 1, a1, "up"),
        (1, 2, b1, "down"),
        (2, 1, a2, "down"),
        (2, 2, b2, "up"),
    ]


class TestValidateNetwork:
    def test_accepts_normalized_beamsplitter(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            phi = rng.uniform(0, 2 * np.pi, 4)
            th1, th2 = rng.uniform(0, np.pi / 2, 2)
            a1, b1 = np.cos(th1) * np.exp(1j * phi[0]), np.sin(th1) * np.exp(1j * phi[1])
            a2, b2 = np.cos(th2) * np.exp(1j * phi[2]), np.sin(th2) * np.exp(1j * phi[3])
            spec = validate_network(
                2, "boson", beamsplitter_edges(a1, b1, a2, b2), "strict"
            )
            assert spec.n == 2

    def test_accepts_identity_single_particle(self):
        spec = validate_network(1, "boson", [(1, 1, 1.0, "up")], "strict")
        assert spec.transitions[0].color is Color.UP

    def test_rejects_duplicate_edge(self):
        with pytest.raises(DuplicateEdge):
            validate_network(
                2, "boson", [(1, 1, 0.6, "up"), (1, 1, 0.8, "down")], "design"
            )

    def test_rejects_out_of_range_indices(self):
        with pytest.raises(IndexOutOfRange):
            validate_network(2, "boson", [(1, 3, 1.0, "up")], "design")
        with pytest.raises(IndexOutOfRange):
            validate_network(0, "boson", [], "design")

    def test_rejects_zero_amplitude(self):
        with pytest.raises(ZeroAmplitude):
            validate_network(1, "boson", [(1, 1, 0.0, "up")], "design")

    def test_strict_rejects_unnormalized_row(self):
        with pytest.raises(RowNotNormalized) as info:
            validate_network(1, "boson", [(1, 1, 0.9, "up")], "strict")
        assert info.value.row == 1
        assert info.value.actual_sum == pytest.approx(0.81)

    def test_design_mode_skips_row_check(self):
        spec = validate_network(1, "boson", [(1, 1, 0.9, "up")], "design")
        assert spec.n == 1

    def test_strict_accepts_designer_presets(self):
        # presets whose rows are exactly normalized must pass strict checks
        assert preset_tritter().n == 3
        assert design_dicke2(4, preset="paper-n4").n == 4


class TestToAdjacency:
    def test_beamsplitter_matrices(self):
        a1, b1, a2, b2 = BS_AMPS
        adj = to_adjacency(validate_network(2, "boson", beamsplitter_edges(), "strict"))
        assert np.allclose(adj.weights, [[a1, b1], [a2, b2]])
        assert adj.colors[0, 0] is Color.UP and adj.colors[0, 1] is Color.DOWN
        assert adj.colors[1, 0] is Color.DOWN and adj.colors[1, 1] is Color.UP

    def test_identity_network_is_diagonal(self):
        spec = validate_network(
            3, "boson", [(a, a, 1.0, "up") for a in (1, 2, 3)], "strict"
        )
        adj = to_adjacency(spec)
        assert np.allclose(adj.weights, np.eye(3))
        assert all(adj.colors[i, i] is Color.UP for i in range(3))
        assert all(
            adj.colors[i, j] is None for i in range(3) for j in range(3) if i != j
        )

    def test_tritter_matrix(self):
        w = cmath.exp(2j * math.pi / 3)
        expected = np.array([[1, w, w**2], [w, 1, w**2], [1, 1, 1]]) / math.sqrt(3)
        adj = to_adjacency(preset_tritter())
        assert np.allclose(adj.weights, expected)
        for j in range(3):
            assert adj.colors[0, j] is Color.UP
            assert adj.colors[1, j] is Color.UP
            assert adj.colors[2, j] is Color.DOWN


class TestToBipartite:
    def test_beamsplitter_has_four_edges(self):
        bip = to_bipartite(
            to_adjacency(validate_network(2, "boson", beamsplitter_edges(), "strict"))
        )
        assert len(bip.edges) == 4
        assert {(e.particle, e.detector) for e in bip.edges} == {
            (1, 1), (1, 2), (2, 1), (2, 2),
        }

    def test_diagonal_gives_disjoint_edges(self):
        spec = validate_network(
            4, "boson", [(a, a, 1.0, "down") for a in range(1, 5)], "strict"
        )
        bip = to_bipartite(to_adjacency(spec))
        assert {(e.particle, e.detector) for e in bip.edges} == {
            (a, a) for a in range(1, 5)
        }

    def test_edge_multiset_preserved(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            spec = random_network(rng, int(rng.integers(2, 6)))
            bip = to_bipartite(to_adjacency(spec))
            original = {
                (t.source, t.detector): (t.amplitude, t.color)
                for t in spec.transitions
            }
            mapped = {
                (e.particle, e.detector): (e.weight, e.color) for e in bip.edges
            }
            assert mapped == original


class TestExchangeRows:
    def test_beamsplitter_swap_matches_expected(self):
        a1, b1, a2, b2 = BS_AMPS
        adj = to_adjacency(validate_network(2, "boson", beamsplitter_edges(), "strict"))
        swapped, sign = exchange_rows(adj, 1, 2, Statistics.BOSON)
        assert sign == 1
        assert np.allclose(swapped.weights, [[a2, b2], [a1, b1]])
        assert swapped.colors[0, 0] is Color.DOWN
        assert swapped.colors[1, 0] is Color.UP

    def test_double_swap_is_identity_with_sign_product_one(self):
        adj = to_adjacency(preset_tritter())
        once, s1 = exchange_rows(adj, 1, 3, Statistics.FERMION)
        twice, s2 = exchange_rows(once, 1, 3, Statistics.FERMION)
        assert s1 * s2 == 1
        assert np.array_equal(twice.weights, adj.weights)
        assert all(
            twice.colors[i, j] is adj.colors[i, j] for i in range(3) for j in range(3)
        )

    def test_fermion_swap_sign(self):
        adj = to_adjacency(preset_tritter())
        _, sign = exchange_rows(adj, 2, 3, Statistics.FERMION)
        assert sign == -1

    def test_out_of_range(self):
        adj = to_adjacency(preset_tritter())
        with pytest.raises(IndexOutOfRange):
            exchange_rows(adj, 1, 4, Statistics.BOSON)


class TestGeneralTransform:
    def test_single_component_channel_reduces(self):
        gt = validate_general_transform(1, [(1, 1, 0.6 + 0.8j, 0.0)])
        spec = reduce_general_transform(gt)
        (t,) = spec.transitions
        assert t.amplitude == 0.6 + 0.8j
        assert t.color is Color.UP

    def test_beamsplitter_roundtrip(self):
        a1, b1, a2, b2 = BS_AMPS
        gt = validate_general_transform(
            2,
            [(1, 1, a1, 0.0), (1, 2, 0.0, b1), (2, 1, 0.0, a2), (2, 2, b2, 0.0)],
        )
        spec = reduce_general_transform(gt)
        expected = validate_network(2, "boson", beamsplitter_edges(), "strict")
        assert spec.transitions == expected.transitions
        assert to_general_transform(spec) == gt

    def test_superposed_channel_rejected(self):
        h = 1 / math.sqrt(2)
        gt = validate_general_transform(1, [(1, 1, h, h)])
        with pytest.raises(SuperposedInternalState) as info:
            reduce_general_transform(gt)
        assert (info.value.source, info.value.detector) == (1, 1)

    def test_rows_must_be_normalized(self):
        with pytest.raises(RowNotNormalized):
            validate_general_transform(1, [(1, 1, 0.5, 0.5)])


class TestIsUnitary:
    def test_tritter_matrix_is_unitary(self):
        assert is_unitary(to_adjacency(preset_tritter()))

    def test_identity_is_unitary(self):
        spec = validate_network(
            3, "boson", [(a, a, 1.0, "up") for a in (1, 2, 3)], "strict"
        )
        assert is_unitary(to_adjacency(spec))

    def test_flat_rows_are_not_unitary(self):
        h = 1 / math.sqrt(2)
        spec = validate_network(
            2,
            "boson",
            [(1, 1, h, "up"), (1, 2, h, "up"), (2, 1, h, "up"), (2, 2, h, "up")],
            "strict",
        )
        adj = to_adjacency(spec)
        # rows are normalized but not orthogonal
        product = adj.weights @ adj.weights.conj().T
        assert product[0, 1] == pytest.approx(1.0)
        assert not is_unitary(adj)


def test_beamsplitter_preset_drops_zero_edges():
    spec = preset_beamsplitter(1.0, 0.0, 1 / math.sqrt(2), 1 / math.sqrt(2))
    assert {(t.source, t.detector) for t in spec.transitions} == {(1, 1), (2, 1), (2, 2)}
