"""Sector blocks: construction, diagonalization, and charge conservation."""

import math

import numpy as np
import pytest

from multiboson import (ConditioningWarning, build_monomial_matrix, build_sector_matrix,
                        diagonalize, make_model, occupations_at, sector_from_occupations)
from oracles import bfs_sector_states, lower_move, occupations_below, raise_move


MODEL_A = make_model(2, 1, (1, 1, 1), g=1)
SEC_A = sector_from_occupations(MODEL_A, (0, 0, 1))


def test_fock_block_micro_example():
    block = build_sector_matrix(MODEL_A, SEC_A)
    assert block.diag.tolist() == [0.0, 0.0]
    assert block.upper.tolist() == [1.0]
    assert np.array_equal(block.to_dense(), np.array([[0.0, 1.0], [1.0, 0.0]]))


def test_fock_block_diagonal_readoff():
    model = make_model(2, 1, (1, 1, 1), w=[2, 0, 0], g=1)
    block = build_sector_matrix(model, SEC_A)
    assert block.diag.tolist() == [0.0, 2.0]


def test_fock_block_mixed_power_element():
    model = make_model(2, 1, (1, 1, 2), g=1)
    sec = sector_from_occupations(model, (2, 1, 4))
    block = build_sector_matrix(model, sec)
    assert block.upper[0] == pytest.approx(math.sqrt(60), rel=1e-15)
    assert block.upper.tolist() == block.lower.tolist()


def test_monomial_block_micro_example():
    block = build_monomial_matrix(MODEL_A, SEC_A)
    assert block.diag.tolist() == [0.0, 0.0]
    assert block.upper.tolist() == [1.0]   # A(0)
    assert block.lower.tolist() == [1.0]   # C(1)


def test_monomial_and_fock_share_diagonal():
    model = make_model(2, 2, (1, 2, 2, 1), w=[0.3, -0.2, 0.7, 0.1],
                       wq={(0, 2): 0.4, (1, 1): -0.3}, g=0.9)
    sec = sector_from_occupations(model, (3, 4, 6, 2))
    fock = build_sector_matrix(model, sec)
    mono = build_monomial_matrix(model, sec)
    assert np.allclose(fock.diag, mono.diag, rtol=0, atol=1e-12)


def test_diagonalize_two_by_two():
    spec = diagonalize(build_sector_matrix(MODEL_A, SEC_A))
    assert np.allclose(spec.energies, [-1.0, 1.0], atol=1e-14)
    # phase convention: largest-magnitude component positive
    assert all(spec.vectors[np.argmax(np.abs(spec.vectors[:, j])), j] > 0 for j in range(2))


def test_diagonal_limit_g_zero():
    model = make_model(2, 1, (1, 1, 1), w=[0.5, -1.5, 0.25], g=0)
    sec = sector_from_occupations(model, (1, 0, 4))
    block = build_sector_matrix(model, sec)
    spec = diagonalize(block)
    assert np.allclose(spec.energies, np.sort(block.diag), atol=0)
    mono = diagonalize(build_monomial_matrix(model, sec))
    assert np.allclose(mono.energies, spec.energies, atol=0)


@pytest.mark.parametrize("seed", range(6))
def test_isospectrality_random_models(seed):
    rng = np.random.default_rng(seed)
    r = int(rng.integers(1, 4))
    s = int(rng.integers(1, 4))
    k = [int(rng.integers(1, 3)) for _ in range(r + s)]
    n = r + s
    w = rng.uniform(-1, 1, n)
    wq = {(i, j): rng.uniform(-1, 1) for i in range(n) for j in range(i, n)}
    g = rng.uniform(0.1, 2.0)
    model = make_model(r, s, k, w=w, wq=wq, g=g)
    levels = [int(rng.integers(0, 11)) for _ in range(n)]
    anchor = [k[i] * levels[i] + int(rng.integers(0, k[i])) for i in range(n)]
    sec = sector_from_occupations(model, anchor)
    assert sec.dim <= 31
    f = diagonalize(build_sector_matrix(model, sec))
    m = diagonalize(build_monomial_matrix(model, sec))
    scale = max(1.0, float(np.max(np.abs(f.energies))))
    assert np.max(np.abs(f.energies - m.energies)) <= 1e-10 * scale
    # trace identity
    assert np.sum(f.energies) == pytest.approx(np.sum(build_sector_matrix(model, sec).diag),
                                               rel=1e-10, abs=1e-10 * scale)
    # residual bound relative to the matrix norm
    dense = build_sector_matrix(model, sec).to_dense()
    assert f.residual_norm <= 1e-10 * max(1.0, np.linalg.norm(dense, 2))


def test_charge_conservation_structural():
    model = make_model(2, 1, (1, 1, 2), g=1)
    for occ in occupations_below(3, 6):
        sec = sector_from_occupations(model, occ)
        for move in (lower_move, raise_move):
            target = move(model, occ)
            if target is not None:
                assert sector_from_occupations(model, target) == sec
        assert occ in bfs_sector_states(model, occ)


def test_conditioning_warning_on_huge_entries():
    model = make_model(2, 2, (1, 1, 3, 3), g=1)
    sec = sector_from_occupations(model, (0, 0, 200, 200))
    assert sec.dim > 61
    # monomial entries are full falling-factorial products (~1e13 here)
    with pytest.warns(ConditioningWarning):
        build_monomial_matrix(model, sec)
    # the square-rooted Fock entries stay moderate for the same sector
    import warnings as _warnings

    with _warnings.catch_warnings():
        _warnings.simplefilter("error", ConditioningWarning)
        build_sector_matrix(model, sec)


def test_monomial_eigenvectors_are_monomial_basis():
    # eigenvectors returned in the block's own basis: applying the
    # non-symmetric block must reproduce eigenvalue times vector
    model = make_model(2, 1, (1, 1, 2), w=[0.2, -0.4, 0.6], g=1.1)
    sec = sector_from_occupations(model, (2, 1, 4))
    block = build_monomial_matrix(model, sec)
    spec = diagonalize(block)
    for j in range(block.dim):
        v = spec.vectors[:, j]
        assert np.allclose(block.to_dense() @ v, spec.energies[j] * v, atol=1e-9)
