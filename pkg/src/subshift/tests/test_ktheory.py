import pytest

from subshift.ktheory import (
    KTheoryError,
    PhiLevelMap,
    k0_stabilization,
    k1_witness,
    level_report,
    naturality_check,
    phi_map,
    rank_duality,
    refinement_matrix,
    snf_report,
    verify_levels,
)
from subshift.language import DepthExceeded
from subshift.matrices import IntegerMatrix, MatrixError, inverse_unimodular, smith_normal_form
from subshift.tests.utils import periodic_table, thue_morse_table


class TestPhiMap:
    def test_thue_morse_level_one(self):
        phi = phi_map(thue_morse_table(), 1)
        assert phi.source_basis == ("0", "1")
        assert phi.target_basis == ("00", "01", "10", "11")
        assert phi.matrix.entries == ((0, 0), (-1, 1), (1, -1), (0, 0))
        snf = snf_report(phi)
        assert snf.divisors == (1,)
        assert (snf.rank, snf.kernel_rank, snf.cokernel_free_rank) == (1, 1, 3)
        assert snf.verify(phi.matrix)

    def test_thue_morse_level_two(self):
        phi = phi_map(thue_morse_table(), 2)
        assert phi.matrix.shape == (6, 4)
        snf = snf_report(phi)
        assert snf.divisors == (1, 1, 1)
        assert snf.torsion == ()
        assert (snf.kernel_rank, snf.cokernel_free_rank) == (1, 3)

    def test_periodic_control(self):
        phi = phi_map(periodic_table(), 1)
        assert phi.matrix.entries == ((-1, 1), (1, -1))
        report = level_report(periodic_table(), 1)
        assert report["divisors"] == [1]
        assert report["cokernel_free_rank"] == 1
        assert report["certificate"]

    def test_level_bounds(self):
        with pytest.raises(KTheoryError):
            phi_map(thue_morse_table(), 0)
        with pytest.raises(DepthExceeded):
            phi_map(thue_morse_table(), 32)


@pytest.mark.parametrize("level", range(1, 11))
@pytest.mark.parametrize("table", [thue_morse_table, periodic_table])
def test_k1_witness(table, level):
    result = k1_witness(phi_map(table(), level))
    assert result.passed
    assert result.witness is None


def test_k1_witness_detects_a_corrupted_matrix():
    phi = phi_map(thue_morse_table(), 1)
    entries = [list(row) for row in phi.matrix.entries]
    entries[1][0] = 1
    broken = PhiLevelMap(1, IntegerMatrix(phi.target_basis, phi.source_basis, entries))
    result = k1_witness(broken)
    assert not result.passed
    assert result.witness == ("01",)


@pytest.mark.parametrize("level", range(1, 9))
def test_naturality(level):
    assert naturality_check(thue_morse_table(), level).passed


def test_refinement_matrix():
    matrix = refinement_matrix(thue_morse_table(), 1)
    assert matrix.column("0") == {"00": 1, "10": 1}
    assert matrix.column("1") == {"01": 1, "11": 1}


@pytest.mark.parametrize("level", [1, 3, 6])
def test_rank_duality(level):
    result = rank_duality(phi_map(thue_morse_table(), level))
    assert result.passed, result.detail


def test_verify_levels():
    result = verify_levels(thue_morse_table(), 1, 10, 8)
    assert result.passed
    assert result.witness is None


class TestK0Truncation:
    def test_thue_morse(self):
        result = k0_stabilization(thue_morse_table(), 4, 10)
        assert result.passed, result.witness
        assert result.detail["truncation"] is True
        assert [entry["level"] for entry in result.detail["levels"]] == list(range(4, 11))
        assert len(result.detail["connecting_maps"]) == 6

    def test_periodic_control_is_stable(self):
        result = k0_stabilization(periodic_table(), 2, 6)
        assert result.passed
        assert result.detail["stable"] is True
        assert {entry["free_rank"] for entry in result.detail["levels"]} == {1}

    def test_bounds(self):
        with pytest.raises(KTheoryError):
            k0_stabilization(thue_morse_table(), 5, 4)
        with pytest.raises(DepthExceeded):
            k0_stabilization(thue_morse_table(), 4, 32)


class TestSmithNormalForm:
    def test_torsion(self):
        matrix = IntegerMatrix(("a", "b"), ("x", "y"), [[2, 4], [6, 8]])
        snf = smith_normal_form(matrix)
        assert snf.divisors == (2, 4)
        assert snf.torsion == (2, 4)
        assert snf.cokernel_free_rank == 0
        assert snf.verify(matrix)

    def test_zero_matrix(self):
        snf = smith_normal_form(IntegerMatrix(("a",), ("x", "y"), [[0, 0]]))
        assert snf.rank == 0
        assert snf.kernel_rank == 2

    def test_shape_mismatch(self):
        with pytest.raises(MatrixError):
            IntegerMatrix(("a",), ("x",), [[1, 2]])

    def test_inverse_unimodular(self):
        matrix = IntegerMatrix(("a", "b"), ("x", "y"), [[2, 1], [1, 1]]).to_sympy()
        assert (matrix * inverse_unimodular(matrix)).tolist() == [[1, 0], [0, 1]]
        singular = IntegerMatrix(("a", "b"), ("x", "y"), [[2, 0], [0, 1]]).to_sympy()
        with pytest.raises(MatrixError):
            inverse_unimodular(singular)
