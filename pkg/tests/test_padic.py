import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lusztigsp.ffield import FieldSpec, tau
from lusztigsp.lusztig import is_triangular
from lusztigsp.padic import (
    CensusRow,
    IndexOutOfRange,
    PadicLusztigDescriptor,
    VertexDescriptor,
    catalog_padic_lusztig,
    census,
    census_row,
    divisor_census,
    eigenvalue_symbolic,
    lusztig_distributions,
    odd_square_reps,
    reductive_quotient,
    stable_subspace_dim,
    theorem_formula_dim,
    triangular_reps,
)

N_MAX = 500


def test_reductive_quotient():
    assert reductive_quotient(VertexDescriptor(2, 1)) == (2, 2)
    assert reductive_quotient(VertexDescriptor(3, 0)) == (6, 0)
    assert reductive_quotient(VertexDescriptor(3, 3)) == (6, 0)
    assert reductive_quotient(VertexDescriptor(5, 4)) == (8, 2)
    for bad in (-1, 4):
        with pytest.raises(IndexOutOfRange):
            VertexDescriptor(3, bad)


def test_descriptor_validation():
    with pytest.raises(ValueError):
        PadicLusztigDescriptor(VertexDescriptor(2, 1), (2, 0))  # 2 not triangular
    with pytest.raises(ValueError):
        PadicLusztigDescriptor(VertexDescriptor(3, 1), (3, 0))  # not hyperspecial
    with pytest.raises(ValueError):
        PadicLusztigDescriptor(VertexDescriptor(4, 2), (3, 1))  # wrong index


def test_catalog_examples():
    one = catalog_padic_lusztig(1)
    assert [d.vertex.index for d in one] == [0, 1]
    assert all(d.vertex.is_hyperspecial for d in one)
    two = catalog_padic_lusztig(2)
    assert len(two) == 1
    assert two[0].vertex.index == 1 and reductive_quotient(two[0].vertex) == (2, 2)
    four = catalog_padic_lusztig(4)
    assert [(d.vertex.index, d.deltas) for d in four] == [(1, (1, 3)), (3, (3, 1))]
    assert catalog_padic_lusztig(5) == []


def test_triangular_reps_examples():
    assert sorted(triangular_reps(1)) == [(0, 1), (1, 0)]
    assert triangular_reps(2) == [(1, 1)]
    assert sorted(triangular_reps(6)) == [(0, 3), (2, 2), (3, 0)]


def test_divisor_census_examples():
    assert divisor_census(1) == (2, 0)
    assert divisor_census(2) == (2, 1)
    assert divisor_census(6) == (3, 0)


def test_odd_square_examples():
    assert odd_square_reps(1) == 2
    assert odd_square_reps(2) == 1
    assert odd_square_reps(5) == 0


def test_theorem_formula_values():
    # 2(d1 - d3), plus 2 when n is triangular
    assert theorem_formula_dim(1) == 6
    assert theorem_formula_dim(2) == 2
    assert theorem_formula_dim(3) == 6
    assert theorem_formula_dim(6) == 8


def test_census_rows():
    r6 = census_row(6)
    assert (r6.enum_count, r6.grosswald_count, r6.d1 - r6.d3, r6.odd_square_count) == (3, 3, 3, 3)
    assert r6.theorem_formula_value == 8 and r6.mismatch
    r5 = census_row(5)
    assert (r5.enum_count, r5.grosswald_count, r5.odd_square_count, r5.d1 - r5.d3) == (0, 0, 0, 0)
    r3 = census_row(3)
    assert r3.enum_count == 2 and r3.d1 - r3.d3 == 2
    assert list(r6.as_dict()) == list(CensusRow.FIELDS)


def test_grosswald_chain_to_500():
    rows = census(N_MAX)
    assert len(rows) == N_MAX
    for r in rows:
        assert r.enum_count == r.grosswald_count == r.d1 - r.d3 == r.odd_square_count


def test_grosswald_chain_with_independent_divisor_count():
    # divisor count by factoring, not by trial division over all of 1..m
    def d1_minus_d3(m):
        out = 1
        for q in range(3, math.isqrt(m) + 2, 2):
            e = 0
            while m % q == 0:
                m //= q
                e += 1
            if e:
                out *= (e + 1) if q % 4 == 1 else (1 if e % 2 == 0 else 0)
        while m % 2 == 0:
            m //= 2
        if m > 1:
            out *= 2 if m % 4 == 1 else 0
        return out

    for n in range(1, N_MAX + 1):
        assert d1_minus_d3(8 * n + 2) == len(triangular_reps(n))


@given(st.integers(1, 2000))
def test_catalog_bijection(n):
    cat = catalog_padic_lusztig(n)
    pairs = sorted(d.ordered_pair() for d in cat)
    tri = {k: k * (k + 1) // 2 for k in range(100)}
    assert pairs == sorted((tri[a], tri[b]) for a, b in triangular_reps(n))
    for d in cat:
        d1, d2 = d.ordered_pair()
        if d1 != d2:
            assert (d2, d1) in pairs
    assert sum(d.is_self_paired for d in cat) == stable_subspace_dim(n) <= 1
    assert [d.vertex.index for d in cat] == sorted(d.vertex.index for d in cat)


def test_each_vertex_used_once():
    for n in range(1, 200):
        idx = [d.vertex.index for d in catalog_padic_lusztig(n)]
        assert len(idx) == len(set(idx))


def test_stable_predicate():
    assert stable_subspace_dim(2) == 1
    assert stable_subspace_dim(4) == 0
    assert stable_subspace_dim(12) == 1
    stable = [n for n in range(1, N_MAX + 1) if stable_subspace_dim(n)]
    assert stable == [2 * t for t in range(1, 251) if is_triangular(t)]


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_eigenvalue_symbolic_matches_tau(p):
    s = FieldSpec(p)
    for n in range(1, 9):
        assert abs(eigenvalue_symbolic(n, p % 4) - tau(s) ** n) < 1e-9


def test_eigenvalue_symbolic_examples():
    assert eigenvalue_symbolic(1, 3) == -1j
    assert eigenvalue_symbolic(4, 3) == 1
    assert eigenvalue_symbolic(2, 3) == -1
    assert all(eigenvalue_symbolic(n, 1) == 1 for n in range(1, 10))


def test_distributions():
    two = lusztig_distributions(2, 3)
    assert len(two) == 1 and two[0].stable and two[0].eigenvalue_class == -1
    assert two[0].to_json()["eigenvalue"] == "-1"
    one = lusztig_distributions(1, 3)
    assert len(one) == 2 and not any(d.stable for d in one)
    assert {d.eigenvalue_class for d in one} == {-1j}
    assert lusztig_distributions(5, 1) == []


def test_census_validation():
    with pytest.raises(ValueError):
        census(0)
