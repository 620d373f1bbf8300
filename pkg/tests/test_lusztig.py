import cmath

import numpy as np
import pytest

from lusztigsp.ffield import FieldSpec, tau
from lusztigsp.liealg import SymplecticPartition, encode, random_symplectic
from lusztigsp.lusztig import (
    Algebra,
    ClassFunction,
    NotTriangular,
    WrongSupport,
    ZeroFunction,
    circ_sgn,
    delta,
    eigen_check,
    extended_lusztig_partition,
    fourier_matrix,
    fourier_transform,
    is_extended_lusztig_partition,
    is_lusztig_partition,
    lusztig_coefficients,
    lusztig_function,
    lusztig_partition,
    predicted_eigenvalue,
    product_lusztig_function,
    triangular_index,
)
from lusztigsp.orbits import (
    OrbitLabel,
    TooLarge,
    classify_cone,
    enumerate_rational_orbits_finite,
    nilpotent_cone_codes,
)
from lusztigsp.qforms import FiniteFormClass

P = SymplecticPartition.of


def test_triangular_index():
    assert triangular_index(0) == 0
    assert triangular_index(10) == 4
    assert triangular_index(5) is None
    assert [n for n in range(30) if triangular_index(n) is not None] == [0, 1, 3, 6, 10, 15, 21, 28]


def test_lusztig_partitions():
    assert lusztig_partition(1) == P(2)
    assert lusztig_partition(3) == P(4, 2)
    assert lusztig_partition(10) == P(8, 6, 4, 2)
    for bad in (0, 2, 5):
        with pytest.raises(NotTriangular):
            lusztig_partition(bad)
    assert extended_lusztig_partition(3, 1) == P(4, 2, 2)
    assert extended_lusztig_partition(1, 1) == P(2, 2)
    assert extended_lusztig_partition(6, 0) == P(6, 4, 2)
    assert is_lusztig_partition(P(6, 4, 2)) and not is_lusztig_partition(P(4, 2, 2))
    assert is_extended_lusztig_partition(P(4, 2, 2))
    assert is_extended_lusztig_partition(P(6, 4, 4, 2, 2))
    for lam in (P(4), P(2, 2, 2), P(4, 4), P(3, 3), P(2, 1, 1), P(6, 2)):
        assert not is_extended_lusztig_partition(lam)


def test_extended_partitions_are_unions():
    for d1 in (1, 3, 6, 10):
        for d2 in (0, 1, 3, 6, 10):
            if d2 <= d1:
                lam = extended_lusztig_partition(d1, d2)
                assert lam.rank == d1 + d2 and is_extended_lusztig_partition(lam)


def test_coefficients_sp6(spec):
    eps = FiniteFormClass(1, -1)
    one = FiniteFormClass(1, 1)
    coeffs = lusztig_coefficients(3, spec)
    expect = {(one, one): 1, (one, eps): 1, (eps, one): -1, (eps, eps): -1}
    assert {L.forms[:2]: c for L, c in coeffs.items()} == expect


def test_circ_sgn_dimension_twist():
    # Q2 of dim 2 contributes sgn(-1) * disc
    for p in (5, 7):
        s = FieldSpec(p)
        minus = 1 if p % 4 == 1 else -1
        for L in enumerate_rational_orbits_finite(P(2, 2), s):
            assert circ_sgn(L, s) == minus * L.form(2).disc_sign
    with pytest.raises(WrongSupport):
        circ_sgn(enumerate_rational_orbits_finite(P(4), FieldSpec(5))[0], FieldSpec(5))


def test_sp2_function_values(spec):
    f = lusztig_function(1, spec)
    eps = spec.nonsquare
    assert f([0, 1, 0, 0]) == 1
    assert f([0, eps, 0, 0]) == -1
    assert f([0, 0, 0, 0]) == 0
    assert len(f.values) == spec.p**2 - 1


@pytest.mark.parametrize("p", [3, 5])
def test_class_function_is_invariant(p):
    s = FieldSpec(p)
    rng = np.random.default_rng(p)
    f = lusztig_function(1, s)
    for key in f.values:
        X = np.array(key).reshape(2, 2)
        g, gi = random_symplectic(1, s, rng)
        assert f((g @ X @ gi % p).reshape(-1)) == f(key)


def test_held_in_coefficient_form():
    f = lusztig_function(3, FieldSpec(3))
    assert not f.materialized and len(f.coefficients) == 4
    with pytest.raises(TooLarge):
        f.support()


def naive_transform(f, spec, xs):
    n = f.algebra.ranks[0]
    p = spec.p
    N = 2 * n
    out = []
    for x in xs:
        X = np.asarray(x).reshape(N, N)
        acc = 0j
        for key, v in f.values.items():
            Y = np.asarray(key).reshape(N, N)
            acc += cmath.exp(2j * cmath.pi * (int(np.trace(X @ Y)) % p) / p) * v
        out.append(acc * p ** (-f.algebra.dim / 2))
    return np.array(out)


@pytest.mark.parametrize("p", [3, 5])
def test_transform_matches_naive_sum(p):
    s = FieldSpec(p)
    f = lusztig_function(1, s)
    xs = f.algebra.points()
    got = fourier_transform(f, s, xs).evaluate(xs)
    assert np.max(np.abs(got - naive_transform(f, s, xs))) < 1e-9


@pytest.mark.parametrize("p", [3, 5, 7])
def test_transform_matches_dense_matrix(p):
    s = FieldSpec(p)
    A = Algebra((1,), p)
    f = lusztig_function(1, s)
    xs = A.points()
    M = fourier_matrix(A)
    assert np.max(np.abs(M @ f.evaluate(xs) - fourier_transform(f, s, xs).evaluate(xs))) < 1e-9


def test_transform_of_delta_at_zero():
    s = FieldSpec(5)
    A = Algebra((1,), 5)
    F = fourier_transform(delta(A, [0, 0, 0, 0]), s).evaluate(A.points())
    assert np.allclose(F, 5 ** (-1.5))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_transform_squared_is_negation(p):
    s = FieldSpec(p)
    f = lusztig_function(1, s)
    xs = f.algebra.points()
    once = fourier_transform(f, s, xs)
    twice = fourier_transform(once, s, xs).evaluate(xs)
    assert np.max(np.abs(twice - f.evaluate((-xs) % p))) < 1e-9


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_eigen_check_single(p):
    s = FieldSpec(p)
    r = eigen_check(lusztig_function(1, s), s)
    assert r.is_eigenfunction and r.matches_prediction
    assert r.max_residual < 1e-9
    assert abs(r.eigenvalue - tau(s)) < 1e-9
    assert r.points_checked == p**3


def test_eigen_check_product_p3():
    s = FieldSpec(3)
    r = eigen_check(product_lusztig_function(1, 1, s), s)
    assert r.is_eigenfunction and abs(r.eigenvalue + 1) < 1e-9
    assert abs(r.predicted - tau(s) ** 2) < 1e-9


def test_eigen_check_negative():
    s = FieldSpec(5)
    A = Algebra((1,), 5)
    r = eigen_check(delta(A, [0, 1, 0, 0]), s)
    assert not r.is_eigenfunction and r.eigenvalue is None and not r.matches_prediction
    with pytest.raises(ZeroFunction):
        eigen_check(ClassFunction(A, {}), s)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_unique_nilpotent_eigenfunction(p):
    # span of nilpotent orbit indicators whose transform also vanishes off the cone
    s = FieldSpec(p)
    A = Algebra((1,), p)
    xs = A.points()
    M = fourier_matrix(A)
    cone = nilpotent_cone_codes(1, s)
    labels = classify_cone(1, s, cone)
    codes = encode(xs.reshape(-1, 2, 2), 1, p)
    on_cone = np.isin(codes, cone)
    B = np.stack(
        [np.isin(codes, cone[[m == L for m in labels]]).astype(complex) for L in sorted(set(labels))],
        axis=1,
    )
    off = (M @ B)[~on_cone]
    _, sv, vh = np.linalg.svd(off)
    null = vh[np.sum(sv > 1e-9) :].conj()
    assert len(null) == 1
    g = B @ null[0]
    f = lusztig_function(1, s).evaluate(xs)
    # g is proportional to f
    k = int(np.argmax(np.abs(f)))
    assert np.max(np.abs(g - g[k] / f[k] * f)) < 1e-9


def test_predicted_eigenvalue():
    assert abs(predicted_eigenvalue(2, FieldSpec(7)) + 1) < 1e-9
    assert abs(predicted_eigenvalue(3, FieldSpec(3)) - 1j) < 1e-9
    assert abs(predicted_eigenvalue(5, FieldSpec(13)) - 1) < 1e-9


def test_serialization():
    s = FieldSpec(3)
    f = lusztig_function(1, s)
    doc = f.to_json()
    assert doc["algebra"] == {"type": "sp", "ranks": [1], "p": 3}
    assert len(doc["entries"]) == 8
    assert [c["coefficient"] for c in doc["coefficients"]] == [1, -1]
    prod = product_lusztig_function(1, 1, s).to_json()
    assert prod["algebra"]["type"] == "product"
    assert all(len(e["point"]) == 2 for e in prod["entries"])
    assert OrbitLabel.build(P(2), {2: FiniteFormClass(1, 1)}).to_json()["partition"] == [2]
