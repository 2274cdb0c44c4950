import json

import pytest

from qtsym import _mutation
from qtsym import macdonald as mac
from qtsym import partition as P
from qtsym.coeffring import ONE, ZERO, ZLaurent, q, swap_qt, t, u
from qtsym.operators import d_k
from qtsym.symfunc import SymFunc, change_basis, e, h, m, p, qt_inner, s

M = (1 - q) * (1 - t)


def test_P_examples():
    assert mac.macdonald_P((1,)) == m(1)
    assert mac.macdonald_P((1, 1)) == m(1, 1)
    assert mac.macdonald_P((2,)) == m(2) + m(1, 1) * ((1 + q) * (1 - t) / (1 - q * t))


def test_Ht_examples():
    assert mac.macdonald_Ht((1,)) == s(1)
    assert mac.macdonald_Ht((2,)) == s(2) + s(1, 1) * q
    assert mac.macdonald_Ht((1, 1)) == s(2) + s(1, 1) * t
    assert mac.macdonald_Ht((2, 1)) == s(3) + s(2, 1) * (q + t) + s(1, 1, 1) * (q * t)
    assert mac.macdonald_Ht(()) == SymFunc.one()


def test_to_Ht_basis_examples():
    assert mac.to_Ht_basis(s(1)) == {(1,): ZLaurent({0: ONE})}
    assert mac.to_Ht_basis(mac.macdonald_Ht((2,))) == {(2,): ZLaurent({0: ONE})}
    coords = mac.to_Ht_basis(s(1, 1))
    a, b = coords[(2,)].coefficient(0), coords[(1, 1)].coefficient(0)
    assert a == 1 / (q - t) and b == -1 / (q - t)
    assert swap_qt(a) == -a


@pytest.mark.parametrize("n", range(6))
def test_Ht_basis_round_trip(n):
    for lam in P.enumerate_partitions(n):
        f = s(*lam) * (q + ZLaurent.z())
        assert mac.from_Ht_basis(mac.to_Ht_basis(f)) == f


@pytest.mark.parametrize("n", range(1, 6))
def test_orthogonality(n):
    ps = {mu: mac.macdonald_P(mu) for mu in P.enumerate_partitions(n)}
    for a in ps:
        for b in ps:
            if a != b:
                assert qt_inner(ps[a], ps[b]) == ZERO


def test_gram_schmidt_independent_of_extension():
    # (3,1,1,1) and (2,2,2) are incomparable in dominance at n = 6
    base = list(reversed(P.partitions_of(6)))
    i, j = base.index((2, 2, 2)), base.index((3, 1, 1, 1))
    assert abs(i - j) == 1
    other = list(base)
    other[i], other[j] = other[j], other[i]
    assert not P.dominates((2, 2, 2), (3, 1, 1, 1)) and not P.dominates((3, 1, 1, 1), (2, 2, 2))
    assert mac.gram_schmidt(6, other) == mac.gram_schmidt(6)
    four = list(reversed(P.partitions_of(4)))
    assert mac.gram_schmidt(4, four) == mac.gram_schmidt(4)


@pytest.mark.parametrize("n", range(6))
def test_symmetry_and_specialization(n):
    for mu in P.enumerate_partitions(n):
        H = mac.macdonald_Ht(mu)
        assert H.map_coefficients(swap_qt) == mac.macdonald_Ht(P.conjugate(mu))
        assert H.substitute("q", 1).substitute("t", 1) == p(1) ** n
        assert change_basis(H, "s")[(n,) if n else ()].coefficient(0) == ONE


@pytest.mark.parametrize("n", range(6))
def test_d_zero_eigenvalue_oracle(n):
    for mu in P.enumerate_partitions(n):
        H = mac.macdonald_Ht(mu)
        assert d_k(0, H) == H * (1 - M * P.b_mu(mu))


def test_delta_F_examples():
    assert mac.apply_delta_F(e(1), mac.macdonald_Ht((2,))) == mac.macdonald_Ht((2,)) * (1 + q)
    assert mac.apply_delta_F(e(1), SymFunc.one()).is_zero()
    H = mac.macdonald_Ht((1, 1))
    assert mac.apply_delta_F(h(2), H) == H * (1 + t + t ** 2)


def test_delta_u_examples():
    assert mac.apply_delta_u(s(1)) == s(1) * (1 - u)
    assert mac.apply_delta_u(mac.apply_delta_u(s(2)), -1) == s(2)
    assert mac.apply_delta_u(SymFunc.one()) == SymFunc.one()


@pytest.mark.parametrize("n", range(5))
def test_delta_u_top_coefficient_is_nabla(n):
    for mu in P.enumerate_partitions(n):
        H = mac.macdonald_Ht(mu)
        # the eigenvalue is a polynomial in u of degree n; peel off lower terms
        top = mac.delta_var_eigenvalue(mu)
        for _ in range(n):
            top = (top - top.substitute("u", 0)) / u
        assert mac.apply_nabla(H) == H * top


def test_nabla_sign_convention():
    assert mac.apply_nabla(SymFunc.one()) == SymFunc.one()
    assert mac.apply_nabla(s(1)) == -s(1)
    assert mac.nabla_eigenvalue((2, 1)) == -(q * t)
    f = s(2, 1)
    assert mac.apply_nabla(mac.apply_nabla(f), -1) == f
    with _mutation.mutate("nabla-sign"):
        assert mac.apply_nabla(s(1)) == s(1)


def test_pi_examples():
    assert mac.apply_pi(mac.macdonald_Ht((1,))) == mac.macdonald_Ht((1,))
    H = mac.macdonald_Ht((2, 2))
    assert mac.apply_pi(H) == H * ((1 - q) * (1 - t) * (1 - q * t))
    assert mac.apply_pi(mac.apply_pi(s(2)), -1) == s(2)


@pytest.mark.parametrize("n", range(1, 7))
def test_pi_is_delta_u_over_one_minus_u(n):
    for mu in P.enumerate_partitions(n):
        ev = mac.delta_var_eigenvalue(mu) / (1 - u)
        assert ev.substitute("u", 1) == P.pi_mu(mu)


def test_theta_examples():
    f = s(2) + s(1) * q
    assert mac.apply_theta(0, f) == f
    assert mac.apply_theta(1, SymFunc.one()) == p(1) / M
    assert mac.apply_theta(2, SymFunc.zero()).is_zero()
    with pytest.raises(ValueError):
        mac.apply_theta(-1, f)


def test_cache_file_round_trip(tmp_path):
    path = tmp_path / "ht.json"
    cache = mac.HtCache(path=path)
    cache.ensure(4)
    cache.save()
    first = path.read_bytes()
    again = mac.HtCache(path=path, build=False)
    assert again.cached_degrees() == [0, 1, 2, 3, 4]
    for mu in P.partitions_up_to(4):
        assert again.degree(P.size(mu)).ht[mu] == mac.macdonald_Ht(mu)
    with pytest.raises(mac.CacheLimitError):
        again.degree(5)
    again.save()
    assert path.read_bytes() == first
    rec = json.loads(first)["degrees"]["2"]
    assert rec == [{"mu": [2], "schur": [{"lambda": [2], "coeff": "1"}, {"lambda": [1, 1], "coeff": "q"}]},
                   {"mu": [1, 1], "schur": [{"lambda": [2], "coeff": "1"}, {"lambda": [1, 1], "coeff": "t"}]}]


def test_cache_version_and_checksum_errors(tmp_path):
    path = tmp_path / "ht.json"
    cache = mac.HtCache(path=path)
    cache.ensure(2)
    cache.save()
    data = json.loads(path.read_text())
    data["version"] = 999
    path.write_text(json.dumps(data))
    with pytest.raises(mac.CacheVersionError):
        mac.HtCache(path=path).degree(1)
    data["version"] = mac.CACHE_VERSION
    data["degrees"]["2"][0]["schur"][1]["coeff"] = "t"
    path.write_text(json.dumps(data))
    with pytest.raises(mac.CacheVersionError):
        mac.read_cache_file(path)


def test_cache_limit():
    with pytest.raises(mac.CacheLimitError):
        mac.HtCache(max_degree=3).degree(4)
    with pytest.raises(mac.CacheLimitError):
        mac.get_cache().degree(mac.HARD_CAP + 1)
