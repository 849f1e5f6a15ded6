import json
from fractions import Fraction
from itertools import product

import pytest

from conftest import GRID_TYPES
from rcbij.cartan import AffineType, dominant_weights, kac_data
from rcbij.crystal import enumerate_highest
from rcbij.qpoly import QPoly
from rcbij.rc import (
    _partitions,
    cc2_config,
    cc2_total,
    complement,
    config_of,
    enumerate_configs,
    enumerate_rc,
    fermionic_m,
    is_admissible_config,
    is_admissible_config_full,
    normalized_sizes,
    rc_from_json,
    rc_genfun,
    rc_to_json,
    vacancy2,
    vacancy2_general,
    validate_rc,
)


def all_sized_configs(at, lam, L):
    """Every size-constrained configuration, admissible or not."""
    sizes = normalized_sizes(at, lam, L)
    if sizes is None:
        return []
    up2 = kac_data(at).up2
    per = [
        [tuple(p * up2[a] for p in part) for part in _partitions(c)]
        for a, c in enumerate(sizes)
    ]
    return list(product(*per))


def test_vacancy_empty_config():
    for at in GRID_TYPES:
        nu = tuple(tuple() for _ in range(at.n))
        L = 4
        for a in range(1, at.n + 1):
            u = kac_data(at).up2[a - 1]
            for i2 in (u, 2 * u, 5 * u):
                want = 2 * L if a == 1 else 0
                assert vacancy2(at, L, nu, a, i2) == want


def test_vacancy_A2_example():
    # rank 1, L = 1, single box: vacancy 0 at length 1
    at = AffineType("A2", 1)
    assert vacancy2(at, 1, ((2,),), 1, 2) == 0


def test_vacancy_off_lattice_rejected():
    at = AffineType("C1", 2)
    with pytest.raises(ValueError):
        vacancy2(at, 1, ((), ()), 2, 2)  # node 2 lattice is even lengths


def test_vacancy_matches_general_formula():
    for at in GRID_TYPES:
        up2 = kac_data(at).up2
        for L in range(0, 4):
            for lam in dominant_weights(at, L):
                for nu in all_sized_configs(at, lam, L):
                    for a in range(1, at.n + 1):
                        top = max(nu[a - 1], default=0) + 2 * up2[a - 1]
                        for i2 in range(up2[a - 1], top + 1, up2[a - 1]):
                            assert Fraction(
                                vacancy2(at, L, nu, a, i2)
                            ) == vacancy2_general(at, L, nu, a, i2), (
                                at, L, lam, nu, a, i2,
                            )


def _m_at(nu, a, i2, n):
    if not 1 <= a <= n:
        return 0
    return sum(1 for x in nu[a - 1] if x == i2)


def second_difference_rhs(at, L, nu, a, i2):
    """The per-family m-combination equal to -P_{i-u} + 2P_i - P_{i+u}.

    Each row is forced by (and verified against) the general vacancy
    formula.  The L-term applies at node 1 and the smallest index, which
    matters for the rank-1 twisted families where node n is node 1.
    """
    n = at.n
    fam = at.family
    u = kac_data(at).up2[a - 1]
    m = lambda b, j2=i2: _m_at(nu, b, j2, n)
    base = 2 * L if (a == 1 and i2 == u) else 0
    if fam == "A1":
        return base + 2 * (m(a - 1) - 2 * m(a) + m(a + 1))
    if fam == "D1":
        if a <= n - 3:
            return base + 2 * (m(a - 1) - 2 * m(a) + m(a + 1))
        if a == n - 2:
            return base + 2 * (m(n - 3) - 2 * m(n - 2) + m(n - 1) + m(n))
        return base + 2 * (m(n - 2) - 2 * m(a))
    if fam == "B1":
        if a <= n - 2:
            return base + 2 * (m(a - 1) - 2 * m(a) + m(a + 1))
        if a == n - 1:
            return base + 2 * (m(n - 2) - 2 * m(n - 1)) + (
                4 * _m_at(nu, n, i2, n)
                + 2 * _m_at(nu, n, i2 + 1, n)
                + 2 * _m_at(nu, n, i2 - 1, n)
            )
        return base + 2 * _m_at(nu, n - 1, i2, n) - 4 * m(n)
    if fam in ("C1", "A2", "A2dag"):
        if a <= n - 1:
            return base + 2 * (m(a - 1) - 2 * m(a) + m(a + 1))
        if fam == "C1":
            return base + 2 * (
                _m_at(nu, n - 1, i2 - 2, n)
                + 2 * _m_at(nu, n - 1, i2, n)
                + _m_at(nu, n - 1, i2 + 2, n)
                - 2 * m(n)
            )
        return base + 2 * (m(n - 1) - m(n))
    if fam == "A2odd":
        if a <= n - 2:
            return base + 2 * (m(a - 1) - 2 * m(a) + m(a + 1))
        if a == n - 1:
            return base + 2 * (m(n - 2) - 2 * m(n - 1) + 2 * m(n))
        return base + 2 * (m(n - 1) - 2 * m(n))
    if fam == "D2":
        if a <= n - 1:
            return base + 2 * (m(a - 1) - 2 * m(a) + m(a + 1))
        return base + 2 * (2 * m(n - 1) - 2 * m(n))
    raise ValueError(fam)


def test_second_differences_and_convexity():
    for at in GRID_TYPES:
        up2 = kac_data(at).up2
        for L in range(0, 4):
            for lam in dominant_weights(at, L):
                for nu in all_sized_configs(at, lam, L):
                    for a in range(1, at.n + 1):
                        u = up2[a - 1]
                        top = max(nu[a - 1], default=0) + 2 * u
                        for i2 in range(u, top + 1, u):
                            pm = vacancy2(at, L, nu, a, i2 - u) if i2 > u else 0
                            pc = vacancy2(at, L, nu, a, i2)
                            pp = vacancy2(at, L, nu, a, i2 + u)
                            assert -pm + 2 * pc - pp == second_difference_rhs(
                                at, L, nu, a, i2
                            ), (at, L, lam, nu, a, i2)
                            if _m_at(nu, a, i2, at.n) == 0:
                                assert 2 * pc >= pm + pp


def test_asymptotic_vacancies():
    for at in GRID_TYPES:
        n = at.n
        up2 = kac_data(at).up2
        for L in range(0, 4):
            for lam in dominant_weights(at, L):
                for nu in enumerate_configs(at, lam, L):
                    big = max(
                        (max(node, default=0) for node in nu), default=0
                    ) + 4
                    for a in range(1, n):
                        i2 = (big // up2[a - 1] + 1) * up2[a - 1]
                        assert vacancy2(at, L, nu, a, i2) == 2 * (
                            lam[a - 1] - lam[a]
                        )
                    i2 = (big // up2[n - 1] + 1) * up2[n - 1]
                    got = vacancy2(at, L, nu, n, i2)
                    if at.family in ("B1", "D2"):
                        want = 4 * lam[n - 1]
                    elif at.family == "D1":
                        want = 2 * (lam[n - 2] + lam[n - 1])
                    elif at.family == "A1":
                        want = 2 * (lam[n - 1] - lam[n])
                    else:
                        want = 2 * lam[n - 1]
                    assert got == want


def test_admissibility_equivalence():
    # checking only occupied lengths is equivalent to the full check
    for at in GRID_TYPES:
        for L in range(0, 4):
            for lam in dominant_weights(at, L):
                for nu in all_sized_configs(at, lam, L):
                    assert is_admissible_config(
                        at, L, nu
                    ) == is_admissible_config_full(at, L, nu)


def test_enumerate_rc_trivial():
    for at in GRID_TYPES:
        L = 3
        lam = [0] * at.weight_len
        lam[0] = L
        rcs = enumerate_rc(at, tuple(lam), L)
        assert rcs == [tuple(tuple() for _ in range(at.n))]


def test_enumerate_rc_A2_single():
    at = AffineType("A2", 1)
    assert enumerate_rc(at, (0,), 1) == [(((2, 0),),)]


def test_enumerate_rc_counts_match_paths():
    at = AffineType("C1", 2)
    rcs = enumerate_rc(at, (1, 0), 3)
    paths = enumerate_highest(at, (1, 0), 3)
    assert len(rcs) == len(paths) == 3


def test_enumerate_rc_validates():
    for at in GRID_TYPES:
        for L in range(0, 4):
            for lam in dominant_weights(at, L):
                rcs = enumerate_rc(at, lam, L)
                assert len(set(rcs)) == len(rcs)
                for rc in rcs:
                    validate_rc(at, lam, L, rc)


def test_a2dag_odd_riggings_halfodd():
    at = AffineType("A2dag", 1)
    rcs = enumerate_rc(at, (1,), 3)
    odd = [rc for rc in rcs if any(ln == 2 for ln, _rg in rc[0])]
    assert odd == [(((2, 1), (2, 1)),)]  # both riggings 1/2


def test_cc_examples():
    at = AffineType("A2", 1)
    assert cc2_config(at, (tuple(),)) == 0
    assert cc2_config(at, ((2,),)) == 2  # cc = 1
    at = AffineType("C1", 2)
    assert cc2_config(at, ((2, 2), (4,))) == 6  # cc = 3, from the oracle


def test_cc_oracle():
    # independent expansion of the double sum with Fractions
    for at in GRID_TYPES:
        kd = kac_data(at)
        from rcbij.cartan import form2_matrix

        f2 = form2_matrix(at)
        for L in range(0, 3):
            for lam in dominant_weights(at, L):
                for nu in enumerate_configs(at, lam, L):
                    acc = Fraction(0)
                    for a in range(1, at.n + 1):
                        for b in range(1, at.n + 1):
                            for x2 in nu[a - 1]:
                                for y2 in nu[b - 1]:
                                    j = Fraction(x2, kd.up2[a - 1])
                                    k = Fraction(y2, kd.up2[b - 1])
                                    acc += Fraction(f2[a - 1][b - 1], 4) * min(
                                        kd.t_lat[b - 1] * j,
                                        kd.t_lat[a - 1] * k,
                                    )
                    assert acc == Fraction(cc2_config(at, nu), 2)


def test_cc_total_weighting():
    # A4(2): a rigging of size s contributes 2s
    at = AffineType("A2", 2)
    rc = (((2, 2),), tuple())
    nu = config_of(rc)
    assert cc2_total(at, rc) - cc2_config(at, nu) == 2 * 2
    # A2dag odd string: rigging 1/2 contributes 1/2
    at = AffineType("A2dag", 1)
    rc = (((2, 1),),)
    assert cc2_total(at, rc) - cc2_config(at, config_of(rc)) == 1


def test_complement():
    at = AffineType("C1", 2)
    for L in range(0, 4):
        for lam in dominant_weights(at, L):
            for rc in enumerate_rc(at, lam, L):
                crc = complement(at, L, rc)
                assert config_of(crc) == config_of(rc)
                assert complement(at, L, crc) == rc
    # all-zero riggings become the vacancy numbers
    rc = (((4, 0),), ((4, 0),))
    crc = complement(at, 3, rc)
    nu = config_of(rc)
    assert crc[0][0][1] == vacancy2(at, 3, nu, 1, 4)
    # A2dag odd string with vacancy 1: rigging 1/2 is a fixed point
    at = AffineType("A2dag", 1)
    assert complement(at, 2, (((2, 1),),)) == (((2, 1),),)


def test_fermionic_m_equals_rc_genfun():
    for at in GRID_TYPES:
        if at.family == "A2dag":
            continue
        for L in range(0, 4):
            for lam in dominant_weights(at, L):
                assert fermionic_m(at, lam, L) == rc_genfun(at, lam, L), (
                    at, lam, L,
                )


def test_fermionic_m_examples():
    at = AffineType("C1", 3)
    lam = (3, 0, 0)
    assert fermionic_m(at, lam, 3) == QPoly.one()
    assert fermionic_m(AffineType("A2", 1), (0,), 1) == QPoly.q_power(2)


def test_json_roundtrip():
    at = AffineType("C1", 2)
    lam, L = (1, 0), 3
    for rc in enumerate_rc(at, lam, L):
        blob = json.dumps(rc_to_json(at, lam, L, rc))
        at2, lam2, L2, rc2 = rc_from_json(json.loads(blob))
        assert (at2, lam2, L2, rc2) == (at, lam, L, rc)
