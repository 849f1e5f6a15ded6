"""Rigged configurations: vacancy numbers, enumeration, cc, and M-bar.

Representation conventions, used across the package:

* a configuration ``nu`` is a tuple with one entry per classical node
  a = 1..n; entry a-1 is a tuple of doubled string lengths (len2),
  sorted descending.  A length of 3/2 is stored as 3.
* a rigged configuration ``rc`` is the same shape with (len2, rig2)
  pairs, sorted descending; riggings are doubled too.

Everything is exact integer arithmetic; the only Fractions appear in the
general vacancy formula kept around as a cross-check oracle.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from .cartan import AffineType, form2_matrix, iota_image, kac_data
from .qpoly import QPoly, qbinom

INF = 10 ** 9  # larger than any doubled length


def q2(part_lens, i2: int) -> int:
    """Doubled area of the first i2/2 columns: sum of min(len2, i2)."""
    return sum(min(x, i2) for x in part_lens)


def normalized_sizes(at: AffineType, lam, L: int):
    """Column sums required of a lam-configuration, or None if impossible.

    Entry a-1 is sum_i i*m_i at node a in normalized units.  None means
    the linear system has no nonnegative integer solution, i.e. there are
    no configurations (and no paths) for this weight at all.
    """
    c = iota_image(at, lam, L)
    out = []
    for x in c:
        if x.denominator != 1 or x < 0:
            return None
        out.append(int(x))
    return tuple(out)


def node_areas(at: AffineType, lam, L: int):
    """Doubled areas per node (len2 totals), or None."""
    c = normalized_sizes(at, lam, L)
    if c is None:
        return None
    up2 = kac_data(at).up2
    return tuple(ci * u for ci, u in zip(c, up2))


def vacancy2(at: AffineType, L: int, nu, a: int, i2: int) -> int:
    """Doubled vacancy number at node a, doubled length i2 (> 0)."""
    n = at.n
    up2 = kac_data(at).up2
    if i2 <= 0 or i2 % up2[a - 1] != 0:
        raise ValueError("index %d not on the node-%d lattice" % (i2, a))

    def Q(b):
        return q2(nu[b - 1], i2) if 1 <= b <= n else 0

    fam = at.family
    base = 2 * L if a == 1 else 0
    if fam == "A1":
        return base + Q(a - 1) - 2 * Q(a) + Q(a + 1)
    if fam == "D1":
        if a <= n - 3:
            return base + Q(a - 1) - 2 * Q(a) + Q(a + 1)
        if a == n - 2:
            return base + Q(n - 3) - 2 * Q(n - 2) + Q(n - 1) + Q(n)
        return base + Q(n - 2) - 2 * Q(a)
    if fam == "B1":
        if a <= n - 2:
            return base + Q(a - 1) - 2 * Q(a) + Q(a + 1)
        if a == n - 1:
            return base + Q(n - 2) - 2 * Q(n - 1) + 2 * Q(n)
        return base + 2 * Q(n - 1) - 4 * Q(n)
    if fam in ("C1", "A2", "A2dag"):
        if a < n:
            return base + Q(a - 1) - 2 * Q(a) + Q(a + 1)
        return base + Q(n - 1) - Q(n)
    if fam == "A2odd":
        if a <= n - 2:
            return base + Q(a - 1) - 2 * Q(a) + Q(a + 1)
        if a == n - 1:
            return base + Q(n - 2) - 2 * Q(n - 1) + 2 * Q(n)
        return base + Q(n - 1) - 2 * Q(n)
    if fam == "D2":
        if a < n:
            return base + Q(a - 1) - 2 * Q(a) + Q(a + 1)
        return base + 2 * Q(n - 1) - 2 * Q(n)
    raise ValueError(fam)


def vacancy2_general(at: AffineType, L: int, nu, a: int, i2: int):
    """The general vacancy formula, doubled; cross-check oracle.

    p_i^(a) = sum_k L_k^(a) min(i,k)
              - (1/t_a^vee) sum_b (a~_a|a~_b) min(t_b i, t_a k) m_k^(b)
    in normalized indices, returned as a Fraction of the doubled value.
    """
    kd = kac_data(at)
    form2 = form2_matrix(at)
    n = at.n
    i_norm = Fraction(i2, kd.up2[a - 1])
    total = Fraction(L) * min(i_norm, 1) if a == 1 else Fraction(0)
    acc = Fraction(0)
    for b in range(1, n + 1):
        fb = form2[a - 1][b - 1]
        if fb == 0:
            continue
        tb, ta = kd.t_lat[b - 1], kd.t_lat[a - 1]
        for x2 in nu[b - 1]:
            k_norm = Fraction(x2, kd.up2[b - 1])
            acc += Fraction(fb, 2) * min(tb * i_norm, ta * k_norm)
    total -= acc / kd.t_vee[a - 1]
    return 2 * total


def _strings_by_len(node):
    """Group a node's (len2, rig2) pairs: dict len2 -> sorted rig2 list."""
    out: dict[int, list] = {}
    for ln, rg in node:
        out.setdefault(ln, []).append(rg)
    for v in out.values():
        v.sort(reverse=True)
    return out


def config_of(rc):
    """Forget the riggings."""
    return tuple(tuple(ln for ln, _ in node) for node in rc)


def is_admissible_config(at: AffineType, L: int, nu) -> bool:
    """Nonnegative vacancies at occupied lengths (full check is equivalent).

    For A2dag additionally requires vacancy >= 1 on occupied odd lengths
    at the last node.
    """
    n = at.n
    for a in range(1, n + 1):
        for i2 in set(nu[a - 1]):
            p2 = vacancy2(at, L, nu, a, i2)
            if p2 < 0:
                return False
            if (
                at.family == "A2dag"
                and a == n
                and (i2 // 2) % 2 == 1
                and p2 < 2
            ):
                return False
    return True


def is_admissible_config_full(at: AffineType, L: int, nu) -> bool:
    """Admissibility checked on every lattice index up to the longest string."""
    n = at.n
    up2 = kac_data(at).up2
    for a in range(1, n + 1):
        top = max(nu[a - 1], default=0) + up2[a - 1]
        for i2 in range(up2[a - 1], top + 1, up2[a - 1]):
            if vacancy2(at, L, nu, a, i2) < 0:
                return False
            if (
                at.family == "A2dag"
                and a == n
                and (i2 // 2) % 2 == 1
                and i2 in nu[a - 1]
                and vacancy2(at, L, nu, a, i2) < 2
            ):
                return False
    return True


@lru_cache(maxsize=None)
def _partitions(total: int):
    """All weakly decreasing tuples of positive ints with the given sum."""
    if total == 0:
        return (tuple(),)
    out = []

    def rec(remaining, maxpart, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for p in range(min(remaining, maxpart), 0, -1):
            acc.append(p)
            rec(remaining - p, p, acc)
            acc.pop()

    rec(total, total, [])
    return tuple(out)


def enumerate_configs(at: AffineType, lam, L: int):
    """All admissible lam-configurations (configuration parts only)."""
    sizes = normalized_sizes(at, lam, L)
    if sizes is None:
        return []
    up2 = kac_data(at).up2
    per_node = [
        [tuple(p * up2[a] for p in part) for part in _partitions(c)]
        for a, c in enumerate(sizes)
    ]
    out = []
    for nu in product(*per_node):
        if is_admissible_config(at, L, nu):
            out.append(nu)
    return out


def _multisets(values, m: int):
    """Weakly decreasing m-tuples drawn (with repetition) from values."""
    values = sorted(values, reverse=True)

    def rec(idx, left, acc):
        if left == 0:
            yield tuple(acc)
            return
        for j in range(idx, len(values)):
            acc.append(values[j])
            yield from rec(j, left - 1, acc)
            acc.pop()

    yield from rec(0, m, [])


def _rigging_choices(at: AffineType, L: int, nu, a: int, i2: int, m: int):
    """All rigging multisets for the m strings of length i2 at node a."""
    p2 = vacancy2(at, L, nu, a, i2)
    if at.family == "A2dag" and a == at.n and (i2 // 2) % 2 == 1:
        # half-odd riggings 1/2, 3/2, ..., p - 1/2 on every string
        vals = range(1, p2, 2)
    else:
        vals = range(0, p2 + 1, 2)
    return list(_multisets(list(vals), m))


def enumerate_rc(at: AffineType, lam, L: int):
    """All rigged configurations for the weight lam, in normal form."""
    out = []
    for nu in enumerate_configs(at, lam, L):
        groups = []  # (a, i2, m)
        for a in range(1, at.n + 1):
            seen = {}
            for x2 in nu[a - 1]:
                seen[x2] = seen.get(x2, 0) + 1
            for i2 in sorted(seen, reverse=True):
                groups.append((a, i2, seen[i2]))
        choice_lists = [
            _rigging_choices(at, L, nu, a, i2, m) for a, i2, m in groups
        ]
        for picks in product(*choice_lists):
            nodes = [[] for _ in range(at.n)]
            for (a, i2, _m), rigs in zip(groups, picks):
                for rg in rigs:
                    nodes[a - 1].append((i2, rg))
            rc = tuple(
                tuple(sorted(node, reverse=True)) for node in nodes
            )
            out.append(rc)
    return out


def validate_rc(at: AffineType, lam, L: int, rc) -> None:
    """Assert every structural invariant; raises AssertionError on failure."""
    nu = config_of(rc)
    kd = kac_data(at)
    areas = node_areas(at, lam, L)
    assert areas is not None, "no configurations exist for this weight"
    for a in range(1, at.n + 1):
        assert sum(nu[a - 1]) == areas[a - 1], "size constraint violated"
        for ln in nu[a - 1]:
            assert ln > 0 and ln % kd.up2[a - 1] == 0, "length off lattice"
    assert is_admissible_config(at, L, nu), "inadmissible configuration"
    for a in range(1, at.n + 1):
        for i2, rigs in _strings_by_len(rc[a - 1]).items():
            p2 = vacancy2(at, L, nu, a, i2)
            odd = (
                at.family == "A2dag" and a == at.n and (i2 // 2) % 2 == 1
            )
            for rg in rigs:
                if odd:
                    assert rg % 2 == 1 and 1 <= rg <= p2 - 1, "bad odd rigging"
                else:
                    assert rg % 2 == 0 and 0 <= rg <= p2, "rigging out of box"


def cc2_config(at: AffineType, nu) -> int:
    """Doubled configuration statistic (the quadratic form part)."""
    kd = kac_data(at)
    form2 = form2_matrix(at)
    n = at.n
    total = 0
    for a in range(1, n + 1):
        ta = kd.t_lat[a - 1]
        for b in range(1, n + 1):
            fb = form2[a - 1][b - 1]
            if fb == 0:
                continue
            tb = kd.t_lat[b - 1]
            for x2 in nu[a - 1]:
                j = x2 // kd.up2[a - 1]
                for y2 in nu[b - 1]:
                    k = y2 // kd.up2[b - 1]
                    total += fb * min(tb * j, ta * k)
    assert total % 2 == 0
    return total // 2


def cc2_total(at: AffineType, rc) -> int:
    """Doubled cc statistic: configuration part plus weighted rigging area."""
    kd = kac_data(at)
    total = cc2_config(at, config_of(rc))
    for a in range(1, at.n + 1):
        tv = kd.t_vee[a - 1]
        total += tv * sum(rg for _ln, rg in rc[a - 1])
    return total


def complement(at: AffineType, L: int, rc):
    """Complement every rigging in its box; an involution."""
    nu = config_of(rc)
    out = []
    for a in range(1, at.n + 1):
        node = []
        for ln, rg in rc[a - 1]:
            p2 = vacancy2(at, L, nu, a, ln)
            node.append((ln, p2 - rg))
        out.append(tuple(sorted(node, reverse=True)))
    return tuple(out)


def rc_genfun(at: AffineType, lam, L: int) -> QPoly:
    """Generating function of rigged configurations by cc."""
    out: dict[int, int] = {}
    for rc in enumerate_rc(at, lam, L):
        e2 = cc2_total(at, rc)
        out[e2] = out.get(e2, 0) + 1
    return QPoly(out)


def fermionic_m(at: AffineType, lam, L: int) -> QPoly:
    """The fermionic sum: q^cc times a product of Gaussian binomials.

    For A2dag the closed binomial form is not part of this artifact; the
    rigged-configuration generating function is returned instead.
    """
    if at.family == "A2dag":
        return rc_genfun(at, lam, L)
    kd = kac_data(at)
    total = QPoly.zero()
    for nu in enumerate_configs(at, lam, L):
        term = QPoly.q_power(cc2_config(at, nu))
        for a in range(1, at.n + 1):
            seen = {}
            for x2 in nu[a - 1]:
                seen[x2] = seen.get(x2, 0) + 1
            for i2, m in seen.items():
                p2 = vacancy2(at, L, nu, a, i2)
                assert p2 % 2 == 0
                term = term * qbinom(p2 // 2, m, kd.t_vee[a - 1])
        total = total + term
    return total


def rc_to_json(at: AffineType, lam, L: int, rc) -> dict:
    return {
        "type": at.family,
        "n": at.n,
        "L": L,
        "lambda": list(lam),
        "nu": [
            {
                "a": a,
                "strings": [
                    {"len2": ln, "rig2": rg} for ln, rg in rc[a - 1]
                ],
            }
            for a in range(1, at.n + 1)
        ],
    }


def rc_from_json(data: dict):
    at = AffineType(data["type"], data["n"])
    lam = tuple(data["lambda"])
    L = data["L"]
    nodes = [[] for _ in range(at.n)]
    for entry in data["nu"]:
        a = entry["a"]
        for s in entry["strings"]:
            nodes[a - 1].append((s["len2"], s["rig2"]))
    rc = tuple(tuple(sorted(node, reverse=True)) for node in nodes)
    return at, lam, L, rc
