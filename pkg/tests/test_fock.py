"""Fock space basics: canonical monomials, signs, bilinear form, truncation."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fockcalc import (
    FockVector,
    InvalidPart,
    Rat,
    TruncationExceeded,
    bidegree,
    canonicalize,
    fh_support_bound,
    inner_product,
    monomial_basis,
    render_vector,
    set_max_weight,
)
from fockcalc.fock import partitions_of, prepend_part
from fockcalc.operators import gram_matrix
from fockcalc._linalg import rank


def vec(alg, *parts):
    return canonicalize(alg, [(s, alg.basis_element(c)) for s, c in parts])


# -- canonicalization -----------------------------------------------------------


def test_canonicalize_examples(p2, torus):
    h = p2.basis_element("h")
    v = canonicalize(p2, [(1, h), (2, h)])
    ih = p2.index_of["h"]
    assert v.terms == {((2, ih), (1, ih)): 1}

    x1, x2 = torus.basis_element("x1"), torus.basis_element("x2")
    assert canonicalize(torus, [(1, x1), (1, x1)]).is_zero()
    flipped = canonicalize(torus, [(1, x2), (1, x1)])
    i1, i2 = torus.index_of["x1"], torus.index_of["x2"]
    assert flipped.terms == {((1, i1), (1, i2)): -1}


def test_canonicalize_rejects_bad_sizes(p2):
    with pytest.raises(InvalidPart):
        canonicalize(p2, [(0, p2.unit())])


def test_canonicalize_multilinear(p2):
    h, h2 = p2.basis_element("h"), p2.basis_element("h2")
    combo = canonicalize(p2, [(2, h + h2.scale(3))])
    assert combo == vec(p2, (2, 1)) + vec(p2, (2, 2)).scale(3)


def brute_koszul_sign(parts, parities):
    """Independent sign oracle: bubble the list into canonical order, counting
    -1 for every adjacent swap of two odd factors."""
    work = list(parts)
    sign = 1
    keyed = lambda p: (-p[0], p[1])
    changed = True
    while changed:
        changed = False
        for k in range(len(work) - 1):
            if keyed(work[k]) > keyed(work[k + 1]):
                if parities[work[k][1]] and parities[work[k + 1][1]]:
                    sign = -sign
                work[k], work[k + 1] = work[k + 1], work[k]
                changed = True
    return sign, tuple(work)


@settings(max_examples=120, deadline=None)
@given(st.data())
def test_canonicalize_sign_consistent_under_permutation(data):
    from fockcalc import load_preset
    torus = load_preset("torus_like")
    parts = data.draw(st.lists(
        st.tuples(st.integers(1, 3), st.integers(0, torus.dim - 1)),
        min_size=1, max_size=4))
    perm = data.draw(st.permutations(range(len(parts))))
    base = canonicalize(torus, [(s, torus.basis_element(c)) for s, c in parts])
    permuted_parts = [parts[k] for k in perm]
    permuted = canonicalize(
        torus, [(s, torus.basis_element(c)) for s, c in permuted_parts])
    # Koszul sign of the permutation itself, from the independent oracle
    sign_base, mono = brute_koszul_sign(parts, torus.parities)
    sign_perm, mono2 = brute_koszul_sign(permuted_parts, torus.parities)
    odd = [p for p in parts if torus.parities[p[1]]]
    if len(set(odd)) != len(odd):
        assert base.is_zero() and permuted.is_zero()
    else:
        assert mono == mono2
        assert base.terms == {mono: Rat(sign_base)}
        assert permuted.terms == {mono: Rat(sign_perm)}


def test_canonicalize_permutation_invariant_even_colors(p2):
    parts = [(2, 1), (1, 0), (1, 2), (2, 1)]
    expect = canonicalize(p2, [(s, p2.basis_element(c)) for s, c in parts])
    for perm in itertools.permutations(parts):
        got = canonicalize(p2, [(s, p2.basis_element(c)) for s, c in perm])
        assert got == expect


# -- bidegree and filtration -----------------------------------------------------


def test_bidegree_examples(p2):
    assert bidegree(vec(p2, (2, 1))) == (2, 4)
    assert bidegree(FockVector.vacuum(p2)) == (0, 0)
    mixed = vec(p2, (1, 0)) + vec(p2, (2, 0))
    assert bidegree(mixed) is None


def test_fh_support_bound(p2):
    v = vec(p2, (3, 1), (1, 0))
    assert fh_support_bound(v, 2)
    assert not fh_support_bound(v, 1)
    assert fh_support_bound(FockVector.zero(p2), 0)


# -- monomial basis ----------------------------------------------------------------


def count_colored_partitions(n, algebra):
    """Independent dimension oracle: multiset color choices per part size,
    odd colors at most once."""
    odd = sum(1 for p in algebra.parities if p)
    even = algebra.dim - odd
    total = 0
    for lam in partitions_of(n):
        ways = 1
        for size, grp in itertools.groupby(lam):
            mult = sum(1 for _ in grp)
            ways *= sum(
                _comb(odd, k) * _comb(even + (mult - k) - 1, mult - k)
                for k in range(min(odd, mult) + 1))
        total += ways
    return total


def _comb(n, k):
    import math
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def test_monomial_basis_examples(p2, point):
    assert len(monomial_basis(2, p2)) == 9
    assert monomial_basis(0, p2) == [()]
    assert monomial_basis(1, point) == [((1, 0),)]


def test_monomial_basis_counts_match_oracle(p2, p1xp1, torus, point):
    for alg, top in ((p2, 6), (p1xp1, 5), (torus, 4), (point, 8)):
        for n in range(top + 1):
            assert len(monomial_basis(n, alg)) == count_colored_partitions(n, alg)


def test_monomial_basis_sorted_and_unique(torus):
    basis = monomial_basis(3, torus)
    assert len(set(basis)) == len(basis)
    from fockcalc.fock import sort_key
    assert basis == sorted(basis, key=sort_key)


def test_point_basis_counts_partitions(point):
    for n in range(9):
        assert len(monomial_basis(n, point)) == len(partitions_of(n))


# -- inner product -----------------------------------------------------------------


def test_inner_product_examples(p2):
    one, h, h2 = p2.unit(), p2.basis_element("h"), p2.basis_element("h2")
    q1h = canonicalize(p2, [(1, h)])
    assert inner_product(q1h, q1h) == 1
    q2one = canonicalize(p2, [(2, one)])
    q11 = canonicalize(p2, [(1, one), (1, one)])
    assert inner_product(q2one, q11) == 0
    assert inner_product(q2one, canonicalize(p2, [(2, h2)])) == -2
    assert inner_product(FockVector.vacuum(p2), FockVector.vacuum(p2)) == 1


def test_inner_product_vanishes_across_bidegrees(p2):
    basis3 = [FockVector(p2, {m: Rat(1)}) for m in monomial_basis(3, p2)]
    from fockcalc.fock import degree
    for u in basis3:
        for v in basis3:
            du = bidegree(u)[1]
            dv = bidegree(v)[1]
            if du + dv != 12:
                assert inner_product(u, v) == 0


def test_super_symmetry(torus):
    monos = monomial_basis(2, torus) + monomial_basis(3, torus)[:40]
    from fockcalc.fock import degree
    for a in monos[:60]:
        for b in monos[:60]:
            u = FockVector(torus, {a: Rat(1)})
            v = FockVector(torus, {b: Rat(1)})
            sign = -1 if (degree(a, torus) & 1 and degree(b, torus) & 1) else 1
            assert inner_product(u, v) == sign * inner_product(v, u)


def test_gram_nondegenerate_low_weight(p2, torus, point):
    for alg, top in ((p2, 4), (torus, 2), (point, 5)):
        for n in range(1, top + 1):
            degrees = sorted({sum(2 * (s - 1) + alg.degrees[c] for s, c in m)
                              for m in monomial_basis(n, alg)})
            for i in degrees:
                rows, rbasis, cbasis = gram_matrix(alg, n, i)
                assert len(rbasis) == len(cbasis), (n, i)
                if rbasis:
                    assert rank(rows) == len(rbasis), (n, i)


# -- truncation --------------------------------------------------------------------


def test_truncation_guard(p2):
    prev = set_max_weight(3)
    try:
        with pytest.raises(TruncationExceeded):
            canonicalize(p2, [(2, p2.unit()), (2, p2.unit())])
        v = canonicalize(p2, [(3, p2.unit())])
        with pytest.raises(TruncationExceeded):
            prepend_part(next(iter(v.terms)), 1, 0, p2)
    finally:
        set_max_weight(prev)


# -- rendering ---------------------------------------------------------------------


def test_render_vector(p2):
    h = p2.basis_element("h")
    v = canonicalize(p2, [(2, h)]).scale(Rat(-1, 2))
    assert render_vector(v) == "-1/2 * q_2(h) |0>"
    v2 = canonicalize(p2, [(2, p2.unit())]) - canonicalize(p2, [(1, h)]).scale(3)
    assert render_vector(v2) == "-3 * q_1(h) |0> + 1 * q_2(1) |0>"
    assert render_vector(FockVector.zero(p2)) == "0"
    assert render_vector(FockVector.vacuum(p2)) == "1 * |0>"
