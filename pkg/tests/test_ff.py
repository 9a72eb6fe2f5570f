"""Field-layer unit tests: canonical moduli, characters, embeddings, polys."""
import pytest

from splitjac.ff import (Poly, embed, fel_key, first_nonsquare, frobenius,
                         make_field, poly_from_roots, poly_gcd, qchar, roots_in,
                         split_prime_power, square_class_part, squarefree_part,
                         squarefree_decomposition)


def test_split_prime_power():
    assert split_prime_power(49) == (7, 2)
    assert split_prime_power(13) == (13, 1)
    assert split_prime_power(27) == (3, 3)
    for bad in (1, 12, 0, -7):
        with pytest.raises(ValueError):
            split_prime_power(bad)


def test_canonical_moduli():
    assert make_field(7).modulus == (0, 1)
    assert make_field(7, 2).modulus == (1, 0, 1)   # x^2 + 1
    assert make_field(3, 2).modulus == (1, 0, 1)
    assert make_field(13, 2).modulus == (1, 3, 1)  # x^2 + 3x + 1
    # x^2 + 1 is reducible mod 13 (13 = 1 mod 4), mod 7 it is not
    f13 = make_field(13)
    assert any((u * u + 1).is_zero() for u in f13.elements())


def test_make_field_rejects_bad_input():
    for p in (2, 4, 9, 1):
        with pytest.raises(ValueError):
            make_field(p)
    with pytest.raises(ValueError):
        make_field(7, 0)
    with pytest.raises(ValueError):
        make_field(7, 13)


def test_field_interning():
    assert make_field(7, 2) is make_field(7, 2)
    assert make_field(11) is make_field(11, 1)


def test_element_enumeration_is_lex():
    f49 = make_field(7, 2)
    els = list(f49.elements())
    assert len(els) == 49
    keys = [fel_key(u) for u in els]
    assert keys == sorted(keys)
    assert keys[0] == (0, 0) and keys[1] == (0, 1)


def test_qchar_mod7():
    f7 = make_field(7)
    vals = {i: qchar(f7(i)) for i in range(7)}
    assert vals == {0: 0, 1: 1, 2: 1, 3: -1, 4: 1, 5: -1, 6: -1}


def test_square_census_f49():
    f49 = make_field(7, 2)
    squares = [u for u in f49.elements() if qchar(u) == 1]
    assert len(squares) == 24  # (49 - 1) / 2


def test_generator_of_f49_squares_to_minus_one():
    f49 = make_field(7, 2)
    z = f49((0, 1))
    assert z * z == -f49.one
    assert frobenius(z, 7) == -z
    assert frobenius(z, 49) == z


def test_frobenius_rejects_non_subfield():
    f49 = make_field(7, 2)
    with pytest.raises(ValueError):
        frobenius(f49.one, 5)
    f343 = make_field(7, 3)
    with pytest.raises(ValueError):
        frobenius(f343.one, 49)  # F_49 is not inside F_343


def test_field_axioms_sampled():
    f = make_field(5, 3)
    els = list(f.elements())
    sample = els[7:47:3]
    for u in sample:
        assert u + f.zero == u and u * f.one == u
        if not u.is_zero():
            assert u * u.inverse() == f.one
    for u, v in zip(sample, reversed(sample)):
        assert u + v == v + u and u * v == v * u
        assert (u + v) ** 5 == u ** 5 + v ** 5  # Frobenius is additive


def test_first_nonsquare():
    f7 = make_field(7)
    assert first_nonsquare(f7) == 3
    for field in (make_field(7, 2), make_field(11), make_field(3, 2)):
        d = first_nonsquare(field)
        assert qchar(d) == -1
        for u in field.elements():
            if fel_key(u) >= fel_key(d):
                break
            assert qchar(u) >= 0


def test_embed_prime_field_into_quadratic():
    f7, f49 = make_field(7), make_field(7, 2)
    for a in range(7):
        u = embed(f7(a), f49)
        assert u.coeffs == (a, 0)
        if a:
            # [F_49 : F_7] is even, so every base element becomes a square
            assert qchar(u) == 1


def test_embed_is_homomorphism():
    f49 = make_field(7, 2)
    f74 = make_field(7, 4)
    els = list(f49.elements())
    sample = list(zip(els[3:40:5], els[11:48:5]))
    for u, v in sample:
        assert embed(u, f74) * embed(v, f74) == embed(u * v, f74)
        assert embed(u, f74) + embed(v, f74) == embed(u + v, f74)
    z = f49((0, 1))
    w = embed(z, f74)
    assert w * w == -f74.one
    # embedding is cached and deterministic
    assert embed(z, f74) == w


def test_embed_square_class_odd_extension():
    # [F_{7^3} : F_7] is odd: the quadratic character is preserved
    f7, f343 = make_field(7), make_field(7, 3)
    for a in range(1, 7):
        assert qchar(embed(f7(a), f343)) == qchar(f7(a))


def test_embed_rejects_non_divisible():
    f49, f343 = make_field(7, 2), make_field(7, 3)
    with pytest.raises(ValueError):
        embed(f49.one, f343)


def test_poly_division_identity():
    f = make_field(13)
    a = Poly(f, [3, 0, 1, 7, 2])
    b = Poly(f, [5, 1, 6])
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


def test_poly_gcd_coprime():
    f7 = make_field(7)
    g = poly_gcd(Poly(f7, [1, 0, 1]), Poly(f7, [-1, 1]))
    assert g == Poly(f7, [1])


def test_roots_in_basic():
    f7 = make_field(7)
    f = poly_from_roots(f7, [f7(0), f7(1), f7(3)])
    assert [u.coeffs[0] for u in roots_in(f, f7)] == [0, 1, 3]


def test_roots_in_extension():
    f7, f49 = make_field(7), make_field(7, 2)
    f = Poly(f7, [1, 0, 1])  # x^2 + 1, irreducible over F_7
    assert roots_in(f, f7) == []
    rts = roots_in(f, f49)
    assert len(rts) == 2 and rts[0] == -rts[1]


def test_squarefree_machinery():
    f7 = make_field(7)
    x = Poly(f7, [0, 1])
    f = x * x * (x - 1)
    assert squarefree_part(f) == x * (x - 1)
    assert square_class_part(f) == x - Poly(f7, [1])  # odd-multiplicity part
    decomp = squarefree_decomposition(f)
    assert decomp == [(x - Poly(f7, [1]), 1), (x, 2)]


def test_squarefree_decomposition_char_p():
    f3 = make_field(3)
    x = Poly(f3, [0, 1])
    f = (x - 1) * (x - 1) * (x - 1)  # derivative vanishes identically
    assert squarefree_decomposition(f) == [(x - Poly(f3, [1]), 3)]
    assert square_class_part(f) == x - Poly(f3, [1])
    g = x * x * f
    assert squarefree_decomposition(g) == [(x, 2), (x - Poly(f3, [1]), 3)]
    assert square_class_part(g) == x - Poly(f3, [1])


def test_square_class_part_tracks_lead():
    f7 = make_field(7)
    x = Poly(f7, [0, 1])
    f = 3 * (x * x) * (x - 2)
    assert square_class_part(f) == 3 * (x - 2 * Poly(f7, [1]))


def test_fel_int_interop():
    f7 = make_field(7)
    assert f7(3) == 3 and 3 + f7(5) == 1 and 2 * f7(4) == 1
    assert 1 / f7(3) == 5  # 3 * 5 = 15 = 1 mod 7
    assert f7(3) ** -1 == 5
    assert (f7(6) - 8) == 5


def test_poly_eval_and_map_field():
    f7, f49 = make_field(7), make_field(7, 2)
    f = Poly(f7, [2, 0, 3])  # 3x^2 + 2
    assert f(f7(2)) == 0  # 12 + 2 = 14
    g = f.map_field(f49)
    assert g(embed(f7(2), f49)).is_zero()
