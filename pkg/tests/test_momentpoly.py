"""Moment polynomials: parsing, membership criterion, one-form cofactors."""

from fractions import Fraction

import pytest

from assigncoh import (
    ArityError,
    ConditionFailedError,
    FormCoefficients,
    MomentPolynomial,
    NonzeroConstantTermError,
    ParseError,
    ScalarPoly,
    WeightMatrix,
    check_moment_condition,
    decompose,
    parse_poly,
    recombine,
    verify_decomposition,
)

W1 = WeightMatrix.from_rows([(1,)])
W2 = WeightMatrix.from_rows([(1,), (-1,)])
WSTD = WeightMatrix.from_rows([(1, 0), (0, 1)])


# ---------------------------------------------------------------------------
# parsing

def test_parse_single_term():
    p = parse_poly("[1] z1 zb1", W1)
    assert p.terms == {((1,), (1,)): (Fraction(1),)}


def test_parse_merges_repeated_monomials():
    p = parse_poly("[1] z1 + [2] z1", W1)
    assert p.terms == {((1,), (0,)): (Fraction(3),)}
    q = parse_poly("[1] z1 - [1] z1", W1)
    assert q.is_zero()


def test_parse_rational_vectors_signs_and_powers():
    p = parse_poly("[-1/2, 3] z1^2 zb2 - [0, 1/4] * z2", WSTD)
    assert p.terms == {
        ((2, 0), (0, 1)): (Fraction(-1, 2), Fraction(3)),
        ((0, 1), (0, 0)): (Fraction(0), Fraction(-1, 4)),
    }


def test_parse_leading_sign_and_constant():
    p = parse_poly("-[1] z1 + [2] z1", W1)
    assert p.terms == {((1,), (0,)): (Fraction(1),)}
    c = parse_poly("[5]", W1)
    assert c.terms == {((0,), (0,)): (Fraction(5),)}


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as exc:
        parse_poly("[1/2 z1", W1)
    assert "expected ']', found 'z1'" in str(exc.value)
    assert "position 5" in str(exc.value)
    assert exc.value.position == 5
    assert issubclass(ParseError, SyntaxError)


def test_parse_error_unexpected_character():
    with pytest.raises(ParseError):
        parse_poly("[1] w1", W1)
    with pytest.raises(ParseError):
        parse_poly("", W1)
    with pytest.raises(ParseError):
        parse_poly("[1] z1 +", W1)


def test_parse_zero_denominator():
    with pytest.raises(ParseError):
        parse_poly("[1/0] z1", W1)


def test_parse_arity_errors():
    with pytest.raises(ArityError):
        parse_poly("[1, 2] z1", W1)          # vector too long
    with pytest.raises(ArityError):
        parse_poly("[1] z3", WSTD)           # no third variable
    with pytest.raises(ArityError):
        parse_poly("[1] zb9", W2)


def test_text_roundtrip():
    texts = [
        "[1] z1 zb1",
        "[-1/2, 3] z1^2 zb2 + [0, 1/4] z2",
        "[2, 0] z1 z2 + [0, 2] zb1 zb2",
    ]
    for s in texts:
        w = W1 if s == texts[0] else WSTD
        p = parse_poly(s, w)
        assert parse_poly(p.to_text(), w) == p


def test_zero_poly_text():
    assert MomentPolynomial(WSTD, {}).to_text() == "[0,0]"
    p = parse_poly("[0, 0] z1", WSTD)
    assert p.is_zero()


def test_add_scale():
    p = parse_poly("[1] z1", W1)
    q = parse_poly("[1] zb1", W1)
    assert p.add(q).to_text() == "[1] zb1 + [1] z1"
    assert p.scale(Fraction(-1)).add(p).is_zero()
    with pytest.raises(ValueError):
        p.add(parse_poly("[1, 0] z1", WSTD))


# ---------------------------------------------------------------------------
# membership criterion

def test_norm_square_passes():
    p = parse_poly("[1] z1 zb1", W1)
    assert check_moment_condition(p).ok


def test_trivial_weight_fails_at_the_named_monomial():
    w = WeightMatrix.from_rows([(0,)], torus_dim=1)
    p = MomentPolynomial(w, {((1,), (0,)): (Fraction(1),)})
    report = check_moment_condition(p)
    assert not report.ok
    assert report.failing == (((1,), (0,)),)


def test_mixed_term_with_opposite_weights_passes():
    p = parse_poly("[1] z1 z2", W2)
    assert check_moment_condition(p).ok


def test_term_outside_the_span_fails():
    # z1 carries weight (1,0); a (0,1) coefficient cannot come from it
    p = parse_poly("[0, 1] z1", WSTD)
    report = check_moment_condition(p)
    assert report.failing == (((1, 0), (0, 0)),)


def test_constant_term_is_rejected():
    p = parse_poly("[1] + [1] z1", W1)
    with pytest.raises(NonzeroConstantTermError):
        check_moment_condition(p)


# ---------------------------------------------------------------------------
# decomposition

def test_decompose_norm_square():
    p = parse_poly("[1] z1 zb1", W1)
    fc = decompose(p)
    f1, g1 = fc.pairs[0]
    assert f1.to_text() == "zb1"
    assert g1.is_zero()
    assert verify_decomposition(p, fc)


def test_decompose_sum_of_norm_squares():
    w = WeightMatrix.from_rows([(1,), (1,)], torus_dim=1)
    p = MomentPolynomial(w, {
        ((1, 0), (1, 0)): (Fraction(1),),
        ((0, 1), (0, 1)): (Fraction(1),),
    })
    fc = decompose(p)
    assert fc.pairs[0][0].to_text() == "zb1"
    assert fc.pairs[1][0].to_text() == "zb2"
    assert all(g.is_zero() for _, g in fc.pairs)
    assert verify_decomposition(p, fc)


def test_decompose_mixed_term_prefers_low_index():
    p = parse_poly("[1] z1 z2", W2)
    fc = decompose(p)
    assert [f.to_text() for f, _ in fc.pairs] == ["z2", "0"]
    assert all(g.is_zero() for _, g in fc.pairs)
    assert verify_decomposition(p, fc)


def test_decompose_antiholomorphic_term():
    p = parse_poly("[1] zb1", W1)
    fc = decompose(p)
    f1, g1 = fc.pairs[0]
    assert f1.is_zero()
    assert g1.to_text() == "1"
    assert verify_decomposition(p, fc)


def test_decompose_raises_with_failing_monomials():
    p = parse_poly("[0, 1] z1", WSTD)
    with pytest.raises(ConditionFailedError) as exc:
        decompose(p)
    assert exc.value.failing == (((1, 0), (0, 0)),)


def test_one_form_text():
    p = parse_poly("[1] z1 z2", W2)
    fc = decompose(p)
    assert fc.one_form_text() == (
        "mu = -sqrt(-1) * [ (z2) dz1 - (0) dzb1 + (0) dz2 - (0) dzb2 ]"
    )


def test_verify_rejects_wrong_cofactors():
    p = parse_poly("[1] z1 zb1", W1)
    zero = ScalarPoly(1)
    bad = FormCoefficients(W1, ((zero, zero),))
    assert not verify_decomposition(p, bad)
    assert verify_decomposition(MomentPolynomial(W1, {}), bad)


def test_hand_built_symmetric_split_verifies():
    # z1 zb1 also splits evenly: f1 = zb1/2, g1 = z1/2
    p = parse_poly("[1] z1 zb1", W1)
    f1 = ScalarPoly(1, {((0,), (1,)): Fraction(1, 2)})
    g1 = ScalarPoly(1, {((1,), (0,)): Fraction(1, 2)})
    fc = FormCoefficients(W1, ((f1, g1),))
    assert verify_decomposition(p, fc)


def test_recombine_is_linear():
    p = parse_poly("[1] z1 zb1 + [2] z1^2 zb1", W1)
    fc = decompose(p)
    doubled = FormCoefficients(W1, tuple(
        (ScalarPoly(1, {k: 2 * c for k, c in f.terms.items()}),
         ScalarPoly(1, {k: 2 * c for k, c in g.terms.items()}))
        for f, g in fc.pairs
    ))
    assert recombine(doubled) == p.scale(2)
