from collections import Counter, defaultdict
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nsemigroup.algebra import INTEGERS, PrimeField, RingElem
from nsemigroup.boolcls import BoolForm, canonical_op
from nsemigroup.enumeration import naive_is_associative
from nsemigroup.errors import InputError
from nsemigroup.finops import FiniteOp
from nsemigroup.mlpoly import (
    FIRST_PROJ,
    GF2,
    LAST_PROJ,
    NO_FORM,
    FormKind,
    MarMatForm,
    MultilinearPoly,
    anf,
    classify_marmat,
    compose_at,
    eval_poly,
    from_anf,
    from_form,
    is_associative_poly,
    matching_forms,
    pointwise_associative,
    poly_from_index,
    poly_index,
    to_finite_op,
)

GF3 = PrimeField(3)


def poly(ring, n, coeffs):
    return MultilinearPoly.from_coeffs(ring, n, coeffs)


X1X2 = poly(INTEGERS, 2, {(1, 2): 1})
DIFF = poly(INTEGERS, 2, {(1,): 1, (2,): -1})
PROD2 = poly(INTEGERS, 2, {(1, 2): 2, (1,): 1, (2,): 1})
OMEGA3 = poly(GF3, 3, {(1,): 1, (2,): 2, (3,): 1})
GF2_X1X2_PLUS_1 = poly(GF2, 2, {(1, 2): 1, (): 1})


def test_eval_examples():
    assert eval_poly(X1X2, (3, 4)) == 12
    assert eval_poly(PROD2, (1, 1)) == 4
    assert eval_poly(OMEGA3, (1, 1, 1)) == GF3.elem(1)
    with pytest.raises(InputError):
        eval_poly(X1X2, (1,))
    with pytest.raises(InputError):
        eval_poly(OMEGA3, (GF3.elem(1), PrimeField(5).elem(1), 0))


def test_compose_examples():
    s = poly(INTEGERS, 2, {(1,): 1, (2,): 1})
    assert compose_at(s, 0) == poly(INTEGERS, 3, {(1,): 1, (2,): 1, (3,): 1})
    for i in (0, 1):
        assert compose_at(X1X2, i) == poly(INTEGERS, 3, {(1, 2, 3): 1})
    q0, q1 = compose_at(DIFF, 0), compose_at(DIFF, 1)
    assert q0 == poly(INTEGERS, 3, {(1,): 1, (2,): -1, (3,): -1})
    assert q1 == poly(INTEGERS, 3, {(1,): 1, (2,): -1, (3,): 1})
    # oracle: nest the evaluations directly at (0, 0, 1)
    assert eval_poly(q0, (0, 0, 1)) == eval_poly(DIFF, (eval_poly(DIFF, (0, 0)).value, 1)) == -1
    assert eval_poly(q1, (0, 0, 1)) == eval_poly(DIFF, (0, eval_poly(DIFF, (0, 1)).value)) == 1
    with pytest.raises(InputError):
        compose_at(DIFF, 2)


def test_compose_product_form_by_hand():
    # p(p(a,b),c) = 4abc + 2ab + 2ac + 2bc + a + b + c, symmetric in a, b, c
    want = poly(INTEGERS, 3, {(1, 2, 3): 4, (1, 2): 2, (1, 3): 2, (2, 3): 2,
                              (1,): 1, (2,): 1, (3,): 1})
    assert compose_at(PROD2, 0) == compose_at(PROD2, 1) == want


def _expand_by_monomial_lists(p, i):
    """Composition by brute multiset expansion, independent of the bitmask code."""
    n = p.n
    out = defaultdict(int)
    for s, cs in p.coeffs.items():
        # outer slot j -> variable: j < i keeps j+1; slot i is inner; j > i shifts by n-1
        outer = [v if v <= i else v + n - 1 for v in s if v != i + 1]
        if i + 1 in s:
            for t, ct in p.coeffs.items():
                mono = Counter(outer + [v + i for v in t])
                assert all(e == 1 for e in mono.values()), "repeated variable"
                out[tuple(sorted(mono))] += cs.value * ct.value
        else:
            out[tuple(sorted(outer))] += cs.value
    return MultilinearPoly.from_coeffs(p.ring, 2 * n - 1, out)


small_int_polys = st.builds(
    lambda n, vals: MultilinearPoly(INTEGERS, n, dict(enumerate(vals[: 2 ** n]))),
    st.integers(2, 3),
    st.lists(st.integers(-3, 3), min_size=8, max_size=8),
)


@settings(max_examples=200, deadline=None)
@given(small_int_polys, st.data())
def test_compose_matches_monomial_expansion(p, data):
    i = data.draw(st.integers(0, p.n - 1))
    assert compose_at(p, i) == _expand_by_monomial_lists(p, i)


def test_is_associative_poly_examples():
    assert is_associative_poly(X1X2)
    assert not is_associative_poly(DIFF)
    assert is_associative_poly(PROD2)


def test_pointwise_examples():
    assert pointwise_associative(OMEGA3)
    assert not pointwise_associative(GF2_X1X2_PLUS_1)
    # oracle: naive check of its value table over all 8 triples
    assert not naive_is_associative(to_finite_op(GF2_X1X2_PLUS_1).table, 2, 2)
    assert pointwise_associative(poly(GF3, 2, {(1,): 1}))
    with pytest.raises(InputError):
        pointwise_associative(X1X2)


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2)])
def test_symbolic_matches_pointwise_everywhere(p, n):
    for index in range(p ** (2 ** n)):
        q = poly_from_index(index, p, n)
        assert is_associative_poly(q) == pointwise_associative(q), str(q)


@pytest.mark.parametrize("p,m", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)])
def test_coefficients_determine_functions(p, m):
    tables = {to_finite_op(poly_from_index(i, p, m)).table for i in range(p ** (2 ** m))}
    assert len(tables) == p ** (2 ** m)


def test_classify_examples():
    five_plus = poly(INTEGERS, 2, {(): 5, (1,): 1, (2,): 1})
    assert classify_marmat(five_plus) == MarMatForm.shifted_sum(INTEGERS.elem(5))
    assert classify_marmat(OMEGA3) == MarMatForm.omega_sum(GF3.elem(2))
    assert classify_marmat(PROD2) == MarMatForm.product_form(INTEGERS.elem(2), Fraction(1, 2))
    assert classify_marmat(GF2_X1X2_PLUS_1) == NO_FORM
    assert classify_marmat(DIFF) == NO_FORM
    assert classify_marmat(poly(INTEGERS, 3, {(1,): 1})) == FIRST_PROJ
    assert classify_marmat(poly(INTEGERS, 3, {(3,): 1})) == LAST_PROJ
    assert classify_marmat(poly(INTEGERS, 3, {})) == MarMatForm.constant(INTEGERS.elem(0))


def test_omega_sum_skipped_for_binary():
    # x1 + 2x2 over GF(3) would fit omega = 2, but the form needs n >= 3
    assert classify_marmat(poly(GF3, 2, {(1,): 1, (2,): 2})) == NO_FORM


def test_integer_omega_sum():
    p = poly(INTEGERS, 3, {(1,): 1, (2,): -1, (3,): 1})
    assert classify_marmat(p) == MarMatForm.omega_sum(INTEGERS.elem(-1))
    assert is_associative_poly(p)
    assert classify_marmat(poly(INTEGERS, 4, {(1,): 1, (2,): -1, (3,): 1, (4,): -1})) == NO_FORM


def test_product_form_ring_conditions():
    # b = 1/2 with a = 1: a*b = 1/2 not an integer
    with pytest.raises(InputError):
        from_form(MarMatForm.product_form(INTEGERS.elem(1), Fraction(1, 2)), INTEGERS, 2)
    # a = 4, b = 1/2, n = 3: 4*(1/2)^k in Z for k < 3 and 4/8 - 1/2 = 0
    p = from_form(MarMatForm.product_form(INTEGERS.elem(4), Fraction(1, 2)), INTEGERS, 3)
    assert is_associative_poly(p)
    assert classify_marmat(p) == MarMatForm.product_form(INTEGERS.elem(4), Fraction(1, 2))


def test_from_form_examples():
    p = from_form(MarMatForm.product_form(GF2.elem(1), GF2.elem(1)), GF2, 3)
    assert p == anf(canonical_op(BoolForm.OR, 3))
    assert p.terms == {m: 1 for m in range(1, 8)}
    assert from_form(MarMatForm.constant(INTEGERS.elem(0)), INTEGERS, 2).terms == {}
    with pytest.raises(InputError):
        from_form(MarMatForm.omega_sum(GF3.elem(1)), GF3, 3)
    with pytest.raises(InputError):
        from_form(MarMatForm.omega_sum(PrimeField(5).elem(2)), PrimeField(5), 3)
    with pytest.raises(InputError):
        from_form(MarMatForm.omega_sum(GF3.elem(2)), GF3, 2)
    with pytest.raises(InputError):
        from_form(NO_FORM, GF3, 2)


def _integer_forms(n):
    yield FIRST_PROJ
    yield LAST_PROJ
    for c in range(-3, 4):
        yield MarMatForm.constant(INTEGERS.elem(c))
        yield MarMatForm.shifted_sum(INTEGERS.elem(c))
    if n % 2 == 1:
        yield MarMatForm.omega_sum(INTEGERS.elem(-1))
    for a in [x for x in range(-8, 9) if x]:
        for num in range(-4, 5):
            for den in range(1, 5):
                yield MarMatForm.product_form(INTEGERS.elem(a), Fraction(num, den))


@pytest.mark.parametrize("n", [2, 3])
def test_integer_round_trip_and_associativity(n):
    seen = 0
    for form in _integer_forms(n):
        try:
            p = from_form(form, INTEGERS, n)
        except InputError:
            continue
        seen += 1
        assert classify_marmat(p) == form
        assert is_associative_poly(p)
    assert seen > 40


@settings(max_examples=300, deadline=None)
@given(small_int_polys)
def test_integer_theorem_on_random_polys(p):
    assert bool(classify_marmat(p)) == is_associative_poly(p)


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (7, 3)])
def test_field_round_trip(q, n):
    field = PrimeField(q)
    forms = [FIRST_PROJ, LAST_PROJ]
    forms += [MarMatForm.constant(field.elem(c)) for c in range(q)]
    forms += [MarMatForm.shifted_sum(field.elem(c)) for c in range(q)]
    forms += [MarMatForm.omega_sum(field.elem(w)) for w in range(q)
              if n >= 3 and w != 1 and pow(w, n - 1, q) == 1]
    forms += [MarMatForm.product_form(field.elem(a), field.elem(b))
              for a in range(1, q) for b in range(q)]
    polys = [from_form(f, field, n) for f in forms]
    assert len(set(map(poly_index, polys))) == len(forms)
    for form, p in zip(forms, polys):
        assert classify_marmat(p) == form


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)])
def test_forms_mutually_exclusive(q, n):
    for index in range(q ** (2 ** n)):
        assert len(matching_forms(poly_from_index(index, q, n))) <= 1


BOOL_TO_MARMAT = {
    BoolForm.CONST0: MarMatForm.constant(GF2.elem(0)),
    BoolForm.CONST1: MarMatForm.constant(GF2.elem(1)),
    BoolForm.PROJ1: FIRST_PROJ,
    BoolForm.PROJN: LAST_PROJ,
    BoolForm.SUM: MarMatForm.shifted_sum(GF2.elem(0)),
    BoolForm.SUMBAR: MarMatForm.shifted_sum(GF2.elem(1)),
    BoolForm.AND: MarMatForm.product_form(GF2.elem(1), GF2.elem(0)),
    BoolForm.OR: MarMatForm.product_form(GF2.elem(1), GF2.elem(1)),
}


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("form", list(BOOL_TO_MARMAT), ids=lambda f: f.value)
def test_boolean_correspondence(n, form):
    f = canonical_op(form, n)
    expected = BOOL_TO_MARMAT[form]
    assert classify_marmat(anf(f)) == expected
    assert from_anf(from_form(expected, GF2, n)) == f


def test_anf_examples():
    assert anf(canonical_op(BoolForm.AND, 2)) == poly(GF2, 2, {(1, 2): 1})
    assert anf(canonical_op(BoolForm.OR, 2)) == poly(GF2, 2, {(1,): 1, (2,): 1, (1, 2): 1})
    assert anf(canonical_op(BoolForm.SUMBAR, 3)) == poly(GF2, 3, {(): 1, (1,): 1, (2,): 1, (3,): 1})
    with pytest.raises(InputError):
        anf(FiniteOp(3, 1, (0, 1, 2)))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_anf_round_trip(n):
    for index in range(2 ** (2 ** n)):
        f = FiniteOp.from_index(index, 2, n)
        assert from_anf(anf(f)) == f


def test_anf_is_moebius_sum():
    f = FiniteOp(2, 3, (0, 1, 1, 0, 1, 1, 0, 1))
    p = anf(f)
    for s in range(8):
        # c_S = XOR of f at indicator tuples of subsets of S
        want = 0
        for t in range(8):
            if t & ~s == 0:
                want ^= f(*[(t >> j) & 1 for j in range(3)])
        assert p.terms.get(s, 0) == want


def test_json_normalizes_and_validates():
    obj = {"ring": "Z", "n": 2, "coeffs": [
        {"vars": [2, 1], "coef": "2"}, {"vars": [1], "coef": "0"}, {"vars": [1, 2], "coef": "-1"}]}
    p = MultilinearPoly.from_json(obj)
    assert p == poly(INTEGERS, 2, {(1, 2): 1})
    assert MultilinearPoly.from_json(p.to_json()) == p
    for bad in ([1, 1], [3], [0]):
        with pytest.raises(InputError):
            MultilinearPoly.from_json({"ring": "Z", "n": 2, "coeffs": [{"vars": bad, "coef": "1"}]})
    with pytest.raises(InputError):
        MultilinearPoly.from_json({"ring": {"prime": 6}, "n": 2, "coeffs": []})
    with pytest.raises(InputError):
        MultilinearPoly.from_json({"ring": "Z", "n": 2, "coeffs": [{"vars": [1], "coef": "x"}]})


def test_form_json():
    form = classify_marmat(PROD2)
    assert form.to_json() == {"form": "product", "a": "2", "b": "1/2"}
    assert MarMatForm.from_json(form.to_json(), INTEGERS) == form
    assert classify_marmat(OMEGA3).to_json() == {"form": "omega_sum", "omega": "2"}
    assert NO_FORM.to_json() == {"form": "no_form"}


def test_stored_coefficients_are_nonzero_and_reduced():
    p = MultilinearPoly(GF3, 2, {0: 3, 1: 4, 3: -1})
    assert p.terms == {1: 1, 3: 2}
    assert p.coeffs == {(1,): GF3.elem(1), (1, 2): GF3.elem(2)}
    assert p.coeff([2, 1]) == RingElem(2, GF3)


def test_poly_index_round_trip():
    for index in range(81):
        assert poly_index(poly_from_index(index, 3, 2)) == index


def test_anf_bridge_both_directions():
    from nsemigroup.mlpoly import anf_bridge
    f = canonical_op(BoolForm.OR, 3)
    assert anf_bridge(anf_bridge(f)) == f
    assert anf_bridge(f) == anf(f)
