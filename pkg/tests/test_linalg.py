from hypothesis import given
from hypothesis import strategies as st

import oracles
from strategies import entries, matrices, subgroups
from decalage.linalg import (
    AbelianGroup,
    IntMatrix,
    QuotientPresentation,
    Subgroup,
    cokernel,
    contains,
    determinant,
    image,
    invariant_factors,
    kernel_basis,
    membership,
    preimage,
    rank,
    smith_normal_form,
    subgroup_intersection,
    subgroup_sum,
    subquotient,
)


def M(rows, ncols=None):
    return IntMatrix.from_rows(rows, ncols)


def span(n, *vecs):
    return Subgroup.span(n, vecs)


# -- examples -----------------------------------------------------------------


def test_snf_empty():
    U, D, V = smith_normal_form(IntMatrix.zeros(0, 0))
    assert (U.rows, D.rows, D.cols, V.cols) == (0, 0, 0, 0)


def test_snf_two_by_two():
    A = M([[2, 4], [6, 8]])
    U, D, V = smith_normal_form(A)
    assert D == M([[2, 0], [0, 4]])
    assert U @ A @ V == D


def test_snf_identity():
    I = IntMatrix.identity(3)
    assert smith_normal_form(I)[1] == I


def test_snf_exact_on_huge_entries():
    big = 10**40 + 7
    A = M([[big, 2 * big], [3, 5]])
    U, D, V = smith_normal_form(A)
    assert U @ A @ V == D
    assert abs(D[0, 0] * D[1, 1]) == abs(determinant(A))


def test_kernel_examples():
    assert kernel_basis(IntMatrix.zeros(2, 3)).is_full()
    assert kernel_basis(M([[1, 1]])) == span(2, (1, -1))
    assert kernel_basis(IntMatrix.identity(3)).is_zero()


def test_cokernel_examples():
    assert cokernel(M([[2]])) == AbelianGroup(0, (2,))
    assert cokernel(IntMatrix.zeros(2, 1)) == AbelianGroup(2, ())
    assert cokernel(M([[2, 0], [0, 3]])) == AbelianGroup(0, (6,))


def test_sum_examples():
    A = span(2, (1, 2), (0, 4))
    assert subgroup_sum(A, Subgroup.zero(2)) == A
    assert subgroup_sum(span(1, (2,)), span(1, (3,))) == span(1, (1,))
    assert subgroup_sum(A, A) == A


def test_intersection_examples():
    A = span(2, (1, 2), (0, 4))
    assert subgroup_intersection(A, Subgroup.full(2)) == A
    assert subgroup_intersection(span(1, (2,)), span(1, (3,))) == span(1, (6,))
    assert subgroup_intersection(A, Subgroup.zero(2)).is_zero()


def test_containment_examples():
    A = span(2, (1, 2))
    assert contains(A, Subgroup.zero(2))
    assert not membership(span(1, (2,)), (1,))
    assert membership(span(1, (2,), (3,)), (1,))


def test_subquotient_examples():
    A = span(2, (1, 2), (0, 4))
    assert subquotient(A, A).is_trivial()
    assert subquotient(Subgroup.full(1), span(1, (2,))) == AbelianGroup(0, (2,))
    top = span(2, (2, 0), (0, 3))
    bottom = span(2, (6, 0), (0, 6))
    assert subquotient(top, bottom) == AbelianGroup(0, (6,))


def test_subgroup_equality_is_syntactic():
    assert span(2, (2, 0), (0, 2)) == span(2, (2, 2), (0, 2), (4, 6))
    assert span(2, (2, 0)) != span(2, (1, 0))


def test_abelian_group_json_and_text():
    g = AbelianGroup.from_diagonal([2, 3, 0, 1])
    assert g == AbelianGroup(1, (6,))
    assert AbelianGroup.from_json(g.to_json()) == g
    assert str(g) == "Z + Z/6"
    assert g.tensor("rat") == AbelianGroup(1, ())


# -- properties -----------------------------------------------------------------


@given(matrices())
def test_snf_factorization(A):
    U, D, V = smith_normal_form(A)
    assert U @ A @ V == D
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    diag = [D[i, i] for i in range(min(D.rows, D.cols))]
    assert all(D[i, j] == 0 for i in range(D.rows) for j in range(D.cols) if i != j)
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert diag[: len(nz)] == nz


@given(matrices())
def test_invariant_factors_match_sympy(A):
    assert sorted(invariant_factors(A)) == oracles.nonzero_invariants(A.to_rows(), A.cols)


@given(matrices())
def test_rank_nullity(A):
    assert kernel_basis(A).rank + image(A).rank == A.cols
    assert rank(A) == image(A).rank


@given(matrices())
def test_kernel_is_saturated_and_killed(A):
    K = kernel_basis(A)
    assert K.saturation() == K
    assert all(not any(A.apply(v)) for v in K.basis)


@given(st.data())
def test_lattice_laws(data):
    n = data.draw(st.integers(1, 4))
    A, B, C = (data.draw(subgroups(n)) for _ in range(3))
    s, i = subgroup_sum, subgroup_intersection
    assert s(A, B) == s(B, A) and i(A, B) == i(B, A)
    assert s(s(A, B), C) == s(A, s(B, C))
    assert i(i(A, B), C) == i(A, i(B, C))
    assert s(A, A) == A and i(A, A) == A
    assert contains(A, i(A, B)) and contains(s(A, B), A)
    # modular law: A ⊆ C implies A + (B ∩ C) = (A + B) ∩ C
    AC = i(A, C)
    assert s(AC, i(B, C)) == i(s(AC, B), C)


@given(st.data())
def test_membership_coordinates(data):
    n = data.draw(st.integers(1, 4))
    A = data.draw(subgroups(n))
    coeffs = data.draw(st.lists(entries, min_size=A.rank, max_size=A.rank))
    x = A.combine(coeffs)
    c = A.coordinates(x)
    assert c is not None and A.combine(c) == x


@given(matrices(), st.data())
def test_preimage_membership(A, data):
    S = data.draw(subgroups(A.rows))
    P = preimage(A, S)
    x = data.draw(st.lists(entries, min_size=A.cols, max_size=A.cols))
    assert membership(P, x) == membership(S, A.apply(x))


@st.composite
def unimodular(draw, n):
    U = IntMatrix.identity(n)
    for _ in range(draw(st.integers(0, 6))):
        if n < 2:
            break
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if i == j:
            continue
        q = draw(st.integers(-3, 3))
        rows = U.to_rows()
        rows[i] = [a + q * b for a, b in zip(rows[i], rows[j])]
        if draw(st.booleans()):
            rows[i], rows[j] = rows[j], rows[i]
        U = IntMatrix.from_rows(rows, n)
    return U


@given(matrices(), st.data())
def test_cokernel_invariant_under_unimodular_change(A, data):
    U = data.draw(unimodular(A.rows))
    V = data.draw(unimodular(A.cols))
    assert cokernel(U @ A @ V) == cokernel(A)


@given(matrices())
def test_cokernel_matches_sympy(A):
    inv = oracles.nonzero_invariants(A.to_rows(), A.cols)
    assert cokernel(A) == AbelianGroup(A.rows - len(inv), tuple(f for f in inv if f > 1))


@given(st.data())
def test_quotient_presentation(data):
    n = data.draw(st.integers(1, 4))
    A = data.draw(subgroups(n))
    B = subgroup_intersection(A, data.draw(subgroups(n)))
    Q = QuotientPresentation(A, B)
    assert Q.group == subquotient(A, B)
    for k, g in enumerate(Q.generators):
        unit = tuple(int(i == k) for i in range(len(Q)))
        assert Q.coordinates(g) == Q.reduce(unit)
    for b in B.basis:
        assert Q.is_zero_element(b)
    if A.rank:
        x = A.combine(data.draw(st.lists(entries, min_size=A.rank, max_size=A.rank)))
        y = A.combine(data.draw(st.lists(entries, min_size=A.rank, max_size=A.rank)))
        xy = tuple(a + b for a, b in zip(x, y))
        lhs = Q.coordinates(xy)
        rhs = Q.reduce(tuple(a + b for a, b in zip(Q.coordinates(x), Q.coordinates(y))))
        assert lhs == rhs
