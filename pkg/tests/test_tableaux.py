import pytest

from oracles import brute_tableaux, lr_by_characters, mn_character
from subduction.exact import Surd
from subduction.tableaux import (
    LAST_LETTER,
    ROW_WORD_LEX,
    Partition,
    PartitionFormatError,
    PhaseConventionError,
    ShapeMismatchError,
    StandardTableau,
    apply_generator,
    axial_distance,
    compatible,
    conjugate,
    enumerate_skew,
    enumerate_standard_tableaux,
    format_tableau,
    hook_dimension,
    join,
    lr_multiplicity,
    orthogonal_rep_matrix,
    parse_partition,
    parse_tableau,
    partitions,
    phase_factors,
    restrict,
    skew_count,
    skew_part,
    yamanouchi_phase,
)


def T(text, offset=None):
    return parse_tableau(text, offset)


# -- partitions ---------------------------------------------------------------


def test_parse_partition():
    p = parse_partition("[4,3,2,1]")
    assert p.parts == (4, 3, 2, 1) and p.n == 10
    assert parse_partition("[1]").n == 1
    assert parse_partition(" [ 3 , 1 ] ").parts == (3, 1)


@pytest.mark.parametrize("text", ["[2,3]", "[0]", "[1,-1]", "[a]", "[]", "4,,3"])
def test_parse_partition_rejects(text):
    with pytest.raises(PartitionFormatError):
        parse_partition(text)


def test_partitions_count():
    assert [sum(1 for _ in partitions(n)) for n in range(1, 9)] == [1, 2, 3, 5, 7, 11, 15, 22]


def test_conjugate_partition():
    assert conjugate(Partition((3, 1))).parts == (2, 1, 1)
    assert conjugate(Partition((4, 3, 2, 1))).parts == (4, 3, 2, 1)
    for n in range(1, 8):
        for lam in partitions(n):
            assert conjugate(conjugate(lam)) == lam


# -- dimensions and enumeration -------------------------------------------------


@pytest.mark.parametrize(
    "lam,f",
    [((4, 3, 2, 1), 768), ((3, 2, 1), 16), ((3, 1), 3), ((5, 4, 3, 2, 1), 292864), ((1,), 1)],
)
def test_hook_dimension(lam, f):
    assert hook_dimension(lam) == f


def test_hook_matches_enumeration_and_brute_force():
    for n in range(1, 7):
        for lam in partitions(n):
            tabs = enumerate_standard_tableaux(lam)
            assert len(tabs) == hook_dimension(lam) == len(brute_tableaux(lam.parts))
            assert len(set(tabs)) == len(tabs)
            # character at the identity is the dimension
            assert mn_character(lam.parts, (1,) * n) == len(tabs)


def test_small_enumerations():
    assert [format_tableau(t) for t in enumerate_standard_tableaux([2])] == ["1 2"]
    assert len(enumerate_standard_tableaux([2, 1])) == 2
    assert len(enumerate_standard_tableaux([3, 1])) == 3


def test_row_word_lex_order():
    tabs = enumerate_standard_tableaux([3, 1], ROW_WORD_LEX)
    assert [format_tableau(t) for t in tabs] == ["1 2 3 / 4", "1 2 4 / 3", "1 3 4 / 2"]
    words = [t.word for t in tabs]
    assert words == sorted(words)


def test_last_letter_order_is_a_permutation():
    a = enumerate_standard_tableaux([3, 2, 1], ROW_WORD_LEX)
    b = enumerate_standard_tableaux([3, 2, 1], LAST_LETTER)
    assert set(a) == set(b) and a != b
    assert [t.word[::-1] for t in b] == sorted(t.word[::-1] for t in b)


@pytest.mark.parametrize("lam,lam1,count", [((4, 3, 2, 1), (3, 2, 1), 24), ((5, 4, 3, 2, 1), (4, 3, 2, 1), 120), ((2,), (2,), 1), ((2,), (3,), 0)])
def test_skew_count(lam, lam1, count):
    assert skew_count(lam, lam1) == count
    assert len(enumerate_skew(lam, lam1)) == count


def test_skew_count_brute_force():
    for n in range(2, 7):
        for lam in partitions(n):
            for n1 in range(1, n):
                for lam1 in partitions(n1):
                    if lam.contains(lam1):
                        assert skew_count(lam, lam1) == len(brute_tableaux(lam.parts, lam1.parts))


def test_enumerate_skew_entries():
    fills = enumerate_skew([2, 1], [1])
    assert [format_tableau(t) for t in fills] == [". 2 / 3", ". 3 / 2"]
    assert all(t.offset == 1 for t in fills)


# -- text form -------------------------------------------------------------------


def test_tableau_text_roundtrip():
    for lam in ([3, 2, 1], [2, 2], [4, 1]):
        for t in enumerate_standard_tableaux(lam):
            assert parse_tableau(format_tableau(t)) == t
    s = enumerate_skew([4, 3, 2, 1], [3, 2, 1])[5]
    assert parse_tableau(format_tableau(s)) == s


def test_parse_tableau_rejects_nonstandard():
    with pytest.raises(ShapeMismatchError):
        parse_tableau("2 1 / 3")
    with pytest.raises(ShapeMismatchError):
        parse_tableau("1 2 / 4 3")


# -- axial distances and generators --------------------------------------------------


def test_axial_distance_examples():
    a, b = T("1 2 / 3"), T("1 3 / 2")
    assert (axial_distance(a, 1), axial_distance(a, 2)) == (1, -2)
    assert (axial_distance(b, 1), axial_distance(b, 2)) == (-1, 2)


def test_axial_distance_range():
    with pytest.raises(IndexError):
        axial_distance(T("1 2 / 3"), 3)


def test_adjacent_distance_signs():
    for n in range(2, 7):
        for lam in partitions(n):
            for m in enumerate_standard_tableaux(lam):
                for i in range(1, n):
                    (r1, c1), (r2, c2) = m.positions[i], m.positions[i + 1]
                    d = axial_distance(m, i)
                    assert d != 0
                    if r1 == r2 and c2 == c1 + 1:
                        assert d == 1
                    if c1 == c2 and r2 == r1 + 1:
                        assert d == -1


def test_generator_examples():
    assert apply_generator(T("1 2 / 3"), 2) == T("1 3 / 2")
    for lam in partitions(5):
        for m in enumerate_standard_tableaux(lam):
            assert apply_generator(m, 1) == m


def test_restrict_and_compatible():
    m = T("1 2 / 3")
    assert restrict(m, 3) == m
    assert restrict(m, 2) == T("1 2")
    assert compatible(m, restrict(m, 2))
    assert not compatible(T("1 3 / 2"), T("1 2"))


def test_compatible_count_is_skew_count():
    lam, lam1 = Partition((4, 2, 1)), Partition((2, 1))
    for m1 in enumerate_standard_tableaux(lam1):
        count = sum(compatible(m, m1) for m in enumerate_standard_tableaux(lam))
        assert count == skew_count(lam, lam1)


def test_join_skew_part_inverse():
    for m in enumerate_standard_tableaux([3, 2, 1]):
        assert join(restrict(m, 3), skew_part(m, 3)) == m


# -- Littlewood-Richardson ---------------------------------------------------------------


@pytest.mark.parametrize(
    "lam,lam1,lam2,c",
    [
        ([4, 2], [2, 1], [2, 1], 1),
        ([3, 2, 1], [2, 1], [2, 1], 2),
        ([4, 3, 2, 1], [3, 2, 1], [3, 1], 3),
        ([5, 4, 3, 2, 1], [4, 3, 2, 1], [4, 1], 4),
        ([6, 5, 4, 3, 2, 1], [5, 4, 3, 2, 1], [5, 1], 5),
        ([2], [1], [2], 0),
    ],
)
def test_lr_examples(lam, lam1, lam2, c):
    assert lr_multiplicity(lam, lam1, lam2) == c


def test_lr_matches_characters():
    # independent route: restriction multiplicities from Murnaghan-Nakayama characters
    for n in range(2, 8):
        for lam in partitions(n):
            for n1 in range(1, n):
                for lam1 in partitions(n1):
                    for lam2 in partitions(n - n1):
                        assert lr_multiplicity(lam, lam1, lam2) == lr_by_characters(lam.parts, lam1.parts, lam2.parts), (lam, lam1, lam2)


# -- conjugation and phases ---------------------------------------------------------------


def test_conjugate_tableau():
    m = T("1 2 4 / 3")
    assert format_tableau(conjugate(m)) == "1 3 / 2 / 4"
    for t in enumerate_skew([4, 3, 2, 1], [3, 2, 1]):
        assert conjugate(conjugate(t)) == t
        assert conjugate(t).shape.parts == (4, 3, 2, 1)


def test_published_phase_formulas():
    skew = phase_factors([4, 3, 2, 1], [3, 2, 1])
    assert list(skew) == [-((-1) ** (k * (k - 1) // 2)) for k in range(1, 25)]
    assert list(phase_factors([3, 1])) == [-((-1) ** k) for k in (1, 2, 3)]


def test_phase_flips_along_edges():
    for lam, lam1 in [((4, 3, 2, 1), (3, 2, 1)), ((3, 1), ()), ((4, 2, 1), ()), ((4, 2, 1), (2,))]:
        tabs = enumerate_skew(lam, lam1, 0)
        ref = tabs[0]
        assert yamanouchi_phase(ref, ref) == 1
        for m in tabs:
            for i in range(m.offset + 1, m.offset + m.n):
                g = apply_generator(m, i)
                if g != m:
                    assert yamanouchi_phase(g, ref) == -yamanouchi_phase(m, ref)


def test_phase_shape_mismatch():
    with pytest.raises(ShapeMismatchError):
        yamanouchi_phase(T("1 2 / 3"), T("1 2 3"))


def test_uncalibrated_phase_strict():
    with pytest.raises(PhaseConventionError):
        phase_factors([3, 2, 1], [2, 1], strict=True)
    assert phase_factors([3, 2, 1], [2, 1])[0] == 1


# -- orthogonal form ---------------------------------------------------------------------


def test_rep_matrix_small():
    assert orthogonal_rep_matrix([2], 1) == [[Surd(1, 1)]]
    assert orthogonal_rep_matrix([1, 1], 1) == [[Surd(-1, 1)]]
    M = orthogonal_rep_matrix([2, 1], 2)
    assert sorted(str(M[i][i]) for i in range(2)) == ["-1/2", "1/2"]
    assert M[0][1] == M[1][0] == Surd.from_triple(1, 3, 2)


def test_rep_matrix_range():
    with pytest.raises(IndexError):
        orthogonal_rep_matrix([2, 1], 3)
