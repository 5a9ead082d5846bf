import itertools
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from bolcensus.groupoid import (Groupoid, PartialGroupoid, Permutation, all_groupoids,
                                all_permutations, apply_iso, automorphism_count, canonical_index,
                                format_table, from_index, is_associative, is_commutative,
                                is_quasigroup, isomorphic, opposite, orbit, parse_table,
                                parse_tables, to_index)
from bolcensus.terms import holds, parse_identity

DATA = Path(__file__).parent / "data"
Z2 = Groupoid.from_rows([[0, 1], [1, 0]])
CONST0 = Groupoid(2, (0,) * 4)
CONST1 = Groupoid(2, (1,) * 4)
ASSOC = parse_identity("x(yz)=(xy)z")

# the paper's seven displayed tables, 1-based
PAPER_DOT = Groupoid.from_rows_1based([[1, 2], [1, 2]])
PAPER_CIRC = Groupoid.from_rows_1based([[1, 1], [2, 2]])
PAPER_ODOT = Groupoid.from_rows_1based([[2, 1], [2, 1]])
PAPER_BULLET = Groupoid.from_rows_1based([[2, 2], [1, 1]])

groupoids3 = st.integers(0, 3 ** 9 - 1).map(lambda k: from_index(3, k))
perms3 = st.permutations(range(3)).map(lambda p: Permutation(tuple(p)))


class TestConstruction:
    def test_bad_length(self):
        with pytest.raises(ValueError):
            Groupoid(2, (0, 0, 0))

    def test_bad_entry(self):
        with pytest.raises(ValueError):
            Groupoid(2, (0, 0, 0, 2))

    def test_order_zero(self):
        with pytest.raises(ValueError):
            Groupoid(0, ())

    def test_not_square(self):
        with pytest.raises(ValueError):
            Groupoid.from_rows([[0, 1], [1]])

    def test_bad_permutation(self):
        with pytest.raises(ValueError):
            Permutation((0, 0, 1))

    def test_partial_filled_range(self):
        with pytest.raises(ValueError):
            PartialGroupoid(2, (None, 3, 0, 0))


class TestOp:
    def test_paper_diamond(self):
        g = Groupoid.from_rows_1based([[1, 2], [2, 1]])
        assert g.op(0, 1) == 1

    def test_constant(self):
        assert all(CONST0.op(a, b) == 0 for a in range(2) for b in range(2))

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_all_max_table(self, n):
        g = from_index(n, n ** (n * n) - 1)
        assert g.op(n - 1, n - 1) == n - 1

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            Z2.op(2, 0)


class TestIndex:
    def test_zero_is_constant_zero(self):
        assert from_index(2, 0) == CONST0

    def test_fifteen_is_constant_one(self):
        assert from_index(2, 15) == CONST1

    def test_round_trip_max(self):
        assert to_index(from_index(3, 19682)) == 19682

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            from_index(2, 16)
        with pytest.raises(ValueError):
            from_index(2, -1)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_bijection(self, n):
        seen = {to_index(g) for g in all_groupoids(n)}
        assert seen == set(range(n ** (n * n)))

    def test_big_endian_row_major(self):
        # cells (0,0) (0,1) (1,0) (1,1) = 0 1 1 0 -> 0b0110
        assert to_index(Z2) == 6


class TestIso:
    def test_identity_perm(self):
        g = from_index(3, 12345)
        assert apply_iso(g, Permutation.identity(3)) == g

    def test_swap_z2(self):
        # r(a,b) = p(g(p(a), p(b))): the identity element moves from 0 to 1,
        # so the table changes while its class does not
        swapped = apply_iso(Z2, Permutation((1, 0)))
        assert swapped == Groupoid.from_rows([[1, 0], [0, 1]])
        assert canonical_index(swapped) == canonical_index(Z2)

    def test_swap_constant(self):
        assert apply_iso(CONST0, Permutation((1, 0))) == CONST1

    def test_order_mismatch(self):
        with pytest.raises(ValueError):
            apply_iso(Z2, Permutation.identity(3))

    @given(groupoids3, perms3)
    def test_relabel_definition(self, g, p):
        r = apply_iso(g, p)
        inv = p.inverse()
        for a in range(3):
            for b in range(3):
                assert r.op(a, b) == p(g.op(inv(a), inv(b)))

    @given(groupoids3, perms3, perms3)
    def test_left_action(self, g, p, q):
        assert apply_iso(apply_iso(g, p), q) == apply_iso(g, q.compose(p))

    @given(groupoids3, perms3)
    def test_canonical_orbit_invariant(self, g, p):
        assert canonical_index(apply_iso(g, p)) == canonical_index(g)
        assert canonical_index(g) <= to_index(g)

    @given(groupoids3, perms3)
    def test_opposite_commutes_with_relabeling(self, g, p):
        assert opposite(apply_iso(g, p)) == apply_iso(opposite(g), p)

    def test_canonical_by_orbit_partition_order2(self):
        # independent oracle: explicit orbit partition of all 16 tables
        remaining = set(all_groupoids(2))
        orbits = []
        while remaining:
            o = orbit(next(iter(remaining)))
            orbits.append(o)
            remaining -= o
        assert len(orbits) == 10
        canon = {}
        for g in all_groupoids(2):
            canon.setdefault(canonical_index(g), set()).add(g)
        assert set(map(frozenset, canon.values())) == set(map(frozenset, orbits))

    def test_burnside_order3(self):
        # orbit count by Burnside's lemma equals the number of canonical indices
        canon = {canonical_index(g) for g in all_groupoids(3)}
        fixed = 0
        for p in all_permutations(3):
            fixed += sum(1 for g in all_groupoids(3) if apply_iso(g, p) == g)
        assert fixed // 6 == len(canon) == 3330

    def test_orbit_stabilizer(self):
        for k in (0, 6, 9):
            g = from_index(2, k)
            assert len(orbit(g)) * automorphism_count(g) == 2

    def test_isomorphic(self):
        assert isomorphic(CONST0, CONST1)
        assert not isomorphic(CONST0, Z2)


class TestOpposite:
    def test_commutative_fixed(self):
        assert opposite(Z2) == Z2

    def test_paper_dot_to_circ(self):
        assert opposite(PAPER_DOT) == PAPER_CIRC

    @pytest.mark.parametrize("k", range(16))
    def test_involution(self, k):
        g = from_index(2, k)
        assert opposite(opposite(g)) == g

    def test_definition(self):
        g = from_index(3, 4321)
        r = opposite(g)
        assert all(r.op(a, b) == g.op(b, a) for a in range(3) for b in range(3))


class TestPredicates:
    def test_z2_quasigroup(self):
        assert is_quasigroup(Z2)

    @pytest.mark.parametrize("n", [2, 3])
    def test_constant_not_quasigroup(self, n):
        assert not is_quasigroup(Groupoid(n, (0,) * (n * n)))

    def test_order3_quasigroups(self):
        # oracle: build Latin squares directly from row permutations
        latin = 0
        for rows in itertools.product(itertools.permutations(range(3)), repeat=3):
            if all(len({r[c] for r in rows}) == 3 for c in range(3)):
                latin += 1
        assert latin == 12
        assert sum(is_quasigroup(g) for g in all_groupoids(3)) == latin

    def test_order3_semigroups(self):
        assert sum(is_associative(g) for g in all_groupoids(3)) == 113

    def test_paper_first_five_are_semigroups(self):
        tables = parse_tables((DATA / "lsm_order2_paper.txt").read_text())
        assert [is_associative(g) for g in tables] == [True] * 5 + [False] * 2

    def test_paper_odot_not_associative(self):
        # x*y = not y (0-based), so (x*y)*z = not z while x*(y*z) = z
        assert PAPER_ODOT == Groupoid.from_rows([[1, 0], [1, 0]])
        assert not is_associative(PAPER_ODOT)

    def test_paper_bullet_not_associative(self):
        # (1*1)*1 = 2*1 = 1 but 1*(1*1) = 1*2 = 2 in the 1-based display
        assert not is_associative(PAPER_BULLET)
        assert PAPER_BULLET.op(PAPER_BULLET.op(0, 0), 0) != PAPER_BULLET.op(0, PAPER_BULLET.op(0, 0))

    @pytest.mark.parametrize("n", [2, 3])
    def test_associative_matches_identity(self, n):
        for g in all_groupoids(n):
            assert is_associative(g) == holds(ASSOC, g)

    def test_commutative(self):
        assert is_commutative(Z2)
        assert not is_commutative(PAPER_DOT)

    def test_order1(self):
        g = Groupoid(1, (0,))
        assert is_associative(g) and is_quasigroup(g) and is_commutative(g)


class TestTableFormat:
    def test_round_trip(self):
        g = from_index(3, 777)
        text = format_table(g)
        assert text.splitlines()[0] == "order 3"
        assert parse_table(text) == g

    def test_one_based(self):
        assert format_table(CONST0) == "order 2\n1 1\n1 1\n"

    def test_paper_file(self):
        tables = parse_tables((DATA / "lsm_order2_paper.txt").read_text())
        assert len(tables) == 7
        assert tables[3] == PAPER_DOT and tables[2] == PAPER_CIRC

    @pytest.mark.parametrize("text", ["2\n1 1\n1 1", "order 2\n1 1", "order 2\n1 1\n1 3"])
    def test_bad_input(self, text):
        with pytest.raises(ValueError):
            parse_tables(text)

    def test_parse_table_needs_exactly_one(self):
        with pytest.raises(ValueError):
            parse_table(format_table(Z2) * 2)


class TestPartial:
    def test_fill_and_complete(self):
        pg = PartialGroupoid.empty(2)
        for c, v in enumerate((0, 1, 1, 0)):
            assert not pg.is_complete()
            pg = pg.fill(c // 2, c % 2, v)
        assert pg.complete() == Z2

    def test_incomplete(self):
        with pytest.raises(ValueError):
            PartialGroupoid.empty(2).complete()
