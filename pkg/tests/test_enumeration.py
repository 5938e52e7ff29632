import pytest

from cycspine.enumeration import (
    CosetTable,
    EnumerationResult,
    FelschTable,
    coset_enumerate,
    order_of,
    verify_order_independence,
)
from cycspine.homology import abelian_invariants
from cycspine.words import (
    CyclicPresentation,
    F,
    G,
    H,
    Word,
    build_family,
    free_reduce,
    parse_word,
    shift,
    shift_extension,
)


def cols(word_pairs, ngens):
    return [
        [2 * g if s > 0 else 2 * g + 1 for g, s in w] for w in word_pairs
    ]


A, a, B, b = (0, 1), (0, -1), (1, 1), (1, -1)


class TestClassicalOrders:
    @pytest.mark.parametrize(
        "name,ngens,rels,order",
        [
            ("Z5", 1, [[A] * 5], 5),
            ("D8", 2, [[A] * 4, [B] * 2, [A, B] * 2], 8),
            ("S4", 2, [[A] * 2, [B] * 3, [A, B] * 4], 24),
            ("A5", 2, [[A] * 2, [B] * 3, [A, B] * 5], 60),
            ("PSL27", 2, [[A] * 2, [B] * 3, [A, B] * 7, [A, B, a, b] * 4], 168),
        ],
    )
    def test_orders_both_strategies(self, name, ngens, rels, order):
        for cls in (CosetTable, FelschTable):
            res = cls(ngens, cols(rels, ngens), 100_000).enumerate()
            assert res.finite and res.order == order, (name, cls.__name__)


def _quaternion_table():
    """Multiplication table of the eight quaternion units.

    Elements 0..7 stand for 1, -1, i, -i, j, -j, k, -k.
    """
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    idx = {nm: t for t, nm in enumerate(names)}

    def mul(x, y):
        sx, vx = ("-" in names[x]), names[x].lstrip("-")
        sy, vy = ("-" in names[y]), names[y].lstrip("-")
        sign = sx != sy
        basic = {
            ("1", "1"): (False, "1"),
            ("1", "i"): (False, "i"),
            ("1", "j"): (False, "j"),
            ("1", "k"): (False, "k"),
            ("i", "1"): (False, "i"),
            ("j", "1"): (False, "j"),
            ("k", "1"): (False, "k"),
            ("i", "i"): (True, "1"),
            ("j", "j"): (True, "1"),
            ("k", "k"): (True, "1"),
            ("i", "j"): (False, "k"),
            ("j", "i"): (True, "k"),
            ("j", "k"): (False, "i"),
            ("k", "j"): (True, "i"),
            ("k", "i"): (False, "j"),
            ("i", "k"): (True, "j"),
        }
        s2, v = basic[(vx, vy)]
        return idx[("-" if sign != s2 else "") + v if (sign != s2) else v]

    return names, mul


class TestFamilyOrders:
    def test_positive_family(self):
        assert order_of(build_family(H(3, 4))).order == 3

    def test_lens_family(self):
        assert order_of(build_family(F(1, 1, 4))).order == 5

    def test_quaternion_with_multiplication_oracle(self):
        p = build_family(F(1, 1, 3))
        res = order_of(p)
        assert res.finite and res.order == 8
        # independent oracle: x_i -> i, j, k defines a quotient onto the
        # eight quaternion units, so the order is a multiple of 8
        names, mul = _quaternion_table()
        images = {0: names.index("i"), 1: names.index("j"), 2: names.index("k")}
        inverse = {names.index(v): names.index(w) for v, w in
                   [("1", "1"), ("-1", "-1"), ("i", "-i"), ("-i", "i"),
                    ("j", "-j"), ("-j", "j"), ("k", "-k"), ("-k", "k")]}
        for rel in p.relators():
            acc = names.index("1")
            for g, s in rel.letters:
                x = images[g] if s > 0 else inverse[images[g]]
                acc = mul(acc, x)
            assert acc == names.index("1"), rel.to_text()
        # i, j generate all eight units, so the image has order exactly 8
        assert res.order % 8 == 0

    def test_extension_order_is_n_times_kernel(self):
        res = order_of(shift_extension(1, 1, 4, 0))
        assert res.order == 4 * 5
        res = order_of(shift_extension(1, 1, 3, 0))
        assert res.order == 3 * 8


class TestExceeded:
    def test_exceeded_is_an_outcome(self):
        res = order_of(build_family(H(2, 4)), max_cosets=2000)
        assert res.status == "EXCEEDED"
        assert res.order is None
        assert res.live_cosets == 2000

    def test_result_independent_of_cap_once_closed(self):
        p = build_family(F(1, 1, 4))
        assert order_of(p, max_cosets=100).order == order_of(p, max_cosets=10_000).order


class TestValidation:
    def test_rejects_unreduced_relator(self):
        w = Word(2, ((0, 1), (0, -1)))
        with pytest.raises(ValueError):
            coset_enumerate([w], 2)

    def test_rejects_rank_mismatch(self):
        w = parse_word("x0 x1", 2)
        with pytest.raises(ValueError):
            coset_enumerate([w], 3)

    def test_rejects_unknown_strategy(self):
        with pytest.raises(ValueError):
            coset_enumerate([parse_word("x0", 1)], 1, strategy="magic")

    def test_order_of_reduces_first(self):
        # the degenerate member with a cancelling pair enumerates fine
        p = build_family(G(1, 1, 6, 1))
        res = order_of(p)
        assert res.finite and res.order == 1


class TestInvariance:
    def test_cyclic_permutation_of_relators(self):
        p = build_family(F(1, 1, 4))
        rotated = [
            Word(4, w.letters[1:] + w.letters[:1]) for w in p.relators()
        ]
        r1 = coset_enumerate([free_reduce(w) for w in p.relators()], 4)
        r2 = coset_enumerate([free_reduce(w) for w in rotated], 4)
        assert r1.order == r2.order == 5

    def test_shift_applied_to_all_relators(self):
        p = build_family(G(1, 2, 4, 0))
        shifted = [shift(w, 2) for w in p.relators()]
        r1 = coset_enumerate(p.relators(), 4)
        r2 = coset_enumerate(shifted, 4)
        assert r1.order == r2.order == 17

    def test_determinism(self):
        p = build_family(F(1, 1, 3))
        rels = cols([list(w.letters) for w in p.relators()], 3)
        t1 = CosetTable(3, [list(r) for r in rels], 1000, record_trace=True)
        t2 = CosetTable(3, [list(r) for r in rels], 1000, record_trace=True)
        r1, r2 = t1.enumerate(), t2.enumerate()
        assert r1 == r2
        assert t1.table == t2.table
        assert t1.trace == t2.trace

    def test_strategies_agree(self):
        for spec in [H(3, 4), H(5, 6), F(1, 1, 4), F(1, 1, 5), G(1, 2, 4, 0)]:
            p = build_family(spec)
            r1 = order_of(p, strategy="hlt")
            r2 = order_of(p, strategy="felsch")
            assert r1.order == r2.order, spec


class TestDivisibility:
    def test_order_divisible_by_abelianization(self):
        for spec in [H(3, 4), H(5, 7), F(1, 1, 3), F(1, 1, 4), F(1, 1, 5), G(1, 2, 4, 0)]:
            p = build_family(spec)
            res = order_of(p)
            if not res.finite:
                continue
            inv = abelian_invariants(p)
            assert inv.free_rank == 0
            finite_part = 1
            for d in inv.torsion:
                finite_part *= d
            assert res.order % finite_part == 0, spec


class TestOrderIndependence:
    def test_same_extension_same_order(self):
        rec = verify_order_independence(3, 1, 3, 0, 1)
        assert rec.conclusive
        assert rec.equal is True
        assert rec.result1.order == rec.result2.order == 3528

    def test_rejects_bad_offsets(self):
        with pytest.raises(ValueError):
            verify_order_independence(2, 1, 6, 0, 1)

    def test_infinite_pair_is_inconclusive(self):
        # these two members contain a rank-2 free abelian subgroup, so the
        # enumerations can never close; the comparison must say so rather
        # than claim equality
        rec = verify_order_independence(2, 1, 4, 0, 2, max_cosets=5000)
        assert not rec.conclusive
        assert rec.equal is None
