import os
import random
import sys
import unittest

# ----------------- PATH SETUP -----------------
current_dir = os.path.dirname(__file__)
project_root = os.path.abspath(os.path.join(current_dir, '..'))
sys.path.append(project_root)

from hourglass_webs.common.exceptions import WebValidationError
from hourglass_webs.common.model.component.tableau import FluctuatingTableau
from hourglass_webs.common.services import tableau_service, word_service
from hourglass_webs.common.services.tableau_service import compose, cycles_to_perm, inverse, longest_element, shift
from hourglass_webs.common.services.word_service import Involution

MIXED_SIGN_WORD = '1 2 -4 1 3 4 2 -3 -2 3 4 -1'
S_PROMOTED = '1 -4 1 2 4 2 -4 -2 3 4 -1 4'


class TestTableauConstruction(unittest.TestCase):

    def test_single_column(self):
        print("\n--- Test: Single Column Tableau ---")
        tableau = tableau_service.tableau_from_word('1234')
        self.assertEqual(tableau.shape, (1, 1, 1, 1))
        self.assertTrue(tableau.is_rectangular)
        self.assertEqual(len(tableau.shapes), 5)

    def test_roundtrip(self):
        print("\n--- Test: Word Tableau Roundtrip ---")
        rng = random.Random(21)
        for type_vector in [(1,) * 8, (1, -1, 1, -1, 1, 1, 1, 1), (1, 1, -1, 1, 1, 1, 1, -1, -1, 1, 1, -1),
                            (2, -1, 2, 1, -2, 2, -1, 1), (3, 1, -2, 2)]:
            for _ in range(20):
                word = word_service.random_balanced_word(type_vector, rng)
                self.assertEqual(tableau_service.word_of(tableau_service.tableau_from_word(word)), word)

    def test_rejects_shapes_that_are_not_signed_columns(self):
        print("\n--- Test: Shape Chains Must Differ by Signed Columns ---")
        zero = (0, 0, 0, 0)
        for after in [(1, 0, 0, -1), (2, 0, 0, 0), (0, 0, 0, 0)]:
            tableau = FluctuatingTableau(shapes=(zero, after), type_vector=(1,))
            with self.assertRaises(WebValidationError):
                tableau_service.word_of(tableau)

    def test_rejects_non_lattice(self):
        print("\n--- Test: Non-lattice Rejected ---")
        with self.assertRaises(WebValidationError):
            tableau_service.tableau_from_word('1 -2')

    def test_cell_diagram(self):
        print("\n--- Test: Cell Diagram ---")
        picture = tableau_service.cell_diagram(tableau_service.tableau_from_word('1 2 3 4 -4 4'))
        rows = picture.split('\n')
        self.assertEqual(len(rows), 4)
        self.assertEqual(rows[0].split(), ['1'])
        self.assertEqual(rows[3].split(), ['4', '-5', '6'])


class TestPromotion(unittest.TestCase):

    def test_worked_example(self):
        print("\n--- Test: Promotion of S ---")
        self.assertEqual(str(tableau_service.promote_balance(MIXED_SIGN_WORD)), S_PROMOTED)
        promoted = tableau_service.promote_jdt(tableau_service.tableau_from_word(MIXED_SIGN_WORD))
        self.assertEqual(str(tableau_service.word_of(promoted)), S_PROMOTED)

    def test_single_column_is_fixed(self):
        print("\n--- Test: Single Column Promotion ---")
        self.assertEqual(str(tableau_service.promote_balance('1234')), '1 2 3 4')

    def test_jdt_agrees_with_balance_points(self):
        print("\n--- Test: Promotion Oracles Agree ---")
        rng = random.Random(4)
        for type_vector in [(1,) * 12, (2, -1, 2, 1, -2, 2, -1, 1), (1, -1, 2, -2, 3, 1)]:
            for _ in range(25):
                word = word_service.oscillize_word(word_service.random_balanced_word(type_vector, rng))
                by_slides = tableau_service.word_of(tableau_service.promote_jdt(tableau_service.tableau_from_word(word)))
                self.assertEqual(by_slides, tableau_service.promote_balance(word))

    def test_order_divides_length(self):
        print("\n--- Test: Promotion Order ---")
        for word in word_service.enumerate_balanced_words((1,) * 8):
            orbit = tableau_service.promotion_orbit(tableau_service.tableau_from_word(word))
            self.assertEqual(8 % len(orbit), 0)

    def test_general_type_rotates_type(self):
        print("\n--- Test: Promotion of General Type ---")
        tableau = tableau_service.tableau_from_word('{1,2} {3,4} {-4,-3} {3,4}')
        promoted = tableau_service.promote_jdt(tableau)
        self.assertEqual(promoted.type_vector, (2, -2, 2, 2))
        self.assertTrue(promoted.is_rectangular)


class TestEvacuation(unittest.TestCase):

    def test_evacuation_is_epsilon(self):
        print("\n--- Test: Evacuation Acts as Epsilon ---")
        for word in word_service.enumerate_balanced_words((1,) * 8):
            tableau = tableau_service.tableau_from_word(word)
            evacuated = tableau_service.evacuate(tableau)
            self.assertEqual(tableau_service.word_of(evacuated), word_service.involution(word, Involution.EPSILON))
            self.assertEqual(tableau_service.evacuate(evacuated), tableau)

    def test_single_column(self):
        print("\n--- Test: Single Column Evacuation ---")
        tableau = tableau_service.tableau_from_word('1234')
        self.assertEqual(tableau_service.evacuate(tableau), tableau)
        self.assertEqual(tableau_service.dual_evacuate(tableau), tableau)


class TestPromotionPermutations(unittest.TestCase):

    def test_worked_example(self):
        print("\n--- Test: Promotion Permutations of S ---")
        data = tableau_service.promotion_permutations(tableau_service.tableau_from_word(MIXED_SIGN_WORD))
        self.assertEqual(data.perm(1), cycles_to_perm([(1, 2, 7, 10, 11, 4, 5, 6, 3, 12, 9, 8)], 12))
        self.assertEqual(data.perm(2), cycles_to_perm([(1, 5), (2, 10), (3, 9), (4, 6), (7, 12), (8, 11)], 12))
        self.assertEqual(data.perm(3), cycles_to_perm([(1, 8, 9, 12, 3, 6, 5, 4, 11, 10, 7, 2)], 12))
        self.assertEqual(data.matrices[0][0][1], 1)

    def test_single_column(self):
        print("\n--- Test: Single Column Permutations ---")
        data = tableau_service.promotion_permutations(tableau_service.tableau_from_word('1234'))
        for i in (1, 2, 3):
            self.assertEqual(data.perm(i), tuple((b - 1 + i) % 4 + 1 for b in range(1, 5)))

    def test_identities(self):
        print("\n--- Test: Promotion Permutation Identities ---")
        rng = random.Random(9)
        words = list(word_service.enumerate_balanced_words((1,) * 8))
        words += [word_service.random_balanced_word((1,) * 12, rng) for _ in range(10)]
        for word in words:
            tableau = tableau_service.tableau_from_word(word)
            data = tableau_service.promotion_permutations(tableau)
            n = len(word)
            self.assertEqual(data.perm(1), inverse(data.perm(3)))
            self.assertEqual(compose(data.perm(2), data.perm(2)), tuple(range(1, n + 1)))
            for perm in data.perms:
                self.assertTrue(all(perm[b - 1] != b for b in range(1, n + 1)))
            promoted = tableau_service.promotion_permutations(tableau_service.promote_jdt(tableau))
            for i in (1, 2, 3):
                self.assertEqual(promoted.perm(i), compose(shift(n, -1), compose(data.perm(i), shift(n, 1))))
            self.assertTrue(tableau_service.cyclic_monotonicity_check(tableau, data))

    def test_evacuation_reverses_permutations(self):
        print("\n--- Test: Evacuation Conjugates Permutations ---")
        for word in word_service.enumerate_balanced_words((1,) * 8):
            tableau = tableau_service.tableau_from_word(word)
            data = tableau_service.promotion_permutations(tableau)
            evacuated = tableau_service.promotion_permutations(tableau_service.evacuate(tableau))
            w0 = longest_element(8)
            for i in (1, 2, 3):
                self.assertEqual(evacuated.perm(i), compose(w0, compose(data.perm(4 - i), w0)))

    def test_balance_point_oracle(self):
        print("\n--- Test: Balance Point Permutations ---")
        rng = random.Random(13)
        for _ in range(10):
            signed = word_service.random_balanced_word((1,) * 12, rng).signed()
            self.assertEqual(tableau_service.balance_point_perms_signed(signed),
                             tableau_service.promotion_perms_signed(signed))

    def test_worked_example_one_line(self):
        print("\n--- Test: prom_1 of S in One-line Notation ---")
        signed = word_service.parse_word(MIXED_SIGN_WORD).signed()
        perms = tableau_service.promotion_perms_signed(signed)
        self.assertEqual(perms[0], (2, 7, 12, 5, 6, 3, 10, 1, 8, 11, 4, 9))
        self.assertEqual(tableau_service.balance_point_perms_signed(signed), perms)

    def test_balance_points_after_two_promotions(self):
        print("\n--- Test: Balance Points of a Twice Promoted Word ---")
        twice = tableau_service.promote_balance(tableau_service.promote_balance(MIXED_SIGN_WORD))
        self.assertEqual(word_service.balance_points(twice), (1, 4, 7, 10))

    def test_barred_singletons_give_permutations(self):
        print("\n--- Test: Permutations With Barred Letters ---")
        words = list(word_service.enumerate_balanced_words((1, -1, 1, -1, 1, 1, 1, 1)))
        self.assertGreater(len(words), 0)
        for word in words:
            signed = word.signed()
            perms = tableau_service.promotion_perms_signed(signed)
            for perm in perms:
                self.assertEqual(sorted(perm), list(range(1, 9)), str(word))
            self.assertEqual(perms[0], inverse(perms[2]), str(word))
            self.assertEqual(compose(perms[1], perms[1]), tuple(range(1, 9)))
            self.assertEqual(tableau_service.balance_point_perms_signed(signed), perms, str(word))

    def test_cycle_helpers_reject_non_permutations(self):
        print("\n--- Test: Cycle Notation Needs a Permutation ---")
        with self.assertRaises(WebValidationError):
            tableau_service.perm_to_cycles((1, 1, 2))
        with self.assertRaises(WebValidationError):
            tableau_service.format_cycles((2, 2, 3))
        self.assertEqual(tableau_service.format_cycles((2, 1, 3)), '(1 2)')

    def test_monotonicity_rejects_shuffled(self):
        print("\n--- Test: Cyclic Monotonicity Violation ---")
        tableau = tableau_service.tableau_from_word(MIXED_SIGN_WORD)
        data = tableau_service.promotion_permutations(tableau)
        broken = type(data)(perms=(data.perm(3), data.perm(2), data.perm(1)), matrices=data.matrices)
        self.assertFalse(tableau_service.cyclic_monotonicity_check(tableau, broken))

    def test_rejects_non_rectangular(self):
        print("\n--- Test: Non-rectangular Rejected ---")
        with self.assertRaises(WebValidationError):
            tableau_service.promotion_permutations(tableau_service.tableau_from_word('1 2'))


if __name__ == '__main__':
    unittest.main()
