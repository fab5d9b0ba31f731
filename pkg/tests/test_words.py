import os
import random
import sys
import unittest

# ----------------- PATH SETUP -----------------
current_dir = os.path.dirname(__file__)
project_root = os.path.abspath(os.path.join(current_dir, '..'))
sys.path.append(project_root)

from hourglass_webs.common.exceptions import WebValidationError, WordParseError
from hourglass_webs.common.model.component.letter import LatticeStatus, LatticeWord
from hourglass_webs.common.services import word_service
from hourglass_webs.common.services.word_service import Involution

MIXED_SIGN_WORD = '1 2 -4 1 3 4 2 -3 -2 3 4 -1'


class TestWordGrammar(unittest.TestCase):

    def test_parse_singletons_subsets_and_runs(self):
        print("\n--- Test: Word Grammar ---")
        self.assertEqual(word_service.parse_word('1234').signed(), (1, 2, 3, 4))
        self.assertEqual(word_service.parse_word('1-2').signed(), (1, -2))
        self.assertEqual(word_service.parse_word('1 4̄').signed(), (1, -4))
        word = word_service.parse_word('{1,3} {-2,-4} 2')
        self.assertEqual(word.type_vector, (2, -2, 1))
        self.assertEqual(str(word), '{1,3} {-4,-2} 2')

    def test_parse_errors_carry_position(self):
        print("\n--- Test: Word Parse Errors ---")
        with self.assertRaises(WordParseError) as ctx:
            word_service.parse_word('1 2 5')
        self.assertEqual(ctx.exception.position, 4)
        with self.assertRaises(WordParseError):
            word_service.parse_word('{1,-2}')
        with self.assertRaises(WordParseError):
            word_service.parse_word('{1,2')
        with self.assertRaises(WordParseError) as ctx:
            word_service.parse_word('1 x')
        self.assertEqual(ctx.exception.position, 2)

    def test_parse_error_is_a_validation_failure(self):
        print("\n--- Test: Parse Error Exit Code ---")
        self.assertTrue(issubclass(WordParseError, WebValidationError))
        self.assertEqual(WordParseError('bad', 'x', 0).exit_code, 2)


class TestLatticeWords(unittest.TestCase):

    def test_classification(self):
        print("\n--- Test: Lattice Classification ---")
        self.assertEqual(word_service.is_lattice_word('1234'), LatticeStatus.BALANCED)
        self.assertEqual(word_service.is_lattice_word('1 -2'), LatticeStatus.NOT_LATTICE)
        self.assertEqual(word_service.is_lattice_word('1 2'), LatticeStatus.LATTICE)
        self.assertEqual(word_service.is_lattice_word(MIXED_SIGN_WORD), LatticeStatus.BALANCED)

    def test_oscillization_keeps_classification(self):
        print("\n--- Test: Oscillization ---")
        self.assertEqual(word_service.oscillize_word('{1,2} -1').signed(), (1, 2, -1))
        rng = random.Random(7)
        for type_vector in [(2, -1, 2, 1, -2, 2, -1, 1), (1, 3, -2, 2), (2, 2, 2, 2)]:
            for _ in range(10):
                word = word_service.random_balanced_word(type_vector, rng)
                self.assertEqual(word_service.is_lattice_word(word_service.oscillize_word(word)),
                                 word_service.is_lattice_word(word))

    def test_counts_match_enumeration(self):
        print("\n--- Test: Balanced Word Counts ---")
        self.assertEqual(word_service.count_balanced_words((1,) * 8), 14)
        self.assertEqual(word_service.count_balanced_words((1, -1)), 1)
        words = list(word_service.enumerate_balanced_words((1,) * 8))
        self.assertEqual(len(words), 14)
        self.assertEqual(len({w.signed() for w in words}), 14)
        self.assertTrue(all(word_service.is_lattice_word(w) == LatticeStatus.BALANCED for w in words))

    def test_random_words_are_balanced(self):
        print("\n--- Test: Random Balanced Words ---")
        rng = random.Random(11)
        for type_vector in [(1,) * 12, (1, -1, 2, -2), (3, 1, 2, -2)]:
            word = word_service.random_balanced_word(type_vector, rng)
            self.assertEqual(word.type_vector, type_vector)
            self.assertEqual(word_service.is_lattice_word(word), LatticeStatus.BALANCED)

    def test_type_without_words(self):
        print("\n--- Test: Empty Type ---")
        with self.assertRaises(WebValidationError):
            word_service.random_balanced_word((1, 1), random.Random(0))


class TestOrders(unittest.TestCase):

    def test_tilde_and_tlex(self):
        print("\n--- Test: tlex Order ---")
        self.assertEqual(word_service.tlex_key('1 -4'), (1, 1))
        self.assertEqual(word_service.tlex_compare('1 2', '2 1'), -1)
        self.assertEqual(word_service.tlex_compare('2 1', '2 1'), 0)

    def test_grevlex(self):
        print("\n--- Test: grevlex Order ---")
        self.assertEqual(word_service.grevlex_compare('1 2 3 4', '1 2 4 3'), 1)
        self.assertEqual(word_service.grevlex_compare('1 2', '1 2 3 4'), -1)


class TestInvolutions(unittest.TestCase):

    def test_examples(self):
        print("\n--- Test: Involution Examples ---")
        self.assertEqual(word_service.involution('1', Involution.VARPI).signed(), (-4,))
        self.assertEqual(word_service.involution('1 2', Involution.TAU).signed(), (-2, -1))

    def test_involutions_and_tau_factorization(self):
        print("\n--- Test: Involutions Compose ---")
        rng = random.Random(3)
        for _ in range(50):
            word = word_service.random_balanced_word((1,) * 12, rng)
            for which in Involution:
                self.assertEqual(word_service.involution(word_service.involution(word, which), which), word)
            composed = word_service.involution(word_service.involution(word, Involution.VARPI), Involution.EPSILON)
            self.assertEqual(composed, word_service.involution(word, Involution.TAU))


class TestDescentsAndBalancePoints(unittest.TestCase):

    def test_descents(self):
        print("\n--- Test: Descents ---")
        self.assertEqual(word_service.descents('1234'), {1, 2, 3})
        self.assertEqual(word_service.descents('1 -1'), set())
        self.assertEqual(word_service.descents('-2 -1'), {1})

    def test_balance_points(self):
        print("\n--- Test: Balance Points ---")
        self.assertEqual(word_service.balance_points(MIXED_SIGN_WORD), (1, 2, 5, 8))
        self.assertEqual(word_service.balance_points('1234'), (1, 2, 3, 4))

    def test_balance_points_reject_unbalanced(self):
        print("\n--- Test: Balance Points Need Balance ---")
        with self.assertRaises(WebValidationError):
            word_service.balance_points('1 2')


class TestCrystal(unittest.TestCase):

    def test_examples(self):
        print("\n--- Test: Crystal Operators ---")
        self.assertEqual(word_service.crystal_e('2', 1).signed(), (1,))
        self.assertIsNone(word_service.crystal_f('1 2', 1))
        step = word_service.crystal_e('-3 2 4', 1)
        self.assertEqual(step.signed(), (-3, 1, 4))
        self.assertEqual(word_service.crystal_e(step, 3).signed(), (-3, 1, 3))

    def test_e_and_f_are_inverse(self):
        print("\n--- Test: Crystal Inverses ---")
        rng = random.Random(5)
        for _ in range(40):
            signed = tuple(rng.choice([1, 2, 3, 4, -1, -2, -3, -4]) for _ in range(8))
            word = LatticeWord.from_signed(signed)
            for i in (1, 2, 3):
                raised = word_service.crystal_e(word, i)
                if raised is not None:
                    self.assertEqual(word_service.crystal_f(raised, i), word)
                eps, phi = word_service.crystal_string(word, i)
                self.assertEqual(raised is None, eps == 0)
                self.assertEqual(word_service.crystal_f(word, i) is None, phi == 0)


if __name__ == '__main__':
    unittest.main()
