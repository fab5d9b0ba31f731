import os
import random
import sys
import unittest

import sympy

# ----------------- PATH SETUP -----------------
current_dir = os.path.dirname(__file__)
project_root = os.path.abspath(os.path.join(current_dir, '..'))
sys.path.append(project_root)

from hourglass_webs.common.exceptions import ResourceCapExceeded, WebValidationError
from hourglass_webs.common.services import apps_service, graph_service, growth_service, move_service, word_service


class TestAlternatingSignMatrices(unittest.TestCase):

    def test_enumeration_counts(self):
        print("\n--- Test: ASM Counts ---")
        self.assertEqual([len(apps_service.enumerate_asms(n)) for n in range(1, 5)], [1, 2, 7, 42])
        self.assertTrue(all(apps_service.is_asm(m) for m in apps_service.enumerate_asms(4)))

    def test_is_asm(self):
        print("\n--- Test: ASM Check ---")
        self.assertTrue(apps_service.is_asm(((0, 1, 0), (1, -1, 1), (0, 1, 0))))
        self.assertFalse(apps_service.is_asm(((1, 0), (1, 0))))
        self.assertFalse(apps_service.is_asm(((0, 1, 0), (1, 0, 0), (0, 1, 0))))

    def test_covers(self):
        print("\n--- Test: ASM Covers ---")
        matrices = apps_service.enumerate_asms(2)
        self.assertEqual(apps_service.asm_covers(matrices), {(1, 0)})
        self.assertEqual(len(apps_service.asm_covers(apps_service.enumerate_asms(3))), 8)

    def test_superstandard_word(self):
        print("\n--- Test: Superstandard Word ---")
        self.assertEqual(word_service.format_word(apps_service.superstandard_word(2)), '1 1 2 2 3 3 4 4')
        with self.assertRaises(WebValidationError):
            apps_service.superstandard_word(0)

    def test_superstandard_class(self):
        print("\n--- Test: Superstandard Move Class ---")
        for n in (1, 2, 3):
            report = apps_service.asm_class(n)
            self.assertEqual(len(report), len(apps_service.enumerate_asms(n)))
            self.assertEqual(set(report.matrices), set(apps_service.enumerate_asms(n)))
            self.assertEqual(len(report.configs), len(report))
        self.assertEqual(apps_service.asm_class(1).matrices, (((1,),),))

    def test_class_covers_match_matrix_covers(self):
        print("\n--- Test: Square Moves as ASM Covers ---")
        report = apps_service.asm_class(3)
        unordered = {frozenset(pair) for pair in report.covers}
        self.assertEqual(unordered, {frozenset(pair) for pair in apps_service.asm_covers(report.matrices)})

    def test_asm_table(self):
        print("\n--- Test: ASM Table ---")
        table = apps_service.asm_table(apps_service.asm_class(2))
        self.assertEqual(list(table.columns), ['member', 'matrix', 'sinks', 'sources'])
        self.assertEqual(len(table), 2)
        self.assertEqual(set(table['sinks']), {2})

    def test_class_cap(self):
        print("\n--- Test: ASM Class Cap ---")
        with self.assertRaises(ResourceCapExceeded):
            apps_service.asm_class(3, max_nodes=2)


class TestPlanePartitions(unittest.TestCase):

    def test_macmahon(self):
        print("\n--- Test: MacMahon Counts ---")
        self.assertEqual(apps_service.macmahon(1, 1, 1), 2)
        self.assertEqual(apps_service.macmahon(2, 2, 2), 20)
        self.assertEqual(apps_service.macmahon(1, 1, 2), 3)

    def test_q_macmahon(self):
        print("\n--- Test: q-MacMahon ---")
        self.assertEqual(apps_service.q_macmahon(1, 1, 1), [1, 1])
        coefficients = apps_service.q_macmahon(2, 2, 2)
        self.assertEqual(sum(coefficients), 20)
        self.assertEqual(len(coefficients), 9)
        self.assertEqual(coefficients, coefficients[::-1])

    def test_box_word(self):
        print("\n--- Test: Box Web Word ---")
        self.assertEqual(word_service.format_word(apps_service.pp_word(1, 1, 1)), '1 -4 2 -2 4 -1')
        word = apps_service.pp_word(2, 1, 1)
        self.assertEqual(word_service.is_lattice_word(word).value, 'balanced-lattice')
        with self.assertRaises(WebValidationError):
            apps_service.pp_word(0, 1, 1)

    def test_unit_box(self):
        print("\n--- Test: Unit Box ---")
        report = apps_service.pp_class(1, 1, 1)
        self.assertEqual(len(report), 2)
        self.assertEqual(report.rank_sizes, (1, 1))
        self.assertEqual(len(report.join_irreducibles), 1)
        top = report.join_irreducibles[0]
        self.assertEqual(report.ideals[top], (top,))
        self.assertEqual(report.ideals[1 - top], ())

    def test_box_ranks_follow_q_macmahon(self):
        print("\n--- Test: Box Ranks ---")
        for box in ((1, 1, 2), (1, 2, 1), (2, 1, 1)):
            report = apps_service.pp_class(*box)
            self.assertEqual(len(report), apps_service.macmahon(*box))
            self.assertEqual(list(report.rank_sizes), apps_service.q_macmahon(*box))
            self.assertEqual(len(report.join_irreducibles), box[0] * box[1] * box[2])
            self.assertEqual(len(set(report.ideals)), len(report))
            self.assertEqual(report.square_moves, 0)

    def test_two_cube(self):
        print("\n--- Test: Two Cube ---")
        report = apps_service.pp_class(2, 2, 2)
        self.assertEqual(len(report), 20)
        self.assertEqual(list(report.rank_sizes), apps_service.q_macmahon(2, 2, 2))
        self.assertEqual(len(report.join_irreducibles), 8)
        self.assertEqual(report.square_moves, 0)

    def test_ascent_order_reaches_one_top(self):
        print("\n--- Test: Benzene Ascents ---")
        graph = growth_service.grow(apps_service.pp_word(2, 2, 2)).graph
        top = graph_service.canonical_key(move_service.top_element(graph))
        rng = random.Random(5)
        for _ in range(100):
            current = graph
            while True:
                upward = move_service.benzene_faces(current, clockwise=True)
                if not upward:
                    break
                current = move_service.apply_move(current, rng.choice(upward))
            self.assertEqual(graph_service.canonical_key(current), top)

    def test_pp_table(self):
        print("\n--- Test: Plane Partition Table ---")
        table = apps_service.pp_table(apps_service.pp_class(1, 1, 2))
        self.assertEqual(list(table.columns), ['rank', 'members', 'q_macmahon'])
        self.assertEqual(list(table['members']), list(table['q_macmahon']))


class TestCyclicSieving(unittest.TestCase):

    def test_hooks(self):
        print("\n--- Test: Rectangle Hooks ---")
        self.assertEqual(sorted(apps_service.rectangle_hooks(2), reverse=True), [5, 4, 4, 3, 3, 2, 2, 1])
        self.assertEqual(apps_service.q_hook_formula(2).eval(1), 14)

    def test_root_of_unity(self):
        print("\n--- Test: Evaluation at a Root of Unity ---")
        q = apps_service.q
        polynomial = sympy.Poly(1 + q + q ** 2, q)
        self.assertEqual(apps_service.evaluate_at_root(polynomial, 1, 3), 0)
        self.assertEqual(apps_service.evaluate_at_root(polynomial, 3, 3), 3)
        with self.assertRaises(WebValidationError):
            apps_service.evaluate_at_root(sympy.Poly(1 + q, q), 1, 3)

    def test_single_column(self):
        print("\n--- Test: Cyclic Sieving for One Column ---")
        report = apps_service.csp_check(1)
        self.assertTrue(report.holds)
        self.assertEqual(report.orbits, 1)
        self.assertEqual([row.fixed for row in report.rows], [1, 1, 1, 1])

    def test_two_columns(self):
        print("\n--- Test: Cyclic Sieving for Two Columns ---")
        report = apps_service.csp_check(2)
        self.assertTrue(report.holds)
        self.assertEqual(report.rows[-1].fixed, 14)
        self.assertEqual(apps_service.burnside_orbits(report), report.orbits)
        table = apps_service.csp_table(report)
        self.assertEqual(list(table.columns), ['d', 'fixed', 'evaluation'])
        self.assertEqual(len(table), 8)

    def test_word_cap(self):
        print("\n--- Test: Cyclic Sieving Cap ---")
        with self.assertRaises(ResourceCapExceeded):
            apps_service.csp_check(2, max_nodes=10)
        with self.assertRaises(WebValidationError):
            apps_service.csp_check(0)

    def test_invariant_dimension(self):
        print("\n--- Test: Invariant Space Dimension ---")
        self.assertEqual(apps_service.dim_invariant_space((1, -1)), 1)
        self.assertEqual(apps_service.dim_invariant_space((1,) * 8), 14)
        self.assertEqual(apps_service.dim_invariant_space((1,) * 4), 1)


if __name__ == '__main__':
    unittest.main()
