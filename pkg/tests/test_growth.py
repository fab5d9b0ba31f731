import os
import random
import sys
import unittest

# ----------------- PATH SETUP -----------------
current_dir = os.path.dirname(__file__)
project_root = os.path.abspath(os.path.join(current_dir, '..'))
sys.path.append(project_root)

from hourglass_webs.common.exceptions import ResourceCapExceeded, WebValidationError
from hourglass_webs.common.model.component.growth import LEFT, RIGHT
from hourglass_webs.common.model.component.letter import RANK, LatticeStatus, LatticeWord
from hourglass_webs.common.model.component.six_vertex import SINK, SOURCE, TRANSMIT
from hourglass_webs.common.services import (apps_service, graph_service, growth_service, labeling_service,
                                            move_service, word_service)
from hourglass_webs.common.services import tableau_service
from hourglass_webs.common.services.tableau_service import promotion_perms_signed
from hourglass_webs.common.services.word_service import Involution

SIXTEEN_LETTER_WORD = '1 1 2 3 2 1 2 1 3 3 4 4 4 2 3 4'
MIXED_SIGN_WORD = '1 2 -4 1 3 4 2 -3 -2 3 4 -1'
WORKED_GENERAL_WORD = '1 1 -4 2 1 -3 {-4,-3,-2,-1} 3 -1 -1 {-2,-1} 4'
LONG_RULE_HOST = '1 2 1 2 1 2 1 2 3 3 1 4 -2 -2 4 2 3 4 2 3 4 2 3 4'

MIXED_TYPES = [
    (1, -1, 1, -1, 1, 1, 1, 1),
    (1, 1, -1, 1, 1, 1, 1, -1, -1, 1, 1, -1),
    (1, 1, 1, 1, -1, 1, 1, 1, 1, 1),
    (1, -1, 1, 1, -1, 1, 1, 1, 1, 1, 1, 1),
    (1, 1, 1, -1, 1, -1, 1, 1, 1, 1, 1, -1, 1, 1),
    (2, -1, 2, 1, -2, 2, -1, 1),
    (1, -1, 2, -2, 3, 1),
    (3, 1, -2, 2),
    (2, 2, 2, 2),
]


def _weight(values):
    mu = [0] * RANK
    for v in values:
        mu[abs(v) - 1] += 1 if v > 0 else -1
    return tuple(m - mu[-1] for m in mu)


def _descents_shared(word, result):
    signed = word_service.oscillize_signed(word)
    osc = result.oscillating_graph
    descents = word_service.descents(LatticeWord.from_signed(signed))
    neighbor = [osc.other_end(osc.boundary_edge(b), b) for b in range(osc.n_boundary)]
    for i in range(1, osc.n_boundary):
        shared = neighbor[i - 1] == neighbor[i] and not osc.is_boundary(neighbor[i])
        if (i in descents) != shared:
            return False
    return True


def _check_grown(test, word, result):
    graph = result.graph
    graph_service.require_valid(graph)
    test.assertTrue(move_service.is_fully_reduced(graph), str(word))
    test.assertTrue(labeling_service.is_proper(graph, result.labeling))
    test.assertEqual(labeling_service.boundary_word(graph, result.labeling), word)
    signed = word_service.oscillize_signed(word)
    test.assertEqual(graph_service.trip_perms(result.oscillating_graph), promotion_perms_signed(signed), str(word))
    test.assertTrue(_descents_shared(word, result), str(word))


class TestRuleTable(unittest.TestCase):

    def test_end_caps_come_first(self):
        print("\n--- Test: Rule Table ---")
        rules = growth_service.rule_table()
        self.assertEqual([rule.top for rule in rules[:2]], [(1, -1), (-4, 4)])
        self.assertTrue(all(rule.is_cap for rule in rules[:2]))
        self.assertTrue(all(not rule.is_cap for rule in rules[2:]))
        self.assertEqual([rule.index for rule in rules], list(range(len(rules))))

    def test_family_sizes(self):
        print("\n--- Test: Rule Families ---")
        rules = growth_service.rule_table()
        short = [rule for rule in rules if not rule.is_long]
        long = [rule for rule in rules if rule.is_long]
        self.assertEqual(len(short), 84)
        self.assertEqual(len(long), 8)
        self.assertEqual(len({rule.family for rule in short}), 10)
        self.assertEqual({rule.family for rule in long}, {'outer swap', 'inner sink'})
        self.assertTrue(all(len(rule.witnesses) == 1 for rule in short if rule.side))

    def test_crossing_rules_are_proper_x_vertices(self):
        print("\n--- Test: Crossing Rules ---")
        for rule in growth_service.rule_table()[2:]:
            shape = growth_service.x_vertex(rule.top, rule.bottom)
            self.assertIsNotNone(shape, rule.describe())
            self.assertEqual(shape[0], rule.vertex)
            self.assertIn(rule.vertex, (SINK, SOURCE, TRANSMIT))

    def test_crossings_are_the_nice_labelings(self):
        print("\n--- Test: Crossings Used by the Table ---")
        used = {(rule.top, rule.bottom) for rule in growth_service.rule_table() if not rule.is_cap}
        self.assertEqual(len(growth_service.nice_crossings()), 30)
        self.assertEqual(used, set(growth_service.nice_crossings()))
        self.assertTrue(used.isdisjoint(growth_service.EXCLUDED))

    def test_closed_under_involutions(self):
        print("\n--- Test: Involution Closure ---")
        for rule in growth_service.rule_table():
            for which in Involution:
                image = growth_service.rule_image(rule, which)
                self.assertIsNotNone(image, f'{rule.describe()} under {which.value}')
                self.assertEqual(image.family, rule.family)

    def test_printed_rules_present(self):
        print("\n--- Test: Named Rules ---")
        shapes = {(rule.top, rule.bottom, rule.side, rule.witnesses, rule.run)
                  for rule in growth_service.rule_table()}
        self.assertIn(((1, -1), (), None, (), ()), shapes)
        self.assertIn(((1, -2), (-2, 1), None, (), ()), shapes)
        self.assertIn(((1, 2), (2, 1), RIGHT, (2,), ()), shapes)
        self.assertIn(((1, 3), (3, 1), RIGHT, (2,), ()), shapes)
        self.assertIn(((2, 4), (4, 2), LEFT, (3,), ()), shapes)
        self.assertIn(((-3, -2), (4, 1), RIGHT, (-1,), ()), shapes)
        self.assertIn(((2, 4), (-1, -3), LEFT, (-3,), ()), shapes)
        self.assertIn(((-4, 2), (2, -4), RIGHT, (4,), ()), shapes)
        self.assertIn(((2, 3), (-1, -4), RIGHT, (4,), ()), shapes)
        self.assertIn(((1, 4), (4, 1), RIGHT, (-1, 2, 3, 4), (-3, -2)), shapes)
        self.assertNotIn(((-4, 2), (2, -4), None, (), ()), shapes)

    def test_swap_witness_sets(self):
        print("\n--- Test: Swap Witness Sets ---")
        rules = growth_service.rule_table()

        def witnesses(top, bottom, side):
            return sorted(rule.witnesses[0] for rule in rules
                          if (rule.top, rule.bottom, rule.side) == (top, bottom, side) and not rule.is_long)

        self.assertEqual(witnesses((1, 2), (2, 1), RIGHT), [-1, 2])
        self.assertEqual(witnesses((1, 2), (2, 1), LEFT), [])
        self.assertEqual(witnesses((3, 4), (4, 3), LEFT), [-4, 3])
        self.assertEqual(witnesses((1, 3), (3, 1), RIGHT), [-1, 2, 3])
        self.assertEqual(witnesses((1, 3), (3, 1), LEFT), [])
        self.assertEqual(witnesses((2, 4), (4, 2), LEFT), [-4, 2, 3])
        self.assertEqual(witnesses((1, 3), (-2, -4), RIGHT), [-3, -2, 4])
        self.assertEqual(witnesses((1, 2), (-3, -4), LEFT), [])

    def test_rules_raise_tlex_and_keep_weight(self):
        print("\n--- Test: Rule Weights ---")
        for rule in growth_service.rule_table():
            self.assertEqual(_weight(rule.top), _weight(rule.bottom), rule.describe())
            if not rule.is_cap:
                self.assertGreater(word_service.tlex_key(rule.bottom), word_service.tlex_key(rule.top))

    def test_rewrites_stay_balanced_in_hosts(self):
        print("\n--- Test: Rules Inside Host Words ---")
        rng = random.Random(5)
        for _ in range(60):
            word = word_service.random_balanced_word(rng.choice(MIXED_TYPES), rng)
            signed = word_service.oscillize_signed(word)
            for rule, p in growth_service.applicable_rules(word):
                rewritten = signed[:p] + rule.bottom + signed[p + 2:]
                status = word_service.is_lattice_word(LatticeWord.from_signed(rewritten))
                self.assertEqual(status, LatticeStatus.BALANCED, f'{rule.describe()} in {word}')

    def test_x_vertex_types(self):
        print("\n--- Test: X Vertex Types ---")
        self.assertEqual(growth_service.x_vertex((1, 2), (-3, -4)), (SINK, None))
        self.assertEqual(growth_service.x_vertex((-1, -2), (3, 4)), (SOURCE, None))
        self.assertEqual(growth_service.x_vertex((1, 2), (3, 4)), (TRANSMIT, 0))
        self.assertIsNone(growth_service.x_vertex((1, -2), (3, 4)))


class TestRuleMatching(unittest.TestCase):

    def test_end_cap(self):
        print("\n--- Test: End Cap Matches ---")
        options = growth_service.applicable_rules(word_service.parse_word('1 -1'))
        self.assertEqual([(rule.top, p) for rule, p in options], [((1, -1), 0)])
        self.assertTrue(options[0][0].is_cap)

    def test_empty_word(self):
        print("\n--- Test: Empty Word Has No Rules ---")
        self.assertEqual(growth_service.applicable_rules(LatticeWord()), [])

    def test_long_rule_reads_the_whole_run(self):
        print("\n--- Test: Long Rule Run ---")
        options = growth_service.applicable_rules(word_service.parse_word(LONG_RULE_HOST))
        long = [rule for rule, p in options if rule.is_long and p == 10]
        self.assertEqual(len(long), 1)
        self.assertEqual((long[0].top, long[0].bottom), ((1, 4), (4, 1)))
        self.assertIn(4, long[0].witnesses)

    def test_unwitnessed_exchange_is_not_applied(self):
        print("\n--- Test: Witness Required ---")
        options = growth_service.applicable_rules(word_service.parse_word('1 -4 2 -2 4 -1'))
        self.assertNotIn(((-4, 2), 1), [(rule.top, p) for rule, p in options])
        self.assertIn(((2, -2), 2), [(rule.top, p) for rule, p in options])

    def test_order_is_position_then_index(self):
        print("\n--- Test: Application Order ---")
        options = growth_service.applicable_rules(word_service.parse_word(SIXTEEN_LETTER_WORD))
        keys = [(p, rule.index) for rule, p in options]
        self.assertEqual(keys, sorted(keys))
        signed = word_service.oscillize_signed(word_service.parse_word(SIXTEEN_LETTER_WORD))
        for rule, p in options:
            self.assertEqual(rule.top, (signed[p], signed[p + 1]))

    def test_swap_is_not_read_from_a_left_witness(self):
        print("\n--- Test: Left Letters Do Not Witness Swaps ---")
        rule, p = growth_service.applicable_rules(word_service.parse_word('1 1 2 3 2 3 4 4'))[0]
        self.assertEqual((rule.top, rule.bottom, p), ((2, 3), (-1, -4), 2))
        self.assertEqual((rule.side, rule.witnesses), (LEFT, (1,)))

    def test_worked_general_word_starts_with_sink(self):
        print("\n--- Test: First Rule of a General Word ---")
        rule, p = growth_service.applicable_rules(word_service.parse_word(WORKED_GENERAL_WORD))[0]
        self.assertEqual((rule.top, rule.bottom, p), ((-3, -2), (4, 1), 7))


class TestGrowth(unittest.TestCase):

    def test_two_column_rectangle(self):
        print("\n--- Test: Growth on 4 x 2 Rectangles ---")
        keys = set()
        words = list(word_service.enumerate_balanced_words((1,) * 8))
        self.assertEqual(len(words), 14)
        for word in words:
            result = growth_service.grow(word)
            _check_grown(self, word, result)
            self.assertEqual(graph_service.trip_perms(result.graph), promotion_perms_signed(word.signed()))
            self.assertGreater(len(result.trace), 0)
            keys.add(graph_service.canonical_key(result.graph))
        self.assertEqual(len(keys), 14)

    def test_words_needing_witnesses(self):
        print("\n--- Test: Words Needing Witnessed Rules ---")
        for text in ['1 1 2 3 2 3 4 4', '1 2 1 3 2 4 3 4', '1 2 1 3 4 2 3 4', '1 1 2 3 4 2 3 4', '1 2 3 1 2 4 3 4',
                     '1 -4 2 -2 4 -1', '1 2 3 4 -4 -3 -2 -1', MIXED_SIGN_WORD]:
            word = word_service.parse_word(text)
            _check_grown(self, word, growth_service.grow(word))

    def test_worked_general_word(self):
        print("\n--- Test: Growth of a General Worked Word ---")
        word = word_service.parse_word(WORKED_GENERAL_WORD)
        result = growth_service.grow(word)
        _check_grown(self, word, result)
        first = result.trace.steps[0]
        self.assertEqual((first.rule.top, first.rule.bottom, first.position), ((-3, -2), (4, 1), 7))
        self.assertEqual((first.rule.side, first.rule.witnesses), (LEFT, (-4,)))

    def test_worked_word(self):
        print("\n--- Test: Growth of a Worked Word ---")
        word = word_service.parse_word(SIXTEEN_LETTER_WORD)
        graph = growth_service.grow(word).graph
        trips = graph_service.trip_perms(graph)
        self.assertEqual([trip[0] for trip in trips], [5, 10, 13])
        self.assertEqual(labeling_service.tableau_of(graph), tableau_service.tableau_from_word(word))

    def test_word_with_barred_letters(self):
        print("\n--- Test: Growth With Barred Letters ---")
        word = word_service.parse_word(MIXED_SIGN_WORD)
        result = growth_service.grow(word)
        self.assertEqual(result.graph.type_vector, (1, 1, -1, 1, 1, 1, 1, -1, -1, 1, 1, -1))
        self.assertEqual(graph_service.trip_perms(result.graph), promotion_perms_signed(word.signed()))

    def test_general_type(self):
        print("\n--- Test: Growth of a General Type ---")
        word = word_service.parse_word('{1,2} {3,4}')
        graph = growth_service.grow(word).graph
        self.assertTrue(graph_service.same_graph(graph, graph_service.star((2, 2))))

    def test_plane_partition_words(self):
        print("\n--- Test: Growth of Plane Partition Words ---")
        for box in [(1, 1, 1), (2, 1, 1), (2, 2, 1)]:
            word = apps_service.pp_word(*box)
            _check_grown(self, word, growth_service.grow(word))

    def test_trace_is_readable(self):
        print("\n--- Test: Growth Trace ---")
        result = growth_service.grow(word_service.parse_word('1 2 3 4'))
        sequence = result.trace.rule_sequence()
        self.assertEqual(len(sequence), len(result.trace))
        self.assertTrue(all(' -> ' in step and ' at ' in step for step in sequence))
        self.assertEqual(sequence[0], "2 3 (4) -> -1 -4 at 2")

    def test_trace_words_progress(self):
        print("\n--- Test: Each Step Shortens or Raises the Word ---")
        result = growth_service.grow(word_service.parse_word(SIXTEEN_LETTER_WORD))
        words = [step.word for step in result.trace.steps] + [()]
        for before, after in zip(words, words[1:]):
            self.assertTrue(len(after) < len(before)
                            or word_service.tlex_key(after) > word_service.tlex_key(before))

    def test_randomized_growth_stays_in_the_move_class(self):
        print("\n--- Test: Randomized Growth ---")
        word = word_service.parse_word(SIXTEEN_LETTER_WORD)
        graph = growth_service.grow(word).graph
        klass = move_service.move_class(graph)
        for seed in range(5):
            other = growth_service.randomized_grow(word, seed).graph
            self.assertTrue(move_service.is_fully_reduced(other))
            self.assertEqual(graph_service.trip_perms(other), graph_service.trip_perms(graph))
            self.assertIn(graph_service.canonical_key(other), klass.keys)

    def test_randomized_growth_of_a_square_word(self):
        print("\n--- Test: Randomized Growth Reaches a Square Move ---")
        word = word_service.parse_word('1 2 1 3 2 4 3 4')
        graph = growth_service.grow(word).graph
        klass = move_service.move_class(graph)
        keys = set()
        for seed in range(20):
            other = growth_service.randomized_grow(word, seed).graph
            self.assertIn(graph_service.canonical_key(other), klass.keys)
            keys.add(graph_service.canonical_key(other))
        self.assertLessEqual(len(keys), len(klass.keys))

    def test_randomized_growth_is_reproducible(self):
        print("\n--- Test: Seeded Growth ---")
        word = word_service.parse_word(SIXTEEN_LETTER_WORD)
        first = growth_service.randomized_grow(word, 11).graph
        second = growth_service.randomized_grow(word, 11).graph
        self.assertTrue(graph_service.same_graph(first, second))

    def test_rejects_unbalanced_words(self):
        print("\n--- Test: Growth Rejects Unbalanced Words ---")
        with self.assertRaises(WebValidationError):
            growth_service.grow(word_service.parse_word('1 2 3'))
        with self.assertRaises(WebValidationError):
            growth_service.grow(word_service.parse_word('2 1 3 4'))

    def test_step_cap(self):
        print("\n--- Test: Growth Cap ---")
        with self.assertRaises(ResourceCapExceeded):
            growth_service.grow(word_service.parse_word(SIXTEEN_LETTER_WORD), max_nodes=1)


class TestGrowthProperties(unittest.TestCase):

    def test_random_mixed_words(self):
        print("\n--- Test: Growth on 500 Random Words ---")
        rng = random.Random(2024)
        for _ in range(500):
            word = word_service.random_balanced_word(rng.choice(MIXED_TYPES), rng)
            result = growth_service.grow(word)
            _check_grown(self, word, result)
            self.assertEqual(labeling_service.sep_word(result.graph), word)

    def test_random_choices_agree_on_trips(self):
        print("\n--- Test: Randomized Growth Agrees on Trips ---")
        rng = random.Random(77)
        for _ in range(40):
            word = word_service.random_balanced_word(rng.choice(MIXED_TYPES), rng)
            trips = graph_service.trip_perms(growth_service.grow(word).graph)
            other = growth_service.randomized_grow(word, rng.randrange(1000))
            _check_grown(self, word, other)
            self.assertEqual(graph_service.trip_perms(other.graph), trips)


if __name__ == '__main__':
    unittest.main()
