import os
import random
import sys
import unittest

# ----------------- PATH SETUP -----------------
current_dir = os.path.dirname(__file__)
project_root = os.path.abspath(os.path.join(current_dir, '..'))
sys.path.append(project_root)

from hourglass_webs.common.exceptions import ResourceCapExceeded, WebValidationError
from hourglass_webs.common.model.component.hourglass_graph import BLACK, WHITE, HourglassGraph
from hourglass_webs.common.model.component.invariant import LaurentPoly, TaggedWeb, WebPolynomial
from hourglass_webs.common.model.component.labeling import TagAssignment
from hourglass_webs.common.services import graph_service, invariant_service, skein_service

TWO_COLUMNS = (1,) * 8
SIX_ONES = (1,) * 6


def at_one(expansion):
    return {key: poly.at_one() for key, poly in expansion.terms}


def crossed_diagrams(count, seed):
    """Basis webs of types (1^6) and (1^8) with one adjacent pair of boundary edges crossed."""

    rng = random.Random(seed)
    diagrams = []
    for _ in range(count):
        type_vector = rng.choice((SIX_ONES, TWO_COLUMNS))
        graph = rng.choice(invariant_service.basis(type_vector)).graph
        diagrams.append(invariant_service.add_crossing(graph, rng.randrange(1, len(type_vector))))
    return diagrams


def two_vertex_web(multiplicities):
    """A closed black and white pair joined by edges of the given multiplicities, tagged at slot 0."""

    edges = tuple((0, 1, m) for m in multiplicities)
    black = tuple((e, k) for e, m in enumerate(multiplicities) for k in range(m))
    white = tuple((e, k) for e in reversed(range(len(multiplicities))) for k in range(multiplicities[e]))
    graph = HourglassGraph(n_boundary=0, colors=(BLACK, WHITE), edges=edges, rotation=(black, white))
    return TaggedWeb(graph=graph, tags=TagAssignment(slots=(0, 0)))


class TestSkeinSites(unittest.TestCase):

    def test_crossing_is_found_first(self):
        print("\n--- Test: Skein Sites ---")
        diagram = invariant_service.add_crossing(graph_service.star((1, 1, 1, 1)), 1)
        sites = skein_service.find_sites(diagram)
        self.assertEqual(sites[0].kind, skein_service.UNCROSS)
        self.assertEqual(sites[0].vertices, diagram.crossings)

    def test_skein_step_uncrosses(self):
        print("\n--- Test: Skein Step ---")
        diagram = invariant_service.add_crossing(invariant_service.basis(TWO_COLUMNS)[0].graph, 1)
        combination = skein_service.skein_step(diagram)
        self.assertEqual(combination.site.kind, skein_service.UNCROSS)
        self.assertGreater(len(combination), 0)
        for _, web in combination.terms:
            self.assertEqual(web.graph.crossings, ())


class TestRelations(unittest.TestCase):

    def test_closed_values(self):
        print("\n--- Test: Closed Component Values ---")
        four = invariant_service.quantum_integer(4)
        self.assertEqual(skein_service.closed_value((1, 3)), four)
        self.assertEqual(skein_service.closed_value((3, 1)), four)
        self.assertEqual(skein_service.closed_value((2, 2)), invariant_service.qbinom(4, 2))
        self.assertEqual(skein_service.closed_value((1, 1, 2)),
                         invariant_service.quantum_integer(2) * invariant_service.qbinom(4, 2))
        self.assertEqual(skein_service.closed_value((1, 1, 1, 1)).at_one(), 24)

    def test_digon_values(self):
        print("\n--- Test: Digon Values ---")
        self.assertEqual(skein_service.digon_value(1, 1), invariant_service.quantum_integer(2))
        self.assertEqual(skein_service.digon_value(1, 2), invariant_service.quantum_integer(3))
        self.assertEqual(skein_service.digon_value(2, 1), invariant_service.quantum_integer(3))
        self.assertEqual(skein_service.digon_value(2, 2), invariant_service.qbinom(4, 2))

    def test_loop_reduces_to_its_quantum_dimension(self):
        print("\n--- Test: Loop Removal ---")
        web = two_vertex_web((1, 3))
        expansion = skein_service.reduce_to_basis(web)
        self.assertEqual(len(expansion), 1)
        value = expansion.terms[0][1]
        self.assertEqual(abs(value.at_one()), 4)
        self.assertEqual(value, invariant_service.quantum_integer(4) * (value.at_one() // 4))
        self.assertEqual(invariant_service.expansion_at_one(expansion), invariant_service.evaluate_q1(web))

    def test_theta_keeps_its_multinomial(self):
        print("\n--- Test: Theta Removal ---")
        web = two_vertex_web((1, 1, 2))
        combination = skein_service.skein_step(web)
        self.assertEqual(combination.site.kind, skein_service.CLOSED)
        (value, rest), = combination.terms
        self.assertEqual(rest.graph.vertex_count, 0)
        self.assertEqual(abs(value.at_one()), 12)
        self.assertEqual(value, skein_service.closed_value((1, 1, 2)) * (value.at_one() // 12))

    def test_uncrossing_puts_q_on_the_arcs(self):
        print("\n--- Test: Uncrossing Coefficients ---")
        diagram = invariant_service.add_crossing(graph_service.star((1, 1, 1, 1)), 1)
        combination = skein_service.skein_step(diagram)
        self.assertEqual(len(combination), 2)
        exponents = {}
        for value, web in combination.terms:
            arcs_only = web.graph.vertex_count == 5
            exponents[arcs_only] = sorted(value.as_dict())
            self.assertIn(value.at_one(), (1, -1))
        self.assertEqual(exponents, {True: [1], False: [0]})

    def test_four_cycles_need_an_hourglass(self):
        print("\n--- Test: Forbidden 4-Cycles ---")
        for web in invariant_service.basis(TWO_COLUMNS):
            kinds = {site.kind for site in skein_service.find_sites(web)}
            self.assertNotIn(skein_service.FOUR_CYCLE, kinds)
            self.assertNotIn(skein_service.DIGON, kinds)


class TestReduction(unittest.TestCase):

    def test_basis_web_is_fixed(self):
        print("\n--- Test: Basis Web Reduction ---")
        web = invariant_service.basis(TWO_COLUMNS)[5]
        expansion = skein_service.reduce_to_basis(web)
        self.assertEqual(len(expansion), 1)
        self.assertEqual(expansion.terms[0][1], LaurentPoly.constant(1))
        self.assertEqual(expansion.terms[0][0], graph_service.canonical_key(web.graph))

    def test_crossed_star(self):
        print("\n--- Test: Crossed Star ---")
        star = graph_service.star((1, 1, 1, 1))
        expansion = skein_service.reduce_to_basis(invariant_service.add_crossing(star, 1))
        self.assertEqual(at_one(expansion), {graph_service.canonical_key(star): -1})

    def test_crossed_star_is_minus_inverse_q(self):
        print("\n--- Test: Crossed Star at Generic q ---")
        star = graph_service.star((1, 1, 1, 1))
        expansion = skein_service.reduce_to_basis(invariant_service.add_crossing(star, 1))
        self.assertEqual(expansion.terms, ((graph_service.canonical_key(star), LaurentPoly.monomial(-1, -1)),))

    def test_rewrite_orders_agree(self):
        print("\n--- Test: Reduction Confluence over Crossed Diagrams ---")
        for diagram in crossed_diagrams(25, seed=7):
            first = skein_service.reduce_to_basis(diagram)
            second = skein_service.reduce_to_basis(diagram, seed=11)
            self.assertEqual(first.terms, second.terms)
            self.assertEqual(invariant_service.expansion_at_one(first), invariant_service.evaluate_q1(diagram))

    def test_single_rewrites_keep_the_invariant(self):
        print("\n--- Test: Single Rewrites ---")
        rng = random.Random(100)
        rewrites = 0
        for diagram in crossed_diagrams(20, seed=3):
            web = invariant_service.as_tagged(diagram)
            for _ in range(5):
                try:
                    combination = skein_service.skein_step(web, seed=rng.randrange(1000))
                except WebValidationError:
                    break
                total = WebPolynomial()
                for value, term in combination.terms:
                    total = total + invariant_service.evaluate_q1(term) * value.at_one()
                self.assertEqual(total, invariant_service.evaluate_q1(web))
                rewrites += 1
                if not combination.terms:
                    break
                web = rng.choice(combination.terms)[1]
        self.assertGreaterEqual(rewrites, 20)

    def test_reduction_is_sound(self):
        print("\n--- Test: Reduction Soundness ---")
        for index in (0, 6, 13):
            graph = invariant_service.basis(TWO_COLUMNS)[index].graph
            diagram = invariant_service.add_crossing(invariant_service.add_crossing(graph, 2), 5)
            expansion = skein_service.reduce_to_basis(diagram)
            self.assertEqual(invariant_service.expansion_at_one(expansion), invariant_service.evaluate_q1(diagram))

    def test_reduction_is_confluent_at_one(self):
        print("\n--- Test: Reduction Confluence ---")
        graph = invariant_service.basis(TWO_COLUMNS)[9].graph
        diagram = invariant_service.add_crossing(graph, 4)
        expected = at_one(skein_service.reduce_to_basis(diagram))
        for seed in range(3):
            self.assertEqual(at_one(skein_service.reduce_to_basis(diagram, seed=seed)), expected)

    def test_reduction_cap(self):
        print("\n--- Test: Reduction Cap ---")
        diagram = invariant_service.add_crossing(invariant_service.basis(TWO_COLUMNS)[0].graph, 1)
        with self.assertRaises(ResourceCapExceeded):
            skein_service.reduce_to_basis(diagram, max_nodes=1)


if __name__ == '__main__':
    unittest.main()
