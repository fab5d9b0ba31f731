import io
import json
import os
import sys
import tempfile
import unittest
from unittest.mock import MagicMock, patch

# ----------------- PATH SETUP -----------------
current_dir = os.path.dirname(__file__)
project_root = os.path.abspath(os.path.join(current_dir, '..'))
sys.path.append(project_root)
sys.path.append(current_dir)

import hourglass_main
from hourglass_webs.common.services import serialization_service
from test_hourglass import chained_star

MIXED_SIGN_WORD = '1 2 -4 1 3 4 2 -3 -2 3 4 -1'
SIXTEEN_LETTER_WORD = '1 1 2 3 2 1 2 1 3 3 4 4 4 2 3 4'


def run_cli(*argv):
    """Runs the command line and returns (exit code, stdout)."""

    with patch('sys.stdout', new_callable=io.StringIO) as out, patch('sys.stderr', new_callable=io.StringIO):
        code = hourglass_main.main(list(argv))
    return code, out.getvalue()


class TestCommands(unittest.TestCase):

    def test_grow(self):
        print("\n--- Test: grow ---")
        code, out = run_cli('grow', '--word', '1 2 3 4')
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertEqual(set(payload), {'graph', 'labeling', 'trace'})
        self.assertEqual(len(payload['graph']['boundary']), 4)

    def test_grow_trace(self):
        print("\n--- Test: grow --trace ---")
        code, out = run_cli('grow', '--word', '1 2 3 4', '--trace')
        self.assertEqual(code, 0)
        self.assertIn(' -> ', out)

    def test_promote(self):
        print("\n--- Test: promote ---")
        for method in ('jdt', 'balance'):
            code, out = run_cli('promote', '--word', MIXED_SIGN_WORD, '--method', method)
            self.assertEqual(code, 0)
            self.assertEqual(out.strip(), '1 -4 1 2 4 2 -4 -2 3 4 -1 4')

    def test_promotion_permutations(self):
        print("\n--- Test: promote --perms ---")
        code, out = run_cli('promote', '--word', MIXED_SIGN_WORD, '--perms')
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertEqual(payload['prom_1']['cycles'], '(1 2 7 10 11 4 5 6 3 12 9 8)')
        self.assertEqual(payload['prom_2']['cycles'], '(1 5)(2 10)(3 9)(4 6)(7 12)(8 11)')
        self.assertEqual(payload['prom_3']['cycles'], '(1 8 9 12 3 6 5 4 11 10 7 2)')

    def test_trips_match_promotion(self):
        print("\n--- Test: trips ---")
        code, out = run_cli('trips', '--word', MIXED_SIGN_WORD)
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)['trip_2']['cycles'], '(1 5)(2 10)(3 9)(4 6)(7 12)(8 11)')

    def test_tableau_and_separation_word(self):
        print("\n--- Test: tableau-of and sep-word ---")
        code, out = run_cli('tableau-of', '--word', SIXTEEN_LETTER_WORD)
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)['word'], SIXTEEN_LETTER_WORD)
        code, out = run_cli('sep-word', '--word', '1 2 3 4')
        self.assertEqual(code, 0)
        self.assertIn('1 2 3 4', out)

    def test_basis(self):
        print("\n--- Test: basis ---")
        code, out = run_cli('basis', '--type', '1 1 1 1 1 1 1 1')
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertEqual(payload['dimension'], 14)
        self.assertEqual(len(payload['webs']), 14)

    def test_expand_with_oracle(self):
        print("\n--- Test: expand --oracle ---")
        code, out = run_cli('expand', '--word', '1 2 3 4', '--oracle')
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertTrue(payload['oracle_agrees'])
        self.assertEqual(payload['leading']['word'], '1 2 3 4')

    def test_applications(self):
        print("\n--- Test: asm-class, pp-class and csp-check ---")
        code, out = run_cli('asm-class', '--n', '2')
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)['size'], 2)
        code, out = run_cli('pp-class', '--box', '1', '1', '1', '--table')
        self.assertEqual(code, 0)
        self.assertIn('q_macmahon', out)
        code, out = run_cli('csp-check', '--k', '2')
        self.assertEqual(code, 0)
        self.assertTrue(json.loads(out)['holds'])

    def test_render(self):
        print("\n--- Test: render ---")
        code, out = run_cli('render', '--word', '1 2 3 4', '--trips', '1', '2')
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith('<svg'))
        self.assertIn('<polyline', out)
        code, out = run_cli('render', '--word', '1 2 3 4', '--format', 'dot')
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith('graph web {'))


class TestFilesAndExitCodes(unittest.TestCase):

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.directory.cleanup()

    def _write_graph(self, graph) -> str:
        path = os.path.join(self.directory.name, 'graph.json')
        with open(path, 'w') as file:
            json.dump(serialization_service.graph_to_dict(graph), file)
        return path

    def test_output_file(self):
        print("\n--- Test: --output ---")
        target = os.path.join(self.directory.name, 'grown.json')
        code, out = run_cli('--output', target, 'grow', '--word', '1 2 3 4')
        self.assertEqual(code, 0)
        self.assertEqual(out, '')
        with open(target) as file:
            grown = json.load(file)
        code, out = run_cli('check-reduced', '--graph', self._write_graph(
            serialization_service.graph_from_dict(grown['graph'])))
        self.assertEqual(code, 0)
        self.assertTrue(json.loads(out)['fully_reduced'])

    def test_randomized_growth_strategy(self):
        print("\n--- Test: growth_strategy From --config ---")
        config_path = os.path.join(self.directory.name, 'engine_config.json')
        with open(config_path, 'w') as file:
            json.dump({'growth_strategy': 'randomized'}, file)
        with patch.dict(os.environ, {}):
            code, out = run_cli('--config', config_path, 'grow', '--word', SIXTEEN_LETTER_WORD)
        self.assertEqual(code, 0)
        self.assertEqual(out, run_cli('grow', '--word', SIXTEEN_LETTER_WORD, '--seed', '0')[1])

    def test_not_reduced_is_a_validation_failure(self):
        print("\n--- Test: check-reduced Exit Code ---")
        code, out = run_cli('check-reduced', '--graph', self._write_graph(chained_star()))
        self.assertEqual(code, 2)
        self.assertFalse(json.loads(out)['fully_reduced'])

    def test_invalid_word(self):
        print("\n--- Test: Invalid Words Exit With 2 ---")
        self.assertEqual(run_cli('grow', '--word', '1 2 3')[0], 2)
        self.assertEqual(run_cli('grow', '--word', '1 2 x 3')[0], 2)

    def test_missing_graph_file(self):
        print("\n--- Test: Missing Graph File ---")
        self.assertEqual(run_cli('trips', '--graph', os.path.join(self.directory.name, 'absent.json'))[0], 2)

    def test_resource_cap(self):
        print("\n--- Test: Resource Cap Exits With 3 ---")
        self.assertEqual(run_cli('--max-nodes', '1', 'grow', '--word', SIXTEEN_LETTER_WORD)[0], 3)
        with patch.dict(os.environ, {'HOURGLASS_MAX_NODES': '1'}):
            self.assertEqual(run_cli('grow', '--word', SIXTEEN_LETTER_WORD)[0], 3)

    def test_unexpected_failure(self):
        print("\n--- Test: Unexpected Failure Exits With 1 ---")
        broken = MagicMock()
        broken.run.side_effect = RuntimeError('boom')
        with patch.dict(hourglass_main.COMMANDS, {'grow': broken}):
            self.assertEqual(run_cli('grow', '--word', '1 2 3 4')[0], 1)
        broken.run.assert_called_once()


if __name__ == '__main__':
    unittest.main()
