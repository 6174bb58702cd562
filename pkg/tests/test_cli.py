"""
Tests for the flask subcommands: report shapes, setting precedence and exit
statuses.
"""
import json

from toralmix.engine.families import FIBONACCI, S, T


def run(cli, args, payload=''):
    return cli.invoke(args=args, input=payload)


def report(result):
    assert result.exit_code == 0, result.output
    return json.loads(result.output)


class TestDecide:

    def test_ergodic(self, cli, payload):
        body = report(run(cli, ['ergodic'], payload([FIBONACCI, S])))
        assert body == {'command': 'ergodic', 'ergodic': False, 'per_map': [True, False]}

    def test_mixing_set_rotations(self, cli, payload):
        body = report(run(cli, ['mixing-set'], payload([S, T])))
        assert body['verdict'] == 'NotMixing'
        assert body['certificate']['exponent'] == 12
        assert body['certificate']['witness'] == [['1', '0'], ['-1', '0']]
        assert body['exponents_checked'] == [1, 2, 3, 4, 5, 6, 8, 10, 12]

    def test_mixing_set_fibonacci_powers(self, cli, payload):
        square = ((2, 1), (1, 1))
        body = report(run(cli, ['mixing-set'], payload([FIBONACCI, square])))
        assert body == {'command': 'mixing-set', 'verdict': 'Mixing',
                        'exponents_checked': [1, 2, 3, 4, 5, 6, 8, 10, 12]}

    def test_mixing_pair_rotations(self, cli, payload):
        body = report(run(cli, ['mixing-pair'], payload([S, T])))
        assert body['verdict'] == 'QuotientWitness'
        assert body['exponent'] == 12

    def test_mixing_pair_needs_two_maps(self, cli, payload):
        result = run(cli, ['mixing-pair'], payload([S]))
        assert result.exit_code == 3

    def test_commuting(self, cli, payload):
        body = report(run(cli, ['commuting'], payload([FIBONACCI, ((2, 1), (1, 1))])))
        assert body == {'command': 'commuting', 'verdict': 'Mixing', 'rule': 'commuting_ratio'}

    def test_subsets(self, cli, payload):
        body = report(run(cli, ['subsets'], payload([FIBONACCI, S, T])))
        assert body['mixing'] is False
        assert [1, 2] in body['minimal_non_mixing']


class TestScan:

    def test_limit_on_flip(self, cli):
        payload = json.dumps({'dim': 1, 'matrices': [[['1']], [['-1']]], 'characters': [['1'], ['1']]})
        body = report(run(cli, ['limit'], payload))
        assert body['modulus'] == 2
        assert body['values'] == {'0': {'re': '0', 'im': '0'}, '1': {'re': '1', 'im': '0'}}
        assert body['cesaro'] == {'re': '1/2', 'im': '0'}

    def test_limit_single_residue(self, cli):
        payload = json.dumps({'dim': 1, 'matrices': [[['1']], [['-1']]], 'characters': [['1'], ['1']]})
        body = report(run(cli, ['limit', '--residue', '1'], payload))
        assert body['value'] == {'re': '1', 'im': '0'}
        assert run(cli, ['limit', '--residue', '2'], payload).exit_code == 3

    def test_limit_numeric_estimate(self, cli):
        payload = json.dumps({'dim': 1, 'matrices': [[['1']], [['-1']]], 'characters': [['1'], ['1']]})
        body = report(run(cli, ['limit', '--grid', '8', '--horizon', '40'], payload))
        assert body['cesaro'] == {'re': '1/2', 'im': '0'}
        assert body['numeric_horizon'] == 40
        assert abs(body['numeric_cesaro']['re'] - 0.5) < 1e-9
        assert abs(body['numeric_cesaro']['im']) < 1e-9

    def test_limit_without_grid_is_exact_only(self, cli):
        payload = json.dumps({'dim': 1, 'matrices': [[['1']], [['-1']]], 'characters': [['1'], ['1']]})
        assert 'numeric_cesaro' not in report(run(cli, ['limit'], payload))

    def test_limit_needs_functions(self, cli, payload):
        assert run(cli, ['limit'], payload([S, T])).exit_code == 2

    def test_gen_example_unipotent(self, cli):
        body = report(run(cli, ['gen-example', '--kind', 'unipotent']))
        assert body['kind'] == 'unipotent'
        assert body['dim'] == 2
        assert len(body['matrices']) == 3

    def test_gen_example_feeds_mixing_set(self, cli):
        family = report(run(cli, ['gen-example', '--kind', 'unipotent']))
        payload = json.dumps({'dim': family['dim'], 'matrices': family['matrices']})
        assert report(run(cli, ['mixing-set'], payload))['verdict'] == 'NotMixing'

    def test_gen_example_eisenstein(self, cli):
        body = report(run(cli, ['gen-example'], json.dumps({'options': {'kind': 'eisenstein', 'd': 2, 'q': 17}})))
        assert body['kind'] == 'eisenstein'

    def test_gen_example_needs_kind(self, cli):
        assert run(cli, ['gen-example']).exit_code == 2


class TestOracle:

    def test_certificate_round_trip(self, cli, payload):
        certificate = report(run(cli, ['mixing-set'], payload([S, T])))['certificate']
        body = report(run(cli, ['verify-cert'], payload([S, T], certificate=certificate)))
        assert body == {'command': 'verify-cert', 'valid': True, 'exponent': 12, 'depth': 24}

    def test_wrong_certificate_is_reported_invalid(self, cli, payload):
        certificate = {'exponent': 12, 'witness': [['1', '0'], ['0', '1']]}
        body = report(run(cli, ['verify-cert', '--depth', '3'], payload([S, T], certificate=certificate)))
        assert body['valid'] is False
        assert body['depth'] == 3

    def test_mc_at_period(self, cli, payload):
        boxes = [[['0', '1/2'], ['0', '1/2']], [['0', '1/2'], ['0', '1/2']]]
        body = report(run(cli, ['oracle-mc', '--n', '12', '--samples', '4000'], payload([S, T], boxes=boxes)))
        assert body['samples'] == 4000
        assert body['product_measure'] == '1/16'
        assert abs(body['estimate'] - 0.25) <= 4 * body['stderr']

    def test_mc_needs_n(self, cli, payload):
        boxes = [[['0', '1'], ['0', '1']], [['0', '1'], ['0', '1']]]
        assert run(cli, ['oracle-mc'], payload([S, T], boxes=boxes)).exit_code == 2


class TestSettings:

    def test_flag_beats_options(self, cli, payload):
        body = report(run(cli, ['oracle-search', '--height', '1', '--horizon', '12'],
                          payload([S, T], options={'height': 2, 'horizon': 6})))
        assert body['height'] == 1
        assert body['horizon'] == 12

    def test_options_beat_config(self, cli, payload):
        body = report(run(cli, ['oracle-search'], payload([S, T], options={'height': 1, 'horizon': 12})))
        assert body['height'] == 1
        assert body['horizon'] == 12
        assert body['min_hits'] == 2

    def test_config_default(self, app, cli, payload):
        app.config['DEFAULT_HORIZON'] = 13
        body = report(run(cli, ['oracle-search', '--height', '1'], payload([S, T])))
        assert body['horizon'] == 13

    def test_timing_is_opt_in(self, cli, payload):
        assert 'timing_seconds' not in report(run(cli, ['ergodic'], payload([S])))
        assert 'timing_seconds' in report(run(cli, ['ergodic', '--timing'], payload([S])))

    def test_output_is_repeatable(self, cli, payload):
        first = run(cli, ['mixing-set'], payload([S, T]))
        second = run(cli, ['mixing-set'], payload([S, T]))
        assert first.exit_code == 0
        assert first.output == second.output


class TestErrors:

    def test_invalid_json(self, cli):
        assert run(cli, ['ergodic'], '{"dim": 2,').exit_code == 2

    def test_missing_matrices(self, cli):
        assert run(cli, ['ergodic'], '{"dim": 2}').exit_code == 2

    def test_unknown_option(self, cli, payload):
        result = run(cli, ['mixing-set'], payload([S], options={'bogus': 1}))
        assert result.exit_code == 2
        assert 'bogus' in result.output

    def test_out_of_range_option(self, cli, payload):
        assert run(cli, ['mixing-set'], payload([S], options={'max_exponent': 0})).exit_code == 2

    def test_bad_flag_value(self, cli, payload):
        assert run(cli, ['mixing-set', '--max-exponent', '0'], payload([S])).exit_code == 2

    def test_singular_matrix(self, cli, payload):
        result = run(cli, ['mixing-set'], payload([((1, 2), (2, 4))]))
        assert result.exit_code == 3
        assert 'determinant 0' in result.output

    def test_dimension_mismatch(self, cli):
        payload = json.dumps({'dim': 3, 'matrices': [[['0', '-1'], ['1', '0']]]})
        assert run(cli, ['ergodic'], payload).exit_code == 3

    def test_float_entry(self, cli):
        payload = json.dumps({'dim': 1, 'matrices': [[[1.5]]]})
        assert run(cli, ['ergodic'], payload).exit_code == 2

    def test_ragged_matrix(self, cli):
        payload = json.dumps({'dim': 2, 'matrices': [[['1', '0'], ['0']]]})
        result = run(cli, ['mixing-set'], payload)
        assert result.exit_code == 2
        assert 'square' in result.output

    def test_non_square_gamma(self, cli):
        payload = json.dumps({'gamma': [[1, 1, 0], [0, 1, 0]], 'options': {'kind': 'conjugate'}})
        assert run(cli, ['gen-example'], payload).exit_code == 2
