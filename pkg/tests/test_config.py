"""
Tests for configuration classes and the appsettings.json overrides.
"""
import json

from config import Config, DevelopmentConfig, ProductionConfig, TestingConfig, config_by_name
from toralmix import create_app, load_appsettings


def test_config_by_name():
    assert config_by_name['development'] is DevelopmentConfig
    assert config_by_name['testing'] is TestingConfig
    assert config_by_name['production'] is ProductionConfig
    assert config_by_name['default'] is DevelopmentConfig


def test_testing_config(app):
    assert app.config['TESTING']
    assert app.config['DEFAULT_SEED'] == 0
    assert app.config['MC_SAMPLES'] == 20000
    assert app.config['MAX_EXPONENT'] is None
    assert not app.config['REPORT_TIMING']


def test_base_defaults():
    assert Config.DEFAULT_MIN_HITS >= 1
    assert Config.ORBIT_CAP >= 1
    assert DevelopmentConfig.DEBUG
    assert not ProductionConfig.DEBUG


def test_commands_are_registered(app):
    commands = set(app.cli.list_commands(None))
    assert {
        'ergodic', 'mixing-set', 'mixing-pair', 'commuting', 'joint', 'precheck', 'subsets', 'limit',
        'group-scan', 'orbit-scan', 'gen-example', 'oracle-search', 'oracle-mc', 'verify-cert',
    } <= commands


def test_load_appsettings_filters_keys(tmp_path):
    path = tmp_path / 'appsettings.json'
    path.write_text(json.dumps({'DEFAULT_HORIZON': 40, 'ConnectionStrings': {'x': 'y'}}))
    assert load_appsettings(str(path)) == {'DEFAULT_HORIZON': 40}


def test_load_appsettings_tolerates_bad_files(tmp_path):
    assert load_appsettings(str(tmp_path / 'missing.json')) == {}
    broken = tmp_path / 'broken.json'
    broken.write_text('{')
    assert load_appsettings(str(broken)) == {}
    listed = tmp_path / 'list.json'
    listed.write_text('[1]')
    assert load_appsettings(str(listed)) == {}


def test_appsettings_override(tmp_path, monkeypatch):
    monkeypatch.delenv('DEFAULT_HORIZON', raising=False)
    path = tmp_path / 'appsettings.json'
    path.write_text(json.dumps({'DEFAULT_HORIZON': 40, 'ORBIT_CAP': 7}))
    app = create_app('config.TestingConfig', appsettings_path=str(path))
    assert app.config['DEFAULT_HORIZON'] == 40
    assert app.config['ORBIT_CAP'] == 7


def test_environment_beats_appsettings(tmp_path, monkeypatch):
    monkeypatch.setenv('ORBIT_CAP', '99')
    path = tmp_path / 'appsettings.json'
    path.write_text(json.dumps({'ORBIT_CAP': 7}))
    app = create_app('config.TestingConfig', appsettings_path=str(path))
    assert app.config['ORBIT_CAP'] == TestingConfig.ORBIT_CAP


def test_testing_ignores_repository_appsettings(app):
    assert app.config['DEFAULT_HORIZON'] == TestingConfig.DEFAULT_HORIZON
