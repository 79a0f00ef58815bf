import json
import pytest
from main import main


@pytest.fixture(autouse=True)
def local_environment(monkeypatch):
    monkeypatch.delenv('ASPNETCORE_ENVIRONMENT', raising=False)
    monkeypatch.delenv('APPLICATIONINSIGHTS_CONNECTION_STRING', raising=False)


def test_run_bundled_example_as_json(capsys):
    assert main(['run', 'hom_ideal', '--format', 'json']) == 0
    document = json.loads(capsys.readouterr().out)
    assert document['name'] == 'hom_ideal'
    assert document['rows'][0]['visibility'] == pytest.approx(1, abs=1e-12)
    assert document['scenario']['analysis'] == 'hom'


def test_runs_are_byte_identical(capsys):
    main(['run', 'spdc_epsilon_sweep', '--format', 'csv'])
    first = capsys.readouterr().out
    main(['run', 'spdc_epsilon_sweep', '--format', 'csv'])
    assert capsys.readouterr().out == first
    assert len(first.splitlines()) == 7


def test_report_written_to_file(tmp_path):
    destination = tmp_path / 'reports' / 'qkd.csv'
    assert main(['run', 'qkd_three_bins', '-f', 'csv', '-o', str(destination)]) == 0
    assert destination.read_text(encoding='utf-8').startswith('suitability,f_gt')


def test_scenario_file_path(tmp_path, capsys):
    path = tmp_path / 'pair.json'
    path.write_text(json.dumps({'name': 'pair',
                                'analysis': 'hom',
                                'space': {'spatial_modes': ['a', 'b']},
                                'gun': {'kind': 'product',
                                        'children': [{'kind': 'ideal'}, {'kind': 'ideal'}]}}),
                    encoding='utf-8')
    assert main(['run', str(path)]) == 0
    assert capsys.readouterr().out.startswith('pair (hom')


def test_examples_are_listed(capsys):
    assert main(['examples']) == 0
    names = capsys.readouterr().out.split()
    assert 'hom_ideal' in names and names == sorted(names)


def test_validate_only(capsys):
    assert main(['validate', 'hom_gamma_scan']) == 0
    assert capsys.readouterr().out == ''


def test_scenario_errors_exit_with_one(tmp_path):
    assert main(['run', 'no_such_scenario']) == 1
    path = tmp_path / 'typo.json'
    path.write_text('{"name": "typo", "analysis": "hom", "spase": {}}', encoding='utf-8')
    assert main(['validate', str(path)]) == 1


def test_scenario_that_is_not_utf8_exits_with_one(tmp_path, caplog):
    path = tmp_path / 'latin.json'
    path.write_bytes(b'{"name": "caf\xe9", "analysis": "hom"}')
    assert main(['validate', str(path)]) == 1
    assert 'not UTF-8 text' in caplog.text


def test_capacity_errors_exit_with_two(tmp_path):
    path = tmp_path / 'huge.json'
    path.write_text(json.dumps({'name': 'huge',
                                'analysis': 'suitability',
                                'space': {'spatial_modes': ['a', 'b'],
                                          'polarizations': ['H', 'V'], 'aux_bins': 10},
                                'n_max': 4,
                                'gun': {'kind': 'ideal'},
                                'target': {'kind': 'qkd'}}),
                    encoding='utf-8')
    assert main(['run', str(path)]) == 2


def test_usage_errors():
    with pytest.raises(SystemExit) as error:
        main(['run'])
    assert error.value.code == 2
