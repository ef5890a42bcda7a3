import io
import json

import pytest

from ContactGroup_R3 import cli


def run(*argv):
    stdout = io.StringIO()
    exit_code = cli.run(list(argv), stdout)
    return exit_code, stdout.getvalue()


def test_classify_prints_json():
    exit_code, text = run('classify', '--preset', 'heisenberg', '-q')
    assert exit_code == 0
    assert json.loads(text)['case_tag'] == 'Case3Heis'


def test_embed_of_su2_is_an_error():
    exit_code, text = run('embed', '--preset', 'su2', '--grid', '3', '-q')
    assert exit_code == 2
    assert text == ''


def test_verify_with_tolerance():
    exit_code, text = run('verify', '--preset', 'sl2', '--grid', '3', '--box', '-1,1', '--tol', '1e-9', '-q')
    assert exit_code == 0
    assert json.loads(text)['tolerance'] == 1e-9


def test_factor():
    exit_code, text = run('factor', '--model', 'heisenberg', '--matrix', '[[1, 1, 1], [0, 1, 1], [0, 0, 1]]')
    assert exit_code == 0
    assert json.loads(text)['params'] == pytest.approx([-1.0, 1.0, 1.0])


@pytest.mark.parametrize('argv', [
    ('classify', '--preset', 'so3'),
    ('factor', '--model', 'sl2', '--matrix', '[[1, 1], [1, 1]]'),
    ('classify',),
])
def test_errors_exit_with_two(argv):
    assert run(*argv, '-q')[0] == 2


def test_embed_writes_the_csv_file(tmp_path):
    out = tmp_path / 'heisenberg.csv'
    exit_code, text = run('embed', '--preset', 'heisenberg', '--grid', '2', '--out', str(out), '-q')
    assert exit_code == 0
    assert json.loads(text)['out'] == str(out)
    assert len(out.read_text().splitlines()) == 9


def test_bad_box_is_a_usage_error():
    with pytest.raises(SystemExit):
        run('embed', '--preset', 'heisenberg', '--box', '1;2')


def test_parse_box():
    assert cli.parse_box('-2,2') == (-2.0, 2.0)


def test_join_box_glues_a_negative_interval():
    assert cli.join_box(['embed', '--box', '-1,1', '-q']) == ['embed', '--box=-1,1', '-q']
    assert cli.join_box(['embed', '--box=-1,1']) == ['embed', '--box=-1,1']


def test_embed_with_negative_box_as_two_tokens():
    exit_code, text = run('embed', '--preset', 'case1', '--grid', '3', '--box', '-1,1', '-q')
    assert exit_code == 0
    assert json.loads(text)['passed']
