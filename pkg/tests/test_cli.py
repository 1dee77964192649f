# Copyright (c) 2021 PPotential Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import re

import pytest

from ppotential import main


def _write(path, text):
    path.write_text(text)
    return str(path)


def _field(text, key):
    for line in text.splitlines():
        if line.startswith(key + ':'):
            return line.split(':', 1)[1].strip()
    raise KeyError(key)


def _entries(text):
    out = []
    for line in text.splitlines():
        m = re.match(r'^(\d+) (\S+)$', line)
        if m:
            out.append((int(m.group(1)), float(m.group(2))))
    return out


@pytest.fixture
def segment(tmp_path):
    return _write(tmp_path / 'segment.txt', '0 1\n1 2\n2 3\n3 4\n')


def test_capacity_of_a_segment(capsys):
    code = main(['capacity', '--family', 'path', '--length', '16',
                 '--schedule', '4,8,16', '--quiet'])
    out = capsys.readouterr().out
    assert code == 0
    assert _field(out, 'verdict') == 'parabolic'
    values = [v for _, v in _entries(out)]
    assert values == pytest.approx([0.25, 0.125, 0.0625], rel=1e-6)
    assert _field(out, 'schedule') == '4,8,16'


def test_generate_then_read_back(tmp_path, capsys):
    graph = str(tmp_path / 'tree.txt')
    assert main(['generate', '--family', 'tree', '--depth', '3', '--out',
                 graph, '--quiet']) == 0
    assert (tmp_path / 'tree.txt.meta').exists()
    lines = [l for l in open(graph) if not l.startswith('#')]
    assert len(lines) == 21

    code = main(['capacity', '--graph', graph, '--schedule', '1,2,3',
                 '--quiet'])
    out = capsys.readouterr().out
    assert code == 0
    entries = dict(_entries(out))
    assert entries[1] == pytest.approx(3.0, rel=1e-6)
    assert entries[3] == pytest.approx(3.0 / 1.75, rel=1e-6)


def test_solve_writes_the_solution(tmp_path, segment, capsys):
    interior = _write(tmp_path / 'interior.txt', '1 2 3\n')
    boundary = _write(tmp_path / 'boundary.txt', '0 0\n4 1\n')
    out = str(tmp_path / 'u.txt')
    code = main(['solve', '--graph', segment, '--interior', interior,
                 '--boundary', boundary, '--out', out, '--p', '3',
                 '--quiet'])
    report = capsys.readouterr().out
    assert code == 0
    assert 'residual=' in report
    assert _field(report, 'version')
    assert float(_field(report, 'p')) == 3.0
    assert _field(report, 'solver') == 'CoordinateDescent'
    assert float(_field(report, 'tol')) > 0
    values = dict(line.split() for line in open(out))
    assert float(values['2']) == pytest.approx(0.5, abs=1e-6)
    assert float(values['1']) == pytest.approx(0.25, abs=1e-6)


def test_usage_errors_exit_with_the_domain_code(tmp_path):
    assert main(['capacity', '--family', 'path', '--p', '0.5']) == 1
    assert main(['capacity', '--family', 'path', '--bogus']) == 1
    assert main([]) == 1
    assert main(['capacity', '--graph', str(tmp_path / 'missing.txt')]) == 1
    assert main(['report', '-c', str(tmp_path / 'missing.yaml')]) == 1
    assert main(['capacity', '--family', 'path', '--schedule', '4,2']) == 1


def test_exhausted_budget_exits_with_the_convergence_code(tmp_path):
    edges = []
    for r in range(5):
        for c in range(5):
            v = 5 * r + c
            if c < 4:
                edges.append('{} {}'.format(v, v + 1))
            if r < 4:
                edges.append('{} {}'.format(v, v + 5))
    graph = _write(tmp_path / 'grid.txt', '\n'.join(edges) + '\n')
    interior = _write(tmp_path / 'interior.txt', '6 7 8 11 12 13 16 17 18\n')
    boundary = _write(tmp_path / 'boundary.txt', ''.join(
        '{} {}\n'.format(v, 1.0 if v < 5 else 0.0)
        for v in range(25) if v not in (6, 7, 8, 11, 12, 13, 16, 17, 18)))
    code = main(['solve', '--graph', graph, '--interior', interior,
                 '--boundary', boundary, '--p', '3', '--max-iter', '1',
                 '-o', 'SOLVER.params.init=mean', '--out',
                 str(tmp_path / 'u.txt'), '--quiet'])
    assert code == 2


def test_modulus_of_explicit_paths(tmp_path, capsys):
    graph = _write(tmp_path / 'y.txt', '0 1\n1 2\n1 3\n')
    paths = _write(tmp_path / 'paths.txt', '0 1 2\n0 1 3\n')
    density = str(tmp_path / 'rho.txt')
    code = main(['modulus', '--graph', graph, '--paths', paths,
                 '--density', density, '--quiet'])
    out = capsys.readouterr().out
    assert code == 0
    assert float(_field(out, 'modulus')) == pytest.approx(2.0 / 3.0,
                                                          rel=1e-5)
    assert _field(out, 'active_paths') == '2'
    rho = {(a, b): float(x) for a, b, x in
           (line.split() for line in open(density))}
    assert rho[('0', '1')] == pytest.approx(2.0 / 3.0, rel=1e-4)


def test_modulus_duality(tmp_path, segment, capsys):
    a = _write(tmp_path / 'a.txt', '0\n')
    b = _write(tmp_path / 'b.txt', '4\n')
    code = main(['modulus', '--graph', segment, '--from', a, '--to', b,
                 '--duality', '--quiet'])
    out = capsys.readouterr().out
    assert code == 0
    assert float(_field(out, 'capacity')) == pytest.approx(0.25, rel=1e-6)
    assert float(_field(out, 'duality_gap')) < 1e-3
    assert main(['modulus', '--graph', segment, '--quiet']) == 1


def test_massive_on_a_half_line(tmp_path, capsys):
    candidate = _write(tmp_path / 'u.txt',
                       ' '.join(str(i) for i in range(1, 33)) + '\n')
    potential = str(tmp_path / 'h.txt')
    code = main(['massive', '--family', 'path', '--length', '32',
                 '--schedule', '8,16,32', '--candidate', candidate,
                 '--potential', potential, '--quiet'])
    out = capsys.readouterr().out
    assert code == 0
    assert _field(out, 'verdict') == 'not-massive'
    assert 'verdict=not-massive n=32' in out
    values = dict(line.split() for line in open(potential))
    assert float(values['0']) == 0.0


def test_search_on_a_half_line(capsys):
    code = main(['search', '--family', 'path', '--length', '16',
                 '--quiet'])
    out = capsys.readouterr().out
    assert code == 0
    assert _field(out, 'lower_bound') == '0'
    assert 'verdict=undecided n=0' in out


def test_report_from_a_config(tmp_path, capsys):
    config = _write(tmp_path / 'path.yaml', '\n'.join([
        'p: 2.0',
        'schedule: [4, 8, 16]',
        'FAMILY:',
        '  function: path',
        '  params:',
        '    length: 16',
        'PIPELINE: [generate, capacity]',
    ]) + '\n')
    summary = tmp_path / 'summary.json'
    code = main(['report', '-c', config, '--json', str(summary), '--quiet'])
    out = capsys.readouterr().out
    assert code == 0
    assert '[generate]' in out and '[capacity]' in out
    assert _field(out, 'vertices') == '17'
    assert _field(out, 'verdict') == 'parabolic'
    text = summary.read_text()
    assert '"verdict"' in text and 'parabolic' in text


def test_report_rejects_unknown_stages(tmp_path):
    config = _write(tmp_path / 'bad.yaml', '\n'.join([
        'FAMILY:',
        '  function: path',
        '  params:',
        '    length: 8',
        'PIPELINE: [generate, train]',
    ]) + '\n')
    assert main(['report', '-c', config, '--quiet']) == 1


def test_generate_to_stdout_keeps_the_report_as_comments(capsys):
    code = main(['generate', '--family', 'tree', '--depth', '3', '--quiet'])
    out = capsys.readouterr().out
    assert code == 0
    edges = [l for l in out.splitlines() if not l.startswith('#')]
    assert len(edges) == 21
    assert '# vertices=22 edges=21 radius=3' in out
    assert '# schedule: 3' in out


def test_ac_summary_reports_the_ratio(capsys):
    code = main(['ac', '--family', 'tree', '--depth', '4', '--quiet'])
    out = capsys.readouterr().out
    assert code == 0
    summary = [l for l in out.splitlines() if l.startswith('verdict=')][-1]
    fields = dict(item.split('=', 1) for item in summary.split())
    assert set(fields) == set(['verdict', 'n', 'sup', 'ratio', 'residual'])
    assert float(fields['ratio']) == pytest.approx(float(_field(out, 'ratio')))
    assert float(fields['residual']) <= 1e-8
