def test_health(client):
    res = client.get('/api/health')
    assert res.status_code == 200
    assert res.get_json() == {'status': 'ok', 'app': 'Zig-Zag Bounds'}


def test_unknown_route_is_json(client):
    res = client.get('/api/nowhere')
    assert res.status_code == 404
    assert res.get_json() == {'error': 'Resource not found'}


def test_method_not_allowed(client):
    res = client.get('/api/bounds/total')
    assert res.status_code == 405


# ======================================================
# MATRICES
# ======================================================

def test_census(client):
    res = client.get('/api/matrices/census/5')
    assert res.status_code == 200
    assert res.get_json()['counts']['5'] == 197
    assert client.get('/api/matrices/census/8').status_code == 400


def test_matrix(client):
    res = client.get('/api/matrices/S?size=3')
    assert res.status_code == 200
    assert res.get_json()['entries'] == [['0/1', '0/1', '0/1'], ['1/1', '0/1', '0/1'], ['0/1', '1/1', '0/1']]


def test_matrix_errors(client):
    assert client.get('/api/matrices/Q').status_code == 404
    assert client.get('/api/matrices/P?size=999').status_code == 400
    assert client.get('/api/matrices/P?k=abc').status_code == 400
    assert client.get('/api/matrices/L?k=5&size=4').status_code == 400


def test_primitivity(client):
    res = client.get('/api/matrices/primitivity?k=2&size=16')
    assert res.status_code == 200
    body = res.get_json()
    assert body['primitive'] is True
    assert 1 <= body['exponent'] <= 16
    missing = client.get('/api/matrices/primitivity')
    assert missing.status_code == 400
    assert 'required' in missing.get_json()['error']


# ======================================================
# VERIFICATION
# ======================================================

def test_suites_listed(client):
    assert 'census' in client.get('/api/verify/suites').get_json()['suites']


def test_verify_run_is_stored(client):
    res = client.post('/api/verify/convex?max_n=6')
    assert res.status_code == 200
    body = res.get_json()
    assert body['passed'] is True
    assert body['id'] is not None

    runs = client.get('/api/verify/runs?suite=convex').get_json()
    assert runs['total'] == 1
    assert runs['runs'][0]['passed'] is True
    assert runs['runs'][0]['max_n'] == 6


def test_verify_errors(client):
    assert client.post('/api/verify/nope').status_code == 404
    assert client.post('/api/verify/convex?max_n=x').status_code == 400
    assert client.post('/api/verify/convex?max_n=0').status_code == 400


# ======================================================
# BOUNDS
# ======================================================

def test_total_is_computed_and_stored(client):
    res = client.post('/api/bounds/total', json={'k': 2, 'size': 12, 'precision': 10})
    assert res.status_code == 201
    body = res.get_json()
    assert body['report']['pockets'] == [2]
    report_id = body['id']
    assert report_id is not None

    listed = client.get('/api/bounds/reports?k=2').get_json()
    assert listed['total'] == 1
    stored = client.get(f'/api/bounds/reports/{report_id}').get_json()
    assert stored['report']['total_base'] == body['report']['total_base']


def test_total_with_mixed_pockets(client):
    res = client.post('/api/bounds/total', json={'k': 2, 'size': 12, 'precision': 10, 'pockets': '2,3'})
    assert res.status_code == 201
    assert res.get_json()['report']['pockets'] == [2, 3]


def test_total_rejects_bad_input(client):
    assert client.post('/api/bounds/total', json={'k': 9, 'size': 12}).status_code == 400
    assert client.post('/api/bounds/total', json={'k': 'two'}).status_code == 400


def test_missing_report(client):
    assert client.get('/api/bounds/reports/999').status_code == 404


def test_table_without_totals(client):
    res = client.get('/api/bounds/table1?ks=2,3&totals=0')
    assert res.status_code == 200
    body = res.get_json()
    assert body['ks'] == [2, 3]
    assert body['census']['3']['counts']['3'] == 11
    assert 'Z3' in body['text']
    assert client.get('/api/bounds/table1?ks=1').status_code == 400
