import json
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT))

from config import Config  # noqa: E402
from services.exact_linalg import ExactMatrix  # noqa: E402

FIXTURES = Path(__file__).parent / 'fixtures'
GOLDEN = Path(__file__).parent / 'golden'


class TestingConfig(Config):
    TESTING = True
    SQLALCHEMY_DATABASE_URI = 'sqlite:///:memory:'
    SQLALCHEMY_ENGINE_OPTIONS = {}
    MATRIX_SIZE = 64
    PRECISION_DIGITS = 20
    INNER_RESTARTS = 2
    LOG_LEVEL = 'WARNING'


@pytest.fixture
def app():
    from app import create_app, db
    app = create_app(TestingConfig)
    yield app
    with app.app_context():
        db.session.remove()
        db.drop_all()


@pytest.fixture
def client(app):
    return app.test_client()


@pytest.fixture
def fixture_path():
    def resolve(name):
        return FIXTURES / name
    return resolve


@pytest.fixture(scope='session')
def golden():
    def load(name):
        data = json.loads((GOLDEN / f'{name}.json').read_text())
        return ExactMatrix.from_json(data)
    return load
