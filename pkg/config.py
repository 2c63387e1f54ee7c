"""
Configuration — Zig-Zag Bounds
"""

import os

from dotenv import load_dotenv

load_dotenv()


class Config:
    # ── Computation ───────────────────────────────────────────
    # 1024 is the production matrix size used for the headline bounds
    MATRIX_SIZE = int(os.environ.get('BOUNDS_MATRIX_SIZE', 1024))
    PRECISION_DIGITS = int(os.environ.get('BOUNDS_PRECISION', 20))
    REPORT_DIGITS = int(os.environ.get('BOUNDS_REPORT_DIGITS', 10))
    PERRON_MAX_ITER = int(os.environ.get('BOUNDS_PERRON_MAX_ITER', 60))

    # ── Inner-part optimizer ──────────────────────────────────
    INNER_RESTARTS = int(os.environ.get('BOUNDS_INNER_RESTARTS', 8))
    INNER_SEED = int(os.environ.get('BOUNDS_INNER_SEED', 2018))
    INNER_TOLERANCE = float(os.environ.get('BOUNDS_INNER_TOLERANCE', 1e-12))

    # ── Database ───────────────────────────────────────────────
    _db_url = os.environ.get('DATABASE_URL', 'sqlite:///bounds.db')
    # Render/Heroku use postgres:// but SQLAlchemy needs postgresql://
    if _db_url.startswith('postgres://'):
        _db_url = _db_url.replace('postgres://', 'postgresql://', 1)
    SQLALCHEMY_DATABASE_URI = _db_url
    SQLALCHEMY_TRACK_MODIFICATIONS = False
    SQLALCHEMY_ENGINE_OPTIONS = {
        'pool_pre_ping': True,
        'pool_recycle': 300,
    }

    # ── CORS ──────────────────────────────────────────────────
    CORS_ORIGINS = os.environ.get('CORS_ORIGINS', '*')

    # ── App ───────────────────────────────────────────────────
    APP_NAME = 'Zig-Zag Bounds'
    LOG_LEVEL = os.environ.get('LOG_LEVEL', 'INFO').upper()
    DEBUG = os.environ.get('DEBUG', 'false').lower() == 'true'

    @classmethod
    def inner_options(cls) -> dict:
        return {
            'tolerance': cls.INNER_TOLERANCE,
            'restarts': cls.INNER_RESTARTS,
            'seed': cls.INNER_SEED,
        }
