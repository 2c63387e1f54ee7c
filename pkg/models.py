"""
Database Models — Zig-Zag Bounds
Stored bound reports and verification runs.
"""

from app import db
from datetime import datetime
import json


class BoundReportRecord(db.Model):
    __tablename__ = 'bound_reports'
    id = db.Column(db.Integer, primary_key=True)
    k = db.Column(db.Integer, nullable=False, index=True)
    pockets_raw = db.Column(db.Text, default='[]')
    matrix_dim = db.Column(db.Integer, nullable=False)
    precision_digits = db.Column(db.Integer, nullable=False)
    perron_lower_bound = db.Column(db.Text, nullable=False)
    perron_estimate = db.Column(db.String(64))
    inner_base = db.Column(db.String(64))
    total_base = db.Column(db.String(64), nullable=False)
    report_raw = db.Column(db.Text, default='{}')
    duration_ms = db.Column(db.Integer, default=0)
    created_at = db.Column(db.DateTime, default=datetime.utcnow)

    @property
    def pockets(self):
        try: return json.loads(self.pockets_raw or '[]')
        except: return []

    @pockets.setter
    def pockets(self, value):
        self.pockets_raw = json.dumps(list(value))

    @property
    def report(self):
        try: return json.loads(self.report_raw or '{}')
        except: return {}

    @report.setter
    def report(self, value):
        self.report_raw = json.dumps(value)

    @classmethod
    def from_report(cls, report, duration_ms=0):
        data = report.to_json()
        record = cls(
            k=report.k,
            matrix_dim=report.matrix_dim,
            precision_digits=report.precision_digits,
            perron_lower_bound=data['perron']['lower_bound'],
            perron_estimate=data['perron']['float_estimate'],
            inner_base=data['inner_base'],
            total_base=data['total_base'],
            duration_ms=duration_ms,
        )
        record.pockets = report.pockets
        record.report = data
        return record

    def to_dict(self, full=False):
        d = {
            'id': self.id,
            'k': self.k,
            'pockets': self.pockets,
            'matrix_dim': self.matrix_dim,
            'precision_digits': self.precision_digits,
            'perron_lower_bound': self.perron_lower_bound,
            'perron_estimate': self.perron_estimate,
            'inner_base': self.inner_base,
            'total_base': self.total_base,
            'duration_ms': self.duration_ms,
            'created_at': self.created_at.isoformat() if self.created_at else None,
        }
        if full:
            d['report'] = self.report
        return d


class VerificationRun(db.Model):
    __tablename__ = 'verification_runs'
    id = db.Column(db.Integer, primary_key=True)
    suite = db.Column(db.String(32), nullable=False, index=True)
    max_n = db.Column(db.Integer, nullable=False)
    passed = db.Column(db.Boolean, default=False)
    details_raw = db.Column(db.Text, default='[]')
    duration_ms = db.Column(db.Integer, default=0)
    created_at = db.Column(db.DateTime, default=datetime.utcnow)

    @property
    def details(self):
        try: return json.loads(self.details_raw or '[]')
        except: return []

    @details.setter
    def details(self, value):
        self.details_raw = json.dumps(value)

    def to_dict(self):
        return {
            'id': self.id,
            'suite': self.suite,
            'max_n': self.max_n,
            'passed': self.passed,
            'rows': self.details,
            'duration_ms': self.duration_ms,
            'created_at': self.created_at.isoformat() if self.created_at else None,
        }
