"""
Verification Routes — run suites, list stored runs
"""

from flask import Blueprint, jsonify, request
from models import VerificationRun
from middleware.request_middleware import record_run, validate_int_args
from services.verify_service import SUITES, UnknownSuiteError, run_suite

verify_bp = Blueprint('verify', __name__)


@verify_bp.route('/suites', methods=['GET'])
def list_suites():
    return jsonify({'suites': list(SUITES)}), 200


@verify_bp.route('/<suite>', methods=['POST'])
def run(suite):
    raw = request.args.get('max_n')
    try:
        max_n = int(raw) if raw is not None else None
    except ValueError:
        return jsonify({'error': "query argument 'max_n' must be an integer"}), 400

    try:
        report = run_suite(suite, max_n)
    except UnknownSuiteError as e:
        return jsonify({'error': str(e)}), 404
    except ValueError as e:
        return jsonify({'error': str(e)}), 400
    except Exception as e:
        return jsonify({'error': f'Verification failed: {str(e)}'}), 500

    record = VerificationRun(suite=report.name, max_n=report.max_n, passed=report.passed,
                             duration_ms=report.duration_ms)
    record.details = report.rows
    stored = record_run(record)
    return jsonify({**report.to_json(), 'id': stored.id if stored else None}), 200


@verify_bp.route('/runs', methods=['GET'])
@validate_int_args(limit=(50, 1, 500))
def list_runs(limit):
    query = VerificationRun.query
    suite = request.args.get('suite')
    if suite:
        query = query.filter(VerificationRun.suite == suite)
    runs = query.order_by(VerificationRun.created_at.desc()).limit(limit).all()
    return jsonify({'runs': [r.to_dict() for r in runs], 'total': len(runs)}), 200
