"""
Bound Routes — total bound reports, stored reports, census table
"""

import time
from flask import Blueprint, current_app, jsonify, request
from models import BoundReportRecord
from middleware.request_middleware import record_run, validate_int_args
from services.report_service import cmd_table1, cmd_total, parse_int_list

bounds_bp = Blueprint('bounds', __name__)


def _inner_options():
    cfg = current_app.config
    return {
        'tolerance': cfg.get('INNER_TOLERANCE', 1e-12),
        'restarts': cfg.get('INNER_RESTARTS', 8),
        'seed': cfg.get('INNER_SEED', 2018),
    }


# ======================================================
# TOTAL BOUND
# ======================================================

@bounds_bp.route('/total', methods=['POST'])
def total_bound():
    data = request.get_json(silent=True) or {}
    cfg = current_app.config
    try:
        k = int(data.get('k', 5))
        size = int(data.get('size', cfg.get('MATRIX_SIZE', 1024)))
        precision = int(data.get('precision', cfg.get('PRECISION_DIGITS', 20)))
        pockets = data.get('pockets')
        if isinstance(pockets, str):
            pockets = parse_int_list(pockets)
    except (TypeError, ValueError) as e:
        return jsonify({'error': f'Invalid request: {str(e)}'}), 400

    try:
        started = time.perf_counter()
        report = cmd_total(k, size, precision, pockets=pockets,
                           digits=cfg.get('REPORT_DIGITS', 10),
                           max_iter=cfg.get('PERRON_MAX_ITER', 60),
                           **_inner_options())
        duration_ms = int((time.perf_counter() - started) * 1000)
    except ValueError as e:
        return jsonify({'error': str(e)}), 400
    except Exception as e:
        return jsonify({'error': f'Bound computation failed: {str(e)}'}), 500

    record = record_run(BoundReportRecord.from_report(report, duration_ms))
    return jsonify({
        'report': report.to_json(),
        'id': record.id if record else None,
        'duration_ms': duration_ms,
    }), 201


# ======================================================
# STORED REPORTS
# ======================================================

@bounds_bp.route('/reports', methods=['GET'])
@validate_int_args(limit=(50, 1, 500))
def list_reports(limit):
    query = BoundReportRecord.query
    k = request.args.get('k')
    if k and k.isdigit():
        query = query.filter(BoundReportRecord.k == int(k))
    records = query.order_by(BoundReportRecord.created_at.desc()).limit(limit).all()
    return jsonify({'reports': [r.to_dict() for r in records], 'total': len(records)}), 200


@bounds_bp.route('/reports/<int:report_id>', methods=['GET'])
def get_report(report_id):
    record = BoundReportRecord.query.get_or_404(report_id)
    return jsonify(record.to_dict(full=True)), 200


# ======================================================
# CENSUS TABLE
# ======================================================

@bounds_bp.route('/table1', methods=['GET'])
@validate_int_args(size=(lambda: current_app.config.get('MATRIX_SIZE', 1024), 8, 4096),
                   totals=(1, 0, 1))
def table1(size, totals):
    try:
        ks = parse_int_list(request.args.get('ks', '2-6'))
        table = cmd_table1(ks, size, current_app.config.get('PRECISION_DIGITS', 20),
                           digits=current_app.config.get('REPORT_DIGITS', 10),
                           with_totals=bool(totals), **_inner_options())
        return jsonify({**table.to_json(), 'text': table.render()}), 200
    except ValueError as e:
        return jsonify({'error': str(e)}), 400
    except Exception as e:
        return jsonify({'error': f'Table generation failed: {str(e)}'}), 500
