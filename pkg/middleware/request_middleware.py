"""
Request Validation & Run Logging Middleware — Zig-Zag Bounds
"""

from functools import wraps
from flask import current_app, jsonify, request
from app import db


def validate_int_args(**bounds):
    """Parse integer query arguments into kwargs; 400 when missing or out of range.

    Each keyword maps an argument name to (default, low, high); a default of
    None makes the argument required.
    """
    def decorator(f):
        @wraps(f)
        def decorated(*args, **kwargs):
            for name, (default, low, high) in bounds.items():
                raw = request.args.get(name)
                if raw is None:
                    if default is None:
                        return jsonify({'error': f"query argument '{name}' is required"}), 400
                    kwargs[name] = default() if callable(default) else default
                    continue
                try:
                    value = int(raw)
                except ValueError:
                    return jsonify({'error': f"query argument '{name}' must be an integer"}), 400
                if (low is not None and value < low) or (high is not None and value > high):
                    return jsonify({'error': f"query argument '{name}' must lie in [{low}, {high}]"}), 400
                kwargs[name] = value
            return f(*args, **kwargs)
        return decorated
    return decorator


def record_run(record):
    """Persist a report or verification row; storage failures never fail the request."""
    try:
        db.session.add(record)
        db.session.commit()
        return record
    except Exception as e:
        db.session.rollback()
        current_app.logger.warning('⚠️ could not store %s: %s', type(record).__name__, e)
        return None
