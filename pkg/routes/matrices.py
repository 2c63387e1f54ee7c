"""
Matrix Routes — production matrices, covering census, primitivity
"""

from flask import Blueprint, jsonify
from middleware.request_middleware import validate_int_args
from services.production import MATRIX_BUILDERS, build_Pprime, is_primitive
from services.report_service import census_table

matrices_bp = Blueprint('matrices', __name__)

MAX_LISTED_SIZE = 256


@matrices_bp.route('/census/<int:k>', methods=['GET'])
def census(k):
    try:
        return jsonify(census_table(k).to_json()), 200
    except ValueError as e:
        return jsonify({'error': str(e)}), 400


@matrices_bp.route('/primitivity', methods=['GET'])
@validate_int_args(k=(None, 1, 6), size=(32, 3, 4096))
def primitivity(k, size):
    try:
        result = is_primitive(build_Pprime(k, size))
        return jsonify({'k': k, 'size': size, 'primitive': result.primitive,
                        'exponent': result.exponent}), 200
    except ValueError as e:
        return jsonify({'error': str(e)}), 400
    except Exception as e:
        return jsonify({'error': f'Primitivity check failed: {str(e)}'}), 500


@matrices_bp.route('/<name>', methods=['GET'])
@validate_int_args(k=(2, 1, 6), size=(8, 1, MAX_LISTED_SIZE))
def matrix(name, k, size):
    builder = MATRIX_BUILDERS.get(name)
    if builder is None:
        return jsonify({'error': f"unknown matrix '{name}'; choose from {', '.join(MATRIX_BUILDERS)}"}), 404
    try:
        return jsonify({'name': name, 'k': k, **builder(k, size).to_json()}), 200
    except ValueError as e:
        return jsonify({'error': str(e)}), 400
    except Exception as e:
        return jsonify({'error': f'Matrix construction failed: {str(e)}'}), 500
