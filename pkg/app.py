"""
Zig-Zag Bounds — certified lower bounds for crossing-free graphs
Flask Application Factory
"""

from flask import Flask, jsonify
from flask_sqlalchemy import SQLAlchemy
from flask_cors import CORS
from flask_migrate import Migrate
from config import Config

import logging

db = SQLAlchemy()
migrate = Migrate()


def create_app(config_class=Config):
    app = Flask(__name__)
    app.config.from_object(config_class)

    logging.basicConfig(level=app.config.get('LOG_LEVEL', 'INFO'),
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s')

    db.init_app(app)
    migrate.init_app(app, db)

    CORS(app,
         resources={r"/api/*": {"origins": app.config.get('CORS_ORIGINS', '*')}},
         allow_headers=["Content-Type"],
         methods=["GET", "POST", "OPTIONS"])

    @app.errorhandler(404)
    def not_found(e):
        return jsonify({'error': 'Resource not found'}), 404

    @app.errorhandler(405)
    def method_not_allowed(e):
        return jsonify({'error': 'Method not allowed'}), 405

    @app.errorhandler(500)
    def internal_error(e):
        db.session.rollback()
        return jsonify({'error': 'Internal server error', 'detail': str(e)}), 500

    from routes.bounds import bounds_bp
    from routes.verify import verify_bp
    from routes.matrices import matrices_bp

    app.register_blueprint(bounds_bp, url_prefix='/api/bounds')
    app.register_blueprint(verify_bp, url_prefix='/api/verify')
    app.register_blueprint(matrices_bp, url_prefix='/api/matrices')

    from cli import bounds
    app.cli.add_command(bounds)

    @app.route('/api/health', methods=['GET'])
    def health():
        return jsonify({'status': 'ok', 'app': app.config.get('APP_NAME')}), 200

    with app.app_context():
        import models  # noqa: F401  registers the tables
        db.create_all()
        if not app.config.get('TESTING'):
            print(f"✅ {app.config.get('APP_NAME')} ready ({app.config.get('SQLALCHEMY_DATABASE_URI')})")

    return app


if __name__ == '__main__':
    # Models import db from the 'app' module, not from __main__.
    from app import create_app as factory
    app = factory()
    app.run(debug=app.config.get('DEBUG', False), host='0.0.0.0', port=5000)
