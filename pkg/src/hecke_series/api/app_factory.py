import logging
from typing import Any, Dict, Optional

from flask import Flask, jsonify
from flask_cors import CORS
from werkzeug.exceptions import HTTPException

from hecke_series import config

log = logging.getLogger(__name__)


def create_app(overrides: Optional[Dict[str, Any]] = None) -> Flask:
    """
    Builds the Flask application serving the series commands.

    Args:
        overrides: Extra Flask config values (e.g. ``{"TESTING": True}``).

    Returns:
        The configured Flask application.
    """
    app = Flask(__name__)
    app.config.update(overrides or {})
    # Documents are built in reading order (expr, ast, series, ...); keep it.
    app.json.sort_keys = False

    CORS(app, origins="*")

    @app.errorhandler(HTTPException)
    def handle_http_error(e: HTTPException):
        # Unknown routes and wrong methods answer in JSON like every endpoint.
        return jsonify({"error": e.name}), e.code

    with app.app_context():
        from .routes import api_bp

        app.register_blueprint(api_bp)

    log.info(
        f"Series API ready: {len(list(app.url_map.iter_rules())) - 1} routes, "
        f"order capped at {config.API_MAX_ORDER}"
    )
    return app
