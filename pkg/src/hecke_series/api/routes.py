import logging
from typing import Any, Dict, Tuple

from flask import Blueprint, jsonify, request

from hecke_series import config
from hecke_series.core.errors import ConsistencyError
from hecke_series.lang.parser import ParseError
from hecke_series.services import commands

log = logging.getLogger(__name__)

api_bp = Blueprint("api", __name__, url_prefix="")


class BadRequest(ValueError):
    """Missing or malformed request fields."""


def _body() -> Dict[str, Any]:
    body = request.get_json(silent=True)
    if not isinstance(body, dict):
        raise BadRequest("Request body is empty or not a JSON object")
    return body


def _field(body: Dict[str, Any], name: str, kind: type = str, default: Any = None) -> Any:
    if name not in body or body[name] is None:
        if default is None:
            raise BadRequest(f"Missing field '{name}'")
        return default
    value = body[name]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise BadRequest(f"Field '{name}' must be an integer")
    if kind is str and not isinstance(value, str):
        raise BadRequest(f"Field '{name}' must be a string")
    return value


def _order(body: Dict[str, Any]) -> int:
    order = _field(body, "order", int, config.DEFAULT_ORDER)
    if order > config.API_MAX_ORDER:
        raise BadRequest(f"order must be <= {config.API_MAX_ORDER}, got {order}")
    return order


def _handle(route: str, action) -> Tuple[Any, int]:
    log.info(f"Request received for POST {route}")
    try:
        return jsonify(action(_body())), 200
    except ParseError as e:
        log.warning(f"{route}: parse error: {e}")
        return jsonify({"error": str(e), "byte_offset": e.byte_offset, "expected": e.expected}), 400
    except commands.ClosedFormUnavailable as e:
        log.warning(f"{route}: closed form unavailable: {e}")
        return jsonify({"error": f"closed form unavailable: {e}"}), 422
    except ConsistencyError as e:
        log.error(f"{route}: consistency check failed: {e}")
        return jsonify({"error": str(e)}), 500
    except (ValueError, ArithmeticError) as e:
        log.warning(f"{route}: rejected request: {e}")
        return jsonify({"error": str(e)}), 400
    except Exception as e:
        log.exception(f"Unexpected error processing POST {route}: {e}")
        return jsonify({"error": "Internal Server Error"}), 500


# --- API Endpoints ---
@api_bp.route("/health", methods=["GET"])
def handle_health_get():
    return jsonify({"status": "ok", "max_order": config.API_MAX_ORDER}), 200


@api_bp.route("/expand", methods=["POST"])
def handle_expand_post():
    return _handle(
        "/expand",
        lambda body: commands.expand(_field(body, "expr"), _order(body)),
    )


@api_bp.route("/transform", methods=["POST"])
def handle_transform_post():
    return _handle(
        "/transform",
        lambda body: commands.transform(
            _field(body, "expr"),
            _field(body, "n", int),
            _field(body, "mode", str, "both"),
            _order(body),
        ),
    )


@api_bp.route("/eigen", methods=["POST"])
def handle_eigen_post():
    return _handle(
        "/eigen",
        lambda body: commands.eigen(_field(body, "expr"), _field(body, "n", int), _order(body)),
    )


@api_bp.route("/classify-cm", methods=["POST"])
def handle_classify_cm_post():
    def action(body):
        bound = _field(body, "bound", int, 30)
        if bound > config.API_MAX_ORDER:
            raise BadRequest(f"bound must be <= {config.API_MAX_ORDER}, got {bound}")
        return commands.classify_cm(body.get("a", ""), body.get("b", ""), bound)

    return _handle("/classify-cm", action)


@api_bp.route("/inner", methods=["POST"])
def handle_inner_post():
    def action(body):
        radius = body.get("radius")
        return commands.inner(
            _field(body, "f"),
            _field(body, "g"),
            _order(body),
            None if radius is None else str(radius),
        )

    return _handle("/inner", action)
