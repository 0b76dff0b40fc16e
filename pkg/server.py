import logging
import sys

# --- Imports ---
try:
    from waitress import serve

    from hecke_series import config
    from hecke_series.api.app_factory import create_app
except ImportError:
    logging.basicConfig(level=logging.CRITICAL)
    logging.exception("ImportError: Failed to import necessary modules.")
    logging.critical(
        "Ensure 'waitress' is installed and you have run 'pip install -e .' from the project root."
    )
    sys.exit(1)

# --- Logging Configuration ---
logging.basicConfig(level=logging.INFO, format=config.LOG_FORMAT)
log = logging.getLogger(__name__)

# --- Server Execution ---
if __name__ == "__main__":
    try:
        config._validate_config()
        app = create_app()

        host = config.API_HOST
        port = config.API_PORT

        # Series work is CPU bound; keep the thread count small.
        waitress_options = {
            "backlog": 256,
            "connection_limit": 100,
            "threads": 4,
            "channel_timeout": 120,
        }

        log.info("Starting Waitress server for hecke-series...")
        log.info(f"Listening on http://{host}:{port}")
        log.info(f"Waitress options: {waitress_options}")
        log.info(config.describe_config())

        serve(app, host=host, port=port, **waitress_options)

    except EnvironmentError as e:
        log.critical(f"Invalid configuration: {e}")
        sys.exit(1)
    except Exception:
        log.exception("An unexpected error occurred while trying to start the server.")
        sys.exit(1)
