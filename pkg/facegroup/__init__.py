import logging
import os

from dotenv import load_dotenv
from flask import Flask, jsonify, request
from flask_cors import CORS

from .config import Config
from .extensions import cache, limiter
from .api import api_bp
from .services.metrics import record_response


def create_app(config_class: type = Config) -> Flask:
    # Load environment variables from .env if present
    load_dotenv()
    app = Flask(__name__)
    app.config.from_object(config_class)
    app.logger.setLevel(getattr(logging, str(app.config.get("LOG_LEVEL", "WARNING")).upper(), logging.WARNING))

    # Flask-Limiter 3.x: configure default limits via config
    app.config.setdefault("RATELIMIT_DEFAULT", app.config.get("RATE_LIMIT_DEFAULT", "600 per hour"))

    # CORS
    CORS(app, resources={r"/*": {"origins": app.config.get("CORS_ORIGINS", "*")}})

    # Extensions
    limiter.init_app(app)
    # Cache: Redis if available, else SimpleCache
    cache_config = {}
    redis_url = os.getenv("REDIS_URL") or os.getenv("CACHE_REDIS_URL")
    if redis_url:
        cache_config.update({
            "CACHE_TYPE": "RedisCache",
            "CACHE_REDIS_URL": redis_url,
        })
    else:
        cache_config.update({
            "CACHE_TYPE": app.config.get("CACHE_TYPE") or os.getenv("CACHE_TYPE", "SimpleCache"),
        })
    cache_config["CACHE_DEFAULT_TIMEOUT"] = int(os.getenv("CACHE_DEFAULT_TIMEOUT", str(300)))
    app.config.update(cache_config)
    cache.init_app(app)

    # Blueprints
    app.register_blueprint(api_bp, url_prefix="/api")

    @app.route("/health", methods=["GET"])  # simple health check
    def health():
        return jsonify({"status": "ok"})

    # Capture simple request metrics (per-process)
    @app.after_request
    def capture_metrics(response):
        try:
            record_response(request.path, getattr(response, "status_code", 200))
        except Exception:
            pass
        return response

    return app
