import os


def _threads_default() -> int:
    try:
        return int(os.getenv("FACEGROUP_THREADS", "0"))
    except ValueError:
        return 0


class Config:
    # Flask
    SECRET_KEY = os.getenv("SECRET_KEY", "dev-secret-change-me")
    JSON_SORT_KEYS = False

    # Logging
    LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING")

    # CORS
    CORS_ORIGINS = os.getenv("CORS_ORIGINS", "*")

    # Rate limiting
    RATE_LIMIT_DEFAULT = os.getenv("RATE_LIMIT_DEFAULT", "600 per hour")
    RATE_LIMIT_SEARCH = os.getenv("RATE_LIMIT_SEARCH", "30 per minute")
    # Flask-Limiter storage (use Redis in prod if available)
    #   REDIS_URL=redis://localhost:6379/0
    RATELIMIT_STORAGE_URI = os.getenv("RATELIMIT_STORAGE_URI") or os.getenv("REDIS_URL") or "memory://"

    # Request size cap for posted complexes/spheres
    MAX_CONTENT_LENGTH = int(os.getenv("MAX_CONTENT_LENGTH", str(2 * 1024 * 1024)))

    # Search
    SEARCH_MAX_STATES = int(os.getenv("SEARCH_MAX_STATES", "2000000"))
    SEARCH_MAX_PAD = int(os.getenv("SEARCH_MAX_PAD", "4"))
    SEARCH_SEED = int(os.getenv("SEARCH_SEED", "0"))
    SEARCH_STRATEGY = os.getenv("SEARCH_STRATEGY", "bfs")  # bfs | sized
    SEARCH_BATCH = int(os.getenv("SEARCH_BATCH", "64"))
    FACEGROUP_THREADS = _threads_default()  # 0 = all cores
    # API searches run inside a request; keep them small
    API_SEARCH_MAX_STATES = int(os.getenv("API_SEARCH_MAX_STATES", "200000"))

    # Edge loops
    LOOP_MAX_LENGTH = int(os.getenv("LOOP_MAX_LENGTH", "8"))
