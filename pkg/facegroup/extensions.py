from flask_limiter import Limiter
from flask_limiter.util import get_remote_address
from flask_caching import Cache

# Global extensions

limiter = Limiter(key_func=get_remote_address)
cache = Cache()
