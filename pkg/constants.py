import os
from dotenv import load_dotenv

load_dotenv()

is_dev = os.environ.get("ENV") == "dev"

log_level = os.environ.get("LOG_LEVEL", "INFO").upper()
sentry_dsn = os.environ.get("SENTRY_DSN")

# Bump whenever engine semantics change; cached results from other versions are dropped
engine_version = "1.0.0"

default_cache_path = os.environ.get("RUBBLING_CACHE", ".rubbling_cache.json")
default_threads = int(os.environ.get("RUBBLING_THREADS", "1"))
default_seed = int(os.environ.get("RUBBLING_SEED", "20160511"))

# 10 minutes
default_budget_seconds = 600.0

# reduce() replays the engine on every certified p^R before returning it
verify_reductions = os.environ.get("RUBBLING_VERIFY_REDUCTIONS", "1") != "0"
