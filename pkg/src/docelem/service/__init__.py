from .app import create_app
from .config import ServiceConfig, config_from_env
from .jobs import JobManager, TrainingJob
from .store import Store

__all__ = [
    "JobManager",
    "ServiceConfig",
    "Store",
    "TrainingJob",
    "config_from_env",
    "create_app",
]
