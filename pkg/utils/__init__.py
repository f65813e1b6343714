# utils/__init__.py

from .logging import setup_logging, auto_configure_logging, get_logger, log_function_call

__all__ = ["setup_logging", "auto_configure_logging", "get_logger", "log_function_call"]
