from .main import main, run, build_parser
from .selftest import selftest

__all__ = ["main", "run", "build_parser", "selftest"]
