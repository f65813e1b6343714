# ==============================================================================
# commands/__init__.py - Command module initialization
# ==============================================================================

import argparse

from config.settings import Settings
from exceptions import UsageError
from utils.output import FORMATS
from . import cone, lattice, representation


class EssigArgumentParser(argparse.ArgumentParser):
    """Parser that reports usage errors as UsageError (exit code 1)"""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def common_options() -> argparse.ArgumentParser:
    """Flags accepted by every command"""
    common = EssigArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text", help="output format")
    common.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")
    common.add_argument("--cache", metavar="DIR", help="cache directory (ESSIG_CACHE overrides)")
    common.add_argument("--jobs", type=int, metavar="N", help="worker processes for sweeps")
    common.add_argument("--point-budget", type=int, metavar="M",
                        help="skip sweep rows whose dimension exceeds M")
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
                        help="logging level (stderr)")
    return common


def create_parser() -> argparse.ArgumentParser:
    """Create the main parser with all sub-commands"""
    parser = EssigArgumentParser(
        prog=Settings.APP_NAME,
        description="Essential signatures, their cone and its lattice points for D4.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {Settings.APP_VERSION}")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True

    parents = [common_options()]
    representation.register(subparsers, parents)
    cone.register(subparsers, parents)
    lattice.register(subparsers, parents)
    return parser
