import os
import sys
from typing import List, Optional

from commands import create_parser
from config.settings import Settings, get_settings
from exceptions import EssigBaseException, log_exception
from utils.logging import auto_configure_logging
from utils.output import CommandResult, OutputEnvelope, emit


class EssigApp:
    """Command-line application for essential signatures of D4"""

    def __init__(self, argv: Optional[List[str]] = None):
        self.parser = create_parser()
        self.args = None
        self.settings: Optional[Settings] = None
        self.argv = argv

    def _parse(self) -> None:
        """Parse arguments and apply command-line overrides to the settings"""
        self.args = self.parser.parse_args(self.argv)
        self.settings = get_settings()
        args, settings = self.args, self.settings
        # ESSIG_CACHE wins over --cache
        if args.cache and not os.getenv("ESSIG_CACHE"):
            settings.CACHE_DIR = args.cache
        if args.jobs is not None:
            settings.JOBS = max(1, args.jobs)
        if args.point_budget is not None:
            settings.POINT_BUDGET = args.point_budget

    def _setup_logging(self) -> None:
        auto_configure_logging(self.settings, self.args.log_level)

    def _report_error(self, exc: EssigBaseException) -> None:
        """Error payload as an envelope (json) or a message on stderr"""
        log_exception(exc, context=self.args.command if self.args else None)
        fmt = getattr(self.args, "format", "text")
        if self.args is not None and fmt == "json":
            envelope = OutputEnvelope(command=self.args.command, result={"error": exc.to_dict()})
            emit(CommandResult(envelope, exc.message), fmt, self.args.out)
        else:
            sys.stderr.write(f"error: {exc.message}\n")
            if exc.details:
                for key, value in exc.details.items():
                    sys.stderr.write(f"  {key}: {value}\n")

    def run(self) -> int:
        """Run one command and return its exit code"""
        try:
            self._parse()
            self._setup_logging()
            result = self.args.handler(self.args, self.settings)
            emit(result, self.args.format, self.args.out)
            return result.exit_code
        except EssigBaseException as exc:
            self._report_error(exc)
            return exc.exit_code


def main(argv: Optional[List[str]] = None) -> int:
    return EssigApp(argv).run()


if __name__ == "__main__":
    sys.exit(main())
