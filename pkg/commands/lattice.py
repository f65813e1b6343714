# ==============================================================================
# commands/lattice.py - count, decompose and verify commands
# ==============================================================================

import logging
import sys

import pandas as pd

from config.settings import Settings
from exceptions import SweepMismatchError, UsageError, VerificationError
from services.cone import tight_items
from services.lattice import count_points, decompose, sum_signatures, verify_dimension_sweep
from services.root_system import DomWeight
from services.signatures import Signature
from services.tables import inequality_digest
from utils.database import SweepStore, get_engine
from utils.output import CommandResult, OutputEnvelope

logger = logging.getLogger(__name__)


def register(subparsers, parents) -> None:
    count = subparsers.add_parser("count", parents=parents, help="number of cone points of a highest weight")
    count.add_argument("weight", help="k1,k2,k3,k4")
    count.set_defaults(handler=cmd_count)

    decomposition = subparsers.add_parser("decompose", parents=parents,
                                          help="write a cone point as a sum of fundamental signatures")
    decomposition.add_argument("weight", help="k1,k2,k3,k4")
    decomposition.add_argument("p", help="p1,...,p12")
    decomposition.set_defaults(handler=cmd_decompose)

    verify = subparsers.add_parser("verify", parents=parents, help="compare point counts with Weyl dimensions")
    verify.add_argument("--max-total", type=int, default=1, metavar="N",
                        help="all weights with k1+k2+k3+k4 <= N")
    verify.add_argument("--no-store", action="store_true", help="do not read or write the sweep store")
    verify.add_argument("--fresh", action="store_true", help="discard stored rows before the sweep")
    verify.set_defaults(handler=cmd_verify)


def cmd_count(args, settings: Settings) -> CommandResult:
    """Get |Sigma^f(lambda)|"""
    hw = DomWeight.parse(args.weight)
    count = count_points(hw)
    envelope = OutputEnvelope(command="count", parameters={"weight": list(hw.k)},
                              result={"hw": list(hw.k), "count": count})
    frame = pd.DataFrame([list(hw.k) + [count]], columns=["k1", "k2", "k3", "k4", "count"])
    return CommandResult(envelope, str(count), frame)


def cmd_decompose(args, settings: Settings) -> CommandResult:
    """Get a decomposition into fundamental essential signatures"""
    sigma = Signature.parse(args.weight, args.p)
    parts = decompose(sigma)
    if sum_signatures(parts) != sigma:
        raise VerificationError(f"Decomposition of {sigma} does not sum back", "DECOMPOSITION_UNSOUND",
                                {"parts": [part.to_dict() for part in parts]})
    tight = tight_items(sigma)

    lines = [f"{sigma} = sum of {len(parts)} fundamental signature(s)"]
    for part in parts:
        fundamental = part.hw.k.index(1) + 1
        lines.append(f"  omega_{fundamental}: {part.monomial()}")
    lines.append("tight items: " + (", ".join(str(item) for item in tight) or "none"))

    envelope = OutputEnvelope(
        command="decompose",
        parameters={"weight": list(sigma.hw.k), "p": list(sigma.p)},
        result={"signature": sigma.to_dict(), "parts": [part.to_dict() for part in parts],
                "tight_items": tight},
    )
    frame = pd.DataFrame([list(part.vector) for part in parts],
                         columns=["k1", "k2", "k3", "k4"] + [f"p{j}" for j in range(1, 13)])
    return CommandResult(envelope, "\n".join(lines), frame)


def cmd_verify(args, settings: Settings) -> CommandResult:
    """Get the count-vs-dimension sweep report"""
    if args.max_total < 0:
        raise UsageError(f"--max-total must be non-negative, got {args.max_total}")
    known, on_row = None, None
    if not args.no_store:
        store = SweepStore(get_engine(settings.store_url), inequality_digest())
        if args.fresh:
            store.clear()
        known = store.load()

        def on_row(row):
            store.save(row.k, row.count, row.weyl, row.elapsed_ms)

    report = verify_dimension_sweep(args.max_total, settings.POINT_BUDGET, jobs=settings.JOBS,
                                    known=known, progress=sys.stderr.isatty(), on_row=on_row)

    lines = []
    for row in report.rows:
        k = ",".join(str(x) for x in row.k)
        if row.computed:
            status = "equal" if row.equal else "UNEQUAL"
            lines.append(f"{k}: count={row.count} weyl={row.weyl} {status}")
        else:
            lines.append(f"{k}: skipped ({row.skipped_reason})")
    totals = report.totals()
    lines.append(f"{totals['rows']} rows: {totals['equal']} equal, {totals['unequal']} unequal, "
                 f"{totals['skipped']} skipped")

    envelope = OutputEnvelope(
        command="verify",
        parameters={"max_total": args.max_total, "point_budget": settings.POINT_BUDGET},
        result=report.to_dict(),
    )
    exit_code = 0
    if not report.all_equal:
        error = SweepMismatchError([row.to_record() for row in report.mismatches])
        logger.warning(error.message)
        envelope.result["error"] = error.to_dict()
        exit_code = error.exit_code
    return CommandResult(envelope, "\n".join(lines), report.to_frame(), exit_code)
