# ==============================================================================
# commands/representation.py - roots, essential and dim commands
# ==============================================================================

import logging

import pandas as pd

from config.settings import Settings
from services.root_system import D4, DomWeight, weyl_dim
from services.signatures import essential_signatures
from services.tables import check_against_table
from utils.output import CommandResult, OutputEnvelope

logger = logging.getLogger(__name__)


def register(subparsers, parents) -> None:
    roots = subparsers.add_parser("roots", parents=parents, help="list the numbered positive roots")
    roots.set_defaults(handler=cmd_roots)

    essential = subparsers.add_parser("essential", parents=parents,
                                      help="essential signatures of a highest weight")
    essential.add_argument("weight", help="k1,k2,k3,k4")
    essential.add_argument("--check-tables", action="store_true",
                           help="compare with the transcribed table when the weight is fundamental")
    essential.set_defaults(handler=cmd_essential)

    dim = subparsers.add_parser("dim", parents=parents, help="Weyl dimension of a highest weight")
    dim.add_argument("weight", help="k1,k2,k3,k4")
    dim.set_defaults(handler=cmd_dim)


def signature_frame(signatures) -> pd.DataFrame:
    columns = ["k1", "k2", "k3", "k4"] + [f"p{j}" for j in range(1, 13)]
    return pd.DataFrame([list(s.vector) for s in signatures], columns=columns)


def cmd_roots(args, settings: Settings) -> CommandResult:
    """Get the positive roots in their fixed numbering"""
    roots = D4.positive_roots()
    records = [{"index": r.index, "eps": [int(c) for c in r.eps.coords]} for r in roots]
    frame = pd.DataFrame(
        [[r["index"]] + r["eps"] for r in records],
        columns=["index", "eps1", "eps2", "eps3", "eps4"],
    )
    text = "\n".join(str(r) for r in roots)
    return CommandResult(OutputEnvelope(command="roots", result=records), text, frame)


def cmd_essential(args, settings: Settings) -> CommandResult:
    """Get essential signatures, optionally checked against the transcribed tables"""
    hw = DomWeight.parse(args.weight)
    signatures = essential_signatures(hw, ambient_limit=settings.AMBIENT_LIMIT)

    table_check = None
    if args.check_tables:
        if hw.total == 1:
            fundamental = hw.k.index(1) + 1
            check_against_table(fundamental, signatures)
            table_check = "match"
        else:
            table_check = "skipped: not a fundamental weight"
            logger.warning(f"No transcribed table for {hw}")

    lines = [f"{position:>3}: {sigma.monomial()}" for position, sigma in enumerate(signatures, start=1)]
    lines.append(f"{len(signatures)} essential signatures of highest weight ({hw})")
    if table_check:
        lines.append(f"table check: {table_check}")

    envelope = OutputEnvelope(
        command="essential",
        parameters={"weight": list(hw.k), "check_tables": args.check_tables},
        result={"hw": list(hw.k), "count": len(signatures), "table_check": table_check,
                "signatures": [s.to_dict() for s in signatures]},
    )
    return CommandResult(envelope, "\n".join(lines), signature_frame(signatures))


def cmd_dim(args, settings: Settings) -> CommandResult:
    """Get the Weyl dimension of V(lambda)"""
    hw = DomWeight.parse(args.weight)
    dimension = weyl_dim(hw)
    envelope = OutputEnvelope(command="dim", parameters={"weight": list(hw.k)},
                              result={"hw": list(hw.k), "dim": dimension})
    frame = pd.DataFrame([list(hw.k) + [dimension]], columns=["k1", "k2", "k3", "k4", "dim"])
    return CommandResult(envelope, str(dimension), frame)
