# ==============================================================================
# commands/cone.py - cone command
# ==============================================================================

import logging
from typing import List, Tuple

import pandas as pd

from config.settings import Settings
from exceptions import FacetMismatchError
from services.cone import (
    DualDescription, FacetNormal, certify_facets, compare_with_table, dominance_status,
    dual_description, fundamental_generators,
)
from services.tables import N_K, N_P, table_digest
from utils.cache import JsonCache
from utils.output import CommandResult, OutputEnvelope

logger = logging.getLogger(__name__)

SOURCES = ("computed", "table")


def register(subparsers, parents) -> None:
    cone = subparsers.add_parser("cone", parents=parents,
                                 help="facets of the cone spanned by the fundamental signatures")
    cone.add_argument("--compare", action="store_true",
                      help="diff against the transcribed inequalities and certify every facet")
    cone.add_argument("--source", choices=SOURCES, default="computed",
                      help="generators from the rank scan (computed) or the transcribed tables (table)")
    cone.set_defaults(handler=cmd_cone)


def load_generators(cache: JsonCache, source: str) -> List[Tuple[int, ...]]:
    """
    The 52 generator rays. Computed rays are cached under the digest of the
    transcribed tables, so editing a table invalidates them.
    """
    transcribed = [ray.v for ray in fundamental_generators("table")]
    if source == "table":
        return transcribed
    digest = table_digest(transcribed)
    name = f"generators-{source}-{digest}.json"
    cached = cache.load(name)
    if cached is not None:
        return [tuple(row["hw"]) + tuple(row["p"]) for row in cached["rays"]]
    rays = [ray.v for ray in fundamental_generators(source)]
    cache.store(name, {"source": source, "table_digest": digest,
                       "rays": [{"hw": list(r[:N_K]), "p": list(r[N_K:])} for r in rays]})
    return rays


def load_facets(cache: JsonCache, rays: List[Tuple[int, ...]]) -> Tuple[str, DualDescription]:
    """Facets keyed by the content hash of the generator table"""
    digest = table_digest(rays)
    name = f"facets-{digest}.json"
    cached = cache.load(name)
    if cached is not None:
        facets = [FacetNormal.from_dict(f) for f in cached["facets"]]
        description = DualDescription([f.normal for f in facets], cached["span_dim"],
                                      cached["lineality_dim"], [tuple(e) for e in cached["equations"]])
        return digest, description
    description = dual_description(rays)
    cache.store(name, {
        "generator_digest": digest,
        "span_dim": description.span_dim,
        "lineality_dim": description.lineality_dim,
        "equations": [list(e) for e in description.equations],
        "facets": [f.to_dict() for f in description.facets()],
    })
    return digest, description


def cmd_cone(args, settings: Settings) -> CommandResult:
    """Get the facet table, optionally compared with the transcription"""
    cache = JsonCache(settings.CACHE_DIR)
    rays = load_generators(cache, args.source)
    digest, description = load_facets(cache, rays)
    facets = description.facets()

    result = {
        "generator_digest": digest,
        "generators": len(rays),
        "span_dim": description.span_dim,
        "lineality_dim": description.lineality_dim,
        "facet_count": len(facets),
        "facets": [f.to_dict() for f in facets],
    }
    lines = [f"{position:>3}: {facet.describe()}" for position, facet in enumerate(facets, start=1)]
    lines.append(f"{len(facets)} facets from {len(rays)} generators (span {description.span_dim})")
    exit_code = 0

    if args.compare:
        comparison = compare_with_table(rays, facets)
        certification = certify_facets(rays, [f.normal for f in facets])
        dominance = {f"k{i}": status for i, status in dominance_status(rays).items()}
        matched = comparison.matches and certification.all_certified
        result["compare"] = {
            "match": matched,
            "missing": [f.to_dict() for f in comparison.missing],
            "unexpected": [f.to_dict() for f in comparison.unexpected],
            "dominance_facets": dominance,
            "certification": certification.to_dict(),
        }
        for facet in comparison.missing:
            lines.append(f"missing:    {facet.describe()}")
        for facet in comparison.unexpected:
            lines.append(f"unexpected: {facet.describe()}")
        lines.append(f"{'MATCH' if matched else 'MISMATCH'} {len(facets)} facets")
        if not matched:
            error = FacetMismatchError(result["compare"]["missing"], result["compare"]["unexpected"])
            logger.warning(f"{error.message}; {len(certification.failures)} uncertified")
            result["error"] = error.to_dict()
            exit_code = error.exit_code

    frame = pd.DataFrame([list(f.a) + list(f.b) for f in facets],
                         columns=[f"a{j}" for j in range(1, N_P + 1)] + [f"b{i}" for i in range(1, N_K + 1)])
    envelope = OutputEnvelope(command="cone",
                              parameters={"compare": args.compare, "source": args.source},
                              result=result)
    return CommandResult(envelope, "\n".join(lines), frame, exit_code)
