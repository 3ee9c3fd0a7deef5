"""
Sweep Hochschild cohomology slices and write a table of Betti numbers.

For each n, number of outputs l, weight and map degree in the requested
ranges this computes the cohomology of the slice of CH_(l) under [mu, -] and
records its Betti number. The tables of the acceptance suite are regenerated
with it:

    python scripts/sweep.py --n 2 3 --ell-max 3 --weight-max 4 --degree-min -8 --degree-max 0
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

# Add project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

import structlog

from src.cochains import cohomology_slice
from src.config.settings import get_settings
from src.linalg import Ring
from src.loop_algebra import LoopAlgebra
from src.utils.exceptions import WorkbenchError
from src.utils.logging import configure_logging

logger = structlog.get_logger(__name__)


class _UserInputError(RuntimeError):
    pass


def _parse_args(argv: Optional[Sequence[str]]) -> argparse.Namespace:
    settings = get_settings()
    ap = argparse.ArgumentParser(description="Sweep Hochschild cohomology slices")
    ap.add_argument("--n", type=int, nargs="+", default=[settings.algebra.sphere_dimension])
    ap.add_argument("--field", default=settings.algebra.field)
    ap.add_argument("--t-max", dest="t_max", type=int, default=settings.algebra.truncation)
    ap.add_argument("--ell-max", dest="ell_max", type=int, default=3)
    ap.add_argument("--weight-max", dest="weight_max", type=int, default=settings.window.weight_max)
    ap.add_argument("--degree-min", dest="degree_min", type=int, required=True)
    ap.add_argument("--degree-max", dest="degree_max", type=int, required=True)
    ap.add_argument(
        "--input-bound", dest="input_bound", type=int, default=settings.window.input_bound
    )
    ap.add_argument(
        "--persistence", type=int, default=settings.window.persistence_delta, help="0 disables"
    )
    ap.add_argument("--full", action="store_true", help="Whole slices, not the isotypic part")
    ap.add_argument("--out", help="Output path (default: <output_dir>/sweep.json)")
    return ap.parse_args(list(argv) if argv is not None else None)


def sweep(args: argparse.Namespace) -> Dict[str, Any]:
    """Betti numbers of every slice in the requested ranges."""
    if args.degree_min > args.degree_max:
        raise _UserInputError(f"Empty degree range [{args.degree_min}, {args.degree_max}]")
    try:
        ring = Ring.from_tag(args.field)
    except ValueError as e:
        raise _UserInputError(str(e)) from e

    rows: List[Dict[str, Any]] = []
    for n in args.n:
        try:
            algebra = LoopAlgebra(n=n, D=args.t_max, ring=ring)
        except ValueError as e:
            raise _UserInputError(str(e)) from e
        for ell in range(1, args.ell_max + 1):
            for weight in range(args.weight_max + 1):
                for degree in range(args.degree_min, args.degree_max + 1):
                    result = cohomology_slice(
                        algebra,
                        ell,
                        degree,
                        weight,
                        args.input_bound,
                        isotypic=not args.full,
                        persistence=args.persistence,
                    )
                    rows.append(
                        {
                            "n": n,
                            "ell": ell,
                            "weight": weight,
                            "degree": degree,
                            "basis_size": len(result.basis),
                            "betti": result.betti,
                        }
                    )
        logger.info("sweep_dimension_done", n=n, slices=len(rows))

    return {
        "config": {
            "n": args.n,
            "field": ring.tag,
            "t_max": args.t_max,
            "input_bound": args.input_bound,
            "persistence": args.persistence,
            "isotypic": not args.full,
        },
        "rows": rows,
        "nonzero": [r for r in rows if r["betti"]],
    }


def main(argv: Optional[Sequence[str]] = None) -> int:
    settings = get_settings()
    configure_logging(settings.app.log_level, settings.app.log_format)
    args = _parse_args(argv)
    try:
        table = sweep(args)
    except _UserInputError as e:
        print(f"sweep: error: {e}", file=sys.stderr)
        return 3
    except WorkbenchError as e:
        logger.error("sweep_failed", **e.to_dict())
        return 1

    out = Path(args.out) if args.out else Path(settings.report.output_dir) / "sweep.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(table, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"{len(table['rows'])} slices, {len(table['nonzero'])} with cohomology -> {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
