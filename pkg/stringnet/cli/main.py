"""The ``stringnet`` command line.

Every command writes one deterministic JSON report (stdout or ``--out``),
prints a rich summary to stderr, and logs one EVENTS record. Exit codes: 0
accept, 1 validation reject, 2 input error, 3 a law or invariant failed.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from loguru import logger
from pydantic import ValidationError as PydanticValidationError
from rich.console import Console

import constants
from stringnet.backends.realized import ModuleBackend
from stringnet.core import exact
from stringnet.core.backend import CategoryBackend
from stringnet.core.errors import LawViolation, StringNetError, UniversalityError
from stringnet.core.objects import Obj
from stringnet.cli.config import RunConfig, add_args, check_config, configure_logging
from stringnet.cli.files import is_cylinder_file, load_backend, load_cylinder, load_diagram
from stringnet.cli.reports import Report, morphism_payload, print_summary, write_report
from stringnet.cylinder.local import EvaluationRectangle, null_relation_check
from stringnet.cylinder.net import validate_locally_progressive
from stringnet.cylinder.reduce import net_value, reduce_to_normal_form
from stringnet.cylinder.stack import stack
from stringnet.monad.center import center_count, circle_hom_dimension
from stringnet.monad.karoubi import generated_test_set, karoubi_compare
from stringnet.monad.kleisli import kleisli_compose
from stringnet.monad.monad import Monad, central_monad, compare_twistings
from stringnet.monad.presheaf import functoriality_defect, module_round_trip, presheaf_from_module
from stringnet.progressive.diagram import jitter, random_levels
from stringnet.progressive.evaluate import band_summary
from stringnet.progressive.geometry import fraction_str, to_fraction
from stringnet.progressive.polarize import polarize
from stringnet.progressive.slicing import slice_diagram
from utilities.perf_monitor import PhaseTimings
from utilities.utils import file_digest, make_rng, split_terms


class Run:
    """What a command needs besides its own arguments."""

    def __init__(self, args, config: RunConfig):
        self.args = args
        self.config = config
        self.field = exact.parse_field(config.field)
        self.timings = PhaseTimings()
        self.rng = make_rng(config.seed)
        self.backend: Optional[CategoryBackend] = None

    def load_backend(self, spec: Optional[str] = None) -> CategoryBackend:
        spec = self.config.backend or spec
        if spec is None:
            raise StringNetError("No backend given; pass --backend.")
        with self.timings.phase("load backend"):
            self.backend = load_backend(spec, self.field)
        return self.backend

    def monad(self, winding: Optional[int] = None) -> Monad:
        backend = self.backend or self.load_backend()
        if not isinstance(backend, ModuleBackend):
            raise StringNetError(f"{backend.backend_id} has no coend engine.")
        return central_monad(backend, self.config.winding if winding is None else winding)

    def report(self, command: str, verdict: str, exit_code: int, result: Dict, arguments: Optional[Dict] = None) -> Report:
        echo = {"winding": self.config.winding, "seed": self.config.seed}
        echo.update(arguments or {})
        return Report(
            command=command,
            arguments=echo,
            backend=self.backend.backend_id if self.backend else None,
            fingerprint=self.backend.fingerprint() if self.backend else None,
            field=exact.field_name(self.field),
            verdict=verdict,
            exit_code=exit_code,
            result=result,
        )


def _inputs(*paths: str) -> Dict:
    return {"inputs": [{"path": p, "sha256": file_digest(Path(p))} for p in paths]}


def _objects(backend: CategoryBackend) -> List[Obj]:
    return [backend.unit()] + backend.generators()


# ---------------------------------
# Commands.
# ---------------------------------


def cmd_validate(run: Run) -> Report:
    path = Path(run.args.path)
    if is_cylinder_file(path):
        net, backend = load_cylinder(path, run.field, run.load_backend(_header_backend(path)))
        with run.timings.phase("validate"):
            report = validate_locally_progressive(net, backend)
        result = report.model_dump(mode="json")
        verdict = "accept" if report.accepted else "reject"
        if run.args.null and report.accepted:
            s1, s2, t1, t2 = (to_fraction(v) for v in run.args.rect.split(","))
            rect = EvaluationRectangle(s1, s2, t1, t2)
            terms = [(to_fraction(w), load_cylinder(Path(p), run.field, backend)[0]) for w, p in split_terms(run.args.null)]
            with run.timings.phase("null relation"):
                null = null_relation_check(terms, rect, backend)
            result["null_relation"] = null.model_dump(mode="json")
            verdict = "accept" if null.null else "reject"
    else:
        diagram, backend = load_diagram(path, run.field, run.load_backend(_header_backend(path)))
        with run.timings.phase("validate"):
            report = diagram.validate()
        result = report.model_dump(mode="json")
        verdict = "accept" if report.accepted else "reject"
    return run.report("validate", verdict, constants.EXIT_ACCEPT if verdict == "accept" else constants.EXIT_REJECT, result, _inputs(run.args.path))


def cmd_eval(run: Run) -> Report:
    path = Path(run.args.path)
    if is_cylinder_file(path):
        net, _ = load_cylinder(path, run.field, run.load_backend(_header_backend(path)))
        with run.timings.phase("reduce"):
            value = net_value(net, run.monad(net.winding))
        return run.report("eval", "accept", constants.EXIT_ACCEPT, {"value": morphism_payload(value)}, _inputs(run.args.path))
    diagram, backend = load_diagram(path, run.field, run.load_backend(_header_backend(path)))
    if run.args.levels:
        levels = [to_fraction(v) for v in run.args.levels.split(",")]
    elif run.args.random_levels:
        levels = list(random_levels(diagram, run.rng))
    else:
        levels = None
    with run.timings.phase("evaluate"):
        value = diagram.evaluate(backend, levels)
    ir = slice_diagram(diagram.graph, diagram.embedding, levels, polarize(diagram.graph, diagram.embedding))
    result = {
        "value": morphism_payload(value),
        "bands": list(band_summary(ir)),
        "levels": None if levels is None else [fraction_str(level) for level in levels],
    }
    if run.args.jitter:
        with run.timings.phase("jitter"):
            moved = jitter(diagram, run.rng).evaluate(backend)
        result["jitter_agrees"] = exact.equal(moved.matrix, value.matrix)
        if not result["jitter_agrees"]:
            return run.report("eval", "mismatch", constants.EXIT_INVARIANT_BREACH, result, _inputs(run.args.path))
    return run.report("eval", "accept", constants.EXIT_ACCEPT, result, _inputs(run.args.path))


def cmd_reduce(run: Run) -> Report:
    path = Path(run.args.path)
    net, backend = load_cylinder(path, run.field, run.load_backend(_header_backend(path)))
    with run.timings.phase("reduce"):
        normal = reduce_to_normal_form(net, backend)
    monad = run.monad(net.winding)
    with run.timings.phase("coend"):
        value = normal.value(monad)
    result = {"c": str(normal.c), "h": morphism_payload(normal.h), "value": morphism_payload(value)}
    return run.report("reduce", "accept", constants.EXIT_ACCEPT, result, _inputs(run.args.path))


def cmd_compose(run: Run) -> Report:
    top_path, bottom_path = Path(run.args.top), Path(run.args.bottom)
    backend = run.load_backend(_header_backend(top_path))
    top, _ = load_cylinder(top_path, run.field, backend)
    bottom, _ = load_cylinder(bottom_path, run.field, backend)
    monad = run.monad(top.winding)
    with run.timings.phase("stack and reduce"):
        stacked = net_value(stack(top, bottom), monad)
    with run.timings.phase("kleisli"):
        composite = kleisli_compose(
            monad, reduce_to_normal_form(top, backend).kleisli(monad), reduce_to_normal_form(bottom, backend).kleisli(monad)
        ).morphism
    agree = exact.equal(stacked.matrix, composite.matrix)
    result = {"value": morphism_payload(stacked), "kleisli": morphism_payload(composite), "agree": agree}
    if not agree:
        return run.report("compose", "mismatch", constants.EXIT_INVARIANT_BREACH, result, _inputs(run.args.top, run.args.bottom))
    return run.report("compose", "accept", constants.EXIT_ACCEPT, result, _inputs(run.args.top, run.args.bottom))


def cmd_monad_check(run: Run) -> Report:
    monad = run.monad()
    objects = _objects(run.backend)
    with run.timings.phase("coend"):
        for y in objects:
            monad.coend.verify_universality(y)
            monad.coend.verify_dinaturality(y)
    with run.timings.phase("laws"):
        monad.check_laws(objects)
    result: Dict = {
        "objects": [str(y) for y in objects],
        "dimensions": {str(y): monad.T(y).dim for y in objects},
        "strategy": monad.coend.strategy,
    }
    if run.args.compare is not None:
        comparisons = []
        with run.timings.phase("compare"):
            for y in objects:
                c = compare_twistings(run.backend, run.config.winding, run.args.compare, y)
                comparisons.append({"object": c.object, "agree": c.agree, "transports": c.transports, "module_map": c.module_map, "invertible": c.invertible, "multiplicative": c.preserves_multiplication})
        result["compare"] = {"winding": run.args.compare, "objects": comparisons, "agree": all(c["agree"] for c in comparisons)}
    if run.args.presheaves:
        with run.timings.phase("presheaves"):
            result["presheaves"] = _presheaf_checks(run, monad, objects)
    return run.report("monad-check", "accept", constants.EXIT_ACCEPT, result)


def _presheaf_checks(run: Run, monad: Monad, objects: List[Obj]) -> List[Dict]:
    """Round trips every module of the test set through its representable presheaf.

    Raises:
        LawViolation: If a presheaf is not functorial or a round trip changes the module.
    """
    checks = []
    for module in generated_test_set(monad, run.backend.generators()):
        F = presheaf_from_module(monad, module, objects)
        defect = functoriality_defect(monad, F, run.rng)
        if defect is not None:
            raise LawViolation("presheaf functoriality", {"module": str(module), "failure": defect})
        if not module_round_trip(monad, module, objects, run.rng):
            raise LawViolation("presheaf round trip", {"module": str(module)})
        checks.append({"module": str(module), "dimension": module.obj.dim, "round_trip": True})
    return checks


def cmd_center(run: Run) -> Report:
    monad = run.monad()
    result: Dict = {}
    if run.args.simples or not (run.args.homs or run.args.karoubi):
        with run.timings.phase("simples"):
            count = center_count(monad)
        result["simples"] = count.simples
        result["algebra_dimension"] = count.algebra_dimension
        result["radical_dimension"] = count.radical_dimension
        result["solved"] = list(count.solved)
        result["unsolved"] = list(count.unsolved)
    if run.args.homs:
        objects = _objects(run.backend)
        with run.timings.phase("homs"):
            result["homs"] = [
                {"x": str(x), "y": str(y), "dimension": circle_hom_dimension(monad, x, y)} for x in objects for y in objects
            ]
    if run.args.karoubi:
        with run.timings.phase("karoubi"):
            report = karoubi_compare(monad, run.backend.generators())
        result["karoubi"] = _karoubi_payload(report)
    return run.report("center", "accept", constants.EXIT_ACCEPT, result)


def _karoubi_payload(report) -> Dict:
    return {
        "entries": [
            {"module": e.module, "dimension": e.dimension, "retract": e.retract, "via": e.via} for e in report.entries
        ],
        "witnesses": report.witnesses,
        "all_retracts": report.all_retracts,
    }


def cmd_karoubi_compare(run: Run) -> Report:
    monad = run.monad()
    with run.timings.phase("karoubi"):
        report = karoubi_compare(monad, run.backend.generators())
    verdict = "all-retracts" if report.all_retracts else "gap"
    return run.report("karoubi-compare", verdict, constants.EXIT_ACCEPT, _karoubi_payload(report))


def _header_backend(path: Path) -> Optional[str]:
    try:
        return json.loads(path.read_text(encoding="utf-8")).get("backend")
    except (ValueError, AttributeError):
        return None


COMMANDS: Dict[str, Callable[[Run], Report]] = {
    "validate": cmd_validate,
    "eval": cmd_eval,
    "reduce": cmd_reduce,
    "compose": cmd_compose,
    "monad-check": cmd_monad_check,
    "center": cmd_center,
    "karoubi-compare": cmd_karoubi_compare,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stringnet", description="String-diagram compiler and twisted center engine.")
    add_args(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    validate = sub.add_parser("validate", help="Validate a strip diagram or a cylinder net.")
    validate.add_argument("path")
    validate.add_argument("--null", type=str, default=None, help="weight:path terms of a null relation, comma separated.")
    validate.add_argument("--rect", type=str, default=None, help="s1,s2,t1,t2 of the evaluation rectangle.")

    evaluate = sub.add_parser("eval", help="Evaluate a diagram, or the value of a cylinder net.")
    evaluate.add_argument("path")
    evaluate.add_argument("--levels", type=str, default=None, help="Comma separated regular level values.")
    evaluate.add_argument("--random-levels", action="store_true", default=False, help="Slice at seeded random regular levels.")
    evaluate.add_argument("--jitter", action="store_true", default=False, help="Also evaluate a seeded small isotopy of the drawing.")

    reduce = sub.add_parser("reduce", help="Reduce a cylinder net to normal form.")
    reduce.add_argument("path")

    compose = sub.add_parser("compose", help="Stack two cylinder nets and compare with the Kleisli composite.")
    compose.add_argument("top")
    compose.add_argument("bottom")

    monad_check = sub.add_parser("monad-check", help="Verify the coend and the monad laws of T_n.")
    monad_check.add_argument("--compare", type=int, default=None, help="Also compare T_n with T_m for this m.")
    monad_check.add_argument(
        "--presheaves", action="store_true", default=False, help="Round trip the test modules through representable presheaves."
    )

    center = sub.add_parser("center", help="Simple objects, circle hom spaces and the Karoubi comparison.")
    center.add_argument("--simples", action="store_true", default=False)
    center.add_argument("--homs", action="store_true", default=False)
    center.add_argument("--karoubi", action="store_true", default=False)

    sub.add_parser("karoubi-compare", help="Which modules of the test set are retracts of free modules.")
    return parser


def execute(argv: Optional[Sequence[str]] = None, console: Optional[Console] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "validate" and bool(args.null) != bool(args.rect):
        parser.error("--null and --rect go together.")
    console = console or Console(stderr=True)
    try:
        config = check_config(args)
    except PydanticValidationError as e:
        console.print(f"[red]Invalid settings:[/red] {e.errors()[0]['msg']}")
        return constants.EXIT_INPUT_ERROR
    configure_logging(config)
    run = Run(args, config)
    try:
        report = COMMANDS[args.command](run)
    except (LawViolation, UniversalityError) as e:
        logger.log(constants.EVENTS_LEVEL, f"{args.command} breach: {e}")
        console.print(f"[red]Invariant breach:[/red] {e}")
        return constants.EXIT_INVARIANT_BREACH
    except (StringNetError, ValueError, OSError, PydanticValidationError) as e:
        logger.log(constants.EVENTS_LEVEL, f"{args.command} input error: {e}")
        console.print(f"[red]Input error:[/red] {e}")
        return constants.EXIT_INPUT_ERROR
    write_report(report, config.out)
    logger.log(
        constants.EVENTS_LEVEL,
        f"{report.command} backend={report.backend} fingerprint={report.fingerprint} verdict={report.verdict}",
    )
    print_summary(report, console, run.timings.summaries() if config.timings else None)
    return report.exit_code


def main() -> None:
    sys.exit(execute())


if __name__ == "__main__":
    main()
