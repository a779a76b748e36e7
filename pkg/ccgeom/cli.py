"""ccgeom CLI - console output and the three commands."""
import logging
import sys
from typing import Optional, Sequence

from . import __version__
from .catalogue import get_catalogue_text
from .config import DEFAULT_TOLERANCES, SUITE_PRESETS, ExperimentConfig
from .errors import CliError, GeometryError, SpaceMismatch
from .geometry.regions import ResultKind, intersect_regions
from .geometry.space_core import perturbation
from .geometry.symmetry import SymmetryReport, Verdict, is_centrally_symmetric_result
from .harness import VerificationHarness
from .scene import render_intersection, render_scene
from .schemas import (
    IntersectionDocument,
    ReportDocument,
    load_region,
    load_scene,
    polar_of,
    write_text,
)

logger = logging.getLogger(__name__)


class Colors:
    RESET = "\033[0m"
    BOLD = "\033[1m"
    DIM = "\033[2m"
    RED = "\033[31m"
    GREEN = "\033[32m"
    YELLOW = "\033[33m"
    BLUE = "\033[34m"
    MAGENTA = "\033[35m"
    CYAN = "\033[36m"


def print_colored(text: str, color: str = Colors.RESET, bold: bool = False, file=None):
    file = file or sys.stdout
    if not file.isatty():
        print(text, file=file)
        return
    prefix = Colors.BOLD if bold else ""
    print(f"{prefix}{color}{text}{Colors.RESET}", file=file)


def print_error(text: str):
    print_colored(f"[ERROR] {text}", Colors.RED, file=sys.stderr)


def print_experiment_list():
    print_colored(get_catalogue_text(), Colors.CYAN)


def format_text_report(doc: ReportDocument) -> list[tuple[str, str]]:
    """(line, colour) pairs of the human-readable summary."""
    lines = []
    for exp in doc.experiments:
        mark, color = ("PASS", Colors.GREEN) if exp.passed else ("FAIL", Colors.RED)
        lines.append((f"[{mark}] {exp.name} ({exp.trials_run} trials)", color))
        for failure in exp.failures:
            lines.append((f"    seed {failure.seed}: {failure.description}", Colors.YELLOW))
        for note in exp.notes:
            lines.append((f"    note: {note}", Colors.DIM))
    total = len(doc.experiments)
    passed = sum(e.passed for e in doc.experiments)
    lines.append((f"\n{passed}/{total} experiments passed (master seed {doc.master_seed})",
                  Colors.GREEN if doc.passed else Colors.RED))
    return lines


def build_config(seed: int = 42, trials: Optional[int] = None, tol: Optional[float] = None,
                 preset: str = "default", verbose: bool = False) -> ExperimentConfig:
    suite = SUITE_PRESETS[preset]
    tolerances = DEFAULT_TOLERANCES.with_symmetry(tol) if tol is not None else DEFAULT_TOLERANCES
    return ExperimentConfig(
        trials=trials if trials is not None else suite["trials"],
        seed=seed,
        samples=suite["samples"],
        tolerances=tolerances,
        verbose=verbose,
    )


def cmd_verify(names: Sequence[str] = ("all",), seed: int = 42, tol: Optional[float] = None,
               trials: Optional[int] = None, output_path: Optional[str] = None, fmt: str = "text",
               preset: str = "default", timings: bool = False, quiet: bool = False) -> int:
    """Run experiments; exit 0 iff every selected experiment passes."""
    structured = fmt in ("structured", "json")
    # progress lines would corrupt a structured report on stdout
    cfg = build_config(seed, trials, tol, preset, verbose=not structured and not quiet)
    harness = VerificationHarness(cfg)
    reports = harness.run(list(names) or ["all"])
    doc = ReportDocument.from_reports(
        reports, cfg, __version__,
        timings=harness.get_metrics()["timings"] if timings else None,
    )

    if structured:
        text = doc.to_json()
        if output_path:
            write_text(output_path, text)
        else:
            sys.stdout.write(text)
    else:
        lines = format_text_report(doc)
        if not quiet:
            for line, color in lines:
                print_colored(line, color)
        if output_path:
            write_text(output_path, "\n".join(line for line, _ in lines) + "\n")
    return 0 if doc.passed else 1


def _describe_verdict(report: SymmetryReport) -> str:
    if report.verdict is Verdict.SYMMETRIC:
        if report.center is None:
            return "symmetric"
        c = polar_of(report.center)
        return f"symmetric, center=(distance={c.distance:.9g}, angle={c.angle:.9g})"
    if report.verdict is Verdict.NOT_SYMMETRIC:
        return "not symmetric"
    return "indeterminate"


def cmd_intersect(file_a: str, file_b: str, emit_svg: Optional[str] = None, emit_report: Optional[str] = None,
                  perturb: Optional[float] = None, seed: int = 42, tol: Optional[float] = None) -> int:
    """Intersect two region files, classify the result and test it for central symmetry."""
    spec_a, a = load_region(file_a)
    spec_b, b = load_region(file_b)
    if spec_a.space != spec_b.space:
        raise SpaceMismatch(f"{file_a} is in {spec_a.space}, {file_b} is in {spec_b.space}")
    tolerances = DEFAULT_TOLERANCES.with_symmetry(tol) if tol is not None else DEFAULT_TOLERANCES

    try:
        if perturb:
            b = b.transformed(perturbation(b.space, seed, perturb, about=b.anchor()))
            logger.info("second region perturbed by %g (seed %d)", perturb, seed)
        result = intersect_regions(a, b, tol=tolerances)
        report = is_centrally_symmetric_result(result, tolerances=tolerances)
    except GeometryError as exc:
        raise CliError(f"intersection failed: {exc}") from exc

    if result.kind is ResultKind.NONCOMPACT:
        head = f"Noncompact, ideal points: {result.ideal.component_count}"
    else:
        head = result.describe()
    print(f"{head}, {_describe_verdict(report)}")
    if report.certificate:
        print_colored(f"  {report.certificate}", Colors.DIM)

    if emit_svg:
        write_text(emit_svg, render_intersection(a, b, result, report))
    if emit_report:
        doc = IntersectionDocument(
            tool_version=__version__,
            space=spec_a.space,
            classification=result.kind.value,
            arc_count=result.polygon.arc_count if result.is_compact else None,
            ideal_points=result.ideal.describe() if result.kind is ResultKind.NONCOMPACT else None,
            verdict=report.verdict.value,
            center=polar_of(report.center) if report.center is not None else None,
            residual=report.residual,
            certificate=report.certificate,
        )
        write_text(emit_report, doc.to_json())
    return 0


def cmd_render(scene_file: str, out_svg: str) -> int:
    write_text(out_svg, render_scene(load_scene(scene_file)))
    return 0
