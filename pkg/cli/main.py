"""
Command line interface: root datum reports and lifts of residual Galois data.

Exit codes: 0 all checks passed, 1 invalid input, 2 a hypothesis of the method failed, 3 internal invariant
violation. Reports are JSON on stdout (or a text rendering with --text) and are also written to $REPORT_DIR
when that variable is set.
"""

import json
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

import click
import pandas as pd
from dotenv import load_dotenv

from config import LIFTING_PARAMS_PATH, TOOL_VERSION
from errors import HypothesisError, InputError, InvariantViolation
from cli.schemas import (BalaCarterRow, ErrorInfo, GoodForType, GroupRepInput, LiftPayload, ReportEnvelope,
                         RootDatumPayload)
from lifting.pipeline import assemble_mr_lift
from lifting.residual import ResidualGaloisData
from primes.prime_report import build_prime_report
from representation.decomposition import good_for_type_check
from roots.balacarter import bala_carter_data
from roots.cartan_type import CartanType
from roots.root_datum import IsogenyClass, build_root_datum, center_and_pi1
from roots.subsystems import MAX_ENUMERATION_RANK

load_dotenv(dotenv_path=LIFTING_PARAMS_PATH)
DEFAULT_PRECISION = int(os.getenv("LIFT_DEFAULT_PRECISION", "3"))
DEFAULT_SEED = int(os.getenv("LIFT_DEFAULT_SEED", "0"))

EXIT_OK, EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_INVARIANT = 0, 1, 2, 3


def _run(command: str, input_echo: dict, seed: int | None, timing: bool,
         body: Callable[[], RootDatumPayload | LiftPayload]) -> ReportEnvelope:
    """Runs body and wraps its payload, or the error it raised, in an envelope."""
    start = time.perf_counter()
    payload, error, code = None, None, EXIT_OK
    try:
        payload = body()
    except InputError as err:
        error, code = ErrorInfo(kind="input", message=str(err)), EXIT_INPUT
    except HypothesisError as err:
        error, code = ErrorInfo(kind="hypothesis", hypothesis=err.hypothesis, message=err.message), EXIT_HYPOTHESIS
    except InvariantViolation as err:
        error, code = ErrorInfo(kind="invariant", message=str(err)), EXIT_INVARIANT
    return ReportEnvelope(tool_version=TOOL_VERSION, command=command, input=input_echo, seed=seed,
                          timing=round(time.perf_counter() - start, 4) if timing else None,
                          exit_code=code, error=error, payload=payload)


def _write_report(envelope: ReportEnvelope, stem: str):
    report_dir = os.getenv("REPORT_DIR")
    if report_dir:
        os.makedirs(report_dir, exist_ok=True)
        safe_stem = re.sub(r"[^A-Za-z0-9_.+-]", "_", stem)
        with open(os.path.join(report_dir, f"{envelope.command}-{safe_stem}.json"), "w") as f:
            f.write(envelope.model_dump_json(indent=2) + "\n")


def _emit(envelopes: list[tuple[ReportEnvelope, str]], as_json: bool):
    """Writes and echoes each envelope in order, then exits with the worst exit code."""
    for envelope, stem in envelopes:
        _write_report(envelope, stem)
        click.echo(envelope.model_dump_json(indent=2) if as_json else render_text(envelope))
    sys.exit(max(envelope.exit_code for envelope, _ in envelopes))


def _table(rows: list[dict]) -> str:
    return pd.DataFrame(rows).to_string(index=False) if rows else "(none)"


def render_text(envelope: ReportEnvelope) -> str:
    """Human readable rendering; matrices are left out."""
    lines = [f"{envelope.command} (tool {envelope.tool_version}), exit code {envelope.exit_code}"]
    if envelope.timing is not None:
        lines.append(f"elapsed: {envelope.timing} s")
    if envelope.error:
        tag = f" [{envelope.error.hypothesis}]" if envelope.error.hypothesis else ""
        lines.append(f"error ({envelope.error.kind}){tag}: {envelope.error.message}")
    payload = envelope.payload
    if isinstance(payload, RootDatumPayload):
        summary = {k: v for k, v in payload.model_dump().items() if k not in ("primes", "bala_carter")}
        summary.update({k: v for k, v in payload.primes.items() if k not in ("bullets", "notes")})
        lines.append(_table([{"field": k, "value": v} for k, v in summary.items()]))
        lines.append("")
        lines.append(_table([{"condition": k, "holds": v} for k, v in payload.primes["bullets"].items()]))
        lines.extend(f"note: {note}" for note in payload.primes["notes"])
        lines.append("")
        lines.append(_table([row.model_dump(include={"name", "marking", "dim_l0", "dim_l2", "fallback"})
                             for row in payload.bala_carter]))
    elif isinstance(payload, LiftPayload):
        lines.append(f"precision {payload.precision}, good for type: {payload.good_for_type.ok} "
                     f"(bound {payload.good_for_type.bound}, {payload.good_for_type.note})")
        if payload.synthetic:
            lines.append("q = 1: synthetic presentation")
        lines.append(_table(payload.decomposition["blocks"]))
        if payload.verification:
            checks = {k: v for k, v in payload.verification.items() if isinstance(v, bool)}
            lines.append("")
            lines.append(_table([{"check": k, "passed": v} for k, v in checks.items()]))
            lines.append(f"residual h0: {payload.verification['residual_h0']}, centralizer rank "
                         f"{payload.verification['centralizer_rank_residual']} / {payload.verification['centralizer_rank_lift']}")
    return "\n".join(lines)


def root_datum_payload(type_string: str, isogeny: str | None) -> RootDatumPayload:
    """Root datum, prime conditions and Bala-Carter labels for a type string."""
    t = CartanType.parse(type_string)
    if t.semisimple_rank > MAX_ENUMERATION_RANK:
        raise InputError(f"semisimple rank {t.semisimple_rank} exceeds the supported maximum {MAX_ENUMERATION_RANK}")
    flag = isogeny or ("preset" if t.gl_preset is not None else "sc")
    d = build_root_datum(t, IsogenyClass.from_flag(flag))
    report = build_prime_report(d)
    invariants = center_and_pi1(d)
    labels = bala_carter_data(d.root_system, d.central_rank)
    rows = [BalaCarterRow(name=label.name, levi=label.levi.type_name,
                          levi_simple_roots=[j + 1 for j in label.levi.simple_indices],
                          i_subset=[j + 1 for j in label.i_subset], marking=label.marking,
                          dim_l0=label.dims[0], dim_l2=label.dims[1], fallback=label.fallback) for label in labels]
    return RootDatumPayload(type=str(t), isogeny=d.isogeny.short_name, rank=d.x_rank,
                            semisimple_rank=d.semisimple_rank, weyl_order=report.weyl_order,
                            center_torsion=list(invariants.center_torsion), pi1_torsion=list(invariants.pi1_torsion),
                            primes=report.to_json(), cG=report.cG, effective_min_p=report.effective_min_p,
                            bala_carter=rows)


def parse_z(text: str | None) -> list[int] | None:
    """'1,6' -> [1, 6]: one integer per isotypic block."""
    if text is None:
        return None
    try:
        return [int(part) for part in text.split(",")]
    except ValueError as err:
        raise InputError(f"--z expects comma separated integers, got '{text}'") from err


def lift_payload(raw: dict, precision: int | None, seed: int, z: str | None) -> LiftPayload:
    """Decomposition type, good-for-type verdict and the verified lift of one GroupRep input."""
    parsed = GroupRepInput.parse(raw)
    rep = parsed.to_group_rep()
    k = next(value for value in (precision, parsed.k, DEFAULT_PRECISION) if value is not None)
    data = ResidualGaloisData.from_rep(rep, seed)
    ok, bound = good_for_type_check(data.decomposition, rep.p)
    lift = assemble_mr_lift(data, k, seed, parse_z(z))
    return LiftPayload(precision=k, decomposition=data.decomposition.summary(),
                       good_for_type=GoodForType(ok=ok, bound=bound), synthetic=rep.is_synthetic,
                       lift=lift.to_json(), verification=lift.verification.to_json())


@click.group()
def cli():
    """Root datum prime conditions and minimally ramified lifts."""


@cli.command("root-datum")
@click.option("--type", "type_string", required=True, help='Type string, e.g. "G2", "A1xB2+T1", "GLn(3)".')
@click.option("--isogeny", type=click.Choice(["sc", "ad", "preset"]), default=None,
              help="Isogeny class (default: preset for GLn(m), sc otherwise).")
@click.option("--json/--text", "as_json", default=True, help="JSON report (default) or text rendering.")
@click.option("--timing", is_flag=True, help="Record the elapsed time in the report.")
def cmd_root_datum(type_string: str, isogeny: str | None, as_json: bool, timing: bool):
    envelope = _run("root-datum", {"type": type_string, "isogeny": isogeny}, None, timing,
                    lambda: root_datum_payload(type_string, isogeny))
    _emit([(envelope, type_string)], as_json)


def _read_input(path: str):
    try:
        with open(path) as f:
            return json.load(f)
    except json.JSONDecodeError as err:
        raise InputError(f"{path} is not valid JSON: {err}") from err


def lift_envelope(input_path: str, precision: int | None, seed: int, z_spec: str | None,
                  timing: bool) -> ReportEnvelope:
    """The lift report of one input file; module level so worker processes can run it."""
    echo = {}

    def body() -> LiftPayload:
        raw = _read_input(input_path)
        echo.update(raw if isinstance(raw, dict) else {"raw": raw})
        return lift_payload(raw, precision, seed, z_spec)

    return _run("lift", echo, seed, timing, body)


@cli.command("lift")
@click.option("--input", "input_paths", required=True, multiple=True, type=click.Path(exists=True, dir_okay=False),
              help="GroupRep JSON file; repeat for several files.")
@click.option("--precision", type=int, default=None, help="Precision k (default: the file's k, then lifting.params).")
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--z", "z_spec", default=None, help="Inertial-type twist, one integer per isotypic block, e.g. 1,6.")
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True,
              help="Worker processes when several files are given.")
@click.option("--json/--text", "as_json", default=True)
@click.option("--timing", is_flag=True)
def cmd_lift(input_paths: tuple[str, ...], precision: int | None, seed: int, z_spec: str | None, jobs: int,
             as_json: bool, timing: bool):
    args = [(path, precision, seed, z_spec, timing) for path in input_paths]
    if jobs > 1 and len(input_paths) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            envelopes = list(pool.map(lift_envelope, *zip(*args)))
    else:
        envelopes = [lift_envelope(*a) for a in args]
    stems = [os.path.splitext(os.path.basename(path))[0] for path in input_paths]
    _emit(list(zip(envelopes, stems)), as_json)


if __name__ == "__main__":
    cli()
