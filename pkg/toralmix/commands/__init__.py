"""
Shared plumbing for the command blueprints.

Every command reads one JSON payload (standard input or ``--input FILE``),
resolves its settings with the precedence command-line flag, then payload
``options``, then application config, calls one engine operation and writes
one JSON report to standard output. ``--verbose`` adds a one-line summary on
standard error.
"""
import logging
import time
from typing import Any, Callable, Dict, Optional

import click
from flask import current_app

from toralmix.errors import ContractViolation, VerificationError
from toralmix.forms.job import JobDescription, parse_payload
from toralmix.models.families import FamilyKind
from toralmix.utils.serialize import dumps

logger = logging.getLogger(__name__)

# Option name -> app config key holding its default
CONFIG_DEFAULTS = {
    'max_exponent': 'MAX_EXPONENT',
    'seed': 'DEFAULT_SEED',
    'height': 'DEFAULT_HEIGHT',
    'horizon': 'DEFAULT_HORIZON',
    'min_hits': 'DEFAULT_MIN_HITS',
    'word_len': 'DEFAULT_WORD_LEN',
    'cap': 'ORBIT_CAP',
    'samples': 'MC_SAMPLES',
}

FLAGS = {
    'max_exponent': click.option('--max-exponent', type=click.IntRange(min=1), help='Also check every exponent up to N.'),
    'seed': click.option('--seed', type=click.IntRange(min=0), help='Random seed.'),
    'height': click.option('--height', type=click.IntRange(min=1), help='Oracle tuple height H.'),
    'horizon': click.option('--horizon', type=click.IntRange(min=1), help='Oracle horizon N.'),
    'min_hits': click.option('--min-hits', type=click.IntRange(min=1), help='Exact zeros required by the oracle.'),
    'word_len': click.option('--word-len', type=click.IntRange(min=0), help='Longest word examined.'),
    'residue': click.option('--residue', type=click.IntRange(min=0), help='Single residue class for limit.'),
    'workers': click.option('--workers', type=click.IntRange(min=1), help='Worker processes.'),
    'samples': click.option('--samples', type=click.IntRange(min=1), help='Monte Carlo sample count.'),
    'order': click.option('--order', type=click.IntRange(min=2), help='Mixing order for higher-order search.'),
    'cap': click.option('--cap', type=click.IntRange(min=1), help='Orbit size cap.'),
    'kind': click.option('--kind', type=click.Choice([k.value for k in FamilyKind]), help='Family kind for gen-example.'),
    'n': click.option('--n', 'n', type=click.IntRange(min=0), help='Time n for oracle-mc.'),
    'depth': click.option('--depth', type=click.IntRange(min=1), help='Replay depth for verify-cert.'),
    'grid': click.option('--grid', type=click.IntRange(min=1, max=4096), help='Grid points per axis for a numeric estimate.'),
}


class ContractError(click.ClickException):
    """Reports a ContractViolation raised by the engine."""
    exit_code = 3


class VerificationFailed(click.ClickException):
    """Reports a failed runtime re-check of a computed claim."""
    exit_code = 1


class JobSettings:
    """
    Resolves a setting from command-line flags, then payload options, then
    application config.
    """

    def __init__(self, flags: Dict[str, Any], options: Dict[str, Any], config):
        self.flags = flags
        self.options = options
        self.config = config

    def get(self, name: str, config_key: Optional[str] = None, default: Any = None) -> Any:
        if self.flags.get(name) is not None:
            return self.flags[name]
        if self.options.get(name) is not None:
            return self.options[name]
        key = config_key or CONFIG_DEFAULTS.get(name)
        if key is not None and self.config.get(key) is not None:
            return self.config[key]
        return default

    def flag(self, name: str) -> bool:
        return bool(self.flags.get(name)) or bool(self.options.get(name))


def job_command(blueprint, name: str, *flag_names: str):
    """
    Register ``name`` on the blueprint's CLI with ``--input``, ``--timing``,
    ``--verbose`` and the listed flags.
    """
    def decorator(func):
        wrapped = func
        for flag in reversed(flag_names):
            wrapped = FLAGS[flag](wrapped)
        wrapped = click.option('--verbose', is_flag=True, help='Summary on standard error.')(wrapped)
        wrapped = click.option('--timing/--no-timing', default=None, help='Include wall-clock timing.')(wrapped)
        wrapped = click.option('--input', 'input_file', type=click.File('r'), default='-',
                               help='Payload file; standard input when omitted.')(wrapped)
        return blueprint.cli.command(name)(wrapped)
    return decorator


def _summary(command: str, report: Dict[str, Any]) -> str:
    verdict = report.get('verdict')
    if verdict is None:
        shown = {k: v for k, v in report.items() if k not in ('command', 'timing_seconds')}
        verdict = ', '.join(f'{k}={v}' for k, v in sorted(shown.items()) if not isinstance(v, (list, dict)))
    return f"{command}: {verdict}"


def run_job(
    command: str,
    handler: Callable[[JobDescription, JobSettings], Dict[str, Any]],
    input_file,
    flags: Dict[str, Any],
    require_matrices: bool = True,
):
    """
    Parse the payload, run ``handler`` and emit its report.

    Args:
        command: The subcommand name, recorded in the report
        handler: Maps a job and its settings to a report dictionary
        input_file: Open payload stream
        flags: Command-line values; ``timing`` and ``verbose`` are consumed here
        require_matrices: Whether the payload must carry matrices

    Raises:
        PayloadError: Malformed payload (exit status 2)
        ContractError: The engine rejected the input (exit status 3)
        VerificationFailed: A runtime re-check failed (exit status 1)
    """
    flags = dict(flags)
    verbose = flags.pop('verbose', False)
    timing = flags.pop('timing', None)
    try:
        text = '' if input_file.isatty() else input_file.read()
        job = parse_payload(text, command, require_matrices)
        settings = JobSettings(flags, job.options, current_app.config)
        started = time.perf_counter()
        report = {'command': command, **handler(job, settings)}
        elapsed = time.perf_counter() - started
    except ContractViolation as exc:
        logger.error(f"{command}: {exc}")
        raise ContractError(str(exc))
    except VerificationError as exc:
        logger.error(f"{command}: verification failed: {exc}")
        raise VerificationFailed(f"verification failed: {exc}")
    include_timing = current_app.config.get('REPORT_TIMING', False) if timing is None else timing
    if include_timing:
        report['timing_seconds'] = round(elapsed, 6)
    click.echo(dumps(report))
    if verbose:
        click.echo(_summary(command, report), err=True)
    logger.info(f"{command} finished in {elapsed:.3f}s")
