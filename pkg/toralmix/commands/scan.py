"""
Scan Commands Blueprint for Toral Mix

Commands for correlation limits, bounded group scans and the example
families:

- limit:       exact correlation limits along residue classes
- group-scan:  search for an infinite-order element with a root-of-unity eigenvalue
- orbit-scan:  closure of a character under the dual maps
- gen-example: build and verify one of the counterexample families
"""
import logging

from flask import Blueprint

from toralmix.commands import job_command, run_job
from toralmix.engine.families import (
    ALPHA, BETA, fixtures, gen_block_triangular, gen_eisenstein_poly, gen_epi_family, gen_unipotent_family,
    lorentz_generators,
)
from toralmix.engine.groups import conjugate_family, dual_orbit_scan, group_mixing_scan
from toralmix.engine.limits import progression_limits, spec2_exponent, trigpoly_limit
from toralmix.engine.oracle import cesaro_correlation
from toralmix.errors import ContractViolation
from toralmix.forms.job import PayloadError, parse_matrix
from toralmix.models.episet import EpiSet
from toralmix.models.families import FamilyKind, FamilySpec

logger = logging.getLogger(__name__)

scan_bp = Blueprint('scan', __name__, cli_group=None)


def _limit(job, settings):
    if not job.functions:
        raise PayloadError("limit needs 'functions' or 'characters'")
    residue = settings.get('residue')
    if residue is None:
        report = progression_limits(job.family, job.functions).to_dict()
    else:
        l = spec2_exponent(job.family)
        if residue >= l:
            raise ContractViolation(f"Residue {residue} is not below the modulus {l}")
        report = {'modulus': l, 'residue': residue, 'value': trigpoly_limit(job.family, job.functions, residue, l)}
    grid = settings.get('grid')
    if grid is not None:
        horizon = settings.get('horizon')
        report['numeric_cesaro'] = cesaro_correlation(job.family, job.functions, horizon, grid)
        report['numeric_horizon'] = horizon
    return report


@job_command(scan_bp, 'limit', 'residue', 'grid', 'horizon')
def limit(input_file, **flags):
    """Exact limits of the correlation sequence along each residue class."""
    run_job('limit', _limit, input_file, flags)


def _group_scan(job, settings):
    word_len = settings.get('word_len')
    return group_mixing_scan(job.family, word_len, settings.flag('use_inverses')).to_dict()


@job_command(scan_bp, 'group-scan', 'word_len')
def group_scan(input_file, **flags):
    """Look for a group element of infinite order with a root-of-unity eigenvalue."""
    run_job('group-scan', _group_scan, input_file, flags)


def _orbit_scan(job, settings):
    if job.chi is None:
        raise PayloadError("orbit-scan needs 'chi'")
    return dual_orbit_scan(job.family, job.chi, settings.get('cap')).to_dict()


@job_command(scan_bp, 'orbit-scan', 'cap')
def orbit_scan(input_file, **flags):
    """Close a character under the dual maps and report a finite orbit."""
    run_job('orbit-scan', _orbit_scan, input_file, flags)


def _family_spec(job, settings) -> FamilySpec:
    kind = settings.get('kind')
    if kind is None:
        raise PayloadError("gen-example needs a family kind (--kind or options.kind)")
    kind = FamilyKind.parse(kind)
    extra = {k: settings.get(k) for k in ('d2', 'count') if settings.get(k) is not None}
    return FamilySpec(kind, settings.get('d', default=2), settings.get('s'), settings.get('q'), extra)


def _gen_example(job, settings):
    spec = _family_spec(job, settings)
    logger.info(f"Generating {spec.kind.value} family")
    report = {'kind': spec.kind.value}
    if spec.kind is FamilyKind.EISENSTEIN_POLY:
        report['polynomial'] = gen_eisenstein_poly(spec.d, spec.q).to_dict()
        return report
    if spec.kind is FamilyKind.UNIPOTENT_SHARP:
        family = gen_unipotent_family(spec.d, spec.s or spec.d + 1)
    elif spec.kind is FamilyKind.EPI_SHARP:
        family = gen_epi_family(spec.d, spec.s or spec.d + 1, spec.q)
    elif spec.kind is FamilyKind.BLOCK_TRIANGULAR:
        family = gen_block_triangular(spec.d, spec.extra.get('d2', spec.d))
    elif spec.kind is FamilyKind.CONJUGATE:
        gamma = parse_matrix(job.extra['gamma'], 'gamma') if 'gamma' in job.extra else ALPHA
        delta = parse_matrix(job.extra['delta'], 'delta') if 'delta' in job.extra else BETA
        family = conjugate_family(gamma, delta, spec.extra.get('count', 3))
    elif spec.kind is FamilyKind.LORENTZ:
        family = EpiSet.of(lorentz_generators(3, spec.extra.get('count', 2)))
    else:
        family = fixtures()['st' if spec.kind is FamilyKind.ROTATIONS_ST else 'scaled_sl']
    report.update(family.to_dict())
    return report


@job_command(scan_bp, 'gen-example', 'kind')
def gen_example(input_file, **flags):
    """Build one of the example families; the payload holds only options."""
    run_job('gen-example', _gen_example, input_file, flags, require_matrices=False)
