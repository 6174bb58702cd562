"""
Decision Commands Blueprint for Toral Mix

This module registers the exact decision procedures as flask CLI commands:

- ergodic:     root-of-unity eigenvalue test for each map
- mixing-set:  stabilized relation kernel over the exponent set
- mixing-pair: quotient on which two powers agree
- commuting:   ratio criterion for pairwise-commuting maps
- joint:       mixing of the family together with the identity
- precheck:    spectral shortcuts before the kernel computation
- subsets:     inclusion-minimal non-mixing subsets

The blueprint has no URL routes and no command group, so each command is a
top-level ``flask`` subcommand.
"""
from flask import Blueprint

from toralmix.commands import job_command, run_job
from toralmix.engine.mixing import (
    commuting_family_mixing, commuting_pair_criterion, exponent_set, is_ergodic, is_mixing_set,
    jointly_mixing, minimal_non_mixing_subsets, pair_quotient_witness, spectral_precheck,
)
from toralmix.errors import ContractViolation

decide_bp = Blueprint('decide', __name__, cli_group=None)


def _ergodic(job, settings):
    per_map = [is_ergodic(t) for t in job.family]
    return {'ergodic': all(per_map), 'per_map': per_map}


@job_command(decide_bp, 'ergodic')
def ergodic(input_file, **flags):
    """Report whether each map is ergodic."""
    run_job('ergodic', _ergodic, input_file, flags)


def _mixing_set(job, settings):
    max_exponent = settings.get('max_exponent')
    verdict = is_mixing_set(job.family, max_exponent, settings.get('workers', 'MIXING_WORKERS', 1))
    report = verdict.to_dict()
    if not verdict.is_mixing:
        report['exponents_checked'] = [l for l in exponent_set(job.family.dim, max_exponent) if l <= verdict.exponent]
    return report


@job_command(decide_bp, 'mixing-set', 'max_exponent', 'workers')
def mixing_set(input_file, **flags):
    """Decide whether the set of maps is mixing and emit a certificate if not."""
    run_job('mixing-set', _mixing_set, input_file, flags)


def _mixing_pair(job, settings):
    if job.family.size != 2:
        raise ContractViolation(f"mixing-pair needs exactly two maps, got {job.family.size}")
    max_exponent = settings.get('max_exponent')
    witness = pair_quotient_witness(job.family[0], job.family[1], max_exponent)
    if witness is None:
        return {'verdict': 'Mixing', 'exponents_checked': list(exponent_set(job.family.dim, max_exponent))}
    return witness.to_dict()


@job_command(decide_bp, 'mixing-pair', 'max_exponent')
def mixing_pair(input_file, **flags):
    """Find a quotient on which powers of the two maps agree, or report the pair mixing."""
    run_job('mixing-pair', _mixing_pair, input_file, flags)


def _commuting(job, settings):
    family = job.family
    if family.size == 2:
        mixing = commuting_pair_criterion(family[0], family[1])
    else:
        mixing = commuting_family_mixing(family)
    return {'verdict': 'Mixing' if mixing else 'NotMixing', 'rule': 'commuting_ratio'}


@job_command(decide_bp, 'commuting')
def commuting(input_file, **flags):
    """Decide mixing of pairwise-commuting maps by the ratio criterion."""
    run_job('commuting', _commuting, input_file, flags)


def _joint(job, settings):
    return {'jointly_mixing': jointly_mixing(job.family, settings.get('max_exponent'))}


@job_command(decide_bp, 'joint', 'max_exponent')
def joint(input_file, **flags):
    """Decide whether the maps together with the identity form a mixing set."""
    run_job('joint', _joint, input_file, flags)


def _precheck(job, settings):
    return spectral_precheck(job.family, settings.get('max_exponent')).to_dict()


@job_command(decide_bp, 'precheck', 'max_exponent')
def precheck(input_file, **flags):
    """Run the spectral shortcuts without computing relation kernels."""
    run_job('precheck', _precheck, input_file, flags)


def _subsets(job, settings):
    found = minimal_non_mixing_subsets(job.family, settings.get('max_exponent'))
    return {'minimal_non_mixing': [list(s) for s in found], 'mixing': not found}


@job_command(decide_bp, 'subsets', 'max_exponent')
def subsets(input_file, **flags):
    """List the inclusion-minimal non-mixing subsets."""
    run_job('subsets', _subsets, input_file, flags)
