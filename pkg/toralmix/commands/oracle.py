"""
Oracle Commands Blueprint for Toral Mix

Independent cross-checks of the exact engine:

- oracle-search: bounded brute-force search for a character relation, or a
  higher-order relation among words when ``--order`` is given
- oracle-mc:     Monte Carlo estimate of a correlation at time n
- verify-cert:   replay a NotMixing certificate by exact matrix powering

A failed search is never a proof; its report says so.
"""
import logging
from fractions import Fraction

from flask import Blueprint

from toralmix.commands import job_command, run_job
from toralmix.engine.oracle import brute_force_relation_search, higher_order_refute, mc_correlation, verify_witness
from toralmix.errors import ContractViolation
from toralmix.forms.job import PayloadError

logger = logging.getLogger(__name__)

oracle_bp = Blueprint('oracle', __name__, cli_group=None)


def _oracle_search(job, settings):
    height, horizon, min_hits = settings.get('height'), settings.get('horizon'), settings.get('min_hits')
    bounds = {'height': height, 'horizon': horizon, 'min_hits': min_hits}
    order = settings.get('order')
    if order is not None:
        found = higher_order_refute(
            job.family, order, settings.get('word_len'), height, horizon,
            use_inverses=settings.flag('use_inverses'), min_hits=min_hits,
        )
        if found is None:
            return {'verdict': 'NoWitness', 'order': order, **bounds}
        return {**found.to_dict(), 'order': order, **bounds}
    witness = brute_force_relation_search(job.family, height, horizon, min_hits)
    if witness is None:
        return {'verdict': 'NoWitness', **bounds}
    return {'verdict': 'Witness', 'witness': [[str(x) for x in v] for v in witness], **bounds}


@job_command(oracle_bp, 'oracle-search', 'height', 'horizon', 'min_hits', 'order', 'word_len')
def oracle_search(input_file, **flags):
    """Brute-force search for a bounded character relation."""
    run_job('oracle-search', _oracle_search, input_file, flags)


def _oracle_mc(job, settings):
    if not job.boxes:
        raise PayloadError("oracle-mc needs 'boxes'")
    n = settings.get('n')
    if n is None:
        raise PayloadError("oracle-mc needs a time n (--n or options.n)")
    estimate = mc_correlation(
        job.family, n, job.boxes, settings.get('samples'), settings.get('seed'),
        settings.get('workers', 'MC_WORKERS', 1),
    )
    product = Fraction(1)
    for box in job.boxes:
        product *= box.measure
    return {**estimate.to_dict(), 'n': n, 'product_measure': product, 'seed': settings.get('seed')}


@job_command(oracle_bp, 'oracle-mc', 'n', 'samples', 'seed', 'workers')
def oracle_mc(input_file, **flags):
    """Monte Carlo estimate of the measure of the pulled-back box intersection."""
    run_job('oracle-mc', _oracle_mc, input_file, flags)


def _verify_cert(job, settings):
    if job.certificate is None:
        raise PayloadError("verify-cert needs 'certificate'")
    exponent = job.certificate['exponent']
    if exponent < 1:
        raise ContractViolation(f"Certificate exponent must be positive, got {exponent}")
    depth = settings.get('depth', 'DEFAULT_HORIZON')
    valid = verify_witness(job.family, exponent, job.certificate['witness'], depth)
    if not valid:
        logger.warning(f"Certificate fails within depth {depth}")
    return {'valid': valid, 'exponent': exponent, 'depth': depth}


@job_command(oracle_bp, 'verify-cert', 'depth')
def verify_cert(input_file, **flags):
    """Replay a NotMixing certificate against the maps in the payload."""
    run_job('verify-cert', _verify_cert, input_file, flags)
