import logging

from celery import shared_task

from algebras.payloads import algebra_from_payload, algebra_payload
from core.exceptions import HomAlgebraError

logger = logging.getLogger(__name__)

__all__ = ['algebra_from_payload', 'algebra_payload', 'scan_partition_task']


@shared_task(bind=True)
def scan_partition_task(self, payload, weight, kind, start, stop, max_results=None):
    """
    Scan candidate operator matrices whose first row index lies in [start, stop)
    """
    from .enumeration import scan_first_rows

    try:
        algebra = algebra_from_payload(payload)
        logger.info(f"Scanning first rows [{start}, {stop}) of {kind} candidates on {algebra.name}")
        found, scanned = scan_first_rows(algebra, algebra.field.coerce(weight), kind, start, stop, max_results)
        return {"status": "ok", "operators": [list(r) for r in found], "scanned": scanned,
                "start": start, "stop": stop}

    except (HomAlgebraError, ValueError) as e:
        logger.error(f"Error scanning partition [{start}, {stop}): {str(e)}")
        return {"status": "error", "error_type": type(e).__name__, "message": str(e),
                "start": start, "stop": stop}
