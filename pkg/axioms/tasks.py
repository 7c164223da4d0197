import logging

from celery import shared_task

from algebras.payloads import algebra_from_payload, operator_from_payload
from core.exceptions import HomAlgebraError

logger = logging.getLogger(__name__)


@shared_task(bind=True)
def check_partition_task(self, payload, operator, axiom, start, stop, limit=None):
    """
    Check an operator identity on the basis tuples whose first index lies in [start, stop)
    """
    from .partitions import check_operator_span

    try:
        algebra = algebra_from_payload(payload)
        logger.info(f"Checking {axiom} on first indices [{start}, {stop}) of {algebra.name}")
        report = check_operator_span(algebra, operator_from_payload(operator, algebra.field),
                                     axiom, start, stop, limit)
        return {"status": "ok", "report": report.to_document(), "start": start, "stop": stop}

    except (HomAlgebraError, ValueError) as e:
        logger.error(f"Error checking partition [{start}, {stop}): {str(e)}")
        return {"status": "error", "error_type": type(e).__name__, "message": str(e),
                "start": start, "stop": stop}
