import logging
import math

from django.conf import settings

from common.exceptions import SizeLimitError

logger = logging.getLogger(__name__)


def check_pairing_k(k: int) -> None:
    """Refuse to enumerate pairings beyond ``ORTHO_MAX_PAIRING_K``."""
    cap = settings.ORTHO_MAX_PAIRING_K
    if k > cap:
        logger.warning("Pairing enumeration for k=%s refused (cap %s)", k, cap)
        raise SizeLimitError(
            f"k={k} exceeds the pairing enumeration cap k <= {cap} "
            f"(ORTHO_MAX_PAIRING_K)",
            setting="ORTHO_MAX_PAIRING_K",
            limit=cap,
        )


def check_dense_entries(n: int, m: int) -> None:
    """Refuse dense tensors with more than ``ORTHO_DENSE_ENTRY_CAP`` entries."""
    cap = settings.ORTHO_DENSE_ENTRY_CAP
    entries = n**m
    if entries > cap:
        logger.warning("Dense tensor n=%s m=%s refused (%s entries)", n, m, entries)
        raise SizeLimitError(
            f"dense tensor with n={n}, m={m} needs {entries} entries, over the "
            f"cap of {cap} (ORTHO_DENSE_ENTRY_CAP)",
            setting="ORTHO_DENSE_ENTRY_CAP",
            limit=cap,
        )


def check_combination_terms(terms: int) -> None:
    """Refuse combinations longer than the (2k-1)!! pairings at the cap k."""
    k_cap = settings.ORTHO_MAX_PAIRING_K
    cap = math.prod(range(2 * k_cap - 1, 0, -2))
    if terms > cap:
        logger.warning("Combination with %s terms refused (cap %s)", terms, cap)
        raise SizeLimitError(
            f"{terms} invariant terms exceed the cap of {cap}, the pairing count "
            f"at k={k_cap} (ORTHO_MAX_PAIRING_K)",
            setting="ORTHO_MAX_PAIRING_K",
            limit=cap,
        )
