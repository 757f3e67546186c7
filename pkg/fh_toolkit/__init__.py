"""FH toolkit."""
import logging
import os
from typing import Optional

from .const import DEFAULT_SEARCH_BOUND, ENV_SEARCH_BOUND, MAX_SEARCH_BOUND
from .errors import SearchBoundExceeded

_LOGGER = logging.getLogger(__name__)


def get_search_bound(bound: Optional[int] = None) -> int:
    """Get the exhaustive search bound from an argument or the environment."""
    if bound is None and ENV_SEARCH_BOUND in os.environ:
        try:
            bound = int(os.environ[ENV_SEARCH_BOUND])
        except ValueError:
            _LOGGER.warning(
                f"Ignoring non-integer {ENV_SEARCH_BOUND}: "
                f"{os.environ[ENV_SEARCH_BOUND]!r}"
            )
    if bound is None:
        bound = DEFAULT_SEARCH_BOUND
    if bound > MAX_SEARCH_BOUND:
        raise SearchBoundExceeded(
            f"Search bound {bound} is beyond the hard limit {MAX_SEARCH_BOUND}"
        )
    return bound
