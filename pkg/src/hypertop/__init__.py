"""Tychonoff-type hypertopologies on finite ground sets.

Subsets of ``X = {0..n-1}`` are bit masks wrapped in :class:`Subset`;
families of subsets are :class:`SubsetFamily` values in a fixed canonical
order, and topologies on a family ``M`` are stored as index masks over it.
"""

from .embed import *  # noqa: F401,F403
from .enumeration import *  # noqa: F401,F403
from .errors import (  # noqa: F401
    BaseError,
    CapExceeded,
    HypertopError,
    HypothesisError,
    InternalConsistencyError,
    UniverseMismatch,
)
from .hprops import *  # noqa: F401,F403
from .hypergen import *  # noqa: F401,F403
from .setcore import *  # noqa: F401,F403
from .tspaces import *  # noqa: F401,F403

__version__ = "0.1.0"
