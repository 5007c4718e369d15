"""sdcat: subshifts, block maps, and the twelve symbolic categories."""

from .core import (
    BlockMap,
    EventuallyPeriodicPoint,
    PeriodicPoint,
    Presentation,
    apply_map,
    compose,
    full_shift,
    golden_mean,
    identity_map,
    make_block_map,
    make_presentation,
    maps_equal,
    mirror_map,
    mirror_presentation,
    recode_to_symbol_map,
)

__all__ = [
    "BlockMap",
    "EventuallyPeriodicPoint",
    "PeriodicPoint",
    "Presentation",
    "apply_map",
    "compose",
    "full_shift",
    "golden_mean",
    "identity_map",
    "make_block_map",
    "make_presentation",
    "maps_equal",
    "mirror_map",
    "mirror_presentation",
    "recode_to_symbol_map",
]

__version__ = "0.1.0"
