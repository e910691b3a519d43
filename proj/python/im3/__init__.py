from ._core import (
    run_curve,
    count_triple,
    lpoly_from_counts,
    shortcut_inert,
    split_type,
    class_number,
    class_number_one_discs,
    signature_report,
    ec_ap,
    find_matching_curve,
    Im3Error,
)

__all__ = [
    "run_curve",
    "count_triple",
    "lpoly_from_counts",
    "shortcut_inert",
    "split_type",
    "class_number",
    "class_number_one_discs",
    "signature_report",
    "ec_ap",
    "find_matching_curve",
    "Im3Error",
]
