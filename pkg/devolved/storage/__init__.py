"""
Storage module for devolved.

Set and plan codecs plus the pydantic schemas of every artifact the CLI
reads or writes.
"""

from .schemas import (
    JSON_INDENT,
    dump_json,
    SetDocument,
    IntervalDocument,
    ProgressionDocument,
    PlanDocument,
    ReportDocument,
    EssentialityDocument,
    BoundDocument,
    ClaimDocument,
    SkippedDocument,
    VerifyDocument,
    E4Document,
    SumsetDocument,
    BasisCheckDocument,
    SpotCheckDocument,
)
from .codecs import (
    parse_set_text,
    format_set_text,
    parse_set_json,
    format_set_json,
    plan_from_json,
    plan_to_json,
    load_set,
    save_set,
    load_plan,
    save_plan,
)

__all__ = [
    # Schemas
    'JSON_INDENT',
    'dump_json',
    'SetDocument',
    'IntervalDocument',
    'ProgressionDocument',
    'PlanDocument',
    'ReportDocument',
    'EssentialityDocument',
    'BoundDocument',
    'ClaimDocument',
    'SkippedDocument',
    'VerifyDocument',
    'E4Document',
    'SumsetDocument',
    'BasisCheckDocument',
    'SpotCheckDocument',
    # Codecs
    'parse_set_text',
    'format_set_text',
    'parse_set_json',
    'format_set_json',
    'plan_from_json',
    'plan_to_json',
    'load_set',
    'save_set',
    'load_plan',
    'save_plan',
]
