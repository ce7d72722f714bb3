"""
Readers and writers for set and plan files.

Set text: one decimal integer per line, strictly ascending, '#' comments and
blank lines ignored, an optional "# limit: N" header fixing the window.
Set JSON and plan JSON follow SetDocument and PlanDocument.
"""

import json
import re
from pathlib import Path
from typing import List, Optional, Tuple, Type, TypeVar, Union

from pydantic import BaseModel, ValidationError

from devolved._core.construction import BlockPlan
from devolved._core.errors import SetFormatError
from devolved._core.sets import IntegerSet

from .schemas import PlanDocument, SetDocument, dump_json

PathLike = Union[str, Path]
D = TypeVar("D", bound=BaseModel)

_LIMIT_RE = re.compile(r"^#\s*limit\s*:\s*(\S+)\s*$", re.IGNORECASE)


def parse_set_text(text: str, source: Optional[str] = None) -> IntegerSet:
    """
    Parse the line-based set format.

    Raises:
        SetFormatError: On a non-integer, negative, out-of-order or out-of-window
                        line, naming its 1-based line number
    """
    limit: Optional[int] = None
    values: List[Tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            match = _LIMIT_RE.match(line)
            if match:
                if limit is not None:
                    raise SetFormatError("duplicate limit header", line=lineno, source=source)
                try:
                    limit = int(match.group(1))
                except ValueError:
                    raise SetFormatError(f"limit is not an integer: {match.group(1)!r}", line=lineno, source=source)
                if limit < 0:
                    raise SetFormatError(f"limit must be non-negative, got {limit}", line=lineno, source=source)
            continue
        token = line.split("#", 1)[0].strip()
        try:
            value = int(token)
        except ValueError:
            raise SetFormatError(f"not an integer: {token!r}", line=lineno, source=source)
        if value < 0:
            raise SetFormatError(f"members must be non-negative, got {value}", line=lineno, source=source)
        if values and value <= values[-1][1]:
            raise SetFormatError(
                f"members must be strictly ascending ({value} after {values[-1][1]})",
                line=lineno,
                source=source,
            )
        values.append((lineno, value))

    if limit is None:
        limit = values[-1][1] if values else 0
    for lineno, value in values:
        if value > limit:
            raise SetFormatError(f"member {value} exceeds limit {limit}", line=lineno, source=source)
    return IntegerSet.from_members((v for _, v in values), limit=limit)


def format_set_text(S: IntegerSet) -> str:
    lines = [f"# limit: {S.limit}"]
    lines.extend(str(m) for m in S)
    return "\n".join(lines) + "\n"


def _parse_document(text: str, model: Type[D], source: Optional[str]) -> D:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SetFormatError(f"invalid JSON: {e.msg}", line=e.lineno, source=source)
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise SetFormatError(f"{model.__name__}: {where}: {first['msg']}", source=source)


def parse_set_json(text: str, source: Optional[str] = None) -> IntegerSet:
    return _parse_document(text, SetDocument, source).to_set()


def format_set_json(S: IntegerSet) -> str:
    return dump_json(SetDocument.from_set(S))


def plan_from_json(text: str, source: Optional[str] = None) -> BlockPlan:
    """Parse plan JSON and rebuild the plan (invariants re-checked)."""
    return _parse_document(text, PlanDocument, source).to_plan()


def plan_to_json(plan: BlockPlan) -> str:
    return dump_json(PlanDocument.from_plan(plan))


def _is_json(path: Path) -> bool:
    return path.suffix.lower() == ".json"


def load_set(path: PathLike) -> IntegerSet:
    """Read a set file; '.json' files use the run format, anything else the text format."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if _is_json(path):
        return parse_set_json(text, source=str(path))
    return parse_set_text(text, source=str(path))


def save_set(S: IntegerSet, path: PathLike) -> None:
    path = Path(path)
    text = format_set_json(S) if _is_json(path) else format_set_text(S)
    path.write_text(text, encoding="utf-8")


def load_plan(path: PathLike) -> BlockPlan:
    path = Path(path)
    return plan_from_json(path.read_text(encoding="utf-8"), source=str(path))


def save_plan(plan: BlockPlan, path: PathLike) -> None:
    Path(path).write_text(plan_to_json(plan), encoding="utf-8")
