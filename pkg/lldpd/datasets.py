"""
내장 데이터셋과 구분자 텍스트 입력.

flood-scotland: 스코틀랜드 연 최대 홍수량 31개 (387.8 은 이상값으로 보이는 관측).
"""

import logging
import math
import re
from pathlib import Path

from lldpd.exception_handler import DataDomainError, IngestParseError, UsageError
from lldpd.models.params import Sample

logger = logging.getLogger(__name__)

FLOOD_SCOTLAND: tuple[float, ...] = (
    89.8, 109.1, 202.2, 146.3, 212.3, 116.7, 109.1, 80.7, 127.4, 138.8, 283.5,
    85.6, 105.5, 118.0, 387.8, 80.7, 165.7, 111.6, 134.4, 131.5, 102.0, 104.3,
    242.5, 214.8, 144.6, 114.2, 98.3, 102.8, 104.3, 196.2, 143.7,
)  # fmt: skip
FLOOD_OUTLIER = 387.8
# 이상값을 다섯 배로 키운 극단 이상값 조건
FLOOD_EXTREME_OUTLIER = 1939.0

BUILTINS: dict[str, tuple[float, ...]] = {
    "flood-scotland": FLOOD_SCOTLAND,
    "flood-scotland-no-outlier": tuple(v for v in FLOOD_SCOTLAND if v != FLOOD_OUTLIER),
    "flood-scotland-extreme-outlier": tuple(
        FLOOD_EXTREME_OUTLIER if v == FLOOD_OUTLIER else v for v in FLOOD_SCOTLAND
    ),
}

_SEPARATORS = re.compile(r"[,\s]+")


def builtin(name: str) -> Sample:
    try:
        return Sample.of(BUILTINS[name])
    except KeyError as e:
        raise UsageError(
            f"알 수 없는 내장 데이터셋입니다: {name} (사용 가능: {', '.join(BUILTINS)})"
        ) from e


def parse_values(text: str) -> Sample:
    """
    한 줄에 하나 또는 쉼표/공백으로 구분된 여러 값을 읽습니다.
    '#' 으로 시작하는 줄과 빈 줄은 건너뜁니다.
    """
    values: list[float] = []
    line_no = 0
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        for token in _SEPARATORS.split(stripped):
            if not token:
                continue
            try:
                value = float(token)
            except ValueError as e:
                raise IngestParseError(f"숫자가 아닌 값입니다: '{token}'", line_no) from e
            if not math.isfinite(value) or value <= 0:
                raise DataDomainError(f"관측값은 유한한 양수여야 합니다: {token}", line_no)
            values.append(value)
    if not values:
        raise IngestParseError("읽을 수 있는 관측값이 없습니다.", line_no)
    return Sample.of(values)


def ingest(source: str | Path) -> Sample:
    """내장 데이터셋 이름 또는 파일 경로에서 표본을 읽습니다."""
    if isinstance(source, str) and source in BUILTINS:
        return builtin(source)
    path = Path(source)
    try:
        raw = path.read_bytes()
    except OSError as e:
        raise UsageError(f"데이터 파일을 읽을 수 없습니다: {path} ({e.strerror})") from e
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        line_no = raw[: e.start].count(b"\n") + 1
        raise IngestParseError("UTF-8 로 읽을 수 없는 바이트가 있습니다.", line_no) from e
    s = parse_values(text)
    logger.info("%s 에서 관측값 %d 개를 읽었습니다.", path, len(s))
    return s
