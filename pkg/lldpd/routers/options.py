"""
명령들이 공유하는 CLI 옵션, 값 파싱, 출력 렌더링과 예외 → 종료 코드 처리.
"""

import logging
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Annotated, Optional

import pandas as pd
import typer
from pydantic import BaseModel, TypeAdapter, ValidationError

from lldpd.config.config import settings
from lldpd.exception_handler import (
    ConvergenceError,
    ExitCode,
    LLDPDError,
    UsageError,
    exit_code_for,
)
from lldpd.models.run_config import OutputFormat, RunConfig

logger = logging.getLogger(__name__)

TauOption = Annotated[
    Optional[list[str]],
    typer.Option("--tau", help="튜닝 모수 τ. 여러 번 지정하거나 쉼표로 구분합니다."),
]
BetaOption = Annotated[
    Optional[list[str]], typer.Option("--beta", help="형상 모수 β (반복 또는 쉼표 목록)")
]
AlphaOption = Annotated[float, typer.Option("--alpha", help="척도 모수 α")]
FormatOption = Annotated[
    Optional[str], typer.Option("--format", help="출력 형식: text | csv | json")
]
OutOption = Annotated[
    Optional[Path], typer.Option("--out", help="결과를 stdout 대신 이 파일에 씁니다.")
]


def split_values(values: Sequence[str] | None, cast: Callable[[str], float | int]) -> tuple:
    """반복 옵션과 쉼표 목록을 모두 받아 하나의 튜플로 펼칩니다."""
    if not values:
        return ()
    out = []
    for raw in values:
        for token in raw.split(","):
            token = token.strip()
            if not token:
                continue
            try:
                out.append(cast(token))
            except ValueError as e:
                raise UsageError(f"숫자로 읽을 수 없는 옵션 값입니다: '{token}'") from e
    return tuple(out)


def output_format(value: str | None) -> str:
    return value or settings.output.format


def render(
    records: Sequence[BaseModel],
    model: type[BaseModel],
    fmt: OutputFormat,
    decimals: int | None = None,
) -> str:
    """text 는 소수점 decimals 자리, csv 와 json 은 전체 정밀도로 렌더링합니다."""
    if fmt == OutputFormat.json:
        return TypeAdapter(list[model]).dump_json(list(records), indent=2).decode() + "\n"
    columns = list(model.model_fields)
    frame = pd.DataFrame.from_records(
        [record.model_dump(mode="json") for record in records], columns=columns
    )
    if fmt == OutputFormat.csv:
        return frame.to_csv(index=False)
    if frame.empty:
        return " ".join(columns) + "\n"
    decimals = settings.output.decimals if decimals is None else decimals
    return frame.to_string(index=False, na_rep="-", float_format=lambda v: f"{v:.{decimals}f}") + "\n"


def _emit(document: str, out: Path | None) -> None:
    if out is None:
        typer.echo(document, nl=False)
        return
    out.write_text(document, encoding="utf-8")
    logger.info("결과를 저장했습니다: %s", out)


def execute(build: Callable[[], RunConfig], runner: Callable[[RunConfig], str]) -> None:
    """
    RunConfig 를 만들고 명령을 실행합니다.
    설정 오류는 usage(2), 라이브러리 예외는 각 exit_code 로 종료합니다.
    """
    try:
        cfg = build()
    except (ValidationError, UsageError) as e:
        logger.error("잘못된 인자입니다: %s", e)
        raise typer.Exit(code=int(ExitCode.usage)) from e

    try:
        document = runner(cfg)
    except ConvergenceError as e:
        if e.document is not None:
            _emit(e.document, cfg.out)
        logger.error(e.detail)
        raise typer.Exit(code=int(e.exit_code)) from e
    except (LLDPDError, ValidationError) as e:
        code = exit_code_for(e)
        logger.error("%s 명령 실패 (exit=%d): %s", cfg.command, code, e)
        raise typer.Exit(code=int(code)) from e

    _emit(document, cfg.out)
