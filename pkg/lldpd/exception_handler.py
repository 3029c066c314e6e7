"""
라이브러리 전역 예외와 CLI 종료 코드 매핑.

CLI 계층(routers, main)은 아래 예외를 잡아 `exit_code`로 프로세스를 종료합니다.
라이브러리 계층(stats)은 예외를 던지기만 하고 종료 코드는 신경쓰지 않습니다.
"""

import logging
from enum import IntEnum

from pydantic import ValidationError

logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    ok = 0
    usage = 2
    parse = 3
    domain = 4
    convergence = 5


class LLDPDError(Exception):
    exit_code: ExitCode = ExitCode.domain

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class DomainError(LLDPDError, ValueError):
    """인자가 정의역을 벗어난 경우 (x <= 0, u ∉ (0,1), beta 함수 인자 <= 0 등)"""


class MomentDoesNotExistError(DomainError):
    """k >= β 인 적률은 존재하지 않습니다."""


class DegenerateSampleError(DomainError):
    """표본이 너무 짧거나 모든 값이 같아 추정이 정의되지 않는 경우"""


class ConditioningError(DomainError):
    """J 행렬이 특이(singular)하거나 양의 정부호가 아닌 경우"""


class IngestParseError(LLDPDError, ValueError):
    exit_code = ExitCode.parse

    def __init__(self, detail: str, line_no: int):
        super().__init__(f"{line_no}번째 줄: {detail}")
        self.line_no = line_no


class DataDomainError(DomainError):
    def __init__(self, detail: str, line_no: int):
        super().__init__(f"{line_no}번째 줄: {detail}")
        self.line_no = line_no


class ConvergenceError(LLDPDError):
    """CLI에서 하나 이상의 적합이 수렴하지 않았을 때 사용합니다. 결과 문서는 그대로 출력합니다."""

    exit_code = ExitCode.convergence

    def __init__(self, detail: str, document: str | None = None):
        super().__init__(detail)
        self.document = document


class UsageError(LLDPDError, ValueError):
    exit_code = ExitCode.usage


def exit_code_for(error: Exception, *, usage_validation: bool = False) -> ExitCode:
    """
    예외를 종료 코드로 변환합니다.
    pydantic ValidationError는 RunConfig 검증이면 usage, 그 외에는 domain으로 취급합니다.
    """
    if isinstance(error, LLDPDError):
        return error.exit_code
    if isinstance(error, ValidationError):
        return ExitCode.usage if usage_validation else ExitCode.domain
    logger.error("처리되지 않은 예외: %r", error)
    return ExitCode.domain
