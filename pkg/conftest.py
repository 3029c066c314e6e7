import pytest


def pytest_addoption(parser: pytest.Parser) -> None:
    parser.addoption(
        "--full-tables",
        action="store_true",
        default=False,
        help="M=10 000 시뮬레이션 표 전체를 재현하는 테스트를 실행합니다 (수십 분 소요).",
    )


@pytest.hookimpl(tryfirst=True)
def pytest_collection_modifyitems(config: pytest.Config, items: list[pytest.Item]) -> None:
    """full_tables 마커가 붙은 테스트는 --full-tables 없이 건너뜁니다.

    기본 테스트는 M=1000 이하의 데스크 규모 실험만 사용합니다.
    전체 표 재현은 다음과 같이 실행하세요:
      uv run pytest lldpd/tests/test_simulation.py --full-tables -v
    """
    if config.getoption("--full-tables"):
        return

    skip = pytest.mark.skip(reason="--full-tables 옵션이 필요합니다.")
    for item in items:
        if "full_tables" in item.keywords:
            item.add_marker(skip)
