from pydantic import BaseModel, ConfigDict


class FrozenModel(BaseModel):
    """
    모든 도메인 타입의 공통 설정을 정의
    값 객체이므로 생성 후 변경할 수 없습니다.
    """

    model_config = ConfigDict(frozen=True)
