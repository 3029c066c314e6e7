import logging

import typer

from lldpd.config.config import settings
from lldpd.routers import asymptotics as asymptotics_router
from lldpd.routers import fit as fit_router
from lldpd.routers import influence as influence_router
from lldpd.routers import simulate as simulate_router

# 문서는 stdout, 로그는 stderr
logging.basicConfig(
    level=settings.logging.level,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    handlers=[logging.StreamHandler()],
)
logger = logging.getLogger(__name__)

app = typer.Typer(
    help="로그-로지스틱 분포의 최소 밀도 거듭제곱 발산 추정(MDPDE) 도구",
    no_args_is_help=True,
    add_completion=False,
)

app.command(name="fit")(fit_router.fit)
app.command(name="simulate")(simulate_router.simulate)
app.command(name="influence")(influence_router.influence)
app.command(name="asymptotics")(asymptotics_router.asymptotics_command)


if __name__ == "__main__":
    app()
