from __future__ import annotations

from typing import Optional

import uvicorn
from fastapi import FastAPI

from foonkit import __version__
from foonkit.features.corpus.router import router as corpus_router
from foonkit.features.recipegen.router import router as recipegen_router
from foonkit.features.retrieval.router import router as retrieval_router
from foonkit.features.root.router import router as root_router
from foonkit.features.stats.router import router as stats_router
from foonkit.logging import get_logger, setup_logging
from foonkit.settings import Settings, get_settings


def create_app(settings: Optional[Settings] = None) -> FastAPI:
    settings = settings or get_settings()
    setup_logging(settings)
    logger = get_logger()
    logger.debug("[APP] creating FastAPI application")

    app = FastAPI(title="foonkit", version=__version__)
    app.include_router(retrieval_router)
    app.include_router(recipegen_router)
    app.include_router(corpus_router)
    app.include_router(stats_router)
    app.include_router(root_router)
    return app


def run(host: Optional[str] = None, port: Optional[int] = None) -> None:
    settings = get_settings()
    uvicorn.run(
        "foonkit.main:create_app",
        factory=True,
        host=host or settings.api_host,
        port=port or settings.api_port,
    )


if __name__ == "__main__":
    run()
