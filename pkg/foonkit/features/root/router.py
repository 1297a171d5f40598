from __future__ import annotations

from fastapi import APIRouter

from foonkit import __version__

router = APIRouter()


@router.get("/health")
async def health():
    return {"service": "foonkit", "status": "alive", "version": __version__}
