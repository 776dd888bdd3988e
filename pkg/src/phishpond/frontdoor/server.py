"""FastAPI transport: websocket play channel, profile reads, static UI."""

from __future__ import annotations

import asyncio
import json
import secrets
from pathlib import Path

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from ..persistence import NotFound
from .protocol import Frontdoor


def create_app(
    frontdoor: Frontdoor,
    static_dir: Path | None = None,
    tick_interval: float = 1.0,
) -> FastAPI:
    app = FastAPI(title="phishpond")

    @app.websocket("/play")
    async def play(ws: WebSocket) -> None:
        await ws.accept()
        connection_id = f"conn-{secrets.token_hex(8)}"
        frontdoor.connect(connection_id)
        # One lock serializes game access and socket writes: the session
        # is single-writer even with the tick task running.
        lock = asyncio.Lock()

        async def ticker() -> None:
            while True:
                await asyncio.sleep(tick_interval)
                async with lock:
                    pushes = frontdoor.handle_tick(connection_id, tick_interval)
                    for message in pushes:
                        await ws.send_json(message)

        tick_task = asyncio.create_task(ticker()) if tick_interval else None
        try:
            while True:
                raw = await ws.receive_text()
                try:
                    msg = json.loads(raw)
                except json.JSONDecodeError:
                    msg = None
                async with lock:
                    replies = frontdoor.handle_message(connection_id, msg)
                    for message in replies:
                        await ws.send_json(message)
        except WebSocketDisconnect:
            pass
        finally:
            if tick_task is not None:
                tick_task.cancel()
            frontdoor.disconnect(connection_id)

    @app.get("/profile/{player_id}")
    async def profile(player_id: str):
        if frontdoor.profile_store is None:
            return JSONResponse({"error": "no data directory configured"}, status_code=404)
        try:
            data = frontdoor.profile_store.load(player_id).to_dict()
        except (NotFound, ValueError):
            return JSONResponse({"error": f"unknown player {player_id!r}"}, status_code=404)
        return JSONResponse(data)

    @app.get("/healthz")
    async def healthz():
        return {"ok": True}

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app


def run_server(
    frontdoor: Frontdoor,
    host: str = "127.0.0.1",
    port: int = 8000,
    static_dir: Path | None = None,
    tick_interval: float = 1.0,
) -> None:
    import uvicorn

    app = create_app(frontdoor, static_dir=static_dir, tick_interval=tick_interval)
    uvicorn.run(app, host=host, port=port, log_level="info")
