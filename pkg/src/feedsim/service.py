"""HTTP + WebSocket service hosting one session.

One tick-loop owner advances the controller (a background thread in
realtime mode, explicit /advance calls in fast mode); request handlers
only queue commands and read immutable frames. Schemas are documented in
API.md at the repository root.
"""

from __future__ import annotations

import asyncio
import threading
import time
from dataclasses import asdict

from fastapi import FastAPI, HTTPException, WebSocket, WebSocketDisconnect
from fastapi.responses import HTMLResponse, PlainTextResponse
from pydantic import BaseModel

from .commands import EmergencyStop, PresenceOverride, Serve, Stop
from .controller import ControllerError, ControllerState
from .model import default_menu_path, default_model_path
from .session import Session, SessionConfig, frame_to_dict

TELEMETRY_POLL_S = 0.01


class SessionRequest(BaseModel):
    model_path: str | None = None
    menu_path: str | None = None
    trace_path: str | None = None
    clock: str = "fast"
    seed: int = 0
    dt: float = 0.02


class TranscriptRequest(BaseModel):
    text: str


class CommandRequest(BaseModel):
    kind: str  # "serve" | "stop" | "emergency_stop" | "presence"
    slot: str | None = None
    present: bool | None = None


class PresenceRequest(BaseModel):
    present: bool


class AdvanceRequest(BaseModel):
    seconds: float


class ServiceState:
    """Owns the single session plus the realtime ticker thread."""

    def __init__(self):
        self.session: Session | None = None
        self.lock = threading.Lock()
        self._ticker: threading.Thread | None = None
        self._ticker_stop = threading.Event()

    def start(self, req: SessionRequest) -> dict:
        with self.lock:
            if self.session is not None:
                raise HTTPException(409, "a session is already active")
            try:
                cfg = SessionConfig(
                    model_path=req.model_path or default_model_path(),
                    menu_path=req.menu_path or default_menu_path(),
                    trace_path=req.trace_path,
                    clock=req.clock,
                    seed=req.seed,
                    dt=req.dt,
                )
                self.session = Session(cfg)
            except (FileNotFoundError, ValueError) as exc:
                raise HTTPException(422, str(exc)) from exc
            if req.clock == "realtime":
                self._ticker_stop.clear()
                self._ticker = threading.Thread(target=self._tick_loop, daemon=True)
                self._ticker.start()
            elif self.session.trace is not None:
                # Fast clock over a scripted trace: run it out immediately.
                self.session.run_until(self.session.trace.end_time)
            return {"session_id": 1, "state": self.session.controller.state.value}

    def stop_session(self) -> None:
        with self.lock:
            self._ticker_stop.set()
            self.session = None

    def _tick_loop(self) -> None:
        while not self._ticker_stop.is_set():
            with self.lock:
                session = self.session
                if session is None:
                    return
                session.step()
                dt = session.dt
            time.sleep(dt)

    def require(self) -> Session:
        if self.session is None:
            raise HTTPException(409, "no active session")
        return self.session


def create_app(state: ServiceState | None = None) -> FastAPI:
    app = FastAPI(title="feedsim")
    svc = state or ServiceState()
    app.state.svc = svc

    @app.post("/session")
    def post_session(req: SessionRequest):
        return svc.start(req)

    @app.delete("/session")
    def delete_session():
        svc.stop_session()
        return {"ok": True}

    @app.post("/transcript")
    def post_transcript(req: TranscriptRequest):
        with svc.lock:
            return svc.require().submit_transcript(req.text)

    @app.post("/command")
    def post_command(req: CommandRequest):
        cmd = _build_command(req)
        with svc.lock:
            accepted, reason = svc.require().submit(cmd)
        return {"accepted": accepted, "reason": reason}

    @app.post("/presence")
    def post_presence(req: PresenceRequest):
        with svc.lock:
            accepted, reason = svc.require().submit(PresenceOverride(req.present))
        return {"accepted": accepted, "reason": reason}

    @app.post("/advance")
    def post_advance(req: AdvanceRequest):
        if req.seconds <= 0:
            raise HTTPException(422, "seconds must be > 0")
        with svc.lock:
            session = svc.require()
            if session.cfg.clock != "fast":
                raise HTTPException(409, "advance only applies to the fast clock")
            session.run_until(session.now + req.seconds)
            return {"now": session.now, "state": session.controller.state.value}

    @app.post("/reset")
    def post_reset():
        with svc.lock:
            try:
                svc.require().controller.reset()
            except ControllerError as exc:
                raise HTTPException(409, str(exc)) from exc
        return {"ok": True}

    @app.get("/state")
    def get_state():
        with svc.lock:
            session = svc.require()
            frame = session.frames[-1] if session.frames else None
            return {
                "now": session.now,
                "state": session.controller.state.value,
                "serves_completed": session.controller.serves_completed,
                "frame": frame_to_dict(frame) if frame else None,
            }

    @app.get("/menu")
    def get_menu():
        with svc.lock:
            session = svc.require()
            return {
                "slots": [
                    {
                        "name": s.name,
                        "synonyms": s.synonyms,
                        "scoop_q": [float(v) for v in s.scoop_q],
                        "approach_q": [float(v) for v in s.approach_q],
                    }
                    for s in session.menu.slots.values()
                ],
                "mouth_q": [float(v) for v in session.menu.mouth_q],
                "idle_q": [float(v) for v in session.menu.idle_q],
                "dh_rows": [asdict(r) for r in session.model.dh_rows],
                "timing": asdict(session.menu.timing),
            }

    @app.get("/telemetry.csv")
    def get_telemetry_csv():
        with svc.lock:
            return PlainTextResponse(svc.require().csv_text(), media_type="text/csv")

    @app.websocket("/telemetry")
    async def telemetry_socket(ws: WebSocket):
        await ws.accept()
        with svc.lock:
            session = svc.require()
            idx = len(session.frames)
            snapshot = session.frames[-1] if session.frames else None
        if snapshot is not None:
            await ws.send_json(frame_to_dict(snapshot))
        try:
            while True:
                with svc.lock:
                    if svc.session is not session:
                        break
                    new = session.frames[idx:]
                    idx = len(session.frames)
                for fr in new:
                    await ws.send_json(frame_to_dict(fr))
                await asyncio.sleep(TELEMETRY_POLL_S)
        except WebSocketDisconnect:
            pass

    @app.get("/", response_class=HTMLResponse)
    def index():
        return "<html><body><h1>feedsim</h1><p>See API.md for endpoints.</p></body></html>"

    return app


def _build_command(req: CommandRequest):
    if req.kind == "serve":
        if not req.slot:
            raise HTTPException(422, "serve requires a slot name")
        return Serve(req.slot)
    if req.kind == "stop":
        return Stop()
    if req.kind == "emergency_stop":
        return EmergencyStop()
    if req.kind == "presence":
        if req.present is None:
            raise HTTPException(422, "presence requires 'present'")
        return PresenceOverride(req.present)
    raise HTTPException(422, f"unknown command kind {req.kind!r}")


app = create_app()
