/**
 * Console entry point: dial the service, fetch the menu, mount the command
 * panel and both arm views, and repaint on every streamed frame.
 *
 * Configuration is a single base URL (?api=http://host:port, default
 * http://127.0.0.1:8000).
 */

import { ApiClient } from "./api.js";
import { createPanel } from "./panel.js";
import { drawProjection, menuMarkers, sideView, topView } from "./render.js";
import { AppState } from "./state.js";

async function boot(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const api = new ApiClient(params.get("api") ?? "http://127.0.0.1:8000");
  const state = new AppState();

  try {
    await api.startSession({ clock: "realtime" });
  } catch {
    // A session is already running (e.g. service started with autostart).
  }
  const menu = await api.menu();
  const markers = menuMarkers(menu);

  const panel = createPanel(document, api, state, menu);
  document.getElementById("panel")!.appendChild(panel.root);

  const topCtx = (document.getElementById("top-view") as HTMLCanvasElement).getContext("2d")!;
  const sideCtx = (document.getElementById("side-view") as HTMLCanvasElement).getContext("2d")!;

  state.onFrame((frame) => {
    drawProjection(topCtx, topView(menu.dh_rows, frame), markers);
    drawProjection(sideCtx, sideView(menu.dh_rows, frame));
  });

  api.openTelemetry((frame) => state.applyFrame(frame));
}

void boot();
