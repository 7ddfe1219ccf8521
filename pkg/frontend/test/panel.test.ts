// @vitest-environment jsdom
/**
 * Command-panel round trip against the real service on the fast clock:
 * clicking "rice" must surface an accepted toast and, after advancing,
 * a MovingToScoop state badge.
 */

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { createPanel, type Panel } from "../src/panel.js";
import { AppState } from "../src/state.js";
import { startServer, type TestServer } from "./server.js";

let server: TestServer;
let api: ApiClient;

beforeAll(async () => {
  server = await startServer();
  api = new ApiClient(server.baseUrl);
});

afterAll(() => server?.stop());

async function waitFor(check: () => boolean, ms = 5000): Promise<void> {
  const deadline = Date.now() + ms;
  while (!check()) {
    if (Date.now() > deadline) throw new Error("condition never became true");
    await new Promise((r) => setTimeout(r, 25));
  }
}

describe("command panel round trip", () => {
  it("click rice -> accepted toast -> MovingToScoop badge", async () => {
    await api.startSession({ clock: "fast", seed: 0 });
    await api.advance(0.1); // produce an initial frame
    const menu = await api.menu();

    const state = new AppState();
    const panel: Panel = createPanel(document, api, state, menu);
    document.body.appendChild(panel.root);

    const init = await api.state();
    state.applyFrame(init.frame!);
    expect(panel.root.querySelector(".state-badge")!.textContent).toBe("Idle");

    const riceBtn = panel.root.querySelector<HTMLButtonElement>('[data-slot="rice"]')!;
    expect(riceBtn).not.toBeNull();
    riceBtn.click();

    const toast = panel.root.querySelector<HTMLElement>(".toast")!;
    await waitFor(() => toast.textContent !== "");
    expect(toast.textContent).toContain('heard "rice"');
    expect(toast.textContent).toContain("matched serve:rice");
    expect(toast.textContent).toContain("accepted");

    await api.advance(2.0);
    const after = await api.state();
    expect(after.state).toBe("MovingToScoop");
    state.applyFrame(after.frame!);
    expect(panel.root.querySelector(".state-badge")!.textContent).toBe("MovingToScoop");

    // the emergency button is mounted and one click away in every state
    expect(panel.root.querySelector(".emergency-button")).not.toBeNull();

    await api.endSession();
  });

  it("stop click rejected gracefully when nothing is running", async () => {
    await api.startSession({ clock: "fast", seed: 1 });
    await api.advance(0.1);
    const menu = await api.menu();
    const state = new AppState();
    const panel = createPanel(document, api, state, menu);

    panel.root.querySelector<HTMLButtonElement>(".stop-button")!.click();
    const toast = panel.root.querySelector<HTMLElement>(".toast")!;
    await waitFor(() => toast.textContent !== "");
    expect(toast.textContent).toContain("matched stop");

    await api.endSession();
  });
});
