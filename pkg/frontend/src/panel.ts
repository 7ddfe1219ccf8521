/**
 * Command panel: one button per food slot, always-visible stop and
 * emergency buttons, a free transcript input (the stand-in for speech),
 * a presence toggle, the heard/matched/accepted toast, the state badge,
 * and the running latency readout.
 */

import type { ApiClient, MenuInfo, TranscriptResult } from "./api.js";
import type { AppState } from "./state.js";

export interface Panel {
  root: HTMLElement;
  /** Re-render badge and latency readout from the current state. */
  refresh(): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className: string,
  text = "",
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  node.className = className;
  if (text) node.textContent = text;
  return node;
}

export function createPanel(
  doc: Document,
  api: ApiClient,
  state: AppState,
  menu: MenuInfo,
): Panel {
  const root = el(doc, "div", "panel");
  const badge = el(doc, "div", "state-badge", "—");
  const toast = el(doc, "div", "toast", "");
  const latency = el(doc, "div", "latency-meter", "latency: —");

  const showToast = (r: TranscriptResult) => {
    toast.textContent =
      `heard "${r.heard}" · matched ${r.matched ?? "nothing"} · ` +
      (r.accepted ? "accepted" : `rejected (${r.reason ?? "?"})`);
    toast.dataset.accepted = String(r.accepted);
  };

  const send = async (text: string) => {
    const result = await api.transcript(text);
    showToast(result);
    if (result.accepted && result.matched?.startsWith("serve:")) {
      state.markSubmitted(result.matched);
    }
    return result;
  };

  const foods = el(doc, "div", "food-buttons");
  for (const slot of menu.slots) {
    const btn = el(doc, "button", "food-button", slot.name);
    btn.dataset.slot = slot.name;
    btn.addEventListener("click", () => void send(slot.name));
    foods.appendChild(btn);
  }

  const stop = el(doc, "button", "stop-button", "stop");
  stop.addEventListener("click", () => void send("stop"));
  const emergency = el(doc, "button", "emergency-button", "EMERGENCY");
  emergency.addEventListener("click", () => void send("emergency"));

  const input = el(doc, "input", "transcript-input") as HTMLInputElement;
  input.placeholder = "type a voice transcript…";
  input.addEventListener("keydown", (ev) => {
    if ((ev as KeyboardEvent).key === "Enter" && input.value.trim()) {
      void send(input.value);
      input.value = "";
    }
  });

  const presence = el(doc, "input", "presence-toggle") as HTMLInputElement;
  presence.type = "checkbox";
  presence.addEventListener("change", () => void api.presence(presence.checked));
  const presenceLabel = el(doc, "label", "presence-label", "user present");
  presenceLabel.prepend(presence);

  root.append(badge, foods, stop, emergency, input, presenceLabel, toast, latency);

  const refresh = () => {
    badge.textContent = state.badge();
    const mean = state.meanLatency();
    latency.textContent =
      mean === null
        ? "latency: —"
        : `latency: ${mean.toFixed(2)} s mean over ${state.latencies.length}`;
  };
  state.onFrame(refresh);

  return { root, refresh };
}
