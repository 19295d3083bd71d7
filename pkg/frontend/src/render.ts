import type { SessionView } from "./state.js";

/**
 * Display-model builders: pure functions from the view to the strings the
 * DOM layer shows. Numeric cells are stringified server values, never
 * recomputed ones, so every digit on screen traces back to a response.
 */

export function recommendationHeadline(view: SessionView): string {
  if (view.status === "idle") {
    return "No session";
  }
  if (view.status === "completed") {
    return "Session completed";
  }
  if (view.recommendation === null) {
    return "Waiting for recommendation…";
  }
  const rec = view.recommendation;
  return `Test next: ${rec.module_id} — predicted ${rec.prediction} (model ${rec.model_id})`;
}

export function completionSummary(view: SessionView): string {
  if (view.status !== "completed") {
    return "";
  }
  const parts = view.armRows.map(
    (row) => `${row.model_id}: avg ${String(row.average_reward)} over ${String(row.pulls)} modules`,
  );
  return `All ${view.tested.length} modules tested. Final averages — ${parts.join(", ")}`;
}

export function armTableRows(view: SessionView): string[][] {
  return view.armRows.map((row) => [
    row.model_id,
    String(row.pulls),
    String(row.cumulative_reward),
    String(row.average_reward),
  ]);
}

export function logRows(view: SessionView): string[][] {
  const modelIds = view.armRows.map((row) => row.model_id);
  return view.testedLog.map((entry) => [
    String(entry.step),
    entry.module_id,
    entry.used_prediction ?? "—",
    entry.actual,
    ...modelIds.map((modelId) => String(entry.rewards[modelId])),
    ...modelIds.map((modelId) => String(entry.averages[modelId])),
  ]);
}

export function logHeader(view: SessionView): string[] {
  const modelIds = view.armRows.map((row) => row.model_id);
  return [
    "step",
    "module",
    "prediction used",
    "actual",
    ...modelIds.map((modelId) => `reward ${modelId}`),
    ...modelIds.map((modelId) => `avg ${modelId}`),
  ];
}

export function statusText(view: SessionView): string {
  if (view.status === "idle") {
    return "Create a session to start.";
  }
  const base = `session ${view.sessionId} (${view.policy}) — ${view.tested.length}/${view.modules.length} modules tested`;
  return view.busy ? `${base} — working…` : base;
}

export function errorBanner(view: SessionView): string | null {
  return view.error;
}
