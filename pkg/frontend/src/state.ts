import { AdvisorClient, ApiError } from "./api.js";
import type {
  Actual,
  ArmRow,
  OutcomeResponse,
  Recommendation,
  StepLogEntry,
} from "./types.js";

export interface ChartPoint {
  step: number;
  average: number;
}

/**
 * Everything the page renders. Arm rows, the tested log, and the chart
 * series hold server-response values verbatim; the client never
 * recomputes rewards or averages.
 */
export interface SessionView {
  sessionId: string | null;
  policy: string | null;
  status: "idle" | "active" | "completed";
  modules: string[];
  tested: string[];
  recommendation: Recommendation | null;
  armRows: ArmRow[];
  testedLog: StepLogEntry[];
  series: Map<string, ChartPoint[]>;
  error: string | null;
  busy: boolean;
}

export function initialView(): SessionView {
  return {
    sessionId: null,
    policy: null,
    status: "idle",
    modules: [],
    tested: [],
    recommendation: null,
    armRows: [],
    testedLog: [],
    series: new Map(),
    error: null,
    busy: false,
  };
}

export function remainingModules(view: SessionView): string[] {
  const tested = new Set(view.tested);
  return view.modules.filter((moduleId) => !tested.has(moduleId));
}

function appendSeriesPoints(view: SessionView, outcome: OutcomeResponse): void {
  for (const [modelId, average] of Object.entries(outcome.averages)) {
    const points = view.series.get(modelId) ?? [];
    points.push({ step: outcome.step, average });
    view.series.set(modelId, points);
  }
}

/**
 * Drives one advisor session: thin orchestration between the HTTP client
 * and the view. Submissions are rejected while a request is in flight.
 */
export class AdvisorController {
  view: SessionView = initialView();

  constructor(
    private client: AdvisorClient,
    private onChange: (view: SessionView) => void = () => {},
  ) {}

  private emit(): void {
    this.onChange(this.view);
  }

  private fail(err: unknown): void {
    this.view.busy = false;
    this.view.error = err instanceof Error ? err.message : String(err);
    this.emit();
  }

  async newSession(policy?: string): Promise<void> {
    if (this.view.busy) {
      return;
    }
    this.view = initialView();
    this.view.busy = true;
    this.emit();
    try {
      const created = await this.client.createSession(policy);
      this.view.sessionId = created.session_id;
      this.view.policy = created.policy;
      this.view.modules = created.modules;
      this.view.status = created.status === "completed" ? "completed" : "active";
      await this.refreshRecommendation();
      this.view.busy = false;
      this.emit();
    } catch (err) {
      this.fail(err);
    }
  }

  /** Fetch the next recommendation; no-op once the session is completed. */
  async refreshRecommendation(): Promise<void> {
    if (this.view.sessionId === null || this.view.status !== "active") {
      return;
    }
    this.view.recommendation = await this.client.recommendation(this.view.sessionId);
  }

  async submitOutcome(moduleId: string, actual: Actual): Promise<void> {
    if (this.view.busy || this.view.sessionId === null || this.view.status !== "active") {
      return;
    }
    this.view.busy = true;
    this.view.error = null;
    this.emit();
    try {
      const outcome = await this.client.submitOutcome(this.view.sessionId, moduleId, actual);
      this.view.armRows = outcome.arms;
      appendSeriesPoints(this.view, outcome);
      this.view.status = outcome.status === "completed" ? "completed" : "active";

      // poll the authoritative state after the mutation: tested set and
      // log render exactly what the server reports
      const state = await this.client.state(this.view.sessionId);
      this.view.tested = state.tested;
      this.view.testedLog = state.step_log;
      this.view.armRows = state.arms;

      if (this.view.status === "active") {
        await this.refreshRecommendation();
      } else {
        this.view.recommendation = null;
      }
      this.view.busy = false;
      this.emit();
    } catch (err) {
      this.fail(err);
    }
  }
}

export function isRejection(error: string | null): boolean {
  return error !== null;
}

export { ApiError };
