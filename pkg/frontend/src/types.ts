export type FaultLabel = "FP" | "NFP";
export type Actual = "faulty" | "clean";

export interface CreateSessionResponse {
  session_id: string;
  policy: string;
  models: string[];
  modules: string[];
  module_count: number;
  status: string;
}

export interface Recommendation {
  module_id: string;
  prediction: FaultLabel;
  model_id: string;
}

export interface ArmRow {
  model_id: string;
  pulls: number;
  cumulative_reward: number;
  average_reward: number;
}

export interface OutcomeResponse {
  step: number;
  module_id: string;
  actual: Actual;
  rewards: Record<string, number>;
  averages: Record<string, number>;
  arms: ArmRow[];
  status: string;
}

export interface StepLogEntry {
  step: number;
  module_id: string;
  actual: Actual;
  recommended_model: string | null;
  used_prediction: FaultLabel | null;
  rewards: Record<string, number>;
  averages: Record<string, number>;
}

export interface SessionStateResponse {
  session_id: string;
  policy: string;
  status: string;
  tested: string[];
  arms: ArmRow[];
  step_log: StepLogEntry[];
}
