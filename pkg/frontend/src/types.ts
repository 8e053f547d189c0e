// Wire types mirroring the prediction service's HTTP contract.
// The UI renders exactly these fields; the only client-side transformation
// is percentage formatting.

export interface PredictResponse {
  decision_label: string;
  decision_scores: Record<string, number>;
  unanimity_label: string;
  unanimity_scores: Record<string, number>;
  preprocessed_token_count: number;
  oov_flag: boolean;
}

export interface HealthResponse {
  status: string;
  decision_model_sha256: string | null;
  unanimity_model_sha256: string | null;
  loaded_at: number | null;
}

export interface ModelDescription {
  task: string;
  classes: string[];
  vocabulary_size: number;
  min_df: number;
  train_config: Record<string, unknown>;
  labeler_rules_sha256: string;
  file_sha256: string;
}

export interface ModelInfoResponse {
  decision: ModelDescription;
  unanimity: ModelDescription;
}
