// Shapes of the documents the HTTP API exchanges. The UI renders these
// verbatim; it never recomputes a score or weight locally.

export interface QuestionDoc {
  id: string;
  text: string;
  layers: string[];
}

export interface CriterionDoc {
  id: string;
  name: string;
  dimension: "functional" | "non-functional";
  description: string;
  questions: QuestionDoc[];
  notes?: string;
}

export interface CatalogDoc {
  schema_version: number;
  criteria: CriterionDoc[];
}

export interface ResponseDoc {
  assessor_id: string;
  question_id: string;
  value: number;
  recorded_at: string;
}

export interface SnapshotDoc {
  id: string;
  label: string | null;
  created_at: string;
  responses: ResponseDoc[];
}

export interface ProjectDoc {
  id: string;
  name: string;
  platform_name: string;
  platform_description: string;
  selected_criteria: string[];
  responses: ResponseDoc[];
  snapshots: SnapshotDoc[];
  version: number;
}

export interface CriterionScoreDoc {
  criterion_id: string;
  raw: number;
  normalized: number;
  coverage: number;
}

export interface LayerScoreDoc {
  score: number;
  raw: number;
  coverage: number;
}

export interface ReportDoc {
  project_id: string;
  criteria: CriterionScoreDoc[];
  layers: Record<string, LayerScoreDoc>;
  generated_at: string | null;
}

export interface JudgmentDoc {
  i: string;
  j: string;
  value: number | string;
}

export interface RankingInputDoc {
  id?: string;
  name?: string;
  criteria: string[];
  criteria_judgments: JudgmentDoc[];
  platforms: string[];
  platform_judgments: Record<string, JudgmentDoc[]>;
}

export interface ConsistencyDoc {
  lambda_max: number;
  ci: number;
  cr: number;
  flagged: boolean;
}

export interface RankingRowDoc {
  platform: string;
  composite_weight: number;
  rank: number;
}

export interface RankingResultDoc {
  id?: string;
  criteria: string[];
  platforms: string[];
  criteria_priorities: Record<string, number>;
  platform_priorities: Record<string, Record<string, number>>;
  composite: Record<string, number>;
  ranking: RankingRowDoc[];
  consistency: Record<string, ConsistencyDoc>;
}

export interface KiviatSeriesDoc {
  platform: string;
  values: { criterion: string; weight: number }[];
}

export interface ApiErrorBody {
  code: string;
  message: string;
  details?: { field: string; message: string }[];
}

export interface ProjectSummaryDoc {
  id: string;
  name: string | null;
  version: number;
  updated_at: string;
}

export interface DraftEnvelopeDoc {
  id: string;
  version: number;
  document: Record<string, unknown>;
}
