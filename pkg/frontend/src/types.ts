/**
 * JSON shapes exchanged with the decision-model service.
 *
 * These mirror the service's documents exactly; the client never derives
 * anything from them beyond labels and declaration order.
 */

/** One row of `GET /models`. */
export interface ModelSummary {
  id: string;
  name: string;
  issueCount: number;
  alternativeCount: number;
}

export interface IssueDecl {
  id: string;
  label: string;
}

export interface AlternativeDecl {
  id: string;
  label: string;
  issue: string;
  triggers: string[];
}

/** Canonical model document (`GET /models/{id}`). */
export interface ModelDocument {
  name: string;
  issues: IssueDecl[];
  alternatives: AlternativeDecl[];
  incompatible: [string, string][];
}

/** A design maps issue ids to alternative ids; unresolved issues are absent. */
export type DesignDocument = Record<string, string>;

export interface MeaningResponse {
  designs: DesignDocument[];
  truncated: boolean;
}

export interface ConformityViolation {
  condition: string;
  message: string;
  witnesses: string[];
}

export interface ConformityResponse {
  conforms: boolean;
  violations: ConformityViolation[];
}

/** A choosable alternative for a pending issue, flagged when it only leads to dead ends. */
export interface AllowedOption {
  alternative: string;
  viable: boolean;
}

/** An alternative ruled out by an existing choice, with the choice that blocks it. */
export interface ExcludedOption {
  alternative: string;
  conflictsWith: string;
}

export interface SessionStatus {
  complete: boolean;
  viable: boolean;
  pendingCount: number;
}

/** Session resource returned by every session endpoint. */
export interface SessionResource {
  id: string;
  modelId: string;
  createdAt: number;
  choices: DesignDocument;
  pending: string[];
  allowed: Record<string, AllowedOption[]>;
  excluded: Record<string, ExcludedOption[]>;
  status: SessionStatus;
}

/** Error body shared by all non-2xx responses. */
export interface ErrorBody {
  error: string;
  detail: string;
  witnesses?: string[];
  [extra: string]: unknown;
}
