/**
 * Presentation index over a model document: labels and declaration order.
 *
 * This is the only model-derived data the client keeps.  It never inspects
 * compatibility or triggers — which buttons are enabled, pending, or in
 * conflict always comes from the service's session resource.
 */

import type { ModelDocument } from "./types.js";

export class ModelIndex {
  readonly name: string;
  readonly issueOrder: string[];
  private readonly issueLabels = new Map<string, string>();
  private readonly alternativeLabels = new Map<string, string>();
  private readonly byIssue = new Map<string, string[]>();

  constructor(doc: ModelDocument) {
    this.name = doc.name;
    this.issueOrder = doc.issues.map((issue) => issue.id);
    for (const issue of doc.issues) {
      this.issueLabels.set(issue.id, issue.label);
      this.byIssue.set(issue.id, []);
    }
    for (const alternative of doc.alternatives) {
      this.alternativeLabels.set(alternative.id, alternative.label);
      this.byIssue.get(alternative.issue)?.push(alternative.id);
    }
  }

  issueLabel(id: string): string {
    return this.issueLabels.get(id) ?? id;
  }

  alternativeLabel(id: string): string {
    return this.alternativeLabels.get(id) ?? id;
  }

  /** Alternative ids solving an issue, in declaration order. */
  alternativesOf(issue: string): string[] {
    return this.byIssue.get(issue) ?? [];
  }
}
