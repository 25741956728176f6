import { ApiClient, ApiError } from "./api.js";
import type { CatalogDoc, CriterionDoc, ProjectDoc, QuestionDoc } from "./types.js";

export interface WizardPage {
  criterion: CriterionDoc;
  questions: QuestionDoc[];
}

export type RateOutcome = "ok" | "conflict";

/**
 * Single-platform rating wizard: one page per selected criterion, a row of
 * seven radio options per leading question. Every answer posts immediately
 * with the last seen server version; a 409 response surfaces as "conflict"
 * so the caller can prompt a refresh-and-merge. Unanswered questions never
 * block navigation — they just lower the report's coverage.
 */
export class SingleWizardController {
  readonly pages: WizardPage[];
  stepIndex = 0;
  private version: number;
  private ratings = new Map<string, number>();

  constructor(
    private readonly api: ApiClient,
    private project: ProjectDoc,
    catalog: CatalogDoc,
    readonly assessor: string,
  ) {
    const selected = new Set(project.selected_criteria);
    this.pages = catalog.criteria
      .filter((c) => selected.has(c.id))
      .map((c) => ({ criterion: c, questions: c.questions }));
    this.version = project.version;
    this.absorbResponses(project);
  }

  private absorbResponses(project: ProjectDoc): void {
    this.ratings.clear();
    for (const response of project.responses) {
      if (response.assessor_id === this.assessor) {
        this.ratings.set(response.question_id, response.value);
      }
    }
  }

  get projectId(): string {
    return this.project.id;
  }

  get serverVersion(): number {
    return this.version;
  }

  page(): WizardPage {
    const page = this.pages[this.stepIndex];
    if (!page) throw new Error(`step index ${this.stepIndex} out of range`);
    return page;
  }

  get totalSteps(): number {
    return this.pages.length;
  }

  get isLastStep(): boolean {
    return this.stepIndex === this.pages.length - 1;
  }

  next(): boolean {
    if (this.isLastStep) return false;
    this.stepIndex += 1;
    return true;
  }

  prev(): boolean {
    if (this.stepIndex === 0) return false;
    this.stepIndex -= 1;
    return true;
  }

  ratingFor(questionId: string): number | undefined {
    return this.ratings.get(questionId);
  }

  get totalQuestions(): number {
    return this.pages.reduce((n, page) => n + page.questions.length, 0);
  }

  get answeredCount(): number {
    return this.ratings.size;
  }

  /** Post one rating; the server state is authoritative on success. */
  async rate(questionId: string, value: number): Promise<RateOutcome> {
    try {
      this.project = await this.api.postResponse(this.project.id, {
        assessor: this.assessor,
        question: questionId,
        value,
        expected_version: this.version,
      });
    } catch (error) {
      if (error instanceof ApiError && error.isConflict) return "conflict";
      throw error;
    }
    this.version = this.project.version;
    this.absorbResponses(this.project);
    return "ok";
  }

  /** Refetch after a conflict; local state is rebuilt from the server copy. */
  async reload(): Promise<void> {
    this.project = await this.api.getProject(this.project.id);
    this.version = this.project.version;
    this.absorbResponses(this.project);
  }
}
