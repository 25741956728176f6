import { judgmentValue, type Direction } from "./judgments.js";
import type { JudgmentDoc, RankingInputDoc } from "./types.js";

export const CRITERIA_MATRIX = "criteria";

export interface PairPrompt {
  /** CRITERIA_MATRIX for the criteria-vs-criteria block, else the criterion id. */
  matrix: string;
  left: string;
  right: string;
}

export interface PairAnswer {
  phrase: string;
  direction: Direction;
}

function pairs(items: readonly string[]): [string, string][] {
  const out: [string, string][] = [];
  for (let i = 0; i < items.length; i += 1) {
    for (let j = i + 1; j < items.length; j += 1) {
      out.push([items[i]!, items[j]!]);
    }
  }
  return out;
}

/**
 * Pairwise-comparison wizard for the multi-platform mode. The prompt list is
 * fixed up front: every unordered criteria pair, then for each criterion every
 * unordered platform pair — k(k-1)/2 + k*m(m-1)/2 prompts in total. Submission
 * is impossible until every prompt has an answer; partially answered state
 * round-trips through the draft endpoints so a reload loses nothing.
 */
export class PairwiseWizard {
  readonly prompts: PairPrompt[];
  readonly answers = new Map<number, PairAnswer>();
  stepIndex = 0;
  draftId: string | null = null;
  draftVersion: number | null = null;

  constructor(
    readonly criteria: readonly string[],
    readonly platforms: readonly string[],
    readonly name = "",
  ) {
    if (criteria.length < 1) throw new Error("at least one criterion is required");
    if (platforms.length < 2) throw new Error("at least two platforms are required");
    this.prompts = [
      ...pairs(criteria).map(([left, right]) => ({ matrix: CRITERIA_MATRIX, left, right })),
      ...criteria.flatMap((criterion) =>
        pairs(platforms).map(([left, right]) => ({ matrix: criterion, left, right })),
      ),
    ];
  }

  get totalPrompts(): number {
    return this.prompts.length;
  }

  get answeredCount(): number {
    return this.answers.size;
  }

  /** Completeness gate: submit stays disabled until every judgment exists. */
  get canSubmit(): boolean {
    return this.answers.size === this.prompts.length;
  }

  prompt(): PairPrompt {
    const prompt = this.prompts[this.stepIndex];
    if (!prompt) throw new Error(`step index ${this.stepIndex} out of range`);
    return prompt;
  }

  answer(index: number, answer: PairAnswer): void {
    if (index < 0 || index >= this.prompts.length) {
      throw new Error(`prompt index ${index} out of range`);
    }
    this.answers.set(index, answer);
  }

  answerCurrent(answer: PairAnswer): void {
    this.answer(this.stepIndex, answer);
  }

  next(): boolean {
    if (this.stepIndex >= this.prompts.length - 1) return false;
    this.stepIndex += 1;
    return true;
  }

  prev(): boolean {
    if (this.stepIndex === 0) return false;
    this.stepIndex -= 1;
    return true;
  }

  goTo(index: number): void {
    if (index < 0 || index >= this.prompts.length) {
      throw new Error(`prompt index ${index} out of range`);
    }
    this.stepIndex = index;
  }

  /** Prompt indices belonging to one matrix, so a warning can link back to them. */
  promptIndicesFor(matrix: string): number[] {
    return this.prompts
      .map((prompt, index) => ({ prompt, index }))
      .filter(({ prompt }) => prompt.matrix === matrix)
      .map(({ index }) => index);
  }

  firstUnanswered(): number | null {
    for (let index = 0; index < this.prompts.length; index += 1) {
      if (!this.answers.has(index)) return index;
    }
    return null;
  }

  private judgmentsFor(matrix: string): JudgmentDoc[] {
    return this.promptIndicesFor(matrix).map((index) => {
      const prompt = this.prompts[index]!;
      const answer = this.answers.get(index);
      if (!answer) throw new Error(`prompt ${index} (${prompt.left} vs ${prompt.right}) unanswered`);
      return {
        i: prompt.left,
        j: prompt.right,
        value: judgmentValue(answer.phrase, answer.direction),
      };
    });
  }

  /** The complete ranking input; only callable once the gate is satisfied. */
  buildRankingInput(id?: string): RankingInputDoc {
    if (!this.canSubmit) {
      throw new Error(
        `cannot submit: ${this.totalPrompts - this.answeredCount} of ${this.totalPrompts} judgments missing`,
      );
    }
    const input: RankingInputDoc = {
      criteria: [...this.criteria],
      criteria_judgments: this.judgmentsFor(CRITERIA_MATRIX),
      platforms: [...this.platforms],
      platform_judgments: Object.fromEntries(
        this.criteria.map((criterion) => [criterion, this.judgmentsFor(criterion)]),
      ),
    };
    if (id) input.id = id;
    if (this.name) input.name = this.name;
    return input;
  }

  // -- draft persistence ----------------------------------------------------

  toDraft(): Record<string, unknown> {
    return {
      name: this.name,
      criteria: [...this.criteria],
      platforms: [...this.platforms],
      step_index: this.stepIndex,
      answers: [...this.answers.entries()].map(([index, answer]) => ({
        index,
        phrase: answer.phrase,
        direction: answer.direction,
      })),
    };
  }

  static fromDraft(doc: Record<string, unknown>): PairwiseWizard {
    const criteria = (doc.criteria as string[]) ?? [];
    const platforms = (doc.platforms as string[]) ?? [];
    const wizard = new PairwiseWizard(criteria, platforms, (doc.name as string) ?? "");
    const answers =
      (doc.answers as { index: number; phrase: string; direction: Direction }[]) ?? [];
    for (const entry of answers) {
      wizard.answer(entry.index, { phrase: entry.phrase, direction: entry.direction });
    }
    const step = doc.step_index;
    if (typeof step === "number" && step >= 0 && step < wizard.prompts.length) {
      wizard.stepIndex = step;
    }
    return wizard;
  }
}
