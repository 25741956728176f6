// Rating vocabularies shared by the wizards. Judgments are entered as the
// nine qualitative phrases plus a direction toggle, never as raw numbers,
// so off-scale input is unrepresentable.

export const LIKERT_LABELS: readonly string[] = [
  "Not at all addressed",
  "Partially addressed",
  "Somewhat addressed",
  "Neutral",
  "Mostly addressed",
  "Considerably addressed",
  "Completely addressed",
];

export function likertValue(label: string): number {
  const index = LIKERT_LABELS.findIndex((l) => l.toLowerCase() === label.toLowerCase());
  if (index < 0) throw new Error(`unknown rating label: ${label}`);
  return index + 1;
}

export interface JudgmentPhrase {
  value: number;
  phrase: string;
}

export const JUDGMENT_PHRASES: readonly JudgmentPhrase[] = [
  { value: 1, phrase: "equally preferred" },
  { value: 2, phrase: "equally to moderately preferred" },
  { value: 3, phrase: "moderately preferred" },
  { value: 4, phrase: "moderately to strongly preferred" },
  { value: 5, phrase: "strongly preferred" },
  { value: 6, phrase: "strongly to very strongly preferred" },
  { value: 7, phrase: "very strongly preferred" },
  { value: 8, phrase: "very strongly to extremely preferred" },
  { value: 9, phrase: "extremely preferred" },
];

export type Direction = "forward" | "reverse";

/** Numeric judgment for a phrase; reversed preferences become exact "1/n" strings. */
export function judgmentValue(phrase: string, direction: Direction): number | string {
  const entry = JUDGMENT_PHRASES.find((p) => p.phrase === phrase.toLowerCase().trim());
  if (!entry) throw new Error(`unknown judgment phrase: ${phrase}`);
  if (direction === "forward" || entry.value === 1) return entry.value;
  return `1/${entry.value}`;
}
