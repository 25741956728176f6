import { formatValue, rankingRadarChart, renderChartSvg, reportBarChart } from "./charts.js";
import { JUDGMENT_PHRASES, LIKERT_LABELS } from "./judgments.js";
import type { PairwiseWizard } from "./pairwiseWizard.js";
import type { SingleWizardController } from "./singleWizard.js";
import type {
  CriterionDoc,
  KiviatSeriesDoc,
  RankingResultDoc,
  ReportDoc,
} from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

const LAYER_ORDER = ["UL", "AL", "SL", "DL", "PL"] as const;

// ---------------------------------------------------------------------------
// criteria browser
// ---------------------------------------------------------------------------

export function renderCriteriaBrowser(
  criteria: CriterionDoc[],
  filter: { dimension?: string; layer?: string } = {},
): string {
  const dimensionOptions = ["", "functional", "non-functional"]
    .map((value) => {
      const selected = (filter.dimension ?? "") === value ? " selected" : "";
      return `<option value="${value}"${selected}>${value || "all dimensions"}</option>`;
    })
    .join("");
  const layerOptions = ["", ...LAYER_ORDER]
    .map((value) => {
      const selected = (filter.layer ?? "") === value ? " selected" : "";
      return `<option value="${value}"${selected}>${value || "all layers"}</option>`;
    })
    .join("");
  const cards = criteria.map(renderCriterionCard).join("");
  return `<section class="browser">
  <form class="browser-filters" data-role="criteria-filter">
    <label>Dimension <select name="dimension">${dimensionOptions}</select></label>
    <label>Layer <select name="layer">${layerOptions}</select></label>
    <span class="browser-count">${criteria.length} criteria</span>
  </form>
  <div class="cards">${cards}</div>
</section>`;
}

function renderCriterionCard(criterion: CriterionDoc): string {
  const layers = new Set(criterion.questions.flatMap((q) => q.layers));
  const badges = LAYER_ORDER.filter((layer) => layers.has(layer))
    .map((layer) => `<span class="badge badge-layer">${layer}</span>`)
    .join("");
  const questions = criterion.questions
    .map((q) => `<li data-question="${escapeHtml(q.id)}">${escapeHtml(q.text)}</li>`)
    .join("");
  return `<article class="card" data-criterion="${escapeHtml(criterion.id)}">
  <header>
    <h3>${escapeHtml(criterion.name)}</h3>
    <span class="badge badge-${criterion.dimension}">${criterion.dimension}</span>
    ${badges}
  </header>
  <p class="card-description">${escapeHtml(criterion.description)}</p>
  <details><summary>${criterion.questions.length} leading question(s)</summary>
    <ul>${questions}</ul>
  </details>
</article>`;
}

// ---------------------------------------------------------------------------
// single-assessment wizard
// ---------------------------------------------------------------------------

export function renderSingleWizardPage(controller: SingleWizardController): string {
  const page = controller.page();
  const rows = page.questions
    .map((question) => {
      const current = controller.ratingFor(question.id);
      const radios = LIKERT_LABELS.map((label, index) => {
        const value = index + 1;
        const checked = current === value ? " checked" : "";
        return `<label class="likert-option" title="${escapeHtml(label)}">
  <input type="radio" name="${escapeHtml(question.id)}" value="${value}"${checked}>
  <span>${escapeHtml(label)}</span>
</label>`;
      }).join("");
      return `<fieldset class="likert-row" data-question="${escapeHtml(question.id)}">
  <legend>${escapeHtml(question.text)}</legend>
  <div class="likert-options">${radios}</div>
</fieldset>`;
    })
    .join("");
  return `<section class="wizard wizard-single" data-project="${escapeHtml(controller.projectId)}">
  <header>
    <h2>${escapeHtml(page.criterion.name)}</h2>
    <span class="wizard-progress">step ${controller.stepIndex + 1} of ${controller.totalSteps}
      · ${controller.answeredCount}/${controller.totalQuestions} answered</span>
  </header>
  <p class="card-description">${escapeHtml(page.criterion.description)}</p>
  ${rows}
  <footer class="wizard-nav">
    <button type="button" data-action="prev"${controller.stepIndex === 0 ? " disabled" : ""}>Back</button>
    <button type="button" data-action="${controller.isLastStep ? "finish" : "next"}">
      ${controller.isLastStep ? "View report" : "Next"}</button>
  </footer>
</section>`;
}

export function renderConflictPrompt(): string {
  return `<div class="banner banner-conflict" data-role="conflict">
  Someone else updated this project while you were rating.
  <button type="button" data-action="reload">Reload latest version</button>
</div>`;
}

// ---------------------------------------------------------------------------
// pairwise wizard
// ---------------------------------------------------------------------------

export function renderPairwisePrompt(wizard: PairwiseWizard): string {
  const prompt = wizard.prompt();
  const subject =
    prompt.matrix === "criteria"
      ? "criteria importance"
      : `platform support for ${escapeHtml(prompt.matrix)}`;
  const current = wizard.answers.get(wizard.stepIndex);
  const phrases = JUDGMENT_PHRASES.map((entry) => {
    const selected = current?.phrase === entry.phrase ? " selected" : "";
    return `<option value="${entry.phrase}"${selected}>${entry.phrase} (${entry.value})</option>`;
  }).join("");
  const forwardChecked = !current || current.direction === "forward" ? " checked" : "";
  const reverseChecked = current?.direction === "reverse" ? " checked" : "";
  const submitDisabled = wizard.canSubmit ? "" : " disabled";
  return `<section class="wizard wizard-pairwise" data-matrix="${escapeHtml(prompt.matrix)}">
  <header>
    <h2>Compare: ${subject}</h2>
    <span class="wizard-progress">judgment ${wizard.stepIndex + 1} of ${wizard.totalPrompts}
      · ${wizard.answeredCount} answered</span>
  </header>
  <div class="pair">
    <span class="pair-item">${escapeHtml(prompt.left)}</span>
    <span class="pair-vs">vs</span>
    <span class="pair-item">${escapeHtml(prompt.right)}</span>
  </div>
  <div class="pair-controls">
    <label>Judgment <select data-role="phrase">${phrases}</select></label>
    <label class="direction"><input type="radio" name="direction" value="forward"${forwardChecked}>
      ${escapeHtml(prompt.left)} over ${escapeHtml(prompt.right)}</label>
    <label class="direction"><input type="radio" name="direction" value="reverse"${reverseChecked}>
      ${escapeHtml(prompt.right)} over ${escapeHtml(prompt.left)}</label>
    <button type="button" data-action="record">Record judgment</button>
  </div>
  <footer class="wizard-nav">
    <button type="button" data-action="prev"${wizard.stepIndex === 0 ? " disabled" : ""}>Back</button>
    <button type="button" data-action="next"${wizard.stepIndex >= wizard.totalPrompts - 1 ? " disabled" : ""}>Next</button>
    <button type="button" data-action="submit"${submitDisabled}>Compute ranking</button>
  </footer>
</section>`;
}

/**
 * Amber, advisory-only warnings for every matrix whose consistency ratio
 * exceeds the threshold; each links back to that matrix's prompts so the
 * assessor can revisit the judgments.
 */
export function renderConsistencyWarnings(result: RankingResultDoc, threshold = 0.1): string {
  const flagged = Object.entries(result.consistency).filter(
    ([, report]) => report.flagged || report.cr > threshold,
  );
  if (flagged.length === 0) return "";
  const items = flagged
    .map(
      ([matrix, report]) =>
        `<li><a href="#revisit-${escapeHtml(matrix)}" data-matrix="${escapeHtml(matrix)}">` +
        `${escapeHtml(matrix)}</a>: consistency ratio ${formatValue(report.cr)} exceeds ` +
        `${formatValue(threshold)} — consider revisiting these judgments</li>`,
    )
    .join("");
  return `<div class="banner banner-warning" data-role="consistency-warning">
  <strong>Inconsistent judgments detected.</strong> The ranking is still computed;
  the flagged matrices are advisory.
  <ul>${items}</ul>
</div>`;
}

// ---------------------------------------------------------------------------
// results
// ---------------------------------------------------------------------------

export function renderReportView(report: ReportDoc): string {
  const rows = report.criteria
    .map(
      (score) => `<tr data-criterion="${escapeHtml(score.criterion_id)}">
  <td>${escapeHtml(score.criterion_id)}</td>
  <td class="num" data-role="raw">${formatValue(score.raw)}</td>
  <td class="num" data-role="normalized">${formatValue(score.normalized)}</td>
  <td class="num">${Math.round(score.coverage * 100)}%</td>
</tr>`,
    )
    .join("");
  const layers = Object.entries(report.layers)
    .map(
      ([layer, entry]) =>
        `<tr><td>${layer}</td><td class="num">${formatValue(entry.score)}</td>` +
        `<td class="num">${Math.round(entry.coverage * 100)}%</td></tr>`,
    )
    .join("");
  const chart = report.criteria.length > 0 ? renderChartSvg(reportBarChart(report)) : "";
  return `<section class="results results-single">
  <h2>Satisfaction report</h2>
  ${chart}
  <table class="scores">
    <thead><tr><th>criterion</th><th>raw (1–7)</th><th>normalized</th><th>coverage</th></tr></thead>
    <tbody>${rows}</tbody>
  </table>
  <h3>Per-layer view</h3>
  <table class="scores">
    <thead><tr><th>layer</th><th>score</th><th>coverage</th></tr></thead>
    <tbody>${layers}</tbody>
  </table>
</section>`;
}

export function renderRankingView(result: RankingResultDoc, kiviat: KiviatSeriesDoc[]): string {
  const rows = result.ranking
    .map(
      (row) => `<tr data-platform="${escapeHtml(row.platform)}">
  <td>${row.rank}</td>
  <td>${escapeHtml(row.platform)}</td>
  <td class="num" data-role="composite">${formatValue(row.composite_weight)}</td>
</tr>`,
    )
    .join("");
  const chart = renderChartSvg(rankingRadarChart(kiviat, result.criteria));
  return `<section class="results results-multi">
  <h2>Composite ranking</h2>
  ${renderConsistencyWarnings(result)}
  <table class="scores">
    <thead><tr><th>rank</th><th>platform</th><th>composite weight</th></tr></thead>
    <tbody>${rows}</tbody>
  </table>
  ${chart}
</section>`;
}

export function renderErrorBanner(message: string): string {
  return `<div class="banner banner-error" data-role="api-error">
  ${escapeHtml(message)} <button type="button" data-action="retry">Retry</button>
</div>`;
}
