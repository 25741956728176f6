// Browser bootstrap: hash routing plus event wiring over the string-rendered
// views. All state lives on the server; a reload only needs the hash.
import { ApiClient, ApiError } from "./api.js";
import { PairwiseWizard } from "./pairwiseWizard.js";
import { SingleWizardController } from "./singleWizard.js";
import type { CatalogDoc, ProjectDoc } from "./types.js";
import {
  escapeHtml,
  renderConflictPrompt,
  renderCriteriaBrowser,
  renderErrorBanner,
  renderPairwisePrompt,
  renderRankingView,
  renderReportView,
  renderSingleWizardPage,
} from "./views.js";

const api = new ApiClient("");
let catalog: CatalogDoc | null = null;
let singleWizard: SingleWizardController | null = null;
let pairwiseWizard: PairwiseWizard | null = null;

function root(): HTMLElement {
  const element = document.getElementById("app");
  if (!element) throw new Error("#app container missing");
  return element;
}

async function ensureCatalog(): Promise<CatalogDoc> {
  if (!catalog) catalog = await api.getCatalog();
  return catalog;
}

function setView(html: string): void {
  root().innerHTML = html;
}

function banner(html: string): void {
  root().insertAdjacentHTML("afterbegin", html);
}

// ---------------------------------------------------------------------------
// routes
// ---------------------------------------------------------------------------

async function showBrowser(filter: { dimension?: string; layer?: string } = {}): Promise<void> {
  const criteria = await api.getCriteria(filter);
  setView(renderCriteriaBrowser(criteria, filter));
  const form = root().querySelector<HTMLFormElement>("[data-role=criteria-filter]");
  form?.addEventListener("change", () => {
    const data = new FormData(form);
    void guard(() =>
      showBrowser({
        dimension: (data.get("dimension") as string) || undefined,
        layer: (data.get("layer") as string) || undefined,
      }),
    );
  });
}

async function showNewAssessment(): Promise<void> {
  const doc = await ensureCatalog();
  const options = doc.criteria
    .map(
      (criterion) =>
        `<label class="pick"><input type="checkbox" name="criteria" value="${escapeHtml(criterion.id)}">
         ${escapeHtml(criterion.name)} <small>(${criterion.dimension})</small></label>`,
    )
    .join("");
  setView(`<section class="setup">
  <h2>New single-platform assessment</h2>
  <form data-role="new-project">
    <label>Project name <input name="name" required></label>
    <label>Platform name <input name="platform" required></label>
    <label>Platform description <textarea name="description"></textarea></label>
    <label>Assessor id <input name="assessor" required value="assessor-1"></label>
    <fieldset><legend>Criteria to evaluate</legend>${options}</fieldset>
    <button type="submit">Create project</button>
  </form>
</section>`);
  const form = root().querySelector<HTMLFormElement>("[data-role=new-project]");
  form?.addEventListener("submit", (event) => {
    event.preventDefault();
    const data = new FormData(form);
    void guard(async () => {
      const project = await api.createProject({
        name: String(data.get("name") ?? ""),
        platform_name: String(data.get("platform") ?? ""),
        platform_description: String(data.get("description") ?? ""),
        selected_criteria: data.getAll("criteria").map(String),
      });
      location.hash = `#/assess/${project.id}/${encodeURIComponent(String(data.get("assessor")))}`;
    });
  });
}

async function showSingleWizard(projectId: string, assessor: string): Promise<void> {
  const doc = await ensureCatalog();
  const project: ProjectDoc = await api.getProject(projectId);
  singleWizard = new SingleWizardController(api, project, doc, assessor);
  renderWizardStep();
}

function renderWizardStep(): void {
  const wizard = singleWizard;
  if (!wizard) return;
  setView(renderSingleWizardPage(wizard));
  root()
    .querySelectorAll<HTMLInputElement>(".likert-row input[type=radio]")
    .forEach((input) => {
      input.addEventListener("change", () => {
        void guard(async () => {
          const outcome = await wizard.rate(input.name, Number(input.value));
          if (outcome === "conflict") {
            banner(renderConflictPrompt());
            root()
              .querySelector("[data-action=reload]")
              ?.addEventListener("click", () => {
                void guard(async () => {
                  await wizard.reload();
                  renderWizardStep();
                });
              });
          }
        });
      });
    });
  root().querySelector("[data-action=prev]")?.addEventListener("click", () => {
    wizard.prev();
    renderWizardStep();
  });
  root().querySelector("[data-action=next]")?.addEventListener("click", () => {
    wizard.next();
    renderWizardStep();
  });
  root().querySelector("[data-action=finish]")?.addEventListener("click", () => {
    location.hash = `#/report/${wizard.projectId}`;
  });
}

async function showReport(projectId: string): Promise<void> {
  const report = await api.getReport(projectId);
  setView(renderReportView(report));
}

async function showNewRanking(): Promise<void> {
  const doc = await ensureCatalog();
  const options = doc.criteria
    .map(
      (criterion) =>
        `<label class="pick"><input type="checkbox" name="criteria" value="${escapeHtml(criterion.id)}">
         ${escapeHtml(criterion.name)}</label>`,
    )
    .join("");
  setView(`<section class="setup">
  <h2>New multi-platform comparison</h2>
  <form data-role="new-ranking">
    <label>Name <input name="name" required></label>
    <label>Platforms (comma-separated) <input name="platforms" required
      placeholder="aws, ibm, azure"></label>
    <fieldset><legend>Criteria to weigh</legend>${options}</fieldset>
    <button type="submit">Start pairwise comparisons</button>
  </form>
</section>`);
  const form = root().querySelector<HTMLFormElement>("[data-role=new-ranking]");
  form?.addEventListener("submit", (event) => {
    event.preventDefault();
    const data = new FormData(form);
    void guard(async () => {
      const platforms = String(data.get("platforms") ?? "")
        .split(",")
        .map((p) => p.trim())
        .filter(Boolean);
      pairwiseWizard = new PairwiseWizard(
        data.getAll("criteria").map(String),
        platforms,
        String(data.get("name") ?? ""),
      );
      const draft = await api.createDraft(pairwiseWizard.toDraft());
      pairwiseWizard.draftId = draft.id;
      pairwiseWizard.draftVersion = draft.version;
      location.hash = `#/rank/${draft.id}`;
    });
  });
}

async function showPairwiseWizard(draftId: string): Promise<void> {
  if (!pairwiseWizard || pairwiseWizard.draftId !== draftId) {
    const draft = await api.getDraft(draftId);
    pairwiseWizard = PairwiseWizard.fromDraft(draft.document);
    pairwiseWizard.draftId = draft.id;
    pairwiseWizard.draftVersion = draft.version;
  }
  renderPairwiseStep();
}

function renderPairwiseStep(): void {
  const wizard = pairwiseWizard;
  if (!wizard?.draftId) return;
  setView(renderPairwisePrompt(wizard));
  const phrase = root().querySelector<HTMLSelectElement>("[data-role=phrase]");
  root().querySelector("[data-action=record]")?.addEventListener("click", () => {
    const direction = root().querySelector<HTMLInputElement>(
      "input[name=direction]:checked",
    );
    wizard.answerCurrent({
      phrase: phrase?.value ?? "equally preferred",
      direction: (direction?.value as "forward" | "reverse") ?? "forward",
    });
    void guard(async () => {
      // persist progress so a page reload resumes exactly here
      const saved = await api.putDraft(
        wizard.draftId!,
        wizard.toDraft(),
        wizard.draftVersion ?? 1,
      );
      wizard.draftVersion = saved.version;
      if (!wizard.next()) {
        const unanswered = wizard.firstUnanswered();
        if (unanswered !== null) wizard.goTo(unanswered);
      }
      renderPairwiseStep();
    });
  });
  root().querySelector("[data-action=prev]")?.addEventListener("click", () => {
    wizard.prev();
    renderPairwiseStep();
  });
  root().querySelector("[data-action=next]")?.addEventListener("click", () => {
    wizard.next();
    renderPairwiseStep();
  });
  root().querySelector("[data-action=submit]")?.addEventListener("click", () => {
    void guard(async () => {
      const result = await api.postRanking(wizard.buildRankingInput(wizard.draftId ?? undefined));
      location.hash = `#/results/${result.id}`;
    });
  });
}

async function showRankingResults(rankingId: string): Promise<void> {
  const result = await api.getRanking(rankingId);
  const kiviat = await api.getKiviat(rankingId);
  setView(renderRankingView(result, kiviat));
  root()
    .querySelectorAll<HTMLAnchorElement>("[data-role=consistency-warning] a")
    .forEach((link) => {
      link.addEventListener("click", (event) => {
        event.preventDefault();
        const matrix = link.dataset.matrix ?? "";
        const wizard = pairwiseWizard;
        if (wizard?.draftId) {
          const indices = wizard.promptIndicesFor(matrix === "criteria" ? "criteria" : matrix);
          if (indices.length > 0 && indices[0] !== undefined) wizard.goTo(indices[0]);
          location.hash = `#/rank/${wizard.draftId}`;
        }
      });
    });
}

function showHome(): void {
  setView(`<section class="home">
  <h2>Platform assessment</h2>
  <nav class="home-nav">
    <a href="#/browse">Browse criteria</a>
    <a href="#/assess/new">Create single-platform assessment</a>
    <a href="#/rank/new">Create multi-platform comparison</a>
  </nav>
</section>`);
}

// ---------------------------------------------------------------------------
// router
// ---------------------------------------------------------------------------

async function route(): Promise<void> {
  const parts = location.hash.replace(/^#\//, "").split("/").filter(Boolean);
  switch (parts[0]) {
    case "browse":
      return showBrowser();
    case "assess":
      if (parts[1] === "new" || !parts[1]) return showNewAssessment();
      return showSingleWizard(parts[1], decodeURIComponent(parts[2] ?? "assessor-1"));
    case "report":
      if (parts[1]) return showReport(parts[1]);
      break;
    case "rank":
      if (parts[1] === "new" || !parts[1]) return showNewRanking();
      return showPairwiseWizard(parts[1]);
    case "results":
      if (parts[1]) return showRankingResults(parts[1]);
      break;
    default:
      return showHome();
  }
  return showHome();
}

async function guard(action: () => Promise<void>): Promise<void> {
  try {
    await action();
  } catch (error) {
    const message =
      error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
    banner(renderErrorBanner(message));
    root().querySelector("[data-action=retry]")?.addEventListener("click", () => {
      void guard(route);
    });
  }
}

window.addEventListener("hashchange", () => void guard(route));
window.addEventListener("DOMContentLoaded", () => void guard(route));
