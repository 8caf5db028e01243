/**
 * DOM rendering for the wizard.
 *
 * Every screen is rebuilt from the latest server responses: the session
 * resource, the model document (labels and declaration order only), the
 * enumerated designs, and the conformity verdict.  The client adds no
 * judgement of its own — an option is enabled exactly when the session
 * resource lists it as allowed, a disabled option's tooltip names the choice
 * the service reported as conflicting, and a non-viable option is shaded as
 * a warning but stays clickable.
 */

import type { ModelIndex } from "./labels.js";
import type {
  ConformityResponse,
  MeaningResponse,
  ModelSummary,
  SessionResource,
} from "./types.js";

export interface Notice {
  kind: "info" | "error" | "conflict";
  text: string;
  /** For conflicts: [already-chosen alternative, attempted alternative]. */
  pair?: [string, string];
}

export interface WizardView {
  phase: "loading" | "models" | "session" | "meaning";
  models: ModelSummary[];
  index: ModelIndex | null;
  session: SessionResource | null;
  conformity: ConformityResponse | null;
  meaning: MeaningResponse | null;
  notice: Notice | null;
}

export interface Handlers {
  onStartSession(modelId: string): void;
  onChoose(issue: string, alternative: string): void;
  onRetract(issue: string): void;
  onShowMeaning(): void;
  onBackToSession(): void;
  onRestart(): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: (Node | string)[] = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  node.append(...children);
  return node;
}

export function render(
  root: HTMLElement,
  view: WizardView,
  handlers: Handlers,
): void {
  root.textContent = "";
  if (view.notice) {
    root.append(renderNotice(view.notice, view.index));
  }
  switch (view.phase) {
    case "loading":
      root.append(el("p", { class: "loading" }, ["Loading…"]));
      break;
    case "models":
      root.append(renderModelList(view.models, handlers));
      break;
    case "session":
      if (view.session && view.index) {
        root.append(
          renderSession(view.session, view.index, view.conformity, handlers),
        );
      }
      break;
    case "meaning":
      if (view.meaning && view.index) {
        root.append(renderMeaning(view.meaning, view.index, handlers));
      }
      break;
  }
}

function renderNotice(notice: Notice, index: ModelIndex | null): HTMLElement {
  const label = (id: string) => index?.alternativeLabel(id) ?? id;
  const node = el("div", { class: `notice notice-${notice.kind}`, role: "alert" }, [
    el("p", {}, [notice.text]),
  ]);
  if (notice.pair) {
    const [prior, attempted] = notice.pair;
    node.append(
      el("p", { class: "conflict-pair" }, [
        el("span", { class: "chip", "data-alternative": attempted }, [
          label(attempted),
        ]),
        " ✕ ",
        el("span", { class: "chip", "data-alternative": prior }, [label(prior)]),
      ]),
    );
  }
  return node;
}

function renderModelList(
  models: ModelSummary[],
  handlers: Handlers,
): HTMLElement {
  const section = el("section", { class: "models" }, [
    el("h1", {}, ["Decision models"]),
  ]);
  if (models.length === 0) {
    section.append(el("p", { class: "empty" }, ["The service has no models loaded."]));
    return section;
  }
  const list = el("ul", { class: "model-list" });
  for (const model of models) {
    const start = el("button", { class: "start", "data-model": model.id }, [
      "Start session",
    ]);
    start.addEventListener("click", () => handlers.onStartSession(model.id));
    list.append(
      el("li", {}, [
        el("span", { class: "model-name" }, [model.name]),
        el("span", { class: "model-size" }, [
          ` — ${model.issueCount} issues, ${model.alternativeCount} alternatives `,
        ]),
        start,
      ]),
    );
  }
  section.append(list);
  return section;
}

function renderSession(
  session: SessionResource,
  index: ModelIndex,
  conformity: ConformityResponse | null,
  handlers: Handlers,
): HTMLElement {
  const meaningButton = el("button", { "data-action": "show-meaning" }, [
    "Show all designs",
  ]);
  meaningButton.addEventListener("click", () => handlers.onShowMeaning());
  const restartButton = el("button", { "data-action": "restart" }, ["Start over"]);
  restartButton.addEventListener("click", () => handlers.onRestart());

  const section = el("section", { class: "session", "data-session-id": session.id }, [
    el("header", {}, [
      el("h1", {}, [index.name]),
      el("div", { class: "toolbar" }, [meaningButton, restartButton]),
    ]),
    renderStatus(session),
  ]);

  const resolved = index.issueOrder.filter((issue) => issue in session.choices);
  if (resolved.length > 0) {
    const list = el("ul", { class: "choices" });
    for (const issue of resolved) {
      const alternative = session.choices[issue];
      if (alternative === undefined) continue;
      const retract = el("button", { class: "retract", "data-retract": issue }, [
        "Retract",
      ]);
      retract.addEventListener("click", () => handlers.onRetract(issue));
      list.append(
        el("li", { "data-issue": issue }, [
          el("span", { class: "choice-issue" }, [index.issueLabel(issue)]),
          ": ",
          el("span", { class: "choice-alternative" }, [
            index.alternativeLabel(alternative),
          ]),
          retract,
        ]),
      );
    }
    section.append(
      el("section", { class: "resolved" }, [el("h2", {}, ["Choices so far"]), list]),
    );
  }

  if (session.status.complete) {
    section.append(renderCompletion(session, index, conformity));
  } else {
    const cards = el("div", { class: "cards" });
    for (const issue of session.pending) {
      cards.append(renderCard(issue, session, index, handlers));
    }
    section.append(cards);
  }
  return section;
}

function renderStatus(session: SessionResource): HTMLElement {
  const { complete, viable, pendingCount } = session.status;
  const status = el("div", { class: "status" }, [
    el("span", { class: "pending-count" }, [
      complete
        ? "All issues resolved"
        : `${pendingCount} ${pendingCount === 1 ? "issue" : "issues"} pending`,
    ]),
  ]);
  if (!viable) {
    status.append(
      el("span", { class: "warning", role: "status" }, [
        "No conforming design extends the current choices — retract something to recover.",
      ]),
    );
  }
  return status;
}

function renderCard(
  issue: string,
  session: SessionResource,
  index: ModelIndex,
  handlers: Handlers,
): HTMLElement {
  const allowed = new Map(
    (session.allowed[issue] ?? []).map((option) => [option.alternative, option]),
  );
  const excluded = new Map(
    (session.excluded[issue] ?? []).map((option) => [option.alternative, option]),
  );
  const options = el("div", { class: "options" });
  for (const alternative of index.alternativesOf(issue)) {
    const button = el("button", { class: "option", "data-alternative": alternative }, [
      index.alternativeLabel(alternative),
    ]);
    const allowedOption = allowed.get(alternative);
    if (allowedOption) {
      button.classList.add(allowedOption.viable ? "viable" : "dead-end");
      if (!allowedOption.viable) {
        button.title = "No conforming design extends this choice";
      }
      button.addEventListener("click", () => handlers.onChoose(issue, alternative));
    } else {
      button.disabled = true;
      button.classList.add("excluded");
      const conflict = excluded.get(alternative);
      if (conflict) {
        button.title = `Incompatible with ${index.alternativeLabel(conflict.conflictsWith)}`;
      }
    }
    options.append(button);
  }
  return el("section", { class: "card", "data-issue": issue }, [
    el("h3", {}, [index.issueLabel(issue)]),
    options,
  ]);
}

function renderCompletion(
  session: SessionResource,
  index: ModelIndex,
  conformity: ConformityResponse | null,
): HTMLElement {
  const badge =
    conformity === null
      ? el("span", { class: "badge pending", "data-badge": "pending" }, [
          "Checking conformity…",
        ])
      : conformity.conforms
        ? el("span", { class: "badge ok", "data-badge": "ok" }, ["Conforms"])
        : el("span", { class: "badge bad", "data-badge": "bad" }, [
            "Does not conform",
          ]);
  const rows = index.issueOrder
    .filter((issue) => issue in session.choices)
    .map((issue) =>
      el("tr", {}, [
        el("th", {}, [index.issueLabel(issue)]),
        el("td", {}, [index.alternativeLabel(session.choices[issue] ?? "")]),
      ]),
    );
  const completion = el("section", { class: "completion" }, [
    el("h2", {}, ["Design complete"]),
    badge,
    el("table", { class: "final-design" }, [el("tbody", {}, rows)]),
  ]);
  if (conformity !== null && !conformity.conforms) {
    completion.append(
      el(
        "ul",
        { class: "violations" },
        conformity.violations.map((violation) =>
          el("li", {}, [`${violation.condition}: ${violation.message}`]),
        ),
      ),
    );
  }
  return completion;
}

function renderMeaning(
  meaning: MeaningResponse,
  index: ModelIndex,
  handlers: Handlers,
): HTMLElement {
  const back = el("button", { "data-action": "back" }, ["Back to session"]);
  back.addEventListener("click", () => handlers.onBackToSession());
  const head = el(
    "tr",
    {},
    index.issueOrder.map((issue) => el("th", {}, [index.issueLabel(issue)])),
  );
  const body = meaning.designs.map((design) =>
    el(
      "tr",
      {},
      index.issueOrder.map((issue) => {
        const alternative = design[issue];
        return alternative === undefined
          ? el("td", { class: "none" }, ["none"])
          : el("td", {}, [index.alternativeLabel(alternative)]);
      }),
    ),
  );
  const count = meaning.designs.length;
  const caption =
    `${count} conforming ${count === 1 ? "design" : "designs"}` +
    (meaning.truncated ? " (cut off at the enumeration limit)" : "");
  return el("section", { class: "meaning" }, [
    el("header", {}, [el("h1", {}, [index.name]), back]),
    el("p", { class: "meaning-count" }, [caption]),
    el("table", { class: "designs" }, [
      el("thead", {}, [head]),
      el("tbody", {}, body),
    ]),
  ]);
}
