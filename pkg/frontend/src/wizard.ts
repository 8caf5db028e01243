/**
 * Wizard controller.
 *
 * Holds the latest server responses and replays them through the view after
 * every round trip.  All interactions pass through a queue so they apply
 * strictly one at a time, and nothing is updated optimistically: the DOM
 * changes only after the service has answered.
 *
 * Error handling: transport failures and service errors become a banner;
 * an incompatible choice (409) shows the conflicting pair inline and
 * re-reads the session so the view stays server-true; a vanished session
 * (404) restarts the flow on the same model with a fresh session.
 */

import { ApiClient, ApiError, NetworkError } from "./api.js";
import { ModelIndex } from "./labels.js";
import { render, type Notice, type WizardView } from "./view.js";
import type { SessionResource } from "./types.js";

export class Wizard {
  private view: WizardView = {
    phase: "loading",
    models: [],
    index: null,
    session: null,
    conformity: null,
    meaning: null,
    notice: null,
  };
  private queue: Promise<void> = Promise.resolve();

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {}

  /** Fetch the model list and show the picker. */
  start(): Promise<void> {
    return this.enqueue(() => this.performStart());
  }

  startSession(modelId: string): Promise<void> {
    return this.enqueue(() => this.performStartSession(modelId, null));
  }

  clickAlternative(issue: string, alternative: string): Promise<void> {
    return this.enqueue(() => this.performChoose(issue, alternative));
  }

  retractChoice(issue: string): Promise<void> {
    return this.enqueue(() => this.performRetract(issue));
  }

  showMeaningTable(): Promise<void> {
    return this.enqueue(() => this.performShowMeaning());
  }

  backToSession(): Promise<void> {
    return this.enqueue(async () => {
      this.view.meaning = null;
      this.view.phase = this.view.session ? "session" : "models";
    });
  }

  /** Resolves once every queued interaction has round-tripped and rendered. */
  settled(): Promise<void> {
    return this.queue;
  }

  private enqueue(task: () => Promise<void>): Promise<void> {
    const run = async (): Promise<void> => {
      try {
        await task();
      } finally {
        this.render();
      }
    };
    this.queue = this.queue.then(run, run);
    return this.queue;
  }

  private async performStart(): Promise<void> {
    this.view.notice = null;
    try {
      this.view.models = await this.api.listModels();
      this.view.phase = "models";
      this.view.session = null;
      this.view.index = null;
      this.view.meaning = null;
      this.view.conformity = null;
    } catch (error) {
      this.view.phase = "models";
      this.noticeFrom(error);
    }
  }

  private async performStartSession(
    modelId: string,
    notice: Notice | null,
  ): Promise<void> {
    try {
      const [doc, session] = await Promise.all([
        this.api.getModel(modelId),
        this.api.createSession(modelId),
      ]);
      this.view.index = new ModelIndex(doc);
      this.view.phase = "session";
      this.view.meaning = null;
      this.view.notice = notice;
      await this.adoptSession(session);
    } catch (error) {
      this.noticeFrom(error);
    }
  }

  private async performChoose(issue: string, alternative: string): Promise<void> {
    const session = this.view.session;
    if (!session) return;
    this.view.notice = null;
    try {
      await this.adoptSession(await this.api.choose(session.id, issue, alternative));
    } catch (error) {
      await this.handleSessionError(error);
    }
  }

  private async performRetract(issue: string): Promise<void> {
    const session = this.view.session;
    if (!session) return;
    this.view.notice = null;
    try {
      await this.adoptSession(await this.api.retract(session.id, issue));
    } catch (error) {
      await this.handleSessionError(error);
    }
  }

  private async performShowMeaning(): Promise<void> {
    const session = this.view.session;
    if (!session) return;
    try {
      this.view.meaning = await this.api.getMeaning(session.modelId);
      this.view.phase = "meaning";
      this.view.notice = null;
    } catch (error) {
      this.noticeFrom(error);
    }
  }

  /** Install a session response and, when it is complete, ask the service for the verdict. */
  private async adoptSession(resource: SessionResource): Promise<void> {
    this.view.session = resource;
    this.view.conformity = null;
    if (resource.status.complete) {
      this.view.conformity = await this.api.checkConformity(
        resource.modelId,
        resource.choices,
      );
    }
  }

  private async handleSessionError(error: unknown): Promise<void> {
    if (error instanceof ApiError && error.status === 404) {
      const modelId = this.view.session?.modelId;
      if (modelId !== undefined) {
        await this.performStartSession(modelId, {
          kind: "info",
          text: "The session had expired, so a fresh one was started.",
        });
        return;
      }
    }
    if (
      error instanceof ApiError &&
      error.code === "incompatible-choice" &&
      error.witnesses.length === 2
    ) {
      const [prior, attempted] = error.witnesses as [string, string];
      const label = (id: string) => this.view.index?.alternativeLabel(id) ?? id;
      this.view.notice = {
        kind: "conflict",
        text:
          `${label(attempted)} cannot be selected: it is incompatible ` +
          `with the already-chosen ${label(prior)}.`,
        pair: [prior, attempted],
      };
      await this.refreshSession();
      return;
    }
    this.noticeFrom(error);
    if (error instanceof ApiError) {
      await this.refreshSession();
    }
  }

  /** Re-read the session so the view reflects what the server actually holds. */
  private async refreshSession(): Promise<void> {
    const session = this.view.session;
    if (!session) return;
    try {
      await this.adoptSession(await this.api.getSession(session.id));
    } catch {
      // keep the last known state; the notice already explains the problem
    }
  }

  private noticeFrom(error: unknown): void {
    if (error instanceof NetworkError) {
      this.view.notice = { kind: "error", text: error.message };
      return;
    }
    if (error instanceof ApiError) {
      this.view.notice = { kind: "error", text: error.message };
      return;
    }
    throw error;
  }

  private render(): void {
    render(this.root, this.view, {
      onStartSession: (modelId) => void this.startSession(modelId),
      onChoose: (issue, alternative) => void this.clickAlternative(issue, alternative),
      onRetract: (issue) => void this.retractChoice(issue),
      onShowMeaning: () => void this.showMeaningTable(),
      onBackToSession: () => void this.backToSession(),
      onRestart: () => {
        const modelId = this.view.session?.modelId;
        if (modelId !== undefined) void this.startSession(modelId);
      },
    });
  }
}
