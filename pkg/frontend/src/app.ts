import { GatewayClient, GatewayError } from "./api";
import { parsePpm } from "./ppm";
import type {
  FinishResponse,
  NetworkStats,
  SampleEntryState,
  SessionState,
  SpaceInfo,
} from "./types";

/**
 * The browsing screen: miniature cards with one clickable label chip per
 * open digit of the current descriptor. Picking a chip fixes that digit via
 * the gateway; the UI never computes routing or denotation locally. When no
 * open digit remains the app fetches the final document list and switches
 * to the results view.
 */
export class BrowserApp {
  state: SessionState | null = null;
  space: SpaceInfo | null = null;
  results: FinishResponse | null = null;
  networkStats: NetworkStats | null = null;
  errorBanner: string | null = null;
  toast: string | null = null;
  busy = false;

  private inflight: Promise<unknown>[] = [];

  constructor(private root: HTMLElement, private client: GatewayClient) {}

  private get doc(): Document {
    return this.root.ownerDocument;
  }

  /** Resolve once every pending gateway call and miniature fetch settled. */
  async settle(): Promise<void> {
    while (this.inflight.length > 0) {
      const batch = this.inflight.splice(0);
      await Promise.allSettled(batch);
    }
  }

  private track<T>(promise: Promise<T>): Promise<T> {
    this.inflight.push(promise);
    return promise;
  }

  start(): Promise<void> {
    return this.track(this.startInner());
  }

  private async startInner(): Promise<void> {
    this.errorBanner = null;
    this.results = null;
    try {
      this.space = await this.client.space();
      const created = await this.client.createSession();
      this.state = created.state;
      this.networkStats = await this.client.networkStats();
    } catch (err) {
      this.errorBanner = err instanceof Error ? err.message : String(err);
    }
    this.render();
  }

  clickLabel(position: number, value: number): Promise<void> {
    if (this.busy || !this.state || this.state.finished) return Promise.resolve();
    this.busy = true;
    this.render();
    return this.track(this.clickLabelInner(position, value));
  }

  private async clickLabelInner(position: number, value: number): Promise<void> {
    const sessionId = this.state!.session_id;
    try {
      this.state = await this.client.choose(sessionId, position, value);
      this.toast = null;
    } catch (err) {
      if (err instanceof GatewayError && err.status === 409) {
        // stale click (e.g. double submit); surface it and resync
        this.toast = err.message;
        this.state = await this.client.sessionState(sessionId);
      } else {
        this.errorBanner = err instanceof Error ? err.message : String(err);
      }
    }
    this.busy = false;
    this.render();
    if (this.state && this.state.finished && !this.results) {
      await this.showResultsInner();
    }
  }

  showResults(): Promise<void> {
    return this.track(this.showResultsInner());
  }

  private async showResultsInner(): Promise<void> {
    if (!this.state) return;
    try {
      this.results = await this.client.finish(this.state.session_id);
      this.state = await this.client.sessionState(this.state.session_id);
      this.networkStats = await this.client.networkStats();
    } catch (err) {
      this.errorBanner = err instanceof Error ? err.message : String(err);
    }
    this.render();
  }

  // -- rendering ----------------------------------------------------------

  render(): void {
    this.root.innerHTML = "";
    if (this.errorBanner !== null) {
      this.root.appendChild(this.renderErrorBanner());
      return;
    }
    if (!this.state || !this.space) return;
    this.root.appendChild(this.renderBreadcrumb());
    if (this.toast) this.root.appendChild(this.renderToast());
    if (this.results) {
      this.root.appendChild(this.renderResults());
    } else {
      this.root.appendChild(this.renderSample());
    }
    this.root.appendChild(this.renderStatsPanel());
  }

  private el(tag: string, className?: string, text?: string): HTMLElement {
    const node = this.doc.createElement(tag);
    if (className) node.className = className;
    if (text !== undefined) node.textContent = text;
    return node;
  }

  private renderErrorBanner(): HTMLElement {
    const banner = this.el("div", "error-banner");
    banner.dataset.role = "error";
    banner.appendChild(this.el("span", "", `gateway error: ${this.errorBanner}`));
    const retry = this.el("button", "retry", "retry") as HTMLButtonElement;
    retry.addEventListener("click", () => void this.start());
    banner.appendChild(retry);
    return banner;
  }

  private renderToast(): HTMLElement {
    const toast = this.el("div", "toast", this.toast ?? "");
    toast.dataset.role = "toast";
    return toast;
  }

  private renderBreadcrumb(): HTMLElement {
    const state = this.state!;
    const space = this.space!;
    const nav = this.el("nav", "breadcrumb");
    const current = this.el("span", "current", state.current);
    current.dataset.role = "current";
    nav.appendChild(this.el("span", "space-name", `${space.name} / `));
    nav.appendChild(current);
    for (const [position, value] of state.history) {
      const digit = space.digits[position];
      nav.appendChild(
        this.el("span", "crumb", ` · ${digit.property} = ${digit.values[value]}`),
      );
    }
    if (!state.finished && !this.results) {
      const finishButton = this.el("button", "finish", "show results now") as HTMLButtonElement;
      finishButton.dataset.role = "finish";
      finishButton.disabled = this.busy;
      finishButton.addEventListener("click", () => void this.showResults());
      nav.appendChild(finishButton);
    }
    return nav;
  }

  private chipText(position: number, value: number): string {
    const digit = this.space!.digits[position];
    return `(${digit.property} = ${digit.values[value]})`;
  }

  private renderSample(): HTMLElement {
    const grid = this.el("section", "sample-grid");
    grid.dataset.role = "sample";
    for (const entry of this.state!.sample) {
      grid.appendChild(this.renderCard(entry));
    }
    return grid;
  }

  private renderCard(entry: SampleEntryState): HTMLElement {
    const card = this.el("article", "card");
    card.dataset.descriptor = entry.descriptor;
    card.appendChild(this.renderMiniature(entry));
    const caption = this.el(
      "div",
      "caption",
      entry.doc_id === null ? `empty class ${entry.descriptor}` : entry.doc_id,
    );
    card.appendChild(caption);
    const chips = this.el("div", "chips");
    for (const [position, value] of entry.labels) {
      const chip = this.el("button", "chip", this.chipText(position, value)) as HTMLButtonElement;
      chip.dataset.position = String(position);
      chip.dataset.value = String(value);
      chip.disabled = this.busy;
      chip.addEventListener("click", () => void this.clickLabel(position, value));
      chips.appendChild(chip);
    }
    card.appendChild(chips);
    return card;
  }

  private renderMiniature(entry: SampleEntryState): HTMLElement {
    if (entry.miniature_url === null) {
      return this.placeholder("no document in this class");
    }
    return this.miniatureCanvas(entry.miniature_url);
  }

  private miniatureCanvas(url: string): HTMLElement {
    const canvas = this.doc.createElement("canvas");
    canvas.width = 64;
    canvas.height = 64;
    canvas.className = "miniature";
    const context = canvas.getContext && canvas.getContext("2d");
    if (!context) {
      // canvas 2D unavailable (e.g. headless DOM): degrade to a placeholder
      return this.placeholder("miniature");
    }
    this.track(
      this.client.miniatureBytes(url).then((buffer) => {
        const image = parsePpm(buffer);
        const data = new ImageData(image.rgba, image.width, image.height);
        context.putImageData(data, 0, 0);
      }),
    );
    return canvas;
  }

  private placeholder(text: string): HTMLElement {
    const node = this.el("div", "placeholder", text);
    node.dataset.role = "placeholder";
    return node;
  }

  private renderResults(): HTMLElement {
    const results = this.results!;
    const section = this.el("section", "results");
    section.dataset.role = "results";
    section.appendChild(this.el("h2", "", `${results.locations.length} matching documents`));
    if (results.locations.length === 0) {
      section.appendChild(this.el("p", "empty-results", "no documents match the chosen properties"));
    }
    const grid = this.el("div", "results-grid");
    for (const location of results.locations) {
      const card = this.el("article", "card result-card");
      card.dataset.descriptor = location.descriptor;
      card.appendChild(this.miniatureCanvas(`/docs/${location.doc_id}/miniature`));
      card.appendChild(this.el("div", "caption", location.doc_id));
      card.appendChild(this.el("div", "meta", `${location.descriptor} · ${location.owner}`));
      grid.appendChild(card);
    }
    section.appendChild(grid);
    return section;
  }

  private renderStatsPanel(): HTMLElement {
    const state = this.state!;
    const panel = this.el("aside", "stats");
    panel.dataset.role = "stats";
    const sampleCost = state.stats.endpoint_messages;
    panel.appendChild(
      this.el("div", "stat", `cumulative sample cost: ${sampleCost} endpoint messages`),
    );
    if (state.final_stats) {
      const compare = this.el(
        "div",
        "stat cost-compare",
        `final total resolution: ${state.final_stats.endpoint_messages} endpoint messages` +
          ` (vs ${sampleCost} sampled)`,
      );
      compare.dataset.role = "cost-compare";
      panel.appendChild(compare);
    }
    if (this.networkStats) {
      const net = this.networkStats;
      const row = this.el(
        "div",
        "stat network",
        `network: ${net.nodes} nodes, ${net.documents} documents, ` +
          `${net.counters.logical_hops} hops, ${net.counters.endpoint_deliveries} deliveries`,
      );
      row.dataset.role = "network";
      panel.appendChild(row);
    }
    return panel;
  }
}
