/** Application wiring: state, fetches, event handlers. The exported App
 * handle drives the same code paths the browser events do, which is what
 * the integration tests call. */

import { Api, ApiError, LatestWins } from "./api.js";
import {
  ViewModel,
  applyReveal,
  createViewModel,
  dismissReveal,
  toggleSelection,
} from "./viewmodel.js";
import {
  PanelData,
  renderGraph,
  renderPanel,
  renderRareList,
  showBanner,
  showToast,
} from "./render.js";
import type { GraphNode, PathsPayload } from "./types.js";

const TEMPLATE = `
<header>
  <h1 id="dish"></h1>
  <div class="controls">
    <input id="ingredient-input" type="text" placeholder="ingredient&hellip;">
    <button id="reveal-btn" type="button">reveal paths</button>
    <button id="dismiss-btn" type="button" hidden>dismiss</button>
  </div>
</header>
<div id="banner" class="banner" hidden></div>
<main>
  <svg id="graph" class="graph"></svg>
  <aside class="side">
    <section>
      <h2>rarest ingredients</h2>
      <ul id="rare" class="rare"></ul>
    </section>
    <section id="panel" class="panel" hidden></section>
  </aside>
</main>
<div id="toast" class="toast" hidden></div>
`;

export interface App {
  ready: Promise<void>;
  vm(): ViewModel | null;
  expandNode(id: number): Promise<void>;
  showSamples(): Promise<void>;
  reveal(name: string): Promise<void>;
  dismiss(): void;
}

export function createApp(container: HTMLElement, api: Api): App {
  container.innerHTML = TEMPLATE;
  const el = {
    dish: container.querySelector<HTMLElement>("#dish")!,
    input: container.querySelector<HTMLInputElement>("#ingredient-input")!,
    revealBtn: container.querySelector<HTMLButtonElement>("#reveal-btn")!,
    dismissBtn: container.querySelector<HTMLButtonElement>("#dismiss-btn")!,
    banner: container.querySelector<HTMLElement>("#banner")!,
    svg: container.querySelector<SVGSVGElement>("#graph")!,
    rare: container.querySelector<HTMLElement>("#rare")!,
    panel: container.querySelector<HTMLElement>("#panel")!,
    toast: container.querySelector<HTMLElement>("#toast")!,
  };

  let vm: ViewModel | null = null;
  let panelData: PanelData | null = null;
  const panelFetch = new LatestWins<GraphNode>();
  const revealFetch = new LatestWins<PathsPayload>();

  function rerender(): void {
    if (vm === null) return;
    renderGraph(el.svg, vm);
    renderPanel(el.panel, panelData);
    el.dismissBtn.hidden = vm.overlay === null;
  }

  async function expandNode(id: number): Promise<void> {
    if (vm === null) return;
    if (vm.selection === id) {
      vm = toggleSelection(vm, id);
      panelData = null;
      rerender();
      return;
    }
    try {
      const node = await panelFetch.run(() => api.node(id));
      if (node === undefined || vm === null) return; // a newer click won
      vm = { ...vm, selection: id };
      panelData = { node, samples: null };
      rerender();
    } catch (err) {
      showToast(el.toast, err instanceof ApiError ? err.message : String(err));
    }
  }

  async function showSamples(): Promise<void> {
    if (panelData === null) return;
    try {
      const body = await api.instructions(panelData.node.id);
      panelData = { ...panelData, samples: body.instructions };
      rerender();
    } catch (err) {
      showToast(el.toast, err instanceof ApiError ? err.message : String(err));
    }
  }

  async function reveal(name: string): Promise<void> {
    const trimmed = name.trim();
    if (trimmed === "" || vm === null) return;
    try {
      const payload = await revealFetch.run(() => api.paths(trimmed));
      if (payload === undefined || vm === null) return;
      vm = applyReveal(vm, payload);
      rerender();
    } catch (err) {
      showToast(el.toast, err instanceof ApiError ? err.message : String(err));
    }
  }

  function dismiss(): void {
    if (vm === null) return;
    vm = dismissReveal(vm);
    rerender();
  }

  el.svg.addEventListener("click", (event) => {
    const target = event.target as Element | null;
    const group = target?.closest?.("g.node");
    const id = group?.getAttribute("data-id");
    if (id !== null && id !== undefined) void expandNode(Number(id));
  });
  el.rare.addEventListener("click", (event) => {
    const target = event.target as Element | null;
    const item = target?.closest?.("li[data-name]") as HTMLElement | null;
    if (item?.dataset.name) void reveal(item.dataset.name);
  });
  el.panel.addEventListener("click", (event) => {
    const target = event.target as Element | null;
    if (target?.closest?.(".samples-btn")) void showSamples();
  });
  el.revealBtn.addEventListener("click", () => void reveal(el.input.value));
  el.dismissBtn.addEventListener("click", () => dismiss());

  const ready = (async () => {
    try {
      const graph = await api.graph();
      vm = createViewModel(graph);
      el.dish.textContent = graph.dish;
      showBanner(el.banner, graph.warning);
      rerender();
    } catch (err) {
      showBanner(
        el.banner,
        `failed to load graph: ${err instanceof Error ? err.message : err}`,
      );
      return;
    }
    try {
      const body = await api.ingredients(15);
      renderRareList(el.rare, body.ingredients);
    } catch (err) {
      showToast(el.toast, err instanceof ApiError ? err.message : String(err));
    }
  })();

  return { ready, vm: () => vm, expandNode, showSamples, reveal, dismiss };
}
