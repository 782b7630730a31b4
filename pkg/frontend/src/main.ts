import { DesignApp } from "./app.js";
import { DesignClient } from "./api.js";
import { SessionStore } from "./state.js";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

const store = new SessionStore(window.localStorage);
// same-origin by default; ?api=http://host:port points at a separate service
const apiBase = new URLSearchParams(window.location.search).get("api") ?? "";
const client = new DesignClient(apiBase);

const app = new DesignApp(store, client, {
  lattice: byId("lattice-view"),
  latticeSummary: byId("lattice-summary"),
  patternRowsA: byId("pattern-rows-a"),
  patternRowsC: byId("pattern-rows-c"),
  results: byId("results-panel"),
  search: byId("search-panel"),
  raw: byId("raw-response"),
  form: {
    mode: byId("f-mode"),
    width: byId("f-width"),
    height: byId("f-height"),
    xsize: byId("f-xsize"),
    ysize: byId("f-ysize"),
    patternA: byId("f-pattern-a"),
    patternC: byId("f-pattern-c"),
    swap: byId("f-swap"),
    depth: byId("f-depth"),
    estar: byId("f-estar"),
    nstar: byId("f-nstar"),
    maxside: byId("f-maxside"),
    noise: byId("f-noise"),
    topk: byId("f-topk"),
  },
});

byId("btn-rebuild").addEventListener("click", () => {
  app.readForm();
  app.rebuildLattice();
});
byId("btn-evaluate").addEventListener("click", () => {
  app.readForm();
  app.evaluate();
});
byId("btn-search").addEventListener("click", () => {
  app.readForm();
  const topk = Number((byId<HTMLInputElement>("f-topk")).value) || 10;
  app.runSearch(topk);
});
byId("btn-preset-reference").addEventListener("click", () => app.applyPreset("1", "0"));
byId("btn-preset-zero").addEventListener("click", () => app.applyPreset("0", "0"));

app.start();
