/** DOM/SVG builders.  The lattice is drawn in the physical frame (qubits at
 * (x, y) = (u - v, u + v)), bonds colored by the layer they belong to, the
 * best cut overlaid as a polyline through plaquette centers. */

import type { DesignSession } from "./state.js";
import type {
  CutPathDoc,
  LatticeDocument,
  QubitInfo,
} from "./types.js";
import type {
  ResultsViewModel,
  SearchViewModel,
} from "./viewmodel.js";

const SCALE = 26;
const MARGIN = 40;

const LAYER_COLORS: Record<string, string> = {
  A: "#2b8a3e", // F1-role even layer
  B: "#94d82d",
  C: "#1971c2",
  D: "#74c0fc",
};

export interface LatticeHandlers {
  onQubitClick(q: QubitInfo): void;
  onDefectClick(coord: [number, number]): void;
}

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS("http://www.w3.org/2000/svg", tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, String(value));
  }
  return el;
}

/** Letter played by a bond under the session's pattern bits (mirrors the
 * service's layer assignment; used only to pick colors). */
export function bondLetter(
  doc: LatticeDocument,
  session: DesignSession,
  bondId: number,
): string {
  const bond = doc.bonds[bondId];
  const rows = bond.family === "F1" ? doc.rows_f1 : doc.rows_f2;
  const bits = bond.family === "F1" ? session.patternA : session.patternC;
  const index = rows.indexOf(bond.row);
  const bit = Number(bits[index] ?? "0");
  const firstOfPair = bit === bond.parity;
  const pair =
    (bond.family === "F1") === (session.orderSwap === 0) ? "AB" : "CD";
  return firstOfPair ? pair[0] : pair[1];
}

export function renderLattice(
  container: HTMLElement,
  doc: LatticeDocument,
  session: DesignSession,
  cut: CutPathDoc | null,
  handlers: LatticeHandlers,
): SVGSVGElement {
  const xs = doc.qubits.map((q) => q.x);
  const ys = doc.qubits.map((q) => q.y);
  const defectsDrawing = doc.lattice.defects.map(
    ([u, v]) => [u - v, u + v] as [number, number],
  );
  for (const [x, y] of defectsDrawing) {
    xs.push(x);
    ys.push(y);
  }
  const minX = Math.min(...xs) - 1.5;
  const minY = Math.min(...ys) - 1.5;
  const width = (Math.max(...xs) - minX + 1.5) * SCALE + MARGIN;
  const height = (Math.max(...ys) - minY + 1.5) * SCALE + MARGIN;
  const px = (x: number) => (x - minX) * SCALE + MARGIN / 2;
  const py = (y: number) => (y - minY) * SCALE + MARGIN / 2;

  const svg = svgEl("svg", {
    width: Math.round(width),
    height: Math.round(height),
    class: "lattice-view",
  });

  const byId = new Map(doc.qubits.map((q) => [q.id, q]));
  for (const bond of doc.bonds) {
    const qa = byId.get(bond.a)!;
    const qb = byId.get(bond.b)!;
    const letter = bondLetter(doc, session, bond.id);
    const line = svgEl("line", {
      x1: px(qa.x),
      y1: py(qa.y),
      x2: px(qb.x),
      y2: py(qb.y),
      stroke: LAYER_COLORS[letter],
      "stroke-width": 4,
      class: `bond bond-${letter}`,
      "data-bond": bond.id,
    });
    svg.appendChild(line);
  }

  if (cut) {
    const points = cut.sites
      .map(([u, v]) => `${px(u - v)},${py(u + v + 1)}`)
      .join(" ");
    svg.appendChild(
      svgEl("polyline", {
        points,
        fill: "none",
        stroke: "#e03131",
        "stroke-width": 3,
        "stroke-dasharray": "6 3",
        class: "cut-path",
      }),
    );
    for (const [u, v] of cut.sites) {
      svg.appendChild(
        svgEl("circle", {
          cx: px(u - v),
          cy: py(u + v + 1),
          r: 4,
          fill: "#e03131",
          class: "cut-site",
        }),
      );
    }
  }

  for (const q of doc.qubits) {
    const circle = svgEl("circle", {
      cx: px(q.x),
      cy: py(q.y),
      r: 8,
      fill: "#ffffff",
      stroke: "#343a40",
      "stroke-width": 1.5,
      class: "qubit",
      "data-qubit": q.id,
    });
    circle.addEventListener("click", () => handlers.onQubitClick(q));
    svg.appendChild(circle);
  }
  for (let i = 0; i < defectsDrawing.length; i++) {
    const [x, y] = defectsDrawing[i];
    const circle = svgEl("circle", {
      cx: px(x),
      cy: py(y),
      r: 8,
      fill: "#adb5bd",
      stroke: "#343a40",
      "stroke-width": 1.5,
      class: "defect",
      "data-defect": i,
    });
    const coord: [number, number] =
      session.spec.mode === "window" ? [x, y] : doc.lattice.defects[i];
    circle.addEventListener("click", () => handlers.onDefectClick(coord));
    svg.appendChild(circle);
  }

  container.replaceChildren(svg);
  return svg;
}

function row(label: string, value: string, cls = ""): HTMLElement {
  const div = document.createElement("div");
  div.className = `result-row ${cls}`.trim();
  const tag = document.createElement("span");
  tag.className = "result-label";
  tag.textContent = label;
  const val = document.createElement("span");
  val.className = "result-value";
  val.textContent = value;
  div.append(tag, val);
  return div;
}

export function renderResults(
  container: HTMLElement,
  vm: ResultsViewModel | null,
  error: string | null,
): void {
  container.replaceChildren();
  if (error !== null) {
    const div = document.createElement("div");
    div.className = "service-error";
    div.textContent = error;
    container.appendChild(div);
    return;
  }
  if (vm === null) {
    const div = document.createElement("div");
    div.className = "placeholder";
    div.textContent = "No evaluation yet.";
    container.appendChild(div);
    return;
  }
  container.appendChild(row("log2 cost", vm.log2Cost, "log2-cost"));
  for (const counter of vm.counters) {
    container.appendChild(row(counter.label, counter.value, `counter-${counter.label}`));
  }
  container.appendChild(row("cut edges E", vm.cutEdges, "cut-e"));
  container.appendChild(row("cut edges crossing bonds", vm.cutEffectiveEdges, "cut-eeff"));
  container.appendChild(row("sequence", vm.letters, "letters"));
  if (vm.tail !== null) {
    container.appendChild(row("tail word", vm.tail, "tail"));
  }
  if (vm.fidelity !== null) {
    container.appendChild(row("predicted F", vm.fidelity, "fidelity"));
    container.appendChild(row("log2 F", vm.log2Fidelity!, "log2-fidelity"));
    container.appendChild(row("samples Ns", vm.samples!, "samples"));
  }
  if (vm.tailWords !== null) {
    const details = document.createElement("details");
    const summary = document.createElement("summary");
    summary.textContent = `tail words (${vm.tailWords.length})`;
    details.appendChild(summary);
    for (const w of vm.tailWords) {
      details.appendChild(row(w.word, w.cost, "tail-word"));
    }
    container.appendChild(details);
  }
}

export function renderSearch(
  container: HTMLElement,
  vm: SearchViewModel | null,
  state: string | null,
  progress: number,
): void {
  container.replaceChildren();
  const status = document.createElement("div");
  status.className = "search-status";
  if (state === null) {
    status.textContent = "No search started.";
  } else {
    status.textContent = `search ${state} (${(progress * 100).toFixed(1)}%)`;
  }
  container.appendChild(status);
  const bar = document.createElement("progress");
  bar.max = 1;
  bar.value = progress;
  container.appendChild(bar);
  if (vm === null) return;

  container.appendChild(row("candidates", vm.totalCandidates, "total-candidates"));
  container.appendChild(row("evaluated", vm.candidatesEvaluated, "evaluated"));
  container.appendChild(row("cut paths", vm.pathsConsidered, "paths"));
  const table = document.createElement("table");
  table.className = "search-table";
  const head = document.createElement("tr");
  for (const title of ["rank", "pattern", "log2 cost", "symmetry"]) {
    const th = document.createElement("th");
    th.textContent = title;
    head.appendChild(th);
  }
  table.appendChild(head);
  for (const entry of vm.rows) {
    const tr = document.createElement("tr");
    tr.className = "search-row";
    for (const value of [entry.rank, entry.pattern, entry.log2Cost, entry.symmetry]) {
      const td = document.createElement("td");
      td.textContent = value;
      tr.appendChild(td);
    }
    table.appendChild(tr);
  }
  container.appendChild(table);
  if (vm.baseline !== null) {
    container.appendChild(
      row(
        "reference pattern",
        `${vm.baseline.pattern} cost ${vm.baseline.log2Cost} rank ${vm.baseline.rank}`,
        "baseline",
      ),
    );
  }
  if (vm.tailChosen !== null) {
    container.appendChild(row("tail chosen", vm.tailChosen, "tail-chosen"));
  }
  const ties = document.createElement("details");
  const summary = document.createElement("summary");
  summary.textContent = `tie set at cutoff (${vm.tieSet.length}) - pick by eye`;
  ties.appendChild(summary);
  for (const text of vm.tieSet) {
    const div = document.createElement("div");
    div.className = "tie-entry";
    div.textContent = text;
    ties.appendChild(div);
  }
  container.appendChild(ties);
}

export function renderPatternRows(
  container: HTMLElement,
  rows: number[],
  bits: string,
  family: string,
  onToggle: (index: number) => void,
): void {
  container.replaceChildren();
  rows.forEach((rowValue, i) => {
    const button = document.createElement("button");
    button.type = "button";
    button.className = `row-toggle row-${family}`;
    button.dataset.row = String(rowValue);
    button.textContent = `${family} row ${rowValue}: ${bits[i] === "1" ? "odd" : "even"}`;
    button.addEventListener("click", () => onToggle(i));
    container.appendChild(button);
  });
}
