import init, { catalogInfo, twistHeatmap, actionCount, descentExplorer } from "./pkg/descent_web.js";

const KERNELS = ["C2", "C3", "C4", "V4", "C6", "S3", "D4", "Q8", "A4", "S4"];
const QUOTIENTS = ["C2", "C3", "C4", "V4", "S3"];

const $ = (id) => document.getElementById(id);

function fill(select, names, selected) {
  select.replaceChildren(...names.map((n) => new Option(n, n, false, n === selected)));
}

function el(tag, text, className) {
  const node = document.createElement(tag);
  if (text !== undefined) node.textContent = text;
  if (className) node.className = className;
  return node;
}

function table(header, rows) {
  const t = el("table");
  const head = el("tr");
  header.forEach((h) => head.append(el("th", h)));
  t.append(head);
  rows.forEach((cells) => {
    const tr = el("tr");
    cells.forEach((c) => tr.append(c instanceof Node ? c : el("td", String(c))));
    t.append(tr);
  });
  return t;
}

function guarded(out, f) {
  try {
    out.replaceChildren(f());
  } catch (e) {
    out.replaceChildren(el("p", String(e), "error"));
  }
}

function showCatalog() {
  guarded($("catalog-out"), () => {
    const info = JSON.parse(catalogInfo($("catalog-name").value));
    return table(
      ["order", "abelian", "|Z(G)|", "|Aut(G)|", "isomorphic to", "elements"],
      [[info.order, info.abelian, info.center_order, info.aut_order, info.isomorphic_to ?? "–",
        info.elements.map((n, i) => `${n} (${info.element_orders[i]})`).join(", ")]],
    );
  });
}

function showHeatmap() {
  guarded($("heatmap-out"), () => {
    const h = JSON.parse(twistHeatmap($("heatmap-g").value, $("heatmap-q").value));
    const max = Math.max(1, ...h.counts.flat());
    const rows = h.counts.map((row, i) => {
      const label = el("th", `α = [${h.labels[i]}]`, h.galois[i] ? "galois" : undefined);
      const cells = row.map((c) => {
        const td = el("td", String(c), c === 0 ? "zero" : undefined);
        if (c > 0) td.style.background = `rgba(40, 110, 200, ${0.15 + 0.6 * (c / max)})`;
        return td;
      });
      return [label, ...cells];
    });
    return table(["", ...h.labels.map((l) => `φ = [${l}]`)], rows);
  });
}

function refreshActions() {
  const select = $("explorer-action");
  try {
    const n = actionCount($("explorer-g").value, $("explorer-q").value);
    fill(select, [...Array(n).keys()].map((i) => (i === 0 ? "0 (trivial)" : String(i))));
  } catch (e) {
    select.replaceChildren();
    $("explorer-out").replaceChildren(el("p", String(e), "error"));
  }
}

function showExplorer() {
  guarded($("explorer-out"), () => {
    const index = parseInt($("explorer-action").value, 10) || 0;
    const r = JSON.parse(descentExplorer($("explorer-g").value, $("explorer-q").value, index));
    const wrap = el("div");
    wrap.append(el("p", `Γ = ${r.total.label} (order ${r.total.order}${r.total.isomorphic_to ? `, ≅ ${r.total.isomorphic_to}` : ""})` +
      `${r.truncated ? "; list truncated" : ""}`));
    wrap.append(table(
      ["section", "Galois", "V", "E", "Gal(E/K)"],
      r.sections.map((s) => [
        s.section.join(" "), s.galois ? "yes" : "no", `{${s.V.join(", ")}}`, `{${s.E.join(", ")}}`,
        `order ${s.galois_group_order}${s.galois_group ? ` ≅ ${s.galois_group}` : ""}`,
      ]),
    ));
    return wrap;
  });
}

function on(id, handler) {
  $(id).addEventListener("submit", (e) => {
    e.preventDefault();
    handler();
  });
}

await init();
fill($("heatmap-g"), KERNELS, "S3");
fill($("heatmap-q"), QUOTIENTS, "C2");
fill($("explorer-g"), KERNELS, "C3");
fill($("explorer-q"), QUOTIENTS, "C2");
$("explorer-g").addEventListener("change", refreshActions);
$("explorer-q").addEventListener("change", refreshActions);
refreshActions();
on("catalog-form", showCatalog);
on("heatmap-form", showHeatmap);
on("explorer-form", showExplorer);
$("status").textContent = "Ready.";
showCatalog();
