import init, { renderDocument, countTable, browseFree } from "./pkg/tangles_web.js";

const $ = (id) => document.getElementById(id);

function show(result, drawing, stats) {
  const r = JSON.parse(result);
  if (r.error) {
    $(drawing).innerHTML = "";
    $(stats).className = "error";
    $(stats).textContent = r.error;
    return r;
  }
  $(drawing).innerHTML = r.svg;
  $(stats).className = "stats";
  const lines = [
    `m = ${r.m}, k = ${r.k}, c = ${r.c}`,
    `${r.arcs} arcs (${r.convex} convex, ${r.concave} concave)`,
    `length ${r.length.toFixed(6)}, area ${r.area.toFixed(6)}`,
    `smooth and simple: ${r.smooth_and_simple}`,
    r.document,
  ];
  if (r.total !== undefined) lines.unshift(`${r.index + 1} of ${r.total}`);
  $(stats).textContent = lines.join("\n");
  return r;
}

function draw() {
  const out = renderDocument($("doc").value, Number($("radius").value), $("dual").checked, $("packing").checked);
  show(out, "draw-out", "draw-stats");
}

let index = 0;
function browse(step) {
  index = Math.max(0, index + step);
  const r = show(browseFree(Number($("bm").value), Number($("bc").value), index, 1), "browse-out", "browse-stats");
  if (r.index !== undefined) index = r.index;
}

function count() {
  const rows = countTable(Number($("tm").value)).trim().split("\n").map((l) => l.split(","));
  const head = `<tr>${rows[0].map((h) => `<th>${h}</th>`).join("")}</tr>`;
  const body = rows.slice(1).map((r) => `<tr>${r.map((x) => `<td>${x}</td>`).join("")}</tr>`).join("");
  $("table-out").innerHTML = `<table>${head}${body}</table>`;
}

await init();
$("draw").onclick = draw;
$("prev").onclick = () => browse(-1);
$("next").onclick = () => browse(1);
$("bm").onchange = $("bc").onchange = () => { index = 0; browse(0); };
$("count").onclick = count;
draw();
browse(0);
count();
