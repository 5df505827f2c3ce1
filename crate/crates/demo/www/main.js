import init, { defaultConfig, fanView, pairVerdict, shiftExplorer } from "./pkg/mckay_demo.js";

const $ = (id) => document.getElementById(id);
const NS = "http://www.w3.org/2000/svg";

function el(name, attrs, text) {
  const e = document.createElementNS(NS, name);
  for (const [k, v] of Object.entries(attrs)) e.setAttribute(k, v);
  if (text !== undefined) e.textContent = text;
  return e;
}

function run(errId, f) {
  $(errId).textContent = "";
  try {
    f();
  } catch (e) {
    $(errId).textContent = String(e);
  }
}

// Fans: junior simplex with y flipped so e3 sits on top.
let fanData = null;

function drawFan(index) {
  const svg = $("fan-svg");
  svg.replaceChildren();
  const pt = (r) => [r.x, -r.y];
  const fan = fanData.fans[index];
  if (fan) {
    for (const cone of fan.cones) {
      const pts = cone.map((i) => pt(fanData.rays[i - 1]).join(",")).join(" ");
      svg.append(el("polygon", { points: pts, fill: "#e8f0ff", stroke: "#446", "stroke-width": 0.004 }));
    }
  }
  for (const r of fanData.rays) {
    const [x, y] = pt(r);
    svg.append(el("circle", { cx: x, cy: y, r: 0.012, fill: r.exceptional ? "#c33" : "#333" }));
    svg.append(el("text", { x: x + 0.015, y: y - 0.015, "font-size": 0.04 }, r.label));
  }
}

function showFans() {
  fanData = JSON.parse(fanView($("config").value, $("edges").value, $("symmetry").value));
  const list = $("fan-list");
  list.replaceChildren();
  $("fan-summary").textContent = `${fanData.fans.length} fan(s)`;
  fanData.fans.forEach((f, i) => {
    const b = document.createElement("button");
    const flags = `smooth=${f.smooth} crepant=${f.crepant} projective=${f.projective}`;
    b.textContent = `fan ${i + 1}: ${flags}`;
    b.title = f.cones.map((c) => c.join(",")).join(" ");
    b.onclick = () => drawFan(i);
    list.append(b, document.createElement("br"));
  });
  $("fan-ref").textContent = fanData.reference
    ? `reference: projective=${fanData.reference.projective}, cones ${fanData.reference.cones.map((c) => c.join(",")).join(" ")}`
    : "";
  drawFan(0);
}

// Quiver: characters on a circle, arrows colored by type.
const TYPE_STYLE = {
  "[1,1]": { stroke: "#222", dash: "" },
  "[0,1]": { stroke: "#c22", dash: "0.04 0.03" },
  "[1,0]": { stroke: "#24c", dash: "0.04 0.03" },
  "[0,0]": { stroke: "#aaa", dash: "0.01 0.02" },
};
const PALETTE = ["#ffd6a5", "#caffbf", "#9bf6ff", "#bdb2ff", "#ffc6ff", "#fdffb6", "#a0c4ff", "#ffadad"];

function showPair() {
  const data = JSON.parse(pairVerdict($("config").value, $("orbit-a").value, $("orbit-b").value));
  const svg = $("quiver-svg");
  svg.replaceChildren();
  const defs = el("defs", {});
  for (const [t, s] of Object.entries(TYPE_STYLE)) {
    const m = el("marker", { id: `arrow-${t}`, viewBox: "0 0 10 10", refX: 10, refY: 5, markerWidth: 5, markerHeight: 5, orient: "auto" });
    m.append(el("path", { d: "M0,0 L10,5 L0,10 z", fill: s.stroke }));
    defs.append(m);
  }
  svg.append(defs);
  const pos = Object.fromEntries(data.quiver.vertices.map((v) => [v.name, v]));
  for (const a of data.quiver.arrows) {
    const p = pos[a.tail], q = pos[a.head];
    const s = TYPE_STYLE[a.type] ?? TYPE_STYLE["[0,0]"];
    // Curve by coordinate so parallel arrows stay apart; shorten to the node rim.
    const bend = 0.12 * (a.coord - 2);
    const mx = (p.x + q.x) / 2 - bend * (q.y - p.y), my = (p.y + q.y) / 2 + bend * (q.x - p.x);
    const d = Math.hypot(q.x - mx, q.y - my) || 1;
    const ex = q.x - (0.1 * (q.x - mx)) / d, ey = q.y - (0.1 * (q.y - my)) / d;
    const path = el("path", {
      d: `M${p.x},${p.y} Q${mx},${my} ${ex},${ey}`,
      fill: "none",
      stroke: s.stroke,
      "stroke-width": a.witness ? 0.022 : 0.008,
      "stroke-dasharray": s.dash,
      "marker-end": `url(#arrow-${a.type})`,
    });
    path.append(el("title", {}, `${a.tail} -> ${a.head} x${a.coord} ${a.type}${a.witness ? " witness" : ""}`));
    svg.append(path);
  }
  for (const v of data.quiver.vertices) {
    const fill = v.component === null ? "#eee" : PALETTE[v.component % PALETTE.length];
    svg.append(el("circle", { cx: v.x, cy: v.y, r: 0.1, fill, stroke: "#333", "stroke-width": 0.008 }));
    svg.append(el("text", { x: v.x, y: v.y + 0.02, "font-size": 0.06, "text-anchor": "middle" }, v.name.replace("chi_", "")));
  }
  const v = data.verdict;
  const lines = [
    `${v.pair[0]} vs ${v.pair[1]}: ${v.outcome}`,
    `Hom(first, second) = 0: ${v.condition_hom_ab}`,
    `Hom(second, first) = 0: ${v.condition_hom_ba}`,
    "",
    ...v.components.map((c, i) => `component ${i + 1}: ${c.vertices.join(", ")}`),
    "",
    `surfaces: ${data.orbits.surfaces.join(" ")}`,
    `curves: ${data.orbits.curves.join(" ")}`,
  ];
  $("pair-text").textContent = lines.join("\n");
}

// Shift moves: before/after coefficient tables.
function familyTable(rays, fam, base) {
  const t = document.createElement("table");
  const head = t.insertRow();
  for (const h of ["", ...rays]) head.append(Object.assign(document.createElement("th"), { textContent: h }));
  fam.rows.forEach((row, i) => {
    const tr = t.insertRow();
    tr.insertCell().textContent = row.character;
    row.coefficients.forEach((c, k) => {
      const td = tr.insertCell();
      td.textContent = c;
      if (base && base.rows[i].coefficients[k] !== c) td.className = "changed";
    });
  });
  return t;
}

function summary(fam) {
  const p = document.createElement("p");
  const unstable = fam.valid ? (fam.unstable.length ? fam.unstable.join(" ") : "none") : "n/a";
  p.textContent = `weight ${fam.weight}; valid ${fam.valid}; unstable fixed points: ${unstable}`;
  return p;
}

function showShift() {
  const data = JSON.parse(shiftExplorer($("config").value, $("moves").value));
  const out = $("shift-out");
  out.replaceChildren();
  const row = document.createElement("div");
  row.className = "row";
  for (const [title, fam, base] of [["maximal shift", data.before, null], ["after moves", data.after, data.before]]) {
    const box = document.createElement("div");
    box.append(Object.assign(document.createElement("h3"), { textContent: title }), summary(fam), familyTable(data.rays, fam, base));
    if (fam.violations.length) {
      box.append(Object.assign(document.createElement("pre"), { textContent: fam.violations.join("\n") }));
    }
    row.append(box);
  }
  out.append(row);
}

await init();
$("config").value = defaultConfig();
$("fan-go").onclick = () => run("fan-err", showFans);
$("pair-go").onclick = () => run("pair-err", showPair);
$("shift-go").onclick = () => run("shift-err", showShift);
run("fan-err", showFans);
run("pair-err", showPair);
run("shift-err", showShift);
