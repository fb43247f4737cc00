import init, { entropy_curve, triplet_explorer, connectivity_views } from "./pkg/hoi_demo.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function kernel() {
  return {
    sigma: Math.pow(10, num("sigma")),
    alpha: num("alpha"),
    timepoints: num("timepoints"),
    seed: Math.max(0, Math.floor(num("seed"))),
  };
}

function showError(err) {
  $("error").textContent = err ? String(err.message ?? err) : "";
}

function diverging(v, scale) {
  const t = Math.max(-1, Math.min(1, v / (scale || 1)));
  const a = Math.round(255 * (1 - Math.abs(t)));
  return t >= 0 ? `rgb(255,${a},${a})` : `rgb(${a},${a},255)`;
}

function heatmap(canvas, values, n, { mask = false, symmetric = true } = {}) {
  const ctx = canvas.getContext("2d");
  const cell = canvas.width / n;
  let scale = 0;
  for (let i = 0; i < n; i++)
    for (let j = 0; j < n; j++)
      if (!(mask && i === j)) scale = Math.max(scale, Math.abs(values[i * n + j]));
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  for (let i = 0; i < n; i++) {
    for (let j = 0; j < n; j++) {
      const v = values[i * n + j];
      ctx.fillStyle = mask && i === j ? "#888" : diverging(symmetric ? v : Math.abs(v), scale);
      ctx.fillRect(j * cell, i * cell, Math.ceil(cell), Math.ceil(cell));
    }
  }
}

function drawCurve() {
  const k = kernel();
  const curve = entropy_curve(k.timepoints, 0.05, 20, 60, k.alpha, k.seed);
  const canvas = $("curve");
  const ctx = canvas.getContext("2d");
  const [w, h, pad] = [canvas.width, canvas.height, 28];
  const ceiling = Math.log2(k.timepoints);
  const x = (s) => pad + ((Math.log10(s) + 1.30103) / 2.60206) * (w - 2 * pad);
  const y = (b) => h - pad - (b / ceiling) * (h - 2 * pad);
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#aaa";
  ctx.setLineDash([4, 4]);
  ctx.beginPath();
  ctx.moveTo(pad, y(ceiling));
  ctx.lineTo(w - pad, y(ceiling));
  ctx.stroke();
  ctx.setLineDash([]);
  ctx.strokeStyle = "#2563eb";
  ctx.beginPath();
  for (let i = 0; i < curve.length; i += 2) {
    const [px, py] = [x(curve[i]), y(curve[i + 1])];
    i === 0 ? ctx.moveTo(px, py) : ctx.lineTo(px, py);
  }
  ctx.stroke();
  const current = entropy_curve(k.timepoints, k.sigma, k.sigma * 1.0001, 2, k.alpha, k.seed);
  ctx.fillStyle = "#dc2626";
  ctx.beginPath();
  ctx.arc(x(k.sigma), y(current[1]), 4, 0, 2 * Math.PI);
  ctx.fill();
  ctx.fillStyle = "#333";
  ctx.fillText(`log2 T = ${ceiling.toFixed(2)}`, pad + 4, y(ceiling) - 4);
  ctx.fillText(`H = ${current[1].toFixed(3)} bits at sigma = ${k.sigma.toFixed(2)}`, pad + 4, h - 8);
}

function drawTriplet() {
  const k = kernel();
  const [tc, dtc, o, hijk] = triplet_explorer(num("coupling"), num("synergy"), k.timepoints, k.sigma, k.alpha, k.seed);
  $("tc").textContent = tc.toFixed(5);
  $("dtc").textContent = dtc.toFixed(5);
  $("o").textContent = o.toFixed(5);
  $("o").style.color = o >= 0 ? "#b91c1c" : "#1d4ed8";
  $("hijk").textContent = hijk.toFixed(5);
}

let views = null;

function computeViews() {
  const k = kernel();
  const c = num("channels");
  $("slice").max = String(c - 1);
  if (num("slice") > c - 1) $("slice").value = String(c - 1);
  views = connectivity_views(c, Math.min(k.timepoints, 300), num("module-coupling"), k.sigma, k.alpha, k.seed);
  drawViews();
}

function drawViews() {
  if (!views) return;
  const c = views.channels;
  heatmap($("pearson"), views.pearson, c);
  heatmap($("mi"), views.mi, c, { mask: true });
  const i = num("slice");
  const tensor = views.oinfo;
  heatmap($("oinfo"), tensor.subarray(i * c * c, (i + 1) * c * c), c);
}

function bindOutputs() {
  for (const out of document.querySelectorAll("output")) {
    const input = $(out.id.replace(/-out$/, ""));
    const show = () => {
      const v = Number(input.value);
      out.textContent = input.id === "sigma" ? Math.pow(10, v).toFixed(2) : String(v);
    };
    input.addEventListener("input", show);
    show();
  }
}

function guarded(fn) {
  return () => {
    try {
      fn();
      showError(null);
    } catch (err) {
      showError(err);
    }
  };
}

async function main() {
  await init();
  bindOutputs();
  const all = guarded(() => {
    drawCurve();
    drawTriplet();
    computeViews();
  });
  for (const id of ["sigma", "alpha", "timepoints", "seed"]) $(id).addEventListener("change", all);
  for (const id of ["coupling", "synergy"]) $(id).addEventListener("input", guarded(drawTriplet));
  for (const id of ["channels", "module-coupling"]) $(id).addEventListener("change", guarded(computeViews));
  $("slice").addEventListener("input", guarded(drawViews));
  all();
}

main();
