import init, { classify_lambda, phase_damping_kernel, dephasing_sweep } from "./pkg/qdeph_web.js";

const $ = (id) => document.getElementById(id);

function bars(canvas, values) {
  const g = canvas.getContext("2d");
  g.clearRect(0, 0, canvas.width, canvas.height);
  const w = canvas.width / values.length;
  const top = Math.max(1e-12, ...values.map(Math.abs));
  const mid = canvas.height / 2;
  values.forEach((v, i) => {
    const h = (v / top) * (mid - 10);
    g.fillStyle = v < 0 ? "#c0392b" : "#2c7fb8";
    g.fillRect(i * w + 2, mid - Math.max(h, 0), w - 4, Math.abs(h));
  });
  g.strokeStyle = "#999";
  g.beginPath(); g.moveTo(0, mid); g.lineTo(canvas.width, mid); g.stroke();
}

function classify() {
  try {
    const v = JSON.parse(classify_lambda($("lambda").value));
    $("verdict").textContent = JSON.stringify(v, null, 2);
    if (v.phase_damping) {
      bars($("bars"), v.pi);
    } else {
      bars($("bars"), [v.violation.value ?? 0]);
    }
  } catch (e) {
    $("verdict").textContent = String(e);
  }
}

function kernel() {
  try {
    const v = JSON.parse(phase_damping_kernel($("weights").value));
    const c = $("heat"), g = c.getContext("2d"), s = c.width / v.n;
    g.clearRect(0, 0, c.width, c.height);
    v.kernel.forEach((row, i) => row.forEach(([re, im], j) => {
      const a = Math.hypot(re, im);
      g.fillStyle = `hsl(210, 60%, ${Math.round(95 - 60 * a)}%)`;
      g.fillRect(j * s, i * s, s, s);
    }));
    $("entropy").textContent =
      `S(ρ) = ${v.entropy_in.toFixed(6)}  →  S(Φ(ρ)) = ${v.entropy_out.toFixed(6)} nats (ρ = uniform superposition)`;
  } catch (e) {
    $("entropy").textContent = String(e);
  }
}

function sweep() {
  const v = JSON.parse(dephasing_sweep(+$("n").value, +$("dk").value, 41, BigInt($("seed").value)));
  const c = $("curve"), g = c.getContext("2d");
  g.clearRect(0, 0, c.width, c.height);
  const ys = v.points.flatMap((p) => [p.lhs, p.rhs]);
  const lo = Math.min(...ys), hi = Math.max(...ys) + 1e-9;
  const x = (s) => 20 + s * (c.width - 40);
  const y = (t) => c.height - 20 - ((t - lo) / (hi - lo)) * (c.height - 40);
  for (const [key, colour] of [["lhs", "#2c7fb8"], ["rhs", "#e67e22"]]) {
    g.strokeStyle = colour;
    g.beginPath();
    v.points.forEach((p, i) => (i ? g.lineTo : g.moveTo).call(g, x(p.s), y(p[key])));
    g.stroke();
  }
}

await init();
$("classify").onclick = classify;
$("kernel").onclick = kernel;
$("sweep").onclick = sweep;
classify();
kernel();
sweep();
