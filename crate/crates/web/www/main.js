import init, { plane_avoid, curve_point, p1_partner } from "./pkg/semistab_web.js";

const $ = (id) => document.getElementById(id);
const show = (id, json) => { $(id).textContent = JSON.stringify(json, null, 2); };

function drawGrid(res) {
  const host = $("pa-grid");
  host.replaceChildren();
  if (!res.zero) return;
  const table = document.createElement("table");
  table.className = "grid";
  const head = table.insertRow();
  head.appendChild(document.createElement("th")).textContent = "x1\\x0";
  for (const l of res.labels) head.appendChild(document.createElement("th")).textContent = l;
  // highest x1 on top
  for (let j = res.zero.length - 1; j >= 0; j--) {
    const row = table.insertRow();
    row.appendChild(document.createElement("th")).textContent = res.labels[j];
    res.zero[j].forEach((z, i) => {
      const cell = row.insertCell();
      if (z) cell.className = "zero";
      if (res.cell && res.cell[0] === i && res.cell[1] === j) cell.className = "pick";
      cell.title = `(${res.labels[i]}, ${res.labels[j]})`;
    });
  }
  host.appendChild(table);
}

await init();

$("pa-go").onclick = () => {
  const res = JSON.parse(plane_avoid($("pa-field").value, $("pa-poly").value));
  drawGrid(res);
  delete res.zero;
  show("pa-out", res);
};
$("cp-go").onclick = () => {
  show("cp-out", JSON.parse(curve_point($("cp-field").value, $("cp-curve").value, $("cp-avoid").value)));
};
$("p1-go").onclick = () => {
  show("p1-out", JSON.parse(p1_partner($("p1-type").value, +$("p1-b").value, +$("p1-r").value)));
};

$("pa-go").click();
