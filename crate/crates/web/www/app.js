import init, { classify, isomorphism, representation, examples } from "./pkg/ehresmann_web.js";

const $ = (id) => document.getElementById(id);

function verdict(ok) {
  const span = document.createElement("span");
  span.className = ok ? "pass" : "fail";
  span.textContent = ok ? "holds" : "fails";
  return span;
}

function table(rows) {
  const t = document.createElement("table");
  for (const [key, value] of rows) {
    const tr = t.insertRow();
    const th = document.createElement("th");
    th.textContent = key;
    tr.appendChild(th);
    const td = tr.insertCell();
    if (value instanceof Node) td.appendChild(value);
    else td.textContent = Array.isArray(value) ? value.join(", ") : String(value);
  }
  return t;
}

function show(json, render) {
  const out = $("result");
  out.replaceChildren();
  const v = JSON.parse(json);
  if (!v.ok) {
    const p = document.createElement("p");
    p.className = "error";
    p.textContent = v.error;
    out.appendChild(p);
    return;
  }
  for (const node of render(v)) out.appendChild(node);
}

function timed(label, f) {
  $("status").textContent = `${label}…`;
  setTimeout(() => {
    const t0 = performance.now();
    f();
    $("status").textContent = `${label}: ${(performance.now() - t0).toFixed(0)} ms`;
  }, 0);
}

function source() {
  return $("source").value;
}

function renderClassify(v) {
  const rows = [
    ["size", v.size],
    ["E", v.E],
    ["classification", v.classification],
    ["variety identities", verdict(v.variety_passed)],
    ["category axioms", verdict(v.category_axioms_passed)],
  ];
  if (v.left_restriction_witness) {
    const w = v.left_restriction_witness;
    rows.push(["left restriction fails at", `a = ${w.a}, e = ${w.e}`]);
  }
  if (v.right_restriction_witness) {
    const w = v.right_restriction_witness;
    rows.push(["right restriction fails at", `a = ${w.a}, e = ${w.e}`]);
  }
  const ops = document.createElement("table");
  const head = ops.insertRow();
  for (const h of ["a", "a⁺", "a*"]) {
    const th = document.createElement("th");
    th.textContent = h;
    head.appendChild(th);
  }
  v.names.forEach((name, i) => {
    const tr = ops.insertRow();
    for (const text of [name, v.plus[i], v.star[i]]) tr.insertCell().textContent = text;
  });
  return [table(rows), ops];
}

function renderIso(v) {
  const nodes = [
    table([
      ["order", v.order === "r" ? "≤ᵣ" : "≤ₗ"],
      ["restriction hypothesis", verdict(v.hypothesis_holds)],
      ["φ, ψ mutually inverse", verdict(v.bijection)],
      ["φ multiplicative", verdict(v.homomorphism)],
      ["pairs checked", `${v.pairs_checked} (${v.composable_pairs} composable)`],
      ["failing pairs", `${v.failures_composable} composable, ${v.failures_not_composable} not`],
    ]),
  ];
  if (v.witness) {
    const w = v.witness;
    const pre = document.createElement("pre");
    pre.textContent = [
      `a = ${w.a_name}, b = ${w.b_name}, ab = ${w.ab_name}`,
      `φ(a)     = ${w.phi_a}`,
      `φ(b)     = ${w.phi_b}`,
      `φ(ab)    = ${w.phi_ab}`,
      `φ(a)φ(b) = ${w.phi_a_phi_b}`,
    ].join("\n");
    nodes.push(pre);
  }
  return nodes;
}

function renderRep(v) {
  const rows = [
    ["size", v.size],
    ["Reg_E(S)", `${v.reg_e.length}: ${v.reg_e.join(", ")}`],
    ["EI", verdict(v.is_ei)],
    ["dim Rad(ℚC)", v.category_radical_dim],
    ["dim Rad(ℚS)", v.semigroup_radical_dim],
  ];
  if (v.ei_witness) rows.push(["EI fails at", v.ei_witness]);
  if (v.semisimple_check === null) {
    rows.push(["ℚReg_E(S) ≅ ℚS/Rad(ℚS)", `not applicable (${v.unmet_preconditions.join(", ")})`]);
  } else {
    rows.push(["ℚReg_E(S) ≅ ℚS/Rad(ℚS)", verdict(v.semisimple_check)]);
  }
  return [table(rows)];
}

await init();

for (const spec of JSON.parse(examples())) {
  const opt = document.createElement("option");
  opt.value = opt.textContent = spec;
  $("example").appendChild(opt);
}
$("example").value = "pt:2";
$("example").addEventListener("change", () => { $("source").value = $("example").value; });

$("classify").addEventListener("click", () =>
  timed("classify", () => show(classify(source()), renderClassify)));
$("iso").addEventListener("click", () => {
  const order = document.querySelector('input[name="order"]:checked').value;
  timed("isomorphism", () => show(isomorphism(source(), order), renderIso));
});
$("rep").addEventListener("click", () =>
  timed("representation", () => show(representation(source()), renderRep)));
