import init, { normalize, limit, verify_suite, suite_names } from "./pkg/qeuclid_web.js";

function show(id, f) {
  const out = document.getElementById(id);
  try {
    out.textContent = f();
    out.className = "";
  } catch (e) {
    out.textContent = e.message ?? String(e);
    out.className = "err";
  }
}

function bind(button, input, run) {
  document.getElementById(button).addEventListener("click", run);
  if (input) {
    document.getElementById(input).addEventListener("keydown", (ev) => {
      if (ev.key === "Enter") run();
    });
  }
}

await init();

const nf = () => show("nf-out", () => normalize(document.getElementById("nf-in").value));
const lim = () =>
  show("lim-out", () =>
    limit(document.getElementById("lim-in").value, Number(document.getElementById("lim-order").value) | 0),
  );

const select = document.getElementById("suite");
for (const name of suite_names().split(",")) {
  select.add(new Option(name, name));
}
const suite = () => {
  document.getElementById("suite-out").textContent = "running...";
  setTimeout(() => show("suite-out", () => verify_suite(select.value)), 0);
};

bind("nf-go", "nf-in", nf);
bind("lim-go", "lim-in", lim);
bind("suite-go", null, suite);
nf();
lim();
