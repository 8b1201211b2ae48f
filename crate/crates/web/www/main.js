import init, { latticeReport, bundleReport, censusReport } from "./pkg/pfk_web.js";

function wire(button, output, run) {
  document.getElementById(button).addEventListener("click", () => {
    const out = document.getElementById(output);
    try {
      out.textContent = run();
    } catch (e) {
      out.textContent = String(e);
    }
  });
}

const value = (id) => document.getElementById(id).value;

await init();
wire("lattice-run", "lattice-out", () => latticeReport(value("lattice")));
wire("bundle-run", "bundle-out", () => bundleReport(value("bundle")));
wire("census-run", "census-out", () => censusReport(value("space"), Number(value("q")), Number(value("dim"))));
