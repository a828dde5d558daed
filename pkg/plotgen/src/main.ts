// Renders Bode magnitude figures from sweep CSVs. The script never
// recomputes transfer functions: whatever the CSV says is what gets drawn.
//
//   node dist/main.js --csv bode_d0.025.csv:d=0.025 --csv bode_d1.csv:d=1 \
//       [--db] [--range 1:50] --out overlay.svg

import { parseCsvSpec, readSweepCsv } from "./csv";
import { PlotJob, renderMagnitude } from "./svg";

function usage(): never {
  console.error(
    "usage: plotgen --csv PATH[:LABEL] [--csv PATH[:LABEL] ...] [--db] [--range LO:HI] --out PATH",
  );
  process.exit(2);
}

function run(argv: string[]): number {
  const specs: string[] = [];
  let db = false;
  let out = "";
  let range: [number, number] | undefined;
  for (let i = 0; i < argv.length; i++) {
    const a = argv[i];
    if (a === "--csv") {
      specs.push(argv[++i] ?? usage());
    } else if (a === "--db") {
      db = true;
    } else if (a === "--out") {
      out = argv[++i] ?? usage();
    } else if (a === "--range") {
      const spec = argv[++i] ?? usage();
      const m = /^([^:]+):([^:]+)$/.exec(spec);
      const lo = m ? Number(m[1]) : NaN;
      const hi = m ? Number(m[2]) : NaN;
      if (!isFinite(lo) || !isFinite(hi) || lo >= hi) {
        throw new Error(`bad range '${spec}': expected LO:HI with LO < HI`);
      }
      range = [lo, hi];
    } else {
      usage();
    }
  }
  if (specs.length === 0 || out === "") usage();

  const series = specs.map((spec) => {
    const { path, label } = parseCsvSpec(spec);
    return readSweepCsv(path, label);
  });
  const job: PlotJob = { series, db, range, out };
  const fig = renderMagnitude(job);
  const points = fig.curves.reduce((n, c) => n + c.nu.length, 0);
  console.log(`${out}: ${fig.curves.length} curves, ${points} points`);
  return 0;
}

try {
  process.exit(run(process.argv.slice(2)));
} catch (err) {
  console.error(`plotgen: error: ${err instanceof Error ? err.message : String(err)}`);
  process.exit(1);
}
