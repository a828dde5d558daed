import { execFileSync } from "child_process";
import * as fs from "fs";
import * as os from "os";
import * as path from "path";
import { fileURLToPath } from "url";
import { beforeAll, describe, expect, it } from "vitest";

import { CsvError, parseCsvSpec, readSweepCsv, SWEEP_HEADER } from "../src/csv";
import { renderMagnitude } from "../src/svg";

const ROOT = path.resolve(path.dirname(fileURLToPath(import.meta.url)), "..");
const DAMPINGS = ["0.025", "1", "10"];

let tmp: string;

beforeAll(() => {
  // build first so the CLI end-to-end test runs the emitted JS
  execFileSync(
    process.execPath,
    [path.join(ROOT, "node_modules", "typescript", "bin", "tsc"), "-p", ROOT],
    { stdio: "pipe" },
  );
  // the sweeps come from the beam package CLI; this tool never computes H itself
  tmp = fs.mkdtempSync(path.join(os.tmpdir(), "plotgen-"));
  execFileSync(
    "python3",
    [
      "-m", "beamfreq", "sweep",
      "--model", "timoshenko",
      "--output", "displacement",
      "--damping", DAMPINGS.join(","),
      "--range", "1:50",
      "--points", "4096",
      "--out", path.join(tmp, "bode.csv"),
    ],
    { stdio: "pipe" },
  );
}, 180000);

function sweepPath(d: string): string {
  return path.join(tmp, `bode_d${d}.csv`);
}

function sweepSeries(d: string) {
  return readSweepCsv(sweepPath(d), `d=${d}`);
}

/** interior strict maxima, ignoring bumps under 1% of the global peak */
function localMaxima(nu: number[], y: number[]): number[] {
  let ymax = 0;
  for (const v of y) ymax = Math.max(ymax, v);
  const modes: number[] = [];
  for (let i = 1; i + 1 < y.length; i++) {
    if (y[i] > y[i - 1] && y[i] > y[i + 1] && y[i] > 0.01 * ymax) {
      modes.push(nu[i]);
    }
  }
  return modes;
}

function windowMax(nu: number[], y: number[], center: number, half: number): number {
  let best = -Infinity;
  for (let i = 0; i < nu.length; i++) {
    if (Math.abs(nu[i] - center) <= half) best = Math.max(best, y[i]);
  }
  return best;
}

describe("damping overlay", () => {
  it("renders three sweeps with peak ordinates decreasing in d at every mode", () => {
    const out = path.join(tmp, "overlay.svg");
    const fig = renderMagnitude({
      series: DAMPINGS.map(sweepSeries),
      db: false,
      out,
    });

    expect(fig.svg.startsWith("<svg")).toBe(true);
    expect(fs.existsSync(out)).toBe(true);
    expect(fig.curves.map((c) => c.label)).toEqual(DAMPINGS.map((d) => `d=${d}`));

    // five resonances below 50 Hz on the lightest-damping curve
    const light = fig.curves[0];
    const modes = localMaxima(light.nu, light.y);
    expect(modes.length).toBe(5);

    for (const nuMode of modes) {
      const ords = fig.curves.map((c) => windowMax(c.nu, c.y, nuMode, 1.0));
      expect(ords[0]).toBeGreaterThan(ords[1]);
      expect(ords[1]).toBeGreaterThan(ords[2]);
    }
  });

  it("runs end to end from the command line", () => {
    const out = path.join(tmp, "overlay_db.svg");
    const stdout = execFileSync(
      process.execPath,
      [
        path.join(ROOT, "dist", "main.js"),
        "--csv", `${sweepPath("0.025")}:d=0.025`,
        "--csv", `${sweepPath("1")}:d=1`,
        "--csv", `${sweepPath("10")}:d=10`,
        "--db",
        "--out", out,
      ],
      { encoding: "utf8" },
    );
    expect(stdout).toContain(out);
    expect(stdout).toContain("3 curves");
    const svg = fs.readFileSync(out, "utf8");
    expect(svg.startsWith("<svg")).toBe(true);
    expect(svg).toContain("|H| [dB]");
  });

  it("rejects a bad invocation without writing anything", () => {
    const out = path.join(tmp, "never.svg");
    expect(() =>
      execFileSync(
        process.execPath,
        [path.join(ROOT, "dist", "main.js"), "--csv", sweepPath("1")],
        { stdio: "pipe" },
      ),
    ).toThrow();
    expect(fs.existsSync(out)).toBe(false);
  });
});

describe("rendering", () => {
  it("plots the mag_db column in dB mode instead of recomputing", () => {
    const s = sweepSeries("1");
    const fig = renderMagnitude({
      series: [s],
      db: true,
      out: path.join(tmp, "db.svg"),
    });
    expect(fig.curves[0].y).toEqual(s.magDb);
    expect(fig.svg).toContain("|H| [dB]");
  });

  it("clips to the requested frequency window", () => {
    const s = sweepSeries("1");
    const fig = renderMagnitude({
      series: [s],
      db: false,
      range: [10, 20],
      out: path.join(tmp, "clip.svg"),
    });
    const nu = fig.curves[0].nu;
    expect(nu.length).toBeGreaterThan(0);
    expect(nu.length).toBeLessThan(s.nu.length);
    expect(Math.min(...nu)).toBeGreaterThanOrEqual(10);
    expect(Math.max(...nu)).toBeLessThanOrEqual(20);
  });

  it("is deterministic", () => {
    const s = sweepSeries("10");
    const a = renderMagnitude({ series: [s], db: false, out: path.join(tmp, "a.svg") });
    const b = renderMagnitude({ series: [s], db: false, out: path.join(tmp, "b.svg") });
    expect(a.svg).toBe(b.svg);
    expect(fs.readFileSync(path.join(tmp, "a.svg"), "utf8")).toBe(
      fs.readFileSync(path.join(tmp, "b.svg"), "utf8"),
    );
  });

  it("never mutates its input CSVs", () => {
    const before = fs.readFileSync(sweepPath("0.025"));
    renderMagnitude({
      series: [sweepSeries("0.025")],
      db: true,
      out: path.join(tmp, "mut.svg"),
    });
    expect(fs.readFileSync(sweepPath("0.025")).equals(before)).toBe(true);
  });

  it("refuses an empty job and leaves no file behind", () => {
    const out = path.join(tmp, "empty.svg");
    expect(() => renderMagnitude({ series: [], db: false, out })).toThrow(/empty data/);

    const s = sweepSeries("1");
    // a window past the sweep end leaves nothing to draw
    expect(() =>
      renderMagnitude({ series: [s], db: false, range: [60, 70], out }),
    ).toThrow(/empty data/);
    expect(fs.existsSync(out)).toBe(false);
  });
});

describe("csv ingestion", () => {
  it("splits an optional :LABEL off the path", () => {
    expect(parseCsvSpec("/t/bode_d1.csv")).toEqual({
      path: "/t/bode_d1.csv",
      label: "bode_d1",
    });
    expect(parseCsvSpec("/t/bode_d1.csv:d=1")).toEqual({
      path: "/t/bode_d1.csv",
      label: "d=1",
    });
  });

  it("skips guarded rows but keeps the surrounding data", () => {
    const p = path.join(tmp, "guarded.csv");
    fs.writeFileSync(
      p,
      SWEEP_HEADER +
        "\n" +
        "1,0.0001,0,0.0001,-80,0,ok\n" +
        "2,,,,,,near_singular\n" +
        "3,0.0002,0,0.0002,-73.9794,0,ok\n",
    );
    const s = readSweepCsv(p, "g");
    expect(s.nu).toEqual([1, 3]);
    expect(s.mag).toEqual([0.0001, 0.0002]);
  });

  it("rejects a foreign header", () => {
    const p = path.join(tmp, "foreign.csv");
    fs.writeFileSync(p, "freq,mag\n1,2\n");
    expect(() => readSweepCsv(p, "x")).toThrow(CsvError);
    expect(() => readSweepCsv(p, "x")).toThrow(/schema mismatch/);
  });

  it("rejects rows with the wrong field count", () => {
    const p = path.join(tmp, "short.csv");
    fs.writeFileSync(p, SWEEP_HEADER + "\n1,2,3,ok\n");
    expect(() => readSweepCsv(p, "x")).toThrow(/expected 7/);
  });

  it("rejects non-numeric ok rows", () => {
    const p = path.join(tmp, "nan.csv");
    fs.writeFileSync(p, SWEEP_HEADER + "\n1,0,0,abc,0,0,ok\n");
    expect(() => readSweepCsv(p, "x")).toThrow(/not numeric/);
  });

  it("rejects a sweep that guarded every row", () => {
    const p = path.join(tmp, "allguarded.csv");
    fs.writeFileSync(p, SWEEP_HEADER + "\n228.5,,,,,,near_singular\n");
    const s = readSweepCsv(p, "x");
    const out = path.join(tmp, "allguarded.svg");
    expect(() => renderMagnitude({ series: [s], db: false, out })).toThrow(/empty data/);
    expect(fs.existsSync(out)).toBe(false);
  });
});
