import * as fs from "fs";
import * as path from "path";

// header contract of the sweep CSVs this tool consumes
export const SWEEP_HEADER = "nu_hz,re_h,im_h,mag,mag_db,phase_rad,status";

export class CsvError extends Error {}

export interface SweepSeries {
  label: string;
  nu: number[]; // Hz, ascending
  mag: number[]; // |H|
  magDb: number[]; // 20 log10 |H|
}

/** "path/to/file.csv:label" -> path + label; label defaults to the file stem. */
export function parseCsvSpec(spec: string): { path: string; label: string } {
  const i = spec.lastIndexOf(":");
  if (i > 1 && !spec.slice(i + 1).includes("/")) {
    return { path: spec.slice(0, i), label: spec.slice(i + 1) };
  }
  return { path: spec, label: path.basename(spec).replace(/\.[^.]*$/, "") };
}

export function readSweepCsv(filePath: string, label: string): SweepSeries {
  const text = fs.readFileSync(filePath, "utf8");
  const lines = text
    .split("\n")
    .map((ln) => ln.replace(/\r$/, ""))
    .filter((ln) => ln.length > 0);
  if (lines.length === 0 || lines[0] !== SWEEP_HEADER) {
    throw new CsvError(
      `schema mismatch in ${filePath}: expected header '${SWEEP_HEADER}'`,
    );
  }
  const nu: number[] = [];
  const mag: number[] = [];
  const magDb: number[] = [];
  for (let k = 1; k < lines.length; k++) {
    const cells = lines[k].split(",");
    if (cells.length !== 7) {
      throw new CsvError(
        `schema mismatch in ${filePath}: row ${k + 1} has ${cells.length} fields, expected 7`,
      );
    }
    // guarded frequencies carry a status and empty numeric fields; skip them
    if (cells[6] !== "ok") continue;
    const f = Number(cells[0]);
    const m = Number(cells[3]);
    const mdb = Number(cells[4]);
    if (!isFinite(f) || !isFinite(m) || !isFinite(mdb)) {
      throw new CsvError(
        `schema mismatch in ${filePath}: row ${k + 1} is not numeric`,
      );
    }
    nu.push(f);
    mag.push(m);
    magDb.push(mdb);
  }
  return { label, nu, mag, magDb };
}
