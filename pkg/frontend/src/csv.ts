/**
 * Strict readers for the simulator's two CSV schemas.
 *
 * Curve files:  t,regret,psep_mean,psep_min,psep_max,rmse_arm1..rmse_armN
 * Sweep files:  lambda,method,final_regret,std_error
 *
 * Any header deviation is an error that names the offending column, so a
 * schema drift between the simulator and the plots is caught immediately.
 */

import { readFileSync } from "node:fs";

export interface CurveData {
  path: string;
  t: number[];
  regret: number[];
  psepMean: number[];
  psepMin: number[];
  psepMax: number[];
  /** rmse[arm][row], one series per arm */
  rmse: number[][];
}

export interface SweepRow {
  lambda: number;
  method: string;
  finalRegret: number;
  stdError: number;
}

export class SchemaError extends Error {}

function splitNonEmptyLines(text: string): string[] {
  return text
    .split(/\r?\n/)
    .map((line) => line.trim())
    .filter((line) => line.length > 0);
}

function parseNumber(cell: string, column: string, line: number): number {
  const value = Number(cell);
  if (cell === "" || Number.isNaN(value)) {
    throw new SchemaError(
      `bad value ${JSON.stringify(cell)} in column '${column}' on line ${line}`,
    );
  }
  return value;
}

export function parseCurveCsv(path: string): CurveData {
  const lines = splitNonEmptyLines(readFileSync(path, "utf8"));
  if (lines.length === 0) {
    throw new SchemaError(`${path}: file is empty`);
  }
  const header = lines[0].split(",");
  const fixed = ["t", "regret", "psep_mean", "psep_min", "psep_max"];
  fixed.forEach((name, k) => {
    if (header[k] !== name) {
      throw new SchemaError(
        `${path}: expected column '${name}' at position ${k + 1}, got '${header[k] ?? ""}'`,
      );
    }
  });
  const armColumns = header.slice(fixed.length);
  if (armColumns.length === 0) {
    throw new SchemaError(`${path}: expected column 'rmse_arm1' after '${fixed[4]}'`);
  }
  armColumns.forEach((name, k) => {
    if (name !== `rmse_arm${k + 1}`) {
      throw new SchemaError(
        `${path}: expected column 'rmse_arm${k + 1}', got '${name}'`,
      );
    }
  });
  if (lines.length === 1) {
    throw new SchemaError(`${path}: no data rows`);
  }
  const data: CurveData = {
    path,
    t: [],
    regret: [],
    psepMean: [],
    psepMin: [],
    psepMax: [],
    rmse: armColumns.map(() => []),
  };
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== header.length) {
      throw new SchemaError(
        `${path}: line ${i + 1} has ${cells.length} cells, expected ${header.length}`,
      );
    }
    data.t.push(parseNumber(cells[0], "t", i + 1));
    data.regret.push(parseNumber(cells[1], "regret", i + 1));
    data.psepMean.push(parseNumber(cells[2], "psep_mean", i + 1));
    data.psepMin.push(parseNumber(cells[3], "psep_min", i + 1));
    data.psepMax.push(parseNumber(cells[4], "psep_max", i + 1));
    armColumns.forEach((name, k) => {
      data.rmse[k].push(parseNumber(cells[5 + k], name, i + 1));
    });
  }
  return data;
}

export function parseSweepCsv(path: string): SweepRow[] {
  const lines = splitNonEmptyLines(readFileSync(path, "utf8"));
  if (lines.length === 0) {
    throw new SchemaError(`${path}: file is empty`);
  }
  const expected = ["lambda", "method", "final_regret", "std_error"];
  const header = lines[0].split(",");
  expected.forEach((name, k) => {
    if (header[k] !== name) {
      throw new SchemaError(
        `${path}: expected column '${name}' at position ${k + 1}, got '${header[k] ?? ""}'`,
      );
    }
  });
  if (header.length !== expected.length) {
    throw new SchemaError(`${path}: unexpected extra column '${header[expected.length]}'`);
  }
  if (lines.length === 1) {
    throw new SchemaError(`${path}: no data rows`);
  }
  const rows: SweepRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== expected.length) {
      throw new SchemaError(
        `${path}: line ${i + 1} has ${cells.length} cells, expected ${expected.length}`,
      );
    }
    rows.push({
      lambda: parseNumber(cells[0], "lambda", i + 1),
      method: cells[1],
      finalRegret: parseNumber(cells[2], "final_regret", i + 1),
      stdError: parseNumber(cells[3], "std_error", i + 1),
    });
  }
  return rows;
}
