import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { SchemaError, parseCurveCsv, parseSweepCsv } from "../src/csv.js";

const dir = mkdtempSync(join(tmpdir(), "plots-csv-"));

function fileWith(content: string, name: string): string {
  const path = join(dir, name);
  writeFileSync(path, content);
  return path;
}

const CURVE_HEADER = "t,regret,psep_mean,psep_min,psep_max,rmse_arm1,rmse_arm2";

describe("parseCurveCsv", () => {
  it("parses a valid curve file", () => {
    const path = fileWith(
      `${CURVE_HEADER}\n1,0.5,0.5,0.4,0.5,0.01,0.02\n2,1.0,0.49,0.38,0.5,0.015,0.025\n`,
      "ok.csv",
    );
    const data = parseCurveCsv(path);
    expect(data.t).toEqual([1, 2]);
    expect(data.regret).toEqual([0.5, 1.0]);
    expect(data.rmse).toHaveLength(2);
    expect(data.rmse[1]).toEqual([0.02, 0.025]);
  });

  it("rejects an empty file without naming columns", () => {
    const path = fileWith("", "empty.csv");
    expect(() => parseCurveCsv(path)).toThrow(/empty/);
  });

  it("names the offending column on header mismatch", () => {
    const path = fileWith(
      "t,regret,psep_avg,psep_min,psep_max,rmse_arm1\n1,0,0.5,0.5,0.5,0\n",
      "badcol.csv",
    );
    expect(() => parseCurveCsv(path)).toThrow(/psep_mean/);
  });

  it("names misnumbered rmse columns", () => {
    const path = fileWith(
      "t,regret,psep_mean,psep_min,psep_max,rmse_arm2\n1,0,0.5,0.5,0.5,0\n",
      "badarm.csv",
    );
    expect(() => parseCurveCsv(path)).toThrow(/rmse_arm1/);
  });

  it("rejects header-only files", () => {
    const path = fileWith(`${CURVE_HEADER}\n`, "headeronly.csv");
    expect(() => parseCurveCsv(path)).toThrow(SchemaError);
  });

  it("rejects non-numeric cells with line context", () => {
    const path = fileWith(
      `${CURVE_HEADER}\n1,oops,0.5,0.4,0.5,0,0\n`,
      "nonnum.csv",
    );
    expect(() => parseCurveCsv(path)).toThrow(/regret.*line 2/);
  });
});

describe("parseSweepCsv", () => {
  it("parses a valid sweep file", () => {
    const path = fileWith(
      "lambda,method,final_regret,std_error\n0.05,proposed,42.5,1.25\n0.05,baseline,80.1,3.5\n",
      "sweep.csv",
    );
    const rows = parseSweepCsv(path);
    expect(rows).toHaveLength(2);
    expect(rows[0]).toEqual({
      lambda: 0.05,
      method: "proposed",
      finalRegret: 42.5,
      stdError: 1.25,
    });
  });

  it("names the offending column", () => {
    const path = fileWith(
      "lambda,method,regret,std_error\n0.05,proposed,42.5,1.25\n",
      "badsweep.csv",
    );
    expect(() => parseSweepCsv(path)).toThrow(/final_regret/);
  });

  it("rejects empty sweep files", () => {
    const path = fileWith("", "emptysweep.csv");
    expect(() => parseSweepCsv(path)).toThrow(/empty/);
  });
});
