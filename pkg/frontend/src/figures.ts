/**
 * The four figure kinds regenerated from simulator CSV outputs.
 *
 * Every renderer returns the SVG text; writing is left to the caller so the
 * CLI can refuse to create files on bad input.
 */

import { basename } from "node:path";
import { CurveData, SweepRow, parseCurveCsv, parseSweepCsv } from "./csv.js";
import { Chart, PALETTE, dataExtent } from "./svg.js";

export type FigureKind = "regret-vs-lambda" | "regret-vs-t" | "psep-band" | "rmse";

export const FIGURE_KINDS: FigureKind[] = [
  "regret-vs-lambda",
  "regret-vs-t",
  "psep-band",
  "rmse",
];

function seriesLabel(path: string): string {
  return basename(path).replace(/\.csv$/i, "");
}

/** Grouped bars of final regret per lambda, one color per method. */
export function renderRegretVsLambda(rows: SweepRow[]): string {
  const methods = [...new Set(rows.map((r) => r.method))];
  const lambdas = [...new Set(rows.map((r) => r.lambda))].sort((a, b) => a - b);
  const step = lambdas.length > 1 ? lambdas[1] - lambdas[0] : 0.01;
  const xDomain: [number, number] = [lambdas[0] - step, lambdas[lambdas.length - 1] + step];
  const top = Math.max(...rows.map((r) => r.finalRegret + 2 * r.stdError));
  const chart = new Chart(
    xDomain,
    [0, top * 1.05],
    "Final regret vs schedule slope",
    "lambda",
    "final regret",
  );
  const slot = (step * 0.8) / methods.length;
  const groupWidth = slot * methods.length;
  methods.forEach((method, m) => {
    const color = PALETTE[m % PALETTE.length];
    for (const row of rows.filter((r) => r.method === method)) {
      const x = row.lambda - groupWidth / 2 + slot * (m + 0.5);
      chart.bar(x, slot * 0.9, row.finalRegret, color);
      chart.errorBar(x, row.finalRegret, 2 * row.stdError, "#333");
    }
  });
  chart.legend(methods.map((m, k) => ({ label: m, color: PALETTE[k % PALETTE.length] })));
  return chart.render();
}

/** Regret trace overlay, one line per input curve file. */
export function renderRegretVsT(curves: CurveData[]): string {
  const xDomain = dataExtent(curves.map((c) => c.t));
  const yDomain = dataExtent(curves.map((c) => c.regret));
  const chart = new Chart(
    xDomain,
    [Math.min(0, yDomain[0]), yDomain[1] * 1.05],
    "Regret over time",
    "step t",
    "regret",
  );
  curves.forEach((c, k) => chart.line(c.t, c.regret, PALETTE[k % PALETTE.length]));
  chart.legend(
    curves.map((c, k) => ({ label: seriesLabel(c.path), color: PALETTE[k % PALETTE.length] })),
  );
  return chart.render();
}

/** Mean separation probability with the min-max envelope shaded. */
export function renderPsepBand(curve: CurveData): string {
  const xDomain = dataExtent([curve.t]);
  const chart = new Chart(
    xDomain,
    [0, 0.55],
    "Separation probability",
    "step t",
    "p_sep",
  );
  chart.band(curve.t, curve.psepMin, curve.psepMax, "#76d7ea");
  chart.line(curve.t, curve.psepMean, PALETTE[0]);
  chart.legend([
    { label: "mean", color: PALETTE[0] },
    { label: "min-max range", color: "#76d7ea" },
  ]);
  return chart.render();
}

/** Per-arm gap between desired and realized selection probabilities. */
export function renderRmse(curve: CurveData): string {
  const xDomain = dataExtent([curve.t]);
  const yDomain = dataExtent(curve.rmse);
  const chart = new Chart(
    xDomain,
    [0, Math.max(yDomain[1] * 1.1, 0.01)],
    "Desired vs output probability RMSE",
    "step t",
    "RMSE",
  );
  curve.rmse.forEach((series, k) => chart.line(curve.t, series, PALETTE[k % PALETTE.length]));
  chart.legend(curve.rmse.map((_, k) => ({ label: `arm ${k + 1}`, color: PALETTE[k % PALETTE.length] })));
  return chart.render();
}

export function renderFigure(kind: FigureKind, inputs: string[]): string {
  switch (kind) {
    case "regret-vs-lambda": {
      if (inputs.length !== 1) {
        throw new Error("regret-vs-lambda takes exactly one sweep file");
      }
      return renderRegretVsLambda(parseSweepCsv(inputs[0]));
    }
    case "regret-vs-t": {
      if (inputs.length < 1) {
        throw new Error("regret-vs-t needs at least one curve file");
      }
      return renderRegretVsT(inputs.map(parseCurveCsv));
    }
    case "psep-band": {
      if (inputs.length !== 1) {
        throw new Error("psep-band takes exactly one curve file");
      }
      return renderPsepBand(parseCurveCsv(inputs[0]));
    }
    case "rmse": {
      if (inputs.length !== 1) {
        throw new Error("rmse takes exactly one curve file");
      }
      return renderRmse(parseCurveCsv(inputs[0]));
    }
  }
}
