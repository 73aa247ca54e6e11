#!/usr/bin/env node
/**
 * plots <kind> --in FILE [--in FILE ...] --out FILE.svg
 *
 * Kinds: regret-vs-lambda (sweep.csv), regret-vs-t (curve files, overlaid),
 * psep-band (one curve file), rmse (one curve file).  The image is written
 * only after rendering succeeds, so bad inputs never leave a file behind.
 */

import { writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";
import { parseArgs } from "node:util";
import { SchemaError } from "./csv.js";
import { FIGURE_KINDS, FigureKind, renderFigure } from "./figures.js";

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        in: { type: "string", multiple: true },
        out: { type: "string" },
      },
    });
  } catch (err) {
    console.error(`argument error: ${(err as Error).message}`);
    return 2;
  }
  const kind = parsed.positionals[0] as FigureKind | undefined;
  if (!kind || !FIGURE_KINDS.includes(kind)) {
    console.error(`usage: plots <${FIGURE_KINDS.join("|")}> --in FILE [--in FILE ...] --out FILE.svg`);
    return 2;
  }
  const inputs = parsed.values.in ?? [];
  const out = parsed.values.out;
  if (inputs.length === 0 || !out) {
    console.error("both --in and --out are required");
    return 2;
  }
  let svg: string;
  try {
    svg = renderFigure(kind, inputs);
  } catch (err) {
    if (err instanceof SchemaError || err instanceof Error) {
      console.error(`error: ${err.message}`);
      return 1;
    }
    throw err;
  }
  writeFileSync(out, svg);
  console.log(`wrote ${out}`);
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(process.argv[1]).href;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
